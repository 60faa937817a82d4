//! Local antimagic edge labelings: graph families, explicit constructions,
//! bounds, an exact solver, and predicted chromatic numbers.

pub mod bounds;
pub mod constructions;
pub mod corona;
pub mod family;
pub mod graph;
pub mod labeling;
pub mod oracle;
pub mod rectangles;
pub mod solver;

pub use bounds::{lower_bound, BoundSource, LowerBound};
pub use constructions::{construct, ConstructionError};
pub use family::{parse_family_spec, FamilyKind, FamilySpec, SpecError};
pub use graph::{build_graph, EdgeId, Graph, GraphError, Role, VertexId};
pub use labeling::{
    color_count, induced_colors, make_certificate, verify_local_antimagic, Certificate,
    ColorProfile, EdgeLabeling, LabelingError, Verdict,
};
pub use oracle::{predicted, PredictedValue, Prediction};
pub use solver::{exact_chi_la, find_labeling_with_color_budget, ChiLaResult, ChiLaStatus, SearchBudget};
