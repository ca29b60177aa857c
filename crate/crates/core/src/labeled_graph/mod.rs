mod build;
mod graph;
mod label;
mod routing;

pub use build::build_labeled_graph;
pub use graph::{project, project_xor, LabeledEdge, LabeledMultigraph, Mode};
pub use label::{bits_string, Label};
pub use routing::{
    route_reference_curves, route_reference_curves_seeded, validate_curves, ReferenceCurveSet, Terminal,
};
