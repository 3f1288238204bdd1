//! Structured lift generators: decision-diagram flow lifts, poset order and
//! chain lifts, theta-body pencils, k-level moment lifts, and quadratic
//! epigraphs. The universal lift verifier lives in [`crate::lifts`].

pub mod epigraph;
pub mod graph;
pub mod obdd;
pub mod poset;
pub mod sos;

pub use epigraph::quadratic_epigraph_lmi;
pub use graph::{theta_body_lift_data, theta_body_lmi, Graph};
pub use obdd::{obdd_flow_lift, Obdd};
pub use poset::{chain_polytope_lift, order_polytope, Poset};
pub use sos::{klevel_sos_lift, KlevelLift};
