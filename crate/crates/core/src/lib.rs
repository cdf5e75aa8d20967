//! Design space exploration for drone and rover fleets in precision
//! agriculture.
//!
//! The crate enumerates vehicle builds from a component catalog, derives
//! their physical metrics, and selects cost-optimal fleets with an exact
//! branch-and-bound integer optimizer. Fleets are independently re-checked by
//! a pseudo-Boolean-to-CNF encoding solved with a built-in DPLL solver, and a
//! set of metaheuristic baselines runs over the same search space for
//! comparison.

pub mod baselines;
pub mod catalog;
pub mod constraints;
pub mod derive;
pub mod design_file;
pub mod fleet;
pub mod money;
pub mod optimize;
pub mod sat;
pub mod scalar;
pub mod scenario;
pub mod score;

pub use catalog::{load_catalog, ComponentCatalog, VehicleKind};
pub use fleet::{Configuration, FleetDesign, FleetLine};
pub use money::Money;
pub use scalar::Scalar;
pub use scenario::Scenario;

/// Floating-point metrics used throughout search and reporting.
pub type Metrics = derive::DerivedMetrics<f64>;
/// Single-precision metrics.
pub type Metrics32 = derive::DerivedMetrics<f32>;
/// Exact rational metrics for identity checks.
pub type ExactMetrics = derive::DerivedMetrics<num_rational::BigRational>;
pub type Physics = derive::Physics<f64>;
pub type ExactPhysics = derive::Physics<num_rational::BigRational>;
