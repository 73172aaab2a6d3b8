//! Fuchs sums and the explicit bounds: the degree bound for monic right
//! factors, the exponent tower and the valuation cutoff.

mod fuchs;
mod degree;
mod tower;

pub use fuchs::{check_fuchs_relation, fuchs_summary, FuchsEntry, FuchsSummary};
pub use degree::{
    bound_from_operator, theorem1_bound, BoundInputs, BoundReport, OperatorBounds, Provenance,
    Refinements, Terms,
};
pub use tower::{bcy_exponent_bound, valuation_bound, Log2Estimate, TowerBound};
