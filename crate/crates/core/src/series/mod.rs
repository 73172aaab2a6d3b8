//! Taylor coefficients at 0, their recurrences, and the minimizer.

mod context;
mod minimize;
mod recurrence;

pub use context::{apply_operator, extend_coefficients, SeriesContext, SeriesSource};
pub use minimize::{minimize, Attempt, Certificate, MinimizationResult};
pub use recurrence::{operator_to_recurrence, RecurrenceOperator};
