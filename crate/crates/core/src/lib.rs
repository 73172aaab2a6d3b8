//! Exact analysis of linear differential operators with rational function
//! coefficients.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: rationals, dense univariate polynomials over Q, rational
//!   functions, residue rings Q[x]/(p), root utilities.
//! - [`operator`]: the ring Q(z)[D] of differential operators (product, right
//!   division, adjoint, changes of variable, theta-form, text syntax).
//! - [`local`]: valuations, Newton polygons, indicial polynomials, apparent
//!   singularities and the global singularity census.
//! - [`bounds`]: Fuchs sums and the explicit degree bounds for monic right
//!   factors, together with the exponent and valuation bounds used by the
//!   minimal-annihilator search.
//! - [`series`]: the operator/recurrence correspondence, truncated Taylor
//!   series and the minimal-annihilator search.

pub mod algebra;
pub mod bounds;
pub mod error;
pub mod local;
pub mod operator;
pub mod series;

pub use algebra::{Polynomial, QuotientElement, Rational, RationalFunction};
pub use error::{Error, Result};
pub use operator::{parse_operator, DegreeProfile, DiffOperator, ThetaForm};
