//! Exact scalar and polynomial arithmetic over Q.

mod integer;
mod linalg;
mod poly;
mod quotient;
mod rational;
mod ratfunc;
mod roots;

pub use linalg::{echelon, integer_rows, rank, IntegerEchelon};
pub use poly::Polynomial;
pub use quotient::QuotientElement;
pub use rational::{
    fmt_rational, parse_rational, rat, ratio, serde_bigint, serde_rational, serde_rational_opt,
    serde_rational_vec, Rational,
};
pub use ratfunc::{LaurentWindow, RationalFunction};
pub use roots::{
    cauchy_root_bound, interpolate, rational_roots, resultant, squarefree_factorization,
    sum_of_roots,
};
pub(crate) use roots::integer_nodes;
