//! Local invariants at points of the projective line: valuations, Newton
//! polygons, indicial polynomials, apparent singularities, and the global
//! census feeding the degree bounds.

mod apparent;
mod census;
mod indicial;
mod newton;
mod point;
mod valuation;

pub use apparent::{is_apparent, is_apparent_with, is_singular, kernel_dimension, Apparent, ApparentMode};
pub use census::{global_census, singular_points, split_orbit, Classification, GlobalCensus, SingularityReport};
pub use indicial::{indicial_polynomial, ExponentRoot, Exponents, Indicial};
pub use newton::{katz_rank, newton_polygon, newton_polygon_theta, Edge, NewtonPolygon};
pub use point::PointSpec;
pub use valuation::valuation;
