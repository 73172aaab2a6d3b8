use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{serde_rational, Rational};
use crate::error::{Error, Result};
use crate::local::{indicial_polynomial, newton_polygon, singular_points, Exponents, PointSpec};
use crate::operator::DiffOperator;

#[derive(Clone, Debug, Serialize)]
pub struct FuchsEntry {
    pub point: PointSpec,
    pub orbit_size: usize,
    /// Sum of the exponents minus `orbit_size * r(r-1)/2`.
    #[serde(rename = "S_rho", with = "serde_rational")]
    pub s_rho: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuchsSummary {
    pub order: usize,
    pub per_point: Vec<FuchsEntry>,
    #[serde(with = "serde_rational")]
    pub total: Rational,
    /// `-r(r-1)`
    #[serde(with = "serde_rational")]
    pub expected: Rational,
    pub holds: bool,
}

/// Per-point sums over the finite singularities and infinity. Only exponent
/// sums enter, so irrational exponents need no root finding.
pub fn fuchs_summary(op: &DiffOperator) -> Result<FuchsSummary> {
    let r = op
        .order()
        .ok_or_else(|| Error::InvalidInput("zero operator".into()))?;
    let mut points = singular_points(op)?;
    points.push(PointSpec::Infinity);
    let mut per_point = Vec::with_capacity(points.len());
    for point in points {
        let rank = newton_polygon(op, &point)?.katz_rank();
        if !rank.is_zero() {
            return Err(Error::Unsupported(format!(
                "not Fuchsian: slope {} at {}",
                rank,
                point.fmt_var(op.var())
            )));
        }
        let ind = indicial_polynomial(op, &point)?;
        let sum = Exponents::of(ind.rational_form())?.sum;
        let orbit_size = point.orbit_size();
        let shift = Rational::from_integer((orbit_size * r * r.saturating_sub(1) / 2).into());
        per_point.push(FuchsEntry {
            point,
            orbit_size,
            s_rho: sum - shift,
        });
    }
    let total: Rational = per_point.iter().map(|e| e.s_rho.clone()).sum();
    let expected = Rational::from_integer((-((r * r.saturating_sub(1)) as i64)).into());
    Ok(FuchsSummary {
        order: r,
        holds: total == expected,
        per_point,
        total,
        expected,
    })
}

/// `true` iff the sums add up to `-r(r-1)`.
pub fn check_fuchs_relation(op: &DiffOperator) -> Result<(bool, FuchsSummary)> {
    let s = fuchs_summary(op)?;
    Ok((s.holds, s))
}
