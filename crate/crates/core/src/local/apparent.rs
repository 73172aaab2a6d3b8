use num_traits::Zero;
use serde::Serialize;

use super::indicial::{indicial_polynomial, Exponents};
use super::newton::newton_polygon;
use super::valuation::valuation;
use super::PointSpec;
use crate::algebra::{rank, rat, Rational};
use crate::error::{Error, Result};
use crate::operator::{DiffOperator, ThetaForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Apparent {
    #[serde(rename = "yes")]
    Yes,
    #[serde(rename = "no")]
    No,
    /// Not decided; counted as non-apparent.
    #[serde(rename = "undecided-conservative")]
    Undecided,
}

impl Apparent {
    pub fn is_yes(self) -> bool {
        self == Apparent::Yes
    }
}

/// Which local solution basis makes a singular point apparent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApparentMode {
    /// A basis of power series solutions.
    Strict,
    /// A basis of meromorphic (Laurent series) solutions.
    Relaxed,
}

/// Whether a finite point is a singularity of the monic form.
pub fn is_singular(op: &DiffOperator, point: &PointSpec) -> Result<bool> {
    if point.is_infinity() {
        return Err(Error::InvalidInput("infinity is not a finite point".into()));
    }
    let monic = op.monic()?;
    Ok(monic
        .coeffs()
        .iter()
        .any(|c| valuation(c, point).is_some_and(|v| v < 0)))
}

/// Dimension of the space of Laurent series solutions at a rational point
/// supported on exponents `start..=end`, read off the theta-layer recurrence
/// `Q_0(N) y_N + sum_{i>=1} Q_i(N-i) y_{N-i} = 0` for `N = start..=end`.
pub fn kernel_dimension(op: &DiffOperator, point: &PointSpec, start: i64, end: i64) -> Result<usize> {
    if end < start {
        return Ok(0);
    }
    let n = (end - start + 1) as usize;
    let theta = ThetaForm::new(op, point, 1)?;
    let q = theta.layers(n);
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|row| {
            (0..n)
                .map(|col| {
                    if col > row {
                        Rational::zero()
                    } else {
                        q[row - col].eval(&rat(start + col as i64))
                    }
                })
                .collect()
        })
        .collect();
    Ok(n - rank(&rows, n))
}

/// Apparent-singularity test at a finite singular point.
///
/// At rational points: irregular means no; the exponents must be distinct
/// integers (nonnegative in strict mode); then the recurrence kernel between
/// the smallest admissible exponent and the largest one must have full
/// dimension. Orbits are left undecided.
pub fn is_apparent_with(op: &DiffOperator, point: &PointSpec, mode: ApparentMode) -> Result<Apparent> {
    if !is_singular(op, point)? {
        return Err(Error::InvalidInput(format!(
            "{} is not a singular point",
            point.fmt_var(op.var())
        )));
    }
    if !newton_polygon(op, point)?.katz_rank().is_zero() {
        return Ok(Apparent::No);
    }
    if matches!(point, PointSpec::Orbit(_)) {
        return Ok(Apparent::Undecided);
    }
    let ind = indicial_polynomial(op, point)?;
    apparent_at_regular(op, point, &Exponents::of(ind.rational_form())?, mode)
}

/// The test at a regular singular point with known exponents.
pub(crate) fn apparent_at_regular(
    op: &DiffOperator,
    point: &PointSpec,
    exponents: &Exponents,
    mode: ApparentMode,
) -> Result<Apparent> {
    if matches!(point, PointSpec::Orbit(_)) {
        return Ok(Apparent::Undecided);
    }
    let mu = op.order().expect("nonzero");
    let Some(roots) = exponents.distinct_integers(mu) else {
        return Ok(Apparent::No);
    };
    let (emin, emax) = (roots[0], *roots.last().unwrap());
    let start = match mode {
        ApparentMode::Strict if emin < 0 => return Ok(Apparent::No),
        ApparentMode::Strict => 0,
        ApparentMode::Relaxed => emin,
    };
    let dim = kernel_dimension(op, point, start, emax)?;
    Ok(if dim == mu { Apparent::Yes } else { Apparent::No })
}

/// Strict test: a local basis of power series solutions.
pub fn is_apparent(op: &DiffOperator, point: &PointSpec) -> Result<Apparent> {
    is_apparent_with(op, point, ApparentMode::Strict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::parse_operator;

    fn op(s: &str) -> DiffOperator {
        parse_operator(s, "z").unwrap()
    }

    #[test]
    fn examples() {
        let zero = PointSpec::zero();
        assert_eq!(is_apparent(&op("z*D^2 - D"), &zero).unwrap(), Apparent::Yes);
        assert_eq!(is_apparent(&op("z^2*D + 1"), &zero).unwrap(), Apparent::No);
        let kummer = op("z*D^2 + (2-z)*D + 3");
        assert_eq!(is_apparent(&kummer, &zero).unwrap(), Apparent::No);
        // exponent -1 is obstructed: (k+1) y_{-1} = 0 forces a logarithm
        assert_eq!(
            is_apparent_with(&kummer, &zero, ApparentMode::Relaxed).unwrap(),
            Apparent::No
        );
        // D - 2/z has the polynomial solution z^2.
        assert_eq!(is_apparent(&op("z*D - 2"), &zero).unwrap(), Apparent::Yes);
        // Relaxed accepts meromorphic bases: solution 1/z.
        assert_eq!(is_apparent(&op("z*D + 1"), &zero).unwrap(), Apparent::No);
        assert_eq!(
            is_apparent_with(&op("z*D + 1"), &zero, ApparentMode::Relaxed).unwrap(),
            Apparent::Yes
        );
        assert!(is_apparent(&op("D"), &zero).is_err());
    }

    #[test]
    fn doubled_window_agrees() {
        for s in ["z*D^2 - D", "z*D^2 + (2-z)*D + 3", "(z^3 - 2*z)*D^2 - (3*z^2 - 2)*D + 4*z", "z*D^2 - 3*D + z^2"] {
            let l = op(s);
            for start in [-1, 0] {
                let d1 = kernel_dimension(&l, &PointSpec::zero(), start, 4).unwrap();
                let d2 = kernel_dimension(&l, &PointSpec::zero(), start, 8).unwrap();
                assert_eq!(d1, d2, "{s}");
            }
        }
    }
}
