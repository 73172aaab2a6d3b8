use serde::Serialize;

use super::DiffOperator;
use crate::algebra::{rat, LaurentWindow, Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::local::PointSpec;

/// An operator rewritten as `sum_k b_k(z) theta^k` with `theta = z D`, after
/// moving the point to the origin (`z -> z + rho`, or `z -> 1/z` at infinity).
///
/// The `b_k` are kept exactly; `windows` holds their Laurent expansions at 0
/// truncated to the requested length above each valuation.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaForm {
    pub point: PointSpec,
    pub windows: Vec<LaurentWindow>,
    #[serde(skip)]
    exact: Vec<RationalFunction>,
}

/// Operator moved so that `point` sits at the origin.
pub fn localize(op: &DiffOperator, point: &PointSpec) -> Result<DiffOperator> {
    match point {
        PointSpec::Rational(r) => Ok(op.shift_point(r)),
        PointSpec::Infinity => Ok(op.invert_variable()),
        PointSpec::Orbit(_) => Err(Error::Unsupported(
            "theta-form at an algebraic orbit; use valuations instead".into(),
        )),
    }
}

/// Signed Stirling numbers of the first kind `s(j, k)`: coefficients of the
/// falling factorial `x (x-1) ... (x-j+1)`.
pub fn stirling_rows(n: usize) -> Vec<Polynomial> {
    (0..=n).map(Polynomial::falling_factorial).collect()
}

impl ThetaForm {
    pub fn new(op: &DiffOperator, point: &PointSpec, window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::InvalidInput("window must be at least 1".into()));
        }
        let local = localize(op, point)?;
        let mu = local
            .order()
            .ok_or_else(|| Error::InvalidInput("zero operator".into()))?;
        let rows = stirling_rows(mu);
        let z_inv = |j: usize| {
            RationalFunction::new(Polynomial::one(), Polynomial::monomial(rat(1), j))
                .expect("nonzero")
        };
        let scaled: Vec<RationalFunction> = local
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| c * &z_inv(j))
            .collect();
        let exact: Vec<RationalFunction> = (0..=mu)
            .map(|k| {
                (k..=mu).fold(RationalFunction::zero(), |acc, j| {
                    &acc + &scaled[j].scale(&rows[j].coeff(k))
                })
            })
            .collect();
        let windows = exact.iter().map(|b| b.laurent_window(window)).collect();
        Ok(ThetaForm {
            point: point.clone(),
            windows,
            exact,
        })
    }

    pub fn order(&self) -> usize {
        self.exact.len() - 1
    }

    /// Exact coefficient `b_k`.
    pub fn coeff(&self, k: usize) -> &RationalFunction {
        &self.exact[k]
    }

    pub fn exact(&self) -> &[RationalFunction] {
        &self.exact
    }

    /// Valuation of each nonzero `b_k`.
    pub fn valuations(&self) -> Vec<Option<i64>> {
        self.exact.iter().map(RationalFunction::valuation_at_zero).collect()
    }

    /// Smallest valuation among the `b_k`.
    pub fn min_valuation(&self) -> i64 {
        self.valuations().into_iter().flatten().min().expect("nonzero operator")
    }

    /// Coefficient of `z^v` in each `b_k`.
    pub fn layer_coeffs(&self, v: i64) -> Vec<crate::algebra::Rational> {
        self.exact
            .iter()
            .map(|b| {
                let w = b.laurent_until(v + 1);
                let idx = v - w.valuation;
                if idx < 0 || w.coeffs.is_empty() {
                    num_traits::Zero::zero()
                } else {
                    w.coeffs[idx as usize].clone()
                }
            })
            .collect()
    }

    /// The layers `Q_i = sum_k [z^(v0 + i)] b_k lambda^k` for `i < count`, with
    /// `v0` the minimal valuation, so that `z^-v0 * sum_k b_k theta^k` acts on
    /// `z^n` as `sum_i Q_i(n) z^(n + i)`.
    pub fn layers(&self, count: usize) -> Vec<Polynomial> {
        let v0 = self.min_valuation();
        let windows: Vec<LaurentWindow> = self
            .exact
            .iter()
            .map(|b| b.laurent_until(v0 + count as i64))
            .collect();
        (0..count as i64)
            .map(|i| {
                Polynomial::new(
                    windows
                        .iter()
                        .map(|w| {
                            let idx = v0 + i - w.valuation;
                            if idx < 0 || idx as usize >= w.coeffs.len() {
                                num_traits::Zero::zero()
                            } else {
                                w.coeffs[idx as usize].clone()
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// `sum_k [z^v] b_k * lambda^k`. At `v = min_valuation` this is the
    /// indicial polynomial for a regular singular point.
    pub fn layer(&self, v: i64) -> Polynomial {
        Polynomial::new(self.layer_coeffs(v))
    }

    /// `sum_k b_k theta^k` converted back to D-form, in the local variable.
    pub fn to_local_operator(&self) -> DiffOperator {
        let theta = DiffOperator::var_z().mul(&DiffOperator::d());
        let mut power = DiffOperator::scalar(RationalFunction::one());
        let mut acc = DiffOperator::zero();
        for (k, b) in self.exact.iter().enumerate() {
            if k > 0 {
                power = power.mul(&theta);
            }
            acc = acc.add(&power.scale_left(b));
        }
        acc
    }

    /// Rebuild from the truncated windows only (polynomial part up to the
    /// window). Agrees with [`Self::to_local_operator`] when every `b_k` is a
    /// Laurent polynomial fully contained in its window.
    pub fn window_operator(&self) -> DiffOperator {
        let theta = DiffOperator::var_z().mul(&DiffOperator::d());
        let mut power = DiffOperator::scalar(RationalFunction::one());
        let mut acc = DiffOperator::zero();
        for (k, w) in self.windows.iter().enumerate() {
            if k > 0 {
                power = power.mul(&theta);
            }
            let shift = w.valuation.min(0).unsigned_abs() as usize;
            let num = Polynomial::new(w.coeffs.clone()).shift_up((w.valuation + shift as i64) as usize);
            let b = RationalFunction::new(num, Polynomial::monomial(rat(1), shift)).expect("nonzero");
            acc = acc.add(&power.scale_left(&b));
        }
        acc
    }
}
