use num_traits::Zero;
use serde::Serialize;

use super::recurrence::{operator_to_recurrence, RecurrenceOperator};
use crate::algebra::{rat, serde_rational_vec, Rational};
use crate::error::{Error, Result};
use crate::operator::DiffOperator;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SeriesSource {
    /// A fixed list; nothing beyond it is known.
    Explicit,
    /// Initial terms continued by the recurrence of an operator.
    Recurrence {
        operator: DiffOperator,
        recurrence: RecurrenceOperator,
        initial: usize,
    },
}

/// Truncated Taylor coefficients at 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesContext {
    #[serde(with = "serde_rational_vec")]
    coefficients: Vec<Rational>,
    source: SeriesSource,
}

impl SeriesContext {
    pub fn explicit(coefficients: Vec<Rational>) -> Self {
        SeriesContext {
            coefficients,
            source: SeriesSource::Explicit,
        }
    }

    /// Series annihilated by `op` with the given first coefficients.
    pub fn from_operator(op: &DiffOperator, initial: Vec<Rational>) -> Result<Self> {
        let recurrence = operator_to_recurrence(op)?;
        Ok(SeriesContext {
            source: SeriesSource::Recurrence {
                operator: op.clone(),
                recurrence,
                initial: initial.len(),
            },
            coefficients: initial,
        })
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn source(&self) -> &SeriesSource {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Makes coefficients `0..=upto` available.
    pub fn extend_to(&mut self, upto: usize) -> Result<()> {
        if upto < self.coefficients.len() {
            return Ok(());
        }
        let rec = match &self.source {
            SeriesSource::Explicit => {
                let from = self.coefficients.len();
                return Err(Error::NeedsMoreInitialTerms {
                    index: from,
                    blocking: (from..=upto).collect(),
                });
            }
            SeriesSource::Recurrence { recurrence, .. } => recurrence,
        };
        let s_max = rec.s_max();
        let blocked = |t: usize| Error::NeedsMoreInitialTerms {
            index: t,
            blocking: rec.undetermined_indices(t),
        };
        self.coefficients.reserve(upto + 1 - self.coefficients.len());
        for t in self.coefficients.len()..=upto {
            let n = t as i64 - s_max;
            if n < 0 {
                return Err(blocked(t));
            }
            let lc = rec.leading().eval(&rat(n));
            if lc.is_zero() {
                return Err(blocked(t));
            }
            // u(t) is the only unknown; residual with u(t) = 0 gives the rest.
            let mut acc = Rational::zero();
            for (s, p) in rec.terms().range(..s_max) {
                let k = n + s;
                if k < 0 {
                    continue;
                }
                let uk = &self.coefficients[k as usize];
                if !uk.is_zero() {
                    acc += p.eval(&rat(n)) * uk;
                }
            }
            self.coefficients.push(-acc / lc);
        }
        Ok(())
    }
}

/// Copy of `ctx` with coefficients `0..=upto` available.
pub fn extend_coefficients(ctx: &SeriesContext, upto: usize) -> Result<SeriesContext> {
    let mut out = ctx.clone();
    out.extend_to(upto)?;
    Ok(out)
}

/// Taylor coefficients `0..=upto` of `op` applied to the series. Coefficients
/// of `op` must be regular at 0.
pub fn apply_operator(op: &DiffOperator, ctx: &SeriesContext, upto: usize) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); upto + 1];
    let mut windows = Vec::new();
    let mut need = 0usize;
    for (j, c) in op.coeffs().iter().enumerate() {
        let Some(v) = c.valuation_at_zero() else {
            windows.push(None);
            continue;
        };
        if v < 0 {
            return Err(Error::Unsupported(format!(
                "coefficient of D^{j} has a pole at 0"
            )));
        }
        let v = v as usize;
        if v <= upto {
            need = need.max(upto + j - v);
        }
        windows.push(Some(c.laurent_until(upto as i64 + 1)));
    }
    if need >= ctx.len() {
        let from = ctx.len();
        return Err(Error::NeedsMoreInitialTerms {
            index: from,
            blocking: (from..=need).collect(),
        });
    }
    let u = ctx.coefficients();
    for (j, w) in windows.iter().enumerate() {
        let Some(w) = w else { continue };
        // [z^t] f^(j) = (t+1)...(t+j) u(t+j)
        let deriv: Vec<Rational> = (0..=upto)
            .map(|t| {
                let idx = t + j;
                if idx >= u.len() || u[idx].is_zero() {
                    return Rational::zero();
                }
                ((t + 1)..=(t + j)).fold(u[idx].clone(), |acc, x| acc * rat(x as i64))
            })
            .collect();
        let v = w.valuation as usize;
        for (i, c) in w.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let shift = v + i;
            for k in shift..=upto {
                out[k] += c * &deriv[k - shift];
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::operator::parse_operator;

    fn op(s: &str) -> DiffOperator {
        parse_operator(s, "z").unwrap()
    }

    #[test]
    fn extension_examples() {
        let ctx = SeriesContext::from_operator(&op("D - 1"), vec![rat(1)]).unwrap();
        let e = extend_coefficients(&ctx, 3).unwrap();
        assert_eq!(e.coefficients(), &[rat(1), rat(1), ratio(1, 2), ratio(1, 6)]);
        let ctx = SeriesContext::from_operator(&op("z*D - 1"), vec![rat(0), rat(1)]).unwrap();
        let e = extend_coefficients(&ctx, 4).unwrap();
        assert_eq!(e.coefficients(), &[rat(0), rat(1), rat(0), rat(0), rat(0)]);
        let ctx = SeriesContext::from_operator(&op("D - 1"), vec![]).unwrap();
        assert_eq!(
            extend_coefficients(&ctx, 1).unwrap_err(),
            Error::NeedsMoreInitialTerms { index: 0, blocking: vec![0] }
        );
    }

    #[test]
    fn blocked_at_leading_root() {
        // (n-1) u(n) = 0 leaves u(1) free
        let ctx = SeriesContext::from_operator(&op("z*D - 1"), vec![rat(0)]).unwrap();
        assert_eq!(
            extend_coefficients(&ctx, 3).unwrap_err(),
            Error::NeedsMoreInitialTerms { index: 1, blocking: vec![1] }
        );
        // z^2 D^2 - 3z D + 3: exponents 1 and 3
        let ctx = SeriesContext::from_operator(&op("z^2*D^2 - 3*z*D + 3"), vec![rat(0), rat(1)]).unwrap();
        assert_eq!(
            extend_coefficients(&ctx, 5).unwrap_err(),
            Error::NeedsMoreInitialTerms { index: 3, blocking: vec![3] }
        );
    }

    #[test]
    fn application_examples() {
        let ctx = SeriesContext::from_operator(&op("D - 1"), vec![rat(1)]).unwrap();
        let e = extend_coefficients(&ctx, 6).unwrap();
        assert_eq!(apply_operator(&op("D - 1"), &e, 5).unwrap(), vec![rat(0); 6]);
        let f = SeriesContext::explicit(vec![rat(1), rat(1), ratio(1, 2)]);
        assert_eq!(apply_operator(&op("D"), &f, 1).unwrap(), vec![rat(1), rat(1)]);
        assert!(matches!(
            apply_operator(&op("D"), &f, 2),
            Err(Error::NeedsMoreInitialTerms { index: 3, .. })
        ));
        let f = SeriesContext::explicit(vec![rat(0), rat(1), rat(0)]);
        assert_eq!(apply_operator(&op("z*D"), &f, 2).unwrap(), vec![rat(0), rat(1), rat(0)]);
        // 1/(1-z) * D on 1/(1-z): sum (k+1) z^k convolved with ones
        let g = SeriesContext::explicit(vec![rat(1); 6]);
        assert_eq!(
            apply_operator(&op("1/(1-z)*D"), &g, 3).unwrap(),
            vec![rat(1), rat(3), rat(6), rat(10)]
        );
        assert!(matches!(apply_operator(&op("1/z*D"), &g, 3), Err(Error::Unsupported(_))));
    }
}
