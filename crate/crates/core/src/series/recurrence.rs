use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{fmt_rational, rat, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::operator::DiffOperator;

/// Linear recurrence `sum_s terms[s](n) u(n+s) = 0`, valid for every integer
/// `n` when `u(k) = 0` for `k < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceOperator {
    terms: BTreeMap<i64, Polynomial>,
}

impl RecurrenceOperator {
    /// Drops zero terms; errors if nothing is left.
    pub fn new(terms: BTreeMap<i64, Polynomial>) -> Result<Self> {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        if terms.is_empty() {
            return Err(Error::InvalidInput("empty recurrence".into()));
        }
        Ok(RecurrenceOperator { terms })
    }

    pub fn terms(&self) -> &BTreeMap<i64, Polynomial> {
        &self.terms
    }

    pub fn term(&self, s: i64) -> Polynomial {
        self.terms.get(&s).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn s_min(&self) -> i64 {
        *self.terms.keys().next().unwrap()
    }

    pub fn s_max(&self) -> i64 {
        *self.terms.keys().next_back().unwrap()
    }

    /// Coefficient of `u(n + s_max)`.
    pub fn leading(&self) -> &Polynomial {
        &self.terms[&self.s_max()]
    }

    /// Residual `sum_s terms[s](n) u(n+s)` of a sequence at `n`, or `None`
    /// if the sequence is too short.
    pub fn residual(&self, u: &[Rational], n: i64) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (s, p) in &self.terms {
            let k = n + s;
            if k < 0 {
                continue;
            }
            let uk = u.get(k as usize)?;
            if !uk.is_zero() {
                acc += p.eval(&rat(n)) * uk;
            }
        }
        Some(acc)
    }

    /// Indices from `from` on that the recurrence cannot determine: those
    /// below `s_max` and those where the leading coefficient vanishes.
    pub fn undetermined_indices(&self, from: usize) -> Vec<usize> {
        let s_max = self.s_max();
        let mut out: Vec<usize> = (from as i64..s_max).map(|t| t as usize).collect();
        let lead = self.leading();
        let roots = crate::algebra::rational_roots(lead).unwrap_or_default();
        for (r, _) in roots {
            if r.is_integer() && !r.is_negative() {
                let t = r.to_integer() + s_max;
                if let Ok(t) = usize::try_from(t) {
                    if t >= from && !out.contains(&t) {
                        out.push(t);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for RecurrenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (s, p) in self.terms.iter().rev() {
            let index = match s {
                0 => "u(n)".to_string(),
                s if *s > 0 => format!("u(n+{s})"),
                s => format!("u(n-{})", -s),
            };
            let (neg, body) = match p.is_constant().then(|| p.coeff(0)) {
                Some(c) => {
                    let a = c.abs();
                    let body = if a == rat(1) { index } else { format!("{}*{index}", fmt_rational(&a)) };
                    (c.is_negative(), body)
                }
                None => {
                    let lead_neg = p.leading().is_negative();
                    let q = if lead_neg { -p.clone() } else { p.clone() };
                    let text = q.fmt_var("n");
                    let text = if q.term_count() > 1 { format!("({text})") } else { text };
                    (lead_neg, format!("{text}*{index}"))
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        write!(f, "{out} = 0")
    }
}

/// Coefficients `P_j(z) = sum_i p_{j,i} z^i` of an operator with polynomial
/// coefficients; rational ones are cleared first.
pub(crate) fn polynomial_coefficients(op: &DiffOperator) -> Result<Vec<Polynomial>> {
    if op.is_zero() {
        return Err(Error::InvalidInput("zero operator".into()));
    }
    if op.is_polynomial() {
        Ok(op.coeffs().iter().map(|c| c.num().clone()).collect())
    } else {
        op.polynomial_form()
    }
}

/// Recurrence for the Taylor coefficients at 0 of the solutions:
/// `z^i D^j z^k = k(k-1)...(k-j+1) z^(k-j+i)`, so the shift is `j - i` and
/// the coefficient of `u(n+s)` collects `p_{j,i} (n+s)(n+s-1)...(n+s-j+1)`.
pub fn operator_to_recurrence(op: &DiffOperator) -> Result<RecurrenceOperator> {
    let polys = polynomial_coefficients(op)?;
    let mut terms: BTreeMap<i64, Polynomial> = BTreeMap::new();
    for (j, p) in polys.iter().enumerate() {
        let ff = Polynomial::falling_factorial(j);
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = j as i64 - i as i64;
            let term = ff.taylor_shift(&rat(s)).scale(c);
            let slot = terms.entry(s).or_insert_with(Polynomial::zero);
            *slot = &*slot + &term;
        }
    }
    RecurrenceOperator::new(terms)
}
