use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::context::{apply_operator, SeriesContext};
use super::recurrence::polynomial_coefficients;
use crate::algebra::{echelon, integer_rows, rat, serde_rational, Polynomial, Rational};
use crate::bounds::{bound_from_operator, valuation_bound, Provenance, Refinements};
use crate::error::{Error, Result};
use crate::local::global_census;
use crate::operator::DiffOperator;

/// One order tried by the sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub r: usize,
    pub degree_cap: usize,
    pub cutoff: usize,
    pub unknowns: usize,
    pub kernel_dimension: usize,
}

/// Parameters of the valuation cutoff and the outcome of the check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub r: usize,
    pub degree_cap: usize,
    pub q: usize,
    pub m: usize,
    #[serde(rename = "E", with = "serde_rational")]
    pub e: Rational,
    /// `N`: coefficients `0..=N` of `sum_j P_j f^(j)` were required to vanish.
    pub cutoff: usize,
    pub coefficients_checked: usize,
    pub residual_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizationResult {
    pub found: bool,
    /// Monic right-factor candidate.
    pub operator: DiffOperator,
    /// The kernel vector as an operator with integer polynomial coefficients.
    pub polynomial_operator: DiffOperator,
    pub order: usize,
    pub degree_cap: usize,
    pub cutoff: usize,
    #[serde(rename = "E", with = "serde_rational")]
    pub e: Rational,
    pub e_provenance: Provenance,
    pub degree_cap_supplied: bool,
    pub certificate: Certificate,
    /// `right_divmod(L, operator)` leaves no remainder.
    pub divides: bool,
    pub attempts: Vec<Attempt>,
}

/// `[z^t] f^(j)` for `t = 0..=upto`.
fn derivative_coeffs(u: &[Rational], j: usize, upto: usize) -> Vec<Rational> {
    (0..=upto)
        .map(|t| {
            let idx = t + j;
            match u.get(idx) {
                Some(x) if !x.is_zero() => ((t + 1)..=(t + j)).fold(x.clone(), |acc, k| acc * rat(k as i64)),
                _ => Rational::zero(),
            }
        })
        .collect()
}

/// Rows `k = 0..=cutoff`, columns `(j, i)` for `P_j = sum_i x_{j,i} z^i`.
fn system(u: &[Rational], r: usize, cap: usize, cutoff: usize) -> Vec<Vec<Rational>> {
    let derivs: Vec<Vec<Rational>> = (0..=r).map(|j| derivative_coeffs(u, j, cutoff)).collect();
    let cols = (r + 1) * (cap + 1);
    (0..=cutoff)
        .map(|k| {
            let mut row = vec![Rational::zero(); cols];
            for (j, d) in derivs.iter().enumerate() {
                for i in 0..=cap.min(k) {
                    row[j * (cap + 1) + i] = d[k - i].clone();
                }
            }
            row
        })
        .collect()
}

fn operator_from_vector(v: &[BigInt], r: usize, cap: usize, var: &str) -> DiffOperator {
    let polys = (0..=r)
        .map(|j| {
            Polynomial::new(
                v[j * (cap + 1)..(j + 1) * (cap + 1)]
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect(),
            )
        })
        .collect();
    let mut op = DiffOperator::from_polys(polys);
    op.set_var(var);
    op
}

fn to_usize(n: BigInt, what: &str) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::InvalidInput(format!("{what} too large")))
}

/// Smallest-order operator annihilating the series with the given first
/// coefficients, continued by the recurrence of `l`.
///
/// For each `r = 1..=m` the coefficients `P_j` of degree at most the cap are
/// found from a homogeneous linear system stating that the first `N + 1`
/// coefficients of `sum_j P_j f^(j)` vanish, with `N` the valuation cutoff.
pub fn minimize(
    l: &DiffOperator,
    initial: &[Rational],
    degree_cap: Option<usize>,
    e_override: Option<Rational>,
) -> Result<MinimizationResult> {
    let m = l.order().ok_or_else(|| Error::InvalidInput("zero operator".into()))?;
    if m == 0 {
        return Err(Error::InvalidInput("operator of order 0 has no nonzero solution".into()));
    }
    let q = l.polynomial_degree()?;
    let (e, e_provenance) = match &e_override {
        Some(e) => (e.clone(), Provenance::UserSupplied),
        None => (
            global_census(l)?.e_all.ok_or(Error::NeedsExponentBound)?,
            Provenance::Computed,
        ),
    };
    let caps: Vec<usize> = match degree_cap {
        Some(c) => vec![c; m],
        None => bound_from_operator(l, e_override.clone(), None, Refinements::all())?
            .per_r
            .iter()
            .map(|b| b.degree_cap())
            .collect(),
    };
    let mut polynomial_l = DiffOperator::from_polys(polynomial_coefficients(l)?);
    polynomial_l.set_var(l.var());
    let mut ctx = SeriesContext::from_operator(l, initial.to_vec())?;
    let mut attempts = Vec::new();
    let mut annihilation_checked: Option<usize> = None;
    for r in 1..=m {
        let cap = caps[r - 1];
        let cutoff = to_usize(valuation_bound(r as u64, cap as u64, q as u64, m as u64, &e)?, "cutoff")?;
        ctx.extend_to(cutoff + m)?;
        if annihilation_checked.is_none_or(|c| c < cutoff) {
            let lf = apply_operator(&polynomial_l, &ctx, cutoff)?;
            if let Some(k) = lf.iter().position(|x| !x.is_zero()) {
                return Err(Error::Inconsistent(format!(
                    "coefficient {k} of L applied to the series is nonzero"
                )));
            }
            annihilation_checked = Some(cutoff);
        }
        let cols = (r + 1) * (cap + 1);
        let rows = system(ctx.coefficients(), r, cap, cutoff);
        let kernel = echelon(integer_rows(&rows), cols).nullspace();
        attempts.push(Attempt {
            r,
            degree_cap: cap,
            cutoff,
            unknowns: cols,
            kernel_dimension: kernel.len(),
        });
        if kernel.is_empty() {
            continue;
        }
        let lead = r * (cap + 1)..(r + 1) * (cap + 1);
        let v = kernel
            .iter()
            .find(|v| v[lead.clone()].iter().any(|x| !x.is_zero()))
            .unwrap_or(&kernel[0]);
        let raw = operator_from_vector(v, r, cap, l.var());
        let order = raw.order().expect("nonzero kernel vector");
        let monic = raw.monic()?;
        let residual = apply_operator(&raw, &ctx, cutoff)?;
        let (_, rem) = l.right_divmod(&monic)?;
        return Ok(MinimizationResult {
            found: true,
            operator: monic,
            polynomial_operator: raw,
            order,
            degree_cap: cap,
            cutoff,
            e: e.clone(),
            e_provenance,
            degree_cap_supplied: degree_cap.is_some(),
            certificate: Certificate {
                r,
                degree_cap: cap,
                q,
                m,
                e,
                cutoff,
                coefficients_checked: cutoff + 1,
                residual_zero: residual.iter().all(|x| x.is_zero()),
            },
            divides: rem.is_zero(),
            attempts,
        });
    }
    Err(Error::Inconsistent(format!(
        "no annihilating operator of order at most {m} within the degree caps"
    )))
}
