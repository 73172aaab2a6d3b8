use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{serde_rational, serde_rational_opt, Rational};
use crate::error::{Error, Result};
use crate::local::global_census;
use crate::operator::DiffOperator;

/// Where the exponent bound `E` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    UserSupplied,
    BcyTower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    pub r: usize,
    #[serde(rename = "E", with = "serde_rational")]
    pub e: Rational,
    /// Exponent bounds at infinity and at each finite non-apparent singular
    /// point, for the summed first term.
    #[serde(rename = "E_per_point", with = "crate::algebra::serde_rational_vec")]
    pub e_per_point: Vec<Rational>,
    #[serde(rename = "N", with = "serde_rational")]
    pub n: Rational,
    #[serde(rename = "S")]
    pub s: usize,
    pub q: Option<usize>,
    pub sing_count: Option<usize>,
    pub provenance: Provenance,
}

impl BoundInputs {
    pub fn new(r: usize, e: Rational, n: Rational, s: usize) -> Self {
        BoundInputs {
            r,
            e,
            e_per_point: Vec::new(),
            n,
            s,
            q: None,
            sing_count: None,
            provenance: Provenance::UserSupplied,
        }
    }
}

/// Optional substitutions in the degree bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Refinements {
    /// `(S+1) E` replaced by the sum of the per-point bounds.
    #[serde(rename = "sumE")]
    pub sum_e: bool,
    /// `r N` replaced by `r (N - 1)` when `N >= 1`.
    #[serde(rename = "nminus1")]
    pub n_minus_1: bool,
    /// `(S+1) N` in the last term replaced by `min((S+1) N, 2q + 1 - #Sing)`.
    #[serde(rename = "minslopes")]
    pub min_slopes: bool,
}

impl Refinements {
    pub fn all() -> Self {
        Refinements {
            sum_e: true,
            n_minus_1: true,
            min_slopes: true,
        }
    }

    /// Parses a comma-separated list of `sumE`, `nminus1`, `minslopes`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Refinements::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match item {
                "sumE" => out.sum_e = true,
                "nminus1" => out.n_minus_1 = true,
                "minslopes" => out.min_slopes = true,
                "all" => out = Refinements::all(),
                other => return Err(Error::InvalidInput(format!("unknown refinement {other:?}"))),
            }
        }
        Ok(out)
    }
}

/// The four addends `r^2 (S+1) E`, `r (N+1) S`, `r N`,
/// `r^2 (r-1) ((S+1)(N+1) - 2) / 2` (or their refined forms).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Terms {
    #[serde(with = "crate::algebra::serde_rational_vec")]
    pub terms: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub sum: Rational,
}

impl Terms {
    fn new(terms: Vec<Rational>) -> Self {
        let sum = terms.iter().cloned().sum();
        Terms { terms, sum }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub inputs: BoundInputs,
    /// Refinements actually applied.
    pub refinements: Refinements,
    /// The formula as stated, clamped at 0.
    #[serde(with = "serde_rational")]
    pub plain_bound: Rational,
    #[serde(with = "crate::algebra::serde_bigint")]
    pub plain_ceiling: BigInt,
    #[serde(with = "serde_rational")]
    pub refined_bound: Rational,
    #[serde(with = "crate::algebra::serde_bigint")]
    pub refined_ceiling: BigInt,
    pub plain_terms: Terms,
    pub refined_terms: Terms,
}

impl BoundReport {
    /// Ceiling of the refined bound, as a degree cap.
    pub fn degree_cap(&self) -> usize {
        usize::try_from(&self.refined_ceiling).unwrap_or(usize::MAX)
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn uq(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Degree bound for a monic right factor of order `r`.
pub fn theorem1_bound(inputs: &BoundInputs, wanted: Refinements) -> Result<BoundReport> {
    if inputs.e.is_negative() || inputs.n.is_negative() {
        return Err(Error::InvalidInput("E and N must be nonnegative".into()));
    }
    if inputs.e_per_point.iter().any(|x| x.is_negative() || x > &inputs.e) {
        return Err(Error::InvalidInput("per-point bounds must lie in [0, E]".into()));
    }
    if inputs.e_per_point.len() > inputs.s + 1 {
        return Err(Error::InvalidInput("more per-point bounds than S + 1".into()));
    }
    if wanted.sum_e && inputs.e_per_point.is_empty() {
        return Err(Error::InvalidInput("sumE needs per-point exponent bounds".into()));
    }
    if wanted.min_slopes && (inputs.q.is_none() || inputs.sing_count.is_none()) {
        return Err(Error::InvalidInput("minslopes needs q and the singularity count".into()));
    }
    let r = uq(inputs.r);
    let s1 = uq(inputs.s + 1);
    let s = uq(inputs.s);
    let n = &inputs.n;
    let e = &inputs.e;
    let r2 = &r * &r;
    let half_r2_r1 = &r2 * (&r - Rational::one()) / q(2);
    let two = q(2);

    let t1 = &r2 * &s1 * e;
    let t2 = &r * (n + Rational::one()) * &s;
    let t3 = &r * n;
    let t4 = &half_r2_r1 * (&s1 * (n + Rational::one()) - &two);
    let plain = Terms::new(vec![t1.clone(), t2.clone(), t3.clone(), t4]);

    let applied = Refinements {
        sum_e: wanted.sum_e,
        n_minus_1: wanted.n_minus_1 && n >= &Rational::one(),
        min_slopes: wanted.min_slopes,
    };
    let rt1 = if applied.sum_e {
        &r2 * inputs.e_per_point.iter().cloned().sum::<Rational>()
    } else {
        t1
    };
    let rt3 = if applied.n_minus_1 { &r * (n - Rational::one()) } else { t3 };
    let mut x = &s1 * n;
    if applied.min_slopes {
        let alt = q(2 * inputs.q.unwrap() as i64 + 1 - inputs.sing_count.unwrap() as i64);
        x = x.min(alt);
    }
    let rt4 = &half_r2_r1 * (&s1 + x - &two);
    let refined = Terms::new(vec![rt1, t2, rt3, rt4]);

    let plain_bound = plain.sum.clone().max(Rational::zero());
    let refined_bound = refined.sum.clone().max(Rational::zero());
    Ok(BoundReport {
        inputs: inputs.clone(),
        refinements: applied,
        plain_ceiling: ceil(&plain_bound),
        refined_ceiling: ceil(&refined_bound),
        plain_bound,
        refined_bound,
        plain_terms: plain,
        refined_terms: refined,
    })
}

/// Bounds for every candidate right-factor order of an operator.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorBounds {
    /// Order `m` of the operator.
    pub m: usize,
    /// Largest coefficient degree `q` of the polynomial form.
    pub q: usize,
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "S_relaxed")]
    pub s_relaxed: usize,
    /// `S` actually used: the strict count unless overridden.
    #[serde(rename = "S_used")]
    pub s_used: usize,
    #[serde(rename = "N", with = "serde_rational")]
    pub n: Rational,
    #[serde(rename = "E", with = "serde_rational")]
    pub e: Rational,
    #[serde(rename = "E_census", with = "serde_rational_opt")]
    pub e_census: Option<Rational>,
    pub e_provenance: Provenance,
    pub s_overridden: bool,
    pub sing_count: usize,
    pub fuchsian: bool,
    /// One report per `r = 1..m`.
    pub per_r: Vec<BoundReport>,
    /// Same with the relaxed `S` (and its exponent bound when computed). For
    /// comparison only: a right factor may have poles at points the relaxed
    /// count treats as apparent, so this is not a valid degree bound.
    pub per_r_relaxed: Vec<BoundReport>,
    /// Coarse inputs `N = m + q`, `S = q`, no refinements.
    pub coarse: Vec<BoundReport>,
}

impl OperatorBounds {
    pub fn for_order(&self, r: usize) -> Option<&BoundReport> {
        self.per_r.get(r.checked_sub(1)?)
    }
}

/// Runs the census and evaluates the bound for each `r = 1..m`.
///
/// `e_override` replaces the exponent bound (needed for irregular operators);
/// `s_override` replaces the count of non-apparent singularities.
pub fn bound_from_operator(
    op: &DiffOperator,
    e_override: Option<Rational>,
    s_override: Option<usize>,
    wanted: Refinements,
) -> Result<OperatorBounds> {
    let m = op
        .order()
        .ok_or_else(|| Error::InvalidInput("zero operator".into()))?;
    let census = global_census(op)?;
    let q = op.polynomial_degree()?;
    let (e, provenance, per_point, e_relaxed) = match (&e_override, &census.e_fuchsian) {
        (Some(e), _) => (e.clone(), Provenance::UserSupplied, Vec::new(), e.clone()),
        (None, Some(e)) => (
            e.clone(),
            Provenance::Computed,
            census.e_per_point.clone(),
            census.e_fuchsian_relaxed.clone().unwrap_or_else(|| e.clone()),
        ),
        (None, None) => return Err(Error::NeedsExponentBound),
    };
    if e.is_negative() {
        return Err(Error::InvalidInput("E must be nonnegative".into()));
    }
    let s_used = s_override.unwrap_or(census.s_strict);
    // Per-point bounds describe the census count only.
    let per_point = if s_override.is_some_and(|s| s != census.s_strict) {
        Vec::new()
    } else {
        per_point
    };
    let mask = |pp: &Vec<Rational>| Refinements {
        sum_e: wanted.sum_e && !pp.is_empty(),
        ..wanted
    };
    let make = |r: usize, e: &Rational, s: usize, pp: &Vec<Rational>| {
        let inputs = BoundInputs {
            r,
            e: e.clone(),
            e_per_point: pp.clone(),
            n: census.n_max.clone(),
            s,
            q: Some(q),
            sing_count: Some(census.sing_count),
            provenance,
        };
        theorem1_bound(&inputs, mask(pp))
    };
    let per_r = (1..=m).map(|r| make(r, &e, s_used, &per_point)).collect::<Result<Vec<_>>>()?;
    let s_relaxed_used = s_override.unwrap_or(census.s_relaxed);
    let per_r_relaxed = (1..=m)
        .map(|r| make(r, &e_relaxed, s_relaxed_used, &Vec::new()))
        .collect::<Result<Vec<_>>>()?;
    let coarse = (1..=m)
        .map(|r| {
            let mut inputs = BoundInputs::new(r, e.clone(), uq(m + q), q);
            inputs.provenance = provenance;
            theorem1_bound(&inputs, Refinements::default())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorBounds {
        m,
        q,
        s: census.s_strict,
        s_relaxed: census.s_relaxed,
        s_used,
        n: census.n_max.clone(),
        e,
        e_census: census.e_fuchsian.clone(),
        e_provenance: provenance,
        s_overridden: s_override.is_some(),
        sing_count: census.sing_count,
        fuchsian: census.fuchsian,
        per_r,
        per_r_relaxed,
        coarse,
    })
}
