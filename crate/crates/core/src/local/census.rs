use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::apparent::{apparent_at_regular, Apparent, ApparentMode};
use super::indicial::{indicial_polynomial, Exponents, Indicial};
use super::newton::{newton_polygon, NewtonPolygon};
use super::valuation::valuation;
use super::PointSpec;
use crate::algebra::{
    rational_roots, serde_rational, serde_rational_opt, squarefree_factorization, Polynomial,
    Rational,
};
use crate::error::{Error, Result};
use crate::operator::DiffOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Ordinary,
    RegularSingular,
    Irregular,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularityReport {
    pub point: PointSpec,
    pub orbit_size: usize,
    #[serde(with = "serde_rational")]
    pub katz_rank: Rational,
    pub classification: Classification,
    pub newton_polygon: NewtonPolygon,
    /// Absent at irregular points.
    pub indicial: Option<Indicial>,
    pub exponents: Option<Exponents>,
    /// Power series basis (`None` at infinity).
    pub apparent: Option<Apparent>,
    /// Laurent series basis (`None` at infinity).
    pub apparent_relaxed: Option<Apparent>,
    /// `sum of exponents - orbit_size * r(r-1)/2`, at regular points.
    #[serde(with = "serde_rational_opt")]
    pub fuchs_sum: Option<Rational>,
}

impl SingularityReport {
    pub fn exponent_bound(&self) -> Option<&Rational> {
        self.exponents.as_ref().map(|e| &e.modulus_bound)
    }

    fn non_apparent(&self, mode: ApparentMode) -> bool {
        let a = match mode {
            ApparentMode::Strict => self.apparent,
            ApparentMode::Relaxed => self.apparent_relaxed,
        };
        a.is_some_and(|a| !a.is_yes())
    }
}

/// Global invariants entering the degree bound.
#[derive(Clone, Debug, Serialize)]
pub struct GlobalCensus {
    pub order: usize,
    pub finite_singularities: Vec<SingularityReport>,
    pub infinity_report: SingularityReport,
    /// Finite non-apparent singularities (power series convention), with
    /// orbit multiplicity.
    #[serde(rename = "S")]
    pub s_strict: usize,
    /// Same with meromorphic bases allowed.
    #[serde(rename = "S_relaxed")]
    pub s_relaxed: usize,
    /// Largest slope over all singularities and infinity.
    #[serde(rename = "N", with = "serde_rational")]
    pub n_max: Rational,
    /// Largest exponent modulus bound at infinity and the finite non-apparent
    /// singularities; only for Fuchsian operators.
    #[serde(rename = "E_fuchsian", with = "serde_rational_opt")]
    pub e_fuchsian: Option<Rational>,
    #[serde(rename = "E_fuchsian_relaxed", with = "serde_rational_opt")]
    pub e_fuchsian_relaxed: Option<Rational>,
    /// Largest exponent modulus bound at infinity and every finite
    /// singularity, apparent or not.
    #[serde(rename = "E_all", with = "serde_rational_opt")]
    pub e_all: Option<Rational>,
    /// Exponent bounds at infinity and at each non-apparent singular point,
    /// one entry per point of each orbit.
    #[serde(rename = "E_per_point", with = "crate::algebra::serde_rational_vec")]
    pub e_per_point: Vec<Rational>,
    pub sing_count: usize,
    pub fuchsian: bool,
    /// Strict and relaxed counts differ.
    pub s_conventions_differ: bool,
}

impl GlobalCensus {
    pub fn reports(&self) -> impl Iterator<Item = &SingularityReport> {
        self.finite_singularities.iter().chain(std::iter::once(&self.infinity_report))
    }
}

/// Finite singular points: rational roots and orbit clusters of the leading
/// coefficient of the polynomial form.
///
/// Clusters without rational roots are split until every coefficient has the
/// same valuation at each of their roots.
pub fn singular_points(op: &DiffOperator) -> Result<Vec<PointSpec>> {
    let polys = op.polynomial_form()?;
    let lead = polys.last().unwrap();
    let mut points = Vec::new();
    let mut clusters = Vec::new();
    for (f, _) in squarefree_factorization(lead)? {
        let mut rest = f.clone();
        for (r, _) in rational_roots(&f)? {
            rest = rest.exact_div(&Polynomial::linear(&r))?;
            points.push(PointSpec::Rational(r));
        }
        if !rest.is_constant() {
            clusters.push(rest.monic());
        }
    }
    let mut by: Vec<Polynomial> = polys.clone();
    for c in op.coeffs() {
        by.push(c.num().clone());
        by.push(c.den().clone());
    }
    for f in clusters {
        points.extend(split_orbit(&f, &by).into_iter().map(PointSpec::Orbit));
    }
    points.sort();
    Ok(points)
}

/// Split a squarefree factor into pieces on whose roots each of the given
/// polynomials vanishes to a constant order.
pub fn split_orbit(f: &Polynomial, by: &[Polynomial]) -> Vec<Polynomial> {
    let mut pieces = vec![f.monic()];
    for h in by {
        if h.is_zero() || h.is_constant() {
            continue;
        }
        pieces = pieces.into_iter().flat_map(|p| split_by_multiplicity(&p, h)).collect();
    }
    pieces
}

/// Split a squarefree `f` into pieces on whose roots `h` vanishes to the same
/// order.
fn split_by_multiplicity(f: &Polynomial, h: &Polynomial) -> Vec<Polynomial> {
    let mut pieces = Vec::new();
    let mut current = f.clone();
    let mut h = h.clone();
    loop {
        let g = current.gcd(&h);
        let rest = current.exact_div(&g).expect("gcd divides");
        if !rest.is_constant() {
            pieces.push(rest.monic());
        }
        if g.is_constant() {
            break;
        }
        h = h.exact_div(&g).expect("gcd divides");
        current = g;
    }
    pieces
}

fn report(op: &DiffOperator, point: PointSpec) -> Result<SingularityReport> {
    let mu = op.order().expect("nonzero");
    let polygon = newton_polygon(op, &point)?;
    let katz_rank = polygon.katz_rank();
    let regular = katz_rank.is_zero();
    let (indicial, exponents) = if regular {
        let ind = indicial_polynomial(op, &point)?;
        let ex = Exponents::of(ind.rational_form())?;
        (Some(ind), Some(ex))
    } else {
        (None, None)
    };
    let finite = !point.is_infinity();
    let singular = if finite {
        true
    } else {
        op.invert_variable()
            .monic()?
            .coeffs()
            .iter()
            .any(|c| valuation(c, &PointSpec::zero()).is_some_and(|v| v < 0))
    };
    let classification = match (singular, regular) {
        (false, _) => Classification::Ordinary,
        (true, true) => Classification::RegularSingular,
        (true, false) => Classification::Irregular,
    };
    let (apparent, apparent_relaxed) = match (&exponents, finite) {
        (_, false) => (None, None),
        (None, true) => (Some(Apparent::No), Some(Apparent::No)),
        (Some(ex), true) => (
            Some(apparent_at_regular(op, &point, ex, ApparentMode::Strict)?),
            Some(apparent_at_regular(op, &point, ex, ApparentMode::Relaxed)?),
        ),
    };
    let orbit_size = point.orbit_size();
    let fuchs_sum = exponents.as_ref().map(|e| {
        let shift = Rational::from_integer((orbit_size * mu * mu.saturating_sub(1) / 2).into());
        &e.sum - shift
    });
    Ok(SingularityReport {
        point,
        orbit_size,
        katz_rank,
        classification,
        newton_polygon: polygon,
        indicial,
        exponents,
        apparent,
        apparent_relaxed,
        fuchs_sum,
    })
}

/// Classify every finite singularity and infinity.
pub fn global_census(op: &DiffOperator) -> Result<GlobalCensus> {
    let order = op
        .order()
        .ok_or_else(|| Error::InvalidInput("zero operator".into()))?;
    let points = singular_points(op)?;
    let finite: Vec<SingularityReport> = points
        .into_par_iter()
        .map(|p| report(op, p))
        .collect::<Result<_>>()?;
    let infinity = report(op, PointSpec::Infinity)?;
    let count = |mode| {
        finite
            .iter()
            .filter(|r| r.non_apparent(mode))
            .map(|r| r.orbit_size)
            .sum::<usize>()
    };
    let s_strict = count(ApparentMode::Strict);
    let s_relaxed = count(ApparentMode::Relaxed);
    let n_max = finite
        .iter()
        .chain(std::iter::once(&infinity))
        .map(|r| r.katz_rank.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let fuchsian = n_max.is_zero();
    let e_over = |mode| -> Option<Rational> {
        if !fuchsian {
            return None;
        }
        finite
            .iter()
            .filter(|r| r.non_apparent(mode))
            .chain(std::iter::once(&infinity))
            .filter_map(|r| r.exponent_bound().cloned())
            .max()
    };
    let e_per_point = if fuchsian {
        std::iter::once(&infinity)
            .chain(finite.iter().filter(|r| r.non_apparent(ApparentMode::Strict)))
            .flat_map(|r| std::iter::repeat_n(r.exponent_bound().cloned().unwrap(), r.orbit_size))
            .collect()
    } else {
        Vec::new()
    };
    Ok(GlobalCensus {
        order,
        sing_count: finite.iter().map(|r| r.orbit_size).sum(),
        e_fuchsian: e_over(ApparentMode::Strict),
        e_fuchsian_relaxed: e_over(ApparentMode::Relaxed),
        e_all: if fuchsian {
            finite.iter().chain(std::iter::once(&infinity)).filter_map(|r| r.exponent_bound().cloned()).max()
        } else {
            None
        },
        e_per_point,
        finite_singularities: finite,
        infinity_report: infinity,
        s_strict,
        s_relaxed,
        n_max,
        fuchsian,
        s_conventions_differ: s_strict != s_relaxed,
    })
}
