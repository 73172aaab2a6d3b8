use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::{fmt_rational, parse_rational, rational_roots, Polynomial, Rational};
use crate::error::Error;
use crate::operator::parse_operator;

/// A point of the projective line, or a cluster of conjugate algebraic
/// points given by a monic squarefree polynomial without rational roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointSpec {
    Rational(Rational),
    Orbit(Polynomial),
    Infinity,
}

impl PointSpec {
    /// `inf`, a rational literal, or `roots:<polynomial>` for a cluster of
    /// conjugate points.
    pub fn parse(s: &str, var: &str) -> crate::Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "oo") {
            return Ok(PointSpec::Infinity);
        }
        let Some(poly) = s.strip_prefix("roots:") else {
            return parse_rational(s).map(PointSpec::Rational);
        };
        let op = parse_operator(poly, var)?;
        let p = match (op.order(), op.coeffs().first()) {
            (Some(0), Some(c)) if c.is_polynomial() => c.num().monic(),
            _ => return Err(Error::InvalidInput(format!("{poly:?} is not a polynomial"))),
        };
        if p.degree() == Some(1) {
            return Ok(PointSpec::Rational(-p.coeff(0)));
        }
        if p.is_constant() || !p.gcd(&p.derivative()).is_constant() || !rational_roots(&p)?.is_empty() {
            return Err(Error::InvalidInput(format!(
                "{poly:?} must be squarefree of degree >= 2 without rational roots"
            )));
        }
        Ok(PointSpec::Orbit(p))
    }

    pub fn rational(q: Rational) -> Self {
        PointSpec::Rational(q)
    }

    pub fn zero() -> Self {
        PointSpec::Rational(Rational::from_integer(0.into()))
    }

    /// Number of points of the projective line represented.
    pub fn orbit_size(&self) -> usize {
        match self {
            PointSpec::Orbit(p) => p.degree().unwrap_or(0),
            _ => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointSpec::Infinity)
    }

    /// Monic polynomial vanishing exactly at the represented finite points.
    pub fn minimal_polynomial(&self) -> Option<Polynomial> {
        match self {
            PointSpec::Rational(r) => Some(Polynomial::linear(r)),
            PointSpec::Orbit(p) => Some(p.monic()),
            PointSpec::Infinity => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            PointSpec::Rational(_) => 0,
            PointSpec::Orbit(_) => 1,
            PointSpec::Infinity => 2,
        }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        match self {
            PointSpec::Rational(r) => fmt_rational(r),
            PointSpec::Orbit(p) => format!("roots of {}", p.fmt_var(var)),
            PointSpec::Infinity => "infinity".into(),
        }
    }
}

impl Ord for PointSpec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match (self, other) {
            (PointSpec::Rational(a), PointSpec::Rational(b)) => a.cmp(b),
            (PointSpec::Orbit(a), PointSpec::Orbit(b)) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev())),
            _ => Ordering::Equal,
        })
    }
}

impl PartialOrd for PointSpec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

impl Serialize for PointSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            PointSpec::Rational(r) => {
                m.serialize_entry("kind", "rational")?;
                m.serialize_entry("value", &fmt_rational(r))?;
            }
            PointSpec::Orbit(p) => {
                m.serialize_entry("kind", "algebraic-orbit")?;
                m.serialize_entry("polynomial", p)?;
            }
            PointSpec::Infinity => {
                m.serialize_entry("kind", "infinity")?;
            }
        }
        m.end()
    }
}
