use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::algebra::{serde_bigint, serde_rational, Rational};
use crate::error::{Error, Result};

/// Largest exponent bit count materialized exactly.
const EXACT_BITS: u64 = 1 << 22;
/// Power used for upper bounds on `log2 a`: `log2 a < bits(a^K) / K`.
const LOG_PRECISION: u32 = 64;

/// `log2` of the tower bound `2^(a^e) * H^(b^f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Log2Estimate {
    /// `a^e + b^f * ceil(log2 H)`; equal to the true value when `H` is a
    /// power of two, an upper bound otherwise.
    Exact {
        #[serde(with = "serde_bigint")]
        value: BigInt,
        exact: bool,
    },
    /// Too large to write down: `log2(log2 bound) <= value`.
    LogLog {
        #[serde(with = "serde_rational")]
        value: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerBound {
    pub q: u64,
    pub m: u64,
    pub kappa: u64,
    /// Naive height of the operator.
    #[serde(rename = "H", with = "serde_bigint")]
    pub height: BigInt,
    /// `(a, e)` meaning `2^(a^e)`.
    pub base2_exponent: (u64, u64),
    /// `(b, f)` meaning `H^(b^f)`.
    pub height_exponent: (u64, u64),
    pub log2_estimate: Log2Estimate,
}

fn bits(n: &BigInt) -> u64 {
    n.bits()
}

/// Upper bound on `log2 n` for `n >= 1`.
fn log2_upper(n: &BigInt) -> Rational {
    if n.is_one() {
        return Rational::zero();
    }
    let p: BigInt = Pow::pow(n, LOG_PRECISION);
    Rational::new(BigInt::from(bits(&p)), BigInt::from(LOG_PRECISION))
}

fn ceil_log2(h: &BigInt) -> BigInt {
    // bits(h - 1) = ceil(log2 h) for h >= 1
    BigInt::from(bits(&(h - BigInt::one())))
}

/// The exponent tower with `a = 36(q+1)m kappa`, `b = 5 kappa (q+1) m`,
/// `e = f = 9 (q+1)^2 m^(3m)`.
pub fn bcy_exponent_bound(q: u64, m: u64, kappa: u64, height: &BigInt) -> Result<TowerBound> {
    if m == 0 || kappa == 0 {
        return Err(Error::InvalidInput("m and kappa must be positive".into()));
    }
    if !height.is_positive() {
        return Err(Error::InvalidInput("height must be positive".into()));
    }
    let overflow = || Error::InvalidInput("tower parameters overflow".into());
    let q1 = q.checked_add(1).ok_or_else(overflow)?;
    let a = [36, q1, m, kappa].iter().try_fold(1u64, |acc, x| acc.checked_mul(*x)).ok_or_else(overflow)?;
    let b = [5, kappa, q1, m].iter().try_fold(1u64, |acc, x| acc.checked_mul(*x)).ok_or_else(overflow)?;
    let m3m = u32::try_from(3 * m).ok().and_then(|k| m.checked_pow(k)).ok_or_else(overflow)?;
    let e = [9, q1, q1, m3m].iter().try_fold(1u64, |acc, x| acc.checked_mul(*x)).ok_or_else(overflow)?;
    let f = e;
    let a_big = BigInt::from(a);
    let b_big = BigInt::from(b);
    let lh = ceil_log2(height);
    let fits = |base: &BigInt, exp: u64| bits(base).saturating_mul(exp) <= EXACT_BITS;
    let log2_estimate = if fits(&a_big, e) && fits(&b_big, f) {
        let ae: BigInt = Pow::pow(&a_big, e);
        let bf: BigInt = Pow::pow(&b_big, f);
        Log2Estimate::Exact {
            value: ae + bf * &lh,
            exact: (height & (height - BigInt::one())).is_zero(),
        }
    } else {
        // log2(X + Y) <= 1 + max(log2 X, log2 Y)
        let x = Rational::from_integer(e.into()) * log2_upper(&a_big);
        let value = if lh.is_zero() {
            x
        } else {
            let y = Rational::from_integer(f.into()) * log2_upper(&b_big) + log2_upper(&lh);
            Rational::one() + x.max(y)
        };
        Log2Estimate::LogLog { value }
    };
    Ok(TowerBound {
        q,
        m,
        kappa,
        height: height.clone(),
        base2_exponent: (a, e),
        height_exponent: (b, f),
        log2_estimate,
    })
}

/// Cutoff `floor(r(n+1) + 2(q+1)^2 m^3 + 2(q+1) m^2 (E+1))`: if the first
/// coefficients up to this index of `sum_j P_j f^(j)` vanish, it vanishes.
pub fn valuation_bound(r: u64, n: u64, q: u64, m: u64, e: &Rational) -> Result<BigInt> {
    if r == 0 || r > m {
        return Err(Error::InvalidInput(format!("r = {r} must lie in 1..={m}")));
    }
    if e.is_negative() {
        return Err(Error::InvalidInput("E must be nonnegative".into()));
    }
    let big = |x: u64| BigInt::from(x);
    let q1 = big(q) + 1;
    let m = big(m);
    let fixed = big(r) * (big(n) + 1) + BigInt::from(2) * &q1 * &q1 * &m * &m * &m;
    let coef = BigInt::from(2) * &q1 * &m * &m;
    let total = Rational::from_integer(fixed) + Rational::from_integer(coef) * (e + Rational::one());
    Ok(total.floor().to_integer())
}
