#![allow(dead_code)]

use diffop::algebra::{rat, ratio};
use diffop::{parse_operator, DiffOperator, Polynomial, Rational, RationalFunction};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn op(s: &str) -> DiffOperator {
    parse_operator(s, "z").unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != rat(0) {
            return q;
        }
    }
}

/// Exactly degree `deg`.
pub fn poly_of_degree(rng: &mut impl Rng, deg: usize) -> Polynomial {
    let mut c: Vec<Rational> = (0..deg).map(|_| small_rational(rng)).collect();
    c.push(nonzero_rational(rng));
    Polynomial::new(c)
}

pub fn poly_up_to(rng: &mut impl Rng, max_deg: usize) -> Polynomial {
    let deg = rng.gen_range(0..=max_deg);
    poly_of_degree(rng, deg)
}

pub fn ratfunc(rng: &mut impl Rng, max_deg: usize) -> RationalFunction {
    let num = poly_up_to(rng, max_deg);
    let den = poly_up_to(rng, max_deg);
    RationalFunction::new(num, den).unwrap()
}

/// Order exactly `order`, coefficients of degree at most `max_deg`.
pub fn random_operator(rng: &mut impl Rng, order: usize, max_deg: usize, rational: bool) -> DiffOperator {
    let coeffs = (0..=order)
        .map(|j| {
            if j < order && rng.gen_bool(0.2) {
                return RationalFunction::zero();
            }
            if rational && rng.gen_bool(0.4) {
                ratfunc(rng, max_deg)
            } else {
                RationalFunction::from_poly(poly_up_to(rng, max_deg))
            }
        })
        .collect();
    DiffOperator::new(coeffs)
}

const POINTS: [(i64, i64); 6] = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1)];

/// Monic operator of order `r` with regular singularities only: the
/// coefficient of `D^j` has poles of order at most `r - j` at a few rational
/// points and vanishes to order `r - j` at infinity. Denominators have
/// degree at most 3.
pub fn fuchsian_monic(rng: &mut impl Rng, r: usize) -> DiffOperator {
    let count = rng.gen_range(0..=2);
    let pts: Vec<Rational> = POINTS
        .choose_multiple(rng, count)
        .map(|&(n, d)| ratio(n, d))
        .collect();
    let mut coeffs = Vec::with_capacity(r + 1);
    for j in 0..r {
        let mut den = Polynomial::one();
        let mut budget = 3usize;
        for p in &pts {
            let e = rng.gen_range(0..=(r - j)).min(budget);
            budget -= e;
            den = &den * &Polynomial::linear(p).pow(e as u32);
        }
        let d = den.degree().unwrap();
        let c = if d < r - j || rng.gen_bool(0.15) {
            RationalFunction::zero()
        } else {
            let num = poly_up_to(rng, d - (r - j));
            RationalFunction::new(num, den).unwrap()
        };
        coeffs.push(c);
    }
    coeffs.push(RationalFunction::one());
    DiffOperator::new(coeffs)
}

/// Monic of order `r` with coefficients of degree at most 3, usually
/// irregular somewhere.
pub fn irregular_monic(rng: &mut impl Rng, r: usize) -> DiffOperator {
    let mut coeffs: Vec<RationalFunction> = (0..r).map(|_| ratfunc(rng, 3)).collect();
    coeffs.push(RationalFunction::one());
    DiffOperator::new(coeffs)
}

pub struct Factorization {
    pub n: DiffOperator,
    pub m: DiffOperator,
    pub l: DiffOperator,
    pub fuchsian: bool,
}

/// `L = N M` with `M` monic of order 1 or 2 and `N` of order 0 to 2. Three
/// quarters are Fuchsian by construction.
pub fn factorization_corpus(seed: u64, count: usize) -> Vec<Factorization> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let fuchsian = i % 4 != 3;
            let r = rng.gen_range(1..=2);
            let s = rng.gen_range(0..=2);
            let (m, n) = if fuchsian {
                let m = fuchsian_monic(&mut rng, r);
                let scale = RationalFunction::from_poly(poly_up_to(&mut rng, 1));
                let n = fuchsian_monic(&mut rng, s).scale_left(&scale);
                (m, n)
            } else {
                let m = irregular_monic(&mut rng, r);
                let n = random_operator(&mut rng, s, 2, true);
                (m, n)
            };
            let l = n.mul(&m);
            Factorization { n, m, l, fuchsian }
        })
        .collect()
}

/// Gauss operator `z(1-z) D^2 + (c - (a+b+1) z) D - ab`.
pub fn gauss(a: &Rational, b: &Rational, c: &Rational) -> DiffOperator {
    let one = rat(1);
    let lead = Polynomial::new(vec![rat(0), one.clone(), -one.clone()]);
    let mid = Polynomial::new(vec![c.clone(), -(a + b + &one)]);
    let low = Polynomial::constant(-(a * b));
    DiffOperator::from_polys(vec![low, mid, lead])
}

pub fn legendre(n: i64) -> DiffOperator {
    op(&format!("(1-z^2)*D^2 - 2*z*D + {}", n * (n + 1)))
}

pub fn kummer(k: i64) -> DiffOperator {
    op(&format!("z*D^2 + (2-z)*D + {k}"))
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

pub fn arb_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(arb_rational(), 0..=max_deg + 1).prop_map(Polynomial::new)
}

pub fn arb_nonzero_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    arb_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn arb_ratfunc(max_deg: usize) -> impl Strategy<Value = RationalFunction> {
    (arb_poly(max_deg), arb_nonzero_poly(max_deg))
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

/// Nonzero operator with polynomial coefficients.
pub fn arb_poly_operator(max_order: usize, max_deg: usize) -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec(arb_poly(max_deg), 1..=max_order + 1)
        .prop_map(DiffOperator::from_polys)
        .prop_filter("nonzero", |o| !o.is_zero())
}

/// Nonzero operator with rational function coefficients.
pub fn arb_operator(max_order: usize, max_deg: usize) -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec(arb_ratfunc(max_deg), 1..=max_order + 1)
        .prop_map(DiffOperator::new)
        .prop_filter("nonzero", |o| !o.is_zero())
}

/// Seeded corpus generator for property tests that need rand-style control.
pub fn arb_seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}
