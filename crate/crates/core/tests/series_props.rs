mod common;

use common::*;
use diffop::algebra::{rat, Rational};
use diffop::bounds::valuation_bound;
use diffop::series::{apply_operator, minimize, operator_to_recurrence, SeriesContext};
use diffop::{DiffOperator, Error, Polynomial};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// Equations from `len - s_max` on are the ones used for extension, so
    /// the operator applied to the extended series vanishes there.
    #[test]
    fn extension_and_application_agree(l in arb_poly_operator(3, 3), seed in prop::collection::vec(arb_rational(), 0..6)) {
        let rec = operator_to_recurrence(&l).unwrap();
        let s_max = rec.s_max();
        let mut initial = seed;
        while (initial.len() as i64) < s_max {
            initial.push(rat(1));
        }
        let window = 25;
        let mut ctx = SeriesContext::from_operator(&l, initial.clone()).unwrap();
        prop_assume!(ctx.extend_to(window + 3).is_ok());
        let lf = apply_operator(&l, &ctx, window).unwrap();
        let first = (initial.len() as i64 - s_max).max(0) as usize;
        for (n, x) in lf.iter().enumerate() {
            // the recurrence residual is the same coefficient
            prop_assert_eq!(rec.residual(ctx.coefficients(), n as i64).unwrap(), x.clone());
            if n >= first {
                prop_assert!(x.is_zero(), "coefficient {} is {}", n, x);
            }
        }
    }

    /// Monomials `z^k` under the recurrence: `L z^k = sum_n residual(e_k, n) z^n`.
    #[test]
    fn recurrence_matches_operator_on_monomials(l in arb_poly_operator(3, 3), k in 0usize..8) {
        let rec = operator_to_recurrence(&l).unwrap();
        let mut e = vec![Rational::zero(); 20];
        e[k] = rat(1);
        let ctx = SeriesContext::explicit(e.clone());
        let lf = apply_operator(&l, &ctx, 10).unwrap();
        for (n, x) in lf.iter().enumerate() {
            prop_assert_eq!(rec.residual(&e, n as i64).unwrap(), x.clone());
        }
    }
}

/// Extends `initial` with more coefficients of the known solution until the
/// recurrence of `l` takes over.
fn seeded(l: &DiffOperator, known: impl Fn(usize) -> Rational, upto: usize) -> Vec<Rational> {
    let mut initial: Vec<Rational> = Vec::new();
    loop {
        let mut ctx = SeriesContext::from_operator(l, initial.clone()).unwrap();
        match ctx.extend_to(upto) {
            Ok(()) => return initial,
            Err(Error::NeedsMoreInitialTerms { index, .. }) => {
                while initial.len() <= index {
                    initial.push(known(initial.len()));
                }
            }
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn minimizer_recovers_polynomial_right_factors() {
    let mut rng = rng(21);
    for i in 0..20 {
        // f(0) != 0 keeps f D - f' regular at 0
        let mut f = poly_of_degree(&mut rng, 1 + i % 3);
        if f.coeff(0).is_zero() {
            f = &f + &Polynomial::one();
        }
        let m = DiffOperator::from_polys(vec![-f.derivative(), f.clone()]);
        let n = DiffOperator::from_polys(vec![poly_up_to(&mut rng, 1), Polynomial::constant(nonzero_rational(&mut rng))]);
        let l = n.mul(&m);
        let initial = seeded(&l, |k| f.coeff(k), 60);
        let deg = f.degree().unwrap();
        let e = rat(deg as i64);
        let res = minimize(&l, &initial, Some(deg), Some(e.clone())).unwrap();
        assert_eq!(res.order, 1, "case {i}");
        assert_eq!(res.operator, m.monic().unwrap(), "case {i}");
        assert!(res.divides, "case {i}");
        let c = &res.certificate;
        assert!(c.residual_zero);
        let expected = valuation_bound(c.r as u64, c.degree_cap as u64, c.q as u64, c.m as u64, &c.e).unwrap();
        assert_eq!(BigInt::from(c.cutoff), expected, "case {i}");
        assert_eq!((c.q, c.m), (l.polynomial_degree().unwrap(), 2));
        assert_eq!(c.e, e);
    }
}

#[test]
fn minimizer_on_exponential_factors() {
    let mut rng = rng(22);
    let exp = |k: usize| (1..=k).fold(rat(1), |acc, j| acc / rat(j as i64));
    for i in 0..8 {
        let n = DiffOperator::from_polys(vec![poly_up_to(&mut rng, 1), poly_of_degree(&mut rng, 0)]);
        let m = op("D - 1");
        let l = n.mul(&m);
        let initial = seeded(&l, exp, 40);
        let res = minimize(&l, &initial, Some(1), Some(rat(1))).unwrap();
        assert_eq!(res.operator, m, "case {i}");
        assert!(res.divides && res.certificate.residual_zero);
    }
    // a second-order minimal annihilator: cosine under (D + z) (D^2 + 1)
    let l = op("(D + z)*(D^2 + 1)");
    let cos: Vec<Rational> = (0..8)
        .map(|k| if k % 2 == 1 { rat(0) } else { exp(k) * rat(if k % 4 == 0 { 1 } else { -1 }) })
        .collect();
    let initial = seeded(&l, |k| cos[k].clone(), 40);
    let res = minimize(&l, &initial, Some(0), Some(rat(1))).unwrap();
    assert_eq!(res.order, 2);
    assert_eq!(res.operator, op("D^2 + 1"));
    assert_eq!(res.attempts[0].kernel_dimension, 0);
}
