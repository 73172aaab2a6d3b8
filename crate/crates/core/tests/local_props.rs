mod common;

use common::*;
use diffop::algebra::{rat, rational_roots, Rational};
use diffop::bounds::fuchs_summary;
use diffop::local::{
    global_census, indicial_polynomial, is_apparent, is_singular, katz_rank, newton_polygon,
    newton_polygon_theta, singular_points, Apparent, Classification, Exponents, PointSpec,
};
use diffop::{parse_operator, DiffOperator, Polynomial};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

/// Operator with polynomial solutions `f1`, `f2`: the Wronskian determinant
/// in `y, f1, f2`. Every finite singular point is apparent.
fn with_polynomial_solutions(f1: &Polynomial, f2: &Polynomial) -> DiffOperator {
    let (d1, d2) = (f1.derivative(), f2.derivative());
    let (dd1, dd2) = (d1.derivative(), d2.derivative());
    let c2 = &(f1 * &d2) - &(f2 * &d1);
    let c1 = -&(&(f1 * &dd2) - &(f2 * &dd1));
    let c0 = &(&d1 * &dd2) - &(&d2 * &dd1);
    DiffOperator::from_polys(vec![c0, c1, c2])
}

fn corpus_points(op: &DiffOperator, rng: &mut impl Rng) -> Vec<PointSpec> {
    let mut points: Vec<PointSpec> = singular_points(op)
        .unwrap()
        .into_iter()
        .filter(|p| matches!(p, PointSpec::Rational(_)))
        .collect();
    points.push(PointSpec::Rational(small_rational(rng)));
    points.push(PointSpec::Infinity);
    points
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn polygon_shape(op in arb_operator(3, 3), x in arb_rational()) {
        for point in [PointSpec::Rational(x.clone()), PointSpec::Infinity] {
            let p = newton_polygon(&op, &point).unwrap();
            let slopes = p.slopes();
            prop_assert!(slopes.windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(slopes.iter().all(|(s, _)| !s.is_negative()));
            prop_assert_eq!(p.vertices.last().unwrap().0 as usize, op.order().unwrap());
            prop_assert_eq!(p.order(), op.order().unwrap());
        }
    }

    #[test]
    fn ordinary_point_indicial(op in arb_operator(3, 2), x in arb_rational()) {
        let point = PointSpec::Rational(x);
        prop_assume!(!is_singular(&op, &point).unwrap());
        let mu = op.order().unwrap();
        let ind = indicial_polynomial(&op, &point).unwrap();
        prop_assert_eq!(ind.rational_form().monic(), Polynomial::falling_factorial(mu));
    }
}

#[test]
fn d_form_and_theta_polygons_agree() {
    let mut rng = rng(3);
    for i in 0..150 {
        let op = random_operator(&mut rng, 1 + i % 3, 3, true);
        for point in corpus_points(&op, &mut rng) {
            let a = newton_polygon(&op, &point).unwrap();
            let b = newton_polygon_theta(&op, &point).unwrap();
            assert_eq!(a, b, "case {i} at {point:?}");
        }
    }
}

#[test]
fn census_invariants() {
    let mut rng = rng(4);
    for i in 0..60 {
        let op = if i % 2 == 0 {
            fuchsian_monic(&mut rng, 1 + i % 3)
        } else {
            irregular_monic(&mut rng, 1 + i % 2)
        };
        let census = global_census(&op).unwrap();
        let lead = op.polynomial_form().unwrap().last().unwrap().clone();
        assert!(census.s_strict <= lead.degree().unwrap(), "case {i}");
        assert!(census.s_relaxed <= census.s_strict, "case {i}");
        let n_max = census.reports().map(|r| r.katz_rank.clone()).max().unwrap();
        assert_eq!(census.n_max, n_max, "case {i}");
        let all_regular = census.reports().all(|r| r.classification != Classification::Irregular);
        assert_eq!(census.e_fuchsian.is_some(), all_regular, "case {i}");
        assert_eq!(census.fuchsian, all_regular, "case {i}");
        for r in census.reports() {
            match r.classification {
                Classification::Ordinary => {
                    assert!(r.katz_rank.is_zero());
                    let mu = census.order as i64;
                    let values: Vec<Rational> =
                        r.exponents.as_ref().unwrap().rational.iter().map(|e| e.value.clone()).collect();
                    assert_eq!(values, (0..mu).map(rat).collect::<Vec<_>>());
                }
                Classification::Irregular => {
                    assert!(r.katz_rank.is_positive());
                    assert_ne!(r.apparent, Some(Apparent::Yes));
                }
                Classification::RegularSingular => assert!(r.katz_rank.is_zero()),
            }
        }
    }
}

/// `z^0` and an antiderivative of `prod (z - a_i)^e_i`: exponents `{0, e_i + 1}`
/// at each `a_i`, all apparent.
fn apparent_corpus(rng: &mut impl Rng) -> DiffOperator {
    let count = rng.gen_range(1..=3);
    let mut dp = Polynomial::constant(nonzero_rational(rng));
    let mut used = Vec::new();
    while used.len() < count {
        let a = small_rational(rng);
        if !used.contains(&a) {
            dp = &dp * &Polynomial::linear(&a).pow(rng.gen_range(1..=3));
            used.push(a);
        }
    }
    let mut c = vec![nonzero_rational(rng)];
    c.extend(dp.coeffs().iter().enumerate().map(|(k, x)| x / rat(k as i64 + 1)));
    with_polynomial_solutions(&Polynomial::one(), &Polynomial::new(c))
}

#[test]
fn apparent_points_have_positive_integer_sums() {
    let mut rng = rng(5);
    let mut seen = 0;
    for i in 0..60 {
        let op = if i % 3 == 2 {
            let f1 = poly_of_degree(&mut rng, 1 + i % 2);
            let f2 = poly_of_degree(&mut rng, 3);
            with_polynomial_solutions(&f1, &f2)
        } else {
            apparent_corpus(&mut rng)
        };
        if op.order() != Some(2) {
            continue;
        }
        let census = global_census(&op).unwrap();
        for r in &census.finite_singularities {
            if matches!(r.point, PointSpec::Rational(_)) {
                assert_eq!(is_apparent(&op, &r.point).unwrap(), Apparent::Yes, "case {i} at {:?}", r.point);
            }
            if r.apparent != Some(Apparent::Yes) {
                continue;
            }
            seen += 1;
            assert_eq!(r.classification, Classification::RegularSingular);
            let ints = r.exponents.as_ref().unwrap().distinct_integers(2).unwrap();
            assert!(ints.iter().all(|&e| e >= 0));
            let s = r.fuchs_sum.clone().unwrap();
            assert!(s.is_integer() && s.is_positive(), "case {i}: S = {s}");
        }
    }
    assert!(seen > 40, "only {seen} apparent points");
}

#[test]
fn fuchs_relation_on_the_corpus() {
    let mut rng = rng(6);
    let mut checked = 0;
    for f in factorization_corpus(8, 80).iter().filter(|f| f.fuchsian) {
        let s = fuchs_summary(&f.l).unwrap();
        assert!(s.holds, "total {} expected {}", s.total, s.expected);
        checked += 1;
        // an ordinary point contributes nothing
        let r = f.l.order().unwrap();
        let x = small_rational(&mut rng);
        let point = PointSpec::Rational(x);
        if !is_singular(&f.l, &point).unwrap() {
            let sum = Exponents::of(indicial_polynomial(&f.l, &point).unwrap().rational_form())
                .unwrap()
                .sum;
            assert_eq!(sum, rat((r * r.saturating_sub(1) / 2) as i64));
        }
    }
    assert!(checked > 40);
}

/// Monic `M = sum (U_j / B) D^j`: `val_rho(B) <= r (N_rho + 1)` at finite
/// singular points and `deg U_j <= deg B + (r - j)(N_inf - 1)`. The cruder
/// `deg B + r (N_inf - 1)` needs `N_inf >= 1`.
#[test]
fn denominator_valuation_and_degree_inequalities() {
    let mut rng = rng(9);
    let mut crude = 0;
    for i in 0..120 {
        let r = 1 + i % 3;
        let m = if i % 2 == 0 { fuchsian_monic(&mut rng, r) } else { irregular_monic(&mut rng, r) };
        let (us, b) = m.monic_parts().unwrap();
        for (x, mult) in rational_roots(&b).unwrap() {
            let n_rho = katz_rank(&m, &PointSpec::Rational(x)).unwrap();
            assert!(rat(mult as i64) <= rat(r as i64) * (n_rho + rat(1)), "case {i}");
        }
        let n_inf = katz_rank(&m, &PointSpec::Infinity).unwrap();
        let deg_b = rat(b.degree().unwrap() as i64);
        for (j, u) in us[..r].iter().enumerate().filter(|(_, u)| !u.is_zero()) {
            let deg_u = rat(u.degree().unwrap() as i64);
            let sharp = &deg_b + rat((r - j) as i64) * (&n_inf - rat(1));
            assert!(deg_u <= sharp, "case {i}: {m}");
            if n_inf >= rat(1) {
                assert!(deg_u <= &deg_b + rat(r as i64) * (&n_inf - rat(1)), "case {i}: {m}");
                crude += 1;
            }
        }
    }
    assert!(crude > 20);
}

#[test]
fn crude_degree_inequality_fails_when_regular_at_infinity() {
    let m = parse_operator("D^2 + 1/(z + 3)*D - 2/((z - 1)^2*(z + 3))", "z").unwrap();
    let (us, b) = m.monic_parts().unwrap();
    assert_eq!(katz_rank(&m, &PointSpec::Infinity).unwrap(), rat(0));
    // deg U_1 = 2 exceeds deg B + 2 (0 - 1) = 1 but not deg B + (0 - 1) = 2
    assert_eq!((us[1].degree(), b.degree()), (Some(2), Some(3)));
}

#[test]
fn apparent_examples_by_construction() {
    // solutions 1 and z^3
    let op = with_polynomial_solutions(&Polynomial::one(), &Polynomial::monomial(rat(1), 3));
    let zero = PointSpec::zero();
    assert_eq!(is_apparent(&op, &zero).unwrap(), Apparent::Yes);
    let census = global_census(&op).unwrap();
    assert_eq!(census.s_strict, 0);
}
