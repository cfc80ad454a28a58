//! Randomized invariants. Each case draws a seed and builds its inputs
//! with the crate's sampler; expected values come from direct expansion.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use skewring::maps::{
    classify_multiplicativity, make_twist, standard_derivation, validate_twist_axioms, MapRole,
    MapTag,
};
use skewring::poly::{from_right_form, validate_d_structure, OreFamily};
use skewring::rings::{builtin, invert, Ring, RingElement};
use skewring::sample::{self, SampleRng};
use skewring::structure::{
    associativity_certificate, central_reduction, monic_left_reduce, right_reduce, shrink,
};
use skewring::text::parse_expr;
use skewring::verify::configs::{self, laurent_configs, ore_configs};
use skewring::verify::oracles;
use skewring::{
    run_suite, CliConfig, Expr, Rational, RingConfig, Shape, SkewPoly, TruncatedSeries,
    TwistDescriptor,
};

const ALGEBRAS: [&str; 6] = ["Q", "Q(i)", "H", "O", "S", "H+"];

fn algebra(name: &str) -> Ring {
    Ring::algebra(builtin(name).unwrap())
}

fn load(cfg: &CliConfig) -> Arc<RingConfig> {
    cfg.load().unwrap().config
}

fn every_config() -> Vec<(&'static str, Arc<RingConfig>)> {
    laurent_configs()
        .into_iter()
        .chain(ore_configs())
        .map(|(l, c)| (l, load(&c)))
        .collect()
}

fn big(r: &Rational) -> BigRational {
    r.to_string().parse().unwrap()
}

fn small_int() -> impl Strategy<Value = i64> {
    prop_oneof![-20i64..=20, any::<i64>()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_matches_bigrational(a in small_int(), b in 1i64..=i64::MAX, c in small_int(), d in 1i64..=i64::MAX) {
        let x = Rational::new(a, b);
        let y = Rational::new(c, d);
        let (bx, by) = (
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        );
        prop_assert_eq!(big(&(&x + &y)), &bx + &by);
        prop_assert_eq!(big(&(&x - &y)), &bx - &by);
        prop_assert_eq!(big(&(&x * &y)), &bx * &by);
        if c != 0 {
            prop_assert_eq!(big(&(&x / &y)), &bx / &by);
        }
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        let round: Rational = x.to_string().parse().unwrap();
        prop_assert_eq!(round, x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn algebra_ring_laws(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        for name in ALGEBRAS {
            let ring = algebra(name);
            let [a, b, c] = [0; 3].map(|_| sample::element(&ring, &mut rng));
            let one = ring.one();
            prop_assert_eq!(one.mul(&a).unwrap(), a.clone());
            prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
            prop_assert_eq!(a.add(&b).unwrap().mul(&c).unwrap(), a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(c.mul(&a.add(&b).unwrap()).unwrap(), c.mul(&a).unwrap().add(&c.mul(&b).unwrap()).unwrap());
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert!(a.sub(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn inverses_are_two_sided(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        for name in ALGEBRAS {
            let ring = algebra(name);
            let a = sample::element(&ring, &mut rng);
            if let Ok(inv) = invert(&a) {
                prop_assert!(a.mul(&inv).unwrap().is_one());
                prop_assert!(inv.mul(&a).unwrap().is_one());
            }
        }
    }

    #[test]
    fn jordan_identity_random(seed in any::<u64>()) {
        let ring = algebra("H+");
        let mut rng = sample::rng(seed);
        let a = sample::element(&ring, &mut rng);
        let b = sample::element(&ring, &mut rng);
        let aa = a.mul(&a).unwrap();
        prop_assert_eq!(a.mul(&b).unwrap().mul(&aa).unwrap(), a.mul(&b.mul(&aa).unwrap()).unwrap());
    }
}

#[test]
fn algebra_laws_on_basis() {
    for name in ALGEBRAS {
        let ring = algebra(name);
        let basis = ring.spanning_set(0);
        let one = ring.one();
        for a in &basis {
            assert_eq!(one.mul(a).unwrap(), *a, "{name}");
            assert_eq!(a.mul(&one).unwrap(), *a, "{name}");
            for b in &basis {
                for c in &basis {
                    let lhs = a.add(b).unwrap().mul(c).unwrap();
                    assert_eq!(lhs, a.mul(c).unwrap().add(&b.mul(c).unwrap()).unwrap(), "{name}");
                }
            }
        }
    }
}

#[test]
fn involutions_reverse_products() {
    for name in ["Q(i)", "H", "O", "S"] {
        let spec = builtin(name).unwrap();
        let ring = Ring::algebra(spec.clone());
        let star = spec.involution().unwrap();
        let apply = |x: &RingElement| ring.from_coords(star.apply(x.coords().unwrap())).unwrap();
        for r in ring.spanning_set(0) {
            assert_eq!(apply(&apply(&r)), r, "{name}");
            for s in ring.spanning_set(0) {
                let lhs = apply(&r.mul(&s).unwrap());
                assert_eq!(lhs, apply(&s).mul(&apply(&r)).unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn cayley_dickson_chain() {
    let c = algebra("Q(i)");
    let h = algebra("H");
    let o = algebra("O");
    assert!(c.is_commutative(0).unwrap() && c.is_associative(0).unwrap());
    assert!(h.is_associative(0).unwrap() && !h.is_commutative(0).unwrap());
    assert!(!o.is_associative(0).unwrap());
    let [e1, e2] = [1, 2].map(|p| o.basis_element(p));
    let alt = skewring::rings::associator(&e1, &e1, &e2).unwrap();
    assert!(alt.is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn pi_recursion_matches_words(seed in any::<u64>()) {
        for (_, c) in ore_configs() {
            let cfg = load(&c);
            let Some(delta) = cfg.delta() else { continue };
            let mut rng = sample::rng(seed);
            let s = sample::element(cfg.coefficients(), &mut rng);
            for m in 0..=6 {
                let row = cfg.pi().pi_row(m, &s).unwrap();
                for i in 0..=m {
                    let words = oracles::pi_by_words(i, m, cfg.sigma(), delta, &s).unwrap();
                    prop_assert_eq!(&row[i as usize], &words);
                }
            }
        }
    }

    #[test]
    fn twist_powers_compose(seed in any::<u64>(), m in -4i64..=4, n in -4i64..=4) {
        for (_, cfg) in every_config() {
            let sigma = cfg.sigma();
            if sigma.inverse_map().is_none() {
                continue;
            }
            let mut rng = sample::rng(seed);
            let r = sample::element(cfg.coefficients(), &mut rng);
            let lhs = sigma.apply_power(m + n, &r).unwrap();
            let rhs = sigma.apply_power(m, &sigma.apply_power(n, &r).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(&lhs, &oracles::sigma_power(sigma, m + n, &r).unwrap());
        }
    }

    #[test]
    fn quaternion_inner_is_automorphism(seed in any::<u64>()) {
        let h = algebra("H");
        let mut rng = sample::rng(seed);
        let u = sample::nonzero_element(&h, &mut rng);
        let sigma = make_twist(&h, &TwistDescriptor::Inner { u: u.coords().unwrap().to_vec() }).unwrap();
        for a in h.spanning_set(0) {
            for b in h.spanning_set(0) {
                prop_assert_eq!(sigma.apply(&a.mul(&b).unwrap()).unwrap(), sigma.apply(&a).unwrap().mul(&sigma.apply(&b).unwrap()).unwrap());
            }
        }
        prop_assert!(validate_twist_axioms(&sigma, MapRole::Sigma).passed());
    }

    #[test]
    fn standard_derivations_kill_one(seed in any::<u64>()) {
        let o = algebra("O");
        let mut rng = sample::rng(seed);
        let a = sample::element(&o, &mut rng);
        let b = sample::element(&o, &mut rng);
        let d = standard_derivation(&a, &b).unwrap();
        prop_assert!(d.apply(&o.one()).unwrap().is_zero());
        let x = sample::element(&o, &mut rng);
        let y = sample::element(&o, &mut rng);
        prop_assert_eq!(d.apply(&x.add(&y).unwrap()).unwrap(), d.apply(&x).unwrap().add(&d.apply(&y).unwrap()).unwrap());
    }
}

#[test]
fn q_twist_automorphism_exactly_for_unit_modulus() {
    let ring = algebra("Q(i)");
    for (q, auto) in [(1, 1, true), (-1, 1, true), (2, 1, false), (1, 2, false), (-3, 1, false)]
        .map(|(p, d, a)| (Rational::new(p, d), a))
    {
        let sigma = make_twist(&ring, &TwistDescriptor::QTwist { q: q.clone() }).unwrap();
        let tags = classify_multiplicativity(&sigma).unwrap();
        assert_eq!(tags.contains(&MapTag::Automorphism), auto, "q = {q}");
        assert!(validate_twist_axioms(&sigma, MapRole::Sigma).passed());
    }
}

fn poly_pair(cfg: &Arc<RingConfig>, rng: &mut SampleRng) -> (SkewPoly, SkewPoly) {
    (sample::poly(cfg, rng, -4..=4), sample::poly(cfg, rng, -4..=4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn polynomial_ring_laws(seed in any::<u64>()) {
        for (label, cfg) in every_config() {
            let mut rng = sample::rng(seed);
            let (p, q) = poly_pair(&cfg, &mut rng);
            let p2 = sample::poly(&cfg, &mut rng, -4..=4);
            let one = SkewPoly::one(&cfg);
            prop_assert_eq!(p.add(&p2).unwrap().mul(&q).unwrap(), p.mul(&q).unwrap().add(&p2.mul(&q).unwrap()).unwrap(), "{}", label);
            prop_assert_eq!(q.mul(&p.add(&p2).unwrap()).unwrap(), q.mul(&p).unwrap().add(&q.mul(&p2).unwrap()).unwrap(), "{}", label);
            prop_assert_eq!(&one.mul(&p).unwrap(), &p);
            prop_assert_eq!(&p.mul(&one).unwrap(), &p);
            let pq = p.mul(&q).unwrap();
            prop_assert_eq!(&pq, &oracles::product(&p, &q).unwrap(), "{}", label);
            if !p.is_zero() && !q.is_zero() {
                let bound = p.degree().unwrap() + q.degree().unwrap();
                if cfg.coefficients().is_division_ring() {
                    prop_assert_eq!(pq.degree().unwrap(), bound, "{}", label);
                } else if !pq.is_zero() {
                    prop_assert!(pq.degree().unwrap() <= bound);
                }
            }
        }
    }

    #[test]
    fn x_associates_from_the_right_and_middle(seed in any::<u64>()) {
        for (label, cfg) in every_config() {
            let mut rng = sample::rng(seed);
            let (p, q) = poly_pair(&cfg, &mut rng);
            let x = SkewPoly::x_pow(&cfg, 1);
            prop_assert_eq!(p.mul(&q).unwrap().mul(&x).unwrap(), p.mul(&q.mul(&x).unwrap()).unwrap(), "{}", label);
            prop_assert_eq!(p.mul(&x).unwrap().mul(&q).unwrap(), p.mul(&x.mul(&q).unwrap()).unwrap(), "{}", label);
        }
    }

    #[test]
    fn right_form_round_trip(seed in any::<u64>()) {
        for (label, cfg) in every_config() {
            let mut rng = sample::rng(seed);
            let p = sample::poly(&cfg, &mut rng, -8..=8);
            let right = p.to_right_form().unwrap();
            prop_assert_eq!(&from_right_form(&cfg, &right).unwrap(), &p, "{}", label);
            let mut rebuilt = SkewPoly::zero(&cfg);
            for (&e, c) in &right {
                let term = SkewPoly::x_pow(&cfg, e).mul(&SkewPoly::constant(&cfg, c.clone())).unwrap();
                rebuilt = rebuilt.add(&term).unwrap();
            }
            prop_assert_eq!(&rebuilt, &p, "{}", label);
            let again = from_right_form(&cfg, &right).unwrap().to_right_form().unwrap();
            prop_assert_eq!(again, right);
        }
    }

    #[test]
    fn parse_format_round_trip(seed in any::<u64>()) {
        for (label, cfg) in every_config() {
            let mut rng = sample::rng(seed);
            let p = sample::poly(&cfg, &mut rng, -4..=4);
            let text = p.to_string();
            prop_assert_eq!(parse_expr(&text, &cfg).unwrap(), Expr::Poly(p), "{} {}", label, text);
        }
    }
}

fn series_configs() -> Vec<Arc<RingConfig>> {
    [
        configs::q_twist_int(2, Shape::PowerSeries),
        configs::q_twist_int(2, Shape::LaurentSeries),
        configs::gauss_conjugation(Shape::PowerSeries),
        configs::octonion_identity(Shape::LaurentSeries),
    ]
    .into_iter()
    .map(|c| load(&CliConfig { precision: Some(6), ..c }))
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn series_inverses(seed in any::<u64>()) {
        for cfg in series_configs() {
            let mut rng = sample::rng(seed);
            let a = sample::unit_series(&cfg, &mut rng, 0, 6);
            let right = a.invert().unwrap();
            let left = a.left_inverse().unwrap();
            let one = TruncatedSeries::one(&cfg, 6).unwrap();
            prop_assert_eq!(&a.mul(&right).unwrap(), &one);
            prop_assert_eq!(&left.mul(&a).unwrap(), &one);
            if cfg.sigma_is_automorphism() && cfg.coefficients().is_associative(0).unwrap() {
                prop_assert_eq!(&right, &left);
            }
        }
    }

    #[test]
    fn series_product_matches_polynomials(seed in any::<u64>()) {
        for cfg in series_configs() {
            let mut rng = sample::rng(seed);
            let lo = if cfg.shape().allows_negative() { -2 } else { 0 };
            let p = sample::poly(&cfg, &mut rng, lo..=3);
            let q = sample::poly(&cfg, &mut rng, lo..=3);
            let poly_cfg = cfg.with_shape(if lo < 0 { Shape::Laurent } else { Shape::Ore }).unwrap();
            let pp = SkewPoly::from_terms(&poly_cfg, p.terms().clone());
            let qq = SkewPoly::from_terms(&poly_cfg, q.terms().clone());
            let exact = pp.mul(&qq).unwrap();
            let prod = TruncatedSeries::from_poly(&p, 12).unwrap().mul(&TruncatedSeries::from_poly(&q, 12).unwrap()).unwrap();
            for e in lo..=prod.precision() {
                prop_assert_eq!(prod.coeff(e).cloned().unwrap_or_else(|| cfg.coefficients().zero()), exact.coeff_or_zero(e));
            }
        }
    }

    #[test]
    fn series_orders_add(seed in any::<u64>(), oa in -2i64..=2, ob in -2i64..=2) {
        let cfg = load(&CliConfig { precision: Some(8), ..configs::q_twist_int(2, Shape::LaurentSeries) });
        let mut rng = sample::rng(seed);
        let a = sample::unit_series(&cfg, &mut rng, oa, oa + 6);
        let b = sample::unit_series(&cfg, &mut rng, ob, ob + 6);
        let (o, lead) = a.mul(&b).unwrap().order_leading().unwrap();
        prop_assert_eq!(o, oa + ob);
        let expected = a.order_leading().unwrap().1.mul(&oracles::sigma_power(cfg.sigma(), oa, &b.order_leading().unwrap().1).unwrap()).unwrap();
        prop_assert_eq!(lead, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn monic_reduction(seed in any::<u64>(), deg in 1i64..=3) {
        for cfg in [configs::octonion_identity(Shape::Ore), configs::q_twist_int(2, Shape::Ore), configs::weyl()] {
            let cfg = load(&cfg);
            if !cfg.coefficients().is_division_ring() {
                continue;
            }
            let mut rng = sample::rng(seed);
            let p = sample::poly_of_degree(&cfg, &mut rng, 0, deg);
            let f = sample::poly(&cfg, &mut rng, 0..=7);
            let r = monic_left_reduce(&f, &p).unwrap();
            prop_assert!(r.remainder.is_zero() || r.remainder.degree().unwrap() < deg);
            prop_assert_eq!(&r.replay().unwrap(), &f);
            prop_assert_eq!(&monic_left_reduce(&r.remainder, &p).unwrap().remainder, &r.remainder);
        }
    }

    #[test]
    fn right_reduction_replays(seed in any::<u64>()) {
        for cfg in [configs::q_twist_int(2, Shape::Ore), configs::m2_identity(Shape::Ore), configs::octonion_identity(Shape::Ore)] {
            let cfg = load(&cfg);
            let mut rng = sample::rng(seed);
            let gens = vec![sample::poly_of_degree(&cfg, &mut rng, 0, 1), sample::poly_of_degree(&cfg, &mut rng, 0, 2)];
            let f = sample::poly(&cfg, &mut rng, 0..=6);
            let r = right_reduce(&f, &gens).unwrap();
            prop_assert_eq!(&r.replay().unwrap(), &f);
        }
    }

    #[test]
    fn central_reduction_kills_multiples(seed in any::<u64>()) {
        let cfg = load(&configs::gauss_conjugation(Shape::Laurent));
        let g = parse_expr("1 + X^4", &cfg).unwrap();
        let Expr::Poly(g) = g else { unreachable!() };
        let mut rng = sample::rng(seed);
        let q = sample::poly(&cfg, &mut rng, -6..=6);
        prop_assert!(central_reduction(&q.mul(&g).unwrap(), 2).unwrap().is_zero());
        prop_assert!(central_reduction(&g.mul(&q).unwrap(), 2).unwrap().is_zero());
        let r = central_reduction(&q, 2).unwrap();
        prop_assert_eq!(r, oracles::substitute_power(&q, 4).unwrap());
    }

    #[test]
    fn shrink_lowers_degree(seed in any::<u64>()) {
        let cfg = load(&configs::q_twist_int(3, Shape::Laurent));
        let mut rng = sample::rng(seed);
        let p = sample::poly_of_degree(&cfg, &mut rng, 0, 3);
        let m = p.degree().unwrap();
        let d = sample::nonzero_element(cfg.coefficients(), &mut rng);
        if cfg.sigma().apply_power(m, &d).unwrap() != d {
            let s = shrink(&p, &d).unwrap();
            prop_assert!(s.is_zero() || s.degree().unwrap() < m);
        }
    }
}

#[test]
fn central_reduction_is_proper() {
    let cfg = load(&configs::gauss_conjugation(Shape::Laurent));
    let one = SkewPoly::one(&cfg);
    assert_eq!(central_reduction(&one, 2).unwrap(), one);
}

#[test]
fn certificate_agrees_with_classification() {
    for (label, c) in laurent_configs() {
        let cfg = load(&c);
        let predicted = cfg.coefficients().is_associative(0).unwrap()
            && classify_multiplicativity(cfg.sigma()).unwrap().contains(&MapTag::Automorphism);
        let cert = associativity_certificate(&cfg, 2).unwrap();
        assert_eq!(cert.passed(), predicted, "{label}");
        if let Some(w) = cert.witness() {
            let [a, b, c] = &w.triple;
            let assoc = a.mul(b).unwrap().mul(c).unwrap().sub(&a.mul(&b.mul(c).unwrap()).unwrap()).unwrap();
            assert_eq!(assoc, w.associator);
            assert!(!assoc.is_zero());
        }
    }
}

#[test]
fn ore_family_satisfies_d4() {
    let cfg = load(&configs::weyl());
    let pi = cfg.pi().clone();
    let mut rng = sample::rng(4);
    let elements: Vec<_> = (0..3).map(|_| sample::element(cfg.coefficients(), &mut rng)).collect();
    let mut triples = Vec::new();
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                triples.push((a, b, c));
            }
        }
    }
    let report = validate_d_structure(&OreFamily::new(pi), &triples, &elements).unwrap();
    assert_eq!(report.axiom("D4"), Some(true));
    assert!(report.passed());
}

#[test]
fn suites_are_deterministic() {
    for suite in ["series", "simplicity", "hilbert-reduction"] {
        let a = run_suite(suite, None).unwrap().to_json(false);
        let b = run_suite(suite, None).unwrap().to_json(false);
        assert_eq!(a, b, "{suite}");
    }
}
