use std::sync::Arc;

use crate::config::{CliConfig, RingDescriptor};
use crate::error::{Error, Result};
use crate::maps::{
    classify_multiplicativity, detect_finite_order, make_delta, make_twist, pi_words,
    standard_derivation, FiniteOrder, LinearMap, MapTag, PiFamily, TwistDescriptor, TwistMap,
    POLY_CHECK_DEGREE,
};
use crate::poly::{
    from_right_form, validate_d_structure, FnFamily, LaurentFamily, Monoid, OreFamily, RingConfig,
    Shape, SkewPoly,
};
use crate::rational::Rational;
use crate::rings::{associator, invert, quaternion_jordan, Ring, RingElement};
use crate::sample;
use crate::series::TruncatedSeries;
use crate::structure::{
    associativity_certificate, central_reduction, monic_left_reduce, monomial_basis,
    nuclear_inverse_check, nucleus_membership, right_reduce, right_reduce_series, shrink,
    simplicity_probe, Certificate, Hypothesis, InverseStatus, NucleusQuery, ProbeOutcome, Side,
};
use crate::text::parse_poly;

use super::configs::{self, laurent_configs, ore_configs};
use super::oracles;
use super::{Ctx, Outcome};

type Targets = Vec<(String, CliConfig)>;

fn targets(ctx: &Ctx, builtin: Vec<(&'static str, CliConfig)>) -> Targets {
    match ctx.scope() {
        Some(c) => vec![("config".into(), c.clone())],
        None => builtin.into_iter().map(|(l, c)| (l.to_string(), c)).collect(),
    }
}

fn pass(detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Pass(detail.into()))
}

fn fail(detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Fail(detail.into()))
}

fn ensure(ok: bool, detail: impl Into<String>, ok_detail: impl Into<String>) -> Result<Outcome> {
    if ok {
        pass(ok_detail)
    } else {
        fail(detail)
    }
}

/// `σ^n` as a map of its own.
fn twist_power(sigma: &TwistMap, n: i64) -> Result<TwistMap> {
    let step = if n >= 0 {
        sigma.forward().clone()
    } else {
        sigma.inverse_map().ok_or(Error::InverseUnavailable)?.clone()
    };
    let mut acc = LinearMap::identity(sigma.ring());
    for _ in 0..n.unsigned_abs() {
        acc = step
            .compose(&acc)
            .ok_or_else(|| Error::Unsupported("power of this map".into()))?;
    }
    TwistMap::new(sigma.ring().clone(), acc, format!("{}^{n}", sigma.label()))
}

/// `r ↦ a r − σ(r) a`.
fn inner_derivation(sigma: &TwistMap, a: &RingElement) -> Result<TwistMap> {
    let ring = sigma.ring().clone();
    let map = LinearMap::from_basis_images(&ring, |b| a.mul(b)?.sub(&sigma.apply(b)?.mul(a)?))?;
    TwistMap::new(ring, map, "inner derivation")
}

fn constant(cfg: &Arc<RingConfig>, c: RingElement) -> SkewPoly {
    SkewPoly::constant(cfg, c)
}

/// `Y` as a constant of the outer ring `R[Y…][X…]`.
fn inner_variable(cfg: &Arc<RingConfig>, e: i64) -> Result<SkewPoly> {
    let Ring::Poly(inner) = cfg.coefficients() else {
        return Err(Error::Unsupported("no inner variable".into()));
    };
    Ok(constant(cfg, RingElement::Poly(SkewPoly::x_pow(inner, e))))
}

const ANCHOR_XN: &str = "powers of X lie in the middle and right nuclei";
const ANCHOR_LEFT: &str = "X is left nuclear exactly when the twist is an automorphism";
const ANCHOR_INV: &str = "inverses of nuclear elements stay in the corresponding nucleus";

pub(crate) fn nuclei(ctx: &mut Ctx) {
    let builtin = vec![
        ("q_twist(2)", configs::q_twist_int(2, Shape::Laurent)),
        ("M2_diag_swap", configs::m2_diag_swap()),
        ("O_conjugation", configs::octonion_conjugation()),
    ];
    for (label, cfg) in targets(ctx, builtin) {
        let Some(loaded) = ctx.load(&label, &cfg) else { continue };
        let c = loaded.config;
        let exps: Vec<i64> = if c.shape().allows_negative() {
            (-4..=4).collect()
        } else {
            (0..=4).collect()
        };
        for side in [Side::Middle, Side::Right] {
            ctx.check(format!("c03.{label}.x_powers.{side}"), ANCHOR_XN, || {
                for &n in &exps {
                    let q = NucleusQuery {
                        element: SkewPoly::x_pow(&c, n),
                        side,
                        degree_bound: 4,
                    };
                    if let Certificate::Witness(w) = nucleus_membership(&q)? {
                        return fail(format!("X^{n}: {w}"));
                    }
                }
                pass(format!("X^n for n in {:?}, degree bound 4", exps))
            });
        }
        ctx.check(format!("c03.{label}.x_powers.left"), ANCHOR_LEFT, || {
            let mut first = None;
            let mut denied = Vec::new();
            for &n in &exps {
                let power = twist_power(c.sigma(), n)?;
                let auto = classify_multiplicativity(&power)?.contains(&MapTag::Automorphism);
                let q = NucleusQuery {
                    element: SkewPoly::x_pow(&c, n),
                    side: Side::Left,
                    degree_bound: 4,
                };
                let cert = nucleus_membership(&q)?;
                if cert.passed() != auto {
                    return fail(format!("X^{n}: automorphism {auto}, left nuclear {}", cert.passed()));
                }
                if let Some(w) = cert.witness() {
                    denied.push(n);
                    first.get_or_insert_with(|| w.to_string());
                }
            }
            let detail = format!("witness exactly for n in {denied:?}, where σ^n is not an automorphism");
            match first {
                Some(w) => Ok(Outcome::Witness(detail, w)),
                None => pass(detail),
            }
        });
    }
    let builtin = laurent_configs();
    for (label, cfg) in targets(ctx, builtin) {
        let Some(loaded) = ctx.load(&label, &cfg) else { continue };
        inverse_checks(ctx, &label, &loaded.config);
    }
}

fn inverse_checks(ctx: &mut Ctx, label: &str, c: &Arc<RingConfig>) {
    let mut elements = Vec::new();
    if c.shape() == Shape::Laurent {
        elements.push(SkewPoly::x_pow(c, 1));
        elements.push(SkewPoly::x_pow(c, 2));
    }
    elements.push(SkewPoly::one(c));
    for b in c.coefficients().spanning_set(0) {
        if !b.is_one() && invert(&b).is_ok() {
            elements.push(constant(c, b));
        }
    }
    for x in elements {
        ctx.check(format!("c12.{label}.{x}"), ANCHOR_INV, || {
            let mut statuses = Vec::new();
            for hyp in Hypothesis::ALL {
                let report = nuclear_inverse_check(&x, hyp, 3)?;
                if report.status == InverseStatus::Refuted {
                    let w = report.conclusion.and_then(|c| c.witness().map(|w| w.to_string()));
                    return fail(format!("{hyp:?} refuted: {}", w.unwrap_or_default()));
                }
                statuses.push(format!("{hyp:?}: {:?}", report.status));
            }
            pass(statuses.join(", "))
        });
    }
}

fn check_ns3(ctx: &mut Ctx, label: &str, c: &Arc<RingConfig>, seed: u64) {
    let id = if c.shape() == Shape::Ore { "no3" } else { "ns3" };
    ctx.check(format!("inv.{id}.{label}"), "X associates with everything from the middle and the right", || {
        let mut rng = sample::rng(seed);
        let x = SkewPoly::x_pow(c, 1);
        for _ in 0..15 {
            let p = sample::poly(c, &mut rng, -4..=4);
            let q = sample::poly(c, &mut rng, -4..=4);
            let lhs = p.mul(&q)?.mul(&x)?;
            let rhs = p.mul(&q.mul(&x)?)?;
            if lhs != rhs {
                return fail(format!("(p, q, X) ≠ 0 for p = {p}, q = {q}"));
            }
            let lhs = p.mul(&x)?.mul(&q)?;
            let rhs = p.mul(&x.mul(&q)?)?;
            if lhs != rhs {
                return fail(format!("(p, X, q) ≠ 0 for p = {p}, q = {q}"));
            }
        }
        pass("15 random pairs up to degree 4")
    });
}

fn check_ring_laws(ctx: &mut Ctx, label: &str, c: &Arc<RingConfig>, seed: u64) {
    ctx.check(format!("inv.product_oracle.{label}"), "product matches the monomial rule expanded term by term", || {
        let mut rng = sample::rng(seed);
        for _ in 0..10 {
            let p = sample::poly(c, &mut rng, -3..=3);
            let q = sample::poly(c, &mut rng, -3..=3);
            if p.mul(&q)? != oracles::product(&p, &q)? {
                return fail(format!("p = {p}, q = {q}"));
            }
        }
        pass("10 random pairs")
    });
    ctx.check(format!("inv.ring_laws.{label}"), "biadditivity, unit and degree bound", || {
        let mut rng = sample::rng(seed + 1);
        let one = SkewPoly::one(c);
        let division = c.coefficients().is_division_ring();
        for _ in 0..10 {
            let p = sample::poly(c, &mut rng, -3..=3);
            let p2 = sample::poly(c, &mut rng, -3..=3);
            let q = sample::poly(c, &mut rng, -3..=3);
            if p.add(&p2)?.mul(&q)? != p.mul(&q)?.add(&p2.mul(&q)?)?
                || q.mul(&p.add(&p2)?)? != q.mul(&p)?.add(&q.mul(&p2)?)?
            {
                return fail(format!("biadditivity: p = {p}, p' = {p2}, q = {q}"));
            }
            if one.mul(&p)? != p || p.mul(&one)? != p {
                return fail(format!("unit: p = {p}"));
            }
            let pq = p.mul(&q)?;
            if !p.is_zero() && !q.is_zero() {
                let bound = p.degree()? + q.degree()?;
                let ok = if pq.is_zero() {
                    !division
                } else if division {
                    pq.degree()? == bound
                } else {
                    pq.degree()? <= bound
                };
                if !ok {
                    return fail(format!("degree: p = {p}, q = {q}"));
                }
            }
        }
        pass("10 random triples")
    });
}

pub(crate) fn laurent_axioms(ctx: &mut Ctx) {
    let mut builtin = laurent_configs();
    builtin.extend(ore_configs());
    for (i, (label, cfg)) in targets(ctx, builtin).into_iter().enumerate() {
        let Some(loaded) = ctx.load(&label, &cfg) else { continue };
        let reports = loaded.reports.clone();
        ctx.check(format!("inv.twist_axioms.{label}"), "σ is additive, fixes one and is bijective; δ kills one", || {
            let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.map.clone()).collect();
            ensure(failed.is_empty(), format!("failing maps: {failed:?}"), format!("{} maps", reports.len()))
        });
        let c = loaded.config;
        check_ns3(ctx, &label, &c, 100 + i as u64);
        check_ring_laws(ctx, &label, &c, 200 + i as u64);
    }

    let coeffs = RingDescriptor::Polynomial {
        coefficients: Box::new(RingDescriptor::builtin("Q")),
        twist: TwistDescriptor::Identity,
        delta: None,
        variable: "Y".into(),
        shape: Shape::Ore,
    };
    let pi = (|| {
        let ring = coeffs.build()?;
        let sigma = make_twist(&ring, &TwistDescriptor::YScale { q: Rational::from_integer(2), base: None })?;
        let delta = make_delta(&ring, &TwistDescriptor::Derivative)?;
        PiFamily::new(sigma, Some(delta))
    })();
    let anchor = "π_1^3 is the sum of the three words with one σ and two δ";
    ctx.check("c01.pi_1_3.words", anchor, || {
        let pi = pi.clone()?;
        let (sigma, delta) = (pi.sigma(), pi.delta().unwrap());
        let words = pi_words(1, 3);
        if words != ["σ∘δ∘δ", "δ∘σ∘δ", "δ∘δ∘σ"] {
            return fail(format!("words {words:?}"));
        }
        let Ring::Poly(inner) = sigma.ring() else { unreachable!() };
        let mut rng = sample::rng(1);
        for _ in 0..25 {
            let s = RingElement::Poly(sample::poly(inner, &mut rng, 0..=5));
            let mut expected = s.ring().zero();
            for w in [[true, false, false], [false, true, false], [false, false, true]] {
                expected = expected.add(&oracles::apply_word(&w, sigma, delta, &s)?)?;
            }
            if pi.pi_apply(1, 3, &s)? != expected {
                return fail(format!("s = {s}"));
            }
        }
        pass("25 random elements of ℚ[Y], σ: Y ↦ 2Y, δ = d/dY")
    });
    ctx.check("c01.recursion_vs_words", "the π recursion equals word enumeration", || {
        let pi = pi.clone()?;
        let (sigma, delta) = (pi.sigma(), pi.delta().unwrap());
        let Ring::Poly(inner) = sigma.ring() else { unreachable!() };
        let mut rng = sample::rng(2);
        for m in 0..=6 {
            for _ in 0..3 {
                let s = RingElement::Poly(sample::poly(inner, &mut rng, 0..=6));
                let row = pi.pi_row(m, &s)?;
                for i in 0..=m {
                    if row[i as usize] != oracles::pi_by_words(i, m, sigma, delta, &s)? {
                        return fail(format!("π_{i}^{m}({s})"));
                    }
                }
            }
        }
        pass("all i ≤ m ≤ 6, 3 random elements each")
    });
    let weyl = configs::weyl();
    if let Some(loaded) = ctx.load("weyl", &weyl) {
        ctx.check("c02.weyl", "X Y − Y X = 1 in ℚ[Y][X; id, d/dY]", || {
            let c = loaded.config;
            let x = SkewPoly::x_pow(&c, 1);
            let y = inner_variable(&c, 1)?;
            let commutator = x.mul(&y)?.sub(&y.mul(&x)?)?;
            ensure(commutator == SkewPoly::one(&c), format!("XY − YX = {commutator}"), "XY − YX = 1")
        });
    }
}

pub(crate) fn associativity(ctx: &mut Ctx) {
    let anchor = "the q-twisted Laurent ring is associative exactly for q = ±1";
    if ctx.scope().is_none() {
        for (q, expect) in [
            (Rational::from_integer(1), true),
            (Rational::from_integer(-1), true),
            (Rational::from_integer(2), false),
            (Rational::new(1, 2), false),
            (Rational::from_integer(3), false),
        ] {
            let cfg = configs::q_twist(q.clone(), Shape::Laurent);
            let Some(loaded) = ctx.load(&format!("q_twist({q})"), &cfg) else { continue };
            ctx.check(format!("c04.q_twist({q})"), anchor, || {
                certificate_outcome(&loaded.config, expect)
            });
        }
        let lemma = "an antiautomorphism twist gives an associative ring only over a commutative associative ring";
        for (label, cfg) in [
            ("M2_diag_swap", configs::m2_diag_swap()),
            ("O_conjugation", configs::octonion_conjugation()),
        ] {
            let Some(loaded) = ctx.load(label, &cfg) else { continue };
            ctx.check(format!("c04.{label}"), lemma, || certificate_outcome(&loaded.config, false));
        }
    }
    let mut builtin = laurent_configs();
    builtin.push(("torus_Q(2)", configs::quantum_torus("Q", 2)));
    for (label, cfg) in targets(ctx, builtin) {
        let Some(loaded) = ctx.load(&label, &cfg) else { continue };
        ctx.check(
            format!("inv.assoc_vs_classify.{label}"),
            "associative exactly when the coefficients are associative and σ is an automorphism",
            || {
                let c = &loaded.config;
                let predicted = c.coefficients().is_associative(POLY_CHECK_DEGREE)?
                    && c.sigma().has(MapTag::Automorphism);
                let cert = associativity_certificate(c, 3)?;
                let detail = format!("predicted {predicted}, certificate {}", cert.passed());
                if cert.passed() != predicted {
                    return fail(detail);
                }
                match cert.witness() {
                    Some(w) => Ok(Outcome::Witness(detail, w.to_string())),
                    None => pass(detail),
                }
            },
        );
    }
}

fn certificate_outcome(c: &Arc<RingConfig>, expect: bool) -> Result<Outcome> {
    let cert = associativity_certificate(c, 3)?;
    match (cert.witness(), expect) {
        (None, true) => pass("associative on basis monomials up to degree 3"),
        (Some(w), false) => Ok(Outcome::Witness("non-associative as expected".into(), w.to_string())),
        (None, false) => fail("expected a witness, none found up to degree 3"),
        (Some(w), true) => fail(format!("unexpected witness {w}")),
    }
}

pub(crate) fn simplicity(ctx: &mut Ctx) {
    let anchor = "with σ of infinite order every nonzero ideal contains a unit";
    let cfg = configs::q_twist_int(2, Shape::Laurent);
    if let Some(loaded) = ctx.load("q_twist(2)", &cfg) {
        let c = loaded.config;
        ctx.check("c06.q_twist(2).random", anchor, || {
            let mut rng = sample::rng(6);
            let mut max_steps = 0;
            for _ in 0..25 {
                let p = sample::nonzero_poly(&c, &mut rng, 0..=4);
                let budget = p.degree()? as usize + 1;
                match simplicity_probe(&p, budget)? {
                    ProbeOutcome::Unit { steps, .. } => max_steps = max_steps.max(steps.len()),
                    ProbeOutcome::Inconclusive { .. } => return fail(format!("no unit from {p}")),
                }
            }
            pass(format!("25 random p of degree ≤ 4; at most {max_steps} shrink steps"))
        });
        ctx.check("c06.example", anchor, || {
            let p = parse_poly("X + 1", &c)?;
            match simplicity_probe(&p, 5)? {
                ProbeOutcome::Unit { unit, steps } => {
                    let i = c.coefficients().basis_element(1);
                    ensure(
                        unit == i.neg() && steps.len() == 1,
                        format!("unit {unit} after {} steps", steps.len()),
                        "X + 1 reaches −i in one step",
                    )
                }
                other => fail(format!("{other:?}")),
            }
        });
        ctx.check("inv.shrink_degree", "shrinking lowers the degree when σ^deg moves d", || {
            let mut rng = sample::rng(7);
            let basis = c.coefficients().spanning_set(0);
            for _ in 0..25 {
                let p = sample::poly_of_degree(&c, &mut rng, 0, 3);
                let m = p.degree()?;
                for d in &basis {
                    if c.sigma().apply_power(m, d)? == *d {
                        continue;
                    }
                    let s = shrink(&p, d)?;
                    if !s.is_zero() && s.degree()? >= m {
                        return fail(format!("shrink({p}, {d}) = {s}"));
                    }
                }
            }
            pass("25 random p of degree 3")
        });
    }
    let cfg = configs::gauss_conjugation(Shape::Laurent);
    if let Some(loaded) = ctx.load("C_conjugation", &cfg) {
        ctx.check("c06.conjugation", "with σ² = id the probe finds no unit from 1 + X⁴", || {
            let p = parse_poly("1 + X^4", &loaded.config)?;
            match simplicity_probe(&p, 10)? {
                ProbeOutcome::Inconclusive { all_shrinks_zero: true, steps } if steps.is_empty() => {
                    pass("inconclusive, every shrink vanishes")
                }
                other => fail(format!("{other:?}")),
            }
        });
    }
}

pub(crate) fn finite_order_ideals(ctx: &mut Ctx) {
    let anchor = "1 + X^(m²) generates a proper nonzero ideal when σ^m = id";
    let cfg = configs::gauss_conjugation(Shape::Laurent);
    let Some(loaded) = ctx.load("C_conjugation", &cfg) else { return };
    let c = loaded.config;
    ctx.check("c05.order", anchor, || {
        let order = detect_finite_order(c.sigma(), 8)?;
        ensure(order == FiniteOrder::Order(2), format!("{order:?}"), "σ has order 2")
    });
    ctx.check("c05.x4_nuclear_central", anchor, || {
        let x4 = SkewPoly::x_pow(&c, 4);
        for side in Side::ALL {
            let q = NucleusQuery {
                element: x4.clone(),
                side,
                degree_bound: 4,
            };
            if let Certificate::Witness(w) = nucleus_membership(&q)? {
                return fail(format!("X⁴ not {side} nuclear: {w}"));
            }
        }
        for a in monomial_basis(&c, 4) {
            if x4.mul(&a)? != a.mul(&x4)? {
                return fail(format!("X⁴ does not commute with {a}"));
            }
        }
        pass("X⁴ is nuclear on all sides and central on basis monomials up to degree 4")
    });
    ctx.check("c05.multiples", anchor, || {
        let g = parse_poly("1 + X^4", &c)?;
        let mut rng = sample::rng(5);
        for _ in 0..50 {
            let q = sample::poly(&c, &mut rng, -4..=4);
            for m in [q.mul(&g)?, g.mul(&q)?] {
                let r = central_reduction(&m, 2)?;
                if !r.is_zero() {
                    return fail(format!("{m} reduces to {r}"));
                }
                if r != oracles::substitute_power(&m, 4)? {
                    return fail(format!("oracle disagrees on {m}"));
                }
            }
        }
        pass("50 random q: q(1 + X⁴) and (1 + X⁴)q reduce to 0")
    });
    ctx.check("c05.properness", anchor, || {
        let one = SkewPoly::one(&c);
        let r = central_reduction(&one, 2)?;
        ensure(r == one, format!("1 reduces to {r}"), "1 reduces to 1")
    });
    let q2 = configs::q_twist_int(2, Shape::Laurent);
    if let Some(other) = ctx.load("q_twist(2)", &q2) {
        ctx.check("inv.finite_order_hypothesis", "reduction refuses twists without σ^m = id", || {
            let a = central_reduction(&SkewPoly::one(&c), 1);
            let b = central_reduction(&SkewPoly::one(&other.config), 2);
            ensure(
                a == Err(Error::FiniteOrderHypothesis) && b == Err(Error::FiniteOrderHypothesis),
                format!("{a:?}, {b:?}"),
                "m = 1 on conjugation and m = 2 on q_twist(2) are rejected",
            )
        });
    }
}

pub(crate) fn hilbert_reduction(ctx: &mut Ctx) {
    let forms = "left and right forms of a polynomial agree";
    for (i, (label, cfg)) in [
        ("q_twist(2)", configs::q_twist_int(2, Shape::Laurent)),
        ("ore_q_twist(2)", configs::q_twist_int(2, Shape::Ore)),
        ("weyl", configs::weyl()),
        ("O_conjugation", configs::octonion_conjugation()),
    ]
    .into_iter()
    .enumerate()
    {
        let Some(loaded) = ctx.load(label, &cfg) else { continue };
        let c = loaded.config;
        ctx.check(format!("c07.right_form.{label}"), forms, || {
            let mut rng = sample::rng(70 + i as u64);
            for _ in 0..25 {
                let p = sample::poly(&c, &mut rng, -4..=4);
                let right = p.to_right_form()?;
                let mut rebuilt = SkewPoly::zero(&c);
                for (&e, r) in &right {
                    rebuilt = rebuilt.add(&SkewPoly::x_pow(&c, e).mul(&constant(&c, r.clone()))?)?;
                }
                if rebuilt != p || from_right_form(&c, &right)? != p {
                    return fail(format!("p = {p}"));
                }
            }
            pass("25 random polynomials")
        });
    }
    let monic = "dividing by a monic polynomial leaves a remainder of lower degree";
    for (i, (label, cfg)) in [
        ("ore_O_identity", configs::octonion_identity(Shape::Ore)),
        ("ore_q_twist(2)", configs::q_twist_int(2, Shape::Ore)),
    ]
    .into_iter()
    .enumerate()
    {
        let Some(loaded) = ctx.load(label, &cfg) else { continue };
        let c = loaded.config;
        ctx.check(format!("c07.monic.{label}"), monic, || {
            let mut rng = sample::rng(75 + i as u64);
            for k in 0..50 {
                let p = sample::poly_of_degree(&c, &mut rng, 0, 1 + k % 3);
                let f = sample::poly(&c, &mut rng, 0..=6);
                let r = monic_left_reduce(&f, &p)?;
                let low = r.remainder.is_zero() || r.remainder.degree()? < p.degree()?;
                if !low || r.replay()? != f {
                    return fail(format!("f = {f}, p = {p}"));
                }
                if monic_left_reduce(&r.remainder, &p)?.remainder != r.remainder {
                    return fail(format!("not idempotent: f = {f}, p = {p}"));
                }
            }
            pass("50 random pairs: low remainder, exact replay, idempotent")
        });
        if label == "ore_O_identity" {
            ctx.check("c07.monic.example", monic, || {
                let p = parse_poly("X^2 + e1X", &c)?;
                let f = parse_poly("e1X^3", &c)?;
                let r = monic_left_reduce(&f, &p)?;
                let expected = parse_poly("-e1X", &c)?;
                let cofactors: Vec<String> = r.steps.iter().map(|s| s.cofactor.to_string()).collect();
                ensure(
                    r.remainder == expected && r.steps.len() == 2 && r.replay()? == f,
                    format!("remainder {}, cofactors {cofactors:?}", r.remainder),
                    format!("remainder −e1X, cofactors {cofactors:?}"),
                )
            });
        }
    }
    let replay = "right reduction records replay to the input";
    let q2 = configs::q_twist_int(2, Shape::Ore);
    if let Some(loaded) = ctx.load("ore_q_twist(2)", &q2) {
        let c = loaded.config;
        ctx.check("c07.right_reduce.example", replay, || {
            let g = parse_poly("X - [0,1]", &c)?;
            let f = SkewPoly::x_pow(&c, 2);
            let r = right_reduce(&f, std::slice::from_ref(&g))?;
            let expected = constant(&c, c.coefficients().scalar(Rational::new(-1, 2)));
            ensure(
                r.remainder == expected && r.replay()? == f,
                format!("remainder {}", r.remainder),
                "X² = (X − i)X + (X − i)(i/2) − 1/2",
            )
        });
        ctx.check("c07.right_reduce.random.ore_q_twist(2)", replay, || {
            let mut rng = sample::rng(77);
            for _ in 0..20 {
                let gens: Vec<SkewPoly> = (0..2)
                    .map(|k| sample::poly_of_degree(&c, &mut rng, 0, 1 + k))
                    .collect();
                let f = sample::poly(&c, &mut rng, 0..=5);
                let r = right_reduce(&f, &gens)?;
                let min = gens.iter().map(|g| g.degree().unwrap()).min().unwrap();
                let low = r.remainder.is_zero() || r.remainder.degree()? < min;
                if r.irreducible || !low || r.replay()? != f {
                    return fail(format!("f = {f}"));
                }
            }
            pass("20 random runs over a division ring")
        });
    }
    let m2 = configs::m2_identity(Shape::Ore);
    if let Some(loaded) = ctx.load("ore_M2_identity", &m2) {
        let c = loaded.config;
        ctx.check("c07.right_reduce.random.ore_M2", replay, || {
            let mut rng = sample::rng(78);
            let mut stuck = 0;
            for _ in 0..20 {
                let g = sample::poly_of_degree(&c, &mut rng, 0, 1);
                let f = sample::poly(&c, &mut rng, 0..=4);
                let r = right_reduce(&f, std::slice::from_ref(&g))?;
                if r.replay()? != f {
                    return fail(format!("f = {f}, g = {g}"));
                }
                if r.irreducible {
                    stuck += 1;
                } else if !r.remainder.is_zero() && r.remainder.degree()? >= 1 {
                    return fail(format!("remainder {} too large", r.remainder));
                }
            }
            pass(format!("20 random runs, {stuck} flagged irreducible"))
        });
    }
    let q_series = CliConfig {
        precision: Some(5),
        ..configs::octonion_identity(Shape::PowerSeries)
    };
    let q_series = CliConfig {
        ring: RingDescriptor::builtin("Q"),
        ..q_series
    };
    if let Some(loaded) = ctx.load("Q_power_series", &q_series) {
        let c = loaded.config.clone();
        ctx.check("c07.right_reduce.series.geometric", replay, || {
            let g = loaded.parse_series("1 - X + O(X^6)")?;
            let f = loaded.parse_series("1 + O(X^6)")?;
            let r = right_reduce_series(&f, std::slice::from_ref(&g), 6)?;
            let orders_ok = r
                .steps
                .iter()
                .enumerate()
                .all(|(k, s)| s.cofactor == SkewPoly::x_pow(&c, k as i64));
            ensure(
                r.steps.len() == 6 && r.remainder.is_zero() && orders_ok && r.replay()? == f,
                format!("{} steps, remainder {}", r.steps.len(), r.remainder),
                "6 steps with cofactors 1, X, …, X⁵; remainder vanishes to precision 5",
            )
        });
    }
    let conj_series = CliConfig {
        precision: Some(6),
        ..configs::gauss_conjugation(Shape::PowerSeries)
    };
    if let Some(loaded) = ctx.load("C_conjugation_series", &conj_series) {
        let c = loaded.config;
        ctx.check("c07.right_reduce.series.random", replay, || {
            let mut rng = sample::rng(79);
            for _ in 0..15 {
                let gens = vec![
                    sample::unit_series(&c, &mut rng, 1, 6),
                    sample::unit_series(&c, &mut rng, 2, 6),
                ];
                let f = TruncatedSeries::from_poly(&sample::poly(&c, &mut rng, 1..=6), 6)?;
                let r = right_reduce_series(&f, &gens, 8)?;
                let back = r.replay()?;
                if back != f.truncate(back.precision()) {
                    return fail(format!("f = {f}"));
                }
            }
            pass("15 random runs")
        });
    }
}

pub(crate) fn series(ctx: &mut Ctx) {
    let anchor = "inverse of a unit series by the coefficient recurrence";
    let cfg = CliConfig {
        precision: Some(4),
        ..configs::q_twist_int(2, Shape::PowerSeries)
    };
    if let Some(loaded) = ctx.load("q_twist(2)_series", &cfg) {
        ctx.check("c08.inverse", anchor, || {
            let a = loaded.parse_series("1 - [0,1]X + O(X^5)")?;
            let expected = loaded.parse_series("1 + [0,1]X - 2X^2 - [0,2]X^3 + 4X^4 + O(X^5)")?;
            let inv = a.invert()?;
            let back = a.mul(&inv)?;
            let one = TruncatedSeries::one(&loaded.config, 4)?;
            ensure(
                inv == expected && back == one,
                format!("inverse {inv}, product {back}"),
                format!("inverse {inv}, product {back}"),
            )
        });
    }
    let laurent = CliConfig {
        precision: Some(8),
        ..configs::q_twist_int(2, Shape::LaurentSeries)
    };
    if let Some(loaded) = ctx.load("q_twist(2)_laurent_series", &laurent) {
        let c = loaded.config;
        ctx.check("c08.order_additivity", "orders add under multiplication", || {
            let mut rng = sample::rng(8);
            for _ in 0..50 {
                let oa = rng_order(&mut rng);
                let ob = rng_order(&mut rng);
                let a = sample::unit_series(&c, &mut rng, oa, oa + 6);
                let b = sample::unit_series(&c, &mut rng, ob, ob + 6);
                let ab = a.mul(&b)?;
                let (o, lead) = ab.order_leading()?;
                let expected = a.order_leading()?.1.mul(&c.sigma().apply_power(oa, &b.order_leading()?.1)?)?;
                if o != oa + ob || lead != expected {
                    return fail(format!("a = {a}, b = {b}"));
                }
            }
            pass("50 random pairs with orders in −2..=2")
        });
    }
    let conj = CliConfig {
        precision: Some(6),
        ..configs::gauss_conjugation(Shape::PowerSeries)
    };
    if let Some(loaded) = ctx.load("C_conjugation_series", &conj) {
        let c = loaded.config;
        ctx.check("inv.two_sided_inverse", "left and right inverses agree when σ is an automorphism", || {
            let mut rng = sample::rng(9);
            for _ in 0..20 {
                let a = sample::unit_series(&c, &mut rng, 0, 6);
                let right = a.invert()?;
                if right != a.left_inverse()? || a.mul(&right)? != TruncatedSeries::one(&c, 6)? {
                    return fail(format!("a = {a}"));
                }
            }
            pass("20 random units")
        });
    }
}

fn rng_order(rng: &mut sample::SampleRng) -> i64 {
    use rand::Rng;
    rng.gen_range(-2..=2)
}

pub(crate) fn jordan(ctx: &mut Ctx) {
    let h_plus = Ring::algebra(quaternion_jordan());
    ctx.check("c09.associator", "in ℍ⁺ the associator (i, i, j) is −j", || {
        let [i, j] = [1, 2].map(|p| h_plus.basis_element(p));
        let a = associator(&i, &i, &j)?;
        ensure(a == j.neg(), format!("(i, i, j) = {a}"), "(i, i, j) = −j")
    });
    ctx.check("c09.jordan_identity", "ℍ⁺ satisfies the Jordan identity", || {
        let basis = h_plus.spanning_set(0);
        for x in &basis {
            let xx = x.mul(x)?;
            for y in &basis {
                if x.mul(y)?.mul(&xx)? != x.mul(&y.mul(&xx)?)? {
                    return fail(format!("x = {x}, y = {y}"));
                }
            }
        }
        pass("all basis pairs")
    });
    let o = Ring::algebra(crate::rings::octonions());
    ctx.check("c09.derivations", "δ_(a,b) satisfies the derivation law on 𝕆", || {
        let mut rng = sample::rng(90);
        let basis = o.spanning_set(0);
        for _ in 0..10 {
            let a = sample::element(&o, &mut rng);
            let b = sample::element(&o, &mut rng);
            let d = standard_derivation(&a, &b)?;
            for x in &basis {
                for y in &basis {
                    let lhs = d.apply(&x.mul(y)?)?;
                    let rhs = d.apply(x)?.mul(y)?.add(&x.mul(&d.apply(y)?)?)?;
                    if lhs != rhs {
                        return fail(format!("a = {a}, b = {b}, x = {x}, y = {y}"));
                    }
                }
            }
        }
        pass("10 random (a, b), all basis pairs")
    });
    let h = Ring::algebra(crate::rings::quaternions());
    ctx.check("inv.inner_automorphisms", "conjugation by a unit quaternion is an automorphism", || {
        let mut rng = sample::rng(91);
        for _ in 0..5 {
            let u = sample::nonzero_element(&h, &mut rng);
            let coords = u.coords().unwrap().to_vec();
            let sigma = make_twist(&h, &TwistDescriptor::Inner { u: coords })?;
            if !sigma.has(MapTag::Automorphism) {
                return fail(format!("u = {u}"));
            }
        }
        pass("5 random units")
    });
}

pub(crate) fn quantum_torus(ctx: &mut Ctx) {
    let anchor = "X Y = q Y X in the octonionic quantum torus";
    let cfg = configs::quantum_torus("O", 2);
    let Some(loaded) = ctx.load("torus_O(2)", &cfg) else { return };
    let c = loaded.config;
    ctx.check("c10.relation", anchor, || {
        let x = SkewPoly::x_pow(&c, 1);
        let y = inner_variable(&c, 1)?;
        let lhs = x.mul(&y)?;
        let rhs = y.mul(&x)?.scale(&Rational::from_integer(2));
        ensure(lhs == rhs, format!("XY = {lhs}, 2YX = {rhs}"), format!("XY = {lhs}"))
    });
    ctx.check("c10.coefficients_commute", "octonion coefficients commute with X and Y", || {
        let Ring::Poly(inner) = c.coefficients() else { unreachable!() };
        let x = SkewPoly::x_pow(&c, 1);
        let y = inner_variable(&c, 1)?;
        for e in inner.coefficients().spanning_set(0) {
            let e = constant(&c, RingElement::Poly(SkewPoly::constant(inner, e)));
            if e.mul(&x)? != x.mul(&e)? || e.mul(&y)? != y.mul(&e)? {
                return fail(format!("{e}"));
            }
        }
        pass("all 8 basis octonions")
    });
    let nuclear = "powers of X and Y associate with everything from the middle and the right";
    for n in [-1, 1, 2, 3] {
        for (name, element) in [("X", SkewPoly::x_pow(&c, n)), ("Y", inner_variable(&c, n).unwrap())] {
            for side in [Side::Middle, Side::Right] {
                ctx.check(format!("c10.nuclear.{name}^{n}.{side}"), nuclear, || {
                    let q = NucleusQuery {
                        element: element.clone(),
                        side,
                        degree_bound: 3,
                    };
                    match nucleus_membership(&q)? {
                        Certificate::Pass => pass("degree bound 3"),
                        Certificate::Witness(w) => fail(w.to_string()),
                    }
                });
            }
        }
    }
}

pub(crate) fn d_structure(ctx: &mut Ctx) {
    let laurent_anchor = "π_b^a = σ^a for a = b and 0 otherwise is a D-structure";
    let mut triples = Vec::new();
    for a in -4..=4 {
        for b in -4..=4 {
            for c in -4..=4 {
                triples.push((a, b, c));
            }
        }
    }
    for (label, cfg) in laurent_configs() {
        let Some(loaded) = ctx.load(label, &cfg) else { continue };
        let sigma = loaded.config.sigma().clone();
        ctx.check(format!("c11.laurent.{label}"), laurent_anchor, || {
            let mut rng = sample::rng(110);
            let elements: Vec<_> = (0..2).map(|_| sample::element(sigma.ring(), &mut rng)).collect();
            let report = validate_d_structure(&LaurentFamily::new(sigma.clone()), &triples, &elements)?;
            ensure(report.passed(), report.failures.join("; "), "D0–D4 on |a|, |b|, |c| ≤ 4")
        });
    }
    let ore_anchor = "the π family of an Ore extension is a D-structure";
    let ore_triples: Vec<_> = triples
        .iter()
        .map(|&(a, b, c)| (a + 4, b + 4, c + 4))
        .filter(|&(a, b, c)| a <= 5 && b <= 5 && c <= 5)
        .collect();
    for (label, family) in ore_families() {
        ctx.check(format!("c11.ore.{label}"), ore_anchor, || {
            let pi = family?;
            let mut rng = sample::rng(111);
            let ring = pi.sigma().ring().clone();
            let elements: Vec<_> = (0..2).map(|_| sample::element(&ring, &mut rng)).collect();
            let report = validate_d_structure(&OreFamily::new(pi), &ore_triples, &elements)?;
            ensure(report.passed(), report.failures.join("; "), "D0–D4 on 0 ≤ a, b, c ≤ 5")
        });
    }
    ctx.check("c11.corrupted", "a family with π_0^0 = 0 fails D1", || {
        let ring = Ring::algebra(crate::rings::gaussian_rationals());
        let sigma = make_twist(&ring, &TwistDescriptor::QTwist { q: Rational::from_integer(2) })?;
        let family = FnFamily::new(
            Monoid::Integers,
            ring.clone(),
            move |a, b, r| {
                if a == b && a != 0 {
                    sigma.apply_power(a, r)
                } else {
                    Ok(r.ring().zero())
                }
            },
            |a| vec![a],
        );
        let elements = vec![ring.one()];
        let report = validate_d_structure(&family, &triples, &elements)?;
        ensure(
            report.axiom("D1") == Some(false),
            format!("{:?}", report.checks),
            format!("D1 fails: {}", report.failures.join("; ")),
        )
    });
}

/// One `(σ, δ)` pair per implemented coefficient ring.
fn ore_families() -> Vec<(&'static str, Result<PiFamily>)> {
    let q = |n| Rational::from_integer(n);
    let algebra = |name: &str| Ring::algebra(crate::rings::builtin(name).unwrap());
    let inner = |ring: &Ring, sigma: &TwistDescriptor, a: &[i64]| -> Result<PiFamily> {
        let sigma = make_twist(ring, sigma)?;
        let a = ring.from_ints(a)?;
        let delta = inner_derivation(&sigma, &a)?;
        PiFamily::new(sigma, Some(delta))
    };
    let mut out: Vec<(&'static str, Result<PiFamily>)> = vec![
        ("Q", inner(&algebra("Q"), &TwistDescriptor::Identity, &[2])),
        ("Q(i)", inner(&algebra("Q(i)"), &TwistDescriptor::QTwist { q: q(2) }, &[1, 1])),
        (
            "H",
            inner(
                &algebra("H"),
                &TwistDescriptor::Inner { u: vec![q(0), q(1), q(0), q(0)] },
                &[0, 0, 1, 0],
            ),
        ),
        ("H+", inner(&algebra("H+"), &TwistDescriptor::Identity, &[0, 1, 1, 0])),
    ];
    let m2 = crate::rings::matrix_algebra(crate::rings::rationals(), 2);
    out.push(("M2(Q)", m2.and_then(|r| inner(&r, &TwistDescriptor::Transpose, &[0, 1, 0, 0]))));
    let o = algebra("O");
    let octonion = (|| {
        let sigma = make_twist(&o, &TwistDescriptor::Conjugation)?;
        let delta = standard_derivation(&o.basis_element(1), &o.basis_element(2))?;
        PiFamily::new(sigma, Some(delta))
    })();
    out.push(("O", octonion));
    let poly = (|| {
        let ring = RingDescriptor::Polynomial {
            coefficients: Box::new(RingDescriptor::builtin("Q")),
            twist: TwistDescriptor::Identity,
            delta: None,
            variable: "Y".into(),
            shape: Shape::Ore,
        }
        .build()?;
        let sigma = make_twist(&ring, &TwistDescriptor::YScale { q: q(2), base: None })?;
        let delta = make_delta(&ring, &TwistDescriptor::Derivative)?;
        PiFamily::new(sigma, Some(delta))
    })();
    out.push(("Q[Y]", poly));
    out
}
