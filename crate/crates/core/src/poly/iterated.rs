//! Iterated constructions `R[Y₁±; σ₁][Y₂±; σ̂₂]…` and the quantum torus.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::maps::{LinearMap, TwistMap};
use crate::rational::Rational;
use crate::rings::Ring;

use super::{RingConfig, Shape};

/// How the new twist `σ̂` acts: by `base_twist` on the ground ring and by
/// `Yᵢ ↦ scales[i] Yᵢ` on the earlier variables, innermost first. Missing
/// scales are `1`.
#[derive(Clone, Debug)]
pub struct IteratedSpec {
    pub variable: String,
    pub base_twist: TwistMap,
    pub scales: Vec<Rational>,
    pub shape: Shape,
}

/// The ring at the bottom of a tower of polynomial rings.
pub fn ground_ring(config: &RingConfig) -> &Ring {
    match config.coefficients() {
        Ring::Poly(inner) => ground_ring(inner),
        other => other,
    }
}

/// Configs from the innermost level outwards.
fn levels(config: &Arc<RingConfig>) -> Vec<Arc<RingConfig>> {
    let mut out = vec![config.clone()];
    while let Ring::Poly(inner) = out.last().unwrap().coefficients() {
        let inner = inner.clone();
        out.push(inner);
    }
    out.reverse();
    out
}

/// The part of a lifted map acting on the ground ring.
fn ground_part(map: &LinearMap) -> &LinearMap {
    match map {
        LinearMap::Graded { coeff, .. } => ground_part(coeff),
        other => other,
    }
}

fn lift(levels: &[Arc<RingConfig>], base: &LinearMap, scales: &[Rational]) -> LinearMap {
    let depth = levels.len() - 1;
    let coeff = if depth == 0 {
        base.clone()
    } else {
        lift(&levels[..depth], base, scales)
    };
    LinearMap::Graded {
        coeff: Box::new(coeff),
        scale: scales.get(depth).cloned().unwrap_or_else(Rational::one),
    }
}

/// Adjoins a new variable over the ring built by `inner`.
pub fn iterated_extend(inner: &Arc<RingConfig>, spec: &IteratedSpec) -> Result<Arc<RingConfig>> {
    let ground = ground_ring(inner);
    if spec.base_twist.ring() != ground {
        return Err(Error::IncompatibleRings(format!(
            "base twist on {} for ground ring {ground}",
            spec.base_twist.ring()
        )));
    }
    let levels = levels(inner);
    if spec.scales.len() > levels.len() {
        return Err(Error::InvalidConfig(format!(
            "{} scales for {} earlier variables",
            spec.scales.len(),
            levels.len()
        )));
    }
    if spec.scales.iter().any(Rational::is_zero) {
        return Err(Error::NotBijective("variable scale 0".into()));
    }
    for level in &levels {
        let earlier = TwistMap::new(ground.clone(), ground_part(level.sigma().forward()).clone(), "")?;
        if !earlier.commutes_with(&spec.base_twist)? {
            return Err(Error::NonCommutingTwists);
        }
    }
    let forward = lift(&levels, spec.base_twist.forward(), &spec.scales);
    let mut label = spec.base_twist.label().to_string();
    for (level, q) in levels.iter().zip(&spec.scales) {
        if !q.is_one() {
            label = format!("{label}, {0}↦{q}{0}", level.variable());
        }
    }
    let ring = Ring::Poly(inner.clone());
    let sigma = TwistMap::new(ring.clone(), forward, label)?;
    RingConfig::new(ring, sigma, None, spec.variable.clone(), spec.shape)
}

/// `R[Y±][X±; σ]` with `σ(c Y^k) = q^k c Y^k`, so that `X Y = q Y X`.
pub fn quantum_torus(ring: &Ring, q: &Rational) -> Result<Arc<RingConfig>> {
    if q.is_zero() {
        return Err(Error::NotBijective("quantum torus with q = 0".into()));
    }
    let inner = RingConfig::untwisted(ring.clone(), "Y", Shape::Laurent)?;
    let spec = IteratedSpec {
        variable: "X".into(),
        base_twist: TwistMap::identity(ring),
        scales: vec![q.clone()],
        shape: Shape::Laurent,
    };
    let cfg = iterated_extend(&inner, &spec)?;
    let sigma = cfg.sigma().clone().with_label(format!("y_scale({q})"));
    RingConfig::new(cfg.coefficients().clone(), sigma, None, "X", Shape::Laurent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{make_twist, MapTag, TwistDescriptor};
    use crate::poly::SkewPoly;
    use crate::rings::{gaussian_rationals, octonions, rationals, RingElement};

    fn x_and_y(cfg: &Arc<RingConfig>) -> (SkewPoly, SkewPoly) {
        let Ring::Poly(inner) = cfg.coefficients() else { unreachable!() };
        let y = RingElement::Poly(SkewPoly::x_pow(inner, 1));
        (SkewPoly::x_pow(cfg, 1), SkewPoly::constant(cfg, y))
    }

    #[test]
    fn torus_relation() {
        for q in [2, 1, -3] {
            let q = Rational::from_integer(q);
            let cfg = quantum_torus(&Ring::algebra(rationals()), &q).unwrap();
            let (x, y) = x_and_y(&cfg);
            let xy = x.mul(&y).unwrap();
            let qyx = y.mul(&x).unwrap().scale(&q);
            assert_eq!(xy, qyx);
            assert!(cfg.sigma().has(MapTag::Automorphism));
        }
        assert!(quantum_torus(&Ring::algebra(rationals()), &Rational::zero()).is_err());
    }

    #[test]
    fn octonion_torus_scales_coefficients() {
        let o = Ring::algebra(octonions());
        let cfg = quantum_torus(&o, &Rational::from_integer(3)).unwrap();
        let Ring::Poly(inner) = cfg.coefficients() else { unreachable!() };
        let e1y3 = RingElement::Poly(SkewPoly::monomial(inner, o.basis_element(1), 3));
        let image = cfg.sigma().apply(&e1y3).unwrap();
        assert_eq!(image, e1y3.scale(&Rational::from_integer(27)));
    }

    #[test]
    fn non_commuting_twists_rejected() {
        let c = Ring::algebra(gaussian_rationals());
        let q2 = make_twist(&c, &TwistDescriptor::QTwist { q: Rational::from_integer(2) }).unwrap();
        let star = make_twist(&c, &TwistDescriptor::Conjugation).unwrap();
        let inner = RingConfig::new(c.clone(), q2.clone(), None, "Y", Shape::Laurent).unwrap();
        let ok = IteratedSpec {
            variable: "X".into(),
            base_twist: star,
            scales: vec![],
            shape: Shape::Laurent,
        };
        assert!(iterated_extend(&inner, &ok).is_ok());

        let h = Ring::algebra(crate::rings::quaternions());
        let inner_i = make_twist(
            &h,
            &TwistDescriptor::Inner {
                u: vec![Rational::zero(), Rational::one(), Rational::zero(), Rational::zero()],
            },
        )
        .unwrap();
        let inner_j = make_twist(
            &h,
            &TwistDescriptor::Inner {
                u: vec![Rational::one(), Rational::zero(), Rational::one(), Rational::zero()],
            },
        )
        .unwrap();
        let tower = RingConfig::new(h, inner_i, None, "Y", Shape::Laurent).unwrap();
        let bad = IteratedSpec {
            variable: "X".into(),
            base_twist: inner_j,
            scales: vec![],
            shape: Shape::Laurent,
        };
        assert_eq!(iterated_extend(&tower, &bad).unwrap_err(), Error::NonCommutingTwists);
    }
}
