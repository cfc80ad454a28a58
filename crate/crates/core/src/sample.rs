//! Seeded random elements for property checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{RingConfig, SkewPoly};
use crate::rational::Rational;
use crate::rings::{Ring, RingElement};
use crate::series::TruncatedSeries;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rationals `p/q` with `|p| ≤ 3`, `q ∈ {1, 2}`.
pub fn rational(rng: &mut SampleRng) -> Rational {
    Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn nonzero_rational(rng: &mut SampleRng) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A random element; about half the coordinates are zero.
pub fn element(ring: &Ring, rng: &mut SampleRng) -> RingElement {
    match ring {
        Ring::Poly(cfg) => {
            let p = poly(cfg, rng, 0..=2);
            RingElement::Poly(p)
        }
        _ => {
            let dim = ring.dimension().unwrap();
            let coords = (0..dim)
                .map(|_| if rng.gen_bool(0.5) { rational(rng) } else { Rational::zero() })
                .collect();
            ring.from_coords(coords).unwrap()
        }
    }
}

pub fn nonzero_element(ring: &Ring, rng: &mut SampleRng) -> RingElement {
    loop {
        let e = element(ring, rng);
        if !e.is_zero() {
            return e;
        }
    }
}

/// A random polynomial with exponents in `range`, clipped to the shape.
pub fn poly(
    cfg: &Arc<RingConfig>,
    rng: &mut SampleRng,
    range: std::ops::RangeInclusive<i64>,
) -> SkewPoly {
    let lo = if cfg.shape().allows_negative() {
        *range.start()
    } else {
        (*range.start()).max(0)
    };
    let mut terms = BTreeMap::new();
    for e in lo..=*range.end() {
        if rng.gen_bool(0.6) {
            terms.insert(e, element(cfg.coefficients(), rng));
        }
    }
    SkewPoly::from_terms(cfg, terms)
}

pub fn nonzero_poly(
    cfg: &Arc<RingConfig>,
    rng: &mut SampleRng,
    range: std::ops::RangeInclusive<i64>,
) -> SkewPoly {
    loop {
        let p = poly(cfg, rng, range.clone());
        if !p.is_zero() {
            return p;
        }
    }
}

/// A polynomial of exact degree `deg` with nonzero leading coefficient.
pub fn poly_of_degree(
    cfg: &Arc<RingConfig>,
    rng: &mut SampleRng,
    lo: i64,
    deg: i64,
) -> SkewPoly {
    let mut p = poly(cfg, rng, lo..=deg - 1);
    let lead = SkewPoly::monomial(cfg, nonzero_element(cfg.coefficients(), rng), deg);
    p = p.add(&lead).unwrap();
    p
}

/// A series `u X^k + …` whose leading coefficient is a nonzero element of
/// a division ring.
pub fn unit_series(
    cfg: &Arc<RingConfig>,
    rng: &mut SampleRng,
    order: i64,
    precision: i64,
) -> TruncatedSeries {
    let mut p = poly_of_degree(cfg, rng, order, order);
    p = p.add(&poly(cfg, rng, order + 1..=precision)).unwrap();
    TruncatedSeries::from_poly(&p, precision).unwrap()
}
