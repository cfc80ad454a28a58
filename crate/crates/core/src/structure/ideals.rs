//! Two-sided ideals of skew Laurent rings: reduction modulo `1 + X^(m²)`
//! when `σ^m = id`, and the shrinking probe for simplicity.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::POLY_CHECK_DEGREE;
use crate::poly::{add_term, Shape, SkewPoly};
use crate::rings::RingElement;

fn require_laurent(p: &SkewPoly) -> Result<()> {
    if p.config().shape() == Shape::Laurent {
        Ok(())
    } else {
        Err(Error::Unsupported("needs a skew Laurent polynomial ring".into()))
    }
}

/// Representative of `p` modulo the ideal generated by `1 + X^(m²)`:
/// every `r X^e` becomes `(−1)^⌊e/m²⌋ r X^(e mod m²)`.
pub fn central_reduction(p: &SkewPoly, m: u32) -> Result<SkewPoly> {
    require_laurent(p)?;
    if m == 0 {
        return Err(Error::FiniteOrderHypothesis);
    }
    let cfg = p.config();
    let sigma = cfg.sigma();
    for b in cfg.coefficients().spanning_set(POLY_CHECK_DEGREE) {
        if sigma.apply_power(i64::from(m), &b)? != b {
            return Err(Error::FiniteOrderHypothesis);
        }
    }
    let period = i64::from(m) * i64::from(m);
    let mut terms = BTreeMap::new();
    for (&e, r) in p.terms() {
        let c = if e.div_euclid(period) % 2 == 0 {
            r.clone()
        } else {
            r.neg()
        };
        add_term(&mut terms, e.rem_euclid(period), c)?;
    }
    Ok(SkewPoly::from_terms(cfg, terms))
}

fn require_commutative_division(p: &SkewPoly) -> Result<()> {
    let ring = p.config().coefficients();
    if ring.is_division_ring() && ring.is_commutative(POLY_CHECK_DEGREE)? {
        Ok(())
    } else {
        Err(Error::RequiresCommutativeDivisionRing)
    }
}

/// `p d − σ^(deg p)(d) p`.
pub fn shrink(p: &SkewPoly, d: &RingElement) -> Result<SkewPoly> {
    require_laurent(p)?;
    require_commutative_division(p)?;
    let cfg = p.config();
    let m = p.degree()?;
    let twisted = cfg.sigma().apply_power(m, d)?;
    let right = p.mul(&SkewPoly::constant(cfg, d.clone()))?;
    let left = SkewPoly::constant(cfg, twisted).mul(p)?;
    right.sub(&left)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeStep {
    /// The generator after right multiplication by `X^(−order)`.
    pub normalized: String,
    pub d: String,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// A nonzero constant was reached, so the ideal is the whole ring.
    Unit {
        unit: RingElement,
        steps: Vec<ProbeStep>,
    },
    Inconclusive {
        steps: Vec<ProbeStep>,
        /// Every basis shrink of the last generator vanished.
        all_shrinks_zero: bool,
    },
}

impl ProbeOutcome {
    pub fn is_unit(&self) -> bool {
        matches!(self, ProbeOutcome::Unit { .. })
    }

    pub fn steps(&self) -> &[ProbeStep] {
        match self {
            ProbeOutcome::Unit { steps, .. } | ProbeOutcome::Inconclusive { steps, .. } => steps,
        }
    }
}

/// Normalizes to order zero and shrinks with the first basis element that
/// lowers the degree, until a constant appears or `budget` shrinks are
/// spent.
pub fn simplicity_probe(p: &SkewPoly, budget: usize) -> Result<ProbeOutcome> {
    require_laurent(p)?;
    require_commutative_division(p)?;
    let cfg = p.config();
    let basis = cfg.coefficients().spanning_set(0);
    let mut current = p.clone();
    let mut steps = Vec::new();
    loop {
        let order = current.order()?;
        let normalized = current.mul(&SkewPoly::x_pow(cfg, -order))?;
        let deg = normalized.degree()?;
        if deg == 0 {
            let unit = normalized.leading()?.clone();
            return Ok(ProbeOutcome::Unit { unit, steps });
        }
        if steps.len() >= budget {
            return Ok(ProbeOutcome::Inconclusive {
                steps,
                all_shrinks_zero: false,
            });
        }
        let mut next = None;
        let mut all_zero = true;
        for d in &basis {
            let s = shrink(&normalized, d)?;
            if s.is_zero() {
                continue;
            }
            all_zero = false;
            if s.degree()? < deg {
                next = Some((d.clone(), s));
                break;
            }
        }
        let Some((d, s)) = next else {
            return Ok(ProbeOutcome::Inconclusive {
                steps,
                all_shrinks_zero: all_zero,
            });
        };
        steps.push(ProbeStep {
            normalized: normalized.to_string(),
            d: d.to_string(),
            result: s.to_string(),
        });
        current = s;
    }
}
