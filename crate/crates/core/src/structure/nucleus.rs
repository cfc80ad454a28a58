//! Degree-bounded nucleus and associativity checks on basis monomials.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{RingConfig, Shape, SkewPoly};
use crate::rings::{invert, RingElement};

/// Which slot of the associator an element must annihilate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Middle,
    Right,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Left, Side::Middle, Side::Right];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Middle => "middle",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Debug)]
pub struct NucleusQuery {
    pub element: SkewPoly,
    pub side: Side,
    pub degree_bound: u32,
}

/// A triple with nonzero associator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub triple: [SkewPoly; 3],
    pub associator: SkewPoly,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.triple;
        write!(f, "({a}, {b}, {c}) = {}", self.associator)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The identity holds on every basis monomial up to the bound.
    Pass,
    Witness(Box<Witness>),
}

impl Certificate {
    pub fn passed(&self) -> bool {
        matches!(self, Certificate::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Certificate::Pass => None,
            Certificate::Witness(w) => Some(w),
        }
    }
}

/// All `b X^e` with `b` in the coefficient spanning set and `|e| ≤ bound`.
pub fn monomial_basis(config: &Arc<RingConfig>, bound: u32) -> Vec<SkewPoly> {
    let coeffs = config.coefficients().spanning_set(bound);
    let mut out = Vec::new();
    for e in config.shape().exponent_range(bound) {
        for b in &coeffs {
            out.push(SkewPoly::monomial(config, b.clone(), e));
        }
    }
    out
}

fn witness(a: &SkewPoly, b: &SkewPoly, c: &SkewPoly, assoc: SkewPoly) -> Certificate {
    Certificate::Witness(Box::new(Witness {
        triple: [a.clone(), b.clone(), c.clone()],
        associator: assoc,
    }))
}

/// Whether `x` annihilates the chosen slot of the associator on all pairs
/// of basis monomials up to the bound.
pub fn nucleus_membership(q: &NucleusQuery) -> Result<Certificate> {
    let x = &q.element;
    let basis = monomial_basis(x.config(), q.degree_bound);
    // Products with x are shared across the inner loop.
    let x_left: Vec<SkewPoly> = basis.iter().map(|a| x.mul(a)).collect::<Result<_>>()?;
    let x_right: Vec<SkewPoly> = basis.iter().map(|a| a.mul(x)).collect::<Result<_>>()?;
    for (ia, a) in basis.iter().enumerate() {
        for (ib, b) in basis.iter().enumerate() {
            let (lhs, rhs, triple) = match q.side {
                Side::Left => (x_left[ia].mul(b)?, x.mul(&a.mul(b)?)?, (x, a, b)),
                Side::Middle => (x_right[ia].mul(b)?, a.mul(&x_left[ib])?, (a, x, b)),
                Side::Right => (a.mul(b)?.mul(x)?, a.mul(&x_right[ib])?, (a, b, x)),
            };
            if lhs != rhs {
                return Ok(witness(triple.0, triple.1, triple.2, lhs.sub(&rhs)?));
            }
        }
    }
    Ok(Certificate::Pass)
}

/// Whether every triple of basis monomials up to the bound associates.
pub fn associativity_certificate(config: &Arc<RingConfig>, degree_bound: u32) -> Result<Certificate> {
    let basis = monomial_basis(config, degree_bound);
    for a in &basis {
        for b in &basis {
            let ab = a.mul(b)?;
            for c in &basis {
                let lhs = ab.mul(c)?;
                let rhs = a.mul(&b.mul(c)?)?;
                if lhs != rhs {
                    return Ok(witness(a, b, c, lhs.sub(&rhs)?));
                }
            }
        }
    }
    Ok(Certificate::Pass)
}

/// The three clauses on inverses of nuclear elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// `x ∈ N_l ∩ N_m ⇒ x⁻¹ ∈ N_l`.
    LeftMiddle,
    /// `x ∈ N ⇒ x⁻¹ ∈ N_m`.
    Full,
    /// `x ∈ N_m ∩ N_r ⇒ x⁻¹ ∈ N_r`.
    MiddleRight,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 3] = [
        Hypothesis::LeftMiddle,
        Hypothesis::Full,
        Hypothesis::MiddleRight,
    ];

    pub fn assumed(self) -> &'static [Side] {
        match self {
            Hypothesis::LeftMiddle => &[Side::Left, Side::Middle],
            Hypothesis::Full => &[Side::Left, Side::Middle, Side::Right],
            Hypothesis::MiddleRight => &[Side::Middle, Side::Right],
        }
    }

    pub fn concluded(self) -> Side {
        match self {
            Hypothesis::LeftMiddle => Side::Left,
            Hypothesis::Full => Side::Middle,
            Hypothesis::MiddleRight => Side::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseStatus {
    /// Hypothesis and conclusion both hold.
    Verified,
    /// Some assumed side fails for `x`; nothing to conclude.
    HypothesisNotSatisfied,
    /// Hypothesis holds but the conclusion fails.
    Refuted,
}

#[derive(Clone, Debug)]
pub struct InverseReport {
    pub hypothesis: Hypothesis,
    pub inverse: SkewPoly,
    pub hypothesis_witness: Option<(Side, Witness)>,
    pub conclusion: Option<Certificate>,
    pub status: InverseStatus,
}

/// Checks one clause for an invertible monomial `x = u X^m`.
pub fn nuclear_inverse_check(
    x: &SkewPoly,
    hypothesis: Hypothesis,
    degree_bound: u32,
) -> Result<InverseReport> {
    if x.terms().len() != 1 || (x.order()? != 0 && x.config().shape() != Shape::Laurent) {
        return Err(Error::InverseNotRepresentable);
    }
    let inverse = match invert(&RingElement::Poly(x.clone())) {
        Ok(RingElement::Poly(p)) => p,
        _ => return Err(Error::InverseNotRepresentable),
    };
    for &side in hypothesis.assumed() {
        let q = NucleusQuery {
            element: x.clone(),
            side,
            degree_bound,
        };
        if let Certificate::Witness(w) = nucleus_membership(&q)? {
            return Ok(InverseReport {
                hypothesis,
                inverse,
                hypothesis_witness: Some((side, *w)),
                conclusion: None,
                status: InverseStatus::HypothesisNotSatisfied,
            });
        }
    }
    let conclusion = nucleus_membership(&NucleusQuery {
        element: inverse.clone(),
        side: hypothesis.concluded(),
        degree_bound,
    })?;
    let status = if conclusion.passed() {
        InverseStatus::Verified
    } else {
        InverseStatus::Refuted
    };
    Ok(InverseReport {
        hypothesis,
        inverse,
        hypothesis_witness: None,
        conclusion: Some(conclusion),
        status,
    })
}
