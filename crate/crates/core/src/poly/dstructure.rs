//! Families `π_b^a` of maps indexed by a monoid, and the axioms that make
//! them induce a twisted monoid ring.

use serde::Serialize;

use crate::error::Result;
use crate::maps::{AxiomCheck, PiFamily, TwistMap};
use crate::rings::{Ring, RingElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monoid {
    Naturals,
    Integers,
}

impl Monoid {
    pub fn contains(self, a: i64) -> bool {
        self == Monoid::Integers || a >= 0
    }
}

/// A family `π_b^a : R → R`, written additively so the identity is `0`.
pub trait DStructure {
    fn monoid(&self) -> Monoid;
    fn ring(&self) -> &Ring;
    /// `π_b^a(r)`.
    fn apply(&self, a: i64, b: i64, r: &RingElement) -> Result<RingElement>;
    /// A finite set of `b` outside which `π_b^a` vanishes.
    fn support(&self, a: i64) -> Vec<i64>;
}

/// `π_b^a = σ^a` if `a = b`, zero otherwise, over ℤ.
#[derive(Clone, Debug)]
pub struct LaurentFamily {
    sigma: TwistMap,
}

impl LaurentFamily {
    pub fn new(sigma: TwistMap) -> Self {
        LaurentFamily { sigma }
    }
}

impl DStructure for LaurentFamily {
    fn monoid(&self) -> Monoid {
        Monoid::Integers
    }

    fn ring(&self) -> &Ring {
        self.sigma.ring()
    }

    fn apply(&self, a: i64, b: i64, r: &RingElement) -> Result<RingElement> {
        if a == b {
            self.sigma.apply_power(a, r)
        } else {
            Ok(r.ring().zero())
        }
    }

    fn support(&self, a: i64) -> Vec<i64> {
        vec![a]
    }
}

/// `π_b^a = π_b^a` of an Ore extension, over ℕ.
#[derive(Clone, Debug)]
pub struct OreFamily {
    pi: PiFamily,
}

impl OreFamily {
    pub fn new(pi: PiFamily) -> Self {
        OreFamily { pi }
    }
}

impl DStructure for OreFamily {
    fn monoid(&self) -> Monoid {
        Monoid::Naturals
    }

    fn ring(&self) -> &Ring {
        self.pi.sigma().ring()
    }

    fn apply(&self, a: i64, b: i64, r: &RingElement) -> Result<RingElement> {
        if a < 0 || b < 0 {
            return Ok(r.ring().zero());
        }
        self.pi.pi_apply(b as u32, a as u32, r)
    }

    fn support(&self, a: i64) -> Vec<i64> {
        (0..=a.max(0)).collect()
    }
}

type ApplyFn = dyn Fn(i64, i64, &RingElement) -> Result<RingElement> + Send + Sync;
type SupportFn = dyn Fn(i64) -> Vec<i64> + Send + Sync;

/// A family given by closures.
pub struct FnFamily {
    monoid: Monoid,
    ring: Ring,
    apply: Box<ApplyFn>,
    support: Box<SupportFn>,
}

impl FnFamily {
    pub fn new(
        monoid: Monoid,
        ring: Ring,
        apply: impl Fn(i64, i64, &RingElement) -> Result<RingElement> + Send + Sync + 'static,
        support: impl Fn(i64) -> Vec<i64> + Send + Sync + 'static,
    ) -> Self {
        FnFamily {
            monoid,
            ring,
            apply: Box::new(apply),
            support: Box::new(support),
        }
    }
}

impl DStructure for FnFamily {
    fn monoid(&self) -> Monoid {
        self.monoid
    }

    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn apply(&self, a: i64, b: i64, r: &RingElement) -> Result<RingElement> {
        (self.apply)(a, b, r)
    }

    fn support(&self, a: i64) -> Vec<i64> {
        (self.support)(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DReport {
    pub checks: Vec<AxiomCheck>,
    /// First failing instance per axiom, as text.
    pub failures: Vec<String>,
}

impl DReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn axiom(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.axiom == name).map(|c| c.passed)
    }
}

/// Checks D0–D4 on every sampled `(a, b, c)` and element.
///
/// D0 is checked on the window spanned by the sample: every `b` there with
/// `π_b^a(r) ≠ 0` must lie in the declared support.
pub fn validate_d_structure(
    d: &dyn DStructure,
    triples: &[(i64, i64, i64)],
    elements: &[RingElement],
) -> Result<DReport> {
    let monoid = d.monoid();
    let triples: Vec<_> = triples
        .iter()
        .copied()
        .filter(|&(a, b, c)| monoid.contains(a) && monoid.contains(b) && monoid.contains(c))
        .collect();
    let mut failures = Vec::new();
    let mut fail = |axiom: &str, detail: String, ok: &mut bool| {
        if *ok {
            failures.push(format!("{axiom}: {detail}"));
        }
        *ok = false;
    };
    let ring = d.ring();
    let one = ring.one();
    let zero = ring.zero();
    let reach = triples
        .iter()
        .map(|&(a, b, c)| a.abs().max(b.abs()).max(c.abs()))
        .max()
        .unwrap_or(0);
    let window: Vec<i64> = (-2 * reach - 1..=2 * reach + 1)
        .filter(|&x| monoid.contains(x))
        .collect();
    let mut indices: Vec<i64> = triples.iter().flat_map(|&(a, b, c)| [a, b, c]).collect();
    indices.push(0);
    indices.sort_unstable();
    indices.dedup();

    let (mut d0, mut d1, mut d2, mut d3, mut d4) = (true, true, true, true, true);
    for &a in &indices {
        let support = d.support(a);
        for r in elements {
            for &b in &window {
                if !support.contains(&b) && !d.apply(a, b, r)?.is_zero() {
                    fail("D0", format!("pi^{a}_{b}({r}) outside support"), &mut d0);
                }
            }
        }
    }
    for r in elements {
        if d.apply(0, 0, r)? != *r {
            fail("D1", format!("pi^0_0({r}) != {r}"), &mut d1);
        }
        for &a in &indices {
            if a != 0 && !d.apply(0, a, r)?.is_zero() {
                fail("D1", format!("pi^0_{a}({r}) != 0"), &mut d1);
            }
        }
    }
    for &a in &indices {
        for &b in &indices {
            let expected = if a == b { &one } else { &zero };
            if d.apply(a, b, &one)? != *expected {
                fail("D2", format!("pi^{a}_{b}(1) is not the Kronecker delta"), &mut d2);
            }
        }
    }
    for &(a, b, _) in &triples {
        for r in elements {
            for s in elements {
                let lhs = d.apply(a, b, &r.add(s)?)?;
                let rhs = d.apply(a, b, r)?.add(&d.apply(a, b, s)?)?;
                if lhs != rhs {
                    fail("D3", format!("pi^{a}_{b} not additive on {r}, {s}"), &mut d3);
                }
            }
        }
    }
    for &(a, b, c) in &triples {
        for r in elements {
            let lhs = d.apply(a + b, c, r)?;
            let mut rhs = zero.clone();
            for e in d.support(b) {
                let inner = d.apply(b, e, r)?;
                if inner.is_zero() || !monoid.contains(c - e) {
                    continue;
                }
                rhs = rhs.add(&d.apply(a, c - e, &inner)?)?;
            }
            if lhs != rhs {
                fail("D4", format!("pi^({a}+{b})_{c}({r}) mismatch"), &mut d4);
            }
        }
    }
    let check = |axiom: &str, passed: bool| AxiomCheck {
        axiom: axiom.into(),
        passed,
    };
    Ok(DReport {
        checks: vec![
            check("D0", d0),
            check("D1", d1),
            check("D2", d2),
            check("D3", d3),
            check("D4", d4),
        ],
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{make_twist, TwistDescriptor};
    use crate::rational::Rational;
    use crate::rings::gaussian_rationals;

    fn sample() -> (TwistMap, Vec<RingElement>) {
        let c = Ring::algebra(gaussian_rationals());
        let sigma = make_twist(&c, &TwistDescriptor::QTwist { q: Rational::from_integer(2) }).unwrap();
        let elems = vec![c.one(), c.from_ints(&[2, -3]).unwrap(), c.basis_element(1)];
        (sigma, elems)
    }

    fn triples(bound: i64) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        for a in -bound..=bound {
            for b in -bound..=bound {
                for c in -bound..=bound {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    #[test]
    fn laurent_family_passes() {
        let (sigma, elems) = sample();
        let report = validate_d_structure(&LaurentFamily::new(sigma), &triples(2), &elems).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn corrupted_family_fails_d1() {
        let (sigma, elems) = sample();
        let ring = sigma.ring().clone();
        let fam = FnFamily::new(
            Monoid::Integers,
            ring,
            move |a, b, r| {
                if a == 0 && b == 0 {
                    Ok(r.ring().zero())
                } else if a == b {
                    sigma.apply_power(a, r)
                } else {
                    Ok(r.ring().zero())
                }
            },
            |a| vec![a],
        );
        let report = validate_d_structure(&fam, &triples(1), &elems).unwrap();
        assert_eq!(report.axiom("D1"), Some(false));
        assert!(!report.failures.is_empty());
    }
}
