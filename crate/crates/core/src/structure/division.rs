//! Leading-term reduction against generators: monic left division over
//! division rings, right reduction of polynomials and series.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{RingConfig, SkewPoly};
use crate::rings::{invert, left_divide, RingElement};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CofactorSide {
    /// `cofactor · generator`.
    Left,
    /// `generator · cofactor`.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub generator: usize,
    pub side: CofactorSide,
    pub cofactor: SkewPoly,
}

impl ReductionStep {
    fn to_json(&self) -> Value {
        json!({
            "generator": self.generator,
            "cofactor": self.cofactor.to_string(),
            "side": self.side,
        })
    }
}

/// `input = Σ steps + remainder`, each step one product of a generator and
/// its cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult<T> {
    pub generators: Vec<T>,
    pub steps: Vec<ReductionStep>,
    pub remainder: T,
    /// No generator matched the leading term of the remainder.
    pub irreducible: bool,
}

impl<T: std::fmt::Display> ReductionResult<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "quotient_record": self.steps.iter().map(ReductionStep::to_json).collect::<Vec<_>>(),
            "remainder": self.remainder.to_string(),
            "irreducible": self.irreducible,
        })
    }
}

impl ReductionResult<SkewPoly> {
    /// Rebuilds the input from the record.
    pub fn replay(&self) -> Result<SkewPoly> {
        let mut acc = self.remainder.clone();
        for step in &self.steps {
            let g = &self.generators[step.generator];
            let term = match step.side {
                CofactorSide::Left => step.cofactor.mul(g)?,
                CofactorSide::Right => g.mul(&step.cofactor)?,
            };
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

impl ReductionResult<TruncatedSeries> {
    /// Rebuilds the input from the record, to the precision the record
    /// supports.
    pub fn replay(&self) -> Result<TruncatedSeries> {
        let mut acc = self.remainder.clone();
        for step in &self.steps {
            let g = &self.generators[step.generator];
            if step.side != CofactorSide::Right {
                return Err(Error::Unsupported("left cofactors on series".into()));
            }
            acc = acc.add(&g.mul_poly(&step.cofactor)?)?;
        }
        Ok(acc)
    }
}

fn check_same(f: &SkewPoly, g: &SkewPoly) -> Result<()> {
    if f.config() == g.config() {
        Ok(())
    } else {
        Err(Error::IncompatibleRings(format!("{} vs {}", f.config(), g.config())))
    }
}

fn reject_series(f: &SkewPoly) -> Result<()> {
    if f.config().shape().is_series() {
        Err(Error::Unsupported("polynomial reduction in a series shape".into()))
    } else {
        Ok(())
    }
}

/// Divides `f` on the left by `p` made monic: `f = Σ (r X^k)·p' + rem` with
/// `deg rem < deg p` and `p' = c⁻¹ p` the stored generator.
pub fn monic_left_reduce(f: &SkewPoly, p: &SkewPoly) -> Result<ReductionResult<SkewPoly>> {
    check_same(f, p)?;
    reject_series(f)?;
    let cfg = f.config();
    if !cfg.coefficients().is_division_ring() {
        return Err(Error::RequiresDivisionRing);
    }
    let (m, _, c) = p.degree_order_leading()?;
    let monic = SkewPoly::constant(cfg, invert(&c)?).mul(p)?;
    let mut rem = f.clone();
    let mut steps = Vec::new();
    while !rem.is_zero() {
        let n = rem.degree()?;
        if n < m {
            break;
        }
        let cofactor = SkewPoly::monomial(cfg, rem.leading()?.clone(), n - m);
        let next = rem.sub(&cofactor.mul(&monic)?)?;
        if !next.is_zero() && next.degree()? >= n {
            // Only possible if σ^k(1) ≠ 1, which the twist axioms exclude.
            return Err(Error::InvalidConfig("leading term did not cancel".into()));
        }
        rem = next;
        steps.push(ReductionStep {
            generator: 0,
            side: CofactorSide::Left,
            cofactor,
        });
    }
    Ok(ReductionResult {
        generators: vec![monic],
        steps,
        remainder: rem,
        irreducible: false,
    })
}

/// `X^k · σ^(−n)(t)` where `c_g t = c_f`: the right cofactor that makes
/// `g · h` share the term `c_f X^n`.
fn right_cofactor(
    g_lead: &RingElement,
    f_lead: &RingElement,
    n: i64,
    k: i64,
    cfg: &Arc<RingConfig>,
) -> Result<Option<SkewPoly>> {
    let Some(t) = left_divide(g_lead, f_lead)? else {
        return Ok(None);
    };
    let s = match cfg.sigma().apply_power(-n, &t) {
        Ok(s) => s,
        Err(Error::InverseUnavailable) => return Ok(None),
        Err(e) => return Err(e),
    };
    let h = SkewPoly::x_pow(cfg, k).mul(&SkewPoly::constant(cfg, s))?;
    Ok(Some(h))
}

/// Cancels leading terms of `f` by right multiples `g · (X^k s)` of the
/// generators until the degree drops below every generator degree or no
/// generator matches.
pub fn right_reduce(f: &SkewPoly, gens: &[SkewPoly]) -> Result<ReductionResult<SkewPoly>> {
    reject_series(f)?;
    if gens.is_empty() {
        return Err(Error::InvalidConfig("empty generator set".into()));
    }
    let mut info = Vec::with_capacity(gens.len());
    for g in gens {
        check_same(f, g)?;
        let (d, _, c) = g.degree_order_leading()?;
        info.push((d, c));
    }
    let min_deg = info.iter().map(|(d, _)| *d).min().unwrap();
    let mut rem = f.clone();
    let mut steps = Vec::new();
    let mut irreducible = false;
    while !rem.is_zero() {
        let n = rem.degree()?;
        if n < min_deg {
            break;
        }
        let lead = rem.leading()?.clone();
        let mut matched = None;
        for (idx, (g, (d, c))) in gens.iter().zip(&info).enumerate() {
            if *d > n {
                continue;
            }
            let Some(h) = right_cofactor(c, &lead, n, n - d, g.config())? else {
                continue;
            };
            let next = rem.sub(&g.mul(&h)?)?;
            if next.is_zero() || next.degree()? < n {
                matched = Some((idx, h, next));
                break;
            }
        }
        let Some((generator, cofactor, next)) = matched else {
            irreducible = true;
            break;
        };
        steps.push(ReductionStep {
            generator,
            side: CofactorSide::Right,
            cofactor,
        });
        rem = next;
    }
    Ok(ReductionResult {
        generators: gens.to_vec(),
        steps,
        remainder: rem,
        irreducible,
    })
}

/// Raises the order of `f` by subtracting right multiples of the
/// generators, for at most `steps` rounds. Stops early once the remainder
/// vanishes to its precision.
pub fn right_reduce_series(
    f: &TruncatedSeries,
    gens: &[TruncatedSeries],
    steps: usize,
) -> Result<ReductionResult<TruncatedSeries>> {
    if gens.is_empty() {
        return Err(Error::InvalidConfig("empty generator set".into()));
    }
    let cfg = f.config();
    let mut info = Vec::with_capacity(gens.len());
    for g in gens {
        if g.config() != cfg {
            return Err(Error::IncompatibleRings(format!("{} vs {}", g.config(), cfg)));
        }
        let (o, c) = g.order_leading()?;
        info.push((o, c));
    }
    let allows_negative = cfg.shape().allows_negative();
    let mut rem = f.clone();
    let mut record = Vec::new();
    let mut irreducible = false;
    for _ in 0..steps {
        if rem.is_zero() {
            break;
        }
        let (o, lead) = rem.order_leading()?;
        let mut matched = None;
        for (idx, (g, (og, c))) in gens.iter().zip(&info).enumerate() {
            let k = o - og;
            if k < 0 && !allows_negative {
                continue;
            }
            let Some(h) = right_cofactor(c, &lead, o, k, cfg)? else {
                continue;
            };
            let next = rem.sub(&g.mul_poly(&h)?)?;
            if next.is_zero() || next.order_leading()?.0 > o {
                matched = Some((idx, h, next));
                break;
            }
        }
        let Some((generator, cofactor, next)) = matched else {
            irreducible = true;
            break;
        };
        record.push(ReductionStep {
            generator,
            side: CofactorSide::Right,
            cofactor,
        });
        rem = next;
    }
    Ok(ReductionResult {
        generators: gens.to_vec(),
        steps: record,
        remainder: rem,
        irreducible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{make_twist, TwistDescriptor};
    use crate::poly::Shape;
    use crate::rational::Rational;
    use crate::rings::{gaussian_rationals, matrix_algebra, octonions, rationals, Ring};
    use crate::text::{parse_expr, parse_poly, Expr};

    fn q_twist(shape: Shape) -> Arc<RingConfig> {
        let c = Ring::algebra(gaussian_rationals());
        let sigma = make_twist(&c, &TwistDescriptor::QTwist { q: Rational::from_integer(2) }).unwrap();
        RingConfig::new(c, sigma, None, "X", shape).unwrap()
    }

    #[test]
    fn monic_octonion_example() {
        let o = Ring::algebra(octonions());
        let cfg = RingConfig::untwisted(o, "X", Shape::Ore).unwrap();
        let p = parse_poly("X^2 + e1X", &cfg).unwrap();
        let f = parse_poly("e1X^3", &cfg).unwrap();
        let r = monic_left_reduce(&f, &p).unwrap();
        assert_eq!(r.remainder, parse_poly("-e1X", &cfg).unwrap());
        let cof: Vec<String> = r.steps.iter().map(|s| s.cofactor.to_string()).collect();
        assert_eq!(cof, ["[0,1,0,0,0,0,0,0]X", "1"]);
        assert_eq!(r.replay().unwrap(), f);

        assert!(monic_left_reduce(&p, &p).unwrap().remainder.is_zero());
        let small = parse_poly("e2", &cfg).unwrap();
        let r = monic_left_reduce(&small, &p).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.remainder, small);
    }

    #[test]
    fn monic_normalizes_generator() {
        let cfg = q_twist(Shape::Ore);
        let p = parse_poly("iX + 1", &cfg).unwrap();
        let f = parse_poly("X^3 + 2", &cfg).unwrap();
        let r = monic_left_reduce(&f, &p).unwrap();
        assert!(r.generators[0].leading().unwrap().is_one());
        assert_eq!(r.remainder.degree().unwrap(), 0);
        assert_eq!(r.replay().unwrap(), f);
    }

    #[test]
    fn monic_needs_division_ring() {
        let m2 = matrix_algebra(rationals(), 2).unwrap();
        let cfg = RingConfig::untwisted(m2, "X", Shape::Ore).unwrap();
        let p = SkewPoly::x_pow(&cfg, 1);
        assert_eq!(monic_left_reduce(&p, &p).unwrap_err(), Error::RequiresDivisionRing);
    }

    #[test]
    fn right_reduce_q_twist() {
        let cfg = q_twist(Shape::Ore);
        let g = parse_poly("X - i", &cfg).unwrap();
        let f = parse_poly("X^2", &cfg).unwrap();
        let r = right_reduce(&f, &[g.clone()]).unwrap();
        let cof: Vec<String> = r.steps.iter().map(|s| s.cofactor.to_string()).collect();
        assert_eq!(cof, ["X", "[0,1/2]"]);
        assert_eq!(r.remainder, parse_poly("-1/2", &cfg).unwrap());
        assert!(!r.irreducible);
        assert_eq!(r.replay().unwrap(), f);

        let r = right_reduce(&g, &[g.clone()]).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert!(r.remainder.is_zero());
    }

    #[test]
    fn right_reduce_flags_irreducible() {
        let m2 = matrix_algebra(rationals(), 2).unwrap();
        let cfg = RingConfig::untwisted(m2.clone(), "X", Shape::Ore).unwrap();
        let e11 = m2.basis_element(0);
        let e22 = m2.basis_element(3);
        let g = SkewPoly::monomial(&cfg, e11, 1);
        let f = SkewPoly::monomial(&cfg, e22, 2);
        let r = right_reduce(&f, &[g]).unwrap();
        assert!(r.irreducible);
        assert!(r.steps.is_empty());
        assert_eq!(r.remainder, f);
    }

    #[test]
    fn geometric_series_reduction() {
        let cfg = RingConfig::untwisted(Ring::algebra(rationals()), "X", Shape::PowerSeries).unwrap();
        let series = |s: &str| match parse_expr(s, &cfg).unwrap() {
            Expr::Series(s) => s,
            Expr::Poly(_) => unreachable!(),
        };
        let g = series("1 - X + O(X^6)");
        let f = series("1 + O(X^6)");
        let r = right_reduce_series(&f, &[g], 6).unwrap();
        assert_eq!(r.steps.len(), 6);
        for (k, step) in r.steps.iter().enumerate() {
            assert_eq!(step.cofactor, SkewPoly::x_pow(&cfg, k as i64));
        }
        assert!(r.remainder.is_zero());
        assert_eq!(r.remainder.precision(), 5);
        assert_eq!(r.replay().unwrap(), f);
        let json = r.to_json();
        assert_eq!(json["quotient_record"][2]["cofactor"], "X^2");
        assert_eq!(json["quotient_record"][2]["side"], "right");
    }

    #[test]
    fn twisted_series_reduction_raises_order() {
        let cfg = q_twist(Shape::PowerSeries);
        let series = |s: &str| match parse_expr(s, &cfg).unwrap() {
            Expr::Series(s) => s,
            Expr::Poly(_) => unreachable!(),
        };
        let g = series("iX + X^2 + O(X^8)");
        let f = series("X + 3X^3 + O(X^8)");
        let r = right_reduce_series(&f, &[g], 4).unwrap();
        let mut last = 0;
        for k in 0..r.steps.len() {
            let partial = ReductionResult {
                generators: r.generators.clone(),
                steps: r.steps[..k].to_vec(),
                remainder: TruncatedSeries::zero(&cfg, 7).unwrap(),
                irreducible: false,
            };
            let rem = f.sub(&partial.replay().unwrap()).unwrap();
            let o = rem.order_leading().unwrap().0;
            assert!(o > last || k == 0);
            last = o;
        }
        assert_eq!(r.replay().unwrap(), f);
    }
}
