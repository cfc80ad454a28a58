//! Twisted polynomial and Laurent polynomial rings over a coefficient ring.

mod dstructure;
mod iterated;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use dstructure::{
    validate_d_structure, DReport, DStructure, FnFamily, LaurentFamily, Monoid, OreFamily,
};
pub use iterated::{ground_ring, iterated_extend, quantum_torus, IteratedSpec};

use crate::error::{Error, Result};
use crate::maps::{MapTag, PiFamily, TwistMap};
use crate::rational::Rational;
use crate::rings::{Ring, RingElement};

/// Which exponents are allowed and which multiplication rule applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `R[X; σ, δ]`, exponents in ℕ.
    Ore,
    /// `R[X±; σ]`, exponents in ℤ.
    Laurent,
    /// `R[[X; σ]]`.
    PowerSeries,
    /// `R((X; σ))`.
    LaurentSeries,
}

impl Shape {
    pub fn allows_negative(self) -> bool {
        matches!(self, Shape::Laurent | Shape::LaurentSeries)
    }

    pub fn is_series(self) -> bool {
        matches!(self, Shape::PowerSeries | Shape::LaurentSeries)
    }

    /// Exponents `e` with `|e| ≤ bound` that the shape admits.
    pub fn exponent_range(self, bound: u32) -> RangeInclusive<i64> {
        let b = i64::from(bound);
        if self.allows_negative() {
            -b..=b
        } else {
            0..=b
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::Ore => "ore",
            Shape::Laurent => "laurent",
            Shape::PowerSeries => "power_series",
            Shape::LaurentSeries => "laurent_series",
        }
    }
}

/// Everything needed to multiply: coefficients, twists, variable, shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingConfig {
    coefficients: Ring,
    pi: PiFamily,
    variable: String,
    shape: Shape,
}

impl RingConfig {
    pub fn new(
        coefficients: Ring,
        sigma: TwistMap,
        delta: Option<TwistMap>,
        variable: impl Into<String>,
        shape: Shape,
    ) -> Result<Arc<RingConfig>> {
        if sigma.ring() != &coefficients {
            return Err(Error::IncompatibleRings(format!(
                "twist on {} for coefficients {coefficients}",
                sigma.ring()
            )));
        }
        if delta.is_some() && shape != Shape::Ore {
            return Err(Error::InvalidConfig(format!(
                "delta is only allowed in the ore shape, not {}",
                shape.name()
            )));
        }
        let variable = variable.into();
        if variable.is_empty() || !variable.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::InvalidConfig(format!("bad variable name {variable:?}")));
        }
        Ok(Arc::new(RingConfig {
            coefficients,
            pi: PiFamily::new(sigma, delta)?,
            variable,
            shape,
        }))
    }

    /// `R[X; id]` or `R[X±; id]`.
    pub fn untwisted(coefficients: Ring, variable: &str, shape: Shape) -> Result<Arc<RingConfig>> {
        let sigma = TwistMap::identity(&coefficients);
        RingConfig::new(coefficients, sigma, None, variable, shape)
    }

    /// Same coefficients and twists, different shape.
    pub fn with_shape(&self, shape: Shape) -> Result<Arc<RingConfig>> {
        RingConfig::new(
            self.coefficients.clone(),
            self.sigma().clone(),
            self.delta().cloned(),
            self.variable.clone(),
            shape,
        )
    }

    pub fn coefficients(&self) -> &Ring {
        &self.coefficients
    }

    pub fn sigma(&self) -> &TwistMap {
        self.pi.sigma()
    }

    pub fn delta(&self) -> Option<&TwistMap> {
        self.pi.delta()
    }

    pub fn pi(&self) -> &PiFamily {
        &self.pi
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// `σ` is an automorphism of the coefficient ring.
    pub fn sigma_is_automorphism(&self) -> bool {
        self.sigma().has(MapTag::Automorphism)
    }
}

impl fmt::Display for RingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, r) = (&self.variable, &self.coefficients);
        let twist = match self.delta() {
            Some(d) => format!("{}, {}", self.sigma(), d),
            None => self.sigma().to_string(),
        };
        match self.shape {
            Shape::Ore => write!(f, "{r}[{x}; {twist}]"),
            Shape::Laurent => write!(f, "{r}[{x}±; {twist}]"),
            Shape::PowerSeries => write!(f, "{r}[[{x}; {twist}]]"),
            Shape::LaurentSeries => write!(f, "{r}(({x}; {twist}))"),
        }
    }
}

/// A polynomial `Σ r_i X^i` in canonical form: no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPoly {
    config: Arc<RingConfig>,
    terms: BTreeMap<i64, RingElement>,
}

impl SkewPoly {
    pub fn zero(config: &Arc<RingConfig>) -> SkewPoly {
        SkewPoly {
            config: config.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(config: &Arc<RingConfig>) -> SkewPoly {
        SkewPoly::constant(config, config.coefficients.one())
    }

    pub fn constant(config: &Arc<RingConfig>, c: RingElement) -> SkewPoly {
        SkewPoly::monomial(config, c, 0)
    }

    /// `c X^e`.
    pub fn monomial(config: &Arc<RingConfig>, c: RingElement, e: i64) -> SkewPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        SkewPoly {
            config: config.clone(),
            terms,
        }
    }

    /// `X^e`.
    pub fn x_pow(config: &Arc<RingConfig>, e: i64) -> SkewPoly {
        SkewPoly::monomial(config, config.coefficients.one(), e)
    }

    pub fn from_terms(config: &Arc<RingConfig>, terms: BTreeMap<i64, RingElement>) -> SkewPoly {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SkewPoly {
            config: config.clone(),
            terms,
        }
    }

    /// Checked construction: coefficient rings and exponent signs must fit.
    pub fn try_from_terms(
        config: &Arc<RingConfig>,
        terms: BTreeMap<i64, RingElement>,
    ) -> Result<SkewPoly> {
        for (&e, c) in &terms {
            if e < 0 && !config.shape.allows_negative() {
                return Err(Error::InvalidConfig(format!(
                    "negative exponent {e} in {} shape",
                    config.shape.name()
                )));
            }
            if c.ring() != config.coefficients {
                return Err(Error::IncompatibleRings(format!(
                    "coefficient in {} for {config}",
                    c.ring()
                )));
            }
        }
        Ok(SkewPoly::from_terms(config, terms))
    }

    pub fn config(&self) -> &Arc<RingConfig> {
        &self.config
    }

    pub fn terms(&self) -> &BTreeMap<i64, RingElement> {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> Option<&RingElement> {
        self.terms.get(&e)
    }

    /// Coefficient at `e`, zero if absent.
    pub fn coeff_or_zero(&self, e: i64) -> RingElement {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(|| self.config.coefficients.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Result<i64> {
        self.terms
            .keys()
            .next_back()
            .copied()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn order(&self) -> Result<i64> {
        self.terms.keys().next().copied().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading(&self) -> Result<&RingElement> {
        self.terms
            .values()
            .next_back()
            .ok_or(Error::ZeroPolynomial)
    }

    /// `(degree, order, leading coefficient)`.
    pub fn degree_order_leading(&self) -> Result<(i64, i64, RingElement)> {
        Ok((self.degree()?, self.order()?, self.leading()?.clone()))
    }

    fn check_config(&self, other: &SkewPoly) -> Result<()> {
        if Arc::ptr_eq(&self.config, &other.config) || self.config == other.config {
            Ok(())
        } else {
            Err(Error::IncompatibleRings(format!(
                "{} vs {}",
                self.config, other.config
            )))
        }
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_config(other)?;
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            add_term(&mut terms, e, c.clone())?;
        }
        Ok(SkewPoly {
            config: self.config.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SkewPoly {
        SkewPoly {
            config: self.config.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, c.neg())).collect(),
        }
    }

    pub fn scale(&self, lambda: &Rational) -> SkewPoly {
        if lambda.is_zero() {
            return SkewPoly::zero(&self.config);
        }
        SkewPoly {
            config: self.config.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, c.scale(lambda))).collect(),
        }
    }

    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        poly_mul(self, other)
    }

    /// Terms with exponent at most `n`.
    pub fn truncate(&self, n: i64) -> SkewPoly {
        SkewPoly {
            config: self.config.clone(),
            terms: self.terms.range(..=n).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    /// Coefficients `c_i` with `self = Σ X^i c_i`.
    pub fn to_right_form(&self) -> Result<BTreeMap<i64, RingElement>> {
        to_right_form(self)
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_poly(self))
    }
}

/// Adds `c` into `terms[e]`, dropping the entry if it cancels.
pub(crate) fn add_term(
    terms: &mut BTreeMap<i64, RingElement>,
    e: i64,
    c: RingElement,
) -> Result<()> {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return Ok(());
    }
    match terms.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().add(&c)?;
            if sum.is_zero() {
                o.remove();
            } else {
                o.insert(sum);
            }
        }
    }
    Ok(())
}

/// `σ^m(s)` for every `m` in the sorted list `exps`, reusing intermediate
/// powers.
pub(crate) fn sigma_powers(
    sigma: &TwistMap,
    s: &RingElement,
    exps: &[i64],
) -> Result<Vec<RingElement>> {
    let mut out = vec![s.clone(); exps.len()];
    let split = exps.partition_point(|&m| m < 0);
    let (mut cur, mut at) = (s.clone(), 0i64);
    for (slot, &m) in out[split..].iter_mut().zip(&exps[split..]) {
        cur = sigma.apply_power(m - at, &cur)?;
        at = m;
        *slot = cur.clone();
    }
    let (mut cur, mut at) = (s.clone(), 0i64);
    for idx in (0..split).rev() {
        let m = exps[idx];
        cur = sigma.apply_power(m - at, &cur)?;
        at = m;
        out[idx] = cur.clone();
    }
    Ok(out)
}

/// The twisted product. Ore shapes with a `δ` expand
/// `(r X^m)(s X^n) = Σ_i (r π_i^m(s)) X^(i+n)`; every other shape uses
/// `(r X^m)(s X^n) = (r σ^m(s)) X^(m+n)`.
pub fn poly_mul(p: &SkewPoly, q: &SkewPoly) -> Result<SkewPoly> {
    p.check_config(q)?;
    let cfg = &p.config;
    let mut acc = BTreeMap::new();
    if p.is_zero() || q.is_zero() {
        return Ok(SkewPoly::zero(cfg));
    }
    let exps: Vec<i64> = p.terms.keys().copied().collect();
    for (&n, s) in &q.terms {
        match cfg.delta() {
            Some(delta) => {
                let top = *exps.last().unwrap();
                let mut row = vec![s.clone()];
                for m in 0..=top {
                    if m > 0 {
                        row = cfg.pi.next_row(delta, &row)?;
                    }
                    let Some(r) = p.terms.get(&m) else { continue };
                    for (i, v) in row.iter().enumerate() {
                        if !v.is_zero() {
                            add_term(&mut acc, i as i64 + n, r.mul(v)?)?;
                        }
                    }
                }
            }
            None => {
                let powers = sigma_powers(cfg.sigma(), s, &exps)?;
                for ((&m, r), sm) in p.terms.iter().zip(powers) {
                    add_term(&mut acc, m + n, r.mul(&sm)?)?;
                }
            }
        }
    }
    Ok(SkewPoly {
        config: cfg.clone(),
        terms: acc,
    })
}

/// Coefficients `c_i` with `p = Σ X^i c_i`.
///
/// Without `δ` these are `c_i = σ^(−i)(r_i)`. With `δ` the top term is
/// peeled off as `X^m σ^(−m)(r_m)` and the remainder, of lower degree,
/// is handled the same way.
pub fn to_right_form(p: &SkewPoly) -> Result<BTreeMap<i64, RingElement>> {
    let cfg = &p.config;
    let sigma = cfg.sigma();
    let mut out = BTreeMap::new();
    if cfg.delta().is_none() {
        for (&i, r) in &p.terms {
            out.insert(i, sigma.apply_power(-i, r)?);
        }
        return Ok(out);
    }
    let mut rest = p.clone();
    while let Ok(m) = rest.degree() {
        let c = sigma.apply_power(-m, rest.leading()?)?;
        let peeled = SkewPoly::x_pow(cfg, m).mul(&SkewPoly::constant(cfg, c.clone()))?;
        rest = rest.sub(&peeled)?;
        debug_assert!(rest.degree().map_or(true, |d| d < m));
        add_term(&mut out, m, c)?;
    }
    Ok(out)
}

/// Rebuilds `Σ X^i c_i`.
pub fn from_right_form(
    config: &Arc<RingConfig>,
    form: &BTreeMap<i64, RingElement>,
) -> Result<SkewPoly> {
    let mut acc = SkewPoly::zero(config);
    for (&i, c) in form {
        let term = SkewPoly::x_pow(config, i).mul(&SkewPoly::constant(config, c.clone()))?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{make_delta, make_twist, TwistDescriptor};
    use crate::rings::{gaussian_rationals, rationals};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    pub(crate) fn weyl() -> (Arc<RingConfig>, Arc<RingConfig>) {
        let base = Ring::algebra(rationals());
        let inner = RingConfig::untwisted(base, "Y", Shape::Ore).unwrap();
        let qy = Ring::Poly(inner.clone());
        let delta = make_delta(&qy, &TwistDescriptor::Derivative).unwrap();
        let outer = RingConfig::new(qy.clone(), TwistMap::identity(&qy), Some(delta), "X", Shape::Ore)
            .unwrap();
        (inner, outer)
    }

    fn qtwist_laurent(v: i64) -> Arc<RingConfig> {
        let c = Ring::algebra(gaussian_rationals());
        let sigma = make_twist(&c, &TwistDescriptor::QTwist { q: q(v) }).unwrap();
        RingConfig::new(c, sigma, None, "X", Shape::Laurent).unwrap()
    }

    #[test]
    fn weyl_relation() {
        let (inner, outer) = weyl();
        let y = RingElement::Poly(SkewPoly::x_pow(&inner, 1));
        let big_y = SkewPoly::constant(&outer, y.clone());
        let x = SkewPoly::x_pow(&outer, 1);
        let xy = x.mul(&big_y).unwrap();
        let yx = big_y.mul(&x).unwrap();
        assert_eq!(xy.sub(&yx).unwrap(), SkewPoly::one(&outer));
        assert_eq!(yx.coeff(1), Some(&y));
    }

    #[test]
    fn laurent_product() {
        let cfg = qtwist_laurent(2);
        let i = cfg.coefficients().basis_element(1);
        let a = SkewPoly::monomial(&cfg, i.clone(), 1);
        let b = SkewPoly::monomial(&cfg, i, -1);
        let expected = SkewPoly::constant(&cfg, cfg.coefficients().scalar(q(-2)));
        assert_eq!(a.mul(&b).unwrap(), expected);
        let x3 = SkewPoly::x_pow(&cfg, 3);
        let xm5 = SkewPoly::x_pow(&cfg, -5);
        assert_eq!(x3.mul(&xm5).unwrap(), SkewPoly::x_pow(&cfg, -2));
    }

    #[test]
    fn degree_order_leading() {
        let cfg = qtwist_laurent(2);
        let c = cfg.coefficients().clone();
        let p = SkewPoly::from_terms(
            &cfg,
            BTreeMap::from([(3, c.scalar(q(2))), (1, c.basis_element(1))]),
        );
        assert_eq!(p.degree_order_leading().unwrap(), (3, 1, c.scalar(q(2))));
        let l = SkewPoly::x_pow(&cfg, -2).add(&SkewPoly::x_pow(&cfg, 5)).unwrap();
        assert_eq!(l.degree_order_leading().unwrap(), (5, -2, c.one()));
        let seven = SkewPoly::constant(&cfg, c.scalar(q(7)));
        assert_eq!(seven.degree_order_leading().unwrap(), (0, 0, c.scalar(q(7))));
        assert_eq!(SkewPoly::zero(&cfg).degree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn right_form_laurent() {
        let cfg = qtwist_laurent(2);
        let c = cfg.coefficients().clone();
        let p = SkewPoly::monomial(&cfg, c.basis_element(1), 2);
        let form = to_right_form(&p).unwrap();
        let quarter_i = c
            .from_coords(vec![Rational::zero(), Rational::new(1, 4)])
            .unwrap();
        assert_eq!(form, BTreeMap::from([(2, quarter_i)]));
        assert_eq!(from_right_form(&cfg, &form).unwrap(), p);
    }

    #[test]
    fn right_form_weyl() {
        let (inner, outer) = weyl();
        let y = RingElement::Poly(SkewPoly::x_pow(&inner, 1));
        let yx = SkewPoly::monomial(&outer, y.clone(), 1);
        let form = to_right_form(&yx).unwrap();
        let minus_one = outer.coefficients().scalar(q(-1));
        assert_eq!(form, BTreeMap::from([(0, minus_one), (1, y)]));
        assert_eq!(from_right_form(&outer, &form).unwrap(), yx);
    }

    #[test]
    fn delta_rejected_outside_ore() {
        let (_, outer) = weyl();
        assert!(outer.with_shape(Shape::Laurent).is_err());
    }

    #[test]
    fn mismatched_configs() {
        let a = qtwist_laurent(2);
        let b = qtwist_laurent(3);
        let err = SkewPoly::one(&a).mul(&SkewPoly::one(&b));
        assert!(matches!(err, Err(Error::IncompatibleRings(_))));
    }
}
