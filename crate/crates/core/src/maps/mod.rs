//! Twist maps `σ` and `δ` on coefficient rings.

mod pi;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use pi::{pi_words, PiFamily};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::SkewPoly;
use crate::rational::Rational;
use crate::rings::{associator, commutator, invert, Ring, RingElement};

/// Exponent bound used when a polynomial coefficient ring has to be
/// enumerated (inverse verification, classification).
pub const POLY_CHECK_DEGREE: u32 = 2;

/// A ℚ-linear map on a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearMap {
    /// Matrix on the flat coordinates of a finite ring.
    Matrix(QMatrix),
    /// On a polynomial ring: `c Y^k ↦ coeff(c) · scale^k · Y^k`.
    Graded {
        coeff: Box<LinearMap>,
        scale: Rational,
    },
    /// On a polynomial ring: `c Y^k ↦ k c Y^(k−1)`.
    Derivative,
}

impl LinearMap {
    pub fn apply(&self, x: &RingElement) -> Result<RingElement> {
        match (self, x) {
            (LinearMap::Matrix(m), RingElement::Coords { ring, coords }) => {
                if m.cols() != coords.len() {
                    return Err(Error::IncompatibleRings(format!(
                        "map of size {} applied in {ring}",
                        m.cols()
                    )));
                }
                Ok(RingElement::Coords {
                    ring: ring.clone(),
                    coords: m.apply(coords),
                })
            }
            (LinearMap::Graded { coeff, scale }, RingElement::Poly(p)) => {
                let mut terms = BTreeMap::new();
                for (&k, c) in p.terms() {
                    let factor = scale.pow(k).ok_or(Error::NotInvertible)?;
                    terms.insert(k, coeff.apply(c)?.scale(&factor));
                }
                Ok(RingElement::Poly(SkewPoly::from_terms(p.config(), terms)))
            }
            (LinearMap::Derivative, RingElement::Poly(p)) => {
                let mut terms = BTreeMap::new();
                for (&k, c) in p.terms() {
                    if k != 0 {
                        terms.insert(k - 1, c.scale(&Rational::from_integer(k)));
                    }
                }
                Ok(RingElement::Poly(SkewPoly::from_terms(p.config(), terms)))
            }
            _ => Err(Error::IncompatibleRings(format!(
                "map shape does not fit {}",
                x.ring()
            ))),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            LinearMap::Matrix(m) => m.is_identity(),
            LinearMap::Graded { coeff, scale } => scale.is_one() && coeff.is_identity(),
            LinearMap::Derivative => false,
        }
    }

    /// `self^n(x)`; graded maps scale each term once by `scale^(n k)`.
    pub fn apply_n(&self, n: u64, x: &RingElement) -> Result<RingElement> {
        if n == 0 || self.is_identity() || x.is_zero() {
            return Ok(x.clone());
        }
        match (self, x) {
            (LinearMap::Graded { coeff, scale }, RingElement::Poly(p)) => {
                let mut terms = BTreeMap::new();
                for (&k, c) in p.terms() {
                    let factor = scale.pow(k * n as i64).ok_or(Error::NotInvertible)?;
                    terms.insert(k, coeff.apply_n(n, c)?.scale(&factor));
                }
                Ok(RingElement::Poly(SkewPoly::from_terms(p.config(), terms)))
            }
            _ => {
                let mut y = self.apply(x)?;
                for _ in 1..n {
                    if y.is_zero() {
                        break;
                    }
                    y = self.apply(&y)?;
                }
                Ok(y)
            }
        }
    }

    /// `self ∘ other` when both have a closed form.
    pub fn compose(&self, other: &LinearMap) -> Option<LinearMap> {
        match (self, other) {
            (LinearMap::Matrix(a), LinearMap::Matrix(b)) => Some(LinearMap::Matrix(a.compose(b))),
            (
                LinearMap::Graded { coeff: a, scale: s },
                LinearMap::Graded { coeff: b, scale: t },
            ) => Some(LinearMap::Graded {
                coeff: Box::new(a.compose(b)?),
                scale: s * t,
            }),
            _ => None,
        }
    }

    /// Closed-form inverse, if the map is visibly invertible.
    pub fn inverse(&self) -> Option<LinearMap> {
        match self {
            LinearMap::Matrix(m) => m.inverse().map(LinearMap::Matrix),
            LinearMap::Graded { coeff, scale } => Some(LinearMap::Graded {
                coeff: Box::new(coeff.inverse()?),
                scale: scale.recip()?,
            }),
            LinearMap::Derivative => None,
        }
    }

    pub fn identity(ring: &Ring) -> LinearMap {
        match ring {
            Ring::Poly(c) => LinearMap::Graded {
                coeff: Box::new(LinearMap::identity(c.coefficients())),
                scale: Rational::one(),
            },
            _ => LinearMap::Matrix(QMatrix::identity(ring.dimension().unwrap())),
        }
    }

    pub fn zero(ring: &Ring) -> LinearMap {
        match ring {
            Ring::Poly(c) => LinearMap::Graded {
                coeff: Box::new(LinearMap::zero(c.coefficients())),
                scale: Rational::one(),
            },
            _ => {
                let d = ring.dimension().unwrap();
                LinearMap::Matrix(QMatrix::zero(d, d))
            }
        }
    }

    /// Matrix of an arbitrary function on a finite ring, read off the basis.
    pub fn from_basis_images(
        ring: &Ring,
        f: impl Fn(&RingElement) -> Result<RingElement>,
    ) -> Result<LinearMap> {
        let d = ring
            .dimension()
            .ok_or_else(|| Error::Unsupported(format!("{ring} is not finite-dimensional")))?;
        let images = (0..d)
            .map(|p| Ok(f(&ring.basis_element(p))?.coords().unwrap().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearMap::Matrix(QMatrix::from_columns(d, &images)))
    }
}

/// Properties a map has been verified to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapTag {
    Additive,
    RespectsOne,
    KillsOne,
    Bijective,
    Automorphism,
    Antiautomorphism,
    Involution,
}

/// An additive map on a coefficient ring together with its verified
/// properties. Immutable once built.
#[derive(Clone, Debug)]
pub struct TwistMap {
    ring: Ring,
    forward: LinearMap,
    inverse: Option<LinearMap>,
    tags: BTreeSet<MapTag>,
    label: String,
}

impl PartialEq for TwistMap {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.forward == other.forward && self.inverse == other.inverse
    }
}

impl Eq for TwistMap {}

impl fmt::Display for TwistMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl TwistMap {
    /// Wraps a linear map, constructing and verifying its inverse and
    /// computing the tag set.
    pub fn new(ring: Ring, forward: LinearMap, label: impl Into<String>) -> Result<TwistMap> {
        let inverse = forward.inverse();
        let mut map = TwistMap {
            ring,
            forward,
            inverse,
            tags: BTreeSet::new(),
            label: label.into(),
        };
        if map.inverse.is_some() && !map.inverse_verified()? {
            map.inverse = None;
        }
        map.tags.insert(MapTag::Additive);
        let one = map.ring.one();
        let image = map.forward.apply(&one)?;
        if image == one {
            map.tags.insert(MapTag::RespectsOne);
        }
        if image.is_zero() {
            map.tags.insert(MapTag::KillsOne);
        }
        if map.inverse.is_some() {
            map.tags.insert(MapTag::Bijective);
        }
        if let Ok(found) = classify_multiplicativity(&map) {
            map.tags.extend(found);
        }
        Ok(map)
    }

    fn inverse_verified(&self) -> Result<bool> {
        let inv = self.inverse.as_ref().unwrap();
        for b in self.ring.spanning_set(POLY_CHECK_DEGREE) {
            if inv.apply(&self.forward.apply(&b)?)? != b || self.forward.apply(&inv.apply(&b)?)? != b
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn identity(ring: &Ring) -> TwistMap {
        TwistMap::new(ring.clone(), LinearMap::identity(ring), "id").expect("identity is valid")
    }

    pub fn zero(ring: &Ring) -> TwistMap {
        TwistMap::new(ring.clone(), LinearMap::zero(ring), "0").expect("zero map is valid")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn forward(&self) -> &LinearMap {
        &self.forward
    }

    pub fn inverse_map(&self) -> Option<&LinearMap> {
        self.inverse.as_ref()
    }

    pub fn tags(&self) -> &BTreeSet<MapTag> {
        &self.tags
    }

    pub fn has(&self, tag: MapTag) -> bool {
        self.tags.contains(&tag)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn apply(&self, r: &RingElement) -> Result<RingElement> {
        self.forward.apply(r)
    }

    /// `σ^m(r)` for any integer `m`; negative powers need the inverse.
    pub fn apply_power(&self, m: i64, r: &RingElement) -> Result<RingElement> {
        let step = if m >= 0 {
            &self.forward
        } else {
            self.inverse.as_ref().ok_or(Error::InverseUnavailable)?
        };
        step.apply_n(m.unsigned_abs(), r)
    }

    /// Whether `self ∘ other = other ∘ self` on the spanning set.
    pub fn commutes_with(&self, other: &TwistMap) -> Result<bool> {
        for b in self.ring.spanning_set(POLY_CHECK_DEGREE) {
            if self.apply(&other.apply(&b)?)? != other.apply(&self.apply(&b)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Declarative description of a twist map, as it appears in configuration
/// files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TwistDescriptor {
    /// `a + b i ↦ a + q b i`; scales every coordinate except the unit.
    QTwist { q: Rational },
    Transpose,
    DiagSwap,
    ConjTranspose,
    Conjugation,
    /// `x ↦ (u x) u⁻¹`.
    Inner { u: Vec<Rational> },
    Identity,
    /// Explicit matrix, row-major, acting on coordinates.
    Matrix { matrix: Vec<Vec<Rational>> },
    /// On `R[Y]`/`R[Y±]`: `c Y^k ↦ base(c) q^k Y^k`.
    YScale {
        q: Rational,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<Box<TwistDescriptor>>,
    },
    /// On `R[Y]`/`R[Y±]`: apply `base` to every coefficient.
    Coefficientwise { base: Box<TwistDescriptor> },
    /// `d/dY` on a polynomial coefficient ring (a `δ`).
    Derivative,
    /// The zero map (a `δ`).
    Zero,
    /// `δ_{a,b}(c) = [[a,b],c] − 3(a,b,c)` (a `δ`).
    Derivation { a: Vec<Rational>, b: Vec<Rational> },
}

fn matrix_entry_map(ring: &Ring, f: impl Fn(usize, usize) -> (usize, usize)) -> Result<LinearMap> {
    let Ring::Matrix { base, n } = ring else {
        return Err(Error::Unsupported(format!("{ring} is not a matrix ring")));
    };
    let (d, n) = (base.dim(), *n);
    let mut images = Vec::with_capacity(n * n * d);
    for i in 0..n {
        for j in 0..n {
            let (ti, tj) = f(i, j);
            for t in 0..d {
                let mut v = vec![Rational::zero(); n * n * d];
                v[(ti * n + tj) * d + t] = Rational::one();
                images.push(v);
            }
        }
    }
    Ok(LinearMap::Matrix(QMatrix::from_columns(n * n * d, &images)))
}

/// Builds the linear map described by `desc` on `ring` without checking
/// any role-specific axiom.
pub fn build_map(ring: &Ring, desc: &TwistDescriptor) -> Result<TwistMap> {
    use TwistDescriptor as D;
    let (forward, label) = match desc {
        D::QTwist { q } => {
            if q.is_zero() {
                return Err(Error::NotBijective("q_twist with q = 0".into()));
            }
            let Ring::Algebra(a) = ring else {
                return Err(Error::Unsupported("q_twist needs a structure-constant algebra".into()));
            };
            if a.unit() != a.basis_vector(0).as_slice() {
                return Err(Error::Unsupported("q_twist needs the unit as first basis vector".into()));
            }
            let mut diag = vec![q.clone(); a.dim()];
            diag[0] = Rational::one();
            (LinearMap::Matrix(QMatrix::diagonal(&diag)), format!("q_twist({q})"))
        }
        D::Transpose => (matrix_entry_map(ring, |i, j| (j, i))?, "transpose".into()),
        D::DiagSwap => {
            if !matches!(ring, Ring::Matrix { n: 2, .. }) {
                return Err(Error::Unsupported("diag_swap needs a 2x2 matrix ring".into()));
            }
            let swap = |i: usize, j: usize| if i == j { (1 - i, 1 - j) } else { (i, j) };
            (matrix_entry_map(ring, swap)?, "diag_swap".into())
        }
        D::ConjTranspose => {
            let (star, d) = match ring {
                Ring::Matrix { base, .. } => (base.involution().cloned(), base.dim()),
                _ => return Err(Error::Unsupported(format!("{ring} is not a matrix ring"))),
            };
            let star = star.ok_or(Error::NotStarAlgebra)?;
            let LinearMap::Matrix(transpose) = matrix_entry_map(ring, |i, j| (j, i))? else {
                unreachable!()
            };
            let blocks = ring.dimension().unwrap() / d;
            let entrywise = (0..blocks * d)
                .map(|col| {
                    let (block, t) = (col / d, col % d);
                    let mut v = vec![Rational::zero(); blocks * d];
                    for (s, c) in star.column(t).into_iter().enumerate() {
                        v[block * d + s] = c;
                    }
                    v
                })
                .collect::<Vec<_>>();
            let entrywise = QMatrix::from_columns(blocks * d, &entrywise);
            (LinearMap::Matrix(entrywise.compose(&transpose)), "conj_transpose".into())
        }
        D::Conjugation => {
            let Ring::Algebra(a) = ring else {
                return Err(Error::Unsupported("conjugation needs a *-algebra".into()));
            };
            let star = a.involution().ok_or(Error::NotStarAlgebra)?;
            (LinearMap::Matrix(star.clone()), "conjugation".into())
        }
        D::Inner { u } => {
            let u = ring.from_coords(u.clone())?;
            let u_inv = invert(&u).map_err(|_| Error::InnerRequiresUnit)?;
            let m = LinearMap::from_basis_images(ring, |x| u.mul(x)?.mul(&u_inv))?;
            (m, format!("inner({})", crate::text::format_coefficient(&u)))
        }
        D::Identity => (LinearMap::identity(ring), "id".into()),
        D::Matrix { matrix } => {
            let d = ring
                .dimension()
                .ok_or_else(|| Error::Unsupported("explicit matrix on infinite ring".into()))?;
            if matrix.len() != d || matrix.iter().any(|row| row.len() != d) {
                return Err(Error::InvalidConfig(format!("matrix must be {d}x{d}")));
            }
            (LinearMap::Matrix(QMatrix::from_rows(matrix)), "matrix".into())
        }
        D::YScale { q, base } => {
            let Ring::Poly(c) = ring else {
                return Err(Error::Unsupported("y_scale needs a polynomial coefficient ring".into()));
            };
            if q.is_zero() {
                return Err(Error::NotBijective("y_scale with q = 0".into()));
            }
            let coeff = match base {
                Some(b) => build_map(c.coefficients(), b)?.forward,
                None => LinearMap::identity(c.coefficients()),
            };
            (
                LinearMap::Graded {
                    coeff: Box::new(coeff),
                    scale: q.clone(),
                },
                format!("y_scale({q})"),
            )
        }
        D::Coefficientwise { base } => {
            let Ring::Poly(c) = ring else {
                return Err(Error::Unsupported(
                    "coefficientwise needs a polynomial coefficient ring".into(),
                ));
            };
            let inner = build_map(c.coefficients(), base)?;
            (
                LinearMap::Graded {
                    coeff: Box::new(inner.forward),
                    scale: Rational::one(),
                },
                format!("coefficientwise({})", inner.label),
            )
        }
        D::Derivative => {
            if !matches!(ring, Ring::Poly(_)) {
                return Err(Error::Unsupported("derivative needs a polynomial ring".into()));
            }
            (LinearMap::Derivative, "d/dY".into())
        }
        D::Zero => (LinearMap::zero(ring), "0".into()),
        D::Derivation { a, b } => {
            let a = ring.from_coords(a.clone())?;
            let b = ring.from_coords(b.clone())?;
            return standard_derivation(&a, &b);
        }
    };
    TwistMap::new(ring.clone(), forward, label)
}

/// Builds a `σ`: the map must respect one and be bijective.
pub fn make_twist(ring: &Ring, desc: &TwistDescriptor) -> Result<TwistMap> {
    let map = build_map(ring, desc)?;
    if !map.has(MapTag::RespectsOne) {
        return Err(Error::DoesNotRespectOne);
    }
    if !map.has(MapTag::Bijective) {
        return Err(Error::NotBijective(map.label.clone()));
    }
    Ok(map)
}

/// Builds a `δ`: the map must kill one.
pub fn make_delta(ring: &Ring, desc: &TwistDescriptor) -> Result<TwistMap> {
    let map = build_map(ring, desc)?;
    if !map.has(MapTag::KillsOne) {
        return Err(Error::DoesNotKillOne);
    }
    Ok(map)
}

/// `δ_{a,b}(c) = [[a,b],c] − 3(a,b,c)` on a finite ring.
pub fn standard_derivation(a: &RingElement, b: &RingElement) -> Result<TwistMap> {
    let ring = a.ring();
    let ab = commutator(a, b)?;
    let three = Rational::from_integer(3);
    let m = LinearMap::from_basis_images(&ring, |c| {
        commutator(&ab, c)?.sub(&associator(a, b, c)?.scale(&three))
    })?;
    let label = format!(
        "delta({},{})",
        crate::text::format_coefficient(a),
        crate::text::format_coefficient(b)
    );
    TwistMap::new(ring, m, label)
}

/// Whether bilinearity lets basis pairs decide multiplicativity.
fn basis_decidable(ring: &Ring) -> bool {
    match ring {
        Ring::Algebra(_) | Ring::Matrix { .. } => true,
        Ring::Poly(c) => {
            c.delta().is_none()
                && c.sigma().forward() == &LinearMap::identity(c.coefficients())
                && basis_decidable(c.coefficients())
        }
    }
}

/// Which of automorphism, antiautomorphism, involution hold, decided on
/// all basis pairs.
pub fn classify_multiplicativity(map: &TwistMap) -> Result<BTreeSet<MapTag>> {
    if !basis_decidable(&map.ring) {
        return Err(Error::CannotDecide);
    }
    let span = map.ring.spanning_set(POLY_CHECK_DEGREE);
    let images = span
        .iter()
        .map(|b| map.apply(b))
        .collect::<Result<Vec<_>>>()?;
    let mut hom = true;
    let mut anti = true;
    for (x, fx) in span.iter().zip(&images) {
        for (y, fy) in span.iter().zip(&images) {
            let f_xy = map.apply(&x.mul(y)?)?;
            if hom && f_xy != fx.mul(fy)? {
                hom = false;
            }
            if anti && f_xy != fy.mul(fx)? {
                anti = false;
            }
            if !hom && !anti {
                break;
            }
        }
    }
    let bijective = map.inverse.is_some();
    let mut out = BTreeSet::new();
    if bijective && hom {
        out.insert(MapTag::Automorphism);
    }
    if bijective && anti {
        out.insert(MapTag::Antiautomorphism);
        let square_is_id = span
            .iter()
            .zip(&images)
            .map(|(b, fb)| Ok(map.apply(fb)? == *b))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|v| v);
        if square_is_id {
            out.insert(MapTag::Involution);
        }
    }
    Ok(out)
}

/// Outcome of a finite-order search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiniteOrder {
    /// Least `m ≥ 1` with `σ^m = id`.
    Order(u32),
    /// Certified infinite: a diagonal entry is not `±1`, so no power of it
    /// returns to one over ℚ.
    Infinite,
    /// No order up to the bound and no certificate either way.
    NoneWithin(u32),
}

impl FiniteOrder {
    pub fn order(&self) -> Option<u32> {
        match self {
            FiniteOrder::Order(m) => Some(*m),
            _ => None,
        }
    }
}

pub fn detect_finite_order(map: &TwistMap, bound: u32) -> Result<FiniteOrder> {
    let LinearMap::Matrix(m) = &map.forward else {
        return Err(Error::OrderDetectionUnsupported);
    };
    let mut power = m.clone();
    for k in 1..=bound {
        if power.is_identity() {
            return Ok(FiniteOrder::Order(k));
        }
        power = m.compose(&power);
    }
    if let Some(diag) = m.as_diagonal() {
        let minus_one = Rational::from_integer(-1);
        if diag.iter().any(|e| !e.is_zero() && !e.is_one() && *e != minus_one) {
            return Ok(FiniteOrder::Infinite);
        }
    }
    Ok(FiniteOrder::NoneWithin(bound))
}

/// Which axioms a map is being checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapRole {
    Sigma,
    Delta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub role: MapRole,
    pub map: String,
    pub checks: Vec<AxiomCheck>,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn validate_twist_axioms(map: &TwistMap, role: MapRole) -> TwistReport {
    let check = |axiom: &str, passed: bool| AxiomCheck {
        axiom: axiom.into(),
        passed,
    };
    let mut checks = vec![check("additive", map.has(MapTag::Additive))];
    match role {
        MapRole::Sigma => {
            checks.push(check("sigma(1) = 1", map.has(MapTag::RespectsOne)));
            checks.push(check("bijective", map.has(MapTag::Bijective)));
        }
        MapRole::Delta => checks.push(check("delta(1) = 0", map.has(MapTag::KillsOne))),
    }
    TwistReport {
        role,
        map: map.label.clone(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{gaussian_rationals, matrix_algebra, octonions, quaternions, rationals};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn qtwist(v: i64) -> TwistMap {
        let c = Ring::algebra(gaussian_rationals());
        make_twist(&c, &TwistDescriptor::QTwist { q: q(v) }).unwrap()
    }

    #[test]
    fn q_twist_values() {
        let sigma = qtwist(2);
        let c = sigma.ring().clone();
        let x = c.from_ints(&[3, 4]).unwrap();
        assert_eq!(sigma.apply(&x).unwrap(), c.from_ints(&[3, 8]).unwrap());
        let i = c.basis_element(1);
        let expected = c
            .from_coords(vec![Rational::zero(), Rational::new(1, 4)])
            .unwrap();
        assert_eq!(sigma.apply_power(-2, &i).unwrap(), expected);
        assert_eq!(sigma.apply_power(0, &x).unwrap(), x);
    }

    #[test]
    fn q_zero_is_rejected() {
        let c = Ring::algebra(gaussian_rationals());
        assert!(matches!(
            make_twist(&c, &TwistDescriptor::QTwist { q: q(0) }),
            Err(Error::NotBijective(_))
        ));
    }

    #[test]
    fn q_twist_automorphism_iff_unit_modulus() {
        for v in [1, -1] {
            assert!(qtwist(v).has(MapTag::Automorphism));
        }
        for v in [2, 3, -2] {
            assert!(!qtwist(v).has(MapTag::Automorphism));
        }
    }

    #[test]
    fn inner_automorphism_of_quaternions() {
        let h = Ring::algebra(quaternions());
        let sigma = make_twist(
            &h,
            &TwistDescriptor::Inner {
                u: vec![q(0), q(1), q(0), q(0)],
            },
        )
        .unwrap();
        let [i, j, k] = [1, 2, 3].map(|p| h.basis_element(p));
        assert_eq!(sigma.apply(&i).unwrap(), i);
        assert_eq!(sigma.apply(&j).unwrap(), j.neg());
        assert_eq!(sigma.apply(&k).unwrap(), k.neg());
        assert!(sigma.has(MapTag::Automorphism));
    }

    #[test]
    fn inner_needs_unit() {
        let m = matrix_algebra(rationals(), 2).unwrap();
        let err = make_twist(
            &m,
            &TwistDescriptor::Inner {
                u: vec![q(1), q(0), q(0), q(0)],
            },
        );
        assert_eq!(err.unwrap_err(), Error::InnerRequiresUnit);
    }

    #[test]
    fn diag_swap_not_automorphism() {
        let m = matrix_algebra(rationals(), 2).unwrap();
        let sigma = make_twist(&m, &TwistDescriptor::DiagSwap).unwrap();
        let e12 = m.from_ints(&[0, 1, 0, 0]).unwrap();
        let e21 = m.from_ints(&[0, 0, 1, 0]).unwrap();
        let lhs = sigma.apply(&e12).unwrap().mul(&sigma.apply(&e21).unwrap()).unwrap();
        let rhs = sigma.apply(&e12.mul(&e21).unwrap()).unwrap();
        assert_eq!(lhs, m.from_ints(&[1, 0, 0, 0]).unwrap());
        assert_eq!(rhs, m.from_ints(&[0, 0, 0, 1]).unwrap());
        let tags = classify_multiplicativity(&sigma).unwrap();
        assert!(!tags.contains(&MapTag::Automorphism));
        assert!(tags.contains(&MapTag::Antiautomorphism));
        assert_eq!(sigma.apply_power(2, &e12).unwrap(), e12);
    }

    #[test]
    fn transpose_is_antiautomorphism() {
        let m = matrix_algebra(rationals(), 3).unwrap();
        let t = make_twist(&m, &TwistDescriptor::Transpose).unwrap();
        assert!(t.has(MapTag::Involution));
        assert!(!t.has(MapTag::Automorphism));
    }

    #[test]
    fn octonion_conjugation_is_involution() {
        let o = Ring::algebra(octonions());
        let star = make_twist(&o, &TwistDescriptor::Conjugation).unwrap();
        let tags = classify_multiplicativity(&star).unwrap();
        assert!(tags.contains(&MapTag::Involution));
        assert!(tags.contains(&MapTag::Antiautomorphism));
        assert!(!tags.contains(&MapTag::Automorphism));
    }

    #[test]
    fn finite_orders() {
        let c = Ring::algebra(gaussian_rationals());
        let star = make_twist(&c, &TwistDescriptor::Conjugation).unwrap();
        assert_eq!(detect_finite_order(&star, 10).unwrap(), FiniteOrder::Order(2));
        assert_eq!(detect_finite_order(&qtwist(2), 10).unwrap(), FiniteOrder::Infinite);
        assert_eq!(
            detect_finite_order(&TwistMap::identity(&c), 10).unwrap(),
            FiniteOrder::Order(1)
        );
    }

    #[test]
    fn axiom_reports() {
        assert!(validate_twist_axioms(&qtwist(3), MapRole::Sigma).passed());
        assert!(!validate_twist_axioms(&qtwist(2), MapRole::Delta).passed());
        let c = Ring::algebra(gaussian_rationals());
        assert!(validate_twist_axioms(&TwistMap::zero(&c), MapRole::Delta).passed());
    }

    #[test]
    fn derivation_on_octonions() {
        let o = Ring::algebra(octonions());
        let (e1, e2) = (o.basis_element(1), o.basis_element(2));
        let d = standard_derivation(&e1, &e2).unwrap();
        assert!(d.has(MapTag::KillsOne));
        let dd = standard_derivation(&e1, &e1).unwrap();
        for p in 0..8 {
            assert!(dd.apply(&o.basis_element(p)).unwrap().is_zero());
        }
        for p in 0..8 {
            for r in 0..8 {
                let (x, y) = (o.basis_element(p), o.basis_element(r));
                let lhs = d.apply(&x.mul(&y).unwrap()).unwrap();
                let rhs = d
                    .apply(&x)
                    .unwrap()
                    .mul(&y)
                    .unwrap()
                    .add(&x.mul(&d.apply(&y).unwrap()).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn negative_power_needs_inverse() {
        let m = matrix_algebra(rationals(), 2).unwrap();
        let proj = build_map(
            &m,
            &TwistDescriptor::Matrix {
                matrix: vec![
                    vec![q(1), q(0), q(0), q(0)],
                    vec![q(0), q(0), q(0), q(0)],
                    vec![q(0), q(0), q(0), q(0)],
                    vec![q(0), q(0), q(0), q(1)],
                ],
            },
        )
        .unwrap();
        assert_eq!(
            proj.apply_power(-1, &m.one()).unwrap_err(),
            Error::InverseUnavailable
        );
        assert!(matches!(
            make_twist(&m, &TwistDescriptor::Matrix { matrix: vec![vec![q(1); 4]; 4] }),
            Err(Error::NotBijective(_)) | Err(Error::DoesNotRespectOne)
        ));
    }
}
