//! Exact coefficient rings: structure-constant algebras, matrix rings over
//! them, and twisted polynomial rings used as coefficients.

pub mod algebra;

use std::fmt;
use std::sync::Arc;

pub use algebra::{
    builtin, cayley_dickson_double, gaussian_rationals, jordan_algebra, octonions, quaternion_jordan,
    quaternions, rationals, sedenions, AlgebraJson, AlgebraSpec,
};

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::poly::{RingConfig, Shape, SkewPoly};
use crate::rational::Rational;

/// A ring descriptor. Cheap to clone.
#[derive(Clone, Debug)]
pub enum Ring {
    /// Structure-constant algebra.
    Algebra(Arc<AlgebraSpec>),
    /// `M_n(A)`; coordinates are laid out as `((i * n + j) * dim A + t)`.
    Matrix { base: Arc<AlgebraSpec>, n: usize },
    /// A twisted polynomial ring used as a coefficient ring.
    Poly(Arc<RingConfig>),
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ring::Algebra(a), Ring::Algebra(b)) => Arc::ptr_eq(a, b) || a == b,
            (Ring::Matrix { base: a, n }, Ring::Matrix { base: b, n: m }) => {
                n == m && (Arc::ptr_eq(a, b) || a == b)
            }
            (Ring::Poly(a), Ring::Poly(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Algebra(a) => write!(f, "{}", a.name()),
            Ring::Matrix { base, n } => write!(f, "M{n}({})", base.name()),
            Ring::Poly(c) => write!(f, "{c}"),
        }
    }
}

/// Builds the matrix ring `M_n(R)`.
pub fn matrix_algebra(base: Arc<AlgebraSpec>, n: usize) -> Result<Ring> {
    if n == 0 {
        return Err(Error::InvalidConfig("matrix size must be positive".into()));
    }
    Ok(Ring::Matrix { base, n })
}

impl Ring {
    pub fn algebra(spec: Arc<AlgebraSpec>) -> Ring {
        Ring::Algebra(spec)
    }

    /// ℚ-dimension for finite rings.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            Ring::Algebra(a) => Some(a.dim()),
            Ring::Matrix { base, n } => Some(n * n * base.dim()),
            Ring::Poly(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.dimension().is_some()
    }

    pub fn zero(&self) -> RingElement {
        match self {
            Ring::Poly(c) => RingElement::Poly(SkewPoly::zero(c)),
            _ => RingElement::Coords {
                ring: self.clone(),
                coords: vec![Rational::zero(); self.dimension().unwrap()],
            },
        }
    }

    pub fn one(&self) -> RingElement {
        self.scalar(Rational::one())
    }

    /// `λ · 1`.
    pub fn scalar(&self, lambda: Rational) -> RingElement {
        match self {
            Ring::Algebra(a) => RingElement::Coords {
                ring: self.clone(),
                coords: a.unit().iter().map(|c| c * &lambda).collect(),
            },
            Ring::Matrix { base, n } => {
                let d = base.dim();
                let mut coords = vec![Rational::zero(); n * n * d];
                for i in 0..*n {
                    for (t, u) in base.unit().iter().enumerate() {
                        coords[(i * n + i) * d + t] = u * &lambda;
                    }
                }
                RingElement::Coords {
                    ring: self.clone(),
                    coords,
                }
            }
            Ring::Poly(c) => {
                RingElement::Poly(SkewPoly::constant(c, c.coefficients().scalar(lambda)))
            }
        }
    }

    pub fn from_coords(&self, coords: Vec<Rational>) -> Result<RingElement> {
        match self.dimension() {
            Some(d) if d == coords.len() => Ok(RingElement::Coords {
                ring: self.clone(),
                coords,
            }),
            Some(d) => Err(Error::InvalidConfig(format!(
                "{self} expects {d} coordinates, got {}",
                coords.len()
            ))),
            None => Err(Error::Unsupported(format!(
                "{self} has no finite coordinate form"
            ))),
        }
    }

    /// Convenience for tests and examples: integer coordinates.
    pub fn from_ints(&self, coords: &[i64]) -> Result<RingElement> {
        self.from_coords(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    /// The `p`-th ℚ-basis element of a finite ring.
    pub fn basis_element(&self, p: usize) -> RingElement {
        let d = self.dimension().expect("finite ring");
        let mut coords = vec![Rational::zero(); d];
        coords[p] = Rational::one();
        RingElement::Coords {
            ring: self.clone(),
            coords,
        }
    }

    /// Labels of the ℚ-basis of a finite ring.
    pub fn basis_labels(&self) -> Vec<String> {
        match self {
            Ring::Algebra(a) => a.basis_labels().to_vec(),
            Ring::Matrix { base, n } => {
                let mut out = Vec::new();
                for i in 1..=*n {
                    for j in 1..=*n {
                        if base.dim() == 1 {
                            out.push(format!("E{i}{j}"));
                        } else {
                            for l in base.basis_labels() {
                                out.push(format!("E{i}{j}_{l}"));
                            }
                        }
                    }
                }
                out
            }
            Ring::Poly(_) => Vec::new(),
        }
    }

    /// A ℚ-spanning set, truncated to exponents `|e| ≤ bound` for
    /// polynomial coefficient rings.
    pub fn spanning_set(&self, bound: u32) -> Vec<RingElement> {
        match self {
            Ring::Poly(c) => {
                let inner = c.coefficients().spanning_set(bound);
                let mut out = Vec::new();
                for e in c.shape().exponent_range(bound) {
                    for b in &inner {
                        out.push(RingElement::Poly(SkewPoly::monomial(c, b.clone(), e)));
                    }
                }
                out
            }
            _ => (0..self.dimension().unwrap())
                .map(|p| self.basis_element(p))
                .collect(),
        }
    }

    /// Coordinate product for finite rings.
    fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        match self {
            Ring::Algebra(alg) => alg.mul(a, b),
            Ring::Matrix { base, n } => {
                let d = base.dim();
                let n = *n;
                let mut out = vec![Rational::zero(); n * n * d];
                for i in 0..n {
                    for k in 0..n {
                        let x = &a[(i * n + k) * d..(i * n + k + 1) * d];
                        if x.iter().all(Rational::is_zero) {
                            continue;
                        }
                        for j in 0..n {
                            let y = &b[(k * n + j) * d..(k * n + j + 1) * d];
                            if y.iter().all(Rational::is_zero) {
                                continue;
                            }
                            let prod = base.mul(x, y);
                            for (t, v) in prod.iter().enumerate() {
                                out[(i * n + j) * d + t] += v;
                            }
                        }
                    }
                }
                out
            }
            Ring::Poly(_) => unreachable!("polynomial rings have no coordinates"),
        }
    }

    /// Exhaustive associativity check on the spanning set.
    pub fn associativity_witness(
        &self,
        bound: u32,
    ) -> Result<Option<(RingElement, RingElement, RingElement)>> {
        if let Ring::Algebra(a) = self {
            return Ok(a
                .associativity_witness()
                .map(|(p, q, r)| (self.basis_element(p), self.basis_element(q), self.basis_element(r))));
        }
        let span = self.spanning_set(bound);
        for a in &span {
            for b in &span {
                let ab = a.mul(b)?;
                for c in &span {
                    if !ab.mul(c)?.sub(&a.mul(&b.mul(c)?)?)?.is_zero() {
                        return Ok(Some((a.clone(), b.clone(), c.clone())));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_associative(&self, bound: u32) -> Result<bool> {
        Ok(self.associativity_witness(bound)?.is_none())
    }

    pub fn is_commutative(&self, bound: u32) -> Result<bool> {
        if let Ring::Algebra(a) = self {
            return Ok(a.is_commutative());
        }
        let span = self.spanning_set(bound);
        for a in &span {
            for b in &span {
                if a.mul(b)? != b.mul(a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether every nonzero element has a two-sided inverse. Decided for
    /// structure-constant algebras whose involution gives a positive definite
    /// norm `x x* = N(x) 1` (ℚ, ℚ(i), ℍ, 𝕆, ℍ⁺); everything else reports
    /// `false`.
    pub fn is_division_ring(&self) -> bool {
        match self {
            Ring::Algebra(a) => a
                .involution()
                .is_some_and(|star| is_anisotropic_composition(a, star)),
            _ => false,
        }
    }
}

/// `e_p e_p* = λ_p 1` with `λ_p > 0` and `e_p e_q* + e_q e_p* = 0` for
/// `p ≠ q`, so `x x* = Σ λ_p x_p² · 1`. Up to dimension eight such an
/// algebra with this norm is a division algebra.
fn is_anisotropic_composition(a: &AlgebraSpec, star: &QMatrix) -> bool {
    let d = a.dim();
    if d > 8 {
        return false;
    }
    let unit = a.unit();
    for p in 0..d {
        let ep = a.basis_vector(p);
        for q in p..d {
            let eq = a.basis_vector(q);
            let prod = a.mul(&ep, &star.apply(&eq));
            if p == q {
                match scalar_multiple(&prod, unit) {
                    Some(lambda) if !lambda.is_zero() && !lambda.is_negative() => {}
                    _ => return false,
                }
            } else {
                let sym = a.mul(&eq, &star.apply(&ep));
                if prod.iter().zip(&sym).any(|(x, y)| !(x + y).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

fn scalar_multiple(v: &[Rational], unit: &[Rational]) -> Option<Rational> {
    let (idx, u) = unit.iter().enumerate().find(|(_, u)| !u.is_zero())?;
    let lambda = &v[idx] / u;
    v.iter()
        .zip(unit)
        .all(|(x, u)| *x == &lambda * u)
        .then_some(lambda)
}

/// An exact element of some ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingElement {
    Coords { ring: Ring, coords: Vec<Rational> },
    Poly(SkewPoly),
}

impl RingElement {
    pub fn ring(&self) -> Ring {
        match self {
            RingElement::Coords { ring, .. } => ring.clone(),
            RingElement::Poly(p) => Ring::Poly(p.config().clone()),
        }
    }

    pub fn coords(&self) -> Option<&[Rational]> {
        match self {
            RingElement::Coords { coords, .. } => Some(coords),
            RingElement::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&SkewPoly> {
        match self {
            RingElement::Poly(p) => Some(p),
            RingElement::Coords { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Coords { coords, .. } => coords.iter().all(Rational::is_zero),
            RingElement::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring().one()
    }

    fn check_same(&self, other: &RingElement) -> Result<()> {
        let same = match (self, other) {
            (RingElement::Coords { ring: a, .. }, RingElement::Coords { ring: b, .. }) => a == b,
            (RingElement::Poly(p), RingElement::Poly(q)) => {
                Arc::ptr_eq(p.config(), q.config()) || p.config() == q.config()
            }
            _ => false,
        };
        if same {
            Ok(())
        } else {
            Err(Error::IncompatibleRings(format!(
                "{} vs {}",
                self.ring(),
                other.ring()
            )))
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        match (self, other) {
            (RingElement::Coords { ring, coords: a }, RingElement::Coords { coords: b, .. }) => {
                Ok(RingElement::Coords {
                    ring: ring.clone(),
                    coords: a.iter().zip(b).map(|(x, y)| x + y).collect(),
                })
            }
            (RingElement::Poly(p), RingElement::Poly(q)) => Ok(RingElement::Poly(p.add(q)?)),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElement {
        match self {
            RingElement::Coords { ring, coords } => RingElement::Coords {
                ring: ring.clone(),
                coords: coords.iter().map(|c| -c).collect(),
            },
            RingElement::Poly(p) => RingElement::Poly(p.neg()),
        }
    }

    pub fn scale(&self, lambda: &Rational) -> RingElement {
        if lambda.is_one() {
            return self.clone();
        }
        match self {
            RingElement::Coords { ring, coords } => RingElement::Coords {
                ring: ring.clone(),
                coords: coords.iter().map(|c| c * lambda).collect(),
            },
            RingElement::Poly(p) => RingElement::Poly(p.scale(lambda)),
        }
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        match (self, other) {
            (RingElement::Coords { ring, coords: a }, RingElement::Coords { coords: b, .. }) => {
                Ok(RingElement::Coords {
                    ring: ring.clone(),
                    coords: ring.mul_coords(a, b),
                })
            }
            (RingElement::Poly(p), RingElement::Poly(q)) => Ok(RingElement::Poly(p.mul(q)?)),
            _ => unreachable!(),
        }
    }

    /// Scalar `λ` with `self = λ · 1`, if any.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self {
            RingElement::Coords { ring, coords } => {
                let one = ring.one();
                scalar_multiple(coords, one.coords().unwrap())
            }
            RingElement::Poly(p) => {
                if p.is_zero() {
                    return Some(Rational::zero());
                }
                if p.terms().len() == 1 {
                    if let Some(c) = p.coeff(0) {
                        return c.as_scalar();
                    }
                }
                None
            }
        }
    }

    /// Matrix of `x ↦ self · x` on a finite ring.
    fn left_mul_matrix(&self) -> Option<QMatrix> {
        let ring = self.ring();
        let d = ring.dimension()?;
        let images: Vec<Vec<Rational>> = (0..d)
            .map(|p| {
                ring.mul_coords(self.coords().unwrap(), ring.basis_element(p).coords().unwrap())
            })
            .collect();
        Some(QMatrix::from_columns(d, &images))
    }

    /// Matrix of `x ↦ x · self` on a finite ring.
    fn right_mul_matrix(&self) -> Option<QMatrix> {
        let ring = self.ring();
        let d = ring.dimension()?;
        let images: Vec<Vec<Rational>> = (0..d)
            .map(|p| {
                ring.mul_coords(ring.basis_element(p).coords().unwrap(), self.coords().unwrap())
            })
            .collect();
        Some(QMatrix::from_columns(d, &images))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_element(self))
    }
}

/// `(a b) c − a (b c)`.
pub fn associator(a: &RingElement, b: &RingElement, c: &RingElement) -> Result<RingElement> {
    a.mul(b)?.mul(c)?.sub(&a.mul(&b.mul(c)?)?)
}

/// `a b − b a`.
pub fn commutator(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Two-sided inverse.
///
/// Finite rings solve `a x = 1` and `x a = 1` simultaneously, so a returned
/// value is always a two-sided inverse. Polynomial rings invert monomials
/// `u X^m` with `u` a unit (Laurent shape) or constants (Ore shape).
pub fn invert(a: &RingElement) -> Result<RingElement> {
    if a.is_zero() {
        return Err(Error::NotInvertible);
    }
    match a {
        RingElement::Coords { ring, .. } => {
            let one = ring.one();
            let one = one.coords().unwrap();
            let left = a.left_mul_matrix().unwrap().to_rows();
            let right = a.right_mul_matrix().unwrap().to_rows();
            let system: Vec<Vec<Rational>> = left.into_iter().chain(right).collect();
            let rhs: Vec<Rational> = one.iter().chain(one.iter()).cloned().collect();
            let x = linalg::solve(&system, &rhs).ok_or(Error::NotInvertible)?;
            ring.from_coords(x)
        }
        RingElement::Poly(p) => {
            if p.terms().len() != 1 {
                return Err(Error::NotInvertible);
            }
            let (&m, u) = p.terms().iter().next().unwrap();
            let cfg = p.config();
            if m != 0 && cfg.shape() != Shape::Laurent {
                return Err(Error::NotInvertible);
            }
            let u_inv = invert(u)?;
            let v = cfg.sigma().apply_power(-m, &u_inv)?;
            let candidate = RingElement::Poly(SkewPoly::monomial(cfg, v, -m));
            let one = a.ring().one();
            if a.mul(&candidate)? == one && candidate.mul(a)? == one {
                Ok(candidate)
            } else {
                Err(Error::NotInvertible)
            }
        }
    }
}

/// Some `t` with `a t = b`.
pub fn left_divide(a: &RingElement, b: &RingElement) -> Result<Option<RingElement>> {
    a.check_same(b)?;
    match a {
        RingElement::Coords { ring, .. } => {
            let m = a.left_mul_matrix().unwrap().to_rows();
            Ok(linalg::solve(&m, b.coords().unwrap()).map(|x| ring.from_coords(x).unwrap()))
        }
        RingElement::Poly(_) => {
            let Ok(inv) = invert(a) else { return Ok(None) };
            let t = inv.mul(b)?;
            Ok((a.mul(&t)? == *b).then_some(t))
        }
    }
}

/// Some `t` with `t a = b`.
pub fn right_divide(b: &RingElement, a: &RingElement) -> Result<Option<RingElement>> {
    a.check_same(b)?;
    match a {
        RingElement::Coords { ring, .. } => {
            let m = a.right_mul_matrix().unwrap().to_rows();
            Ok(linalg::solve(&m, b.coords().unwrap()).map(|x| ring.from_coords(x).unwrap()))
        }
        RingElement::Poly(_) => {
            let Ok(inv) = invert(a) else { return Ok(None) };
            let t = b.mul(&inv)?;
            Ok((t.mul(a)? == *b).then_some(t))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn quaternion_products() {
        let h = Ring::algebra(quaternions());
        let i = h.basis_element(1);
        let j = h.basis_element(2);
        let k = h.basis_element(3);
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(commutator(&i, &j).unwrap(), k.scale(&r(2, 1)));
        assert!(commutator(&i, &i).unwrap().is_zero());
    }

    #[test]
    fn unit_law_and_mismatch() {
        let o = Ring::algebra(octonions());
        let x = o.from_ints(&[1, -2, 0, 3, 0, 0, 5, 1]).unwrap();
        assert_eq!(x.mul(&o.one()).unwrap(), x);
        assert_eq!(o.one().mul(&x).unwrap(), x);
        let c = Ring::algebra(gaussian_rationals());
        assert!(matches!(x.mul(&c.one()), Err(Error::IncompatibleRings(_))));
    }

    #[test]
    fn gaussian_inverse() {
        let c = Ring::algebra(gaussian_rationals());
        let i = c.basis_element(1);
        assert_eq!(invert(&i).unwrap(), i.neg());
        assert_eq!(invert(&c.zero()), Err(Error::NotInvertible));
    }

    #[test]
    fn octonion_inverse_matches_conjugate_over_norm() {
        let o = Ring::algebra(octonions());
        let x = o.from_ints(&[0, 1, 1, 0, 0, 0, 0, 0]).unwrap();
        let inv = invert(&x).unwrap();
        let expected = o
            .from_coords(vec![
                r(0, 1),
                r(-1, 2),
                r(-1, 2),
                r(0, 1),
                r(0, 1),
                r(0, 1),
                r(0, 1),
                r(0, 1),
            ])
            .unwrap();
        assert_eq!(inv, expected);
        assert!(x.mul(&inv).unwrap().is_one());
        assert!(inv.mul(&x).unwrap().is_one());
    }

    #[test]
    fn matrix_ring() {
        let m = matrix_algebra(rationals(), 2).unwrap();
        let e12 = m.from_ints(&[0, 1, 0, 0]).unwrap();
        let e21 = m.from_ints(&[0, 0, 1, 0]).unwrap();
        let e11 = m.from_ints(&[1, 0, 0, 0]).unwrap();
        assert_eq!(e12.mul(&e21).unwrap(), e11);
        let swap = e12.add(&e21).unwrap();
        assert_eq!(invert(&swap).unwrap(), swap);
        assert_eq!(invert(&e11), Err(Error::NotInvertible));
        assert!(m.one().mul(&e12).unwrap() == e12);
    }

    #[test]
    fn matrix_over_octonions_is_not_associative() {
        let m = matrix_algebra(octonions(), 2).unwrap();
        let corner = |t: usize| {
            let mut c = vec![Rational::zero(); 32];
            c[t] = Rational::one();
            m.from_coords(c).unwrap()
        };
        let a = associator(&corner(1), &corner(2), &corner(4)).unwrap();
        assert!(!a.is_zero());
    }

    #[test]
    fn divisions() {
        let h = Ring::algebra(quaternions());
        let i = h.basis_element(1);
        let k = h.basis_element(3);
        let t = left_divide(&i, &k).unwrap().unwrap();
        assert_eq!(i.mul(&t).unwrap(), k);
        let s = right_divide(&k, &i).unwrap().unwrap();
        assert_eq!(s.mul(&i).unwrap(), k);
    }

    #[test]
    fn division_ring_recognition() {
        assert!(Ring::algebra(octonions()).is_division_ring());
        assert!(!matrix_algebra(rationals(), 2).unwrap().is_division_ring());
        assert!(!Ring::algebra(sedenions()).is_division_ring());
    }
}
