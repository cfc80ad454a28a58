//! Finite-dimensional ℚ-algebras given by structure constants.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::Rational;

/// A unital, not necessarily associative ℚ-algebra with a fixed basis.
///
/// `table[p][q]` holds the sparse coordinate vector of `basis_p · basis_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    basis: Vec<String>,
    table: Vec<Vec<Vec<(usize, Rational)>>>,
    unit: Vec<Rational>,
    involution: Option<QMatrix>,
}

/// Serialized form: `table` is the flattened `dim³` array indexed by
/// `(p * dim + q) * dim + r`, the `r`-th coordinate of `basis_p · basis_q`.
/// `involution` is row-major, `y = M x`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraJson {
    pub name: String,
    pub basis: Vec<String>,
    pub table: Vec<Rational>,
    pub unit: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<Vec<Rational>>>,
}

impl AlgebraSpec {
    /// Builds and validates an algebra from a dense table `table[p][q][r]`.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        table: Vec<Vec<Vec<Rational>>>,
        unit: Vec<Rational>,
        involution: Option<QMatrix>,
    ) -> Result<Self> {
        let name = name.into();
        let d = basis.len();
        if d == 0 {
            return Err(Error::InvalidConfig("algebra needs a nonempty basis".into()));
        }
        let shape_ok = table.len() == d
            && table
                .iter()
                .all(|row| row.len() == d && row.iter().all(|v| v.len() == d))
            && unit.len() == d;
        if !shape_ok {
            return Err(Error::InvalidConfig(format!(
                "structure constants of {name} do not match dimension {d}"
            )));
        }
        if let Some(m) = &involution {
            if m.rows() != d || m.cols() != d {
                return Err(Error::InvalidConfig("involution has wrong shape".into()));
            }
        }
        let table = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        v.into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let alg = AlgebraSpec {
            name,
            basis,
            table,
            unit,
            involution,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        for p in 0..d {
            let e = self.basis_vector(p);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidConfig(format!(
                    "unit of {} is not a two-sided identity on {}",
                    self.name, self.basis[p]
                )));
            }
        }
        if let Some(star) = &self.involution {
            for p in 0..d {
                let e = self.basis_vector(p);
                if star.apply(&star.apply(&e)) != e {
                    return Err(Error::InvalidConfig("involution is not of order two".into()));
                }
                for q in 0..d {
                    let f = self.basis_vector(q);
                    let lhs = star.apply(&self.mul(&e, &f));
                    let rhs = self.mul(&star.apply(&f), &star.apply(&e));
                    if lhs != rhs {
                        return Err(Error::InvalidConfig(format!(
                            "involution does not reverse products on ({}, {})",
                            self.basis[p], self.basis[q]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn involution(&self) -> Option<&QMatrix> {
        self.involution.as_ref()
    }

    pub fn basis_vector(&self, p: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[p] = Rational::one();
        v
    }

    /// Sparse product of two basis vectors.
    pub fn basis_product(&self, p: usize, q: usize) -> &[(usize, Rational)] {
        &self.table[p][q]
    }

    /// Product of coordinate vectors via the structure constants.
    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (p, ap) in a.iter().enumerate() {
            if ap.is_zero() {
                continue;
            }
            for (q, bq) in b.iter().enumerate() {
                if bq.is_zero() {
                    continue;
                }
                let coeff = ap * bq;
                for (r, c) in &self.table[p][q] {
                    if c.is_one() {
                        out[*r] += &coeff;
                    } else if (-c).is_one() {
                        out[*r] -= &coeff;
                    } else {
                        out[*r] += &(&coeff * c);
                    }
                }
            }
        }
        out
    }

    /// Exhaustive associator scan over basis triples.
    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// First basis triple `(p, q, r)` with nonzero associator.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for p in 0..d {
            for q in 0..d {
                let pq = self.mul(&self.basis_vector(p), &self.basis_vector(q));
                for r in 0..d {
                    let er = self.basis_vector(r);
                    let left = self.mul(&pq, &er);
                    let qr = self.mul(&self.basis_vector(q), &er);
                    let right = self.mul(&self.basis_vector(p), &qr);
                    if left != right {
                        return Some((p, q, r));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|p| (0..d).all(|q| self.table[p][q] == self.table[q][p]))
    }

    /// Dense `table[p][q][r]`.
    pub fn dense_table(&self) -> Vec<Vec<Vec<Rational>>> {
        let d = self.dim();
        (0..d)
            .map(|p| {
                (0..d)
                    .map(|q| {
                        let mut v = vec![Rational::zero(); d];
                        for (r, c) in &self.table[p][q] {
                            v[*r] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Same algebra under a new name and basis labels.
    pub fn renamed(mut self, name: impl Into<String>, labels: &[&str]) -> Self {
        assert_eq!(labels.len(), self.dim(), "label count must match dimension");
        self.name = name.into();
        self.basis = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            name: self.name.clone(),
            basis: self.basis.clone(),
            table: self.dense_table().into_iter().flatten().flatten().collect(),
            unit: self.unit.clone(),
            involution: self.involution.as_ref().map(QMatrix::to_rows),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        let d = json.basis.len();
        if json.table.len() != d * d * d {
            return Err(Error::InvalidConfig(format!(
                "table needs {} entries, found {}",
                d * d * d,
                json.table.len()
            )));
        }
        let table = (0..d)
            .map(|p| {
                (0..d)
                    .map(|q| json.table[(p * d + q) * d..(p * d + q + 1) * d].to_vec())
                    .collect()
            })
            .collect();
        let involution = match &json.involution {
            Some(rows) => {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(Error::InvalidConfig("involution has wrong shape".into()));
                }
                Some(QMatrix::from_rows(rows))
            }
            None => None,
        };
        AlgebraSpec::new(
            json.name.clone(),
            json.basis.clone(),
            table,
            json.unit.clone(),
            involution,
        )
    }
}

/// One step of the Cayley-Dickson doubling:
/// `(a,b)(c,d) = (ac − d*b, da + bc*)` with `(a,b)* = (a*, −b)`.
pub fn cayley_dickson_double(a: &AlgebraSpec) -> Result<AlgebraSpec> {
    let star = a.involution().ok_or(Error::NotStarAlgebra)?;
    let d = a.dim();
    let split = |v: &[Rational]| (v[..d].to_vec(), v[d..].to_vec());
    let sub = |x: Vec<Rational>, y: Vec<Rational>| -> Vec<Rational> {
        x.into_iter().zip(y).map(|(p, q)| p - q).collect()
    };
    let add = |x: Vec<Rational>, y: Vec<Rational>| -> Vec<Rational> {
        x.into_iter().zip(y).map(|(p, q)| p + q).collect()
    };
    let basis = |p: usize| {
        let mut v = vec![Rational::zero(); 2 * d];
        v[p] = Rational::one();
        v
    };
    let mut table = Vec::with_capacity(2 * d);
    for p in 0..2 * d {
        let (x1, x2) = split(&basis(p));
        let mut row = Vec::with_capacity(2 * d);
        for q in 0..2 * d {
            let (y1, y2) = split(&basis(q));
            let first = sub(a.mul(&x1, &y1), a.mul(&star.apply(&y2), &x2));
            let second = add(a.mul(&y2, &x1), a.mul(&x2, &star.apply(&y1)));
            let mut v = first;
            v.extend(second);
            row.push(v);
        }
        table.push(row);
    }
    let mut unit = a.unit().to_vec();
    unit.extend(vec![Rational::zero(); d]);
    let mut images = Vec::with_capacity(2 * d);
    for p in 0..2 * d {
        let (x1, x2) = split(&basis(p));
        let mut v = star.apply(&x1);
        v.extend(x2.into_iter().map(|c| -c));
        images.push(v);
    }
    let involution = QMatrix::from_columns(2 * d, &images);
    let labels = a
        .basis_labels()
        .iter()
        .map(|l| format!("({l},0)"))
        .chain(a.basis_labels().iter().map(|l| format!("(0,{l})")))
        .collect();
    AlgebraSpec::new(
        format!("CD({})", a.name()),
        labels,
        table,
        unit,
        Some(involution),
    )
}

/// The plus-algebra `A⁺` with product `{a,b} = ½(ab + ba)`.
pub fn jordan_algebra(a: &AlgebraSpec) -> Result<AlgebraSpec> {
    if !a.is_associative() {
        return Err(Error::JordanRequiresAssociative);
    }
    let d = a.dim();
    let half = Rational::new(1, 2);
    let dense = a.dense_table();
    let table = (0..d)
        .map(|p| {
            (0..d)
                .map(|q| {
                    dense[p][q]
                        .iter()
                        .zip(&dense[q][p])
                        .map(|(x, y)| &(x + y) * &half)
                        .collect()
                })
                .collect()
        })
        .collect();
    AlgebraSpec::new(
        format!("{}+", a.name()),
        a.basis_labels().to_vec(),
        table,
        a.unit().to_vec(),
        a.involution().cloned(),
    )
}

/// ℚ with the identity involution.
pub fn rationals() -> Arc<AlgebraSpec> {
    static CELL: OnceLock<Arc<AlgebraSpec>> = OnceLock::new();
    CELL.get_or_init(|| {
        Arc::new(
            AlgebraSpec::new(
                "Q",
                vec!["1".into()],
                vec![vec![vec![Rational::one()]]],
                vec![Rational::one()],
                Some(QMatrix::identity(1)),
            )
            .expect("Q is valid"),
        )
    })
    .clone()
}

/// ℚ(i), basis `1, i`.
pub fn gaussian_rationals() -> Arc<AlgebraSpec> {
    static CELL: OnceLock<Arc<AlgebraSpec>> = OnceLock::new();
    CELL.get_or_init(|| {
        Arc::new(
            cayley_dickson_double(&rationals())
                .expect("Q is a *-algebra")
                .renamed("Q(i)", &["1", "i"]),
        )
    })
    .clone()
}

/// Rational quaternions, basis `1, i, j, k`.
pub fn quaternions() -> Arc<AlgebraSpec> {
    static CELL: OnceLock<Arc<AlgebraSpec>> = OnceLock::new();
    CELL.get_or_init(|| {
        Arc::new(
            cayley_dickson_double(&gaussian_rationals())
                .expect("Q(i) is a *-algebra")
                .renamed("H", &["1", "i", "j", "k"]),
        )
    })
    .clone()
}

/// Rational octonions, basis `e0 .. e7` with `e_{4+t} = (0, e_t)`.
pub fn octonions() -> Arc<AlgebraSpec> {
    static CELL: OnceLock<Arc<AlgebraSpec>> = OnceLock::new();
    CELL.get_or_init(|| {
        Arc::new(
            cayley_dickson_double(&quaternions())
                .expect("H is a *-algebra")
                .renamed("O", &["e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7"]),
        )
    })
    .clone()
}

/// Rational sedenions, one doubling past the octonions.
pub fn sedenions() -> Arc<AlgebraSpec> {
    static CELL: OnceLock<Arc<AlgebraSpec>> = OnceLock::new();
    CELL.get_or_init(|| {
        let labels: Vec<String> = (0..16).map(|i| format!("s{i}")).collect();
        let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
        Arc::new(
            cayley_dickson_double(&octonions())
                .expect("O is a *-algebra")
                .renamed("S", &labels),
        )
    })
    .clone()
}

/// The Jordan algebra ℍ⁺.
pub fn quaternion_jordan() -> Arc<AlgebraSpec> {
    static CELL: OnceLock<Arc<AlgebraSpec>> = OnceLock::new();
    CELL.get_or_init(|| Arc::new(jordan_algebra(&quaternions()).expect("H is associative")))
        .clone()
}

/// Looks up a built-in algebra by name.
pub fn builtin(name: &str) -> Option<Arc<AlgebraSpec>> {
    match name {
        "Q" => Some(rationals()),
        "Q(i)" | "C" => Some(gaussian_rationals()),
        "H" => Some(quaternions()),
        "O" => Some(octonions()),
        "S" => Some(sedenions()),
        "H+" => Some(quaternion_jordan()),
        _ => None,
    }
}
