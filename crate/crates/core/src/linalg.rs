//! Small exact linear algebra over the rationals.

use crate::rational::Rational;

/// A ℚ-matrix stored column-sparse: column `j` lists the nonzero entries of
/// the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix {
            rows: n,
            columns: (0..n).map(|j| vec![(j, Rational::one())]).collect(),
        }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Rational]) -> Self {
        QMatrix {
            rows: entries.len(),
            columns: entries
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    if e.is_zero() {
                        Vec::new()
                    } else {
                        vec![(j, e.clone())]
                    }
                })
                .collect(),
        }
    }

    /// Builds the matrix whose `j`-th column is `images[j]`.
    pub fn from_columns(rows: usize, images: &[Vec<Rational>]) -> Self {
        let columns = images
            .iter()
            .map(|col| {
                debug_assert_eq!(col.len(), rows);
                col.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, v.clone()))
                    .collect()
            })
            .collect();
        QMatrix { rows, columns }
    }

    /// Builds from row-major dense data, `y = M x`.
    pub fn from_rows(data: &[Vec<Rational>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let images: Vec<Vec<Rational>> = (0..cols)
            .map(|j| (0..rows).map(|i| data[i][j].clone()).collect())
            .collect();
        QMatrix::from_columns(rows, &images)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (i, v) in &self.columns[j] {
            out[*i] = v.clone();
        }
        out
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols(), "dimension mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for (xj, col) in x.iter().zip(&self.columns) {
            if xj.is_zero() {
                continue;
            }
            for (i, v) in col {
                out[*i] += &(xj * v);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &QMatrix) -> QMatrix {
        let images: Vec<Vec<Rational>> = (0..other.cols())
            .map(|j| self.apply(&other.column(j)))
            .collect();
        QMatrix::from_columns(self.rows, &images)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols()
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(j, col)| col.len() == 1 && col[0].0 == j && col[0].1.is_one())
    }

    /// Returns the diagonal if the matrix is diagonal.
    pub fn as_diagonal(&self) -> Option<Vec<Rational>> {
        if self.rows != self.cols() {
            return None;
        }
        let mut d = vec![Rational::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                if *i != j {
                    return None;
                }
                d[j] = v.clone();
            }
        }
        Some(d)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.rows;
        if n != self.cols() {
            return None;
        }
        let dense = self.to_rows();
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            images.push(solve_unique(&dense, &e)?);
        }
        Some(QMatrix::from_columns(n, &images))
    }
}

/// Reduced row echelon form of the augmented system `[a | b]`.
/// Returns a particular solution (free variables set to zero) or `None`
/// when the system is inconsistent, together with the rank.
fn eliminate(a: &[Vec<Rational>], b: &[Rational]) -> Option<(Vec<Rational>, usize)> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for k in c..=n {
                    let delta = &factor * &rows[r][k];
                    rows[i][k] -= &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Some((x, pivots.len()))
}

/// Any solution of `a x = b`, `None` if inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    eliminate(a, b).map(|(x, _)| x)
}

/// The solution of `a x = b` when it exists and is unique.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    match eliminate(a, b) {
        Some((x, rank)) if rank == n => Some(x),
        _ => None,
    }
}
