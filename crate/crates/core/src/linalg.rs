//! Dense exact linear algebra over a [`FieldSpec`].

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ArityMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|s| !field.contains(s)) {
                return Err(Error::CoefficientNotInField(bad.to_string()));
            }
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(r, k), other.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot nonzero");
            for k in 0..m.cols {
                let v = f.mul(m.get(r, k), &inv);
                m.set(r, k, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for k in 0..m.cols {
                    let v = f.sub(m.get(i, k), &f.mul(&factor, m.get(r, k)));
                    m.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::ArityMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let f = self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot)?;
            for i in c + 1..m.rows {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for k in c..m.cols {
                    let v = f.sub(m.get(i, k), &f.mul(&factor, m.get(c, k)));
                    m.set(i, k, v);
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square matrix; `RankDeficient` if singular.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::ArityMismatch {
                expected: n,
                found: self.cols,
            });
        }
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::RankDeficient);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// Matrix with row `r` and column `c` deleted.
    pub fn minor(&self, r: usize, c: usize) -> Matrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for k in (0..self.cols).filter(|&k| k != c) {
                data.push(self.get(i, k).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion along
/// the first row. Entries share a ring.
pub fn poly_det(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if let Some(bad) = m.iter().find(|row| row.len() != n) {
        return Err(Error::ArityMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let Some(first) = m.first().and_then(|r| r.first()) else {
        return Err(Error::InvalidArgument("empty matrix".into()));
    };
    let (field, nvars) = (first.field(), first.nvars());
    let all: Vec<usize> = (0..n).collect();
    Ok(det_rec(m, &all, 0, field, nvars))
}

fn det_rec(m: &[Vec<Polynomial>], cols: &[usize], row: usize, field: FieldSpec, nvars: usize) -> Polynomial {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = Polynomial::zero(field, nvars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = entry * &det_rec(m, &rest, row + 1, field, nvars);
        acc = if k % 2 == 0 { &acc + &sub } else { &acc - &sub };
    }
    acc
}

/// The polynomial matrix with row `r` and column `c` removed.
pub fn poly_minor(m: &[Vec<Polynomial>], r: usize, c: usize) -> Vec<Vec<Polynomial>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(k, _)| *k != c)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}
