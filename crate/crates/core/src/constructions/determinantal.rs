use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::geom::{Chart, Hypersurface};
use crate::linalg::{poly_det, poly_minor};
use crate::poly::Polynomial;
use crate::ratmap::{restricts_to, verify_birational, BirationalReport, RationalMap};

/// Coefficients `a[k][i][j]` of four bilinear forms `Σ a[k][i][j] x_i y_j`
/// on `P^3 x P^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Tensor {
    /// `entries[16k + 4i + j] = a[k][i][j]`.
    pub fn new(field: FieldSpec, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != 64 {
            return Err(Error::ArityMismatch {
                expected: 64,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|c| !field.contains(c)) {
            return Err(Error::CoefficientNotInField(bad.to_string()));
        }
        Ok(Tensor { field, entries })
    }

    pub fn from_i64(field: FieldSpec, entries: &[i64]) -> Result<Self> {
        Self::new(field, entries.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn random<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Self {
        Tensor {
            field,
            entries: (0..64).map(|_| field.random(rng)).collect(),
        }
    }

    /// `a[k][i][j] = 1` iff `i = j = k`.
    pub fn diagonal(field: FieldSpec) -> Self {
        let entries = (0..64)
            .map(|idx| {
                let (k, i, j) = (idx / 16, (idx / 4) % 4, idx % 4);
                if i == k && j == k {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect();
        Tensor { field, entries }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.entries[16 * k + 4 * i + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// `B[k][j] = Σ_i a[k][i][j] x_i`.
    pub fn b_matrix(&self) -> Vec<Vec<Polynomial>> {
        self.linear_matrix(|k, var, col| self.get(k, var, col))
    }

    /// `C[k][i] = Σ_j a[k][i][j] y_j`.
    pub fn c_matrix(&self) -> Vec<Vec<Polynomial>> {
        self.linear_matrix(|k, var, col| self.get(k, col, var))
    }

    fn linear_matrix<'a>(&'a self, coeff: impl Fn(usize, usize, usize) -> &'a Scalar) -> Vec<Vec<Polynomial>> {
        (0..4)
            .map(|k| {
                (0..4)
                    .map(|col| {
                        let c: Vec<Scalar> = (0..4).map(|var| coeff(k, var, col).clone()).collect();
                        Polynomial::linear_form(self.field, &c)
                    })
                    .collect()
            })
            .collect()
    }
}

/// The two determinantal quartics of a tensor and the Cramer maps between
/// them.
#[derive(Clone, Debug)]
pub struct DeterminantalPair {
    pub b_matrix: Vec<Vec<Polynomial>>,
    pub c_matrix: Vec<Vec<Polynomial>>,
    pub xb: Hypersurface,
    pub xc: Hypersurface,
    pub cramer: RationalMap,
    pub cramer_back: RationalMap,
    pub cramer_restricts: bool,
    pub back_restricts: bool,
    pub report: BirationalReport,
}

impl DeterminantalPair {
    pub fn certified(&self) -> bool {
        self.cramer_restricts && self.back_restricts && self.report.certified()
    }
}

/// `cramer_j = (-1)^j det B_(3j)`: the kernel of `B(x)` on `(det B = 0)`.
/// `cramer_back` is built from `C` in the same way.
pub fn determinantal_pair(a: &Tensor) -> Result<DeterminantalPair> {
    let b = a.b_matrix();
    let c = a.c_matrix();
    let xb = quartic(&b, "det B")?;
    let xc = quartic(&c, "det C")?;
    let cramer = cramer_map(&b, "B")?;
    let cramer_back = cramer_map(&c, "C")?;
    let cramer_restricts = restricts_to(&cramer, &xb, &xc)?;
    let back_restricts = restricts_to(&cramer_back, &xc, &xb)?;
    let report = verify_birational(&cramer, &cramer_back, &xb, &xc)?;
    Ok(DeterminantalPair {
        b_matrix: b,
        c_matrix: c,
        xb,
        xc,
        cramer,
        cramer_back,
        cramer_restricts,
        back_restricts,
        report,
    })
}

fn quartic(m: &[Vec<Polynomial>], name: &str) -> Result<Hypersurface> {
    let det = poly_det(m)?;
    if det.is_zero() {
        return Err(Error::DegenerateTensor(format!("{name} vanishes identically")));
    }
    Hypersurface::projective(det)
}

fn cramer_map(m: &[Vec<Polynomial>], name: &str) -> Result<RationalMap> {
    let coords = (0..4)
        .map(|j| {
            let d = poly_det(&poly_minor(m, 3, j))?;
            Ok(if j % 2 == 0 { d } else { -&d })
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.iter().all(Polynomial::is_zero) {
        return Err(Error::DegenerateTensor(format!(
            "all cofactors of the last row of {name} vanish"
        )));
    }
    RationalMap::from_polynomials(Chart::Projective, Chart::Projective, coords)
}
