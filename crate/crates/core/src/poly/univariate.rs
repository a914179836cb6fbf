use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

use super::Polynomial;

/// Dense univariate polynomial, coefficients in ascending degree order.
/// Used for specialized gcd certificates and root scans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    /// Restricts `p` to the line `x_var = t`, other variables fixed to `point`
    /// (the entry at `var` is ignored).
    pub fn specialize(p: &Polynomial, var: usize, point: &[Scalar]) -> UniPoly {
        let f = p.field();
        let mut coeffs = vec![f.zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            let mut t = c.clone();
            for (i, e) in m.exponents().iter().enumerate() {
                if i != var && *e > 0 {
                    t = f.mul(&t, &f.pow(&point[i], *e as u64));
                }
            }
            let k = m.exponents()[var] as usize;
            coeffs[k] = f.add(&coeffs[k], &t);
        }
        UniPoly::new(f, coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = f.inv(&d.coeffs[dd])?;
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let c = f.mul(&r[k], &inv);
            if !f.is_zero(&c) {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let idx = k - dd + j;
                    r[idx] = f.sub(&r[idx], &f.mul(&c, dc));
                }
            }
            r.pop();
        }
        Ok(UniPoly::new(*f, r))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero");
                UniPoly::new(
                    self.field,
                    self.coeffs.iter().map(|c| self.field.mul(c, &inv)).collect(),
                )
            }
        }
    }

    /// All roots in a prime field, by exhaustive scan.
    pub fn roots(&self) -> Result<Vec<Scalar>> {
        Ok(self
            .field
            .elements()?
            .filter(|x| self.field.is_zero(&self.eval(x)))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclid_over_fp() {
        let f = FieldSpec::prime(7).unwrap();
        let s = |v: &[i64]| UniPoly::new(f, v.iter().map(|&c| f.from_i64(c)).collect());
        // (x - 1)(x - 2) and (x - 1)(x + 3)
        let a = s(&[2, -3, 1]);
        let b = s(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), s(&[-1, 1]));
        assert_eq!(a.roots().unwrap(), vec![f.from_i64(1), f.from_i64(2)]);
    }
}
