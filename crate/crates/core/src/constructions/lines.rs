use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::geom::{contains_subspace, Hypersurface, LinearSubspace};
use crate::poly::Polynomial;

/// `x0^d + ... + x(m-1)^d`.
pub fn fermat_hypersurface(d: u32, nvars: usize, field: FieldSpec) -> Result<Hypersurface> {
    let f = (0..nvars).fold(Polynomial::zero(field, nvars), |acc, i| {
        &acc + &Polynomial::var(field, nvars, i).pow(d)
    });
    Hypersurface::projective(f)
}

/// The `d`-th roots of `-1` available in `field`, in increasing order.
/// Over `F_p` there are `d` of them iff `2d | p - 1`, which is required.
/// Over `Q` the only candidate is `-1`, for odd `d`.
pub fn roots_of_minus_one(d: u32, field: FieldSpec) -> Result<Vec<Scalar>> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    match field.modulus() {
        None => {
            if d % 2 == 1 {
                Ok(vec![field.from_i64(-1)])
            } else {
                Err(Error::MissingRoots(format!(
                    "-1 has no rational {d}-th root"
                )))
            }
        }
        Some(p) => {
            let (p, d64) = (p as u64, d as u64);
            if (p - 1) % (2 * d64) != 0 {
                return Err(Error::MissingRoots(format!(
                    "F{p} has all {d} roots of x^{d} = -1 only when {} divides p - 1",
                    2 * d
                )));
            }
            let zeta = element_of_order(field, 2 * d64)?;
            let mut roots: Vec<Scalar> = (0..d64)
                .map(|k| field.pow(&zeta, 2 * k + 1))
                .collect();
            roots.sort_by_key(|r| match r {
                Scalar::Residue(v) => *v,
                Scalar::Rational(_) => unreachable!(),
            });
            Ok(roots)
        }
    }
}

/// Smallest `g^((p-1)/order)` of exact multiplicative order `order`.
fn element_of_order(field: FieldSpec, order: u64) -> Result<Scalar> {
    let p = field.characteristic();
    let primes: Vec<u64> = (2..=order)
        .filter(|q| order % q == 0 && (2..*q).all(|r| q % r != 0))
        .collect();
    for g in 2..p {
        let y = field.pow(&field.from_i64(g as i64), (p - 1) / order);
        if primes.iter().all(|q| !field.is_one(&field.pow(&y, order / q))) {
            return Ok(y);
        }
    }
    Err(Error::MissingRoots(format!("no element of order {order} in F{p}")))
}

/// All ways to split `0..m` (m even) into unordered pairs `(i, j)`, `i < j`,
/// pairs listed by their first element.
pub fn pairings(m: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(left: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if left.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = left.remove(0);
        for k in 0..left.len() {
            let partner = left.remove(k);
            cur.push((first, partner));
            rec(left, cur, out);
            cur.pop();
            left.insert(k, partner);
        }
        left.insert(0, first);
    }
    let mut out = Vec::new();
    if m % 2 == 0 {
        rec(&mut (0..m).collect(), &mut Vec::new(), &mut out);
    }
    out
}

/// `d^(n+1) (2n+2)! / (2^(n+1) (n+1)!)`.
pub fn fermat_line_count(d: u32, n: u32) -> BigUint {
    let fact = |k: u32| (1..=k).fold(BigUint::from(1u32), |acc, i| acc * i);
    BigUint::from(d).pow(n + 1) * fact(2 * n + 2) / (BigUint::from(2u32).pow(n + 1) * fact(n + 1))
}

/// `L(τ, σ, ε) = (x_τ(i) = ε_i x_σ(i))` with `τ(i) < σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermatLine {
    pub pairs: Vec<(usize, usize)>,
    pub eps: Vec<Scalar>,
    pub subspace: LinearSubspace,
}

#[derive(Clone, Debug)]
pub struct FermatLines {
    pub d: u32,
    pub n: u32,
    pub roots: Vec<Scalar>,
    pub lines: Vec<FermatLine>,
    /// Fewer than `d` roots of `-1` were available, so the family is
    /// incomplete.
    pub partial: bool,
}

/// Linear `n`-planes on the Fermat hypersurface of degree `d` in
/// `P^(2n+1)`, one per pairing of the coordinates and choice of roots.
/// Every returned plane has been checked to lie on the hypersurface.
pub fn fermat_lines(d: u32, n: u32, field: FieldSpec) -> Result<FermatLines> {
    let roots = roots_of_minus_one(d, field)?;
    let m = 2 * n as usize + 2;
    let x = fermat_hypersurface(d, m, field)?;
    let k = n as usize + 1;
    let mut lines = Vec::new();
    for pairs in pairings(m) {
        let mut choice = vec![0usize; k];
        loop {
            let eps: Vec<Scalar> = choice.iter().map(|&c| roots[c].clone()).collect();
            let cols: Vec<Vec<Scalar>> = pairs
                .iter()
                .zip(&eps)
                .map(|(&(tau, sigma), e)| {
                    let mut col = vec![field.zero(); m];
                    col[sigma] = field.one();
                    col[tau] = e.clone();
                    col
                })
                .collect();
            let subspace = LinearSubspace::from_columns(field, &cols)?;
            if !contains_subspace(&x, &subspace)? {
                return Err(Error::MissingRoots(format!("plane {pairs:?} is not on the hypersurface")));
            }
            lines.push(FermatLine {
                pairs: pairs.clone(),
                eps,
                subspace,
            });
            if !advance(&mut choice, roots.len()) {
                break;
            }
        }
    }
    Ok(FermatLines {
        d,
        n,
        partial: roots.len() < d as usize,
        roots,
        lines,
    })
}

/// Odometer step over `base^len` choices; false after the last one.
fn advance(choice: &mut [usize], base: usize) -> bool {
    for c in choice.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_formula() {
        assert_eq!(fermat_line_count(3, 1), BigUint::from(27u32));
        assert_eq!(fermat_line_count(4, 1), BigUint::from(48u32));
    }

    #[test]
    fn pairing_counts() {
        assert_eq!(pairings(2).len(), 1);
        assert_eq!(pairings(4).len(), 3);
        assert_eq!(pairings(6).len(), 15);
        assert_eq!(pairings(4)[0], vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn roots_over_f7() {
        let f7 = FieldSpec::prime(7).unwrap();
        let r = roots_of_minus_one(3, f7).unwrap();
        assert_eq!(r, vec![f7.from_i64(3), f7.from_i64(5), f7.from_i64(6)]);
        let f13 = FieldSpec::prime(13).unwrap();
        assert!(matches!(roots_of_minus_one(4, f13), Err(Error::MissingRoots(_))));
    }

    #[test]
    fn rational_cubic_lines_are_partial() {
        let l = fermat_lines(3, 1, FieldSpec::Q).unwrap();
        assert_eq!(l.lines.len(), 3);
        assert!(l.partial);
    }
}
