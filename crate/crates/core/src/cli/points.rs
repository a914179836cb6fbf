//! Points of `a_1 x_1^2 + ... + a_n x_n^2 + x_(n+1)^2 = 1` produced by the
//! inverse stereographic projection.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::constructions::{sphere_stereographic, Stereographic};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::geom::{points_over_prime_field, Point};
use crate::ratmap::{evaluate, Evaluation};

/// Points of the quadric, deduplicated, in parameter order, and the one
/// point the parametrization misses over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoints {
    pub points: Vec<Point>,
    pub excluded: Point,
    /// Parameters where `1 + Σ a_i y_i^2 = 0`.
    pub skipped: usize,
}

/// Rationals `u/v` with `|u| <= height`, `1 <= v <= height`, in increasing
/// order.
pub fn rationals_of_height(height: u64) -> Vec<BigRational> {
    let h = height as i64;
    let mut out: Vec<BigRational> = (1..=h)
        .flat_map(|v| {
            (-h..=h)
                .filter(move |u| u.gcd(&v) == 1 || *u == 0 && v == 1)
                .map(move |u| BigRational::new(BigInt::from(u), BigInt::from(v)))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Images of all parameters `y ∈ Q^n` of height at most `height`, in
/// lexicographic parameter order.
pub fn enum_rational_points(a: &[BigRational], height: u64) -> Result<RationalPoints> {
    if height == 0 {
        return Err(Error::InvalidArgument("height must be at least 1".into()));
    }
    let q = FieldSpec::Q;
    let a: Vec<Scalar> = a.iter().map(|v| Scalar::Rational(v.clone())).collect();
    let s = sphere_stereographic(a.len(), &a, q)?;
    let values: Vec<Scalar> = rationals_of_height(height)
        .into_iter()
        .map(Scalar::Rational)
        .collect();
    let mut points = Vec::new();
    let mut seen = HashSet::new();
    let mut skipped = 0;
    for_each_tuple(&values, a.len(), |y| {
        match evaluate(&s.inverse, &Point::affine(q, y.to_vec())?)? {
            Evaluation::Defined(p) => {
                if seen.insert(p.clone()) {
                    points.push(p);
                }
            }
            Evaluation::Undefined => skipped += 1,
        }
        Ok(())
    })?;
    Ok(RationalPoints {
        points,
        excluded: south_pole(q, a.len())?,
        skipped,
    })
}

fn south_pole(field: FieldSpec, n: usize) -> Result<Point> {
    let mut c = vec![field.zero(); n + 1];
    c[n] = field.from_i64(-1);
    Point::affine(field, c)
}

fn for_each_tuple(
    values: &[Scalar],
    n: usize,
    mut f: impl FnMut(&[Scalar]) -> Result<()>,
) -> Result<()> {
    let mut idx = vec![0usize; n];
    let mut tuple: Vec<Scalar> = vec![values[0].clone(); n];
    loop {
        for (t, &i) in tuple.iter_mut().zip(&idx) {
            *t = values[i].clone();
        }
        f(&tuple)?;
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Over `F_p`: the image of every `y ∈ F_p^n` under the inverse projection.
pub fn parametrized_points(s: &Stereographic) -> Result<HashSet<Point>> {
    let field = s.source.field();
    let values: Vec<Scalar> = field.elements()?.collect();
    let n = s.target.nvars();
    let mut out = HashSet::new();
    for_each_tuple(&values, n, |y| {
        if let Evaluation::Defined(p) = evaluate(&s.inverse, &Point::affine(field, y.to_vec())?)? {
            out.insert(p);
        }
        Ok(())
    })?;
    Ok(out)
}

/// Over `F_p`: points of the quadric on the slice `x_(n+1) = -1`, where the
/// projection is undefined.
pub fn excluded_locus(s: &Stereographic) -> Result<HashSet<Point>> {
    let field = s.source.field();
    let last = s.source.nvars() - 1;
    let minus_one = field.from_i64(-1);
    Ok(all_points(s)?
        .into_iter()
        .filter(|p| p.coords()[last] == minus_one)
        .collect())
}

/// Over `F_p`: every point of the quadric, by exhaustive search.
pub fn all_points(s: &Stereographic) -> Result<HashSet<Point>> {
    Ok(points_over_prime_field(&s.source, u64::MAX)?.into_iter().collect())
}

/// Whether parametrized points together with the excluded slice are
/// exactly the points of the quadric over `F_p`.
pub fn completeness_shadow(a: &[Scalar], field: FieldSpec) -> Result<bool> {
    if !field.is_finite() {
        return Err(Error::RequiresFiniteField);
    }
    let s = sphere_stereographic(a.len(), a, field)?;
    let mut covered = parametrized_points(&s)?;
    covered.extend(excluded_locus(&s)?);
    Ok(covered == all_points(&s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(u: i64, v: i64) -> BigRational {
        BigRational::new(BigInt::from(u), BigInt::from(v))
    }

    #[test]
    fn heights() {
        let h2 = rationals_of_height(2);
        assert_eq!(h2, vec![r(-2, 1), r(-1, 1), r(-1, 2), r(0, 1), r(1, 2), r(1, 1), r(2, 1)]);
    }

    #[test]
    fn circle_height_two() {
        let pts = enum_rational_points(&[r(1, 1)], 2).unwrap();
        let q = FieldSpec::Q;
        let want = ["-4/5, -3/5", "-1, 0", "-4/5, 3/5", "0, 1", "4/5, 3/5", "1, 0", "4/5, -3/5"];
        let want: Vec<Point> = want.iter().map(|t| Point::parse(t, q).unwrap()).collect();
        assert_eq!(pts.points, want);
        assert_eq!(pts.excluded, Point::parse("0, -1", q).unwrap());
    }

    #[test]
    fn singular_parameter_skipped() {
        let pts = enum_rational_points(&[r(-1, 1)], 1).unwrap();
        assert_eq!(pts.skipped, 2);
    }

    #[test]
    fn shadow_small_primes() {
        for p in [5, 7] {
            let f = FieldSpec::prime(p).unwrap();
            assert!(completeness_shadow(&[f.from_i64(2)], f).unwrap());
        }
    }
}
