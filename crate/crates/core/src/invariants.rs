//! Numerical invariants of hypersurfaces.
//!
//! For a smooth hypersurface `X ⊂ P^(n+1)` of degree `d`, everything here
//! depends on `(n, d)` alone except the volume-form evaluators, which work
//! on an explicit equation. The rationality statements are one-sided: a
//! verdict of "not rational" is a certificate, anything else is silence.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{is_rational_cube, Scalar};
use crate::geom::{Chart, Hypersurface, Point};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::ratmap::RationalFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TypeClass {
    GeneralType,
    CalabiYau,
    Fano,
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeClass::GeneralType => "general type",
            TypeClass::CalabiYau => "Calabi-Yau",
            TypeClass::Fano => "Fano",
        })
    }
}

/// Dimension of the space of global volume forms on a smooth hypersurface
/// of degree `d` and dimension `n`: the number of monomials of degree
/// `d - n - 2` in `n + 2` variables.
pub fn volume_form_dim(d: u32, n: u32) -> BigUint {
    if d < n + 2 {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(d - 1), BigUint::from(n + 1))
}

pub fn classify_type(d: u32, n: u32) -> TypeClass {
    if d >= n + 3 {
        TypeClass::GeneralType
    } else if d == n + 2 {
        TypeClass::CalabiYau
    } else {
        TypeClass::Fano
    }
}

/// `true` certifies that a smooth hypersurface of these invariants is not
/// rational; `false` says nothing.
pub fn not_rational_by_degree(d: u32, n: u32) -> bool {
    d >= n + 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ExceptionalCase {
    /// A line and a conic in `P^2`.
    LineConic,
    /// Two plane cubics.
    PlaneCubic,
    /// Two quartic surfaces in `P^3`.
    QuarticSurface,
}

impl fmt::Display for ExceptionalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExceptionalCase::LineConic => "line and conic",
            ExceptionalCase::PlaneCubic => "plane cubic",
            ExceptionalCase::QuarticSurface => "quartic surface",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LinearityClass {
    /// Every isomorphism between irreducible hypersurfaces of these
    /// invariants comes from a linear change of coordinates.
    MustBeLinear,
    Exceptional(ExceptionalCase),
}

impl fmt::Display for LinearityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearityClass::MustBeLinear => f.write_str("must be linear"),
            LinearityClass::Exceptional(c) => write!(f, "exceptional case ({c})"),
        }
    }
}

/// Whether isomorphisms between irreducible hypersurfaces of dimension `n`
/// and degrees `d1`, `d2` in `P^(n+1)` are necessarily linear.
pub fn isomorphism_linearity_class(n: u32, d1: u32, d2: u32) -> LinearityClass {
    let (lo, hi) = (d1.min(d2), d1.max(d2));
    match (n, lo, hi) {
        (1, 1, 2) => LinearityClass::Exceptional(ExceptionalCase::LineConic),
        (1, 3, 3) => LinearityClass::Exceptional(ExceptionalCase::PlaneCubic),
        (2, 4, 4) => LinearityClass::Exceptional(ExceptionalCase::QuarticSurface),
        _ => LinearityClass::MustBeLinear,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SegreVerdict {
    NotRationalOverQ,
    Inconclusive,
}

impl fmt::Display for SegreVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SegreVerdict::NotRationalOverQ => "not rational over Q",
            SegreVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// The three quotients `a_i a_j / (a_k a_l)`, one per splitting of
/// `{0, 1, 2, 3}` into two pairs.
pub fn segre_quotients(a: &[BigRational; 4]) -> Result<[BigRational; 3]> {
    if let Some(i) = a.iter().position(Zero::is_zero) {
        return Err(Error::ZeroCoefficient(i));
    }
    let q = |i: usize, j: usize, k: usize, l: usize| (&a[i] * &a[j]) / (&a[k] * &a[l]);
    Ok([q(0, 1, 2, 3), q(0, 2, 1, 3), q(0, 3, 1, 2)])
}

/// For `a0 x0^3 + a1 x1^3 + a2 x2^3 + a3 x3^3 = 0` over `Q`: not rational
/// when none of the [`segre_quotients`] is a cube.
pub fn segre_criterion(a: &[BigRational; 4]) -> Result<SegreVerdict> {
    let qs = segre_quotients(a)?;
    Ok(if qs.iter().any(is_rational_cube) {
        SegreVerdict::Inconclusive
    } else {
        SegreVerdict::NotRationalOverQ
    })
}

pub fn segre_criterion_i64(a: [i64; 4]) -> Result<SegreVerdict> {
    segre_criterion(&a.map(|v| BigRational::from_integer(BigInt::from(v))))
}

/// The volume form `σ_i` on the smooth part of an affine hypersurface
/// `(h = 0) ⊂ A^(n+1)`, in the chart where `z_i` is eliminated:
/// density `(-1)^(i+1) / (∂h/∂z_i)` for 0-based `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeFormChart {
    pub chart_index: usize,
    pub coefficient: RationalFunction,
}

pub fn affine_volume_chart(h: &Polynomial, i: usize) -> Result<VolumeFormChart> {
    if i >= h.nvars() {
        return Err(Error::VariableOutOfRange {
            index: i,
            nvars: h.nvars(),
        });
    }
    let field = h.field();
    let sign = if i % 2 == 1 { field.one() } else { field.from_i64(-1) };
    let di = h.partial_derivative(i)?;
    if di.is_zero() {
        return Err(Error::ChartUndefined(i));
    }
    let coefficient = RationalFunction::new(Polynomial::constant(field, h.nvars(), sign), di)?;
    Ok(VolumeFormChart {
        chart_index: i,
        coefficient,
    })
}

/// Value of `σ_i` at `p` on the tangent frame `basis`: the chart density
/// times the determinant of the frame with row `i` removed.
pub fn evaluate_volume_form(
    h: &Polynomial,
    chart: &VolumeFormChart,
    p: &Point,
    basis: &[Vec<Scalar>],
) -> Result<Scalar> {
    let field = h.field();
    let m = h.nvars();
    let x = Hypersurface::affine(h.clone())?;
    if p.chart() != Chart::Affine || p.len() != m {
        return Err(Error::InvalidPoint(format!("expected an affine point with {m} coordinates")));
    }
    if !x.contains(p)? {
        return Err(Error::PointNotOnHypersurface);
    }
    let i = chart.chart_index;
    let density = chart
        .coefficient
        .eval(p.coords())?
        .ok_or(Error::ChartUndefined(i))?;
    if basis.len() + 1 != m {
        return Err(Error::InvalidFrame(format!(
            "expected {} tangent vectors, got {}",
            m - 1,
            basis.len()
        )));
    }
    let grad = h
        .gradient()
        .iter()
        .map(|g| g.eval(p.coords()))
        .collect::<Result<Vec<_>>>()?;
    let mut frame = Matrix::zeros(field, m, m - 1);
    for (c, v) in basis.iter().enumerate() {
        if v.len() != m {
            return Err(Error::InvalidFrame(format!("vector {c} has {} coordinates", v.len())));
        }
        let dot = grad
            .iter()
            .zip(v)
            .fold(field.zero(), |acc, (g, vi)| field.add(&acc, &field.mul(g, vi)));
        if !field.is_zero(&dot) {
            return Err(Error::InvalidFrame(format!("vector {c} is not tangent")));
        }
        for (r, vi) in v.iter().enumerate() {
            frame.set(r, c, vi.clone());
        }
    }
    if frame.rank() != m - 1 {
        return Err(Error::InvalidFrame("vectors are linearly dependent".into()));
    }
    let det = if m == 1 { field.one() } else { frame_minor(&frame, i).det()? };
    Ok(field.mul(&density, &det))
}

fn frame_minor(frame: &Matrix, row: usize) -> Matrix {
    let rows = (0..frame.rows())
        .filter(|&r| r != row)
        .map(|r| frame.row(r).to_vec())
        .collect();
    Matrix::from_rows(frame.field(), rows).expect("rectangular")
}

/// Density of the global form `G · σ` in the affine chart `x0 = 1`,
/// eliminating the last coordinate: `G(1, x) / (∂H/∂x_last)(1, x)`.
/// Scaling by `λ` multiplies the form by `λ^(deg G + n + 2 - d)`, so
/// `deg G = d - n - 2` is required.
pub fn projective_volume_form_chart_coefficient(
    h: &Polynomial,
    g: &Polynomial,
) -> Result<RationalFunction> {
    h.checked_add(g)?;
    if !h.is_homogeneous() || !g.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let nv = h.nvars();
    let d = h.degree().ok_or_else(|| Error::InvalidHypersurface("zero polynomial".into()))? as i64;
    let n = nv as i64 - 2;
    let want = d - n - 2;
    if want < 0 {
        return Err(Error::DegreeMismatch(format!(
            "global forms need deg G = d - n - 2 = {want} >= 0"
        )));
    }
    if let Some(dg) = g.degree() {
        if dg as i64 != want {
            return Err(Error::DegreeMismatch(format!(
                "deg G = {dg}, but the weight deg G + n + 2 - d vanishes only for deg G = {want}"
            )));
        }
    }
    let last = nv - 1;
    let den = h.partial_derivative(last)?.specialize_to_one(0)?;
    if den.is_zero() {
        return Err(Error::ChartUndefined(last));
    }
    RationalFunction::new(g.specialize_to_one(0)?, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::parse_polynomial;

    #[test]
    fn thresholds() {
        assert_eq!(classify_type(3, 2), TypeClass::Fano);
        assert!(!not_rational_by_degree(3, 2));
        assert_eq!(classify_type(5, 3), TypeClass::CalabiYau);
        assert_eq!(classify_type(7, 3), TypeClass::GeneralType);
        assert_eq!(volume_form_dim(6, 3), BigUint::from(5u32));
        assert_eq!(volume_form_dim(3, 2), BigUint::zero());
    }

    #[test]
    fn linearity_cases() {
        use ExceptionalCase::*;
        assert_eq!(isomorphism_linearity_class(1, 2, 1), LinearityClass::Exceptional(LineConic));
        assert_eq!(isomorphism_linearity_class(1, 3, 3), LinearityClass::Exceptional(PlaneCubic));
        assert_eq!(isomorphism_linearity_class(2, 4, 4), LinearityClass::Exceptional(QuarticSurface));
        assert_eq!(isomorphism_linearity_class(3, 3, 3), LinearityClass::MustBeLinear);
    }

    #[test]
    fn segre_examples() {
        assert_eq!(segre_criterion_i64([1, 1, 1, 1]).unwrap(), SegreVerdict::Inconclusive);
        assert_eq!(segre_criterion_i64([1, 2, 4, 8]).unwrap(), SegreVerdict::Inconclusive);
        assert_eq!(segre_criterion_i64([1, 1, 1, 2]).unwrap(), SegreVerdict::NotRationalOverQ);
        assert_eq!(segre_criterion_i64([1, 0, 1, 2]).unwrap_err(), Error::ZeroCoefficient(1));
    }

    #[test]
    fn circle_charts() {
        let q = FieldSpec::Q;
        let h = parse_polynomial("x^2 + y^2 - 1", 2, q).unwrap();
        let s0 = affine_volume_chart(&h, 0).unwrap();
        let s1 = affine_volume_chart(&h, 1).unwrap();
        let top = Point::affine_i64(q, &[0, 1]).unwrap();
        let v = vec![vec![q.one(), q.zero()]];
        assert_eq!(evaluate_volume_form(&h, &s1, &top, &v).unwrap(), q.parse_scalar("1/2").unwrap());
        assert_eq!(evaluate_volume_form(&h, &s0, &top, &v).unwrap_err(), Error::ChartUndefined(0));
        let p = Point::parse("3/5, 4/5", q).unwrap();
        let v = vec![vec![q.parse_scalar("-4/5").unwrap(), q.parse_scalar("3/5").unwrap()]];
        let a = evaluate_volume_form(&h, &s0, &p, &v).unwrap();
        let b = evaluate_volume_form(&h, &s1, &p, &v).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, q.parse_scalar("-1/2").unwrap());
    }

    #[test]
    fn projective_coefficient() {
        let q = FieldSpec::Q;
        let h = parse_polynomial("x0^3 - x0*x2^2 - x1^2*x2", 3, q).unwrap();
        let g = Polynomial::one(q, 3);
        let c = projective_volume_form_chart_coefficient(&h, &g).unwrap();
        assert_eq!(c.denominator(), &parse_polynomial("x0^2 + 2*x1", 2, q).unwrap());
        let conic = parse_polynomial("x0*x2 - x1^2", 3, q).unwrap();
        assert!(matches!(
            projective_volume_form_chart_coefficient(&conic, &g),
            Err(Error::DegreeMismatch(_))
        ));
    }
}
