use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{point_on, Chart, Hypersurface, Point};
use crate::poly::Polynomial;
use crate::ratmap::{verify_birational, BirationalReport, RationalFunction, RationalMap};

use super::{blocks, plane_violation};

/// `F = sum_(i <= n < j) l_ij x_i x_j`, keyed by `(i, j)`; absent keys are 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPlaneTable {
    pub n: usize,
    pub entries: BTreeMap<(usize, usize), Polynomial>,
}

impl TwoPlaneTable {
    pub fn get(&self, i: usize, j: usize) -> Option<&Polynomial> {
        self.entries.get(&(i, j))
    }

    pub fn reconstruct(&self, field: crate::field::FieldSpec) -> Polynomial {
        let nv = 2 * self.n + 2;
        self.entries
            .iter()
            .fold(Polynomial::zero(field, nv), |acc, (&(i, j), l)| {
                &acc + &(&(l * &Polynomial::var(field, nv, i)) * &Polynomial::var(field, nv, j))
            })
    }
}

/// Writes a form vanishing on both coordinate `n`-planes of `P^(2n+1)` as
/// `sum l_ij x_i x_j`. Each monomial goes to the pair made of its smallest
/// variable in `x0..xn` and its smallest variable in `x(n+1)..x(2n+1)`.
pub fn decompose_two_planes(f: &Polynomial, n: usize) -> Result<TwoPlaneTable> {
    let nv = 2 * n + 2;
    if f.nvars() != nv {
        return Err(Error::ArityMismatch {
            expected: nv,
            found: f.nvars(),
        });
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let (a, b) = blocks(nv)?;
    if let Some(m) = plane_violation(f, &a, &b) {
        return Err(Error::NotVanishingOnPlanes(m));
    }
    let field = f.field();
    let mut entries: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        let i = *a.iter().find(|&&i| e[i] > 0).expect("checked");
        let j = *b.iter().find(|&&j| e[j] > 0).expect("checked");
        let mut rest = e.to_vec();
        rest[i] -= 1;
        rest[j] -= 1;
        let term = Polynomial::from_terms(field, nv, [(rest, c.clone())])?;
        let slot = entries
            .entry((i, j))
            .or_insert_with(|| Polynomial::zero(field, nv));
        *slot = &*slot + &term;
    }
    Ok(TwoPlaneTable { n, entries })
}

/// Rational parametrization of a cubic `X ⊂ P^(2n+1)` containing the planes
/// `L1 = (x0 = ... = xn = 0)` and `L2 = (x(n+1) = ... = x(2n+1) = 0)`.
///
/// Parameters are affine charts `a = (1, u)` and `b = (1, v)` of the two
/// planes. The line through `(a : 0)` and `(0 : b)` meets `X` a third time
/// at `(s a : t b)` with `s = -sum l_ij(0; b) a_i b_j` and
/// `t = sum l_ij(a; 0) a_i b_j`.
#[derive(Clone, Debug)]
pub struct CubicTwoPlanes {
    pub n: usize,
    pub table: TwoPlaneTable,
    /// `s` and `t` in the parameters `u1..un, v1..vn`.
    pub s: Polynomial,
    pub t: Polynomial,
    /// `A^(2n) -> X`.
    pub third_point: RationalMap,
    /// `X -> A^(2n)`: `u_k = x_k / x_0`, `v_k = x_(n+1+k) / x_(n+1)`.
    pub inverse: RationalMap,
    pub parameters: Hypersurface,
    pub surface: Hypersurface,
    /// False when `s` or `t` vanishes identically: the image then lies in
    /// one of the planes.
    pub dominant: bool,
    pub report: Option<BirationalReport>,
}

impl CubicTwoPlanes {
    pub fn certified(&self) -> bool {
        self.dominant && self.report.as_ref().is_some_and(BirationalReport::certified)
    }
}

pub fn cubic_two_planes_param(x: &Hypersurface) -> Result<CubicTwoPlanes> {
    if x.chart() != Chart::Projective {
        return Err(Error::ChartMismatch("expected a projective cubic".into()));
    }
    if x.degree() != 3 {
        return Err(Error::DegreeMismatch(format!(
            "expected a cubic, got degree {}",
            x.degree()
        )));
    }
    let nv = x.nvars();
    let (a, b) = blocks(nv)?;
    let n = a.len() - 1;
    let field = x.field();
    let table = decompose_two_planes(x.defining(), n)?;

    let var = |i| Polynomial::var(field, nv, i);
    let mut s_h = Polynomial::zero(field, nv);
    let mut t_h = Polynomial::zero(field, nv);
    for (&(i, j), l) in &table.entries {
        let xij = &var(i) * &var(j);
        s_h = &s_h - &(&l.block_component(&a, 0) * &xij);
        t_h = &t_h + &(&l.block_component(&b, 0) * &xij);
    }

    let pn = 2 * n;
    let mut chart_subs = Vec::with_capacity(nv);
    for block in 0..2 {
        chart_subs.push(Polynomial::one(field, pn));
        for k in 0..n {
            chart_subs.push(Polynomial::var(field, pn, block * n + k));
        }
    }
    let s = s_h.substitute(&chart_subs)?;
    let t = t_h.substitute(&chart_subs)?;
    if s.is_zero() && t.is_zero() {
        return Err(Error::LineContained);
    }
    let coords: Vec<Polynomial> = (0..nv)
        .map(|i| {
            let scale = if i <= n { &s } else { &t };
            scale * &chart_subs[i]
        })
        .collect();
    let third_point = RationalMap::from_polynomials(Chart::Affine, Chart::Projective, coords)?;

    let inverse_coords = (1..=n)
        .map(|k| RationalFunction::new(var(k), var(0)))
        .chain((1..=n).map(|k| RationalFunction::new(var(n + 1 + k), var(n + 1))))
        .collect::<Result<Vec<_>>>()?;
    let inverse = RationalMap::new(Chart::Projective, Chart::Affine, inverse_coords)?;

    let parameters = Hypersurface::ambient_space(field, pn, Chart::Affine);
    let dominant = !s.is_zero() && !t.is_zero();
    let report = if dominant {
        Some(verify_birational(&third_point, &inverse, &parameters, x)?)
    } else {
        None
    };
    Ok(CubicTwoPlanes {
        n,
        table,
        s,
        t,
        third_point,
        inverse,
        parameters,
        surface: x.clone(),
        dominant,
        report,
    })
}

fn check_plane_cubic(c: &Hypersurface) -> Result<()> {
    if c.chart() != Chart::Projective || c.nvars() != 3 {
        return Err(Error::InvalidHypersurface("expected a plane projective curve".into()));
    }
    if c.degree() != 3 {
        return Err(Error::DegreeMismatch(format!(
            "expected a cubic, got degree {}",
            c.degree()
        )));
    }
    Ok(())
}

/// `C(lambda p0 + mu p) / (lambda mu)` as a linear form `alpha lambda + beta mu`
/// on the ring of `line`, with `lambda, mu` the first two variables.
fn residual_linear_form(c: &Hypersurface, line: &[Polynomial]) -> Result<(Polynomial, Polynomial)> {
    let binary = c.defining().substitute(line)?;
    if binary.is_zero() {
        return Err(Error::LineContained);
    }
    let nv = binary.nvars();
    let field = c.field();
    let lm = &Polynomial::var(field, nv, 0) * &Polynomial::var(field, nv, 1);
    let (q, _) = binary.divide(&lm)?;
    let by_lambda = q.coefficients_in(0);
    let alpha = by_lambda.get(1).cloned().unwrap_or_else(|| Polynomial::zero(field, nv));
    let by_mu = by_lambda[0].coefficients_in(1);
    let beta = by_mu.get(1).cloned().unwrap_or_else(|| Polynomial::zero(field, nv));
    Ok((alpha, beta))
}

/// Third intersection of the line through `p0` and `p` with the plane cubic
/// `C`, counted with multiplicity.
pub fn chord_third_point(c: &Hypersurface, p0: &Point, p: &Point) -> Result<Point> {
    check_plane_cubic(c)?;
    if !point_on(c, p0)? || !point_on(c, p)? {
        return Err(Error::PointNotOnHypersurface);
    }
    if p0 == p {
        return Err(Error::CoincidentPoints);
    }
    let field = c.field();
    let line: Vec<Polynomial> = (0..3)
        .map(|i| {
            let lam = Polynomial::var(field, 2, 0).scale(&p0.coords()[i]);
            let mu = Polynomial::var(field, 2, 1).scale(&p.coords()[i]);
            &lam + &mu
        })
        .collect();
    let (alpha, beta) = residual_linear_form(c, &line)?;
    let alpha = alpha.constant_value().unwrap_or_else(|| field.zero());
    let beta = beta.constant_value().unwrap_or_else(|| field.zero());
    let coords = (0..3)
        .map(|i| field.sub(&field.mul(&beta, &p0.coords()[i]), &field.mul(&alpha, &p.coords()[i])))
        .collect();
    Point::projective(field, coords)
}

/// `τ_p0`: sends `p` to the third point of `C` on the line `<p0, p>`.
#[derive(Clone, Debug)]
pub struct ChordInvolution {
    pub map: RationalMap,
    pub curve: Hypersurface,
    /// `τ ∘ τ = id` modulo the cubic, and `τ` maps `C` to `C`.
    pub report: BirationalReport,
}

/// Built from a symbolic point `x`: `C(lambda p0 + mu x) / (lambda mu)`
/// leaves `alpha lambda + beta mu` plus `mu^2 C(x) / lambda`, which
/// vanishes on `C`; the third point is `beta p0 - alpha x`.
pub fn chord_involution(c: &Hypersurface, p0: &Point) -> Result<ChordInvolution> {
    check_plane_cubic(c)?;
    if !point_on(c, p0)? {
        return Err(Error::PointNotOnHypersurface);
    }
    let field = c.field();
    let line: Vec<Polynomial> = (0..3)
        .map(|i| {
            let lam = Polynomial::var(field, 5, 0).scale(&p0.coords()[i]);
            &lam + &(&Polynomial::var(field, 5, 1) * &Polynomial::var(field, 5, 2 + i))
        })
        .collect();
    let binary = c.defining().substitute(&line)?;
    let lm = &Polynomial::var(field, 5, 0) * &Polynomial::var(field, 5, 1);
    let (_, r) = binary.divide(&lm)?;
    let lifted = c.defining().relabel(5, &[2, 3, 4])?;
    if !r.is_divisible_by(&lifted)? {
        return Err(Error::InvalidHypersurface(
            "chord residual does not vanish on the curve".into(),
        ));
    }
    let (alpha, beta) = residual_linear_form(c, &line)?;
    let drop = |p: &Polynomial| -> Result<Polynomial> { p.specialize_to_one(0)?.specialize_to_one(0) };
    let (alpha, beta) = (drop(&alpha)?, drop(&beta)?);
    let coords = (0..3)
        .map(|i| &beta.scale(&p0.coords()[i]) - &(&alpha * &Polynomial::var(field, 3, i)))
        .collect();
    let map = RationalMap::from_polynomials(Chart::Projective, Chart::Projective, coords)?;
    let report = verify_birational(&map, &map, c, c)?;
    Ok(ChordInvolution {
        map,
        curve: c.clone(),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::parse_polynomial;

    fn q(text: &str, n: usize) -> Polynomial {
        parse_polynomial(text, n, FieldSpec::Q).unwrap()
    }

    #[test]
    fn table_for_small_cubic() {
        let f = q("x0*x2*x3 + x1*x2^2", 4);
        let t = decompose_two_planes(&f, 1).unwrap();
        assert_eq!(t.get(0, 2), Some(&q("x3", 4)));
        assert_eq!(t.get(1, 2), Some(&q("x2", 4)));
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.reconstruct(FieldSpec::Q), f);
    }

    #[test]
    fn table_rejects_plane_monomials() {
        let f = q("x0^3 + x0*x2*x3", 4);
        assert_eq!(
            decompose_two_planes(&f, 1).unwrap_err(),
            Error::NotVanishingOnPlanes("x0^3".into())
        );
    }

    #[test]
    fn degenerate_cubic_is_not_dominant() {
        let x = Hypersurface::projective(q("x0*x2^2 + x1*x3^2", 4)).unwrap();
        let p = cubic_two_planes_param(&x).unwrap();
        assert!(p.t.is_zero());
        assert!(!p.s.is_zero());
        assert!(!p.dominant);
        assert!(!p.certified());
    }

    #[test]
    fn flip_on_weierstrass_cubic() {
        let c = Hypersurface::projective(q("x1^2*x2 - x0^3 + x0*x2^2", 3)).unwrap();
        let p0 = Point::projective_i64(FieldSpec::Q, &[0, 1, 0]).unwrap();
        let inv = chord_involution(&c, &p0).unwrap();
        assert_eq!(inv.map.projective_form(), &[q("x0", 3), q("-x1", 3), q("x2", 3)]);
        assert!(inv.report.certified());
        assert_eq!(chord_third_point(&c, &p0, &p0), Err(Error::CoincidentPoints));
    }

    #[test]
    fn chord_through_rational_points() {
        let f = FieldSpec::Q;
        let c = Hypersurface::projective(q("x1^2*x2 - x0^3 + x0*x2^2", 3)).unwrap();
        // (0:0:1), (1:0:1), (-1:0:1) are collinear on x1 = 0.
        let a = Point::projective_i64(f, &[0, 0, 1]).unwrap();
        let b = Point::projective_i64(f, &[1, 0, 1]).unwrap();
        let third = chord_third_point(&c, &a, &b).unwrap();
        assert_eq!(third, Point::projective_i64(f, &[-1, 0, 1]).unwrap());
    }
}
