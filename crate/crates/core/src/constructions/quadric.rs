use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::geom::{is_smooth_at, point_on, Chart, Hypersurface, LinearSubspace, Point};
use crate::linalg::Matrix;
use crate::poly::{gcd, Polynomial};
use crate::ratmap::{BirationalReport, RationalFunction, RationalMap, verify_birational};

/// Projection of `a_1 x_1^2 + ... + a_n x_n^2 + x_(n+1)^2 = 1` from the
/// south pole `(0, ..., 0, -1)` and its inverse from `A^n`.
#[derive(Clone, Debug)]
pub struct Stereographic {
    pub forward: RationalMap,
    pub inverse: RationalMap,
    pub source: Hypersurface,
    pub target: Hypersurface,
}

/// The affine quadric uses variables `x0..x(n-1)` for `x_1..x_n` and `xn`
/// for the last coordinate.
pub fn sphere_stereographic(n: usize, a: &[Scalar], field: FieldSpec) -> Result<Stereographic> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if a.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: a.len(),
        });
    }
    if let Some(i) = a.iter().position(|c| field.is_zero(c)) {
        return Err(Error::ZeroCoefficient(i));
    }
    if let Some(bad) = a.iter().find(|c| !field.contains(c)) {
        return Err(Error::CoefficientNotInField(bad.to_string()));
    }
    let m = n + 1;
    let x = |i| Polynomial::var(field, m, i);
    let mut h = &x(n) * &x(n) - Polynomial::one(field, m);
    for (i, c) in a.iter().enumerate() {
        h = &h + &(&x(i) * &x(i)).scale(c);
    }
    let source = Hypersurface::affine(h)?;
    let one_plus_last = &Polynomial::one(field, m) + &x(n);
    let forward_coords = (0..n)
        .map(|i| RationalFunction::new(x(i), one_plus_last.clone()))
        .collect::<Result<Vec<_>>>()?;
    let forward = RationalMap::new(Chart::Affine, Chart::Affine, forward_coords)?;

    let y = |i| Polynomial::var(field, n, i);
    let one = Polynomial::one(field, n);
    let sigma = a
        .iter()
        .enumerate()
        .fold(Polynomial::zero(field, n), |acc, (i, c)| &acc + &(&y(i) * &y(i)).scale(c));
    let den = &one + &sigma;
    let two = field.from_i64(2);
    let mut inverse_coords = (0..n)
        .map(|i| RationalFunction::new(y(i).scale(&two), den.clone()))
        .collect::<Result<Vec<_>>>()?;
    inverse_coords.push(RationalFunction::new(&one - &sigma, den)?);
    let inverse = RationalMap::new(Chart::Affine, Chart::Affine, inverse_coords)?;
    Ok(Stereographic {
        forward,
        inverse,
        source,
        target: Hypersurface::ambient_space(field, n, Chart::Affine),
    })
}

/// Projection of a quadric `Q ⊂ P^(n+1)` from a smooth point `p` onto a
/// hyperplane `H ∌ p`, identified with `P^n` by its parametrization.
#[derive(Clone, Debug)]
pub struct QuadricProjection {
    pub forward: RationalMap,
    pub inverse: RationalMap,
    pub source: Hypersurface,
    pub target: Hypersurface,
    pub report: BirationalReport,
}

/// The inverse sends `h ∈ H` to `G(h) p - B(p, h) h`, the second point of
/// `Q` on the line through `p` and `h`, where `B(p, h) = ∇G(p) · h`.
pub fn quadric_projection(
    q: &Hypersurface,
    p: &Point,
    hyperplane: &LinearSubspace,
) -> Result<QuadricProjection> {
    if q.chart() != Chart::Projective {
        return Err(Error::ChartMismatch("expected a projective quadric".into()));
    }
    if q.degree() != 2 {
        return Err(Error::DegreeMismatch(format!(
            "expected a quadric, got degree {}",
            q.degree()
        )));
    }
    let field = q.field();
    let n2 = q.nvars();
    if hyperplane.ambient() != n2 || hyperplane.dim() + 2 != n2 {
        return Err(Error::InvalidArgument(format!(
            "expected a hyperplane of P^{}",
            n2 - 1
        )));
    }
    if !point_on(q, p)? {
        return Err(Error::PointNotOnHypersurface);
    }
    if !is_smooth_at(q, p)? {
        return Err(Error::SingularPoint);
    }
    let m = hyperplane.matrix();
    let mut frame = Matrix::zeros(field, n2, n2);
    for r in 0..n2 {
        frame.set(r, 0, p.coords()[r].clone());
        for c in 0..n2 - 1 {
            frame.set(r, c + 1, m.get(r, c).clone());
        }
    }
    let inv = frame.inverse().map_err(|e| match e {
        Error::RankDeficient => Error::PointInHyperplane,
        e => e,
    })?;
    let forward_coords = (1..n2)
        .map(|r| Polynomial::linear_form(field, inv.row(r)))
        .collect();
    let forward = RationalMap::from_polynomials(Chart::Projective, Chart::Projective, forward_coords)?;

    let h = hyperplane.coordinate_forms();
    let g_of_h = q.defining().substitute(&h)?;
    let grad_p = q
        .defining()
        .gradient()
        .iter()
        .map(|g| g.eval(p.coords()))
        .collect::<Result<Vec<_>>>()?;
    let bilinear = grad_p
        .iter()
        .zip(&h)
        .fold(Polynomial::zero(field, n2 - 1), |acc, (c, hi)| &acc + &hi.scale(c));
    let inverse_coords = (0..n2)
        .map(|i| &g_of_h.scale(&p.coords()[i]) - &(&bilinear * &h[i]))
        .collect();
    let inverse = RationalMap::from_polynomials(Chart::Projective, Chart::Projective, inverse_coords)?;
    let target = Hypersurface::ambient_space(field, n2 - 1, Chart::Projective);
    let report = verify_birational(&forward, &inverse, q, &target)?;
    Ok(QuadricProjection {
        forward,
        inverse,
        source: q.clone(),
        target,
        report,
    })
}

/// `X = (H_low x_(n+1) + H_high = 0) ⊂ P^(n+1)`, projected from
/// `(0 : ... : 0 : 1)`.
#[derive(Clone, Debug)]
pub struct Monoid {
    pub forward: RationalMap,
    pub inverse: RationalMap,
    pub surface: Hypersurface,
    pub base: Hypersurface,
    pub report: BirationalReport,
}

/// `h_low` and `h_high` are homogeneous in `x0..xn`, of degrees `d - 1` and
/// `d`. The inverse is `(H_low x_0 : ... : H_low x_n : -H_high)`.
pub fn monoid_param(h_low: &Polynomial, h_high: &Polynomial) -> Result<Monoid> {
    h_low.checked_add(h_high)?;
    if h_low.is_zero() {
        return Err(Error::InvalidArgument("H_low must be nonzero".into()));
    }
    if !h_low.is_homogeneous() || !h_high.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let dl = h_low.degree().expect("nonzero");
    if let Some(dh) = h_high.degree() {
        if dh != dl + 1 {
            return Err(Error::DegreeMismatch(format!(
                "H_high has degree {dh}, expected {}",
                dl + 1
            )));
        }
    }
    let g = gcd(h_low, h_high)?;
    if !g.is_one() {
        return Err(Error::CommonFactor(g.to_string()));
    }
    let field = h_low.field();
    let n1 = h_low.nvars();
    let last = Polynomial::var(field, n1 + 1, n1);
    let surface = Hypersurface::projective(&(&h_low.extend_vars(1) * &last) + &h_high.extend_vars(1))?;
    let forward = RationalMap::from_polynomials(
        Chart::Projective,
        Chart::Projective,
        (0..n1).map(|i| Polynomial::var(field, n1 + 1, i)).collect(),
    )?;
    let mut inverse_coords: Vec<Polynomial> = (0..n1)
        .map(|i| h_low * &Polynomial::var(field, n1, i))
        .collect();
    inverse_coords.push(-h_high);
    let inverse = RationalMap::from_polynomials(Chart::Projective, Chart::Projective, inverse_coords)?;
    let base = Hypersurface::ambient_space(field, n1, Chart::Projective);
    let report = verify_birational(&forward, &inverse, &surface, &base)?;
    Ok(Monoid {
        forward,
        inverse,
        surface,
        base,
        report,
    })
}
