//! Generators for explicit birational maps and involutions. Every
//! constructor checks its own output: maps come back together with the
//! certificate that they restrict and invert as claimed.

mod cubic;
mod determinantal;
mod lines;
mod quadric;
mod quartic;

pub use cubic::{
    chord_involution, chord_third_point, cubic_two_planes_param, decompose_two_planes,
    ChordInvolution, CubicTwoPlanes, TwoPlaneTable,
};
pub use determinantal::{determinantal_pair, DeterminantalPair, Tensor};
pub use lines::{
    fermat_hypersurface, fermat_line_count, fermat_lines, pairings, roots_of_minus_one,
    FermatLine, FermatLines,
};
pub use quadric::{
    monoid_param, quadric_projection, sphere_stereographic, Monoid, QuadricProjection,
    Stereographic,
};
pub use quartic::{quartic_two_planes_involution, QuarticInvolution};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::geom::{subspaces_disjoint, Hypersurface, LinearSubspace};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};

/// Random form of degree `d` in `nvars` variables vanishing on both
/// coordinate planes of [`blocks`]. Nonzero with overwhelming probability.
pub fn random_through_coordinate_planes<R: Rng + ?Sized>(
    field: FieldSpec,
    nvars: usize,
    d: u32,
    rng: &mut R,
) -> Result<Polynomial> {
    let (a, b) = blocks(nvars)?;
    let support: Vec<Monomial> = Monomial::all_of_degree(nvars, d)
        .into_iter()
        .filter(|m| {
            let e = m.exponents();
            a.iter().any(|&i| e[i] > 0) && b.iter().any(|&i| e[i] > 0)
        })
        .collect();
    Ok(Polynomial::random_with_support(field, nvars, &support, rng))
}

/// Rewrites `x` in coordinates `z` with `x = M z`, where the columns of `M`
/// span `l1` and then `l2`. In the new coordinates `l1` and `l2` are the
/// two coordinate planes. Returns the transformed hypersurface and `M`.
pub fn split_coordinates(
    x: &Hypersurface,
    l1: &LinearSubspace,
    l2: &LinearSubspace,
) -> Result<(Hypersurface, Matrix)> {
    let n = x.nvars();
    if l1.ambient() != n || l2.ambient() != n || l1.dim() + l2.dim() + 2 != n || l1.dim() != l2.dim() {
        return Err(Error::InvalidArgument(
            "expected two n-planes of the same P^(2n+1)".into(),
        ));
    }
    if !subspaces_disjoint(l1, l2)? {
        return Err(Error::InvalidArgument("planes meet".into()));
    }
    let field = x.field();
    let k = l1.dim() + 1;
    let mut m = Matrix::zeros(field, n, n);
    for r in 0..n {
        for c in 0..k {
            m.set(r, c, l1.matrix().get(r, c).clone());
            m.set(r, c + k, l2.matrix().get(r, c).clone());
        }
    }
    let subs: Vec<Polynomial> = (0..n)
        .map(|r| Polynomial::linear_form(field, m.row(r)))
        .collect();
    let g = x.defining().substitute(&subs)?;
    Ok((Hypersurface::new(g, x.chart())?, m))
}

/// Index blocks `(0..=n, n+1..=2n+1)` of `P^(2n+1)`.
pub(crate) fn blocks(nvars: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if nvars < 4 || nvars % 2 != 0 {
        return Err(Error::InvalidHypersurface(format!(
            "two disjoint n-planes need P^(2n+1) with n >= 1, got {nvars} coordinates"
        )));
    }
    let half = nvars / 2;
    Ok(((0..half).collect(), (half..nvars).collect()))
}

/// First monomial of `f` not vanishing on one of the two coordinate planes.
pub(crate) fn plane_violation(f: &Polynomial, a: &[usize], b: &[usize]) -> Option<String> {
    f.terms().iter().find_map(|(m, _)| {
        let e = m.exponents();
        let da: u32 = a.iter().map(|&i| e[i]).sum();
        let db: u32 = b.iter().map(|&i| e[i]).sum();
        (da == 0 || db == 0).then(|| monomial_text(f, m))
    })
}

pub(crate) fn monomial_text(f: &Polynomial, m: &Monomial) -> String {
    Polynomial::monomial(f.field(), m.clone(), f.field().one()).to_string()
}
