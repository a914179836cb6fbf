use crate::error::{Error, Result};
use crate::geom::{Chart, Hypersurface};
use crate::poly::Polynomial;
use crate::ratmap::{verify_birational, BirationalReport, RationalMap};

use super::{blocks, plane_violation};

/// Fourth intersection point of `X` with the transversal through `p` to
/// both coordinate planes.
#[derive(Clone, Debug)]
pub struct QuarticInvolution {
    pub map: RationalMap,
    pub report: BirationalReport,
}

/// With `F_k` the part of `F` of degree `k` in the first block,
/// `F(s a, t b) = s t (F_3 s^2 + F_2 s t + F_1 t^2)` and
/// `Φ(a; b) = (F_1 a : F_3 b)`.
pub fn quartic_two_planes_involution(x: &Hypersurface) -> Result<QuarticInvolution> {
    if x.chart() != Chart::Projective {
        return Err(Error::ChartMismatch("expected a projective quartic".into()));
    }
    if x.degree() != 4 {
        return Err(Error::DegreeMismatch(format!(
            "expected a quartic, got degree {}",
            x.degree()
        )));
    }
    let (a, b) = blocks(x.nvars())?;
    let f = x.defining();
    if let Some(m) = plane_violation(f, &a, &b) {
        return Err(Error::NotVanishingOnPlanes(m));
    }
    let f1 = f.block_component(&a, 1);
    let f3 = f.block_component(&a, 3);
    let field = x.field();
    let coords = (0..x.nvars())
        .map(|i| {
            let factor = if i < a.len() { &f1 } else { &f3 };
            factor * &Polynomial::var(field, x.nvars(), i)
        })
        .collect();
    let map = RationalMap::from_polynomials(Chart::Projective, Chart::Projective, coords)?;
    let report = verify_birational(&map, &map, x, x)?;
    Ok(QuarticInvolution { map, report })
}
