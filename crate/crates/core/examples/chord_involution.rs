//! Chord-and-tangent on a plane cubic: the involution through a fixed point.

use birat::constructions::{chord_involution, chord_third_point};
use birat::geom::{points_over_prime_field, Hypersurface, Point};
use birat::poly::parse_polynomial;
use birat::{FieldSpec, Result};

fn main() -> Result<()> {
    let q = FieldSpec::Q;
    let c = Hypersurface::projective(parse_polynomial("x0^3 - x0*x2^2 - x1^2*x2", 3, q)?)?;
    let inf = Point::projective_i64(q, &[0, 1, 0])?;
    let tau = chord_involution(&c, &inf)?;
    println!("through the flex at infinity: {:?}", tau.map.projective_form().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    println!("certified: {}", tau.report.certified());

    let f = FieldSpec::prime(31)?;
    let c = Hypersurface::projective(parse_polynomial("x1^2*x2 - x0^3 - 7*x2^3", 3, f)?)?;
    let pts = points_over_prime_field(&c, 1 << 20)?;
    let p0 = &pts[1];
    let tau = chord_involution(&c, p0)?;
    println!("{} points over F31; involution through {p0} certified: {}", pts.len(), tau.report.certified());
    for p in pts.iter().filter(|p| *p != p0).take(5) {
        println!("  {p} -> {}", chord_third_point(&c, p0, p)?);
    }
    Ok(())
}
