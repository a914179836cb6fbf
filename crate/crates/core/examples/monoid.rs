//! A hypersurface with a point of multiplicity `d - 1` is rational:
//! projection from that point.

use birat::constructions::monoid_param;
use birat::poly::parse_polynomial;
use birat::{FieldSpec, Result};

fn main() -> Result<()> {
    let q = FieldSpec::Q;
    let low = parse_polynomial("x0^2 + x1*x2", 3, q)?;
    let high = parse_polynomial("x0^3 - x1^3 + x2^3", 3, q)?;
    let m = monoid_param(&low, &high)?;
    println!("X = {}", m.surface);
    for (i, c) in m.inverse.projective_form().iter().enumerate() {
        println!("  inverse[{i}] = {c}");
    }
    println!("certified: {}", m.report.certified());
    Ok(())
}
