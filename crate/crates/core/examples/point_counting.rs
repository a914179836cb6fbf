//! Brute-force point counts and the completeness of the stereographic
//! parametrization over prime fields.

use birat::cli::points::{all_points, excluded_locus, parametrized_points};
use birat::constructions::sphere_stereographic;
use birat::geom::{points_over_prime_field, Hypersurface};
use birat::poly::parse_polynomial;
use birat::{FieldSpec, Result};

fn main() -> Result<()> {
    for p in [5, 7, 11, 13] {
        let f = FieldSpec::prime(p)?;
        let s = sphere_stereographic(2, &[f.one(), f.from_i64(2)], f)?;
        let param = parametrized_points(&s)?;
        let slice = excluded_locus(&s)?;
        let all = all_points(&s)?;
        let mut union = param.clone();
        union.extend(slice.iter().cloned());
        println!("F{p}: {} parametrized + {} on the slice = {} of {} ({})", param.len(), slice.len(), union.len(), all.len(), union == all);
    }
    let f = FieldSpec::prime(13)?;
    let x = Hypersurface::projective(parse_polynomial("x0^3 + x1^3 + x2^3 + x3^3", 4, f)?)?;
    println!("Fermat cubic surface over F13: {} points", points_over_prime_field(&x, 1 << 20)?.len());
    Ok(())
}
