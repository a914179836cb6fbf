//! Stereographic projection of the unit sphere and of a weighted quadric,
//! certified birational, plus the rational points it produces.

use birat::cli::points::enum_rational_points;
use birat::constructions::sphere_stereographic;
use birat::ratmap::{evaluate, verify_birational};
use birat::{FieldSpec, Result};
use birat::geom::Point;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> Result<()> {
    let q = FieldSpec::Q;
    let s = sphere_stereographic(2, &[q.one(), q.one()], q)?;
    println!("X: {}", s.source);
    println!("pi: {:?}", s.forward.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("pi^-1: {:?}", s.inverse.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    let report = verify_birational(&s.forward, &s.inverse, &s.source, &s.target)?;
    println!("certified: {}", report.certified());

    let y = Point::parse("1/2, 1/3", q)?;
    println!("pi^-1{y} = {:?}", evaluate(&s.inverse, &y)?.point().map(|p| p.to_string()));

    let weights = [q.from_i64(2), q.from_i64(-3), q.from_i64(5)];
    let w = sphere_stereographic(3, &weights, q)?;
    let report = verify_birational(&w.forward, &w.inverse, &w.source, &w.target)?;
    println!("{}: certified {}", w.source, report.certified());

    let one = BigRational::from_integer(BigInt::from(1));
    let pts = enum_rational_points(&[one], 3)?;
    println!("{} rational points on the circle from parameters of height <= 3:", pts.points.len());
    for p in &pts.points {
        println!("  {p}");
    }
    println!("  plus {}", pts.excluded);
    Ok(())
}
