//! Exact sparse polynomial arithmetic over Q and F_p.

use birat::poly::{gcd, parse_polynomial};
use birat::{FieldSpec, Polynomial, Result};

fn main() -> Result<()> {
    let q = FieldSpec::Q;
    let f = parse_polynomial("(x + y)^3 - 2*z*(x - y)^2 + 1/3", 3, q)?;
    println!("f = {f}");
    println!("df/dx = {}", f.partial_derivative(0)?);
    let g = parse_polynomial("x^2 - y^2", 3, q)?;
    let h = parse_polynomial("x^3 - x*y^2 + x^2*z - y^2*z", 3, q)?;
    println!("gcd({g}, {h}) = {}", gcd(&g, &h)?);
    let (quot, rem) = h.divide(&g)?;
    println!("h = ({quot}) * g + ({rem})");

    let cubic = parse_polynomial("x^3 + y^3 + z^3 - 3*x*y*z", 3, q)?;
    let euler = cubic
        .gradient()
        .iter()
        .enumerate()
        .fold(Polynomial::zero(q, 3), |acc, (i, g)| &acc + &(&Polynomial::var(q, 3, i) * g));
    println!("sum x_i dF/dx_i = {euler} = 3 F: {}", euler == cubic.scale(&q.from_i64(3)));

    let f5 = FieldSpec::prime(5)?;
    let a = parse_polynomial("x^5 + y^5", 2, f5)?;
    println!("over F5, grad(x^5 + y^5) = {:?}", a.gradient().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    Ok(())
}
