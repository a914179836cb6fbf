//! Degree invariants, volume forms and the cube criterion.

use birat::geom::Point;
use birat::invariants::{
    affine_volume_chart, classify_type, evaluate_volume_form, isomorphism_linearity_class,
    not_rational_by_degree, segre_criterion_i64, volume_form_dim,
};
use birat::poly::parse_polynomial;
use birat::{FieldSpec, Result};

fn main() -> Result<()> {
    println!(" n  d  type          forms  not-rational  isomorphisms");
    for n in 1..=3 {
        for d in 2..=n + 4 {
            println!(
                "{n:2} {d:2}  {:<12} {:>6}  {:<12}  {}",
                classify_type(d, n).to_string(),
                volume_form_dim(d, n).to_string(),
                not_rational_by_degree(d, n),
                isomorphism_linearity_class(n, d, d)
            );
        }
    }

    let q = FieldSpec::Q;
    let h = parse_polynomial("x^2 + y^2 - 1", 2, q)?;
    let p = Point::parse("3/5, 4/5", q)?;
    let v = vec![vec![q.parse_scalar("-4/5")?, q.parse_scalar("3/5")?]];
    for i in 0..2 {
        let chart = affine_volume_chart(&h, i)?;
        println!("sigma_{i} = {} evaluates to {}", chart.coefficient, evaluate_volume_form(&h, &chart, &p, &v)?);
    }

    for a in [[1, 1, 1, 1], [1, 2, 4, 8], [1, 1, 1, 2], [2, 3, 5, 7]] {
        println!("{a:?}: {}", segre_criterion_i64(a)?);
    }
    Ok(())
}
