//! Linear subspaces on Fermat hypersurfaces; the 27 lines of the cubic
//! surface over F7.

use birat::constructions::{fermat_line_count, fermat_lines};
use birat::{FieldSpec, Result};

fn main() -> Result<()> {
    let f7 = FieldSpec::prime(7)?;
    let lines = fermat_lines(3, 1, f7)?;
    println!("cube roots of -1 in F7: {:?}", lines.roots.iter().map(|r| r.to_string()).collect::<Vec<_>>());
    println!("{} lines (formula {})", lines.lines.len(), fermat_line_count(3, 1));
    for l in lines.lines.iter().take(6) {
        let eqs: Vec<String> = l.pairs.iter().zip(&l.eps).map(|(&(a, b), e)| format!("x{a} = {e} x{b}")).collect();
        println!("  {}", eqs.join(", "));
    }
    let f13 = FieldSpec::prime(13)?;
    let planes = fermat_lines(3, 2, f13)?;
    println!("planes on the Fermat cubic fourfold over F13: {} (formula {})", planes.lines.len(), fermat_line_count(3, 2));
    Ok(())
}
