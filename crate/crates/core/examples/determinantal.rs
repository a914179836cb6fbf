//! Two quartic surfaces cut out by the projections of four bilinear
//! equations on `P^3 x P^3`, and the Cramer maps between them.

use birat::constructions::{determinantal_pair, Tensor};
use birat::{FieldSpec, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let f = FieldSpec::prime(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pair = determinantal_pair(&Tensor::random(f, &mut rng))?;
    println!("det B has {} terms, det C has {}", pair.xb.defining().num_terms(), pair.xc.defining().num_terms());
    println!("Cramer map degree {}", pair.cramer.degree());
    println!("restricts both ways: {} {}", pair.cramer_restricts, pair.back_restricts);
    println!("certified: {}", pair.certified());

    let diag = determinantal_pair(&Tensor::diagonal(f))?;
    println!("diagonal tensor: det B = {}, Cramer map {:?}", diag.xb.defining(),
        diag.cramer.projective_form().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    Ok(())
}
