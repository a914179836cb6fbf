//! Multivariate gcd over a field.
//!
//! Strategy: split off the monomial content, try cheap exact-division
//! shortcuts, then attempt a coprimality certificate by univariate
//! specialization; only when that fails fall back to a recursive primitive
//! pseudo-remainder sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

use super::{Monomial, Polynomial, UniPoly};

/// Monic gcd; `gcd(f, 0)` is `f` made monic and `gcd(0, 0)` is an error.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.check_compatible(g)?;
    match (f.is_zero(), g.is_zero()) {
        (true, true) => Err(Error::GcdOfZeros),
        (true, false) => Ok(g.monic()),
        (false, true) => Ok(f.monic()),
        (false, false) => Ok(gcd_nonzero(f, g)),
    }
}

/// Gcd of a list, skipping zeros; an error if every entry is zero.
pub fn gcd_many(polys: &[Polynomial]) -> Result<Polynomial> {
    let mut acc: Option<Polynomial> = None;
    for p in polys.iter().filter(|p| !p.is_zero()) {
        acc = Some(match acc {
            None => p.monic(),
            Some(a) => gcd(&a, p)?,
        });
        if acc.as_ref().is_some_and(Polynomial::is_one) {
            break;
        }
    }
    acc.ok_or(Error::GcdOfZeros)
}

/// Monic least common multiple of two nonzero polynomials.
pub fn lcm(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let d = gcd(f, g)?;
    let prod = f.checked_mul(g)?;
    Ok(prod
        .exact_div(&d)?
        .expect("gcd divides the product")
        .monic())
}

fn monomial_content(p: &Polynomial) -> Monomial {
    let mut it = p.terms().iter().map(|(m, _)| m);
    let first = it.next().expect("nonzero").clone();
    it.fold(first, |acc, m| acc.gcd(m))
}

fn divide_by_monomial(p: &Polynomial, m: &Monomial) -> Polynomial {
    if m.degree() == 0 {
        return p.clone();
    }
    Polynomial {
        field: p.field,
        nvars: p.nvars,
        terms: p
            .terms
            .iter()
            .map(|(t, c)| (m.quotient_of(t), c.clone()))
            .collect(),
    }
}

fn gcd_nonzero(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, mg) = (monomial_content(f), monomial_content(g));
    let mono = mf.gcd(&mg);
    let core = gcd_primitive(&divide_by_monomial(f, &mf), &divide_by_monomial(g, &mg));
    core.mul_term(&mono, &f.field.one()).monic()
}

/// Gcd of two nonzero polynomials, neither divisible by a variable.
fn gcd_primitive(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let one = Polynomial::one(f.field, f.nvars);
    if f.is_constant() || g.is_constant() {
        return one;
    }
    let (uf, ug) = (f.variables_used(), g.variables_used());
    let common: Vec<usize> = (0..f.nvars).filter(|&i| uf[i] && ug[i]).collect();
    if common.is_empty() {
        return one;
    }
    if f == g {
        return f.monic();
    }
    for (a, b) in [(f, g), (g, f)] {
        if b.degree() <= a.degree() && b.num_terms() <= a.num_terms() {
            if let Ok(Some(_)) = a.exact_div(b) {
                return b.monic();
            }
        }
    }
    if coprime_certificate(f, g, &common) {
        return one;
    }
    let var = *common
        .iter()
        .min_by_key(|&&v| f.degree_in(v).max(g.degree_in(v)))
        .expect("nonempty");
    gcd_recursive(f, g, var)
}

fn random_scalar(field: &FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-1000..=1000)),
        FieldSpec::PrimeField(_) => field.random(rng),
    }
}

/// Proves `gcd(f, g) = 1` when it succeeds. For each variable `x_k` shared by
/// both inputs, specialize the others at a point where the leading
/// coefficient of `f` in `x_k` survives; a true common factor of positive
/// degree in `x_k` would survive as a common univariate factor. Returns
/// `false` if no proof was found (which does not imply a common factor).
fn coprime_certificate(f: &Polynomial, g: &Polynomial, common: &[usize]) -> bool {
    let field = f.field;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_9cd1);
    'vars: for &k in common {
        let lead = f.coefficients_in(k).pop().expect("nonzero");
        for _ in 0..3 {
            let point: Vec<Scalar> = (0..f.nvars).map(|_| random_scalar(&field, &mut rng)).collect();
            if field.is_zero(&lead.eval(&point).expect("arity")) {
                continue;
            }
            let uf = UniPoly::specialize(f, k, &point);
            let ug = UniPoly::specialize(g, k, &point);
            if uf.gcd(&ug).degree() == Some(0) {
                continue 'vars;
            }
        }
        return false;
    }
    true
}

fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    gcd_many(&p.coefficients_in(var)).expect("nonzero polynomial")
}

fn primitive_part(p: &Polynomial, var: usize) -> Polynomial {
    let c = content_in(p, var);
    let pp = if c.is_one() {
        p.clone()
    } else {
        p.exact_div(&c).expect("compatible").expect("content divides")
    };
    pp.monic()
}

/// `lc(b)^k * a mod b` with respect to `var`, computed term by term.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let nv = a.nvars;
    let db = b.degree_in(var);
    let lb = b.coefficients_in(var).pop().expect("nonzero");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coefficients_in(var).pop().expect("nonzero");
        let mut shift = vec![0u32; nv];
        shift[var] = dr - db;
        let shifted = b.mul_term(&Monomial::new(&shift), &a.field.one());
        r = &(&lb * &r) - &(&lr * &shifted);
    }
    r
}

fn gcd_recursive(f: &Polynomial, g: &Polynomial, var: usize) -> Polynomial {
    let cont = gcd(&content_in(f, var), &content_in(g, var)).expect("nonzero");
    let (mut a, mut b) = (primitive_part(f, var), primitive_part(g, var));
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == 0 {
            b = Polynomial::one(f.field, f.nvars);
            break;
        }
        a = b;
        b = primitive_part(&r, var);
    }
    (&cont * &primitive_part(&b, var)).monic()
}
