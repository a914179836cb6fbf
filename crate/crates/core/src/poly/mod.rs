//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept in graded lexicographic order with variable 0 highest,
//! leading term first. No zero coefficients and no duplicate monomials are
//! ever stored, so structural equality is mathematical equality.

mod gcd;
mod parse;
mod univariate;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

pub use gcd::{gcd, gcd_many, lcm};
pub use parse::{parse_polynomial, parse_rational_expression, variable_name};
pub(crate) use parse::{parse_fraction_at, parse_polynomial_at};
pub use univariate::UniPoly;

type Exps = SmallVec<[u32; 8]>;

/// Exponent vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Exps,
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: other.degree - self.degree,
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    /// Every monomial of total degree `d` in `nvars` variables, in canonical
    /// (descending) order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur.push(left);
                out.push(Monomial::new(cur));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                rec(nvars, i + 1, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(nvars, 0, d, &mut Vec::with_capacity(nvars), &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.as_slice().cmp(other.exps.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// A polynomial over a [`FieldSpec`] in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolynomialRepr", into = "PolynomialRepr")]
pub struct Polynomial {
    field: FieldSpec,
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

/// Wire form: term list of (exponent vector, coefficient string) pairs in
/// canonical order.
#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    field: String,
    nvars: usize,
    terms: Vec<(Vec<u32>, String)>,
}

impl From<Polynomial> for PolynomialRepr {
    fn from(p: Polynomial) -> Self {
        PolynomialRepr {
            field: p.field.to_string(),
            nvars: p.nvars,
            terms: p
                .terms
                .iter()
                .map(|(m, c)| (m.exponents().to_vec(), c.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<PolynomialRepr> for Polynomial {
    type Error = Error;

    fn try_from(r: PolynomialRepr) -> Result<Self> {
        let field: FieldSpec = r.field.parse()?;
        let terms = r
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), field.parse_scalar(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(field, r.nvars, terms)
    }
}

/// Memoized powers of the substituted values, one list per variable.
struct PowerCache<T, F: Fn(&T, &T) -> T> {
    powers: Vec<Vec<T>>,
    mul: F,
}

impl<T: Clone, F: Fn(&T, &T) -> T> PowerCache<T, F> {
    fn new(bases: Vec<T>, one: T, mul: F) -> Self {
        PowerCache {
            powers: bases.into_iter().map(|b| vec![one.clone(), b]).collect(),
            mul,
        }
    }

    fn get(&mut self, var: usize, e: u32) -> &T {
        let e = e as usize;
        while self.powers[var].len() <= e {
            let last = self.powers[var].last().unwrap();
            let next = (self.mul)(last, &self.powers[var][1]);
            self.powers[var].push(next);
        }
        &self.powers[var][e]
    }
}

impl Polynomial {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        if field.is_zero(&c) {
            return Self::zero(field, nvars);
        }
        Polynomial {
            field,
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range for {nvars} variables");
        Polynomial {
            field,
            nvars,
            terms: vec![(Monomial::var(nvars, i), field.one())],
        }
    }

    pub fn monomial(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        if field.is_zero(&c) {
            return Self::zero(field, nvars);
        }
        Polynomial {
            field,
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary (exponents, coefficient) pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms<I>(field: FieldSpec, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            if !field.contains(&c) {
                return Err(Error::CoefficientNotInField(c.to_string()));
            }
            accumulate(&field, &mut acc, Monomial::new(&e), c);
        }
        Ok(Self::from_map(field, nvars, acc))
    }

    fn from_map(field: FieldSpec, nvars: usize, acc: HashMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            field,
            nvars,
            terms,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.degree == 0)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.field.is_one(&self.terms[0].1)
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(m, c)] if m.degree == 0 => Some(c.clone()),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exps[var]).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.degree(), self.min_degree()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    /// Which variables occur in some term.
    pub fn variables_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for (i, e) in m.exps.iter().enumerate() {
                if *e > 0 {
                    used[i] = true;
                }
            }
        }
        used
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let other_coeff = |c: &Scalar| if negate { f.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), other_coeff(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        f.sub(&a[i].1, &b[j].1)
                    } else {
                        f.add(&a[i].1, &b[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), other_coeff(c))));
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let f = &self.field;
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(f, &mut acc, ma.mul(mb), f.mul(ca, cb));
            }
        }
        Polynomial::from_map(self.field, self.nvars, acc)
    }

    /// Multiplication by a single term preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let f = &self.field;
        if f.is_zero(c) {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), f.mul(tc, c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if self.field.is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    /// Formal partial derivative; coefficients are multiplied by the former
    /// exponent as a field element, so `d/dx x^p = 0` over `F_p`.
    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let c = f.multiple(c, e as u64);
            if f.is_zero(&c) {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] -= 1;
            terms.push((
                Monomial {
                    degree: m.degree - 1,
                    exps,
                },
                c,
            ));
        }
        // Lowering one exponent of every term by one keeps the relative order.
        Ok(Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms,
        })
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Inserts a new variable at `slot` and pads every term to the total degree.
    pub fn homogenize(&self, slot: usize) -> Result<Polynomial> {
        if slot > self.nvars {
            return Err(Error::VariableOutOfRange {
                index: slot,
                nvars: self.nvars + 1,
            });
        }
        let d = self.degree().unwrap_or(0);
        Ok(self.homogenize_to(slot, d))
    }

    /// Homogenizes to a prescribed degree `d >= deg self`.
    pub(crate) fn homogenize_to(&self, slot: usize, d: u32) -> Polynomial {
        let mut acc = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps.insert(slot, d - m.degree);
            acc.insert(Monomial { degree: d, exps }, c.clone());
        }
        Polynomial::from_map(self.field, self.nvars + 1, acc)
    }

    /// Sets the variable at `slot` to 1 and removes it.
    pub fn dehomogenize(&self, slot: usize) -> Result<Polynomial> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        self.specialize_to_one(slot)
    }

    /// Substitutes 1 for a variable and drops it; no homogeneity required.
    pub fn specialize_to_one(&self, slot: usize) -> Result<Polynomial> {
        if slot >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: slot,
                nvars: self.nvars,
            });
        }
        let f = &self.field;
        let mut acc = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            let e = exps.remove(slot);
            accumulate(
                f,
                &mut acc,
                Monomial {
                    degree: m.degree - e,
                    exps,
                },
                c.clone(),
            );
        }
        Ok(Polynomial::from_map(self.field, self.nvars - 1, acc))
    }

    /// Multivariate division by a single divisor under the canonical order.
    /// Returns `(quotient, remainder)` with `self = quotient * h + remainder`
    /// and no remainder term divisible by the leading term of `h`.
    pub fn divide(&self, h: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_compatible(h)?;
        if h.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r, _) = self.divide_impl(h, false);
        Ok((q, r))
    }

    /// `Some(q)` with `self = q * h` when `h` divides `self`, else `None`.
    pub fn exact_div(&self, h: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_compatible(h)?;
        if h.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        if h.degree() > self.degree() {
            return Ok(None);
        }
        let (q, _, exact) = self.divide_impl(h, true);
        Ok(exact.then_some(q))
    }

    /// Whether `h` divides `self` (the remainder of single-divisor division is zero).
    pub fn is_divisible_by(&self, h: &Polynomial) -> Result<bool> {
        Ok(self.exact_div(h)?.is_some())
    }

    fn divide_impl(&self, h: &Polynomial, stop_early: bool) -> (Polynomial, Polynomial, bool) {
        use std::collections::BTreeMap;
        let f = &self.field;
        let (lm, lc) = &h.terms[0];
        let lc_inv = f.inv(lc).expect("nonzero leading coefficient");
        let mut work: BTreeMap<Monomial, Scalar> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        while let Some((m, c)) = work.pop_last() {
            if !lm.divides(&m) {
                if stop_early {
                    return (Polynomial::zero(self.field, self.nvars), self.clone(), false);
                }
                rem.push((m, c));
                continue;
            }
            let tm = lm.quotient_of(&m);
            let tc = f.mul(&c, &lc_inv);
            for (hm, hc) in &h.terms[1..] {
                let key = hm.mul(&tm);
                let delta = f.mul(hc, &tc);
                match work.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(f.neg(&delta));
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let v = f.sub(o.get(), &delta);
                        if f.is_zero(&v) {
                            o.remove();
                        } else {
                            *o.get_mut() = v;
                        }
                    }
                }
            }
            quot.push((tm, tc));
        }
        let exact = rem.is_empty();
        (
            Polynomial {
                field: self.field,
                nvars: self.nvars,
                terms: quot,
            },
            Polynomial {
                field: self.field,
                nvars: self.nvars,
                terms: rem,
            },
            exact,
        )
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        if let Some(bad) = point.iter().find(|s| !self.field.contains(s)) {
            return Err(Error::CoefficientNotInField(bad.to_string()));
        }
        let f = self.field;
        let mut cache = PowerCache::new(point.to_vec(), f.one(), |a, b| f.mul(a, b));
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.exps.iter().enumerate() {
                if *e > 0 {
                    t = f.mul(&t, cache.get(i, *e));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Replaces variable `i` by `subs[i]`; the result lives in the ring of
    /// the substituted polynomials.
    pub fn substitute(&self, subs: &[Polynomial]) -> Result<Polynomial> {
        if subs.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: subs.len(),
            });
        }
        let Some(first) = subs.first() else {
            // No variables: self is a constant.
            return Ok(self.clone());
        };
        for s in subs {
            first.check_compatible(s)?;
            if s.field != self.field {
                return Err(Error::FieldMismatch(
                    self.field.to_string(),
                    s.field.to_string(),
                ));
            }
        }
        let (field, nv) = (self.field, first.nvars);
        let mut cache = PowerCache::new(subs.to_vec(), Polynomial::one(field, nv), |a, b| a * b);
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(field, nv, c.clone());
            for (i, e) in m.exps.iter().enumerate() {
                if *e > 0 {
                    t = &t * cache.get(i, *e);
                }
            }
            for (tm, tc) in t.terms {
                accumulate(&field, &mut acc, tm, tc);
            }
        }
        Ok(Polynomial::from_map(field, nv, acc))
    }

    /// Re-embeds into `nvars` variables, sending variable `i` to `mapping[i]`.
    pub fn relabel(&self, nvars: usize, mapping: &[usize]) -> Result<Polynomial> {
        if mapping.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: mapping.len(),
            });
        }
        if let Some(&bad) = mapping.iter().find(|&&j| j >= nvars) {
            return Err(Error::VariableOutOfRange { index: bad, nvars });
        }
        let mut acc = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps: Exps = SmallVec::from_elem(0, nvars);
            for (i, e) in m.exps.iter().enumerate() {
                exps[mapping[i]] += e;
            }
            accumulate(
                &self.field,
                &mut acc,
                Monomial {
                    degree: m.degree,
                    exps,
                },
                c.clone(),
            );
        }
        Ok(Polynomial::from_map(self.field, nvars, acc))
    }

    /// Appends `extra` unused variables at the end.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        let mapping: Vec<usize> = (0..self.nvars).collect();
        self.relabel(self.nvars + extra, &mapping)
            .expect("identity embedding is valid")
    }

    /// Part of total degree `d`.
    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == d)
                .cloned()
                .collect(),
        }
    }

    /// Terms whose degree in the variables `block` equals `d`.
    pub fn block_component(&self, block: &[usize], d: u32) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| block.iter().map(|&i| m.exps[i]).sum::<u32>() == d)
                .cloned()
                .collect(),
        }
    }

    /// Coefficients with respect to one variable: `self = sum_k c_k * x_var^k`,
    /// where the `c_k` do not involve `x_var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exps[var];
            let mut exps = m.exps.clone();
            exps[var] = 0;
            buckets[e as usize].push((
                Monomial {
                    degree: m.degree - e,
                    exps,
                },
                c.clone(),
            ));
        }
        buckets
            .into_iter()
            .map(|mut terms| {
                terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Polynomial {
                    field: self.field,
                    nvars: self.nvars,
                    terms,
                }
            })
            .collect()
    }

    /// Maps the coefficients into another field (for instance `Q -> F_p`).
    pub fn to_field(&self, target: FieldSpec) -> Result<Polynomial> {
        let mut acc = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let c = match (c, target) {
                (Scalar::Rational(q), t) => t.from_rational(q)?,
                (Scalar::Residue(r), FieldSpec::PrimeField(_)) if self.field == target => {
                    Scalar::Residue(*r)
                }
                _ => {
                    return Err(Error::FieldMismatch(
                        self.field.to_string(),
                        target.to_string(),
                    ))
                }
            };
            accumulate(&target, &mut acc, m.clone(), c);
        }
        Ok(Polynomial::from_map(target, self.nvars, acc))
    }

    /// Random polynomial whose support is drawn from the given monomials.
    pub fn random_with_support<R: Rng + ?Sized>(
        field: FieldSpec,
        nvars: usize,
        support: &[Monomial],
        rng: &mut R,
    ) -> Polynomial {
        let mut acc = HashMap::new();
        for m in support {
            accumulate(&field, &mut acc, m.clone(), field.random(rng));
        }
        Polynomial::from_map(field, nvars, acc)
    }

    /// Dense random homogeneous polynomial of degree `d`.
    pub fn random_homogeneous<R: Rng + ?Sized>(
        field: FieldSpec,
        nvars: usize,
        d: u32,
        rng: &mut R,
    ) -> Polynomial {
        Self::random_with_support(field, nvars, &Monomial::all_of_degree(nvars, d), rng)
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear_form(field: FieldSpec, coeffs: &[Scalar]) -> Polynomial {
        let n = coeffs.len();
        let mut acc = HashMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            accumulate(&field, &mut acc, Monomial::var(n, i), c.clone());
        }
        Polynomial::from_map(field, n, acc)
    }
}

fn accumulate(f: &FieldSpec, acc: &mut HashMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    match acc.entry(m) {
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::hash_map::Entry::Occupied(mut o) => {
            let v = f.add(o.get(), &c);
            *o.get_mut() = v;
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics on field or arity mismatch; use [`Polynomial::checked_add`] otherwise.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&self.field.neg(&self.field.one()))
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    /// Canonical printer, inverse of [`parse_polynomial`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    if *e == 1 {
                        variable_name(i)
                    } else {
                        format!("{}^{}", variable_name(i), e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if field.is_one(&abs) {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {} vars] {}", self.field, self.nvars, self)
    }
}
