//! Rational functions and rational maps between affine and projective
//! spaces, with exact restriction and birationality certificates.
//!
//! Every map carries a canonical projective form: a tuple of homogeneous
//! polynomials of equal degree without common factor, whose first nonzero
//! entry has leading coefficient 1. For an affine source the homogenizing
//! variable is inserted at slot 0; for an affine target slot 0 of the tuple is
//! the common denominator. Two maps are equal iff their canonical forms are.
//!
//! Definedness is judged on the canonical form only. A map may extend to a
//! point where every entry of that form vanishes, through a representative
//! that is not a polynomial multiple of it; [`evaluate`] reports such points
//! as [`Evaluation::Undefined`].

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::geom::{Chart, Hypersurface, Point};
use crate::poly::{gcd, gcd_many, lcm, Polynomial};

/// Reduced quotient `num / den` with monic `den`; zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        num.checked_add(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.field(), num.nvars()));
        }
        let g = gcd(&num, &den)?;
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g)?.expect("gcd divides"),
                den.exact_div(&g)?.expect("gcd divides"),
            )
        };
        let f = num.field();
        let lc = den.leading_coefficient().expect("nonzero").clone();
        if !f.is_one(&lc) {
            let inv = f.inv(&lc)?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        let den = Polynomial::one(p.field(), p.nvars());
        RationalFunction { num: p, den }
    }

    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Self::polynomial(Polynomial::zero(field, nvars))
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Self::polynomial(Polynomial::var(field, nvars, i))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Scalar]) -> Result<Option<Scalar>> {
        let f = self.field();
        let d = self.den.eval(point)?;
        if f.is_zero(&d) {
            return Ok(None);
        }
        Ok(Some(f.div(&self.num.eval(point)?, &d)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let l = lcm(&self.den, &other.den)?;
        let a = &self.num * &l.exact_div(&self.den)?.expect("lcm");
        let b = &other.num * &l.exact_div(&other.den)?.expect("lcm");
        Self::new(&a + &b, l)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(
            self.num.checked_mul(&other.den)?,
            self.den.checked_mul(&other.num)?,
        )
    }

    /// Composes with `subs`, one rational function per variable, all in a
    /// common ring. The substituted entries are brought to one common
    /// denominator first, so only a single gcd is taken at the end.
    pub fn substitute(&self, subs: &[RationalFunction]) -> Result<Self> {
        let (nums, common) = common_denominator(subs)?;
        let lift = |p: &Polynomial| -> Result<(Polynomial, u32)> {
            let d = p.degree().unwrap_or(0);
            let mut args = Vec::with_capacity(nums.len() + 1);
            args.push(common.clone());
            args.extend(nums.iter().cloned());
            // p(N / D) = p^h(D, N) / D^deg p
            Ok((p.homogenize(0)?.substitute(&args)?, d))
        };
        let (a, da) = lift(&self.num)?;
        let (b, db) = lift(&self.den)?;
        if b.is_zero() {
            return Err(Error::CompositionUndefined);
        }
        // (A / D^da) / (B / D^db)
        let (num, den) = if da >= db {
            (a, &b * &common.pow(da - db))
        } else {
            (&a * &common.pow(db - da), b)
        };
        Self::new(num, den)
    }
}

/// Numerators over the least common denominator of `fs`.
fn common_denominator(fs: &[RationalFunction]) -> Result<(Vec<Polynomial>, Polynomial)> {
    let first = fs
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty tuple".into()))?;
    let mut l = first.den.clone();
    for f in &fs[1..] {
        if !f.den.is_one() && f.den != l {
            l = lcm(&l, &f.den)?;
        }
    }
    let nums = fs
        .iter()
        .map(|f| {
            if f.den == l {
                Ok(f.num.clone())
            } else {
                Ok(&f.num * &l.exact_div(&f.den)?.expect("lcm"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((nums, l))
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            // Parenthesized so that the output reparses to the same quotient.
            let wrap = |p: &Polynomial, product: bool| {
                let s = p.to_string();
                if p.num_terms() > 1 || s.contains('/') || (product && s.contains('*')) {
                    format!("({s})")
                } else {
                    s
                }
            };
            write!(f, "{}/{}", wrap(&self.num, false), wrap(&self.den, true))
        }
    }
}

/// A rational map with both its coordinate functions and its canonical
/// projective form.
///
/// `coords` are written in the source's own variables: affine coordinates of
/// the image for an affine target, the entries of the canonical form for a
/// projective target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    source_chart: Chart,
    target_chart: Chart,
    source_vars: usize,
    coords: Vec<RationalFunction>,
    projective: Vec<Polynomial>,
}

impl RationalMap {
    /// Builds a map from coordinate functions in the source variables.
    /// For a projective source every entry must be homogeneous, of degree 0
    /// for an affine target and of one common degree for a projective one.
    pub fn new(
        source_chart: Chart,
        target_chart: Chart,
        coords: Vec<RationalFunction>,
    ) -> Result<Self> {
        let first = coords
            .first()
            .ok_or_else(|| Error::InvalidArgument("a map needs at least one coordinate".into()))?;
        let (field, nv) = (first.field(), first.nvars());
        for c in &coords {
            c.num.checked_add(&first.num)?;
        }
        let mut tuple = Vec::with_capacity(coords.len() + 1);
        if target_chart == Chart::Affine {
            tuple.push(RationalFunction::polynomial(Polynomial::one(field, nv)));
        }
        tuple.extend(coords.iter().cloned());
        if source_chart == Chart::Projective {
            check_projective_entries(&tuple)?;
        }
        if tuple.iter().all(RationalFunction::is_zero) {
            return Err(Error::ZeroMap);
        }
        let (polys, _) = common_denominator(&tuple)?;
        let polys = match source_chart {
            Chart::Projective => polys,
            Chart::Affine => {
                let d = polys.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
                polys.iter().map(|p| p.homogenize_to(0, d)).collect()
            }
        };
        Self::from_projective(source_chart, target_chart, polys)
    }

    /// Builds a map from a tuple of homogeneous polynomials of equal degree
    /// in the homogeneous source coordinates (slot 0 first for an affine
    /// source). For an affine target, entry 0 is the denominator.
    pub fn from_projective(
        source_chart: Chart,
        target_chart: Chart,
        polys: Vec<Polynomial>,
    ) -> Result<Self> {
        let canonical = canonical_form(polys)?;
        let hv = canonical[0].nvars();
        if target_chart == Chart::Affine && canonical[0].is_zero() {
            return Err(Error::ZeroMap);
        }
        let source_vars = match source_chart {
            Chart::Projective => hv,
            Chart::Affine => hv - 1,
        };
        let local = |p: &Polynomial| -> Polynomial {
            match source_chart {
                Chart::Projective => p.clone(),
                Chart::Affine => p.specialize_to_one(0).expect("slot 0 exists"),
            }
        };
        let coords = match target_chart {
            Chart::Projective => canonical
                .iter()
                .map(|p| RationalFunction::polynomial(local(p)))
                .collect(),
            Chart::Affine => {
                let den = local(&canonical[0]);
                canonical[1..]
                    .par_iter()
                    .map(|p| RationalFunction::new(local(p), den.clone()))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(RationalMap {
            source_chart,
            target_chart,
            source_vars,
            coords,
            projective: canonical,
        })
    }

    /// Polynomial coordinate functions.
    pub fn from_polynomials(
        source_chart: Chart,
        target_chart: Chart,
        polys: Vec<Polynomial>,
    ) -> Result<Self> {
        Self::new(
            source_chart,
            target_chart,
            polys.into_iter().map(RationalFunction::polynomial).collect(),
        )
    }

    pub fn identity(field: FieldSpec, chart: Chart, nvars: usize) -> Self {
        let coords = (0..nvars)
            .map(|i| Polynomial::var(field, nvars, i))
            .collect();
        Self::from_polynomials(chart, chart, coords).expect("identity is a valid map")
    }

    pub fn source_chart(&self) -> Chart {
        self.source_chart
    }

    pub fn target_chart(&self) -> Chart {
        self.target_chart
    }

    /// Number of source coordinates (homogeneous ones when projective).
    pub fn source_vars(&self) -> usize {
        self.source_vars
    }

    /// Number of target coordinates (homogeneous ones when projective).
    pub fn target_vars(&self) -> usize {
        self.coords.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.projective[0].field()
    }

    pub fn coords(&self) -> &[RationalFunction] {
        &self.coords
    }

    pub fn projective_form(&self) -> &[Polynomial] {
        &self.projective
    }

    /// Common degree of the canonical projective form.
    pub fn degree(&self) -> u32 {
        self.projective
            .iter()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// Canonical form specialized to the source's own coordinates.
    fn local_projective(&self) -> Vec<Polynomial> {
        match self.source_chart {
            Chart::Projective => self.projective.clone(),
            Chart::Affine => self
                .projective
                .iter()
                .map(|p| p.specialize_to_one(0).expect("slot 0 exists"))
                .collect(),
        }
    }
}

fn check_projective_entries(tuple: &[RationalFunction]) -> Result<()> {
    let mut degree: Option<i64> = None;
    for c in tuple.iter().filter(|c| !c.is_zero()) {
        if !c.num.is_homogeneous() || !c.den.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let d = c.num.degree().unwrap_or(0) as i64 - c.den.degree().unwrap_or(0) as i64;
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => {
                return Err(Error::DegreeMismatch(format!(
                    "coordinates of degrees {e} and {d} on a projective source"
                )))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// Divides out the gcd and scales the first nonzero entry to be monic.
fn canonical_form(polys: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let first = polys
        .first()
        .ok_or_else(|| Error::InvalidArgument("a map needs at least one coordinate".into()))?;
    for p in &polys {
        p.checked_add(first)?;
    }
    let nonzero: Vec<&Polynomial> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroMap);
    }
    let d = nonzero[0].degree();
    if nonzero
        .iter()
        .any(|p| !p.is_homogeneous() || p.degree() != d)
    {
        return Err(Error::DegreeMismatch(
            "projective form needs homogeneous entries of one degree".into(),
        ));
    }
    let g = gcd_many(&polys)?;
    let reduced: Vec<Polynomial> = if g.is_one() {
        polys
    } else {
        polys
            .par_iter()
            .map(|p| p.exact_div(&g).map(|q| q.expect("gcd divides")))
            .collect::<Result<Vec<_>>>()?
    };
    let lead = reduced
        .iter()
        .find(|p| !p.is_zero())
        .and_then(Polynomial::leading_coefficient)
        .expect("nonzero entry")
        .clone();
    let field = reduced[0].field();
    if field.is_one(&lead) {
        return Ok(reduced);
    }
    let inv = field.inv(&lead)?;
    Ok(reduced.iter().map(|p| p.scale(&inv)).collect())
}

/// Canonical map of the given coordinate functions.
pub fn normalize(
    source_chart: Chart,
    target_chart: Chart,
    coords: Vec<RationalFunction>,
) -> Result<RationalMap> {
    RationalMap::new(source_chart, target_chart, coords)
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        match self.target_chart {
            Chart::Affine => write!(f, "({})", parts.join(", ")),
            Chart::Projective => write!(f, "({})", parts.join(" : ")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Defined(Point),
    Undefined,
}

impl Evaluation {
    pub fn point(&self) -> Option<&Point> {
        match self {
            Evaluation::Defined(p) => Some(p),
            Evaluation::Undefined => None,
        }
    }
}

/// Evaluates the canonical form at `p`.
pub fn evaluate(map: &RationalMap, p: &Point) -> Result<Evaluation> {
    if p.chart() != map.source_chart {
        return Err(Error::ChartMismatch(format!(
            "{} point for a map from {} space",
            p.chart(),
            map.source_chart
        )));
    }
    if p.len() != map.source_vars {
        return Err(Error::ArityMismatch {
            expected: map.source_vars,
            found: p.len(),
        });
    }
    if p.field() != map.field() {
        return Err(Error::FieldMismatch(map.field().to_string(), p.field().to_string()));
    }
    let f = map.field();
    let h = p.homogeneous_coords();
    let values = map
        .projective
        .iter()
        .map(|q| q.eval(&h))
        .collect::<Result<Vec<_>>>()?;
    if values.iter().all(|v| f.is_zero(v)) {
        return Ok(Evaluation::Undefined);
    }
    match map.target_chart {
        Chart::Projective => Ok(Evaluation::Defined(Point::projective(f, values)?)),
        Chart::Affine => {
            if f.is_zero(&values[0]) {
                return Ok(Evaluation::Undefined);
            }
            let inv = f.inv(&values[0])?;
            let coords = values[1..].iter().map(|v| f.mul(v, &inv)).collect();
            Ok(Evaluation::Defined(Point::affine(f, coords)?))
        }
    }
}

/// `outer ∘ inner`: substitutes the canonical form of `inner` into that of
/// `outer` and normalizes.
pub fn compose(outer: &RationalMap, inner: &RationalMap) -> Result<RationalMap> {
    if inner.target_chart != outer.source_chart {
        return Err(Error::ChartMismatch(format!(
            "inner map lands in {} space, outer map starts in {} space",
            inner.target_chart, outer.source_chart
        )));
    }
    if inner.target_vars() != outer.source_vars {
        return Err(Error::ArityMismatch {
            expected: outer.source_vars,
            found: inner.target_vars(),
        });
    }
    if inner.field() != outer.field() {
        return Err(Error::FieldMismatch(
            outer.field().to_string(),
            inner.field().to_string(),
        ));
    }
    let polys = outer
        .projective
        .par_iter()
        .map(|q| q.substitute(&inner.projective))
        .collect::<Result<Vec<_>>>()?;
    if polys.iter().all(Polynomial::is_zero)
        || (outer.target_chart == Chart::Affine && polys[0].is_zero())
    {
        return Err(Error::CompositionUndefined);
    }
    RationalMap::from_projective(inner.source_chart, outer.target_chart, polys)
}

fn check_endpoints(map: &RationalMap, x: &Hypersurface, y: &Hypersurface) -> Result<()> {
    if map.source_chart != x.chart() || map.target_chart != y.chart() {
        return Err(Error::ChartMismatch(format!(
            "map from {} to {} space against hypersurfaces in {} and {} space",
            map.source_chart,
            map.target_chart,
            x.chart(),
            y.chart()
        )));
    }
    if map.source_vars != x.nvars() {
        return Err(Error::ArityMismatch {
            expected: x.nvars(),
            found: map.source_vars,
        });
    }
    if map.target_vars() != y.nvars() {
        return Err(Error::ArityMismatch {
            expected: y.nvars(),
            found: map.target_vars(),
        });
    }
    if map.field() != x.field() || map.field() != y.field() {
        return Err(Error::FieldMismatch(map.field().to_string(), x.field().to_string()));
    }
    Ok(())
}

/// `true` iff `h` divides `p`; for the ambient space (`h = 0`) iff `p = 0`.
fn vanishes_on(p: &Polynomial, h: &Polynomial) -> Result<bool> {
    if h.is_zero() {
        Ok(p.is_zero())
    } else {
        p.is_divisible_by(h)
    }
}

fn image_equation(map: &RationalMap, x: &Hypersurface, y: &Hypersurface) -> Result<Polynomial> {
    let h = x.defining();
    match map.target_chart {
        Chart::Affine => {
            for c in &map.coords {
                if !h.is_zero() && c.den.is_divisible_by(h)? {
                    return Err(Error::UndefinedAlongSource(format!(
                        "denominator {} vanishes on {}",
                        c.den, x
                    )));
                }
            }
            let r = RationalFunction::polynomial(y.defining().clone()).substitute(&map.coords)?;
            if !h.is_zero() && r.den.is_divisible_by(h)? {
                return Err(Error::UndefinedAlongSource(format!(
                    "denominator {} vanishes on {}",
                    r.den, x
                )));
            }
            Ok(r.num)
        }
        Chart::Projective => {
            let local = map.local_projective();
            if !h.is_zero() {
                let mut all = true;
                for p in &local {
                    if !vanishes_on(p, h)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    return Err(Error::UndefinedAlongSource(format!(
                        "every coordinate vanishes on {x}"
                    )));
                }
            }
            y.defining().substitute(&local)
        }
    }
}

/// Whether the map sends `X` into `Y`: the equation of `Y` pulled back along
/// the map has numerator divisible by the equation of `X` (identically zero
/// when `X` is the whole space).
pub fn restricts_to(map: &RationalMap, x: &Hypersurface, y: &Hypersurface) -> Result<bool> {
    check_endpoints(map, x, y)?;
    if y.is_ambient_space() {
        return Ok(true);
    }
    vanishes_on(&image_equation(map, x, y)?, x.defining())
}

/// One divisibility check in a [`BirationalReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub label: String,
    pub holds: bool,
    /// The checked numerator; `residual = quotient * h` when `holds`.
    #[serde(serialize_with = "ser_display")]
    pub residual: Polynomial,
    #[serde(serialize_with = "ser_display_opt")]
    pub quotient: Option<Polynomial>,
}

fn ser_display<S: serde::Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn ser_display_opt<S: serde::Serializer>(
    p: &Option<Polynomial>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BirationalReport {
    pub forward_restricts: bool,
    pub inverse_restricts: bool,
    /// Round trips that are not defined as rational maps.
    pub failures: Vec<String>,
    pub certificates: Vec<Certificate>,
}

impl BirationalReport {
    pub fn certified(&self) -> bool {
        self.forward_restricts
            && self.inverse_restricts
            && self.failures.is_empty()
            && self.certificates.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<String> {
        if !self.forward_restricts {
            return Some("forward map does not restrict".into());
        }
        if !self.inverse_restricts {
            return Some("inverse map does not restrict".into());
        }
        if let Some(f) = self.failures.first() {
            return Some(f.clone());
        }
        self.certificates
            .iter()
            .find(|c| !c.holds)
            .map(|c| format!("{}: residual {}", c.label, c.residual))
    }
}

fn certify(label: String, residual: Polynomial, h: &Polynomial) -> Result<Certificate> {
    let quotient = if h.is_zero() {
        residual.is_zero().then(|| residual.clone())
    } else {
        residual.exact_div(h)?
    };
    Ok(Certificate {
        label,
        holds: quotient.is_some(),
        residual,
        quotient,
    })
}

/// Checks that `round_trip` is the identity on `X`.
fn identity_certificates(
    round_trip: &RationalMap,
    x: &Hypersurface,
    side: &str,
) -> Result<(Vec<Certificate>, Vec<String>)> {
    let h = x.defining();
    let field = x.field();
    let n = x.nvars();
    match x.chart() {
        Chart::Affine => {
            let mut failures = Vec::new();
            for (i, c) in round_trip.coords.iter().enumerate() {
                if !h.is_zero() && c.den.is_divisible_by(h)? {
                    failures.push(format!("{side}: coordinate {i} of the round trip is undefined on X"));
                }
            }
            let certs = (0..n)
                .into_par_iter()
                .map(|i| {
                    let r = RationalFunction::var(field, n, i).sub(&round_trip.coords[i])?;
                    certify(format!("{side}: x{i} - round trip"), r.num, h)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((certs, failures))
        }
        Chart::Projective => {
            let q = &round_trip.projective;
            let mut failures = Vec::new();
            if !h.is_zero() {
                let mut all = true;
                for p in q {
                    if !p.is_divisible_by(h)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    failures.push(format!("{side}: the round trip is undefined on X"));
                }
            }
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            let certs = pairs
                .par_iter()
                .map(|&(i, j)| {
                    let xi = Polynomial::var(field, n, i);
                    let xj = Polynomial::var(field, n, j);
                    let minor = &(&q[i] * &xj) - &(&q[j] * &xi);
                    certify(format!("{side}: minor ({i},{j})"), minor, h)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((certs, failures))
        }
    }
}

/// Certifies that `forward: X -> Y` and `inverse: Y -> X` are mutually
/// inverse: both restrict, and each round trip agrees with the identity
/// modulo the equation of its source. On an affine source the residual of
/// coordinate `i` is the numerator of `x_i - (inverse ∘ forward)_i`; on a
/// projective source the residuals are the 2x2 minors of the round trip
/// against `x`.
pub fn verify_birational(
    forward: &RationalMap,
    inverse: &RationalMap,
    x: &Hypersurface,
    y: &Hypersurface,
) -> Result<BirationalReport> {
    let forward_restricts = restricts_to(forward, x, y)?;
    let inverse_restricts = restricts_to(inverse, y, x)?;
    let mut report = BirationalReport {
        forward_restricts,
        inverse_restricts,
        failures: Vec::new(),
        certificates: Vec::new(),
    };
    for (outer, inner, source, side) in [
        (inverse, forward, x, "source"),
        (forward, inverse, y, "target"),
    ] {
        match compose(outer, inner) {
            Ok(rt) => {
                let (certs, failures) = identity_certificates(&rt, source, side)?;
                report.certificates.extend(certs);
                report.failures.extend(failures);
            }
            Err(Error::CompositionUndefined | Error::ZeroMap) => report
                .failures
                .push(format!("{side}: round trip undefined as a rational map")),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Pairs `(p_i, p_j)` of entries of the canonical form. Their common zeros
/// contain the indeterminacy locus (the locus where the form is undefined).
pub fn indeterminacy_equations(map: &RationalMap) -> Vec<(Polynomial, Polynomial)> {
    let q = &map.projective;
    (0..q.len())
        .flat_map(|i| (i + 1..q.len()).map(move |j| (q[i].clone(), q[j].clone())))
        .collect()
}
