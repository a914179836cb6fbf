//! Hypersurfaces, points and linear subspaces.
//!
//! An affine hypersurface in `A^n` is cut out by a polynomial in `n`
//! variables; a projective one in `P^n` by a homogeneous polynomial in
//! `n + 1` variables. The zero polynomial stands for the whole ambient
//! space and is only produced by [`Hypersurface::ambient_space`].

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::poly::{Polynomial, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    Affine,
    Projective,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::Affine => "affine",
            Chart::Projective => "projective",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    defining: Polynomial,
    chart: Chart,
}

impl Hypersurface {
    pub fn new(defining: Polynomial, chart: Chart) -> Result<Self> {
        match defining.degree() {
            None => {
                return Err(Error::InvalidHypersurface(
                    "defining polynomial is zero".into(),
                ))
            }
            Some(0) => {
                return Err(Error::InvalidHypersurface(
                    "defining polynomial is constant".into(),
                ))
            }
            Some(_) => {}
        }
        if chart == Chart::Projective && !defining.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(Hypersurface { defining, chart })
    }

    pub fn affine(defining: Polynomial) -> Result<Self> {
        Self::new(defining, Chart::Affine)
    }

    pub fn projective(defining: Polynomial) -> Result<Self> {
        Self::new(defining, Chart::Projective)
    }

    /// The whole of `A^nvars` or `P^(nvars-1)`, with defining polynomial 0.
    pub fn ambient_space(field: FieldSpec, nvars: usize, chart: Chart) -> Self {
        Hypersurface {
            defining: Polynomial::zero(field, nvars),
            chart,
        }
    }

    pub fn defining(&self) -> &Polynomial {
        &self.defining
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn field(&self) -> FieldSpec {
        self.defining.field()
    }

    /// Number of coordinates of a point (homogeneous ones when projective).
    pub fn nvars(&self) -> usize {
        self.defining.nvars()
    }

    /// `n + 1` for a hypersurface in `A^(n+1)` or `P^(n+1)`.
    pub fn ambient_dim(&self) -> usize {
        match self.chart {
            Chart::Affine => self.nvars(),
            Chart::Projective => self.nvars() - 1,
        }
    }

    /// Dimension of the hypersurface itself (of the ambient space if whole).
    pub fn dim(&self) -> usize {
        if self.is_ambient_space() {
            self.ambient_dim()
        } else {
            self.ambient_dim() - 1
        }
    }

    /// Degree of the defining polynomial; 0 for the ambient space.
    pub fn degree(&self) -> u32 {
        self.defining.degree().unwrap_or(0)
    }

    pub fn is_ambient_space(&self) -> bool {
        self.defining.is_zero()
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        point_on(self, p)
    }

    /// Closure in projective space, with the new coordinate at slot 0.
    pub fn projective_closure(&self) -> Result<Hypersurface> {
        match self.chart {
            Chart::Projective => Ok(self.clone()),
            Chart::Affine if self.is_ambient_space() => Ok(Self::ambient_space(
                self.field(),
                self.nvars() + 1,
                Chart::Projective,
            )),
            Chart::Affine => Self::projective(self.defining.homogenize(0)?),
        }
    }

    /// The affine chart `x_slot = 1`.
    pub fn affine_chart(&self, slot: usize) -> Result<Hypersurface> {
        if self.chart != Chart::Projective {
            return Err(Error::ChartMismatch("affine chart of an affine hypersurface".into()));
        }
        if self.is_ambient_space() {
            return Ok(Self::ambient_space(self.field(), self.nvars() - 1, Chart::Affine));
        }
        Self::affine(self.defining.dehomogenize(slot)?)
    }
}

impl fmt::Display for Hypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ambient_space() {
            match self.chart {
                Chart::Affine => write!(f, "A^{}", self.ambient_dim()),
                Chart::Projective => write!(f, "P^{}", self.ambient_dim()),
            }
        } else {
            write!(f, "({} = 0) in {} {}-space", self.defining, self.chart, self.ambient_dim())
        }
    }
}

/// A point of affine or projective space. Projective points are stored in
/// canonical form: the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    field: FieldSpec,
    coords: Vec<Scalar>,
    chart: Chart,
}

impl Point {
    pub fn affine(field: FieldSpec, coords: Vec<Scalar>) -> Result<Self> {
        check_coords(&field, &coords)?;
        Ok(Point {
            field,
            coords,
            chart: Chart::Affine,
        })
    }

    pub fn projective(field: FieldSpec, coords: Vec<Scalar>) -> Result<Self> {
        check_coords(&field, &coords)?;
        let Some(lead) = coords.iter().find(|c| !field.is_zero(c)) else {
            return Err(Error::InvalidPoint("all homogeneous coordinates are zero".into()));
        };
        let inv = field.inv(lead)?;
        let coords = coords.iter().map(|c| field.mul(c, &inv)).collect();
        Ok(Point {
            field,
            coords,
            chart: Chart::Projective,
        })
    }

    pub fn new(field: FieldSpec, coords: Vec<Scalar>, chart: Chart) -> Result<Self> {
        match chart {
            Chart::Affine => Self::affine(field, coords),
            Chart::Projective => Self::projective(field, coords),
        }
    }

    pub fn affine_i64(field: FieldSpec, coords: &[i64]) -> Result<Self> {
        Self::affine(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn projective_i64(field: FieldSpec, coords: &[i64]) -> Result<Self> {
        Self::projective(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// Parses `1/2, 3` (affine) or `1 : 0 : -1` (projective).
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self> {
        let (parts, chart): (Vec<&str>, _) = if text.contains(':') {
            (text.split(':').collect(), Chart::Projective)
        } else {
            (text.split(',').collect(), Chart::Affine)
        };
        let coords = parts
            .iter()
            .map(|s| field.parse_scalar(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, coords, chart)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Homogeneous coordinates: `(1, x)` for an affine point.
    pub fn homogeneous_coords(&self) -> Vec<Scalar> {
        match self.chart {
            Chart::Projective => self.coords.clone(),
            Chart::Affine => std::iter::once(self.field.one())
                .chain(self.coords.iter().cloned())
                .collect(),
        }
    }
}

fn check_coords(field: &FieldSpec, coords: &[Scalar]) -> Result<()> {
    match coords.iter().find(|c| !field.contains(c)) {
        Some(bad) => Err(Error::CoefficientNotInField(bad.to_string())),
        None => Ok(()),
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = match self.chart {
            Chart::Affine => ", ",
            Chart::Projective => " : ",
        };
        let parts: Vec<String> = self.coords.iter().map(Scalar::to_string).collect();
        write!(f, "({})", parts.join(sep))
    }
}

/// Image of a linear parametrization `(s_0 : ... : s_m) -> A s`, stored by
/// its `ambient x (m+1)` matrix of full column rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    matrix: Matrix,
}

impl LinearSubspace {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.cols() == 0 || matrix.rank() != matrix.cols() {
            return Err(Error::RankDeficient);
        }
        Ok(LinearSubspace { matrix })
    }

    /// Spanned by the given vectors, one column per vector.
    pub fn from_columns(field: FieldSpec, columns: &[Vec<Scalar>]) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(Error::RankDeficient);
        };
        let mut m = Matrix::zeros(field, first.len(), columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != first.len() {
                return Err(Error::ArityMismatch {
                    expected: first.len(),
                    found: col.len(),
                });
            }
            for (r, v) in col.iter().enumerate() {
                if !field.contains(v) {
                    return Err(Error::CoefficientNotInField(v.to_string()));
                }
                m.set(r, c, v.clone());
            }
        }
        Self::new(m)
    }

    /// The coordinate subspace spanned by the given basis vectors of
    /// `k^ambient`.
    pub fn coordinate(field: FieldSpec, ambient: usize, indices: &[usize]) -> Result<Self> {
        let cols: Vec<Vec<Scalar>> = indices
            .iter()
            .map(|&i| {
                (0..ambient)
                    .map(|r| if r == i { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        Self::from_columns(field, &cols)
    }

    /// Hyperplane `sum_i c_i x_i = 0`.
    pub fn hyperplane(field: FieldSpec, coeffs: &[Scalar]) -> Result<Self> {
        let row = Matrix::from_rows(field, vec![coeffs.to_vec()])?;
        let basis = row.nullspace();
        if basis.len() + 1 != coeffs.len() {
            return Err(Error::InvalidArgument("hyperplane with zero equation".into()));
        }
        Self::from_columns(field, &basis)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    /// Number of ambient coordinates.
    pub fn ambient(&self) -> usize {
        self.matrix.rows()
    }

    /// Projective dimension `m`.
    pub fn dim(&self) -> usize {
        self.matrix.cols() - 1
    }

    /// Ambient coordinates as linear forms in the `m + 1` parameters.
    pub fn coordinate_forms(&self) -> Vec<Polynomial> {
        (0..self.ambient())
            .map(|r| Polynomial::linear_form(self.field(), self.matrix.row(r)))
            .collect()
    }

    /// Linear forms cutting out the subspace (a basis of the annihilator).
    pub fn equations(&self) -> Vec<Polynomial> {
        self.matrix
            .transpose()
            .nullspace()
            .iter()
            .map(|v| Polynomial::linear_form(self.field(), v))
            .collect()
    }

    pub fn point(&self, params: &[Scalar]) -> Result<Point> {
        Point::projective(self.field(), self.matrix.mul_vec(params)?)
    }
}

fn check_point(x: &Hypersurface, p: &Point) -> Result<()> {
    if p.field() != x.field() {
        return Err(Error::FieldMismatch(x.field().to_string(), p.field().to_string()));
    }
    if p.chart() != x.chart() {
        return Err(Error::ChartMismatch(format!(
            "{} point on a {} hypersurface",
            p.chart(),
            x.chart()
        )));
    }
    if p.len() != x.nvars() {
        return Err(Error::ArityMismatch {
            expected: x.nvars(),
            found: p.len(),
        });
    }
    Ok(())
}

pub fn point_on(x: &Hypersurface, p: &Point) -> Result<bool> {
    check_point(x, p)?;
    Ok(x.field().is_zero(&x.defining.eval(p.coords())?))
}

/// The partial derivatives of a projective hypersurface's equation.
pub fn singular_locus_equations(x: &Hypersurface) -> Result<Vec<Polynomial>> {
    if x.chart() != Chart::Projective {
        return Err(Error::ChartMismatch(
            "singular locus equations need a projective hypersurface; use the affine variant".into(),
        ));
    }
    Ok(x.defining.gradient())
}

/// `h` followed by its partial derivatives.
pub fn affine_singular_locus_equations(x: &Hypersurface) -> Result<Vec<Polynomial>> {
    if x.chart() != Chart::Affine {
        return Err(Error::ChartMismatch("expected an affine hypersurface".into()));
    }
    let mut out = vec![x.defining.clone()];
    out.extend(x.defining.gradient());
    Ok(out)
}

fn gradient_at(x: &Hypersurface, p: &Point) -> Result<Vec<Scalar>> {
    if !point_on(x, p)? {
        return Err(Error::PointNotOnHypersurface);
    }
    x.defining
        .gradient()
        .iter()
        .map(|g| g.eval(p.coords()))
        .collect()
}

pub fn is_smooth_at(x: &Hypersurface, p: &Point) -> Result<bool> {
    let f = x.field();
    Ok(gradient_at(x, p)?.iter().any(|g| !f.is_zero(g)))
}

/// `sum_i dG/dx_i(p) x_i` for projective `X`; `sum_i dh/dx_i(p) (x_i - p_i)`
/// for affine `X`.
pub fn tangent_hyperplane(x: &Hypersurface, p: &Point) -> Result<Polynomial> {
    let f = x.field();
    let grad = gradient_at(x, p)?;
    if grad.iter().all(|g| f.is_zero(g)) {
        return Err(Error::SingularPoint);
    }
    let form = Polynomial::linear_form(f, &grad);
    match x.chart() {
        Chart::Projective => Ok(form),
        Chart::Affine => {
            let shift = grad
                .iter()
                .zip(p.coords())
                .fold(f.zero(), |acc, (g, c)| f.add(&acc, &f.mul(g, c)));
            Ok(&form - &Polynomial::constant(f, x.nvars(), shift))
        }
    }
}

/// Whether the defining polynomial vanishes identically on `L`.
pub fn contains_subspace(x: &Hypersurface, l: &LinearSubspace) -> Result<bool> {
    if x.chart() != Chart::Projective {
        return Err(Error::ChartMismatch("linear subspaces live in projective space".into()));
    }
    if l.ambient() != x.nvars() {
        return Err(Error::ArityMismatch {
            expected: x.nvars(),
            found: l.ambient(),
        });
    }
    if l.field() != x.field() {
        return Err(Error::FieldMismatch(x.field().to_string(), l.field().to_string()));
    }
    Ok(x.defining.substitute(&l.coordinate_forms())?.is_zero())
}

/// Whether two projective subspaces share no point.
pub fn subspaces_disjoint(a: &LinearSubspace, b: &LinearSubspace) -> Result<bool> {
    if a.ambient() != b.ambient() {
        return Err(Error::ArityMismatch {
            expected: a.ambient(),
            found: b.ambient(),
        });
    }
    let f = a.field();
    let cols: Vec<Vec<Scalar>> = (0..a.matrix.cols())
        .map(|c| a.matrix.column(c))
        .chain((0..b.matrix.cols()).map(|c| b.matrix.column(c)))
        .collect();
    let mut m = Matrix::zeros(f, a.ambient(), cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    Ok(m.rank() == cols.len())
}

fn sampling_field(x: &Hypersurface) -> Result<u32> {
    match x.field().modulus() {
        None => Err(Error::RequiresFiniteField),
        Some(p) if p <= 3 => Err(Error::UnsupportedCharacteristic(format!(
            "point sampling needs p > 3, got {p}"
        ))),
        Some(p) => Ok(p),
    }
}

/// Samples a point of `X(F_p)`: all coordinates but one are drawn uniformly,
/// the last is a uniformly chosen root of the resulting univariate equation.
pub fn random_point_on<R: Rng + ?Sized>(
    x: &Hypersurface,
    rng: &mut R,
    max_tries: usize,
) -> Result<Option<Point>> {
    sampling_field(x)?;
    let f = x.field();
    let n = x.nvars();
    for _ in 0..max_tries {
        let mut coords: Vec<Scalar> = (0..n).map(|_| f.random(rng)).collect();
        let k = rng.gen_range(0..n);
        let uni = UniPoly::specialize(&x.defining, k, &coords);
        let roots = if uni.is_zero() {
            vec![f.random(rng)]
        } else {
            uni.roots()?
        };
        if roots.is_empty() {
            continue;
        }
        coords[k] = roots[rng.gen_range(0..roots.len())].clone();
        if x.chart() == Chart::Projective && coords.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        return Ok(Some(Point::new(f, coords, x.chart())?));
    }
    Ok(None)
}

/// Every point of `X(F_p)`; projective points once each, canonically.
/// Guarded by `limit` on the size of the ambient point set.
pub fn points_over_prime_field(x: &Hypersurface, limit: u64) -> Result<Vec<Point>> {
    let p = x.field().modulus().ok_or(Error::RequiresFiniteField)? as u64;
    let n = x.nvars();
    let total = (p as f64).powi(n as i32);
    if total > limit as f64 {
        return Err(Error::InvalidArgument(format!(
            "{p}^{n} candidate points exceed the enumeration limit {limit}"
        )));
    }
    let f = x.field();
    let mut out = Vec::new();
    let mut digits = vec![0u32; n];
    loop {
        let coords: Vec<Scalar> = digits.iter().map(|&d| Scalar::Residue(d)).collect();
        let canonical = match x.chart() {
            Chart::Affine => true,
            Chart::Projective => coords
                .iter()
                .find(|c| !f.is_zero(c))
                .is_some_and(|c| f.is_one(c)),
        };
        if canonical && f.is_zero(&x.defining.eval(&coords)?) {
            out.push(Point::new(f, coords, x.chart())?);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if (digits[i] as u64) < p {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Singular points found among `samples` random points of `X(F_p)`.
/// An empty answer is evidence of smoothness, not a proof.
pub fn sample_singular_points<R: Rng + ?Sized>(
    x: &Hypersurface,
    rng: &mut R,
    samples: usize,
) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for _ in 0..samples {
        if let Some(p) = random_point_on(x, rng, 50)? {
            if !is_smooth_at(x, &p)? && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}
