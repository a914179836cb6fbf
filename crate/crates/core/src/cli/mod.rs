//! Command-line front end: argument parsing, dispatch to the library and
//! structured reports.
//!
//! Every subcommand produces a [`Report`]. The process exits with 0 iff
//! every certificate in it holds, 1 if some certificate fails, 2 on a usage
//! error and with [`exit_code`] of the error otherwise.

pub mod fixture;
pub mod points;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::constructions::{
    chord_involution, chord_third_point, cubic_two_planes_param, determinantal_pair,
    fermat_line_count, fermat_lines, monoid_param, quadric_projection, quartic_two_planes_involution,
    random_through_coordinate_planes, sphere_stereographic, Tensor,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::geom::{
    is_smooth_at, point_on, sample_singular_points, tangent_hyperplane, Hypersurface,
    LinearSubspace, Point,
};
use crate::invariants::{
    classify_type, isomorphism_linearity_class, not_rational_by_degree, segre_criterion,
    volume_form_dim,
};
use crate::poly::parse_polynomial;
use crate::ratmap::{verify_birational, RationalMap};

pub use report::{OutputFormat, Report};

#[derive(Debug, Parser)]
#[command(name = "birat", version, about = "Certified birational maps between hypersurfaces")]
pub struct Cli {
    /// Coefficient field: `Q` or `F<p>`.
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Also write produced maps and hypersurfaces as fixture files here.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type, volume forms, linearity of isomorphisms and the cube criterion.
    Classify {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        /// Degree of a second hypersurface for the linearity question.
        #[arg(long)]
        d2: Option<u32>,
        /// Coefficients `a0,a1,a2,a3` of a diagonal cubic surface over Q.
        #[arg(long)]
        segre: Option<String>,
    },
    /// Smoothness at a point, or a search for singular points over F_p.
    SmoothCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Stereographic projection of `Σ a_i x_i^2 + x_(n+1)^2 = 1`.
    ParamSphere {
        #[arg(long)]
        n: usize,
        /// Weights `a_1..a_n`; all ones by default.
        #[arg(long)]
        a: Option<String>,
    },
    /// Projection of a projective quadric from a smooth point.
    ParamQuadric {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        point: String,
        /// Coefficients of the target hyperplane's equation.
        #[arg(long)]
        hyperplane: String,
    },
    /// `H_low x_(n+1) + H_high = 0` projected from `(0 : ... : 0 : 1)`.
    ParamMonoid {
        /// Number of variables of `H_low` and `H_high`.
        #[arg(long)]
        nvars: usize,
        #[arg(long)]
        low: String,
        #[arg(long)]
        high: String,
    },
    /// Cubic containing both coordinate n-planes of `P^(2n+1)`.
    ParamCubic2planes {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Chord involution of a plane cubic through a point.
    ChordInvolution {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        point: String,
        /// Also report the third point on the chord through this point.
        #[arg(long)]
        through: Option<String>,
    },
    /// Linear n-planes on the Fermat hypersurface of degree d in `P^(2n+1)`.
    FermatLines {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
    },
    /// Determinantal quartic surfaces of a 4x4x4 tensor.
    DetQuartic {
        /// File of 64 entries `a[k][i][j]`, `k` slowest; random if absent.
        #[arg(long)]
        tensor: Option<PathBuf>,
    },
    /// Involution of a quartic containing both coordinate n-planes.
    QuarticInvolution {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Certifies that two map files are mutually inverse.
    VerifyBirational {
        #[arg(long)]
        forward: PathBuf,
        #[arg(long)]
        inverse: PathBuf,
        #[arg(long)]
        source: PathBuf,
        /// Ambient space when absent.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Points of `Σ a_i x_i^2 + x_(n+1)^2 = 1` from the stereographic
    /// parametrization; over F_p also checks completeness.
    RationalPoints {
        #[arg(long)]
        a: String,
        /// Bound on numerators and denominators of the parameters.
        #[arg(long, default_value_t = 3)]
        height: u64,
    },
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Hypersurface file; a random one is drawn when absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Half-dimension of the random hypersurface.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

/// Distinct nonzero status per error kind.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 3,
        Error::Parse { .. } => 4,
        Error::UnknownVariable { .. } => 5,
        Error::InvalidArgument(_) => 6,
        Error::InvalidModulus(_) => 7,
        Error::FieldMismatch(..) => 10,
        Error::ArityMismatch { .. } => 11,
        Error::UnsupportedCharacteristic(_) => 12,
        Error::DivisionByZero => 13,
        Error::VariableOutOfRange { .. } => 14,
        Error::NotHomogeneous => 15,
        Error::GcdOfZeros => 16,
        Error::CoefficientNotInField(_) => 17,
        Error::InvalidHypersurface(_) => 18,
        Error::InvalidPoint(_) => 19,
        Error::ChartMismatch(_) => 20,
        Error::PointNotOnHypersurface => 21,
        Error::SingularPoint => 22,
        Error::RankDeficient => 23,
        Error::RequiresFiniteField => 24,
        Error::ZeroMap => 25,
        Error::UndefinedAlongSource(_) => 26,
        Error::CompositionUndefined => 27,
        Error::ZeroCoefficient(_) => 28,
        Error::PointInHyperplane => 29,
        Error::CommonFactor(_) => 30,
        Error::NotVanishingOnPlanes(_) => 31,
        Error::LineContained => 32,
        Error::CoincidentPoints => 33,
        Error::MissingRoots(_) => 34,
        Error::DegenerateTensor(_) => 35,
        Error::DegreeMismatch(_) => 36,
        Error::ChartUndefined(_) => 37,
        Error::InvalidFrame(_) => 38,
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out` and diagnostics to `err`. Returns the exit status.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run(&cli) {
        Ok(output) => {
            if let Some(dir) = &cli.out_dir {
                if let Err(e) = write_fixtures(dir, &output.fixtures) {
                    let _ = writeln!(err, "error: {e}");
                    return exit_code(&e);
                }
            }
            let _ = write!(out, "{}", output.report.render(cli.format));
            if output.report.all_hold() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// A report plus named fixture files for `--out-dir`.
#[derive(Clone, Debug)]
pub struct Output {
    pub report: Report,
    pub fixtures: Vec<(String, String)>,
}

impl Output {
    fn new(command: &str) -> Self {
        Output {
            report: Report::new(command),
            fixtures: Vec::new(),
        }
    }

    fn map(&mut self, name: &str, m: &RationalMap) {
        let text = fixture::write_map(m);
        self.report.value(name, lines(&text));
        self.fixtures.push((format!("{name}.map"), text));
    }

    fn hypersurface(&mut self, name: &str, x: &Hypersurface) {
        self.report.value(name, x.to_string());
        self.fixtures.push((format!("{name}.hyp"), fixture::write_hypersurface(x)));
    }
}

fn lines(text: &str) -> Value {
    Value::Array(text.lines().map(|l| json!(l)).collect())
}

fn write_fixtures(dir: &Path, fixtures: &[(String, String)]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for (name, text) in fixtures {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Output> {
    let field: FieldSpec = cli.field.parse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Classify { d, n, d2, segre } => classify(*d, *n, *d2, segre.as_deref()),
        Command::SmoothCheck {
            input,
            point,
            samples,
        } => smooth_check(input, point.as_deref(), *samples, &mut rng),
        Command::ParamSphere { n, a } => param_sphere(*n, a.as_deref(), field),
        Command::ParamQuadric {
            input,
            point,
            hyperplane,
        } => param_quadric(input, point, hyperplane),
        Command::ParamMonoid { nvars, low, high } => param_monoid(*nvars, low, high, field),
        Command::ParamCubic2planes { source } => param_cubic(source, field, &mut rng),
        Command::ChordInvolution {
            input,
            point,
            through,
        } => chord(input, point, through.as_deref()),
        Command::FermatLines { d, n } => fermat(*d, *n, field),
        Command::DetQuartic { tensor } => det_quartic(tensor.as_deref(), field, &mut rng),
        Command::QuarticInvolution { source } => quartic(source, field, &mut rng),
        Command::VerifyBirational {
            forward,
            inverse,
            source,
            target,
        } => verify(forward, inverse, source, target.as_deref()),
        Command::RationalPoints { a, height } => rational_points(a, *height, field),
    }
}

fn classify(d: u32, n: u32, d2: Option<u32>, segre: Option<&str>) -> Result<Output> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidArgument("degree and dimension must be positive".into()));
    }
    let mut o = Output::new("classify");
    let r = &mut o.report;
    r.value("degree", d).value("dimension", n);
    r.value("type", classify_type(d, n).to_string());
    r.value("volume_form_dim", volume_form_dim(d, n).to_string());
    r.value("not_rational_by_degree", not_rational_by_degree(d, n));
    r.value(
        "isomorphisms",
        isomorphism_linearity_class(n, d, d2.unwrap_or(d)).to_string(),
    );
    if let Some(text) = segre {
        let a = fixture::parse_scalars(text, FieldSpec::Q)?;
        let a: Vec<BigRational> = a.iter().filter_map(|s| s.as_rational().cloned()).collect();
        let a: [BigRational; 4] = a.try_into().map_err(|v: Vec<_>| Error::ArityMismatch {
            expected: 4,
            found: v.len(),
        })?;
        r.value("segre", segre_criterion(&a)?.to_string());
    }
    Ok(o)
}

fn smooth_check(input: &Path, point: Option<&str>, samples: usize, rng: &mut ChaCha8Rng) -> Result<Output> {
    let x = fixture::read_hypersurface(input)?;
    let mut o = Output::new("smooth-check");
    o.report.value("hypersurface", x.to_string());
    match point {
        Some(text) => {
            let p = read_point(text, &x)?;
            let smooth = is_smooth_at(&x, &p)?;
            o.report.value("point", p.to_string()).value("smooth", smooth);
            if smooth {
                o.report.value("tangent", tangent_hyperplane(&x, &p)?.to_string());
            }
            o.report.certificate("smooth at point", smooth, None);
        }
        None => {
            let found = sample_singular_points(&x, rng, samples)?;
            o.report.value("samples", samples);
            o.report.value(
                "singular_points",
                Value::Array(found.iter().map(|p| json!(p.to_string())).collect()),
            );
            o.report.certificate("no singular point sampled", found.is_empty(), None);
        }
    }
    Ok(o)
}

fn read_point(text: &str, x: &Hypersurface) -> Result<Point> {
    let p = Point::parse(text, x.field())?;
    if p.chart() != x.chart() || p.len() != x.nvars() {
        return Err(Error::InvalidPoint(format!(
            "expected a {} point with {} coordinates",
            x.chart(),
            x.nvars()
        )));
    }
    Ok(p)
}

fn param_sphere(n: usize, a: Option<&str>, field: FieldSpec) -> Result<Output> {
    let a = match a {
        Some(t) => fixture::parse_scalars(t, field)?,
        None => vec![field.one(); n],
    };
    let s = sphere_stereographic(n, &a, field)?;
    let report = verify_birational(&s.forward, &s.inverse, &s.source, &s.target)?;
    let mut o = Output::new("param-sphere");
    o.hypersurface("source", &s.source);
    o.map("forward", &s.forward);
    o.map("inverse", &s.inverse);
    o.report.birational("", &report);
    Ok(o)
}

fn param_quadric(input: &Path, point: &str, hyperplane: &str) -> Result<Output> {
    let q = fixture::read_hypersurface(input)?;
    let p = read_point(point, &q)?;
    let h = LinearSubspace::hyperplane(q.field(), &fixture::parse_scalars(hyperplane, q.field())?)?;
    let proj = quadric_projection(&q, &p, &h)?;
    let mut o = Output::new("param-quadric");
    o.hypersurface("source", &q);
    o.map("forward", &proj.forward);
    o.map("inverse", &proj.inverse);
    o.report
        .value("forward_degree", proj.forward.degree())
        .value("inverse_degree", proj.inverse.degree());
    o.report.birational("", &proj.report);
    Ok(o)
}

fn param_monoid(nvars: usize, low: &str, high: &str, field: FieldSpec) -> Result<Output> {
    let low = parse_polynomial(low, nvars, field)?;
    let high = parse_polynomial(high, nvars, field)?;
    let m = monoid_param(&low, &high)?;
    let mut o = Output::new("param-monoid");
    o.hypersurface("surface", &m.surface);
    o.map("forward", &m.forward);
    o.map("inverse", &m.inverse);
    o.report.birational("", &m.report);
    Ok(o)
}

fn source_hypersurface(
    s: &SourceArgs,
    degree: u32,
    field: FieldSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Hypersurface> {
    match &s.input {
        Some(path) => fixture::read_hypersurface(path),
        None => {
            let nvars = 2 * s.n + 2;
            Hypersurface::projective(random_through_coordinate_planes(field, nvars, degree, rng)?)
        }
    }
}

fn param_cubic(s: &SourceArgs, field: FieldSpec, rng: &mut ChaCha8Rng) -> Result<Output> {
    let x = source_hypersurface(s, 3, field, rng)?;
    let c = cubic_two_planes_param(&x)?;
    let mut o = Output::new("param-cubic2planes");
    o.hypersurface("surface", &x);
    let table: Vec<Value> = c
        .table
        .entries
        .iter()
        .map(|((i, j), l)| json!(format!("l({i},{j}) = {l}")))
        .collect();
    o.report.value("table", Value::Array(table));
    o.report.value("s", c.s.to_string()).value("t", c.t.to_string());
    o.map("third_point", &c.third_point);
    o.map("inverse", &c.inverse);
    o.report.certificate("dominant", c.dominant, None);
    if let Some(r) = &c.report {
        o.report.birational("", r);
    }
    Ok(o)
}

fn chord(input: &Path, point: &str, through: Option<&str>) -> Result<Output> {
    let c = fixture::read_hypersurface(input)?;
    let p0 = read_point(point, &c)?;
    let inv = chord_involution(&c, &p0)?;
    let mut o = Output::new("chord-involution");
    o.hypersurface("curve", &c);
    o.map("involution", &inv.map);
    if let Some(t) = through {
        let p = read_point(t, &c)?;
        o.report.value("third_point", chord_third_point(&c, &p0, &p)?.to_string());
    }
    o.report.birational("", &inv.report);
    Ok(o)
}

fn fermat(d: u32, n: u32, field: FieldSpec) -> Result<Output> {
    let lines = fermat_lines(d, n, field)?;
    let expected = fermat_line_count(d, n);
    let mut o = Output::new("fermat-lines");
    let r = &mut o.report;
    r.value("roots", Value::Array(lines.roots.iter().map(|s| json!(s.to_string())).collect()));
    r.value("count", lines.lines.len());
    r.value("formula", expected.to_string());
    r.value("partial", lines.partial);
    let eqs: Vec<Value> = lines
        .lines
        .iter()
        .map(|l| {
            let eq: Vec<String> = l
                .pairs
                .iter()
                .zip(&l.eps)
                .map(|(&(tau, sigma), e)| format!("x{tau} = {e}*x{sigma}"))
                .collect();
            json!(eq.join(", "))
        })
        .collect();
    r.value("planes", Value::Array(eqs));
    r.certificate("all planes lie on the hypersurface", true, None);
    if !lines.partial {
        let holds = expected == lines.lines.len().into();
        r.certificate("count matches formula", holds, None);
    }
    Ok(o)
}

fn det_quartic(tensor: Option<&Path>, field: FieldSpec, rng: &mut ChaCha8Rng) -> Result<Output> {
    let t = match tensor {
        Some(path) => Tensor::new(field, fixture::parse_scalars(&fixture::read_file(path)?, field)?)?,
        None => Tensor::random(field, rng),
    };
    let pair = determinantal_pair(&t)?;
    let mut o = Output::new("det-quartic");
    o.hypersurface("xb", &pair.xb);
    o.hypersurface("xc", &pair.xc);
    o.map("cramer", &pair.cramer);
    o.map("cramer_back", &pair.cramer_back);
    o.report.value("cramer_degree", pair.cramer.degree());
    o.report.certificate("cramer restricts", pair.cramer_restricts, None);
    o.report.certificate("cramer_back restricts", pair.back_restricts, None);
    o.report.birational("", &pair.report);
    Ok(o)
}

fn quartic(s: &SourceArgs, field: FieldSpec, rng: &mut ChaCha8Rng) -> Result<Output> {
    let x = source_hypersurface(s, 4, field, rng)?;
    let inv = quartic_two_planes_involution(&x)?;
    let mut o = Output::new("quartic-involution");
    o.hypersurface("surface", &x);
    o.map("involution", &inv.map);
    o.report.birational("", &inv.report);
    Ok(o)
}

fn verify(forward: &Path, inverse: &Path, source: &Path, target: Option<&Path>) -> Result<Output> {
    let f = fixture::read_map(forward)?;
    let g = fixture::read_map(inverse)?;
    let x = fixture::read_hypersurface(source)?;
    let y = match target {
        Some(path) => fixture::read_hypersurface(path)?,
        None => Hypersurface::ambient_space(f.field(), f.target_vars(), f.target_chart()),
    };
    let report = verify_birational(&f, &g, &x, &y)?;
    let mut o = Output::new("verify-birational");
    o.report.value("source", x.to_string()).value("target", y.to_string());
    o.report.birational("", &report);
    Ok(o)
}

fn rational_points(a: &str, height: u64, field: FieldSpec) -> Result<Output> {
    let a = fixture::parse_scalars(a, field)?;
    let mut o = Output::new("rational-points");
    match field.modulus() {
        None => {
            let rationals: Vec<BigRational> = a.iter().filter_map(|s| s.as_rational().cloned()).collect();
            let pts = points::enum_rational_points(&rationals, height)?;
            let s = sphere_stereographic(a.len(), &a, field)?;
            let mut all_on = point_on(&s.source, &pts.excluded)?;
            for p in &pts.points {
                all_on &= point_on(&s.source, p)?;
            }
            o.report.value("height", height);
            o.report.value("count", pts.points.len());
            o.report.value("skipped_parameters", pts.skipped);
            o.report.value(
                "points",
                Value::Array(pts.points.iter().map(|p| json!(p.to_string())).collect()),
            );
            o.report.value("excluded", pts.excluded.to_string());
            o.report.certificate("every point satisfies the equation", all_on, None);
        }
        Some(_) => {
            let s = sphere_stereographic(a.len(), &a, field)?;
            let param = points::parametrized_points(&s)?;
            let excluded = points::excluded_locus(&s)?;
            let all = points::all_points(&s)?;
            let mut covered = param.clone();
            covered.extend(excluded.iter().cloned());
            o.report.value("parametrized", param.len());
            o.report.value("excluded", excluded.len());
            o.report.value("brute_force", all.len());
            let mut sorted: Vec<String> = excluded.iter().map(Point::to_string).collect();
            sorted.sort();
            o.report.value("excluded_points", json!(sorted));
            o.report.certificate("parametrization plus excluded locus is complete", covered == all, None);
        }
    }
    Ok(o)
}
