//! Plain-text fixture formats.
//!
//! A hypersurface file holds a field line, a chart line and the defining
//! polynomial:
//!
//! ```text
//! Q
//! affine 3
//! x0^2 + x1^2 + x2^2 - 1
//! ```
//!
//! A map file holds a field line, a header `<chart> <nvars> -> <chart>` and
//! one coordinate function per line, written in the source variables. For a
//! projective target the lines are the homogeneous entries.
//!
//! ```text
//! Q
//! affine 3 -> affine
//! x0/(x2 + 1)
//! x1/(x2 + 1)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::geom::{Chart, Hypersurface};
use crate::poly::{parse_fraction_at, parse_polynomial_at};
use crate::ratmap::{RationalFunction, RationalMap};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: 1,
        message: message.into(),
    }
}

fn parse_chart(word: &str, line: usize) -> Result<Chart> {
    match word {
        "affine" => Ok(Chart::Affine),
        "projective" => Ok(Chart::Projective),
        other => Err(parse_error(line, format!("expected 'affine' or 'projective', found '{other}'"))),
    }
}

fn parse_count(word: Option<&str>, line: usize) -> Result<usize> {
    word.and_then(|w| w.parse().ok())
        .filter(|&n: &usize| n > 0)
        .ok_or_else(|| parse_error(line, "expected a positive variable count"))
}

fn parse_field_line(next: Option<(usize, &str)>) -> Result<FieldSpec> {
    let (line, text) = next.ok_or_else(|| parse_error(1, "missing field line"))?;
    text.parse::<FieldSpec>().map_err(|e| match e {
        Error::InvalidArgument(m) => parse_error(line, m),
        e => e,
    })
}

pub fn parse_hypersurface(text: &str) -> Result<Hypersurface> {
    let mut lines = content_lines(text);
    let field = parse_field_line(lines.next())?;
    let (line, header) = lines.next().ok_or_else(|| parse_error(2, "missing chart line"))?;
    let mut words = header.split_whitespace();
    let chart = parse_chart(words.next().unwrap_or(""), line)?;
    let nvars = parse_count(words.next(), line)?;
    let (line, body) = lines.next().ok_or_else(|| parse_error(line + 1, "missing polynomial"))?;
    let f = parse_polynomial_at(body, nvars, field, line)?;
    if let Some((extra, _)) = lines.next() {
        return Err(parse_error(extra, "unexpected trailing line"));
    }
    Hypersurface::new(f, chart)
}

pub fn write_hypersurface(x: &Hypersurface) -> String {
    format!("{}\n{} {}\n{}\n", field_line(x.field()), x.chart(), x.nvars(), x.defining())
}

pub fn parse_map(text: &str) -> Result<RationalMap> {
    let mut lines = content_lines(text);
    let field = parse_field_line(lines.next())?;
    let (line, header) = lines.next().ok_or_else(|| parse_error(2, "missing map header"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 4 || words[2] != "->" {
        return Err(parse_error(line, "expected '<chart> <nvars> -> <chart>'"));
    }
    let source = parse_chart(words[0], line)?;
    let nvars = parse_count(Some(words[1]), line)?;
    let target = parse_chart(words[3], line)?;
    let coords = lines
        .map(|(line, body)| {
            let (num, den) = parse_fraction_at(body, nvars, field, line)?;
            RationalFunction::new(num, den)
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.is_empty() {
        return Err(parse_error(line + 1, "map has no coordinate lines"));
    }
    RationalMap::new(source, target, coords)
}

pub fn write_map(map: &RationalMap) -> String {
    let mut s = format!(
        "{}\n{} {} -> {}\n",
        field_line(map.field()),
        map.source_chart(),
        map.source_vars(),
        map.target_chart()
    );
    for c in map.coords() {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    s
}

/// Whitespace- or comma-separated field elements.
pub fn parse_scalars(text: &str, field: FieldSpec) -> Result<Vec<Scalar>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(|w| field.parse_scalar(w))
        .collect()
}

fn field_line(field: FieldSpec) -> String {
    match field.modulus() {
        None => "Q".into(),
        Some(p) => format!("Fp {p}"),
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_hypersurface(path: &Path) -> Result<Hypersurface> {
    parse_hypersurface(&read_file(path)?)
}

pub fn read_map(path: &Path) -> Result<RationalMap> {
    parse_map(&read_file(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sphere_stereographic;

    #[test]
    fn hypersurface_round_trip() {
        let text = "# circle\nQ\naffine 2\nx^2 + y^2 - 1\n";
        let x = parse_hypersurface(text).unwrap();
        assert_eq!(x.degree(), 2);
        assert_eq!(parse_hypersurface(&write_hypersurface(&x)).unwrap(), x);
    }

    #[test]
    fn map_round_trip() {
        let q = FieldSpec::Q;
        let s = sphere_stereographic(2, &[q.one(), q.from_i64(3)], q).unwrap();
        for m in [&s.forward, &s.inverse] {
            assert_eq!(&parse_map(&write_map(m)).unwrap(), m);
        }
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_hypersurface("Fp 7\naffine 2\nx0 + + x1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 6, .. }), "{e:?}");
        let e = parse_map("Q\naffine 2 affine\nx0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }
}
