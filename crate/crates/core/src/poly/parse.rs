//! Text grammar for polynomials and rational expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INTEGER)*
//! primary := INTEGER | VARIABLE | '(' expr ')'
//! ```
//!
//! Variables are `x0, x1, ...`; `x, y, z, w` are aliases for `x0..x3`.
//! Rational literals are written as a division of integers (`3/4*x0`).
//! Whitespace is ignored.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

use super::Polynomial;

pub fn variable_name(i: usize) -> String {
    format!("x{i}")
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    column: usize,
}

fn lex(text: &str, line: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Lexed {
                    tok: Tok::Int(s.parse().expect("digits")),
                    column,
                });
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Lexed {
                    tok: Tok::Var(chars[start..i].iter().collect()),
                    column,
                });
                continue;
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push(Lexed { tok, column });
        i += 1;
    }
    Ok(out)
}

/// Unreduced fraction of polynomials produced while parsing.
struct Frac {
    num: Polynomial,
    den: Polynomial,
    /// Set for bare integer literals, to report `1/p` over `F_p` precisely.
    literal: Option<BigInt>,
}

impl Frac {
    fn poly(num: Polynomial) -> Frac {
        let den = Polynomial::one(num.field(), num.nvars());
        Frac {
            num,
            den,
            literal: None,
        }
    }

    /// Folds constant denominators into the numerator.
    fn tidy(mut self) -> Frac {
        if let Some(c) = self.den.constant_value() {
            let f = self.num.field();
            if let Ok(inv) = f.inv(&c) {
                self.num = self.num.scale(&inv);
                self.den = Polynomial::one(f, self.num.nvars());
            }
        }
        self
    }
}

struct Parser<'a> {
    toks: &'a [Lexed],
    pos: usize,
    nvars: usize,
    field: FieldSpec,
    line: usize,
    end_column: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|l| l.column)
            .unwrap_or(self.end_column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.term()?;
            let cross = &rhs.num * &acc.den;
            let num = &acc.num * &rhs.den;
            acc = Frac {
                num: if negate { &num - &cross } else { &num + &cross },
                den: &acc.den * &rhs.den,
                literal: None,
            }
            .tidy();
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            let divide = match self.peek() {
                Some(Tok::Star) => false,
                Some(Tok::Slash) => true,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let column = self.column();
            let rhs = self.unary()?;
            acc = if divide {
                if rhs.num.is_zero() {
                    return Err(match rhs.literal {
                        Some(n) if n != BigInt::from(0) => Error::CoefficientNotInField(format!(
                            "1/{n} in {}",
                            self.field
                        )),
                        _ => Error::Parse {
                            line: self.line,
                            column,
                            message: "division by zero".into(),
                        },
                    });
                }
                Frac {
                    num: &acc.num * &rhs.den,
                    den: &acc.den * &rhs.num,
                    literal: None,
                }
            } else {
                Frac {
                    num: &acc.num * &rhs.num,
                    den: &acc.den * &rhs.den,
                    literal: None,
                }
            }
            .tidy();
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Frac {
                num: -&inner.num,
                den: inner.den,
                literal: None,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac> {
        let mut base = self.primary()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Int(n)) => match u32::try_from(n.clone()) {
                    Ok(e) if e <= 10_000 => e,
                    _ => return self.error("exponent too large"),
                },
                _ => return self.error("expected a non-negative integer exponent"),
            };
            self.pos += 1;
            base = Frac {
                num: base.num.pow(e),
                den: base.den.pow(e),
                literal: None,
            };
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Frac> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let c = self.field.from_bigint(&n);
                let mut fr = Frac::poly(Polynomial::constant(self.field, self.nvars, c));
                fr.literal = Some(n);
                Ok(fr)
            }
            Some(Tok::Var(name)) => {
                self.pos += 1;
                let index = resolve_variable(&name).filter(|&i| i < self.nvars);
                match index {
                    Some(i) => Ok(Frac::poly(Polynomial::var(self.field, self.nvars, i))),
                    None => Err(Error::UnknownVariable {
                        name,
                        line: self.line,
                        column,
                    }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.error(format!("unexpected token {}", describe(&t))),
            None => self.error("unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => n.to_string(),
        Tok::Var(v) => v.clone(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
    }
}

fn resolve_variable(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        "w" => Some(3),
        _ => {
            let digits = name.strip_prefix('x')?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            digits.parse().ok()
        }
    }
}

/// Parses a quotient expression into an unreduced `(numerator, denominator)`
/// pair. `line` is only used for error positions.
pub(crate) fn parse_fraction_at(
    text: &str,
    nvars: usize,
    field: FieldSpec,
    line: usize,
) -> Result<(Polynomial, Polynomial)> {
    let toks = lex(text, line)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        nvars,
        field,
        line,
        end_column: text.chars().count() + 1,
    };
    let fr = p.expr()?;
    if p.pos != toks.len() {
        return p.error(format!(
            "unexpected token {}",
            describe(&toks[p.pos].tok)
        ));
    }
    Ok((fr.num, fr.den))
}

/// Parses `text` as a rational expression; returns numerator and denominator.
pub fn parse_rational_expression(
    text: &str,
    nvars: usize,
    field: FieldSpec,
) -> Result<(Polynomial, Polynomial)> {
    parse_fraction_at(text, nvars, field, 1)
}

pub(crate) fn parse_polynomial_at(
    text: &str,
    nvars: usize,
    field: FieldSpec,
    line: usize,
) -> Result<Polynomial> {
    let (num, den) = parse_fraction_at(text, nvars, field, line)?;
    match den.constant_value() {
        Some(c) => Ok(num.scale(&field.inv(&c)?)),
        None => Err(Error::Parse {
            line,
            column: 1,
            message: "division by a non-constant in a polynomial".into(),
        }),
    }
}

/// Parses a polynomial in `nvars` variables over `field`.
pub fn parse_polynomial(text: &str, nvars: usize, field: FieldSpec) -> Result<Polynomial> {
    parse_polynomial_at(text, nvars, field, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases() {
        let p = parse_polynomial("x*y - z^2", 3, FieldSpec::Q).unwrap();
        assert_eq!(p, parse_polynomial("x0*x1 - x2^2", 3, FieldSpec::Q).unwrap());
    }

    #[test]
    fn double_plus_is_error_at_second_plus() {
        let err = parse_polynomial("x0^2 + + x1", 2, FieldSpec::Q).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 8,
                message: "unexpected token '+'".into()
            }
        );
    }

    #[test]
    fn unknown_variables() {
        assert!(matches!(
            parse_polynomial("x5 + 1", 3, FieldSpec::Q),
            Err(Error::UnknownVariable { column: 1, .. })
        ));
        assert!(matches!(
            parse_polynomial("t", 3, FieldSpec::Q),
            Err(Error::UnknownVariable { .. })
        ));
    }

    #[test]
    fn rational_literals_and_field_membership() {
        let p = parse_polynomial("1/2*x0 - 3/4", 1, FieldSpec::Q).unwrap();
        assert_eq!(p.to_string(), "1/2*x0 - 3/4");
        let f101 = FieldSpec::prime(101).unwrap();
        assert!(matches!(
            parse_polynomial("1/101*x0", 1, f101),
            Err(Error::CoefficientNotInField(_))
        ));
        let p = parse_polynomial("1/2", 1, f101).unwrap();
        assert_eq!(p.to_string(), "51");
    }

    #[test]
    fn quotients() {
        let (n, d) = parse_rational_expression("x0/(1 + x2)", 3, FieldSpec::Q).unwrap();
        assert_eq!(n.to_string(), "x0");
        assert_eq!(d.to_string(), "x2 + 1");
        assert!(parse_polynomial("x0/x1", 2, FieldSpec::Q).is_err());
        assert!(parse_polynomial("(x0 + 1", 2, FieldSpec::Q).is_err());
        assert!(parse_polynomial("x0 x1", 2, FieldSpec::Q).is_err());
    }
}
