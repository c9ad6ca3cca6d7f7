//! Input parsing: polynomial expressions in `x`, `y` and coefficient lists.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' unary)?
//! atom   := integer | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! There is no implicit multiplication. Exponents must evaluate to
//! non-negative integer constants and divisors to nonzero constants.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use waring_core::{BinaryForm, Convention, Rational};

use crate::CliError;

/// Total degree beyond which evaluation is refused.
const MAX_DEGREE: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Num,
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tok::Num => "number",
            Tok::X => "'x'",
            Tok::Y => "'y'",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::Star => "'*'",
            Tok::Slash => "'/'",
            Tok::Caret => "'^'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::End => "end of input",
        })
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    /// 1-based character column.
    pos: usize,
    text: String,
}

fn err(pos: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        position: Some(pos),
        message: message.into(),
    }
}

fn tokenize(s: &str) -> Result<Vec<Token>, CliError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token {
                kind: Tok::Num,
                pos,
                text: chars[start..i].iter().collect(),
            });
            continue;
        }
        let kind = match c {
            'x' | 'X' => Tok::X,
            'y' | 'Y' => Tok::Y,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(err(pos, format!("unexpected character {other:?}"))),
        };
        out.push(Token {
            kind,
            pos,
            text: c.to_string(),
        });
        i += 1;
    }
    out.push(Token {
        kind: Tok::End,
        pos: chars.len() + 1,
        text: String::new(),
    });
    Ok(out)
}

/// Sparse polynomial in `x, y`: exponent pair to coefficient.
#[derive(Clone, Debug, Default, PartialEq)]
struct Poly(BTreeMap<(u32, u32), Rational>);

impl Poly {
    fn constant(c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((0, 0), c);
        }
        Poly(m)
    }

    fn var(e: (u32, u32)) -> Self {
        Poly(BTreeMap::from([(e, Rational::one())]))
    }

    fn as_constant(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => self.0.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn degree(&self) -> u32 {
        self.0.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    fn add(mut self, rhs: Poly, sign: i32) -> Poly {
        for (e, c) in rhs.0 {
            let slot = self.0.entry(e).or_insert_with(Rational::zero);
            if sign < 0 {
                *slot -= c;
            } else {
                *slot += c;
            }
            if slot.is_zero() {
                self.0.remove(&e);
            }
        }
        self
    }

    fn mul(&self, rhs: &Poly) -> Poly {
        let mut out = Poly::default();
        for (&(a, b), c) in &self.0 {
            for (&(p, q), d) in &rhs.0 {
                out = out.add(Poly(BTreeMap::from([((a + p, b + q), c * d)])), 1);
            }
        }
        out
    }

    fn scale(mut self, s: &Rational) -> Poly {
        for c in self.0.values_mut() {
            *c *= s;
        }
        self
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.kind != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly, CliError> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek().kind {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.term()?;
            acc = acc.add(rhs, sign);
        }
    }

    fn term(&mut self) -> Result<Poly, CliError> {
        let mut acc = self.unary()?;
        while matches!(self.peek().kind, Tok::Star | Tok::Slash) {
            let op = self.bump();
            let rhs = self.unary()?;
            if op.kind == Tok::Star {
                acc = acc.mul(&rhs);
            } else {
                match rhs.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => return Err(err(op.pos, "division by zero")),
                    None => return Err(err(op.pos, "can only divide by a constant")),
                }
            }
            if acc.degree() > MAX_DEGREE {
                return Err(err(op.pos, format!("degree exceeds {MAX_DEGREE}")));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, CliError> {
        match self.peek().kind {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.scale(&-Rational::one()))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, CliError> {
        let base = self.atom()?;
        if self.peek().kind != Tok::Caret {
            return Ok(base);
        }
        let pos = self.bump().pos;
        let e = self.unary()?;
        let e = e
            .as_constant()
            .filter(|c| c.is_integer() && !c.is_negative())
            .ok_or_else(|| err(pos, "exponent must be a non-negative integer constant"))?;
        let e = e
            .to_integer()
            .to_u32()
            .filter(|&n| n <= MAX_DEGREE && n.saturating_mul(base.degree()) <= MAX_DEGREE)
            .ok_or_else(|| err(pos, format!("exponent too large (degree limit {MAX_DEGREE})")))?;
        let mut out = Poly::constant(Rational::one());
        for _ in 0..e {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Poly, CliError> {
        let t = self.bump();
        match t.kind {
            Tok::Num => {
                let n: BigInt = t.text.parse().expect("digits");
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Tok::X => Ok(Poly::var((1, 0))),
            Tok::Y => Ok(Poly::var((0, 1))),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.kind != Tok::RParen {
                    return Err(err(close.pos, format!("expected ')', found {}", close.kind)));
                }
                Ok(inner)
            }
            other => Err(err(t.pos, format!("expected a number, 'x', 'y' or '(', found {other}"))),
        }
    }
}

fn render_monomial(c: &Rational, a: u32, b: u32) -> String {
    let mut parts = Vec::new();
    if !(c.is_one() && a + b > 0) {
        parts.push(c.to_string());
    }
    for (v, e) in [("x", a), ("y", b)] {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            e => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

/// Parses a homogeneous polynomial expression in `x` and `y`.
///
/// The zero polynomial is rejected since it has no degree.
pub fn parse_expression(s: &str) -> Result<BinaryForm, CliError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, at: 0 };
    let poly = p.expr()?;
    let end = p.peek();
    if end.kind != Tok::End {
        let hint = if matches!(end.kind, Tok::X | Tok::Y | Tok::LParen | Tok::Num) {
            " (use '*' for multiplication)"
        } else {
            ""
        };
        return Err(err(end.pos, format!("unexpected {}{hint}", end.kind)));
    }
    if poly.0.is_empty() {
        return Err(CliError::Math(waring_core::Error::ZeroForm));
    }
    let d = poly.degree();
    if let Some(((a, b), c)) = poly.0.iter().find(|((a, b), _)| a + b != d) {
        return Err(CliError::Parse {
            position: None,
            message: format!(
                "not homogeneous: monomial {} has degree {}, expected {d}",
                render_monomial(c, *a, *b),
                a + b
            ),
        });
    }
    let d = d as usize;
    let mut coeffs = vec![Rational::zero(); d + 1];
    for ((_, b), c) in poly.0 {
        coeffs[b as usize] = c;
    }
    Ok(BinaryForm::new(coeffs))
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// A comma-separated coefficient list `c₀, …, c_d` of integers or `p/q`.
pub fn parse_coeffs(csv: &str, convention: Convention) -> Result<BinaryForm, CliError> {
    let mut coeffs = Vec::new();
    let mut col = 1;
    for field in csv.split(',') {
        let value = parse_rational(field).ok_or_else(|| {
            let lead = field.len() - field.trim_start().len();
            err(col + lead, format!("invalid coefficient {:?}", field.trim()))
        })?;
        coeffs.push(value);
        col += field.chars().count() + 1;
    }
    let d = coeffs.len() - 1;
    let f = BinaryForm::make(d, coeffs, convention).map_err(CliError::Math)?;
    if f.is_zero() {
        return Err(CliError::Math(waring_core::Error::ZeroForm));
    }
    Ok(f)
}

/// One line of input: `plain: <csv>`, `binomial: <csv>` or an expression.
pub fn parse_input(line: &str) -> Result<BinaryForm, CliError> {
    let line = line.trim();
    for (tag, convention) in [("plain:", Convention::Plain), ("binomial:", Convention::Binomial)] {
        if let Some(rest) = line.strip_prefix(tag) {
            return parse_coeffs(rest, convention).map_err(|e| e.shift(tag.len()));
        }
    }
    parse_expression(line)
}
