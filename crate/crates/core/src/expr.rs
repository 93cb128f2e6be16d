//! Text input and canonical output for polynomials.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' uint)?
//! primary := uint ('/' uint)? | ident | '(' expr ')'
//! ```
//!
//! A slash is only allowed inside a rational literal such as `1/3`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ore::SkewPoly;
use crate::poly::{Monomial, Polynomial, RationalFunction, RingElem, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent")]
    NegativeExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

/// Names `z1, ..., zn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).collect()
}

/// Parse `text` as a polynomial in the variables `vars` (in order).
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: vars.iter().map(|v| v.as_ref()).collect(),
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<&'a str>,
}

impl<'a> Parser<'a> {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(b'-') => Err(ParseError {
                offset: self.pos,
                kind: ParseErrorKind::NegativeExponent,
            }),
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                let e: u32 = digits.parse().map_err(|_| ParseError {
                    offset: start,
                    kind: ParseErrorKind::Syntax("exponent too large".into()),
                })?;
                if self.peek() == Some(b'^') {
                    return Err(self.syntax("chained exponents need parentheses"));
                }
                Ok(base.pow(e))
            }
            _ => Err(self.syntax("expected a nonnegative integer exponent")),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn primary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return Err(self.syntax("expected a denominator after `/`"));
                    }
                    let den_at = self.pos;
                    let den: BigInt = self.digits().parse().expect("digits");
                    if den.is_zero() {
                        return Err(ParseError {
                            offset: den_at,
                            kind: ParseErrorKind::Syntax("zero denominator".into()),
                        });
                    }
                    return Ok(Polynomial::constant(self.nvars(), Scalar::new(num, den)));
                }
                self.pos = save;
                Ok(Polynomial::constant(self.nvars(), Scalar::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || matches!(self.src[self.pos], b'_' | b'\''))
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var(self.nvars(), i)),
                    None => Err(ParseError {
                        offset: start,
                        kind: ParseErrorKind::UnknownVariable(name.to_string()),
                    }),
                }
            }
            Some(c) => Err(self.syntax(format!("unexpected `{}`", c as char))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

fn monomial_body<S: AsRef<str>>(m: &Monomial, names: &[S]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].as_ref().to_string()),
            _ => parts.push(format!("{}^{e}", names[i].as_ref())),
        }
    }
    parts.join("*")
}

/// Signed pieces of a polynomial, highest term first.
fn pieces<S: AsRef<str>>(f: &Polynomial, names: &[S]) -> Vec<(bool, String)> {
    f.terms()
        .rev()
        .map(|(m, c)| {
            let mag = c.abs();
            let body = if m.is_one() {
                mag.to_string()
            } else if mag.is_one() {
                monomial_body(m, names)
            } else {
                format!("{mag}*{}", monomial_body(m, names))
            };
            (c.is_negative(), body)
        })
        .collect()
}

fn join_pieces(pieces: &[(bool, String)]) -> String {
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (neg, body)) in pieces.iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

/// Canonical text: terms in descending graded-lex order.
pub fn format_poly<S: AsRef<str>>(f: &Polynomial, names: &[S]) -> String {
    join_pieces(&pieces(f, names))
}

pub fn format_poly_default(f: &Polynomial) -> String {
    format_poly(f, &default_names(f.nvars()))
}

fn wrap(f: &Polynomial, names: &[impl AsRef<str>]) -> String {
    let s = format_poly(f, names);
    if f.num_terms() > 1 {
        format!("({s})")
    } else {
        s
    }
}

/// `num / den` with a monic denominator, or just `num` when `den = 1`.
pub fn format_ratfunc<S: AsRef<str>>(c: &RationalFunction, names: &[S]) -> String {
    if c.denominator().is_one() {
        return format_poly(c.numerator(), names);
    }
    format!("{} / {}", wrap(c.numerator(), names), wrap(c.denominator(), names))
}

pub fn format_ratfunc_default(c: &RationalFunction) -> String {
    format_ratfunc(c, &default_names(c.nvars()))
}

/// Coefficient types that can be printed in front of `x^i`.
pub trait FormatCoeff: RingElem {
    /// Signed pieces when the coefficient is a single signed term, `None` otherwise.
    fn single_term<S: AsRef<str>>(&self, names: &[S]) -> Option<(bool, String)>;
    fn render<S: AsRef<str>>(&self, names: &[S]) -> String;
}

impl FormatCoeff for Polynomial {
    fn single_term<S: AsRef<str>>(&self, names: &[S]) -> Option<(bool, String)> {
        let mut p = pieces(self, names);
        (p.len() == 1).then(|| p.remove(0))
    }

    fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        format_poly(self, names)
    }
}

impl FormatCoeff for RationalFunction {
    fn single_term<S: AsRef<str>>(&self, names: &[S]) -> Option<(bool, String)> {
        if self.denominator().is_one() {
            self.numerator().single_term(names)
        } else {
            None
        }
    }

    fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        format_ratfunc(self, names)
    }
}

/// Left normal form `f_m x^m + ... + f_0`, highest power first.
pub fn format_ore<C: FormatCoeff, S: AsRef<str>>(a: &SkewPoly<C>, names: &[S], x: &str) -> String {
    let mut out: Vec<(bool, String)> = Vec::new();
    for (i, c) in a.coeffs().iter().enumerate().rev() {
        if c.is_zero_elem() {
            continue;
        }
        let xpow = match i {
            0 => String::new(),
            1 => x.to_string(),
            _ => format!("{x}^{i}"),
        };
        if i == 0 {
            match c.single_term(names) {
                Some(piece) => out.push(piece),
                None => out.push((false, c.render(names))),
            }
            continue;
        }
        match c.single_term(names) {
            Some((neg, body)) if body == "1" => out.push((neg, xpow)),
            Some((neg, body)) => out.push((neg, format!("{body}*{xpow}"))),
            None => out.push((false, format!("({})*{xpow}", c.render(names)))),
        }
    }
    join_pieces(&out)
}

pub fn format_ore_default<C: FormatCoeff>(a: &SkewPoly<C>, nvars: usize) -> String {
    format_ore(a, &default_names(nvars), "x")
}

/// Tuple such as `(1/2*z1, z2)`.
pub fn format_tuple<S: AsRef<str>>(polys: &[Polynomial], names: &[S]) -> String {
    let mut s = String::from("(");
    for (k, p) in polys.iter().enumerate() {
        if k > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{}", format_poly(p, names));
    }
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::OrePoly;
    use crate::poly::{int, ratio};

    fn names() -> Vec<String> {
        default_names(2)
    }

    fn z(i: usize) -> Polynomial {
        Polynomial::var(2, i)
    }

    #[test]
    fn parse_examples() {
        let f = parse_poly("2*z1^2*z2 - 1/3", &names()).unwrap();
        let expected = &z(0).pow(2).mul_monomial(&Monomial::var(2, 1), &int(2))
            - &Polynomial::constant(2, ratio(1, 3));
        assert_eq!(f, expected);
        assert_eq!(f.num_terms(), 2);

        let sq = parse_poly("(z1+z2)^2", &names()).unwrap();
        assert_eq!(sq, (&z(0) + &z(1)).pow(2));

        let err = parse_poly("z1^-1", &names()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NegativeExponent);
        assert_eq!(err.offset, 3);
    }

    #[test]
    fn parse_errors_are_located() {
        let err = parse_poly("z1 + w", &names()).unwrap_err();
        assert_eq!((err.offset, err.kind), (5, ParseErrorKind::UnknownVariable("w".into())));
        let err = parse_poly("(z1 + z2", &names()).unwrap_err();
        assert_eq!(err.offset, 8);
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        assert!(parse_poly("z1 z2", &names()).is_err());
        assert!(parse_poly("", &names()).is_err());
        assert!(parse_poly("1/0", &names()).is_err());
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_poly("-z1^2", &names()).unwrap(), -z(0).pow(2));
        assert_eq!(parse_poly("2*-z1", &names()).unwrap(), z(0).scale(&int(-2)));
        assert_eq!(parse_poly("z1 - z2 - z1", &names()).unwrap(), -z(1));
        assert_eq!(parse_poly("1/2*z1", &names()).unwrap(), z(0).scale(&ratio(1, 2)));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_poly(&(&z(1) + &z(0)), &names()), "z1 + z2");
        assert_eq!(format_poly(&Polynomial::zero(2), &names()), "0");
        let kappa = RationalFunction::new(z(0), z(1)).unwrap();
        assert_eq!(format_ratfunc(&kappa, &names()), "z1 / z2");
        let b = RationalFunction::new(&z(0) - &z(1), z(1)).unwrap();
        assert_eq!(format_ratfunc(&b, &names()), "(z1 - z2) / z2");
        let f = parse_poly("2*z1^2*z2 - 1/3", &names()).unwrap();
        assert_eq!(format_poly(&f, &names()), "2*z1^2*z2 - 1/3");
        assert_eq!(format_poly(&z(0).scale(&ratio(-1, 2)), &names()), "-1/2*z1");
    }

    #[test]
    fn format_ore_examples() {
        let a = OrePoly::from_coeffs(vec![z(0), z(1)]);
        assert_eq!(format_ore_default(&a, 2), "z2*x + z1");
        let b = OrePoly::from_coeffs(vec![Polynomial::zero(2), Polynomial::constant(2, int(-1))]);
        assert_eq!(format_ore_default(&b, 2), "-x");
        let c = OrePoly::from_coeffs(vec![
            Polynomial::one(2),
            Polynomial::zero(2),
            &z(0) + &z(1),
        ]);
        assert_eq!(format_ore_default(&c, 2), "(z1 + z2)*x^2 + 1");
        assert_eq!(format_ore_default(&OrePoly::zero(), 2), "0");
    }

    #[test]
    fn round_trip() {
        for text in ["z1 + z2", "2*z1^2*z2 - 1/3", "-z1*z2^3 + 7/5*z2", "0", "-1"] {
            let f = parse_poly(text, &names()).unwrap();
            assert_eq!(format_poly(&f, &names()), text);
        }
    }
}
