//! Text form of coefficients, polynomials and series.
//!
//! ```text
//! expr  := sign? term (("+" | "-") term)* ("+" "O" "(" VAR ("^" INT)? ")")?
//! term  := atom* ("*")? (VAR ("^" "-"? INT)?)?
//! atom  := rational | "[" rational ("," rational)* "]" | "(" expr ")" | alias
//! ```
//!
//! Whitespace is insignificant. Atoms in one term multiply left to right.
//! Aliases are basis labels of the ground ring and variables of inner
//! polynomial rings. Printing always uses a single atom per term, so
//! parsing printed output gives back the same element.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{add_term, RingConfig, SkewPoly};
use crate::rational::Rational;
use crate::rings::{Ring, RingElement};
use crate::series::TruncatedSeries;

/// Text of a single coefficient atom.
pub fn format_coefficient(c: &RingElement) -> String {
    match c {
        RingElement::Coords { coords, .. } => match c.as_scalar() {
            Some(l) => l.to_string(),
            None => {
                let parts: Vec<String> = coords.iter().map(Rational::to_string).collect();
                format!("[{}]", parts.join(","))
            }
        },
        RingElement::Poly(p) => match c.as_scalar() {
            Some(l) => l.to_string(),
            None => format!("({})", format_poly(p)),
        },
    }
}

pub fn format_element(c: &RingElement) -> String {
    format_coefficient(c)
}

fn var_text(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// `(negative, body)` of one term.
fn term_body(c: &RingElement, e: i64, var: &str) -> (bool, String) {
    let v = var_text(var, e);
    if let Some(l) = c.as_scalar() {
        let a = l.abs();
        if e != 0 && a.is_one() {
            return (l.is_negative(), v);
        }
        return (l.is_negative(), format!("{a}{v}"));
    }
    (false, format!("{}{v}", format_coefficient(c)))
}

fn format_terms<'a>(
    terms: impl Iterator<Item = (&'a i64, &'a RingElement)>,
    var: &str,
) -> String {
    let mut out = String::new();
    for (idx, (&e, c)) in terms.enumerate() {
        let (neg, body) = term_body(c, e, var);
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

/// Terms by descending exponent.
pub fn format_poly(p: &SkewPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    format_terms(p.terms().iter().rev(), p.config().variable())
}

/// Terms by descending exponent followed by the `O(X^(N+1))` marker.
pub fn format_series(s: &TruncatedSeries) -> String {
    let var = s.config().variable();
    let big_o = match s.precision() + 1 {
        1 => format!("O({var})"),
        k => format!("O({var}^{k})"),
    };
    if s.is_zero() {
        return big_o;
    }
    format!("{} + {big_o}", format_terms(s.coeffs().iter().rev(), var))
}

/// A parsed expression: a polynomial, or a series for series shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Poly(SkewPoly),
    Series(TruncatedSeries),
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Poly(p) => f.write_str(&format_poly(p)),
            Expr::Series(s) => f.write_str(&format_series(s)),
        }
    }
}

/// Parses `text` in `config`. Series shapes need the trailing `O(X^N)`.
pub fn parse_expr(text: &str, config: &Arc<RingConfig>) -> Result<Expr> {
    let mut p = Parser::new(text, &known_names_config(config))?;
    let (poly, big_o) = p.parse_sum(config, true)?;
    p.expect_end()?;
    if config.shape().is_series() {
        let Some(k) = big_o else {
            return Err(p.error_at_end("missing O(X^N) precision marker"));
        };
        Ok(Expr::Series(TruncatedSeries::from_poly(&poly, k - 1)?))
    } else {
        if big_o.is_some() {
            return Err(p.error_at_end("precision marker in a polynomial shape"));
        }
        Ok(Expr::Poly(poly))
    }
}

/// Parses a polynomial; series markers are rejected.
pub fn parse_poly(text: &str, config: &Arc<RingConfig>) -> Result<SkewPoly> {
    let mut p = Parser::new(text, &known_names_config(config))?;
    let (poly, big_o) = p.parse_sum(config, false)?;
    debug_assert!(big_o.is_none());
    p.expect_end()?;
    Ok(poly)
}

/// Parses a single coefficient of `ring`.
pub fn parse_coefficient(text: &str, ring: &Ring) -> Result<RingElement> {
    let mut names = Vec::new();
    known_names_ring(ring, &mut names);
    let mut p = Parser::new(text, &names)?;
    let c = p.parse_element_sum(ring)?;
    p.expect_end()?;
    Ok(c)
}

fn known_names_ring(ring: &Ring, out: &mut Vec<String>) {
    match ring {
        Ring::Poly(c) => {
            out.push(c.variable().to_string());
            known_names_ring(c.coefficients(), out);
        }
        _ => out.extend(ring.basis_labels().into_iter().filter(|l| {
            l.chars().next().is_some_and(|c| c.is_alphabetic())
        })),
    }
}

fn known_names_config(config: &RingConfig) -> Vec<String> {
    let mut out = vec![config.variable().to_string(), "O".to_string()];
    known_names_ring(config.coefficients(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn parse_error(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = line_col(src, offset);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str, names: &[String]) -> Result<Vec<(Tok, usize)>> {
    let mut names: Vec<&str> = names.iter().map(String::as_str).collect();
    names.sort_by_key(|n| std::cmp::Reverse(n.len()));
    let mut out = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
        } else if c.is_ascii_digit() {
            let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            out.push((Tok::Num(rest[..len].to_string()), i));
            i += len;
        } else if "+-*/^[](),·".contains(c) {
            let sym = if c == '·' { '*' } else { c };
            out.push((Tok::Sym(sym), i));
            i += c.len_utf8();
        } else if c.is_alphabetic() || c == '_' {
            let Some(name) = names.iter().find(|n| rest.starts_with(**n)) else {
                let word: String = rest
                    .chars()
                    .take_while(|ch| ch.is_alphanumeric() || *ch == '_')
                    .collect();
                return Err(parse_error(src, i, format!("unknown identifier {word:?}")));
            };
            out.push((Tok::Ident(name.to_string()), i));
            i += name.len();
        } else {
            return Err(parse_error(src, i, format!("unexpected character {c:?}")));
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, names: &[String]) -> Result<Self> {
        Ok(Parser {
            src,
            toks: lex(src, names)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        parse_error(self.src, self.offset(), message)
    }

    fn error_at_end(&self, message: impl Into<String>) -> Error {
        parse_error(self.src, self.src.len(), message)
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn expect_end(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.bump() {
            Tok::Num(n) => {
                let v: i64 = n.parse().map_err(|_| self.error("integer out of range"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    /// `NUM ("/" NUM)?`, optionally signed.
    fn rational(&mut self) -> Result<Rational> {
        let start = self.offset();
        let neg = self.eat('-');
        let Tok::Num(n) = self.bump() else {
            return Err(parse_error(self.src, start, "expected a rational"));
        };
        let mut text = n;
        if self.eat('/') {
            let Tok::Num(d) = self.bump() else {
                return Err(self.error("expected a denominator"));
            };
            text = format!("{text}/{d}");
        }
        let r = Rational::parse(&text).map_err(|_| parse_error(self.src, start, "zero denominator"))?;
        Ok(if neg { -r } else { r })
    }

    fn vector(&mut self, ring: &Ring) -> Result<RingElement> {
        let start = self.offset();
        self.expect('[')?;
        let mut coords = vec![self.rational()?];
        while self.eat(',') {
            coords.push(self.rational()?);
        }
        self.expect(']')?;
        ring.from_coords(coords)
            .map_err(|e| parse_error(self.src, start, e.to_string()))
    }

    fn at_atom(&self, ring: &Ring) -> bool {
        match self.peek() {
            Tok::Num(_) => true,
            Tok::Sym('[') | Tok::Sym('(') => true,
            Tok::Ident(name) => self.is_alias(ring, name),
            _ => false,
        }
    }

    fn is_alias(&self, ring: &Ring, name: &str) -> bool {
        match ring {
            Ring::Poly(c) => c.variable() == name || self.is_alias(c.coefficients(), name),
            _ => ring.basis_labels().iter().any(|l| l == name),
        }
    }

    /// One coefficient atom of `ring`.
    fn atom(&mut self, ring: &Ring) -> Result<RingElement> {
        match (self.peek().clone(), ring) {
            (Tok::Num(_), _) => Ok(ring.scalar(self.rational()?)),
            (Tok::Sym('('), Ring::Poly(c)) => {
                self.bump();
                let (p, _) = self.parse_sum(c, false)?;
                self.expect(')')?;
                Ok(RingElement::Poly(p))
            }
            (Tok::Sym('('), _) => {
                self.bump();
                let v = self.parse_element_sum(ring)?;
                self.expect(')')?;
                Ok(v)
            }
            (Tok::Ident(name), Ring::Poly(c)) if name == c.variable() => {
                self.bump();
                let e = if self.eat('^') { self.integer()? } else { 1 };
                if e < 0 && !c.shape().allows_negative() {
                    return Err(self.error("negative exponent"));
                }
                Ok(RingElement::Poly(SkewPoly::x_pow(c, e)))
            }
            (_, Ring::Poly(c)) => {
                let inner = self.atom(c.coefficients())?;
                Ok(RingElement::Poly(SkewPoly::constant(c, inner)))
            }
            (Tok::Sym('['), _) => self.vector(ring),
            (Tok::Ident(name), _) => match ring.basis_labels().iter().position(|l| *l == name) {
                Some(p) => {
                    self.bump();
                    Ok(ring.basis_element(p))
                }
                None => Err(self.error(format!("{name:?} is not a basis label of {ring}"))),
            },
            _ => Err(self.error("expected a coefficient")),
        }
    }

    /// Product of consecutive atoms, or `None` if there are none.
    fn atoms(&mut self, ring: &Ring) -> Result<Option<RingElement>> {
        let mut acc: Option<RingElement> = None;
        while self.at_atom(ring) {
            let start = self.offset();
            let a = self.atom(ring)?;
            acc = Some(match acc {
                None => a,
                Some(prev) => prev
                    .mul(&a)
                    .map_err(|e| parse_error(self.src, start, e.to_string()))?,
            });
            self.eat('*');
        }
        Ok(acc)
    }

    /// A signed sum of atom products in `ring`.
    fn parse_element_sum(&mut self, ring: &Ring) -> Result<RingElement> {
        let mut acc = ring.zero();
        let mut neg = self.eat('-') || {
            self.eat('+');
            false
        };
        loop {
            let Some(t) = self.atoms(ring)? else {
                return Err(self.error("expected a coefficient"));
            };
            let t = if neg { t.neg() } else { t };
            acc = acc.add(&t)?;
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn at_big_o(&self, config: &RingConfig) -> bool {
        *self.peek() == Tok::Ident("O".into())
            && *self.peek_at(1) == Tok::Sym('(')
            && config.variable() != "O"
    }

    /// `O(X^K)`, returning `K`.
    fn big_o(&mut self, config: &RingConfig) -> Result<i64> {
        self.bump();
        self.expect('(')?;
        match self.bump() {
            Tok::Ident(v) if v == config.variable() => {}
            _ => return Err(self.error(format!("expected {}", config.variable()))),
        }
        let k = if self.eat('^') { self.integer()? } else { 1 };
        self.expect(')')?;
        Ok(k)
    }

    /// One term `c X^e`.
    fn term(&mut self, config: &Arc<RingConfig>) -> Result<(i64, RingElement)> {
        let ring = config.coefficients();
        let coeff = self.atoms(ring)?;
        let e = match self.peek() {
            Tok::Ident(v) if v == config.variable() => {
                self.bump();
                if self.eat('^') {
                    let at = self.offset();
                    let e = self.integer()?;
                    if e < 0 && !config.shape().allows_negative() {
                        return Err(parse_error(
                            self.src,
                            at,
                            format!("negative exponent in {} shape", config.shape().name()),
                        ));
                    }
                    e
                } else {
                    1
                }
            }
            _ if coeff.is_some() => 0,
            _ => return Err(self.error("expected a term")),
        };
        Ok((e, coeff.unwrap_or_else(|| ring.one())))
    }

    /// A polynomial, plus the `K` of a trailing `O(X^K)` when `top`.
    fn parse_sum(
        &mut self,
        config: &Arc<RingConfig>,
        top: bool,
    ) -> Result<(SkewPoly, Option<i64>)> {
        let mut terms = BTreeMap::new();
        let mut neg = self.eat('-') || {
            self.eat('+');
            false
        };
        loop {
            if top && self.at_big_o(config) {
                if neg {
                    return Err(self.error("precision marker must be added"));
                }
                let k = self.big_o(config)?;
                return Ok((SkewPoly::from_terms(config, terms), Some(k)));
            }
            let (e, c) = self.term(config)?;
            add_term(&mut terms, e, if neg { c.neg() } else { c })?;
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok((SkewPoly::from_terms(config, terms), None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{make_twist, TwistDescriptor};
    use crate::poly::{quantum_torus, Shape};
    use crate::rings::{gaussian_rationals, octonions};

    fn gauss(shape: Shape) -> Arc<RingConfig> {
        let c = Ring::algebra(gaussian_rationals());
        let sigma = make_twist(&c, &TwistDescriptor::QTwist { q: Rational::from_integer(2) }).unwrap();
        RingConfig::new(c, sigma, None, "X", shape).unwrap()
    }

    #[test]
    fn parse_vector_literal() {
        let cfg = gauss(Shape::Laurent);
        let p = parse_poly("[0,1]X^2 + [1,0]", &cfg).unwrap();
        let c = cfg.coefficients();
        let expected = SkewPoly::monomial(&cfg, c.basis_element(1), 2)
            .add(&SkewPoly::one(&cfg))
            .unwrap();
        assert_eq!(p, expected);
        assert_eq!(parse_poly("iX^2 + 1", &cfg).unwrap(), expected);
        assert_eq!(format_poly(&p), "[0,1]X^2 + 1");
    }

    #[test]
    fn negative_exponent_in_ore_shape() {
        let cfg = gauss(Shape::Ore);
        let err = parse_poly("X^-1", &cfg).unwrap_err();
        match err {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (1, 3));
                assert!(message.contains("negative exponent"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn series_marker() {
        let cfg = gauss(Shape::PowerSeries);
        let Expr::Series(s) = parse_expr("1 - [0,1]X + O(X^4)", &cfg).unwrap() else {
            panic!()
        };
        assert_eq!(s.precision(), 3);
        assert!(parse_expr("1 - X", &cfg).is_err());
        assert_eq!(format_series(&s), "[0,-1]X + 1 + O(X^4)");
    }

    #[test]
    fn round_trip_nested() {
        let cfg = quantum_torus(&Ring::algebra(octonions()), &Rational::from_integer(2)).unwrap();
        let p = parse_poly("(e1Y^2 - 1/2)X^-1 + 3Y - e7", &cfg).unwrap();
        let text = format_poly(&p);
        assert_eq!(parse_poly(&text, &cfg).unwrap(), p);
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let cfg = gauss(Shape::Laurent);
        let err = parse_poly("1 +\n  Z", &cfg).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }));
        assert!(parse_poly("[1,2,3]", &cfg).is_err());
        assert!(parse_poly("1/0", &cfg).is_err());
    }
}
