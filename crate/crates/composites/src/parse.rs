//! Crate-internal recursive-descent parser for scalar and polynomial
//! literals.
//!
//! Grammar (whitespace-insensitive, `−` accepted for `-`):
//!
//! ```text
//! poly     := ["-"] term { ("+"|"-") term }
//! term     := factor { "*" factor }
//! factor   := INT [ "/" INT ]          rational literal
//!           | "sqrt" INT               multi-quadratic basis element
//!           | "x" [ "^" exponent ]     variable (or GF generator in scalars)
//!           | "(" poly ")"             parenthesized coefficient, scalar context
//! exponent := INT | "(" INT "/" INT ")"
//! ```
//!
//! Parenthesized groups and standalone scalars are parsed in *scalar
//! context*, where `x` denotes the generator of a GF(pᵏ) domain rather than
//! the polynomial variable; this is what lets `(x+1)*x^2` over GF(4) mean
//! "the element x+1 times the square of the variable".

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Sqrt(u64),
    X,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits
                    .parse::<BigInt>()
                    .map_err(|_| Error::SyntaxError(format!("bad integer {digits:?}")))?;
                out.push(Tok::Int(n));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                match word.as_str() {
                    "x" => out.push(Tok::X),
                    "sqrt" => {
                        let dstart = i;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                        if dstart == i {
                            return Err(Error::SyntaxError("sqrt needs a radicand".into()));
                        }
                        let digits: String = chars[dstart..i].iter().collect();
                        let d = digits
                            .parse::<u64>()
                            .map_err(|_| Error::SyntaxError(format!("bad radicand {digits:?}")))?;
                        out.push(Tok::Sqrt(d));
                    }
                    _ => return Err(Error::SyntaxError(format!("unknown symbol {word:?}"))),
                }
            }
            _ => return Err(Error::SyntaxError(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    domain: &'a Domain,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        match self.next() {
            Some(t) if t == tok => Ok(()),
            other => Err(Error::SyntaxError(format!("expected {what}, got {other:?}"))),
        }
    }

    /// poly := ["-"] term { ("+"|"-") term }
    fn expr(&mut self, scalar_ctx: bool) -> Result<Poly> {
        let mut acc = if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            self.term(scalar_ctx)?.neg()
        } else {
            self.term(scalar_ctx)?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term(scalar_ctx)?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term(scalar_ctx)?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// term := factor { "*" factor }
    fn term(&mut self, scalar_ctx: bool) -> Result<Poly> {
        let mut acc = self.factor(scalar_ctx)?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.pos += 1;
            acc = acc.mul(&self.factor(scalar_ctx)?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self, scalar_ctx: bool) -> Result<Poly> {
        match self.next() {
            Some(Tok::Int(n)) => {
                // Lookahead for a rational literal INT "/" INT.
                if matches!(self.peek(), Some(Tok::Slash))
                    && matches!(self.toks.get(self.pos + 1), Some(Tok::Int(_)))
                {
                    self.pos += 1;
                    let Some(Tok::Int(d)) = self.next() else { unreachable!() };
                    if d.is_zero() {
                        return Err(Error::SyntaxError("zero denominator".into()));
                    }
                    let r = BigRational::new(n, d);
                    return Ok(Poly::constant(Scalar::from_rational(self.domain, &r)?));
                }
                Ok(Poly::constant(Scalar::from_integer(self.domain, n)))
            }
            Some(Tok::Sqrt(d)) => Ok(Poly::constant(sqrt_scalar(self.domain, d)?)),
            Some(Tok::X) => {
                if scalar_ctx {
                    let generator = gf_generator(self.domain)?;
                    if matches!(self.peek(), Some(Tok::Caret)) {
                        self.pos += 1;
                        let e = self.exponent()?;
                        if !e.is_integer() {
                            return Err(Error::NonIntegralExponent(e.to_string()));
                        }
                        let e = exponent_to_u64(&e)?;
                        return Ok(Poly::constant(generator.pow(e)));
                    }
                    return Ok(Poly::constant(generator));
                }
                let exp = if matches!(self.peek(), Some(Tok::Caret)) {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    BigRational::from_integer(1.into())
                };
                Poly::monomial(exp, Scalar::one(self.domain))
            }
            Some(Tok::LParen) => {
                let inner = self.expr(true)?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            other => Err(Error::SyntaxError(format!(
                "expected a coefficient or x, got {other:?}"
            ))),
        }
    }

    /// exponent := INT | "(" INT "/" INT ")", each optionally negated —
    /// negative exponents are recognized and rejected with a telling error.
    fn exponent(&mut self) -> Result<BigRational> {
        let mut neg = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            neg = true;
        }
        let raw = match self.next() {
            Some(Tok::Int(n)) => BigRational::from_integer(n),
            Some(Tok::LParen) => {
                let mut inner_neg = false;
                if matches!(self.peek(), Some(Tok::Minus)) {
                    self.pos += 1;
                    inner_neg = true;
                }
                let Some(Tok::Int(n)) = self.next() else {
                    return Err(Error::SyntaxError("expected exponent numerator".into()));
                };
                self.expect(Tok::Slash, "/ in rational exponent")?;
                let Some(Tok::Int(d)) = self.next() else {
                    return Err(Error::SyntaxError("expected exponent denominator".into()));
                };
                self.expect(Tok::RParen, "closing parenthesis")?;
                if d.is_zero() {
                    return Err(Error::SyntaxError("zero denominator in exponent".into()));
                }
                let r = BigRational::new(n, d);
                if inner_neg {
                    -r
                } else {
                    r
                }
            }
            other => Err(Error::SyntaxError(format!("expected exponent, got {other:?}")))?,
        };
        let value = if neg { -raw } else { raw };
        if value.is_negative() {
            return Err(Error::NegativeExponent(value.to_string()));
        }
        Ok(value)
    }
}

/// The √d basis element of a multi-quadratic domain; `d` may be any product
/// of a subset of the domain's generators (e.g. `sqrt6` in ℚ(√2,√3)).
fn sqrt_scalar(domain: &Domain, d: u64) -> Result<Scalar> {
    let Some(ds) = domain.quad_generators() else {
        return Err(Error::CoefficientNotInDomain(format!("sqrt{d} over {domain}")));
    };
    for mask in 1..1usize << ds.len() {
        let mut prod = 1u64;
        for (i, &g) in ds.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod *= g;
            }
        }
        if prod == d {
            let one = Scalar::one(domain);
            // Build the basis element as a product of generators.
            let mut acc = one;
            for (i, &g) in ds.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.mul(&generator_sqrt(domain, ds, g)?)?;
                }
            }
            return Ok(acc);
        }
    }
    Err(Error::CoefficientNotInDomain(format!("sqrt{d} over {domain}")))
}

/// The single-generator √g as a scalar of `domain`.
fn generator_sqrt(domain: &Domain, ds: &[u64], g: u64) -> Result<Scalar> {
    let i = ds.iter().position(|&e| e == g).expect("generator present");
    // 1·√g: coordinate 1 at mask 2^i. Constructed via from_integer + shift:
    // multiply basis index by building from rational coordinates directly.
    let mut coords = vec![BigRational::from_integer(0.into()); 1 << ds.len()];
    coords[1 << i] = BigRational::from_integer(1.into());
    Scalar::from_quad_coords(domain, coords)
}

/// The generator x of a GF(pᵏ) domain.
fn gf_generator(domain: &Domain) -> Result<Scalar> {
    Scalar::gf_generator(domain).ok_or_else(|| {
        Error::SyntaxError(format!(
            "the symbol x is not a coefficient of {domain}; parenthesized coefficients \
             use x only for GF(p^k) generators"
        ))
    })
}

fn exponent_to_u64(e: &BigRational) -> Result<u64> {
    use num_traits::ToPrimitive;
    e.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("exponent {e} too large")))
}

/// Parses a polynomial in the variable x over `domain`.
pub(crate) fn parse_poly(text: &str, domain: &Domain) -> Result<Poly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::SyntaxError("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, domain };
    let poly = p.expr(false)?;
    if p.pos != p.toks.len() {
        return Err(Error::SyntaxError(format!(
            "trailing input at token {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(poly)
}

/// Parses a scalar literal over `domain` (`x` = GF generator).
pub(crate) fn parse_scalar(text: &str, domain: &Domain) -> Result<Scalar> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::SyntaxError("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, domain };
    let poly = p.expr(true)?;
    if p.pos != p.toks.len() {
        return Err(Error::SyntaxError(format!(
            "trailing input at token {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(poly.constant_term())
}
