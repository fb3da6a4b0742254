//! Sparse polynomials with exact coefficients and nonnegative rational
//! exponents.
//!
//! One representation serves two roles: ordinary polynomials in B[X]
//! (integer exponents) and monoid-domain elements of B[X;M] (exponents in a
//! submonoid of ℚ₊). Terms live in an ordered map keyed by exponent, zero
//! coefficients are never stored, and equal values always have identical
//! term maps — so `==` decides mathematical equality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponents are exact nonnegative rationals.
pub type Exponent = BigRational;

/// A sparse polynomial over a single coefficient [`Domain`].
///
/// ```
/// use composites::{Domain, Poly};
///
/// let z: Domain = "Z".parse().unwrap();
/// let f = Poly::parse("2*x^3 - x^2", &z).unwrap();
/// let g = Poly::parse("x^2", &z).unwrap();
/// assert_eq!(f.add(&g).unwrap().to_string(), "2*x^3");
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    domain: Domain,
    terms: BTreeMap<Exponent, Scalar>,
}

impl Poly {
    /// The zero polynomial (empty term map).
    pub fn zero(domain: &Domain) -> Poly {
        Poly { domain: domain.clone(), terms: BTreeMap::new() }
    }

    /// The constant polynomial 1.
    pub fn one(domain: &Domain) -> Poly {
        Poly::constant(Scalar::one(domain))
    }

    /// A constant polynomial.
    pub fn constant(c: Scalar) -> Poly {
        let domain = c.domain().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(BigRational::zero(), c);
        }
        Poly { domain, terms }
    }

    /// The single-term polynomial `c·Xᵉ`; rejects negative exponents.
    pub fn monomial(exponent: Exponent, c: Scalar) -> Result<Poly> {
        if exponent.is_negative() {
            return Err(Error::NegativeExponent(exponent.to_string()));
        }
        let domain = c.domain().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Ok(Poly { domain, terms })
    }

    /// Builds a polynomial from (exponent, coefficient) pairs. Repeated
    /// exponents are summed; zero coefficients are dropped; every
    /// coefficient must lie in `domain`.
    pub fn from_terms(
        domain: &Domain,
        terms: impl IntoIterator<Item = (Exponent, Scalar)>,
    ) -> Result<Poly> {
        let mut acc: BTreeMap<Exponent, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            if e.is_negative() {
                return Err(Error::NegativeExponent(e.to_string()));
            }
            if c.domain() != domain {
                return Err(Error::DomainMismatch {
                    left: domain.to_string(),
                    right: c.domain().to_string(),
                });
            }
            match acc.remove(&e) {
                None => {
                    acc.insert(e, c);
                }
                Some(old) => {
                    acc.insert(e, old.add(&c)?);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Poly { domain: domain.clone(), terms: acc })
    }

    /// Parses the polynomial grammar, e.g. `2*x^3 - x^2`, `x^(3/2) + 1`,
    /// `(1+sqrt2)*x`, `(x+1)*x^2`.
    pub fn parse(text: &str, domain: &Domain) -> Result<Poly> {
        crate::parse::parse_poly(text, domain)
    }

    /// The coefficient domain.
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    /// True for the constant polynomial 1.
    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    /// The coefficient at an exponent (zero when absent).
    pub fn coeff(&self, exponent: &Exponent) -> Scalar {
        self.terms
            .get(exponent)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.domain))
    }

    /// The coefficient of X⁰ — also the value f(0).
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&BigRational::zero())
    }

    /// The largest exponent, `None` for zero.
    pub fn degree(&self) -> Option<&Exponent> {
        self.terms.keys().next_back()
    }

    /// The smallest exponent with a nonzero coefficient, `None` for zero.
    pub fn min_exponent(&self) -> Option<&Exponent> {
        self.terms.keys().next()
    }

    /// The term with the largest exponent.
    pub fn leading(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// True when every exponent is an integer.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }

    fn check_same_domain(&self, other: &Poly) -> Result<()> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.domain.to_string(),
                right: other.domain.to_string(),
            })
        }
    }

    /// Exact sum.
    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_same_domain(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            match terms.remove(e) {
                None => {
                    terms.insert(e.clone(), c.clone());
                }
                Some(old) => {
                    let sum = old.add(c)?;
                    if !sum.is_zero() {
                        terms.insert(e.clone(), sum);
                    }
                }
            }
        }
        Ok(Poly { domain: self.domain.clone(), terms })
    }

    /// Exact difference.
    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    /// Additive inverse.
    pub fn neg(&self) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.neg()))
            .collect();
        Poly { domain: self.domain.clone(), terms }
    }

    /// Exact sparse convolution; exponents add, zero products vanish.
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same_domain(other)?;
        let mut acc: BTreeMap<Exponent, Scalar> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                let prod = c1.mul(c2)?;
                match acc.remove(&e) {
                    None => {
                        if !prod.is_zero() {
                            acc.insert(e, prod);
                        }
                    }
                    Some(old) => {
                        let sum = old.add(&prod)?;
                        if !sum.is_zero() {
                            acc.insert(e, sum);
                        }
                    }
                }
            }
        }
        Ok(Poly { domain: self.domain.clone(), terms: acc })
    }

    /// Multiplies every coefficient by a scalar of the same domain.
    pub fn scale(&self, c: &Scalar) -> Result<Poly> {
        self.mul(&Poly::constant(c.clone()))
    }

    /// Shifts every exponent by `delta`; fails if any exponent would become
    /// negative.
    pub fn shifted(&self, delta: &Exponent) -> Result<Poly> {
        Poly::from_terms(
            &self.domain,
            self.terms.iter().map(|(e, c)| (e + delta, c.clone())),
        )
    }

    /// Maps coefficients along the canonical embedding into `target`.
    pub fn coerce(&self, target: &Domain) -> Result<Poly> {
        if &self.domain == target {
            return Ok(self.clone());
        }
        Poly::from_terms(
            target,
            self.terms
                .iter()
                .map(|(e, c)| Ok((e.clone(), c.coerce(target)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Exact evaluation at a point by Horner steps between exponent gaps;
    /// requires integral exponents and a point in the same domain.
    pub fn eval(&self, at: &Scalar) -> Result<Scalar> {
        if at.domain() != &self.domain {
            return Err(Error::DomainMismatch {
                left: self.domain.to_string(),
                right: at.domain().to_string(),
            });
        }
        if !self.has_integral_exponents() {
            let bad = self.terms.keys().find(|e| !e.is_integer()).expect("found above");
            return Err(Error::NonIntegralExponent(bad.to_string()));
        }
        let mut acc = Scalar::zero(&self.domain);
        let mut prev: Option<BigInt> = None;
        for (e, c) in self.terms.iter().rev() {
            let e = e.to_integer();
            if let Some(p) = prev {
                acc = acc.mul(&at.pow(exp_u64(&(p - &e))?))?;
            }
            acc = acc.add(c)?;
            prev = Some(e);
        }
        if let Some(last) = prev {
            acc = acc.mul(&at.pow(exp_u64(&last)?))?;
        }
        Ok(acc)
    }

    /// The formal derivative Σ e·cₑ·X^(e−1); requires integral exponents.
    pub fn derivative(&self) -> Result<Poly> {
        if !self.has_integral_exponents() {
            let bad = self.terms.keys().find(|e| !e.is_integer()).expect("found above");
            return Err(Error::NonIntegralExponent(bad.to_string()));
        }
        let one = BigRational::from_integer(1.into());
        Poly::from_terms(
            &self.domain,
            self.terms
                .iter()
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, c)| {
                    let mult = Scalar::from_integer(&self.domain, e.to_integer());
                    Ok((e - &one, c.mul(&mult)?))
                })
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Euclidean division by a divisor whose leading coefficient is
    /// invertible (always true over fields): returns (quotient, remainder)
    /// with `self = q·divisor + r` and `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_domain(divisor)?;
        let Some((dev, dcoeff)) = divisor.leading() else {
            return Err(Error::ZeroPolynomial);
        };
        let lead_inv = dcoeff.invert()?;
        let (dev, lead_inv) = (dev.clone(), lead_inv);
        let mut quot = Poly::zero(&self.domain);
        let mut rem = self.clone();
        while let Some((re, rc)) = rem.leading() {
            if *re < dev {
                break;
            }
            let e = re - &dev;
            let c = rc.mul(&lead_inv)?;
            let t = Poly::monomial(e, c)?;
            quot = quot.add(&t)?;
            rem = rem.sub(&t.mul(divisor)?)?;
        }
        Ok((quot, rem))
    }

    /// Monic greatest common divisor over a field (Euclid's algorithm);
    /// `gcd(f, 0) = f` made monic.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if !self.domain.is_field() {
            return Err(Error::NotAField(self.domain.to_string()));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = std::mem::replace(&mut b, r);
        }
        if let Some((_, lc)) = a.leading() {
            let inv = lc.invert()?;
            a = a.scale(&inv)?;
        }
        Ok(a)
    }

    /// Dense residue coefficients for small polynomials over ℤ/n or GF(p);
    /// used to extract finite-field moduli.
    pub(crate) fn dense_residues(&self) -> Result<Vec<u64>> {
        if !self.has_integral_exponents() {
            return Err(Error::NonIntegralExponent("modulus exponents".into()));
        }
        let deg = match self.degree() {
            None => return Ok(Vec::new()),
            Some(d) => d.to_integer().to_usize().ok_or_else(|| {
                Error::Unsupported("modulus degree too large".into())
            })?,
        };
        let mut out = vec![0u64; deg + 1];
        for (e, c) in &self.terms {
            let idx = e.to_integer().to_usize().expect("bounded by degree");
            out[idx] = c
                .as_residue()
                .ok_or_else(|| Error::Unsupported("modulus needs residue coefficients".into()))?;
        }
        Ok(out)
    }
}

fn exp_u64(e: &BigInt) -> Result<u64> {
    e.to_u64()
        .ok_or_else(|| Error::Unsupported(format!("exponent {e} too large")))
}

impl fmt::Display for Poly {
    /// Canonical rendering: descending exponents, `*` between coefficient
    /// and variable, rational exponents parenthesized, coefficient sums
    /// parenthesized — always re-parseable over the same domain.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            // Pull the sign out of ℤ- and ℚ-valued coefficients.
            let (neg, mag) = match c.to_rational() {
                Some(r) if r.is_negative() => (true, c.neg()),
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let var = if e.is_zero() {
                String::new()
            } else if e.is_integer() {
                let n = e.to_integer();
                if n == BigInt::from(1) {
                    "x".to_string()
                } else {
                    format!("x^{n}")
                }
            } else {
                format!("x^({e})")
            };
            let coeff = mag.to_string();
            if var.is_empty() {
                f.write_str(&coeff)?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                let wrapped = if coeff.contains('+') || coeff.contains('-') || coeff.contains('x')
                {
                    format!("({coeff})")
                } else {
                    coeff
                };
                write!(f, "{wrapped}*{var}")?;
            }
        }
        Ok(())
    }
}
