//! Scalars: exact elements of a [`Domain`], with canonical representations.
//!
//! Every scalar stores its domain, so mixed-domain arithmetic is rejected
//! instead of silently coerced. Representations are canonical — residues
//! reduced, fractions in lowest terms with positive denominator, field
//! coordinates reduced — so `==` decides mathematical equality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::domain::{Domain, Repr};
use crate::error::{Error, Result};
use crate::fp;

/// Enumeration guard for residue rings: `Z/n` beyond this many elements can
/// still be computed with, but not exhaustively listed.
const ENUM_CAP: u128 = 1 << 22;

/// An exact element of some [`Domain`].
///
/// ```
/// use composites::{Domain, Scalar};
///
/// let q2: Domain = "Q(sqrt2)".parse().unwrap();
/// let x = Scalar::parse("1+sqrt2", &q2).unwrap();
/// let y = x.invert().unwrap();
/// assert_eq!(y.to_string(), "-1 + sqrt2");
/// assert!(x.mul(&y).unwrap().is_one());
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    domain: Domain,
    value: Value,
}

/// Domain-specific payload. The variant always matches the domain kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    /// ℤ.
    Int(BigInt),
    /// ℤ/nℤ and GF(p): a reduced residue.
    Mod(u64),
    /// ℚ: a reduced fraction.
    Rat(BigRational),
    /// GF(pᵏ): exactly k coordinates over GF(p), low degree first.
    Gf(Vec<u64>),
    /// ℚ(√d…): 2^m rational coordinates on the basis {∏_{i∈S} √dᵢ},
    /// indexed by the bitmask of S.
    Quad(Vec<BigRational>),
}

impl Scalar {
    /// The additive identity of `domain`.
    pub fn zero(domain: &Domain) -> Scalar {
        Scalar::from_integer(domain, 0)
    }

    /// The multiplicative identity of `domain`.
    pub fn one(domain: &Domain) -> Scalar {
        Scalar::from_integer(domain, 1)
    }

    /// The canonical image of an integer in `domain`.
    pub fn from_integer(domain: &Domain, n: impl Into<BigInt>) -> Scalar {
        let n: BigInt = n.into();
        let value = match &domain.0 {
            Repr::Integers => Value::Int(n),
            Repr::IntegersMod(m) | Repr::PrimeField(m) => Value::Mod(reduce_mod(&n, *m)),
            Repr::Rationals => Value::Rat(BigRational::from_integer(n)),
            Repr::FiniteField { p, k, .. } => {
                let mut coords = vec![0u64; *k as usize];
                coords[0] = reduce_mod(&n, *p);
                Value::Gf(coords)
            }
            Repr::MultiQuadratic(ds) => {
                let mut coords = vec![BigRational::zero(); 1 << ds.len()];
                coords[0] = BigRational::from_integer(n);
                Value::Quad(coords)
            }
        };
        Scalar { domain: domain.clone(), value }
    }

    /// The image of a rational in `domain`, when one exists. Over ℤ the
    /// fraction must be an integer; over residue rings and finite fields the
    /// denominator must be invertible.
    pub fn from_rational(domain: &Domain, r: &BigRational) -> Result<Scalar> {
        if r.is_integer() {
            return Ok(Scalar::from_integer(domain, r.to_integer()));
        }
        match &domain.0 {
            Repr::Rationals => Ok(Scalar {
                domain: domain.clone(),
                value: Value::Rat(r.clone()),
            }),
            Repr::MultiQuadratic(ds) => {
                let mut coords = vec![BigRational::zero(); 1 << ds.len()];
                coords[0] = r.clone();
                Ok(Scalar { domain: domain.clone(), value: Value::Quad(coords) })
            }
            Repr::Integers => Err(Error::CoefficientNotInDomain(format!("{r} over Z"))),
            _ => {
                let den = Scalar::from_integer(domain, r.denom().clone());
                let den_inv = den.invert().map_err(|_| {
                    Error::CoefficientNotInDomain(format!("{r} over {domain}"))
                })?;
                Ok(Scalar::from_integer(domain, r.numer().clone()).mul(&den_inv)?)
            }
        }
    }

    /// Parses a scalar literal: `-3`, `5/6`, `1+2*sqrt2`, `x+1` (the symbol
    /// `x` denotes the generator of a GF(pᵏ) domain).
    pub fn parse(text: &str, domain: &Domain) -> Result<Scalar> {
        crate::parse::parse_scalar(text, domain)
    }

    /// The domain this scalar lives in.
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// True for the additive identity.
    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_zero(),
            Value::Mod(r) => *r == 0,
            Value::Rat(r) => r.is_zero(),
            Value::Gf(v) => v.iter().all(|&c| c == 0),
            Value::Quad(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    /// True for the multiplicative identity.
    pub fn is_one(&self) -> bool {
        *self == Scalar::one(&self.domain)
    }

    /// The value as a rational number, for ℤ- and ℚ-valued scalars.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Int(n) => Some(BigRational::from_integer(n.clone())),
            Value::Rat(r) => Some(r.clone()),
            Value::Quad(v) => {
                if v.iter().skip(1).all(|c| c.is_zero()) {
                    Some(v[0].clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// The value as an integer, for ℤ-valued scalars (including integral
    /// rationals).
    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        r.is_integer().then(|| r.to_integer())
    }

    /// A multi-quadratic scalar from explicit basis coordinates.
    pub(crate) fn from_quad_coords(domain: &Domain, coords: Vec<BigRational>) -> Result<Scalar> {
        match domain.quad_generators() {
            Some(ds) if coords.len() == 1 << ds.len() => {
                Ok(Scalar { domain: domain.clone(), value: Value::Quad(coords) })
            }
            _ => Err(Error::InvalidDomain(format!(
                "{domain} does not take {} quadratic coordinates",
                coords.len()
            ))),
        }
    }

    /// The generator x of a GF(pᵏ) domain, `None` for every other kind.
    pub(crate) fn gf_generator(domain: &Domain) -> Option<Scalar> {
        match &domain.0 {
            Repr::FiniteField { k, .. } => {
                let mut coords = vec![0u64; *k as usize];
                coords[1] = 1;
                Some(Scalar { domain: domain.clone(), value: Value::Gf(coords) })
            }
            _ => None,
        }
    }

    /// The residue value for ℤ/nℤ and GF(p) scalars.
    pub(crate) fn as_residue(&self) -> Option<u64> {
        match &self.value {
            Value::Mod(r) => Some(*r),
            _ => None,
        }
    }

    /// Multi-quadratic coordinates indexed by generator-subset mask.
    pub(crate) fn quad_coords(&self) -> Option<&[BigRational]> {
        match &self.value {
            Value::Quad(v) => Some(v),
            _ => None,
        }
    }

    fn check_same_domain(&self, other: &Scalar) -> Result<()> {
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
    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_domain(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Mod(a), Value::Mod(b)) => {
                Value::Mod(fp::addm(*a, *b, modulus_of(&self.domain)))
            }
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Gf(a), Value::Gf(b)) => {
                let p = self.domain.field_char().expect("gf domain");
                let mut v = fp::poly_add(p, a, b);
                v.resize(a.len(), 0);
                Value::Gf(v)
            }
            (Value::Quad(a), Value::Quad(b)) => {
                Value::Quad(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!("value variant always matches domain"),
        };
        Ok(Scalar { domain: self.domain.clone(), value })
    }

    /// Exact difference.
    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    /// Additive inverse.
    pub fn neg(&self) -> Scalar {
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Mod(a) => Value::Mod(fp::subm(0, *a, modulus_of(&self.domain))),
            Value::Rat(a) => Value::Rat(-a),
            Value::Gf(a) => {
                let p = self.domain.field_char().expect("gf domain");
                Value::Gf(a.iter().map(|&c| fp::subm(0, c, p)).collect())
            }
            Value::Quad(a) => Value::Quad(a.iter().map(|c| -c).collect()),
        };
        Scalar { domain: self.domain.clone(), value }
    }

    /// Exact product.
    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_domain(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Mod(a), Value::Mod(b)) => {
                Value::Mod(fp::mulm(*a, *b, modulus_of(&self.domain)))
            }
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Gf(a), Value::Gf(b)) => {
                let (p, modulus) = match &self.domain.0 {
                    Repr::FiniteField { p, modulus, .. } => (*p, modulus),
                    _ => unreachable!(),
                };
                let mut v = fp::poly_mulmod(p, a, b, modulus);
                v.resize(a.len(), 0);
                Value::Gf(v)
            }
            (Value::Quad(a), Value::Quad(b)) => {
                let ds = self.domain.quad_generators().expect("quad domain");
                Value::Quad(quad_mul(ds, a, b))
            }
            _ => unreachable!("value variant always matches domain"),
        };
        Ok(Scalar { domain: self.domain.clone(), value })
    }

    /// Multiplicative inverse, or [`Error::NotInvertible`].
    pub fn invert(&self) -> Result<Scalar> {
        let value = match &self.value {
            Value::Int(a) => {
                if a.magnitude().is_one() {
                    Value::Int(a.clone())
                } else {
                    return Err(Error::NotInvertible);
                }
            }
            Value::Mod(a) => {
                let m = modulus_of(&self.domain);
                Value::Mod(fp::invm(*a, m).ok_or(Error::NotInvertible)?)
            }
            Value::Rat(a) => {
                if a.is_zero() {
                    return Err(Error::NotInvertible);
                }
                Value::Rat(a.recip())
            }
            Value::Gf(a) => {
                let (p, modulus) = match &self.domain.0 {
                    Repr::FiniteField { p, modulus, .. } => (*p, modulus),
                    _ => unreachable!(),
                };
                let mut v = fp::poly_invmod(p, a, modulus).ok_or(Error::NotInvertible)?;
                v.resize(a.len(), 0);
                Value::Gf(v)
            }
            Value::Quad(a) => {
                if self.is_zero() {
                    return Err(Error::NotInvertible);
                }
                let ds = self.domain.quad_generators().expect("quad domain");
                Value::Quad(quad_invert(ds, a)?)
            }
        };
        Ok(Scalar { domain: self.domain.clone(), value })
    }

    /// `self` raised to a nonnegative power by repeated squaring.
    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = Scalar::one(&self.domain);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same domain");
            }
            base = base.mul(&base).expect("same domain");
            exp >>= 1;
        }
        acc
    }

    /// True iff some power of the scalar is zero. Fields, ℤ, and ℚ have no
    /// nonzero nilpotents; in ℤ/nℤ the residue `a` is nilpotent exactly when
    /// every prime factor of `n` divides `a`.
    pub fn is_nilpotent(&self) -> bool {
        match (&self.domain.0, &self.value) {
            (Repr::IntegersMod(n), Value::Mod(a)) => {
                fp::prime_factors_u64(*n).into_iter().all(|p| a % p == 0)
            }
            _ => self.is_zero(),
        }
    }

    /// True iff the scalar is a prime element of ℤ (up to sign). Only ℤ has
    /// prime elements among the supported domains.
    pub fn is_prime_element(&self) -> Result<bool> {
        match &self.value {
            Value::Int(a) => {
                let mag = a.magnitude();
                let small = mag.to_u64().ok_or_else(|| {
                    Error::Unsupported("prime test beyond 64-bit magnitude".into())
                })?;
                Ok(fp::is_prime_u64(small))
            }
            _ => Err(Error::Unsupported(format!(
                "prime elements are classified only in Z, not {}",
                self.domain
            ))),
        }
    }

    /// Maps the scalar along the canonical embedding into `target`.
    pub fn coerce(&self, target: &Domain) -> Result<Scalar> {
        if &self.domain == target {
            return Ok(self.clone());
        }
        if !self.domain.embeds_in(target) {
            return Err(Error::NoEmbedding {
                sub: self.domain.to_string(),
                sup: target.to_string(),
            });
        }
        match (&self.value, &target.0) {
            (Value::Int(n), Repr::Rationals | Repr::MultiQuadratic(_)) => {
                Ok(Scalar::from_integer(target, n.clone()))
            }
            (Value::Rat(r), Repr::MultiQuadratic(_)) => Scalar::from_rational(target, r),
            (Value::Quad(v), Repr::MultiQuadratic(ds2)) => {
                let ds1 = self.domain.quad_generators().expect("quad domain");
                let mut coords = vec![BigRational::zero(); 1 << ds2.len()];
                for (mask, c) in v.iter().enumerate() {
                    coords[translate_mask(mask, ds1, ds2)] = c.clone();
                }
                Ok(Scalar { domain: target.clone(), value: Value::Quad(coords) })
            }
            (Value::Mod(r), Repr::FiniteField { k, .. }) => {
                let mut coords = vec![0u64; *k as usize];
                coords[0] = *r;
                Ok(Scalar { domain: target.clone(), value: Value::Gf(coords) })
            }
            (Value::Gf(v), Repr::FiniteField { .. }) => {
                let root = embedding_root(&self.domain, target)?;
                // Evaluate the coordinate polynomial at the embedded root.
                let mut acc = Scalar::zero(target);
                for &c in v.iter().rev() {
                    let c_big = Scalar::from_integer(target, c);
                    acc = acc.mul(&root)?.add(&c_big)?;
                }
                Ok(acc)
            }
            _ => unreachable!("embeds_in admitted the pair"),
        }
    }

    /// True iff this element of a big domain lies in the canonical image of
    /// the subdomain `sub`. Errors with [`Error::NoEmbedding`] when `sub`
    /// does not embed into the scalar's domain at all.
    pub fn in_subdomain(&self, sub: &Domain) -> Result<bool> {
        if sub == &self.domain {
            return Ok(true);
        }
        if !sub.embeds_in(&self.domain) {
            return Err(Error::NoEmbedding {
                sub: sub.to_string(),
                sup: self.domain.to_string(),
            });
        }
        match (&self.value, &sub.0) {
            (Value::Rat(r), Repr::Integers) => Ok(r.is_integer()),
            (Value::Quad(v), Repr::Integers) => {
                Ok(v[0].is_integer() && v.iter().skip(1).all(|c| c.is_zero()))
            }
            (Value::Quad(v), Repr::Rationals) => Ok(v.iter().skip(1).all(|c| c.is_zero())),
            (Value::Quad(v), Repr::MultiQuadratic(ds1)) => {
                let ds2 = self.domain.quad_generators().expect("quad domain");
                let allowed: Vec<usize> = (0..1usize << ds1.len())
                    .map(|m| translate_mask(m, ds1, ds2))
                    .collect();
                Ok(v.iter()
                    .enumerate()
                    .all(|(mask, c)| c.is_zero() || allowed.contains(&mask)))
            }
            (Value::Gf(v), Repr::PrimeField(_)) => Ok(v.iter().skip(1).all(|&c| c == 0)),
            (Value::Gf(_), Repr::FiniteField { p, k, .. }) => {
                // The subfield of size p^k is exactly the fixed set of the
                // k-th Frobenius power x ↦ x^(p^k).
                let exp = (*p as u128).pow(*k);
                let exp = u64::try_from(exp).expect("finite fields are capped well below 2^64");
                Ok(self.pow(exp) == *self)
            }
            _ => unreachable!("embeds_in admitted the pair"),
        }
    }
}

/// The residue modulus of ℤ/nℤ or GF(p).
fn modulus_of(domain: &Domain) -> u64 {
    match &domain.0 {
        Repr::IntegersMod(n) | Repr::PrimeField(n) => *n,
        _ => unreachable!("residue modulus requested for {domain}"),
    }
}

/// Euclidean remainder of a big integer by a u64 modulus.
fn reduce_mod(n: &BigInt, m: u64) -> u64 {
    let r = n % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    r.to_u64().expect("reduced residue fits u64")
}

/// Product in ℚ(√d…): basis elements multiply by
/// b_S · b_T = (∏_{i ∈ S∩T} dᵢ) · b_{S△T}.
fn quad_mul(ds: &[u64], a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let size = 1usize << ds.len();
    let mut out = vec![BigRational::zero(); size];
    for (s, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (t, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let shared = s & t;
            let mut factor = BigInt::one();
            for (i, &d) in ds.iter().enumerate() {
                if shared >> i & 1 == 1 {
                    factor *= BigInt::from(d);
                }
            }
            out[s ^ t] += x * y * BigRational::from_integer(factor);
        }
    }
    out
}

/// Inverse in ℚ(√d…) by multiplying through all nontrivial conjugates: the
/// full conjugate product is the rational norm, nonzero for nonzero input.
fn quad_invert(ds: &[u64], a: &[BigRational]) -> Result<Vec<BigRational>> {
    let size = 1usize << ds.len();
    let mut numer = vec![BigRational::zero(); size];
    numer[0] = BigRational::one();
    for sign_mask in 1..size {
        let conj: Vec<BigRational> = a
            .iter()
            .enumerate()
            .map(|(t, c)| {
                if (sign_mask & t).count_ones() % 2 == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        numer = quad_mul(ds, &numer, &conj);
    }
    let norm = quad_mul(ds, a, &numer);
    debug_assert!(norm.iter().skip(1).all(|c| c.is_zero()), "conjugate product is rational");
    if norm[0].is_zero() {
        return Err(Error::NotInvertible);
    }
    let scale = norm[0].recip();
    Ok(numer.into_iter().map(|c| c * &scale).collect())
}

/// Re-indexes a generator-subset mask of `ds1` as a mask of `ds2 ⊇ ds1`.
fn translate_mask(mask: usize, ds1: &[u64], ds2: &[u64]) -> usize {
    let mut out = 0usize;
    for (i, d) in ds1.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let j = ds2.iter().position(|e| e == d).expect("subset generators");
            out |= 1 << j;
        }
    }
    out
}

/// The image of the small field's generator inside the big field: the first
/// root of the small modulus in enumeration order. Deterministic, so every
/// coercion uses the same embedding.
fn embedding_root(small: &Domain, big: &Domain) -> Result<Scalar> {
    let (p, small_modulus) = match &small.0 {
        Repr::FiniteField { p, modulus, .. } => (*p, modulus.clone()),
        _ => unreachable!("embedding_root called for finite fields"),
    };
    for cand in big.elements()? {
        // Horner evaluation of the small modulus at the candidate.
        let mut acc = Scalar::zero(big);
        for &c in small_modulus.iter().rev() {
            acc = acc.mul(&cand)?.add(&Scalar::from_integer(big, c))?;
        }
        if acc.is_zero() {
            return Ok(cand);
        }
    }
    unreachable!("GF(p^k) contains a root of every degree-k factor of x^(p^k)-x with k | l; p={p}")
}

impl Domain {
    /// All elements of a finite domain, in a fixed enumeration order
    /// (ascending residues; coordinate vectors counted little-endian).
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        let size = self
            .size()
            .ok_or_else(|| Error::InfiniteDomain(self.to_string()))?;
        if size > ENUM_CAP {
            return Err(Error::SearchSpaceTooLarge(format!(
                "{self} has {size} elements, enumeration cap is {ENUM_CAP}"
            )));
        }
        match &self.0 {
            Repr::IntegersMod(_) | Repr::PrimeField(_) => Ok((0..size as u64)
                .map(|r| Scalar { domain: self.clone(), value: Value::Mod(r) })
                .collect()),
            Repr::FiniteField { p, k, .. } => {
                let mut out = Vec::with_capacity(size as usize);
                for idx in 0..size {
                    let mut coords = vec![0u64; *k as usize];
                    let mut rest = idx;
                    for slot in coords.iter_mut() {
                        *slot = (rest % *p as u128) as u64;
                        rest /= *p as u128;
                    }
                    out.push(Scalar { domain: self.clone(), value: Value::Gf(coords) });
                }
                Ok(out)
            }
            _ => unreachable!("finite sizes only for residue rings and finite fields"),
        }
    }
}

/// A generating set of the image of `sub` inside `top`, as elements of `top`:
/// the canonical module basis for field pairs, `{1}` for ℤ-like subrings.
/// Products of two subdomain elements lie in a third subdomain exactly when
/// all pairwise basis products do, provided the subdomains are spanned by
/// these bases over a common prime field — true for every supported field
/// tower.
pub(crate) fn embedded_basis(sub: &Domain, top: &Domain) -> Result<Vec<Scalar>> {
    if !sub.embeds_in(top) {
        return Err(Error::NoEmbedding {
            sub: sub.to_string(),
            sup: top.to_string(),
        });
    }
    match (&sub.0, &top.0) {
        (Repr::MultiQuadratic(ds1), Repr::MultiQuadratic(ds2)) => {
            let mut out = Vec::with_capacity(1 << ds1.len());
            for mask in 0..1usize << ds1.len() {
                let mut coords = vec![BigRational::zero(); 1 << ds2.len()];
                coords[translate_mask(mask, ds1, ds2)] = BigRational::one();
                out.push(Scalar { domain: top.clone(), value: Value::Quad(coords) });
            }
            Ok(out)
        }
        (Repr::FiniteField { k: k1, .. }, Repr::FiniteField { .. }) => {
            let root = if sub == top {
                let mut coords = vec![0u64; *k1 as usize];
                coords[1] = 1;
                Scalar { domain: top.clone(), value: Value::Gf(coords) }
            } else {
                embedding_root(sub, top)?
            };
            Ok((0..*k1 as u64).map(|e| root.pow(e)).collect())
        }
        _ => Ok(vec![Scalar::one(top)]),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(n) => write!(f, "{n}"),
            Value::Mod(r) => write!(f, "{r}"),
            Value::Rat(r) => write!(f, "{r}"),
            Value::Gf(v) => {
                if v.iter().all(|&c| c == 0) {
                    f.write_str("0")
                } else {
                    f.write_str(&crate::domain::format_gf_poly(v))
                }
            }
            Value::Quad(v) => {
                let ds = self.domain.quad_generators().expect("quad domain");
                f.write_str(&format_quad(ds, v))
            }
        }
    }
}

/// Renders a multi-quadratic element, e.g. `1+2*sqrt2` or `-1/2*sqrt6`.
fn format_quad(ds: &[u64], coords: &[BigRational]) -> String {
    let mut out = String::new();
    for (mask, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if mask == 0 {
            out.push_str(&mag.to_string());
            continue;
        }
        let mut radicand = 1u64;
        for (i, &d) in ds.iter().enumerate() {
            if mask >> i & 1 == 1 {
                radicand *= d;
            }
        }
        if mag.is_one() {
            out.push_str(&format!("sqrt{radicand}"));
        } else {
            out.push_str(&format!("{mag}*sqrt{radicand}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(s: &str) -> Domain {
        s.parse().unwrap()
    }

    fn sc(text: &str, d: &str) -> Scalar {
        Scalar::parse(text, &dom(d)).unwrap()
    }

    #[test]
    fn residue_arithmetic() {
        let a = sc("3", "Z/4");
        assert_eq!(a.add(&a).unwrap(), sc("2", "Z/4"));
        assert_eq!(a.invert().unwrap(), a); // 3·3 = 9 ≡ 1
        assert_eq!(sc("2", "Z/4").invert().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn rational_arithmetic() {
        let half = sc("1/2", "Q");
        let third = sc("1/3", "Q");
        assert_eq!(half.add(&third).unwrap(), sc("5/6", "Q"));
        assert_eq!(sc("0", "Q").invert().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn quadratic_field_arithmetic() {
        let r2 = sc("sqrt2", "Q(sqrt2)");
        assert_eq!(r2.mul(&r2).unwrap(), sc("2", "Q(sqrt2)"));
        let u = sc("1+sqrt2", "Q(sqrt2)");
        let inv = u.invert().unwrap();
        assert_eq!(inv, sc("-1+sqrt2", "Q(sqrt2)"));
        assert!(u.mul(&inv).unwrap().is_one());

        // Mixed radicands multiply into the joint basis element.
        let d = dom("Q(sqrt2,sqrt3)");
        let a = Scalar::parse("sqrt2", &d).unwrap();
        let b = Scalar::parse("sqrt3", &d).unwrap();
        assert_eq!(a.mul(&b).unwrap(), Scalar::parse("sqrt6", &d).unwrap());
        let x = Scalar::parse("1/2 + sqrt2 - 3*sqrt6", &d).unwrap();
        assert!(x.mul(&x.invert().unwrap()).unwrap().is_one());
    }

    #[test]
    fn finite_field_arithmetic() {
        let gf4 = dom("GF(4,x^2+x+1)");
        let x = Scalar::parse("x", &gf4).unwrap();
        let x1 = Scalar::parse("x+1", &gf4).unwrap();
        assert_eq!(x.mul(&x).unwrap(), x1); // x² = x+1
        assert_eq!(x.invert().unwrap(), x1); // x(x+1) = x²+x = 1
        assert_eq!(x.add(&x).unwrap(), Scalar::zero(&gf4)); // char 2
        let gf9 = dom("GF(9,x^2+1)");
        for e in gf9.elements().unwrap() {
            if !e.is_zero() {
                assert!(e.mul(&e.invert().unwrap()).unwrap().is_one());
            }
        }
    }

    #[test]
    fn nilpotents_follow_the_radical() {
        assert!(sc("2", "Z/4").is_nilpotent());
        assert!(!sc("2", "Z/6").is_nilpotent());
        assert!(sc("0", "Q").is_nilpotent());
        assert!(!sc("3", "Z/4").is_nilpotent());
        assert!(sc("6", "Z/12").is_nilpotent());
        // Direct power check: nilpotents vanish by the n-th power.
        let a = sc("6", "Z/12");
        assert!(a.pow(12).is_zero());
    }

    #[test]
    fn prime_elements_only_in_z() {
        assert!(sc("2", "Z").is_prime_element().unwrap());
        assert!(sc("-3", "Z").is_prime_element().unwrap());
        assert!(!sc("1", "Z").is_prime_element().unwrap());
        assert!(!sc("4", "Z").is_prime_element().unwrap());
        assert!(sc("2", "Q").is_prime_element().is_err());
    }

    #[test]
    fn coercion_and_membership() {
        let q23 = dom("Q(sqrt2,sqrt3)");
        let r2 = sc("sqrt2", "Q(sqrt2)").coerce(&q23).unwrap();
        assert_eq!(r2, Scalar::parse("sqrt2", &q23).unwrap());
        assert!(r2.in_subdomain(&dom("Q(sqrt2)")).unwrap());
        assert!(!r2.in_subdomain(&dom("Q")).unwrap());
        assert!(!r2.in_subdomain(&dom("Z")).unwrap());
        let five = sc("5", "Z").coerce(&dom("Q")).unwrap();
        assert!(five.in_subdomain(&dom("Z")).unwrap());
        assert!(!sc("5/2", "Q").in_subdomain(&dom("Z")).unwrap());
        assert!(sc("sqrt3", "Q(sqrt3)").in_subdomain(&dom("Q(sqrt2)")).is_err());
    }

    #[test]
    fn finite_field_tower_membership() {
        let gf16 = dom("GF(16,x^4+x+1)");
        let gf4 = dom("GF(4,x^2+x+1)");
        let gf2 = dom("GF(2)");
        // The GF(4) image inside GF(16) has exactly 4 elements.
        let mut in_gf4 = 0;
        let mut in_gf2 = 0;
        for e in gf16.elements().unwrap() {
            if e.in_subdomain(&gf4).unwrap() {
                in_gf4 += 1;
            }
            if e.in_subdomain(&gf2).unwrap() {
                in_gf2 += 1;
            }
        }
        assert_eq!(in_gf4, 4);
        assert_eq!(in_gf2, 2);

        // Coercion GF(4) → GF(16) is a ring homomorphism on all pairs.
        for a in gf4.elements().unwrap() {
            for b in gf4.elements().unwrap() {
                let sum = a.add(&b).unwrap().coerce(&gf16).unwrap();
                assert_eq!(sum, a.coerce(&gf16).unwrap().add(&b.coerce(&gf16).unwrap()).unwrap());
                let prod = a.mul(&b).unwrap().coerce(&gf16).unwrap();
                assert_eq!(prod, a.coerce(&gf16).unwrap().mul(&b.coerce(&gf16).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn display_round_trips() {
        for (text, d) in [
            ("-3", "Z"),
            ("5/6", "Q"),
            ("1+2*sqrt2", "Q(sqrt2)"),
            ("-1/2*sqrt6", "Q(sqrt2,sqrt3)"),
            ("1 - sqrt2 + 3*sqrt3", "Q(sqrt2,sqrt3)"),
            ("x+1", "GF(4,x^2+x+1)"),
            ("2*x^2+x", "GF(27,x^3+2*x+1)"),
            ("3", "Z/5"),
            ("0", "Q(sqrt2)"),
        ] {
            let v = sc(text, d);
            let again = Scalar::parse(&v.to_string(), &dom(d)).unwrap();
            assert_eq!(v, again, "round-trip failed for {text} over {d}");
        }
    }
}
