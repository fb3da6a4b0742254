//! Exact coefficient domains: ℤ, ℤ/nℤ, ℚ, GF(p), GF(pᵏ), and real
//! multi-quadratic extensions ℚ(√d₁[,√d₂]).
//!
//! A [`Domain`] is a value-level description of where coefficients live.
//! Scalars carry their domain with them, so arithmetic can verify that both
//! operands agree and produce canonical results. Domains form a small
//! embedding order (ℤ ⊆ ℚ ⊆ ℚ(√d…), GF(p) ⊆ GF(pᵏ) ⊆ GF(pᵏˡ)) used to model
//! coefficient towers A₀ ⊆ A₁ ⊆ … ⊆ B.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fp;
use crate::poly::Poly;

/// Elements of finite fields larger than this are rejected at construction;
/// every operation on them is exact and enumeration stays desk-scale.
const FINITE_FIELD_CAP: u128 = 1 << 20;

/// An exact coefficient domain.
///
/// Construct values through the checked constructors or [`str::parse`]; the
/// internal representation is private so invalid parameter combinations
/// (zero ring, reducible modulus, non-squarefree radicand) cannot exist.
///
/// ```
/// use composites::Domain;
///
/// let gf4: Domain = "GF(4,x^2+x+1)".parse().unwrap();
/// assert!(gf4.is_field());
/// assert_eq!(gf4.to_string(), "GF(4,x^2+x+1)");
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Domain(pub(crate) Repr);

/// Internal domain classification.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    /// The ring of integers ℤ.
    Integers,
    /// ℤ/nℤ for n ≥ 2; composite n is allowed (and is the only source of
    /// nonzero nilpotents among the supported domains).
    IntegersMod(u64),
    /// The field of rationals ℚ.
    Rationals,
    /// The prime field GF(p).
    PrimeField(u64),
    /// GF(pᵏ) presented as GF(p)[x]/(modulus); `modulus` is monic of degree
    /// k, stored as ascending coefficients, and irreducible over GF(p).
    FiniteField { p: u64, k: u32, modulus: Vec<u64> },
    /// ℚ(√d₁[,√d₂]) for distinct squarefree dᵢ > 1, stored sorted.
    MultiQuadratic(Vec<u64>),
}

impl Domain {
    /// The ring of integers ℤ.
    pub fn integers() -> Domain {
        Domain(Repr::Integers)
    }

    /// The field of rationals ℚ.
    pub fn rationals() -> Domain {
        Domain(Repr::Rationals)
    }

    /// The residue ring ℤ/nℤ; requires n ≥ 2 so the ring has 1 ≠ 0.
    pub fn integers_mod(n: u64) -> Result<Domain> {
        if n < 2 {
            return Err(Error::InvalidDomain(format!(
                "Z/{n} rejected: modulus must be at least 2"
            )));
        }
        Ok(Domain(Repr::IntegersMod(n)))
    }

    /// The prime field GF(p).
    pub fn prime_field(p: u64) -> Result<Domain> {
        if !fp::is_prime_u64(p) {
            return Err(Error::InvalidDomain(format!("GF({p}) rejected: {p} is not prime")));
        }
        Ok(Domain(Repr::PrimeField(p)))
    }

    /// The field GF(pᵏ) for k ≥ 2, presented by an explicit monic modulus of
    /// degree k over GF(p), e.g. `Domain::finite_field(2, 2, "x^2+x+1")`.
    /// The modulus is verified irreducible by exhaustive factor search.
    pub fn finite_field(p: u64, k: u32, modulus: &str) -> Result<Domain> {
        if !fp::is_prime_u64(p) {
            return Err(Error::InvalidDomain(format!("GF({p}^{k}) rejected: {p} is not prime")));
        }
        let base = Domain(Repr::PrimeField(p));
        let poly = Poly::parse(modulus, &base)?;
        let coeffs = poly.dense_residues()?;
        Domain::finite_field_from_coeffs(p, k, coeffs)
    }

    /// GF(pᵏ) from ascending modulus coefficients; shared validation path.
    pub(crate) fn finite_field_from_coeffs(p: u64, k: u32, mut coeffs: Vec<u64>) -> Result<Domain> {
        fp::poly_trim(&mut coeffs);
        if k < 2 {
            return Err(Error::InvalidDomain(
                "finite field extension degree must be at least 2 (use GF(p) otherwise)".into(),
            ));
        }
        if (p as u128).pow(k) > FINITE_FIELD_CAP {
            return Err(Error::InvalidDomain(format!(
                "GF({p}^{k}) too large: exact enumeration is capped at 2^20 elements"
            )));
        }
        if fp::poly_deg(&coeffs) != Some(k as usize) {
            return Err(Error::InvalidDomain(format!(
                "modulus must have degree {k} to present GF({p}^{k})"
            )));
        }
        if coeffs[k as usize] != 1 {
            return Err(Error::InvalidDomain("modulus must be monic".into()));
        }
        if !fp::poly_is_irreducible(p, &coeffs) {
            return Err(Error::InvalidDomain(format!(
                "modulus is reducible over GF({p})"
            )));
        }
        Ok(Domain(Repr::FiniteField { p, k, modulus: coeffs }))
    }

    /// ℚ(√d₁[,√d₂]) for up to two distinct squarefree generators > 1.
    pub fn multi_quadratic(ds: &[u64]) -> Result<Domain> {
        let mut ds = ds.to_vec();
        ds.sort_unstable();
        ds.dedup();
        if ds.is_empty() || ds.len() > 2 {
            return Err(Error::InvalidDomain(
                "multi-quadratic fields take one or two square-root generators".into(),
            ));
        }
        for &d in &ds {
            if d < 2 || !fp::is_squarefree_u64(d) {
                return Err(Error::InvalidDomain(format!(
                    "sqrt{d} rejected: generators must be squarefree integers > 1"
                )));
            }
        }
        Ok(Domain(Repr::MultiQuadratic(ds)))
    }

    /// True for the four field kinds: ℚ, GF(p), GF(pᵏ), ℚ(√d…).
    pub fn is_field(&self) -> bool {
        matches!(
            self.0,
            Repr::Rationals
                | Repr::PrimeField(_)
                | Repr::FiniteField { .. }
                | Repr::MultiQuadratic(_)
        )
    }

    /// True when the domain has no zero divisors: every field, ℤ, and
    /// ℤ/pℤ for prime p.
    pub fn is_integral(&self) -> bool {
        match self.0 {
            Repr::Integers => true,
            Repr::IntegersMod(n) => fp::is_prime_u64(n),
            _ => self.is_field(),
        }
    }

    /// True when the domain has finitely many elements.
    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// Number of elements for finite domains, `None` for ℤ, ℚ, ℚ(√d…).
    pub fn size(&self) -> Option<u128> {
        match &self.0 {
            Repr::IntegersMod(n) => Some(*n as u128),
            Repr::PrimeField(p) => Some(*p as u128),
            Repr::FiniteField { p, k, .. } => Some((*p as u128).pow(*k)),
            _ => None,
        }
    }

    /// Characteristic p shared by GF(p) and GF(pᵏ), if any.
    pub(crate) fn field_char(&self) -> Option<u64> {
        match &self.0 {
            Repr::PrimeField(p) => Some(*p),
            Repr::FiniteField { p, .. } => Some(*p),
            _ => None,
        }
    }

    /// The square-root generators of a multi-quadratic field.
    pub(crate) fn quad_generators(&self) -> Option<&[u64]> {
        match &self.0 {
            Repr::MultiQuadratic(ds) => Some(ds),
            _ => None,
        }
    }

    /// True when elements of `self` embed canonically into `other`.
    ///
    /// The supported embeddings are: every domain into itself; ℤ ⊆ ℚ ⊆
    /// ℚ(√d…); ℚ(ds₁) ⊆ ℚ(ds₂) when ds₁ ⊆ ds₂; GF(p) ⊆ GF(pᵏ); and
    /// GF(pᵏ) ⊆ GF(pˡ) when k divides l.
    pub fn embeds_in(&self, other: &Domain) -> bool {
        if self == other {
            return true;
        }
        match (&self.0, &other.0) {
            (Repr::Integers, Repr::Rationals | Repr::MultiQuadratic(_)) => true,
            (Repr::Rationals, Repr::MultiQuadratic(_)) => true,
            (Repr::MultiQuadratic(ds1), Repr::MultiQuadratic(ds2)) => {
                ds1.iter().all(|d| ds2.contains(d))
            }
            (Repr::PrimeField(p), Repr::FiniteField { p: q, .. }) => p == q,
            (Repr::FiniteField { p: p1, k: k1, .. }, Repr::FiniteField { p: p2, k: k2, .. }) => {
                p1 == p2 && k2 % k1 == 0
            }
            _ => false,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Integers => f.write_str("Z"),
            Repr::IntegersMod(n) => write!(f, "Z/{n}"),
            Repr::Rationals => f.write_str("Q"),
            Repr::PrimeField(p) => write!(f, "GF({p})"),
            Repr::FiniteField { p, k, modulus } => {
                write!(f, "GF({},{})", (*p as u128).pow(*k), format_gf_poly(modulus))
            }
            Repr::MultiQuadratic(ds) => {
                f.write_str("Q(")?;
                for (i, d) in ds.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "sqrt{d}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Compact rendering of a polynomial over GF(p) in its generator symbol,
/// e.g. `x^2+x+1` or `x^3+2*x+1`; used for moduli and GF(pᵏ) elements.
pub(crate) fn format_gf_poly(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (c, e) {
            (_, 0) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, _) => format!("x^{e}"),
            (_, 1) => format!("{c}*x"),
            (_, _) => format!("{c}*x^{e}"),
        };
        parts.push(part);
    }
    parts.join("+")
}

impl FromStr for Domain {
    type Err = Error;

    /// Parses the compact domain grammar: `Z`, `Z/4`, `Q`, `GF(2)`,
    /// `GF(4,x^2+x+1)`, `Q(sqrt2)`, `Q(sqrt2,sqrt3)`.
    fn from_str(s: &str) -> Result<Domain> {
        let s = s.trim();
        match s {
            "Z" => return Ok(Domain::integers()),
            "Q" => return Ok(Domain::rationals()),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("Z/") {
            let n: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::SyntaxError(format!("bad residue modulus in {s:?}")))?;
            return Domain::integers_mod(n);
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let (q_text, modulus) = match inner.split_once(',') {
                Some((q, m)) => (q.trim(), Some(m.trim())),
                None => (inner.trim(), None),
            };
            let q: u128 = q_text
                .parse()
                .map_err(|_| Error::SyntaxError(format!("bad field size in {s:?}")))?;
            let (p, k) = prime_power(q)
                .ok_or_else(|| Error::InvalidDomain(format!("{q} is not a prime power")))?;
            return match (k, modulus) {
                (1, None) => Domain::prime_field(p),
                (1, Some(_)) => Err(Error::InvalidDomain(
                    "GF(p) takes no modulus; write GF(p)".into(),
                )),
                (_, None) => Err(Error::InvalidDomain(format!(
                    "GF({q}) needs an explicit modulus, e.g. GF(4,x^2+x+1)"
                ))),
                (_, Some(m)) => Domain::finite_field(p, k, m),
            };
        }
        if let Some(inner) = s.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
            let mut ds = Vec::new();
            for part in inner.split(',') {
                let part = part.trim();
                let Some(num) = part.strip_prefix("sqrt") else {
                    return Err(Error::SyntaxError(format!(
                        "expected sqrtN generator, got {part:?}"
                    )));
                };
                let d: u64 = num
                    .parse()
                    .map_err(|_| Error::SyntaxError(format!("bad radicand in {part:?}")))?;
                ds.push(d);
            }
            return Domain::multi_quadratic(&ds);
        }
        Err(Error::SyntaxError(format!("unrecognized domain {s:?}")))
    }
}

/// Writes q = pᵏ with p prime, if possible.
fn prime_power(q: u128) -> Option<(u64, u32)> {
    if q < 2 || q > u64::MAX as u128 {
        return None;
    }
    let mut p = q as u64;
    // Smallest prime factor of q is the only possible base.
    let factors = fp::prime_factors_u64(p);
    if factors.len() != 1 {
        return None;
    }
    p = factors[0];
    let mut k = 0u32;
    let mut rest = q;
    while rest % p as u128 == 0 {
        rest /= p as u128;
        k += 1;
    }
    if rest == 1 {
        Some((p, k))
    } else {
        None
    }
}
