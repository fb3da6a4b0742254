//! Composite ring specifications and membership.
//!
//! A composite pins a tower of coefficient domains under a common top
//! domain B and carves a subring out of B[X]:
//!
//! - `T(A; B)`: constant term in A, all other coefficients in B.
//! - `Tn(A0, …, A_{n−1}; B)`: coefficient of Xⁱ in Aᵢ for i < n, a chain
//!   A₀ ⊆ … ⊆ A_{n−1} ⊆ B.
//! - `TPn(…)`: same slot rule but the tower is deliberately *not* a chain
//!   (some Aᵢ ⊄ A_{i+1}); products can escape the slots.
//! - `IBA(A; B)`: the ring of polynomials over B mapping A into itself,
//!   supported for finite A and for (A,B) = (ℤ,ℚ).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Which subring shape a [`CompositeSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompositeKind {
    /// `A + X·B[X]`.
    T,
    /// `A₀ + A₁X + … + A_{n−1}X^{n−1} + Xⁿ·B[X]` with a nested tower.
    Tn,
    /// The same sum with a non-nested tower.
    TPrimeN,
    /// `I(B,A) = {f ∈ B[X] : f(A) ⊆ A}`.
    Iba,
}

/// A validated composite-ring description.
///
/// ```
/// use composites::{CompositeSpec, Poly};
///
/// let spec: CompositeSpec = "T(A=Q; B=Q(sqrt2))".parse().unwrap();
/// let f = Poly::parse("sqrt2*x", spec.top()).unwrap();
/// assert!(spec.is_member(&f).unwrap());
/// let g = Poly::parse("sqrt2 + x", spec.top()).unwrap();
/// assert!(!spec.is_member(&g).unwrap());
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeSpec {
    kind: CompositeKind,
    tower: Vec<Domain>,
    top: Domain,
}

/// Result of multiplying two members and re-testing closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    /// The exact product in B[X].
    pub product: Poly,
    /// Whether the product is again a member of the full spec.
    pub in_spec: bool,
    /// Whether the product lies in the looser ring A₀ + X·B[X].
    pub in_a0_plus_xb: bool,
}

impl CompositeSpec {
    /// Builds `T(A; B)`; requires A ⊆ B.
    pub fn t(a: Domain, b: Domain) -> Result<CompositeSpec> {
        if !a.embeds_in(&b) {
            return Err(Error::InvalidTower(format!("{a} does not embed in {b}")));
        }
        Ok(CompositeSpec { kind: CompositeKind::T, tower: vec![a], top: b })
    }

    /// Builds `Tn(A₀, …, A_{n−1}; B)`; requires the full chain
    /// A₀ ⊆ A₁ ⊆ … ⊆ A_{n−1} ⊆ B.
    pub fn tn(tower: Vec<Domain>, b: Domain) -> Result<CompositeSpec> {
        if tower.is_empty() {
            return Err(Error::InvalidTower("tower must be nonempty".into()));
        }
        for w in tower.windows(2) {
            if !w[0].embeds_in(&w[1]) {
                return Err(Error::InvalidTower(format!(
                    "{} does not embed in {}",
                    w[0], w[1]
                )));
            }
        }
        let last = tower.last().expect("nonempty");
        if !last.embeds_in(&b) {
            return Err(Error::InvalidTower(format!("{last} does not embed in {b}")));
        }
        Ok(CompositeSpec { kind: CompositeKind::Tn, tower, top: b })
    }

    /// Builds `TPn(A₀, …, A_{n−1}; B)`; every Aⱼ must embed in B and some
    /// adjacent pair must break the chain (Aᵢ ⊄ A_{i+1}).
    pub fn t_prime_n(tower: Vec<Domain>, b: Domain) -> Result<CompositeSpec> {
        if tower.len() < 2 {
            return Err(Error::InvalidTower(
                "a non-chain tower needs at least two entries".into(),
            ));
        }
        for a in &tower {
            if !a.embeds_in(&b) {
                return Err(Error::InvalidTower(format!("{a} does not embed in {b}")));
            }
        }
        if tower.windows(2).all(|w| w[0].embeds_in(&w[1])) {
            return Err(Error::InvalidTower(
                "tower is a chain; use the nested form instead".into(),
            ));
        }
        Ok(CompositeSpec { kind: CompositeKind::TPrimeN, tower, top: b })
    }

    /// Builds `IBA(A; B)`; only finite A or (A,B) = (ℤ,ℚ) are decidable.
    pub fn iba(a: Domain, b: Domain) -> Result<CompositeSpec> {
        if !a.embeds_in(&b) {
            return Err(Error::InvalidTower(format!("{a} does not embed in {b}")));
        }
        let finite_fields = a.is_finite() && a.is_field() && b.is_finite() && b.is_field();
        let z_q = a == Domain::integers() && b == Domain::rationals();
        if !(finite_fields || z_q) {
            return Err(Error::UnsupportedIbaPair {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        Ok(CompositeSpec { kind: CompositeKind::Iba, tower: vec![a], top: b })
    }

    /// The spec's shape.
    pub fn kind(&self) -> CompositeKind {
        self.kind
    }

    /// The common top domain B.
    pub fn top(&self) -> &Domain {
        &self.top
    }

    /// The tower A₀, …, A_{n−1}.
    pub fn tower(&self) -> &[Domain] {
        &self.tower
    }

    /// Tower height n (1 for `T` and `IBA`).
    pub fn n(&self) -> usize {
        self.tower.len()
    }

    /// The bottom domain A₀.
    pub fn a0(&self) -> &Domain {
        &self.tower[0]
    }

    /// The domain constraining the coefficient of Xⁱ: Aᵢ below the tower
    /// height, B above it.
    pub fn slot_domain(&self, i: usize) -> &Domain {
        self.tower.get(i).unwrap_or(&self.top)
    }

    /// Exact membership test for the subring of B[X] this spec describes.
    ///
    /// The polynomial may live in any domain that embeds in B; it is
    /// coerced first. Non-integral exponents are rejected.
    pub fn is_member(&self, f: &Poly) -> Result<bool> {
        let f = f.coerce(&self.top)?;
        if let Some(bad) = f.terms().map(|(e, _)| e).find(|e| !e.is_integer()) {
            return Err(Error::NonIntegralExponent(bad.to_string()));
        }
        match self.kind {
            CompositeKind::T | CompositeKind::Tn | CompositeKind::TPrimeN => {
                for (e, c) in f.terms() {
                    let Some(i) = e.to_integer().to_usize() else {
                        continue; // astronomically high slots are plain B
                    };
                    if i >= self.tower.len() {
                        continue;
                    }
                    if !c.in_subdomain(&self.tower[i])? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CompositeKind::Iba => self.iba_member(&f),
        }
    }

    fn iba_member(&self, f: &Poly) -> Result<bool> {
        let a = &self.tower[0];
        if a.is_finite() {
            // A is finite: test f(a) ∈ A for every embedded point of A.
            for point in a.elements()? {
                let image = f.eval(&point.coerce(&self.top)?)?;
                if !image.in_subdomain(a)? {
                    return Ok(false);
                }
            }
            Ok(true)
        } else {
            // (ℤ, ℚ): f is integer-valued iff its coefficients in the
            // binomial basis — the iterated forward differences Δᵏf(0),
            // k = 0..deg f — are all integers.
            let Some(deg) = f.degree() else {
                return Ok(true);
            };
            let deg = deg
                .to_integer()
                .to_usize()
                .ok_or_else(|| Error::Unsupported("degree too large".into()))?;
            let mut row: Vec<BigRational> = (0..=deg)
                .map(|k|

                    f.eval(&Scalar::from_integer(&self.top, BigInt::from(k)))
                        .map(|v| v.to_rational().expect("rational domain"))
                )
                .collect::<Result<_>>()?;
            // Difference table: after k passes, row[0] = Δᵏf(0).
            loop {
                if !row[0].is_integer() {
                    return Ok(false);
                }
                if row.len() == 1 {
                    return Ok(true);
                }
                row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
            }
        }
    }

    /// Multiplies two members and reports whether closure held: in the full
    /// spec, and in the looser ring A₀ + X·B[X].
    pub fn mul_with_closure(&self, f: &Poly, g: &Poly) -> Result<ClosureReport> {
        if !self.is_member(f)? {
            return Err(Error::NotAMember(f.to_string()));
        }
        if !self.is_member(g)? {
            return Err(Error::NotAMember(g.to_string()));
        }
        let product = f.coerce(&self.top)?.mul(&g.coerce(&self.top)?)?;
        let in_spec = self.is_member(&product)?;
        let loose = CompositeSpec {
            kind: CompositeKind::T,
            tower: vec![self.a0().clone()],
            top: self.top.clone(),
        };
        let in_a0_plus_xb = loose.is_member(&product)?;
        Ok(ClosureReport { product, in_spec, in_a0_plus_xb })
    }

    /// True when every tower entry and the top are fields.
    pub fn is_field_tower(&self) -> bool {
        self.top.is_field() && self.tower.iter().all(Domain::is_field)
    }
}

impl fmt::Display for CompositeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CompositeKind::T => write!(f, "T(A={}; B={})", self.tower[0], self.top),
            CompositeKind::Iba => write!(f, "IBA(A={}; B={})", self.tower[0], self.top),
            CompositeKind::Tn | CompositeKind::TPrimeN => {
                let tag = if self.kind == CompositeKind::Tn { "Tn" } else { "TPn" };
                write!(f, "{tag}(")?;
                for (i, a) in self.tower.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "A{i}={a}")?;
                }
                write!(f, "; B={})", self.top)
            }
        }
    }
}

impl FromStr for CompositeSpec {
    type Err = Error;

    /// Parses the spec grammar, e.g. `T(A=Q; B=Q(sqrt2))`,
    /// `Tn(A0=Q, A1=Q(sqrt2); B=Q(sqrt2,sqrt3))`, `IBA(A=Z; B=Q)`.
    fn from_str(s: &str) -> Result<CompositeSpec> {
        let s = s.trim();
        let (kind, body) = if let Some(rest) = s.strip_prefix("TPn") {
            (CompositeKind::TPrimeN, rest)
        } else if let Some(rest) = s.strip_prefix("Tn") {
            (CompositeKind::Tn, rest)
        } else if let Some(rest) = s.strip_prefix("T") {
            (CompositeKind::T, rest)
        } else if let Some(rest) = s.strip_prefix("IBA") {
            (CompositeKind::Iba, rest)
        } else {
            return Err(Error::SyntaxError(format!(
                "expected T(...), Tn(...), TPn(...), or IBA(...): {s}"
            )));
        };
        let body = body
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::SyntaxError(format!("missing parentheses: {s}")))?;
        let (tower_part, top_part) = body
            .split_once(';')
            .ok_or_else(|| Error::SyntaxError(format!("missing ';' before B=...: {s}")))?;
        let top = parse_labeled(top_part, "B")?;
        let mut tower = Vec::new();
        match kind {
            CompositeKind::T | CompositeKind::Iba => {
                tower.push(parse_labeled(tower_part, "A")?);
            }
            CompositeKind::Tn | CompositeKind::TPrimeN => {
                for (i, chunk) in split_outside_parens(tower_part).enumerate() {
                    tower.push(parse_labeled(chunk, &format!("A{i}"))?);
                }
            }
        }
        match kind {
            CompositeKind::T => {
                let a = tower.pop().expect("one entry");
                CompositeSpec::t(a, top)
            }
            CompositeKind::Tn => CompositeSpec::tn(tower, top),
            CompositeKind::TPrimeN => CompositeSpec::t_prime_n(tower, top),
            CompositeKind::Iba => {
                let a = tower.pop().expect("one entry");
                CompositeSpec::iba(a, top)
            }
        }
    }
}

/// Splits on commas at parenthesis depth zero, so domain names like
/// `Q(sqrt2,sqrt3)` survive inside a tower list.
fn split_outside_parens(text: &str) -> impl Iterator<Item = &str> {
    let mut depth = 0usize;
    let mut start = 0usize;
    let mut pieces = Vec::new();
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                pieces.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(&text[start..]);
    pieces.into_iter()
}

/// Parses `label=Domain`, whitespace tolerant.
fn parse_labeled(chunk: &str, label: &str) -> Result<Domain> {
    let chunk = chunk.trim();
    let (lhs, rhs) = chunk
        .split_once('=')
        .ok_or_else(|| Error::SyntaxError(format!("expected {label}=<domain>: {chunk}")))?;
    if lhs.trim() != label {
        return Err(Error::SyntaxError(format!(
            "expected label {label}, found {}",
            lhs.trim()
        )));
    }
    rhs.trim().parse()
}
