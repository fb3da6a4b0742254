//! Finitely generated submonoids of the nonnegative rationals and monoid
//! domains B[X;M] built over them.
//!
//! A monoid ⟨g₁,…,g_k⟩ is handled through its scaled integer model: with
//! `scale` the least common multiple of the generator denominators, the
//! monoid is isomorphic to the numerical-semigroup data
//! ⟨g₁·scale, …, g_k·scale⟩ ⊆ ℕ, where membership is a small dynamic
//! program. Everything else — atoms, the irreducible construction, bounded
//! divisibility, chain checks — sits on top of that table.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::domain::Domain;
use crate::error::{Error, Result, X1Hypothesis};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Guard on the size of the membership table.
const DP_CAP: u64 = 10_000_000;

/// Guard on the number of factor pairs the irreducibility oracle will try.
const ORACLE_PAIR_CAP: u128 = 25_000_000;

/// A finitely generated submonoid of ℚ₊ with cached scaled data.
///
/// ```
/// use composites::MonoidSpec;
/// use num_rational::BigRational;
///
/// let m: MonoidSpec = "M<1/2,1/3>".parse().unwrap();
/// let q = |p: i64, q: i64| BigRational::new(p.into(), q.into());
/// assert!(m.contains(&q(5, 6)).unwrap());
/// assert!(!m.contains(&q(1, 6)).unwrap());
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidSpec {
    generators: Vec<BigRational>,
    scale: BigInt,
    scaled_generators: Vec<u64>,
}

impl MonoidSpec {
    /// Builds the monoid generated by the given positive rationals.
    /// Duplicates are dropped and the list is kept sorted.
    pub fn new(generators: &[BigRational]) -> Result<MonoidSpec> {
        if generators.is_empty() {
            return Err(Error::Unsupported("a monoid needs at least one generator".into()));
        }
        let mut gens: Vec<BigRational> = generators.to_vec();
        gens.sort();
        gens.dedup();
        if gens.iter().any(|g| !g.is_positive()) {
            return Err(Error::Unsupported("monoid generators must be positive".into()));
        }
        let mut scale = BigInt::one();
        for g in &gens {
            scale = scale.lcm(g.denom());
        }
        let scaled = gens
            .iter()
            .map(|g| {
                (g * BigRational::from_integer(scale.clone()))
                    .to_integer()
                    .to_u64()
                    .ok_or_else(|| {
                        Error::Unsupported(format!("scaled generator {g} too large"))
                    })
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(MonoidSpec { generators: gens, scale, scaled_generators: scaled })
    }

    /// The canonical (sorted, deduplicated) generator list.
    pub fn generators(&self) -> &[BigRational] {
        &self.generators
    }

    /// Least common multiple of the generator denominators.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Generators multiplied by the scale: numerical-semigroup data.
    pub fn scaled_generators(&self) -> &[u64] {
        &self.scaled_generators
    }

    /// Converts a monoid element to its scaled integer value, or `None`
    /// when it is not on the (1/scale)·ℤ lattice.
    fn scaled_value(&self, q: &BigRational) -> Result<Option<u64>> {
        let scaled = q * BigRational::from_integer(self.scale.clone());
        if !scaled.is_integer() {
            return Ok(None);
        }
        let v = scaled.to_integer().to_u64().ok_or_else(|| {
            Error::SearchSpaceTooLarge(format!("scaled value of {q} exceeds u64"))
        })?;
        Ok(Some(v))
    }

    /// Reachability table for scaled values 0..=target.
    fn reachable_table(&self, target: u64) -> Result<Vec<bool>> {
        if target >= DP_CAP {
            return Err(Error::SearchSpaceTooLarge(format!(
                "membership table of size {target} exceeds the {DP_CAP} cap"
            )));
        }
        let mut dp = vec![false; target as usize + 1];
        dp[0] = true;
        for v in 1..=target {
            for &g in &self.scaled_generators {
                if g <= v && dp[(v - g) as usize] {
                    dp[v as usize] = true;
                    break;
                }
            }
        }
        Ok(dp)
    }

    /// Exact membership by dynamic programming over the scaled model.
    pub fn contains(&self, q: &BigRational) -> Result<bool> {
        if q.is_negative() {
            return Err(Error::NegativeExponent(q.to_string()));
        }
        match self.scaled_value(q)? {
            None => Ok(false),
            Some(v) => Ok(self.reachable_table(v)?[v as usize]),
        }
    }

    /// All atoms (members not expressible as a sum of two nonzero members)
    /// up to `bound`. Every atom of a finitely generated monoid is a
    /// generator, but the search works from the membership table alone.
    pub fn atoms(&self, bound: &BigRational) -> Result<Vec<BigRational>> {
        if bound.is_negative() {
            return Err(Error::NegativeExponent(bound.to_string()));
        }
        let limit = (bound * BigRational::from_integer(self.scale.clone()))
            .floor()
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::SearchSpaceTooLarge(format!("bound {bound} too large")))?;
        let dp = self.reachable_table(limit)?;
        let mut out = Vec::new();
        for v in 1..=limit {
            if !dp[v as usize] {
                continue;
            }
            let split = (1..v).any(|a| dp[a as usize] && dp[(v - a) as usize]);
            if !split {
                out.push(BigRational::new(BigInt::from(v), self.scale.clone()));
            }
        }
        Ok(out)
    }

    /// True iff `m` lies in the shifted monoid m₁ + M. Both inputs must be
    /// members.
    pub fn in_shifted_monoid(&self, m: &BigRational, m1: &BigRational) -> Result<bool> {
        if !self.contains(m)? {
            return Err(Error::NotInMonoid(m.to_string()));
        }
        if !self.contains(m1)? {
            return Err(Error::NotInMonoid(m1.to_string()));
        }
        let diff = m - m1;
        if diff.is_negative() {
            return Ok(false);
        }
        self.contains(&diff)
    }

    /// Scaled generator gcd, generating the quotient group
    /// G = (g/scale)·ℤ of the monoid.
    fn scaled_gcd(&self) -> u64 {
        self.scaled_generators.iter().fold(0u64, |acc, &g| acc.gcd(&g))
    }

    /// True iff `q` (of any sign) lies in the quotient group of M — the
    /// differences of members.
    pub fn quotient_group_contains(&self, q: &BigRational) -> bool {
        let scaled = q * BigRational::from_integer(self.scale.clone());
        if !scaled.is_integer() {
            return false;
        }
        let g = BigInt::from(self.scaled_gcd());
        scaled.to_integer().mod_floor(&g).is_zero()
    }
}

impl fmt::Display for MonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("M<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

impl FromStr for MonoidSpec {
    type Err = Error;

    /// Parses `M<1/2,1/3>`.
    fn from_str(s: &str) -> Result<MonoidSpec> {
        let body = s
            .trim()
            .strip_prefix("M<")
            .and_then(|b| b.strip_suffix('>'))
            .ok_or_else(|| Error::SyntaxError(format!("expected M<g1,g2,...>: {s}")))?;
        let gens = body
            .split(',')
            .map(|chunk| {
                let chunk = chunk.trim();
                chunk
                    .parse::<BigRational>()
                    .map_err(|_| Error::SyntaxError(format!("bad generator: {chunk}")))
            })
            .collect::<Result<Vec<_>>>()?;
        MonoidSpec::new(&gens)
    }
}

/// An element of the monoid domain B[X;M]: a polynomial whose exponents
/// all belong to M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    poly: Poly,
    monoid: MonoidSpec,
}

impl MPoly {
    /// Wraps a polynomial after checking every exponent against M.
    pub fn new(poly: Poly, monoid: &MonoidSpec) -> Result<MPoly> {
        for (e, _) in poly.terms() {
            if !monoid.contains(e)? {
                return Err(Error::ExponentNotInMonoid(e.to_string()));
            }
        }
        Ok(MPoly { poly, monoid: monoid.clone() })
    }

    /// Parses a polynomial and validates its support against M.
    pub fn parse(text: &str, domain: &Domain, monoid: &MonoidSpec) -> Result<MPoly> {
        MPoly::new(Poly::parse(text, domain)?, monoid)
    }

    /// The underlying polynomial.
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// The monoid the support lives in.
    pub fn monoid(&self) -> &MonoidSpec {
        &self.monoid
    }

    fn check_same_monoid(&self, other: &MPoly) -> Result<()> {
        if self.monoid == other.monoid {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.monoid.to_string(),
                right: other.monoid.to_string(),
            })
        }
    }

    /// Sum in B[X;M]; supports stay in M because M is closed.
    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same_monoid(other)?;
        Ok(MPoly { poly: self.poly.add(&other.poly)?, monoid: self.monoid.clone() })
    }

    /// Product in B[X;M]; exponent sums stay in M because M is closed.
    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same_monoid(other)?;
        Ok(MPoly { poly: self.poly.mul(&other.poly)?, monoid: self.monoid.clone() })
    }

    /// True iff the element is a unit of B[X;M]: the exponent-0
    /// coefficient is a unit of B and every other coefficient is nilpotent.
    pub fn is_unit(&self) -> bool {
        let c = self.poly.constant_term();
        if c.invert().is_err() {
            return false;
        }
        self.poly.terms().all(|(e, coeff)| e.is_zero() || coeff.is_nilpotent())
    }

    /// True iff every coefficient is nilpotent in B.
    pub fn is_nilpotent(&self) -> bool {
        self.poly.terms().all(|(_, c)| c.is_nilpotent())
    }

    /// β(f): the largest exponent in the support.
    pub fn beta(&self) -> Result<BigRational> {
        self.poly.degree().cloned().ok_or(Error::ZeroPolynomial)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Builds the certified-irreducible element
/// p_{r−1}X^{m_r} − … − p₂X^{m₃} − p₁X^{m₂} − X^{m₁} of ℤ[X;M], after
/// verifying every hypothesis of the construction:
/// the coefficients are prime elements of ℤ, the exponents are distinct
/// members of M, m₁ is an atom, and no later exponent lies in m₁ + M.
pub fn construct_irreducible_x1(
    primes: &[Scalar],
    exponents: &[BigRational],
    monoid: &MonoidSpec,
) -> Result<MPoly> {
    if monoid.generators().is_empty() {
        return Err(Error::HypothesisViolated(X1Hypothesis::TrivialMonoid));
    }
    if exponents.len() < 2 {
        return Err(Error::HypothesisViolated(X1Hypothesis::TooFewExponents));
    }
    if primes.len() + 1 != exponents.len() {
        return Err(Error::HypothesisViolated(X1Hypothesis::CountMismatch));
    }
    let z = Domain::integers();
    for p in primes {
        if p.domain() != &z {
            return Err(Error::HypothesisViolated(X1Hypothesis::CoefficientDomainNotZ));
        }
        if !p.is_prime_element()? {
            return Err(Error::HypothesisViolated(X1Hypothesis::NotPrime));
        }
    }
    for m in exponents {
        if !monoid.contains(m)? {
            return Err(Error::HypothesisViolated(X1Hypothesis::ExponentNotInMonoid));
        }
    }
    let mut sorted = exponents.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != exponents.len() {
        return Err(Error::HypothesisViolated(X1Hypothesis::DuplicateExponent));
    }
    let m1 = &exponents[0];
    if !monoid.atoms(m1)?.contains(m1) {
        return Err(Error::HypothesisViolated(X1Hypothesis::FirstExponentNotAtom));
    }
    for m in &exponents[1..] {
        if monoid.in_shifted_monoid(m, m1)? {
            return Err(Error::HypothesisViolated(X1Hypothesis::ExponentInShiftedMonoid));
        }
    }
    // Assemble: −X^{m₁} − p₁X^{m₂} − … − p_{r−2}X^{m_{r−1}} + p_{r−1}X^{m_r}.
    let mut f = Poly::monomial(m1.clone(), Scalar::from_integer(&z, -1))?;
    let r = exponents.len();
    for (i, p) in primes.iter().enumerate() {
        let sign = if i + 1 == r - 1 { 1 } else { -1 };
        let coeff = p.mul(&Scalar::from_integer(&z, sign))?;
        f = f.add(&Poly::monomial(exponents[i + 1].clone(), coeff)?)?;
    }
    MPoly::new(f, monoid)
}

/// Ground-truth irreducibility for B[X;M] by exhaustive factor search:
/// candidate factors take their support in M ∩ [0, support_bound] and
/// their coefficients from [−coeff_bound, coeff_bound] over ℤ (or all of B
/// when B is finite). Returns true iff no nonunit pair multiplies to `f`.
pub fn mdomain_irreducible_oracle(
    f: &MPoly,
    support_bound: &BigRational,
    coeff_bound: u64,
) -> Result<bool> {
    let domain = f.poly().domain().clone();
    if f.poly().is_zero() || f.is_unit() {
        return Err(Error::NotApplicable(
            "irreducibility is asked of nonzero nonunits only".into(),
        ));
    }
    let monoid = f.monoid();
    // Support candidates: members of M up to the bound, smallest first.
    let limit = (support_bound * BigRational::from_integer(monoid.scale().clone()))
        .floor()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::SearchSpaceTooLarge("support bound too large".into()))?;
    let dp = monoid.reachable_table(limit)?;
    let support: Vec<BigRational> = (0..=limit)
        .filter(|&v| dp[v as usize])
        .map(|v| BigRational::new(BigInt::from(v), monoid.scale().clone()))
        .collect();
    let coeffs: Vec<Scalar> = if domain == Domain::integers() {
        let c = coeff_bound as i64;
        (-c..=c).map(|v| Scalar::from_integer(&domain, v)).collect()
    } else if domain.is_finite() {
        domain.elements()?
    } else {
        return Err(Error::Unsupported(
            "oracle coefficients must come from ℤ or a finite ring".into(),
        ));
    };
    let count = (coeffs.len() as u128).checked_pow(support.len() as u32);
    let pairs = count.and_then(|c| c.checked_mul(c));
    match pairs {
        Some(p) if p <= ORACLE_PAIR_CAP => {}
        _ => {
            return Err(Error::SearchSpaceTooLarge(format!(
                "{}^{} candidate factors is beyond the oracle cap",
                coeffs.len(),
                support.len()
            )));
        }
    }
    // Materialize all nonzero nonunit candidates with their α/β data.
    let mut candidates: Vec<(Poly, BigRational, BigRational)> = Vec::new();
    let mut idx = vec![0usize; support.len()];
    loop {
        let mut g = Poly::zero(&domain);
        for (i, &pick) in idx.iter().enumerate() {
            g = g.add(&Poly::monomial(support[i].clone(), coeffs[pick].clone())?)?;
        }
        if !g.is_zero() {
            let keep = {
                let m = MPoly { poly: g.clone(), monoid: monoid.clone() };
                !m.is_unit()
            };
            if keep {
                let alpha = g.min_exponent().expect("nonzero").clone();
                let beta = g.degree().expect("nonzero").clone();
                candidates.push((g, alpha, beta));
            }
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                // Enumeration finished; run the pair search.
                return pair_search(f, &candidates, &domain);
            }
            idx[pos] += 1;
            if idx[pos] < coeffs.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Inner pair loop of the oracle, with the additivity filter over
/// integral coefficient rings.
fn pair_search(
    f: &MPoly,
    candidates: &[(Poly, BigRational, BigRational)],
    domain: &Domain,
) -> Result<bool> {
    let target = f.poly();
    let integral = domain.is_integral();
    let t_alpha = target.min_exponent().expect("nonzero").clone();
    let t_beta = target.degree().expect("nonzero").clone();
    for (i, (g, ga, gb)) in candidates.iter().enumerate() {
        for (h, ha, hb) in &candidates[i..] {
            if integral && (ga + ha != t_alpha || gb + hb != t_beta) {
                continue;
            }
            if g.mul(h)? == *target {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Bounded exact division in B[X;M] over an integral coefficient ring.
///
/// Long division with forced leading terms: over an integral domain the
/// leading term of any quotient is determined, so the loop either
/// constructs the unique quotient or proves none exists. A quotient whose
/// support or coefficients exceed the caller's bounds is reported as "not
/// found within bounds" (`Ok(None)`), never as a different answer.
pub fn divides_in_mdomain(
    f: &MPoly,
    d: &MPoly,
    support_bound: &BigRational,
    coeff_bound: u64,
) -> Result<Option<MPoly>> {
    f.check_same_monoid(d)?;
    if d.poly().is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let domain = f.poly().domain().clone();
    if !domain.is_integral() {
        return Err(Error::Unsupported(
            "exact division needs integral coefficients".into(),
        ));
    }
    let monoid = f.monoid();
    let coeff_cap = BigInt::from(coeff_bound);
    let (de, dc) = {
        let (e, c) = d.poly().leading().expect("nonzero");
        (e.clone(), c.clone())
    };
    let mut rem = f.poly().clone();
    let mut quo = Poly::zero(&domain);
    while !rem.is_zero() {
        let (re, rc) = {
            let (e, c) = rem.leading().expect("nonzero");
            (e.clone(), c.clone())
        };
        let delta = &re - &de;
        if delta.is_negative()
            || !monoid.contains(&delta)?
            || &delta > support_bound
        {
            return Ok(None);
        }
        let Some(t) = exact_coeff_div(&rc, &dc)? else {
            return Ok(None);
        };
        if let Some(r) = t.to_rational() {
            if r.numer().abs() > coeff_cap || r.denom().abs() > coeff_cap {
                return Ok(None);
            }
        }
        let term = Poly::monomial(delta, t)?;
        quo = quo.add(&term)?;
        rem = rem.sub(&term.mul(d.poly())?)?;
    }
    Ok(Some(MPoly { poly: quo, monoid: monoid.clone() }))
}

/// Exact coefficient division a / b in an integral ring: `None` when b
/// does not divide a.
fn exact_coeff_div(a: &Scalar, b: &Scalar) -> Result<Option<Scalar>> {
    match b.invert() {
        Ok(inv) => Ok(Some(a.mul(&inv)?)),
        Err(Error::NotInvertible) => {
            // Integers: divide exactly or fail.
            let (Some(ar), Some(br)) = (a.to_rational(), b.to_rational()) else {
                return Ok(None);
            };
            if br.is_zero() {
                return Ok(None);
            }
            let q = ar / br;
            if q.is_integer() {
                Ok(Some(Scalar::from_integer(a.domain(), q.to_integer())))
            } else {
                Ok(None)
            }
        }
        Err(e) => Err(e),
    }
}

/// One step of an ACCP chain verification.
#[derive(Debug, Clone)]
pub struct AccpStep {
    /// 1-based index of the step fₙ → fₙ₊₁.
    pub index: usize,
    /// Whether fₙ₊₁ divides fₙ within the search bounds.
    pub divides: bool,
    /// The quotient fₙ / fₙ₊₁ when found.
    pub quotient: Option<MPoly>,
    /// Whether the found quotient is a nonunit (a proper divisibility step).
    pub quotient_nonunit: bool,
    /// Whether β strictly decreases across the step.
    pub beta_decreases: bool,
    /// Whether β(fₙ) − β(fₙ₊₁) lies in M.
    pub beta_diff_in_monoid: bool,
}

/// Full report of an ACCP chain verification.
#[derive(Debug, Clone)]
pub struct AccpReport {
    /// Per-step sub-verdicts, in order.
    pub steps: Vec<AccpStep>,
    /// β of every chain entry.
    pub betas: Vec<BigRational>,
    /// True iff every step passes all three sub-checks.
    pub accepted: bool,
}

/// Verifies a would-be properly ascending chain of principal ideals
/// (f₁) ⊂ (f₂) ⊂ …: each fₙ₊₁ must divide fₙ with a nonunit quotient,
/// and the β sequence must strictly decrease with differences in M.
pub fn accp_chain_check(
    chain: &[MPoly],
    support_bound: &BigRational,
    coeff_bound: u64,
) -> Result<AccpReport> {
    if chain.len() < 2 {
        return Err(Error::Unsupported("a chain needs at least two entries".into()));
    }
    let betas = chain.iter().map(MPoly::beta).collect::<Result<Vec<_>>>()?;
    let mut steps = Vec::new();
    for n in 0..chain.len() - 1 {
        let quotient = divides_in_mdomain(&chain[n], &chain[n + 1], support_bound, coeff_bound)?;
        let divides = quotient.is_some();
        let quotient_nonunit = quotient.as_ref().map(|q| !q.is_unit()).unwrap_or(false);
        let beta_decreases = betas[n] > betas[n + 1];
        let diff = &betas[n] - &betas[n + 1];
        let beta_diff_in_monoid = !diff.is_negative() && chain[n].monoid().contains(&diff)?;
        steps.push(AccpStep {
            index: n + 1,
            divides,
            quotient,
            quotient_nonunit,
            beta_decreases,
            beta_diff_in_monoid,
        });
    }
    let accepted = steps
        .iter()
        .all(|s| s.divides && s.quotient_nonunit && s.beta_decreases && s.beta_diff_in_monoid);
    Ok(AccpReport { steps, betas, accepted })
}

/// One term of a localized fraction: (a/b)·X^e with e in the quotient
/// group of M (possibly negative, never outside the group).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedTerm {
    /// Exponent in the quotient group of M.
    pub exponent: BigRational,
    /// Rational coefficient a/b.
    pub coefficient: BigRational,
}

impl fmt::Display for LocalizedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() {
            return write!(f, "{}", self.coefficient);
        }
        let coeff = if self.coefficient.is_one() {
            String::new()
        } else {
            format!("({})*", self.coefficient)
        };
        if self.exponent.is_integer() && self.exponent.is_one() {
            write!(f, "{coeff}x")
        } else if self.exponent.is_integer() && self.exponent.is_positive() {
            write!(f, "{coeff}x^{}", self.exponent)
        } else {
            write!(f, "{coeff}x^({})", self.exponent)
        }
    }
}

/// Divides f ∈ ℤ[X;M] by a nonzero monomial denominator b·Xⁿ, returning
/// the term list (a/b)·X^{m−n} — the concrete shape behind the identity
/// "localizing B[X;M] at the nonzero constants gives (Frac B)[X;M]".
/// Every output exponent is verified to lie in the quotient group of M.
pub fn localize_at_zero(f: &MPoly, g: &MPoly) -> Result<Vec<LocalizedTerm>> {
    f.check_same_monoid(g)?;
    let z = Domain::integers();
    if f.poly().domain() != &z {
        return Err(Error::Unsupported("localization is supported over ℤ".into()));
    }
    if g.poly().term_count() != 1 {
        return Err(Error::NonMonomialDenominator);
    }
    let (n, b) = {
        let (e, c) = g.poly().leading().expect("one term");
        (e.clone(), c.to_rational().expect("integer coefficient"))
    };
    let monoid = f.monoid();
    let mut out = Vec::new();
    for (m, a) in f.poly().terms() {
        let exponent = m - &n;
        if !monoid.quotient_group_contains(&exponent) {
            return Err(Error::NotInMonoid(format!(
                "{exponent} is outside the quotient group"
            )));
        }
        out.push(LocalizedTerm {
            exponent,
            coefficient: a.to_rational().expect("integer coefficient") / &b,
        });
    }
    Ok(out)
}
