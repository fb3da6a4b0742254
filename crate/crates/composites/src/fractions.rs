//! Fractions of composite-ring members over a saturated multiplicative
//! system of denominators.
//!
//! Over a field-tower composite (an integral domain) the localization at
//! the system S = {members with f(0) ≠ 0} follows the textbook rules:
//! (g,s) + (g₁,s₁) = (gs₁ + g₁s, ss₁), (g,s)·(g₁,s₁) = (gg₁, ss₁), and two
//! fractions are equal exactly when cross-multiplication agrees.

use std::fmt;

use crate::classify::{in_saturated_system, SystemVariant};
use crate::composite::{CompositeKind, CompositeSpec};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// A fraction g/s with g a member and s in the declared system.
#[derive(Debug, Clone)]
pub struct Fraction {
    num: Poly,
    den: Poly,
    spec: CompositeSpec,
    variant: SystemVariant,
}

impl Fraction {
    /// Validates and builds g/s over `spec` with denominators drawn from
    /// the `variant` system.
    pub fn new(
        num: Poly,
        den: Poly,
        spec: &CompositeSpec,
        variant: SystemVariant,
    ) -> Result<Fraction> {
        if !matches!(spec.kind(), CompositeKind::T | CompositeKind::Tn) {
            return Err(Error::Unsupported(
                "fractions are defined over nested composites only".into(),
            ));
        }
        if !spec.is_field_tower() {
            return Err(Error::NotFieldTower);
        }
        if !spec.is_member(&num)? {
            return Err(Error::NotAMember(num.to_string()));
        }
        if !in_saturated_system(&den, spec, variant)? {
            return Err(Error::DenominatorNotInSystem);
        }
        Ok(Fraction {
            num: num.coerce(spec.top())?,
            den: den.coerce(spec.top())?,
            spec: spec.clone(),
            variant,
        })
    }

    /// The numerator g.
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// The denominator s.
    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// The composite the fraction lives over.
    pub fn spec(&self) -> &CompositeSpec {
        &self.spec
    }

    /// Which denominator system was declared.
    pub fn variant(&self) -> SystemVariant {
        self.variant
    }

    fn check_compatible(&self, other: &Fraction) -> Result<()> {
        if self.spec == other.spec && self.variant == other.variant {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            })
        }
    }

    /// (g,s) + (g₁,s₁) = (gs₁ + g₁s, ss₁).
    pub fn add(&self, other: &Fraction) -> Result<Fraction> {
        self.check_compatible(other)?;
        let num = self.num.mul(&other.den)?.add(&other.num.mul(&self.den)?)?;
        let den = self.den.mul(&other.den)?;
        Fraction::new(num, den, &self.spec, self.variant)
    }

    /// (g,s)·(g₁,s₁) = (gg₁, ss₁).
    pub fn mul(&self, other: &Fraction) -> Result<Fraction> {
        self.check_compatible(other)?;
        let num = self.num.mul(&other.num)?;
        let den = self.den.mul(&other.den)?;
        Fraction::new(num, den, &self.spec, self.variant)
    }

    /// Equality in the localization: over an integral domain this is
    /// cross-multiplication, g·s₁ = g₁·s.
    pub fn eq_frac(&self, other: &Fraction) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.num.mul(&other.den)? == other.num.mul(&self.den)?)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}
