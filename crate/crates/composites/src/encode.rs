//! Message encoding into a monoid domain: a text over an N-letter
//! alphabet becomes a polynomial in ℚ[X;ℕ₀] whose support carries both
//! the letters and their positions.
//!
//! Letter ℓ at position t maps to the term 1·X^(t·N+ℓ), so the exponent's
//! quotient by N is the position and its remainder is the letter. Distinct
//! messages have distinct supports, and decoding checks every structural
//! invariant (unit coefficients, no duplicate or skipped positions).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::monoid::{MPoly, MonoidSpec};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Encodes a message over the alphabet {0..N−1} as an element of
/// ℚ[X;ℕ₀]: the letter at position t becomes the term X^(t·N+letter).
pub fn monoid_encode(message: &[u32], alphabet_size: u32) -> Result<MPoly> {
    if alphabet_size == 0 {
        return Err(Error::Unsupported("alphabet must be nonempty".into()));
    }
    let rationals = Domain::rationals();
    let naturals = MonoidSpec::new(&[BigRational::one()])?;
    let mut poly = Poly::zero(&rationals);
    for (t, &letter) in message.iter().enumerate() {
        if letter >= alphabet_size {
            return Err(Error::LetterOutOfRange { letter, alphabet: alphabet_size });
        }
        let exponent = BigRational::from_integer(
            BigInt::from(t) * BigInt::from(alphabet_size) + BigInt::from(letter),
        );
        poly = poly.add(&Poly::monomial(exponent, Scalar::from_rational(
            &rationals,
            &BigRational::one(),
        )?)?)?;
    }
    MPoly::new(poly, &naturals)
}

/// Decodes a polynomial produced by [`monoid_encode`], verifying that
/// every coefficient is 1, exponents are nonnegative integers, and the
/// recovered positions run 0, 1, 2, … without duplicates or gaps.
pub fn monoid_decode(p: &MPoly, alphabet_size: u32) -> Result<Vec<u32>> {
    if alphabet_size == 0 {
        return Err(Error::Unsupported("alphabet must be nonempty".into()));
    }
    let n = BigInt::from(alphabet_size);
    let mut message = Vec::new();
    for (index, (e, c)) in p.poly().terms().enumerate() {
        if c.to_rational() != Some(BigRational::one()) {
            return Err(Error::DecodeError(format!("coefficient {c} is not 1")));
        }
        if !e.is_integer() {
            return Err(Error::DecodeError(format!("exponent {e} is not an integer")));
        }
        let value = e.to_integer();
        let position = &value / &n;
        let letter = (&value % &n)
            .to_u32()
            .expect("remainder modulo a u32 fits in u32");
        let expected = BigInt::from(index);
        if position < expected {
            return Err(Error::DecodeError(format!("duplicate position {position}")));
        }
        if position > expected {
            return Err(Error::DecodeError(format!(
                "gap before position {position}: position {expected} is missing"
            )));
        }
        message.push(letter);
    }
    Ok(message)
}
