//! A block cipher whose key is the coefficient expansion of a product of
//! two polynomials with letter-substitution coefficients.
//!
//! Two parties agree on polynomials f and g whose coefficients are basic
//! substitution systems (bijections of the alphabet {0..N−1}, Caesar
//! shifts being the canonical case). The shared key is the symbolic
//! expansion of f·g: coefficient i is the list of products A_k·B_{i−k}.
//! Each plaintext block of length deg(fg)+1 is encrypted letter-by-letter:
//! the coefficient at the letter's position turns it into a pair of
//! letters, one per chain of substitutions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named bijection of the alphabet {0..N−1} with its inverse stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSystem {
    name: String,
    forward: Vec<u32>,
    inverse: Vec<u32>,
}

impl BasicSystem {
    /// Builds a substitution from an explicit permutation table.
    pub fn permutation(name: &str, map: &[u32]) -> Result<BasicSystem> {
        let n = map.len();
        if n == 0 {
            return Err(Error::InvalidKey("empty substitution table".into()));
        }
        let mut inverse = vec![u32::MAX; n];
        for (x, &y) in map.iter().enumerate() {
            if (y as usize) >= n {
                return Err(Error::InvalidKey(format!(
                    "substitution {name} maps {x} to {y}, outside the alphabet"
                )));
            }
            if inverse[y as usize] != u32::MAX {
                return Err(Error::InvalidKey(format!(
                    "substitution {name} is not a bijection: {y} is hit twice"
                )));
            }
            inverse[y as usize] = x as u32;
        }
        Ok(BasicSystem { name: name.to_string(), forward: map.to_vec(), inverse })
    }

    /// The Caesar shift x ↦ x + s (mod N); negative shifts allowed.
    pub fn caesar(name: &str, alphabet_size: u32, shift: i64) -> Result<BasicSystem> {
        if alphabet_size == 0 {
            return Err(Error::InvalidKey("alphabet must be nonempty".into()));
        }
        let n = alphabet_size as i64;
        let s = shift.rem_euclid(n) as u32;
        let map: Vec<u32> = (0..alphabet_size).map(|x| (x + s) % alphabet_size).collect();
        BasicSystem::permutation(name, &map)
    }

    /// The system's display name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of letters in the alphabet.
    pub fn alphabet_size(&self) -> u32 {
        self.forward.len() as u32
    }

    /// Applies the substitution to one letter.
    pub fn apply(&self, x: u32) -> Result<u32> {
        self.forward
            .get(x as usize)
            .copied()
            .ok_or(Error::LetterOutOfRange { letter: x, alphabet: self.alphabet_size() })
    }

    /// Applies the inverse substitution to one letter.
    pub fn unapply(&self, y: u32) -> Result<u32> {
        self.inverse
            .get(y as usize)
            .copied()
            .ok_or(Error::LetterOutOfRange { letter: y, alphabet: self.alphabet_size() })
    }
}

/// A nonempty list of substitution systems read as a polynomial: the
/// system at index i is the coefficient of Xⁱ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPolynomial {
    coefficients: Vec<BasicSystem>,
}

impl KeyPolynomial {
    /// Wraps the coefficient list, requiring at least one system and a
    /// single common alphabet.
    pub fn new(coefficients: Vec<BasicSystem>) -> Result<KeyPolynomial> {
        let first = coefficients
            .first()
            .ok_or_else(|| Error::InvalidKey("a key polynomial needs a coefficient".into()))?;
        let n = first.alphabet_size();
        for c in &coefficients {
            if c.alphabet_size() != n {
                return Err(Error::AlphabetMismatch { left: n, right: c.alphabet_size() });
            }
        }
        Ok(KeyPolynomial { coefficients })
    }

    /// The coefficient systems, ascending in the exponent.
    pub fn coefficients(&self) -> &[BasicSystem] {
        &self.coefficients
    }

    /// Degree of the polynomial.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Alphabet size shared by all coefficients.
    pub fn alphabet_size(&self) -> u32 {
        self.coefficients[0].alphabet_size()
    }
}

/// The expanded product key: entry i lists the factor pairs of the
/// Xⁱ-coefficient of f·g, kept symbolic (no simplification) and ordered
/// by ascending first index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeKey {
    coefficients: Vec<Vec<(BasicSystem, BasicSystem)>>,
    alphabet_size: u32,
}

/// Expands f·g into the composite key by symbolic convolution:
/// coefficient i is [(A_k, B_{i−k})] for every k where both factors
/// exist, ascending in k.
pub fn expand_key(f: &KeyPolynomial, g: &KeyPolynomial) -> Result<CompositeKey> {
    if f.alphabet_size() != g.alphabet_size() {
        return Err(Error::AlphabetMismatch {
            left: f.alphabet_size(),
            right: g.alphabet_size(),
        });
    }
    let deg = f.degree() + g.degree();
    let mut coefficients = Vec::with_capacity(deg + 1);
    for i in 0..=deg {
        let mut entry = Vec::new();
        for (k, a) in f.coefficients().iter().enumerate() {
            if i >= k {
                if let Some(b) = g.coefficients().get(i - k) {
                    entry.push((a.clone(), b.clone()));
                }
            }
        }
        coefficients.push(entry);
    }
    Ok(CompositeKey { coefficients, alphabet_size: f.alphabet_size() })
}

impl CompositeKey {
    /// Block length: one letter per coefficient of the product.
    pub fn block_len(&self) -> usize {
        self.coefficients.len()
    }

    /// Alphabet size the key operates on.
    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    /// The factor-pair lists, one per block position.
    pub fn coefficients(&self) -> &[Vec<(BasicSystem, BasicSystem)>] {
        &self.coefficients
    }

    /// Encrypts one letter with the coefficient at block position `i`:
    /// the first output letter is the letter pushed through every
    /// first-factor substitution in term order, the second through every
    /// second-factor substitution in the same order.
    pub fn encrypt_letter(&self, x: u32, i: usize) -> Result<(u32, u32)> {
        if x >= self.alphabet_size {
            return Err(Error::LetterOutOfRange { letter: x, alphabet: self.alphabet_size });
        }
        let coeff = &self.coefficients[i];
        let mut first = x;
        let mut second = x;
        for (a, b) in coeff {
            first = a.apply(first)?;
            second = b.apply(second)?;
        }
        Ok((first, second))
    }

    /// Encrypts a message: the message is padded with `pad` to a multiple
    /// of the block length, then every letter becomes the pair produced
    /// by the coefficient at its position inside the block. Output length
    /// is twice the padded length.
    pub fn encrypt(&self, message: &[u32], pad: u32) -> Result<Vec<u32>> {
        if pad >= self.alphabet_size {
            return Err(Error::LetterOutOfRange { letter: pad, alphabet: self.alphabet_size });
        }
        let block = self.block_len();
        let mut padded = message.to_vec();
        while !padded.is_empty() && padded.len() % block != 0 {
            padded.push(pad);
        }
        let mut out = Vec::with_capacity(2 * padded.len());
        for chunk in padded.chunks(block) {
            for (i, &x) in chunk.iter().enumerate() {
                let (first, second) = self.encrypt_letter(x, i)?;
                out.push(first);
                out.push(second);
            }
        }
        Ok(out)
    }

    /// Decrypts one letter pair at block position `i` by running both
    /// inverse chains in reverse term order; the chains must agree.
    /// `position` is only used to report where a mismatch happened.
    fn decrypt_pair(&self, pair: (u32, u32), i: usize, position: usize) -> Result<u32> {
        let coeff = &self.coefficients[i];
        let (mut first, mut second) = pair;
        for (a, b) in coeff.iter().rev() {
            first = a.unapply(first)?;
            second = b.unapply(second)?;
        }
        if first != second {
            return Err(Error::InconsistentPair { position });
        }
        Ok(first)
    }

    /// Decrypts a ciphertext produced by [`CompositeKey::encrypt`]. The
    /// length must be a multiple of twice the block length; every letter
    /// pair must decode consistently through both inverse chains.
    pub fn decrypt(&self, ciphertext: &[u32]) -> Result<Vec<u32>> {
        let block = self.block_len();
        if ciphertext.len() % (2 * block) != 0 {
            return Err(Error::MalformedLength {
                len: ciphertext.len(),
                expected: 2 * block,
            });
        }
        let mut out = Vec::with_capacity(ciphertext.len() / 2);
        for (pair_index, pair) in ciphertext.chunks(2).enumerate() {
            let i = pair_index % block;
            out.push(self.decrypt_pair((pair[0], pair[1]), i, pair_index)?);
        }
        Ok(out)
    }
}

impl fmt::Display for CompositeKey {
    /// Writes the symbolic expansion, e.g.
    /// `A0B0 + (A0B1+A1B0)X + (A1B1+A2B0)X^2 + A2B1X^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, entry) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let terms: Vec<String> =
                entry.iter().map(|(a, b)| format!("{}{}", a.name(), b.name())).collect();
            let joined = terms.join("+");
            if terms.len() > 1 && i > 0 {
                write!(f, "({joined})")?;
            } else {
                f.write_str(&joined)?;
            }
            match i {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

/// One substitution system as written in a key file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SystemSpec {
    /// Caesar shift by `shift` (negative allowed).
    Caesar { shift: i64 },
    /// Explicit permutation table.
    Permutation { map: Vec<u32> },
}

/// JSON key file: an alphabet size and the two coefficient lists.
///
/// ```json
/// {"alphabet_size": 10,
///  "f": [{"type":"caesar","shift":1}, {"type":"caesar","shift":2}],
///  "g": [{"type":"caesar","shift":-1}]}
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KeyFile {
    /// Number of letters N; letters are 0..N−1.
    pub alphabet_size: u32,
    /// Coefficients of the first polynomial, ascending in the exponent.
    pub f: Vec<SystemSpec>,
    /// Coefficients of the second polynomial, ascending in the exponent.
    pub g: Vec<SystemSpec>,
}

impl KeyFile {
    /// Parses a key file from JSON text.
    pub fn from_json(text: &str) -> Result<KeyFile> {
        serde_json::from_str(text).map_err(|e| Error::InvalidKey(e.to_string()))
    }

    /// Serializes the key file as pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("key files always serialize")
    }

    fn build(&self, specs: &[SystemSpec], prefix: &str) -> Result<KeyPolynomial> {
        let systems = specs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let name = format!("{prefix}{i}");
                match s {
                    SystemSpec::Caesar { shift } => {
                        BasicSystem::caesar(&name, self.alphabet_size, *shift)
                    }
                    SystemSpec::Permutation { map } => {
                        if map.len() as u32 != self.alphabet_size {
                            return Err(Error::AlphabetMismatch {
                                left: self.alphabet_size,
                                right: map.len() as u32,
                            });
                        }
                        BasicSystem::permutation(&name, map)
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        KeyPolynomial::new(systems)
    }

    /// Builds the first polynomial (systems named A0, A1, …).
    pub fn f_polynomial(&self) -> Result<KeyPolynomial> {
        self.build(&self.f, "A")
    }

    /// Builds the second polynomial (systems named B0, B1, …).
    pub fn g_polynomial(&self) -> Result<KeyPolynomial> {
        self.build(&self.g, "B")
    }

    /// Expands the two polynomials into the composite key.
    pub fn expand(&self) -> Result<CompositeKey> {
        expand_key(&self.f_polynomial()?, &self.g_polynomial()?)
    }

    /// The key of the worked demo: Caesar shifts +1, +2, +3 and −1, −2
    /// over the 10-letter alphabet.
    pub fn worked_example() -> KeyFile {
        KeyFile {
            alphabet_size: 10,
            f: vec![
                SystemSpec::Caesar { shift: 1 },
                SystemSpec::Caesar { shift: 2 },
                SystemSpec::Caesar { shift: 3 },
            ],
            g: vec![SystemSpec::Caesar { shift: -1 }, SystemSpec::Caesar { shift: -2 }],
        }
    }
}

/// Parses a whitespace-separated list of letter indices.
pub fn parse_letters(text: &str) -> Result<Vec<u32>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| Error::SyntaxError(format!("bad letter index: {tok}")))
        })
        .collect()
}

/// Formats letters back as a whitespace-separated list.
pub fn format_letters(letters: &[u32]) -> String {
    letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}
