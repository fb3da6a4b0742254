//! Crate-wide error type shared by all modules.

use thiserror::Error;

/// Shorthand for results produced by this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Names the hypothesis of [`crate::monoid::construct_irreducible_x1`] that
/// could not be verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum X1Hypothesis {
    /// The coefficient domain must be ℤ, the one supported domain with
    /// prime elements.
    CoefficientDomainNotZ,
    /// Every listed coefficient must be a prime element of ℤ.
    NotPrime,
    /// At least one exponent is required.
    TooFewExponents,
    /// Exactly one prime per exponent after the first.
    CountMismatch,
    /// Every exponent must be a member of the monoid.
    ExponentNotInMonoid,
    /// The first exponent must be an atom of the monoid.
    FirstExponentNotAtom,
    /// No exponent after the first may lie in `m₁ + M`.
    ExponentInShiftedMonoid,
    /// Exponents must be pairwise distinct.
    DuplicateExponent,
    /// The monoid must differ from its quotient group, so `M = {0}` is
    /// rejected.
    TrivialMonoid,
}

impl std::fmt::Display for X1Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            X1Hypothesis::CoefficientDomainNotZ => "coefficient domain must be Z",
            X1Hypothesis::NotPrime => "coefficient is not a prime element",
            X1Hypothesis::TooFewExponents => "at least one exponent is required",
            X1Hypothesis::CountMismatch => "expected one prime per exponent after the first",
            X1Hypothesis::ExponentNotInMonoid => "exponent is not in the monoid",
            X1Hypothesis::FirstExponentNotAtom => "first exponent is not an atom of the monoid",
            X1Hypothesis::ExponentInShiftedMonoid => {
                "exponent lies in m1 + M, the monoid shifted by the first exponent"
            }
            X1Hypothesis::DuplicateExponent => "exponents must be pairwise distinct",
            X1Hypothesis::TrivialMonoid => "monoid must contain a nonzero element",
        };
        f.write_str(msg)
    }
}

/// Everything that can go wrong across the algebra, monoid, and cipher layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands live in different coefficient domains.
    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },
    /// The element has no multiplicative inverse.
    #[error("element has no multiplicative inverse")]
    NotInvertible,
    /// The operation is not defined for the given inputs.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// No supported embedding of one domain into another.
    #[error("no embedding of {sub} into {sup}")]
    NoEmbedding { sub: String, sup: String },
    /// Input text does not match the expected grammar.
    #[error("syntax error: {0}")]
    SyntaxError(String),
    /// A parsed literal does not denote an element of the target domain.
    #[error("coefficient not in domain: {0}")]
    CoefficientNotInDomain(String),
    /// Domain construction parameters violate an invariant.
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    /// Composite-ring tower construction parameters violate an invariant.
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    /// An exponent had to be an integer but is not.
    #[error("exponent {0} is not an integer")]
    NonIntegralExponent(String),
    /// Integer-valued composites support only finite fields and (ℤ, ℚ).
    #[error("unsupported integer-valued pair: A={a}, B={b}")]
    UnsupportedIbaPair { a: String, b: String },
    /// A polynomial argument was required to be a member of the composite.
    #[error("polynomial is not a member of {0}")]
    NotAMember(String),
    /// The coefficient domain of the polynomial is not a field.
    #[error("{0} is not a field")]
    NotAField(String),
    /// The operation requires every tower entry to be a field.
    #[error("operation requires a tower of fields")]
    NotFieldTower,
    /// A bounded search could not certify its result within the budget.
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    /// Exhaustive enumeration was requested over an infinite domain.
    #[error("domain {0} is not finite")]
    InfiniteDomain(String),
    /// The square-times-square-free coset test has no procedure for the pair.
    #[error("coset test {{a^2*b}} undecidable for A={a}, B={b}")]
    UndecidableCosetTest { a: String, b: String },
    /// The denominator is outside the declared multiplicative system.
    #[error("denominator is not in the multiplicative system")]
    DenominatorNotInSystem,
    /// A monoid exponent was negative.
    #[error("negative exponent: {0}")]
    NegativeExponent(String),
    /// A rational was required to lie in the monoid.
    #[error("{0} is not in the monoid")]
    NotInMonoid(String),
    /// An exponent of a monoid-domain element is outside the monoid.
    #[error("exponent {0} is not in the monoid")]
    ExponentNotInMonoid(String),
    /// The polynomial is zero where a nonzero one is required.
    #[error("polynomial is zero")]
    ZeroPolynomial,
    /// A hypothesis of the irreducible-element construction failed.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(X1Hypothesis),
    /// An exhaustive search would exceed the configured cap.
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    /// Localization at zero requires a nonzero monomial denominator.
    #[error("denominator must be a nonzero monomial")]
    NonMonomialDenominator,
    /// The query makes no sense for the input (for example irreducibility of
    /// a unit).
    #[error("not applicable: {0}")]
    NotApplicable(String),
    /// A letter index is outside the alphabet.
    #[error("letter {letter} out of range for alphabet of size {alphabet}")]
    LetterOutOfRange { letter: u32, alphabet: u32 },
    /// Two cipher components disagree on the alphabet size.
    #[error("alphabet sizes differ: {left} vs {right}")]
    AlphabetMismatch { left: u32, right: u32 },
    /// Ciphertext length must be a multiple of twice the block length.
    #[error("ciphertext length {len} is not a multiple of {expected}")]
    MalformedLength { len: usize, expected: usize },
    /// The two inverse chains of a letter pair disagree: wrong key or
    /// corrupted ciphertext.
    #[error("inverse chains disagree at letter pair {position}: wrong key or corrupted ciphertext")]
    InconsistentPair { position: usize },
    /// The polynomial is not the image of any message.
    #[error("decode error: {0}")]
    DecodeError(String),
    /// A substitution system or key file is malformed.
    #[error("invalid key: {0}")]
    InvalidKey(String),
}
