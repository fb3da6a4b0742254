//! Exact arithmetic for polynomial composite rings, monoid domains, and a
//! composite-key block cipher.
//!
//! The crate builds up in layers:
//!
//! - [`Domain`] / [`Scalar`]: exact coefficient arithmetic over ℤ, ℤ/n, ℚ,
//!   prime and small extension fields, and real multiquadratic fields
//!   ℚ(√d₁[,√d₂]), with canonical embeddings between them.
//! - [`Poly`]: sparse polynomials with nonnegative rational exponents, the
//!   shared carrier for B[X] and for monoid domains B[X;M].
//!
//! Everything is exact: no floating point, no randomized identity testing.
//! Structural classifiers (units, nilpotents, irreducibility, gradedness)
//! come with independent brute-force oracles at small scale so the fast
//! paths can be cross-checked.

mod fp;
mod parse;

pub mod cipher;
pub mod classify;
pub mod composite;
pub mod domain;
pub mod encode;
pub mod error;
pub mod fractions;
pub mod monoid;
pub mod oracle;
pub mod poly;
pub mod scalar;

pub use cipher::{
    expand_key, format_letters, parse_letters, BasicSystem, CompositeKey, KeyFile,
    KeyPolynomial, SystemSpec,
};
pub use classify::{
    graded_closure_check, in_maximal_ideal, in_saturated_system, is_irreducible_composite,
    is_irreducible_in_bx, is_nilpotent_composite, is_squarefree_composite, is_unit_composite,
    quotient_by_x, FactorBudget, GradedReport, GradedWitness, IrreducibleReason,
    IrreducibleVerdict, SystemVariant,
};
pub use composite::{ClosureReport, CompositeKind, CompositeSpec};
pub use domain::Domain;
pub use encode::{monoid_decode, monoid_encode};
pub use error::{Error, Result, X1Hypothesis};
pub use fractions::Fraction;
pub use monoid::{
    accp_chain_check, construct_irreducible_x1, divides_in_mdomain, localize_at_zero,
    mdomain_irreducible_oracle, AccpReport, AccpStep, LocalizedTerm, MPoly, MonoidSpec,
};
pub use oracle::{enumerate_members, irreducible_composite_oracle, unit_oracle};
pub use poly::{Exponent, Poly};
pub use scalar::Scalar;
