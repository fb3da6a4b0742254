//! Runs every code sample in the book (`book/src/`) as a doc-test.
//!
//! Each chapter is included verbatim as the documentation of an empty
//! module, so `cargo test --workspace` compiles and executes the book's
//! Rust snippets and fails the build whenever a sample drifts out of sync
//! with the library's API or behavior. This crate exports nothing.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/domains.md")]
pub mod domains {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/composites.md")]
pub mod composites {}

#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}

#[doc = include_str!("../../../book/src/fractions.md")]
pub mod fractions {}

#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}

#[doc = include_str!("../../../book/src/monoid-domains.md")]
pub mod monoid_domains {}

#[doc = include_str!("../../../book/src/cipher.md")]
pub mod cipher {}

#[doc = include_str!("../../../book/src/encoding.md")]
pub mod encoding {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
