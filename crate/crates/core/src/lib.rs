//! Exact machinery for the central binomial convolution
//! `sum_{i+j=n} C(2i, i) C(2j, j) = 4^n` and its one-parameter generalization
//! `sum_{i+j=n} C(2i - l, i) C(2j + l, j) = 4^n`.
//!
//! * [`arith`]: big rationals and generalized binomial coefficients.
//! * [`polynomial`]: dense polynomials in `l`, used to prove statements for
//!   every `l` at once.
//! * [`series`]: truncated power series and the generating-function view.
//! * [`identities`]: every identity and rewrite step, at points and as
//!   polynomials, plus a brute-force inclusion-exclusion oracle.
//! * [`dsl`]: a text syntax for such identities with numeric and
//!   polynomial-identity verification.
//! * [`cli`]: the `binomverify` command-line front end.
//!
//! The guide in `book/` walks through each piece; its code listings are
//! compiled and run as doctests of this crate.

pub mod arith;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod identities;
pub mod polynomial;
pub mod series;

pub use arith::{Integer, Rational};
pub use error::{Error, Result};
pub use polynomial::Polynomial;
pub use series::Series;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    pub struct ExactArithmetic;
    #[doc = include_str!("../../../book/src/polynomials.md")]
    pub struct Polynomials;
    #[doc = include_str!("../../../book/src/power-series.md")]
    pub struct PowerSeries;
    #[doc = include_str!("../../../book/src/derivation.md")]
    pub struct Derivation;
    #[doc = include_str!("../../../book/src/inclusion-exclusion.md")]
    pub struct InclusionExclusion;
    #[doc = include_str!("../../../book/src/identity-language.md")]
    pub struct IdentityLanguage;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
