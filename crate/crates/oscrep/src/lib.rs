//! Exact differential-operator models of the odd and even orthogonal Lie
//! algebras `o(2n+3)` and `o(2n+2)`, the polynomial modules they act on, and
//! the combinatorial identities those modules satisfy.
//!
//! Everything is computed in exact arithmetic; no floating point anywhere.
//!
//! * [`exact`]: arbitrary-precision integers, rationals, half-integers, and
//!   the zero-extended binomial coefficient.
//! * [`poly`]: sparse multivariate polynomials over the rationals, the
//!   triangular variable tables, determinant generators, and the graded
//!   monomial orders used for leading monomials.
//! * [`liealg`]: the matrix model of the algebras, brackets, root data,
//!   dominance, and the Weyl dimension formula.
//! * [`oscrep`]: first-order differential operators realizing each algebra on
//!   a polynomial ring, built two independent ways (closed formulas and an
//!   inductive tower), plus homomorphism checking.
//! * [`modbasis`]: exact module construction by operator closure, the
//!   combinatorial spanning family, graded dimensions, and the alternating
//!   graded dimension formula.
//! * [`singular`]: singular vectors, their leading monomials, branching
//!   patterns, dedup to a basis, and branch tables.
//! * [`identities`]: decomposition, Macdonald-type, and Steinberg-type
//!   identities checked exactly, with seeded sweeps.
//! * [`cli`]: the `oscrep` command-line interface (JSON Lines output).
//!
//! # Examples
//!
//! ```
//! use oscrep::liealg::{weyl_dim, Weight};
//! use oscrep::modbasis::spanning_span_dim;
//! use oscrep::oscrep::RepContext;
//! use oscrep::{Guards, Int, Parity};
//!
//! // The five-dimensional module of o(5) with highest weight (0, 1).
//! let lambda: Weight = "0,1".parse().unwrap();
//! let ctx = RepContext::for_weight(1, Parity::Odd, &lambda).unwrap();
//! ctx.verify_homomorphism().unwrap();
//!
//! let dim = spanning_span_dim(&ctx, &Guards::default()).unwrap();
//! assert_eq!(Int::from(dim as u64), weyl_dim(Parity::Odd, &lambda).unwrap());
//! ```

pub mod cli;
pub mod exact;
pub mod identities;
pub mod liealg;
pub mod modbasis;
pub mod oscrep;
pub mod poly;
pub mod singular;

pub use exact::{binom, HalfInt, Int, Rat};
pub use liealg::{weyl_dim, BasisElem, Weight};
pub use oscrep::{DiffOp, RepContext};
pub use poly::{Monomial, Poly, VarIndex, VarTable};

use std::fmt;
use std::str::FromStr;

/// Which family of orthogonal algebras is in play.
///
/// `Odd` selects `o(2n+3)` (type B ambient, rank `n+1`), whose variable rows
/// include a middle column `0`. `Even` selects `o(2n+2)` (type D ambient),
/// whose variable rows skip column `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    /// Ambient matrix size for tower parameter `n`: `2n+3` or `2n+2`.
    pub fn ambient_dim(self, n: u32) -> u32 {
        match self {
            Parity::Odd => 2 * n + 3,
            Parity::Even => 2 * n + 2,
        }
    }

    /// Whether variable rows contain the middle column `0`.
    pub fn has_zero_column(self) -> bool {
        matches!(self, Parity::Odd)
    }

    /// Dimension of the ambient Lie algebra, `m(m-1)/2` for `m = ambient_dim`.
    pub fn algebra_dim(self, n: u32) -> u64 {
        let m = self.ambient_dim(n) as u64;
        m * (m - 1) / 2
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Odd => write!(f, "odd"),
            Parity::Even => write!(f, "even"),
        }
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            other => Err(Error::InvalidArgument(format!(
                "parity must be `odd` or `even`, got `{other}`"
            ))),
        }
    }
}

/// Errors produced by exact computations and guard checks.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A half-integer was required to be an integer and was not.
    #[error("not an integer: {0}")]
    NotAnInteger(String),
    /// A weight failed the dominance conditions of its family.
    #[error("weight is not dominant for the requested family: {0}")]
    NotDominant(String),
    /// A computation would exceed a configured size guard.
    #[error("guard exceeded: {what} = {actual} > limit {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },
    /// A weight string or coordinate list could not be parsed.
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    /// A malformed argument outside the weight grammar.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A singular-vector exponent tuple violates its family constraints.
    #[error("singular-spec constraint violated: {0}")]
    ConstraintViolation(String),
    /// A (kappa, nu) pair violates the interlacing conditions.
    #[error("interlacing violated: {0}")]
    InterlacingViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Size guards protecting interactive use from runaway exact computations.
///
/// `max_n` bounds the tower parameter accepted by the CLI; the word and
/// matrix-entry limits bound the combinatorial basis enumeration and the rank
/// computations in [`modbasis`].
#[derive(Clone, Copy, Debug)]
pub struct Guards {
    pub max_n: u32,
    pub max_words: u64,
    pub max_matrix_entries: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_n: 6,
            max_words: 20_000,
            max_matrix_entries: 5_000_000,
        }
    }
}

impl Guards {
    /// No limits; used when an explicit override is requested.
    pub fn unlimited() -> Self {
        Guards {
            max_n: u32::MAX,
            max_words: u64::MAX,
            max_matrix_entries: u64::MAX,
        }
    }

    /// Checks the tower parameter against `max_n`.
    pub fn check_n(&self, n: u32) -> Result<()> {
        if n > self.max_n {
            return Err(Error::GuardExceeded {
                what: "n",
                limit: self.max_n as u64,
                actual: n as u64,
            });
        }
        Ok(())
    }
}
