//! p-adic link invariants.
//!
//! Computes, for a link given by meridian/longitude data:
//! Magnus expansions and Fox derivatives over the free pro-p group,
//! p-adic Milnor numbers and their indeterminacy ideals, Traldi
//! presentation matrices for the completed Alexander module, the
//! Galois-module structure of the p-primary homology of p^m-fold
//! cyclic branched covers, and the lambda/mu/nu growth invariants.
//!
//! The crate is organized bottom-up: exact words and scalars feed
//! truncated power series, which feed the Milnor/Traldi layer, which
//! feeds cyclotomic evaluation and the branched-cover reports.

pub mod branched;
pub mod catalog;
pub mod cyclo;
pub mod fox;
pub mod iwasawa;
pub mod lambda;
pub mod padic;
pub mod report;
pub mod series;
pub mod traldi;
pub mod words;

use thiserror::Error;

/// Errors shared across the crate.
///
/// The CLI maps these onto distinct exit codes: input/parse errors,
/// shallow-truncation errors, and precision exhaustion are kept apart.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("generator index {index} out of range (bound {bound})")]
    GeneratorOutOfRange { index: usize, bound: usize },

    #[error("exponent too large: {0}")]
    ExponentOverflow(String),

    #[error("invalid link data: {0}")]
    InvalidLink(String),

    #[error("constant term is not a unit")]
    NonUnitConstantTerm,

    #[error("mu-table too shallow: need multi-indices of length {needed}, table depth is {have}")]
    TableTooShallow { needed: usize, have: usize },

    #[error("result is exact only through degree {have}, but degree {needed} is required")]
    TruncationTooCoarse { needed: u32, have: u32 },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("gcd ambiguous at current (D, N): {0}; raise precision")]
    GcdAmbiguous(String),

    #[error("all ideal generators vanish at this truncation; series gcd undefined")]
    ZeroIdeal,

    #[error("homology is infinite (first seen at level {level})")]
    Infinite { level: u32 },

    #[error("nu did not stabilize within m <= {max_m}")]
    NuNotStabilized { max_m: u32 },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default p-adic working precision (digits).
pub const DEFAULT_PRECISION: u32 = 16;
/// Default total-degree cap for truncated series.
pub const DEFAULT_DEGREE_CAP: u32 = 8;
/// Hard ceiling for the precision retry policy.
pub const MAX_PRECISION: u32 = 256;

/// Runs `f` at precision `n0`, doubling the precision and retrying on
/// precision exhaustion (or an ambiguous gcd), up to [`MAX_PRECISION`].
///
/// Valuation decisions on exact integer data never trigger this; it
/// exists for pipelines that pass through genuinely p-adic scalars.
pub fn with_precision_retry<T>(n0: u32, f: impl Fn(u32) -> Result<T>) -> Result<T> {
    let mut n = n0.max(1);
    loop {
        match f(n) {
            Err(Error::PrecisionExhausted(msg)) | Err(Error::GcdAmbiguous(msg)) => {
                if n >= MAX_PRECISION {
                    return Err(Error::PrecisionExhausted(format!(
                        "{msg} (ceiling N = {MAX_PRECISION} reached)"
                    )));
                }
                n = (n * 2).min(MAX_PRECISION);
            }
            other => return other,
        }
    }
}

pub use padic::{PadicInt, Scalar, Valuation};
pub use words::{LinkData, Word};
