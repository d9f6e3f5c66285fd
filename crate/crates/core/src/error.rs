//! Error types shared across the crate.
//!
//! Two failure channels are kept strictly apart. [`Error`] covers ordinary
//! misuse: malformed tables, violated preconditions, bounds that are too
//! small. [`Falsification`] is reserved for the situations that the theory
//! says cannot happen on verified input — an augmentation kernel that fails
//! to square to zero, a solved endomorphism ring that is not isomorphic to
//! the base. Reaching one of those means the implementation (not the input)
//! is wrong, and callers surface it on a dedicated exit path.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a ring: {0}")]
    NotARing(String),

    #[error("not a homomorphism: {0}")]
    NotAHom(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("not a module: {0}")]
    NotAModule(String),

    #[error("not a category: {0}")]
    NotACategory(String),

    #[error("not a functor: {0}")]
    NotAFunctor(String),

    #[error("not a natural transformation: {0}")]
    NotNatural(String),

    #[error("the zero ring has an empty spectrum")]
    EmptySpectrum,

    #[error("category has no initial object")]
    NoInitialObject,

    #[error("bound too small: {0}")]
    BoundTooSmall(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Falsified(#[from] Falsification),
}

/// A checked mathematical statement failed on input that was itself verified.
///
/// `check` names the property that failed and `witness` is a minimal,
/// replayable description of the counterexample.
#[derive(Debug, Clone, Error)]
#[error("falsification of `{check}`: {witness}")]
pub struct Falsification {
    pub check: String,
    pub witness: String,
}

impl Falsification {
    pub fn new(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Falsification {
            check: check.into(),
            witness: witness.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
