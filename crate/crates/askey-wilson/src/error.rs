//! Error types shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by series evaluation, operator application, and the
/// verification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Context parameters violate their invariants (|q| outside (0,1), etc.).
    #[error("invalid context: {0}")]
    InvalidContext(String),

    /// An infinite product or series ran past the hard term budget.
    #[error("term budget exceeded after {terms} terms")]
    BudgetExceeded { terms: usize },

    /// A non-terminating series outside its convergence region.
    #[error("series does not converge: {0}")]
    NonConvergent(String),

    /// A denominator parameter of the form q^-m hit its zero before the
    /// series terminated.
    #[error("denominator pole at term index {index}")]
    DenominatorPole { index: usize },

    /// A recurrence-coefficient denominator is numerically zero.
    #[error("degenerate recurrence denominator at nu = {nu}")]
    DegenerateDenominator { nu: f64 },

    /// One of the lattice differences entering the divided-difference
    /// operator vanishes at this point.
    #[error("degenerate lattice point s = {s}")]
    DegenerateLatticePoint { s: Complex64 },

    /// An argument is outside the operation's documented domain.
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    /// The contiguous-relation linear system is singular.
    #[error("singular coefficient system")]
    SingularSystem,

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge (requested {requested:e}, reached {reached:e})")]
    QuadratureNonConvergent { requested: f64, reached: f64 },

    /// Every sample of a verification sweep failed to evaluate.
    #[error("all {trials} sweep samples failed to evaluate; first error: {first}")]
    AllSamplesFailed { trials: usize, first: String },
}

pub type Result<T> = std::result::Result<T, Error>;
