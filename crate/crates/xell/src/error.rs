//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Polynomial long division left a nonzero remainder where exact
    /// divisibility was required.
    #[error("not divisible, remainder {0}")]
    NotDivisible(String),

    /// A series operation was applied to a series whose constant term does
    /// not satisfy the operation's precondition (invertible for division,
    /// perfect square for sqrt, zero for exp, one for rational powers).
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),

    /// A three-term recurrence denominator vanished.
    #[error("degenerate recurrence: {0}")]
    DegenerateRecurrence(String),

    /// Requested n exceeds the finite bound-state count of the hyperbolic
    /// DPT family.
    #[error("bound state exceeded: n = {n} > {max}")]
    BoundStateExceeded { n: usize, max: isize },

    /// d0(n, lambda) vanished; possible only outside the standard parameter
    /// ranges.
    #[error("degenerate d0 at n = {0}")]
    DegenerateD0(usize),

    /// A denominator in the original-form expansion vanished.
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),

    /// The deforming polynomial has a root inside the orthogonality domain;
    /// the parameters do not define a valid weight.
    #[error("deforming polynomial root {root} lies in the orthogonality domain")]
    XiRootInDomain { root: f64 },

    /// Quadrature failed its node-doubling convergence gate.
    #[error("quadrature did not converge: {0}")]
    NonConvergent(String),

    /// The direct operator form and the composed factorisation disagree.
    #[error("operator composition mismatch: {0}")]
    CompositionMismatch(String),

    /// Root refinement stalled above the residual tolerance.
    #[error("root residual too large: {0}")]
    ResidualTooLarge(String),

    /// Gram-Schmidt output lost orthogonality beyond tolerance.
    #[error("loss of orthogonality: {0}")]
    LossOfOrthogonality(String),

    /// Parameters violate the constraints of the requested operation.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Malformed rational, polynomial or flag input.
    #[error("parse error: {0}")]
    Parse(String),

    /// Unknown verification suite name.
    #[error("unknown suite `{name}`; valid suites: {valid}")]
    UnknownSuite { name: String, valid: String },
}

pub type Result<T> = std::result::Result<T, Error>;
