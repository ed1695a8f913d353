//! Exact symbolic-numeric engine for the exceptional (X_ell) Laguerre and
//! Jacobi orthogonal polynomial families.
//!
//! The crate constructs the L1, L2, J1, J2 and hyperbolic-DPT families of
//! exceptional orthogonal polynomials with exact rational arithmetic,
//! applies their Fuchsian and shift operators, and machine-verifies the
//! constructive formulas and polynomial identities behind them: closed
//! forms, differential equations, shape invariance, Rodrigues chains,
//! invariant subspaces, integration formulas, Gram-Schmidt construction,
//! generating functions, recurrence substitutes, zero locations and
//! singularity structure.
//!
//! Identity verification is exact (zero-residual polynomial checks over
//! rationals); orthogonality and norms are checked numerically with
//! high-precision Gauss quadrature in [`analysis`].

pub mod analysis;
pub mod classical;
pub mod error;
pub mod exactnum;
pub mod grid;
pub mod identities;
pub mod operators;
pub mod par;
pub mod report;
pub mod xcore;

pub use error::{Error, Result};
pub use exactnum::{rat, rat_from_str, rat_to_string, Poly, Rat, RationalFunction, Series};
pub use report::VerificationReport;
pub use xcore::{Family, Lambda, ParamSet};
