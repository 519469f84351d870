//! Numerical laboratory for two-dimensional two-phase Hadamard materials.
//!
//! A Hadamard material stores energy as `W(F) = mu/2 |F|^2 + h(det F)` with a
//! double-well potential `h`. For the equal-depth quartic well this crate
//! computes, for any admissible `(mu, d1, d2)`:
//!
//! * the elastic jump set and its Weierstrass-stable arc ([`jumpset`]),
//! * polyconvexity certificates and bounds along hydrostatic strains ([`pcx`]),
//! * the secondary (rank-two laminate) jump set ([`secondary`]),
//! * the circular-nucleus equilibrium profile, the far-field strain it
//!   selects, and the induced bounds on the elastic binodal together with the
//!   hydrostatic quasiconvex envelope ([`nucleus`]),
//! * small-`mu` closed-form asymptotics for all of the above.
//!
//! Shared scalar kernels (bracketed root finding, bounded minimization,
//! damped Newton, adaptive Runge-Kutta, cubic roots) live in [`numerics`].
//!
//! All computations are pure functions of value types. With the default
//! `parallel` feature the embarrassingly parallel sweeps (curve sampling,
//! parameter sweeps, verdict scans) fan out through rayon; disabling the
//! feature falls back to equivalent sequential loops with identical results.

pub mod jumpset;
pub mod material;
pub mod nucleus;
pub mod numerics;
pub mod pcx;
pub mod secondary;

pub(crate) mod par;

pub use material::{DiagonalStrain, MaterialParams, Matrix2};

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid material parameters: {0}")]
    InvalidParams(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("no convergence after {0} iterations")]
    MaxIterations(usize),
    #[error("jacobian is numerically singular (condition estimate {cond:.3e})")]
    SingularJacobian { cond: f64 },
    #[error("integration step underflow at x = {x} (vanishing denominator or loss of ellipticity)")]
    StepUnderflow { x: f64 },
    #[error("leading coefficient of the cubic is zero")]
    DegenerateLeadingCoefficient,
    #[error("eps0 = {eps0} lies outside the jump-set domain (discriminant < 0)")]
    OutsideDomain { eps0: f64 },
    #[error("no W-point exists for mu = {mu}")]
    NoWPoint { mu: f64 },
    #[error("secondary jump-set solve did not converge at eps0 = {eps0}")]
    NoConvergence { eps0: f64 },
    #[error("volume fraction {lambda} out of [0, 1] at eps0 = {eps0}")]
    LambdaOutOfRange { lambda: f64, eps0: f64 },
    #[error("eps0 = {eps0} outside the window [{lo}, {hi}]")]
    OutsideWindow { eps0: f64, lo: f64, hi: f64 },
    #[error("profile tail too short to extract the far-field limit")]
    TailTooShort,
}

pub type Result<T> = std::result::Result<T, Error>;
