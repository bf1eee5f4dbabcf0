//! Exact Dehn surgery calculus on chain links.
//!
//! The library evaluates surgeries on chains of unknots with extended
//! rational coefficients, recognizes the resulting lens spaces and their
//! connected sums, and evaluates the two-bridge knot families `Y` and `Y*`
//! through magic manifold and Whitehead link fillings. A separate module
//! handles normalized slope lengths on hyperbolic cusps and symmetry
//! breaking tests against declared isometry data.
//!
//! All exact code is generic over an integer type implementing
//! [`scalar::Int`], and the cusp geometry is generic over a float type.
//! The aliases below fix the common choices.

pub mod audit;
pub mod cusped;
pub mod error;
pub mod families;
pub mod lens;
pub mod rational;
pub mod scalar;

pub use error::{Error, Result};

/// Extended rational with `i128` parts.
pub type ExtRational = rational::ExtRatio<i128>;
pub type ContinuedFraction = rational::CfWord<i128>;
pub type Chain = lens::ChainDescription<i128>;
pub type Manifold = lens::ClosedManifold<i128>;
pub type Params = families::FamilyParams<i128>;
pub type Cusp = cusped::CuspShape<f64>;
pub type ManifoldData = cusped::CuspedManifoldData<f64>;
