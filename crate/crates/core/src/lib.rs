//! Exact arithmetic for verifying p-adic supercongruences of truncated
//! hypergeometric series.
//!
//! The crate is organised bottom-up:
//!
//! - [`padic`] — rationals as p-adic numbers: valuations, residues,
//!   modular inverses, the dash operation α ↦ α*, Legendre symbols.
//! - [`gamma`] — the p-adic Gamma function Γ_p with a prefix-product cache,
//!   shift/reflection helpers and its Taylor coefficients along pZ_p.
//! - [`harmonic`] — restricted harmonic sums H_n^(s)(p), their elementary
//!   symmetric companions, and character-twisted harmonic numbers.
//! - [`hyperseries`] — truncated hypergeometric series ₍r+1₎F_r[…]_n with an
//!   exact path and a valuation-tracking modular path, plus classical
//!   terminating summation identities used as oracles.
//! - [`localglobal`] — the hyperplane machinery: admissible plane families,
//!   line searches, Vandermonde extraction of Taylor coefficients, and
//!   "vanishes on planes ⟹ vanishes everywhere" verification drivers.
//! - [`theorems`] — a registry of congruence statements with machine-checked
//!   side conditions, case selection, sweeps and report generation.
//!
//! All verification arithmetic is exact: big-rational computations are
//! authoritative, and fixed-width modular arithmetic is used only as a fast
//! path that is property-tested against the exact one.

pub mod gamma;
pub mod harmonic;
pub mod hyperseries;
pub mod localglobal;
pub mod padic;
pub mod theorems;

pub use padic::{PadicApprox, Prime, QpApprox, Rational};

use thiserror::Error;

/// Unified error type for the whole crate.
///
/// Variants are shared across modules so that evaluators can be composed
/// without error-translation boilerplate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A rational was used as a p-adic integer but its denominator is
    /// divisible by p.
    #[error("denominator of {value} is divisible by {p}, not a p-adic integer")]
    NonUnitDenominator { value: String, p: u64 },

    /// Modular inversion of a non-unit was requested.
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: String, modulus: u64 },

    /// A claimed prime failed the primality check.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// An odd prime was required.
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    /// The requested modulus p^N does not fit the fixed-width engine.
    #[error("modulus {p}^{n} exceeds the fixed-width engine range")]
    ModulusTooLarge { p: u64, n: u32 },

    /// Taylor data of this order is not available for this prime.
    #[error("Taylor order {order} too large for prime {p} (needs order ≤ p−2)")]
    OrderTooLarge { order: u32, p: u64 },

    /// Newton–Girard conversion was asked for order s without all power sums
    /// of order 1..s.
    #[error("power sums up to order {needed} required, only {got} supplied")]
    MissingOrder { needed: u32, got: usize },

    /// Character-twisted harmonic numbers are only defined here for the
    /// moduli carrying a unique nontrivial character.
    #[error("unsupported character modulus {0} (expected 3, 4 or 6)")]
    UnsupportedModulus(u32),

    /// A lower parameter of a hypergeometric series hit a nonpositive integer
    /// before the series terminated.
    #[error("lower parameter {param} produces a pole at term {index}")]
    LowerParameterPole { param: String, index: u64 },

    /// A terminating-identity check was invoked with a non-terminating
    /// parameter set.
    #[error("parameter {0} is not a nonnegative integer; series does not terminate")]
    NotTerminating(String),

    /// The modular series evaluation could not certify the requested
    /// precision even after raising the working precision.
    #[error("cancellation exceeded working precision; cannot certify mod {p}^{exponent}")]
    PrecisionUnreachable { p: u64, exponent: u32 },

    /// A Pochhammer factor is exactly zero, so its valuation is +∞.
    #[error("rising factorial ({x})_{k} contains a zero factor")]
    ZeroProduct { x: String, k: u64 },

    /// A hyperplane whose coefficients all vanish mod p does not reduce to a
    /// hyperplane over F_p.
    #[error("plane {0} degenerates modulo p")]
    DegeneratePlane(String),

    /// The hyperplane family has two members with the same mod-p image, so
    /// the local-global argument does not apply.
    #[error("hyperplane family is not admissible: {0}")]
    NotAdmissible(String),

    /// The base point lies on the intersection of two planes, so no line
    /// through it meets them at distinct parameters.
    #[error("base point lies on the intersection of planes {0} and {1}")]
    BasePointOnIntersection(String, String),

    /// The direction search space is exhausted; the prime is too small for
    /// the requested plane family.
    #[error("no admissible direction exists for {planes} planes at p = {p}")]
    PrimeTooSmall { planes: usize, p: u64 },

    /// Interpolation nodes collide modulo p.
    #[error("interpolation nodes {0} and {1} collide modulo p")]
    NodesCollide(u64, u64),

    /// The multivariate coefficient grid would be too large.
    #[error("extraction grid of size {0} exceeds the configured limit")]
    GridTooLarge(u64),

    /// The registry entry has no hyperplane proof decomposition.
    #[error("theorem {0} has no local-global proof decomposition")]
    UnsupportedDecomposition(String),

    /// Unknown registry id.
    #[error("unknown theorem id {0}")]
    UnknownTheorem(String),

    /// Missing or malformed parameter for a registry entry.
    #[error("bad parameter for {theorem}: {message}")]
    BadParameter { theorem: String, message: String },

    /// A value expected to be a p-adic integer had negative valuation.
    #[error("value has negative valuation {valuation}, not a p-adic integer")]
    NotIntegral { valuation: i64 },
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;
