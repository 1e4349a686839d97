//! Crate-wide error type.
//!
//! Numeric payloads are reported as `f64` regardless of the working scalar
//! type so the enum stays non-generic.

use std::path::PathBuf;

/// Everything that can go wrong while loading inputs or solving.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    CatalogParse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate particle name {name:?} in catalog")]
    DuplicateParticle { name: String },

    #[error("particle {name:?} has non-positive rest energy {rest_energy} MeV")]
    NonPositiveRestEnergy { name: String, rest_energy: f64 },

    #[error("particle {name:?} not found in catalog")]
    ParticleNotFound { name: String },

    #[error("invalid constants: {message}")]
    InvalidConstants { message: String },

    #[error("invalid system: {message}")]
    InvalidSystem { message: String },

    #[error("invalid quantum numbers n={n}, l={l}: require 0 <= l <= n-1")]
    InvalidQuantumNumbers { n: u32, l: u32 },

    #[error("invalid solver configuration: {message}")]
    InvalidConfig { message: String },

    #[error(
        "supercritical coupling for l={l}: Zalpha={zalpha} >= l + 1/2 = {critical}; \
         no real bound-state exponent exists"
    )]
    SupercriticalCoupling { l: u32, zalpha: f64, critical: f64 },

    #[error(
        "radicand {radicand} turned negative at iteration {iteration} (sigma_l={sigma}); \
         the level cannot be iterated with this d0 policy"
    )]
    NegativeRadicand {
        iteration: usize,
        radicand: f64,
        sigma: f64,
    },

    #[error("beta = n - sigma_l = {beta} is not positive at iteration {iteration}")]
    NonPositiveBeta { iteration: usize, beta: f64 },

    #[error(
        "level iteration did not converge after {iterations} iterations \
         (last |sigma' - sigma| = {last_delta})"
    )]
    NoConvergence { iterations: usize, last_delta: f64 },

    #[error(
        "inconsistent (m, E') pair: m = {m} MeV but m0 + E' = {expected} MeV \
         (relative gap {relative_gap})"
    )]
    InconsistentMassPair {
        m: f64,
        expected: f64,
        relative_gap: f64,
    },

    #[error("speed |v| = {speed} must be below 1 (units of c)")]
    SpeedNotSubluminal { speed: f64 },

    #[error("division by zero in {context}")]
    DivisionByZero { context: &'static str },

    #[error("recurrence denominator vanished at nu={nu} (value {denominator})")]
    DegenerateRecurrence { nu: usize, denominator: f64 },

    #[error("radial grid must be strictly increasing and positive")]
    InvalidGrid,

    #[error(
        "radial grid too short: estimated tail mass fraction {tail_fraction:.3e} exceeds \
         {limit:.1e}; extend r_max to at least ~{suggested_r_max:.3} fm"
    )]
    TailMass {
        tail_fraction: f64,
        limit: f64,
        suggested_r_max: f64,
    },

    #[error("radial scale undefined: mu = {mu} MeV must be positive (normal branch only)")]
    NonPositiveMu { mu: f64 },

    #[error("radial scale undefined: E' = {eprime} MeV must be negative (bound state)")]
    UnboundLevel { eprime: f64 },

    #[error(
        "shooting bracket [{beta_lo}, {beta_hi}] does not straddle an eigenvalue \
         (mismatch {mismatch_lo} and {mismatch_hi} have the same sign)"
    )]
    BracketFailure {
        beta_lo: f64,
        beta_hi: f64,
        mismatch_lo: f64,
        mismatch_hi: f64,
    },

    #[error("coefficient 1 + d0/(beta*rho) crosses zero at rho = {rho} inside the window")]
    CoefficientSingularity { rho: f64 },

    #[error("integration produced non-finite values ({context})")]
    NonFinite { context: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
