//! Relativistic spin-zero two-particle Coulomb bound states.
//!
//! Computes energy levels, binding energies, system masses and radial
//! wavefunctions for hydrogen-like atoms, pionium and pionic hydrogen from
//! a self-consistent iteration over the quantum-defect-like shift
//! `sigma_l`, and cross-checks the closed-form eigenvalues against an
//! independent shooting-method ODE solver and standard reference spectra
//! (Connell's two-particle fine-structure formula, one-body Klein-Gordon,
//! non-relativistic Bohr).
//!
//! Conventions: all masses are rest energies in MeV, lengths in fm, and the
//! coupling `alpha` is dimensionless. The solver core is generic over the
//! scalar type via [`Float`]; `f64` aliases are exported at the crate root.
//!
//! ```
//! use twobody_core::{
//!     solve_level, Branch, QuantumNumbers, SolverConfig64, System64,
//! };
//!
//! let pion = 139.57039;
//! let pionium = System64::new(pion, pion, 1, 0.0072973525693).unwrap();
//! let qn = QuantumNumbers::new(1, 0).unwrap();
//! let level = solve_level(&pionium, qn, Branch::Normal, &SolverConfig64::default()).unwrap();
//! assert!((level.binding_energy() - 1.858e-3).abs() < 2e-6); // ~1.858 keV
//! ```

// Guards are written `!(x > 0)` rather than `x <= 0` so NaN inputs fail
// validation too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod constants;
mod error;
mod float;
mod reference;
mod series;
mod shooting;
mod spectrum;
mod two_body;

pub use constants::{Catalog, ParticleSpec, PhysicalConstants, Spin};
pub use error::{Error, Result};
pub use float::Float;
pub use reference::{
    abnormal_nonrel, abnormal_particleium_spectrum, bohr_binding, compare_level, connell_energy,
    kg_one_body_binding, pionic_hydrogen_series, ComparisonRow,
};
pub use series::{
    exponent_s, node_count, radial_wavefunction, recurrence_coeffs, RadialScale, SeriesSolution,
};
pub use shooting::{
    beta_closed_form, compare_beta, shoot_eigenvalue_approx, shoot_eigenvalue_full, BetaComparison,
    EigenResult, ShootingConfig,
};
pub use spectrum::{
    binding_from_beta, energy_abnormal, energy_normal, residual_quadratic_53, sigma_l_zeroth,
    sigma_step, solve_level, AbnormalD0Policy, Branch, QuantumNumbers, SolverConfig, SpectrumLevel,
};
pub use two_body::{speed_type_reduced_mass, MassAccounting, ReducedMasses, TwoBodySystem};

/// `f64` aliases for the generic core types.
pub type System64 = TwoBodySystem<f64>;
pub type SolverConfig64 = SolverConfig<f64>;
pub type SpectrumLevel64 = SpectrumLevel<f64>;
pub type ReducedMasses64 = ReducedMasses<f64>;
pub type MassAccounting64 = MassAccounting<f64>;
pub type SeriesSolution64 = SeriesSolution<f64>;
pub type RadialScale64 = RadialScale<f64>;
pub type ShootingConfig64 = ShootingConfig<f64>;
pub type EigenResult64 = EigenResult<f64>;
pub type ComparisonRow64 = ComparisonRow<f64>;
