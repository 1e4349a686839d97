//! Self-consistent solver for the relativistic energy levels.
//!
//! A level is the fixed point of a scalar map on the quantum-defect-like
//! shift `sigma_l`: given `sigma`, the chain
//!
//! ```text
//! beta = n - sigma
//! E    = [m01^2 +/- 2 m01 m02 (1 + Z^2 a^2/beta^2)^(-1/2) + m02^2]^(1/2)
//! mu0  = 2 m01 m02 / (m0 + E),   mu = +/- mu0 (1 + Z^2 a^2/beta^2)^(-1/2)
//! D    = mu (m0 + E) / (2 E^2),  d0 = 2 Z^2 a^2 D
//! ```
//!
//! feeds back into `sigma' = l + 1/2 + d0/(2 beta) - sqrt((l+1/2)^2 -
//! Z^2 a^2 + 3 d0/2 - d0/beta)`, the previous iterate supplying `beta` in
//! both right-hand occurrences. All intermediates are recomputed each step,
//! so the converged record is mutually consistent by construction.
//!
//! The upper sign is the normal branch (levels rising toward `m0` with
//! `n`), the lower sign the abnormal branch (levels falling toward
//! `|m01 - m02|`). On the abnormal branch `D` is not small; the default
//! policy freezes `d0 = 0` there; the full iteration is available and
//! reports a negative radicand as a structured error instead of guessing.

use crate::error::{Error, Result};
use crate::float::{int, inv_sqrt1p, lit, one_minus_inv_sqrt1p, Float};
use crate::two_body::TwoBodySystem;

/// Principal/orbital/radial quantum numbers with `n_r = n - l - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    n: u32,
    l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n < 1 || l + 1 > n {
            return Err(Error::InvalidQuantumNumbers { n, l });
        }
        Ok(Self { n, l })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Radial quantum number `n_r = n - l - 1`.
    pub fn n_r(&self) -> u32 {
        self.n - self.l - 1
    }
}

/// Which of the two positive-energy roots a level belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `mu > 0`; levels increase with `n` toward `m0`.
    Normal,
    /// `mu < 0`; levels decrease with `n` toward `|m01 - m02|`.
    Abnormal,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::Normal => write!(f, "normal"),
            Branch::Abnormal => write!(f, "abnormal"),
        }
    }
}

/// How `d0` is treated while iterating an abnormal-branch level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AbnormalD0Policy {
    /// Freeze `d0 = 0` (the series expansion behind `sigma_l` assumes a
    /// small `d0`, which does not hold on this branch).
    #[default]
    FreezeZero,
    /// Iterate `d0` like on the normal branch; may fail with a negative
    /// radicand.
    FullIteration,
}

/// Iteration tolerances and policies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    /// Convergence threshold on `|sigma' - sigma| <= rel_tol * max(1, |sigma|)`.
    pub rel_tol: T,
    /// Iteration cap.
    pub max_iter: usize,
    /// Abnormal-branch `d0` policy.
    pub abnormal_d0: AbnormalD0Policy,
    /// Update damping in (0, 1]; 1 is a plain fixed-point update.
    pub damping: T,
}

impl<T: Float> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            rel_tol: lit(1e-14),
            max_iter: 200,
            abnormal_d0: AbnormalD0Policy::FreezeZero,
            damping: T::one(),
        }
    }
}

impl<T: Float> SolverConfig<T> {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero()) {
            return Err(Error::InvalidConfig {
                message: "rel_tol must be positive".into(),
            });
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidConfig {
                message: "max_iter must be at least 1".into(),
            });
        }
        if !(self.damping > T::zero() && self.damping <= T::one()) {
            return Err(Error::InvalidConfig {
                message: "damping must lie in (0, 1]".into(),
            });
        }
        Ok(())
    }
}

/// One converged level with every intermediate of the iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumLevel<T> {
    pub qn: QuantumNumbers,
    pub branch: Branch,
    /// Quantum-defect-like shift; `beta = n - sigma_l`.
    pub sigma_l: T,
    pub beta: T,
    /// Feedback coupling `d0 = 2 Z^2 alpha^2 D` as used by the iteration
    /// (zero on the abnormal branch under the freeze policy).
    pub d0: T,
    /// `D = mu (m0 + m) / (2 m^2)`.
    pub d_factor: T,
    /// Reduced mass `2 m01 m02/(m0 + m)` at the converged system mass.
    pub mu0: T,
    /// System mass corresponding to `mu0`; negative on the abnormal branch.
    pub mu: T,
    /// Converged system mass in MeV.
    pub m: T,
    /// Level energy `E_n` in MeV; numerically equal to `m`.
    pub energy: T,
    /// `E_n - m0`; negative for bound states.
    pub eprime: T,
    /// Number of sigma-map applications performed.
    pub iterations: usize,
    /// Relative residual of the binding-energy quadratic at the converged
    /// level.
    pub residual_53: T,
    pub converged: bool,
}

impl<T: Float> SpectrumLevel<T> {
    /// Binding energy `|E'| = m0 - E_n` in MeV.
    pub fn binding_energy(&self) -> T {
        -self.eprime
    }
}

/// Zeroth-order shift: `sigma = l + 1/2 - sqrt((l+1/2)^2 - (Z alpha)^2)`,
/// evaluated in the cancellation-free form
/// `(Z alpha)^2 / (l + 1/2 + sqrt(...))`.
///
/// Fails for supercritical coupling `Z alpha >= l + 1/2` (for s states this
/// is `Z alpha >= 1/2`), where the radicand is no longer positive.
pub fn sigma_l_zeroth<T: Float>(l: u32, zalpha: T) -> Result<T> {
    let c = int::<T>(l) + lit(0.5);
    let za2 = zalpha * zalpha;
    let radicand = c * c - za2;
    if radicand <= T::zero() {
        return Err(Error::SupercriticalCoupling {
            l,
            zalpha: zalpha.to_f64().unwrap_or(f64::NAN),
            critical: c.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(za2 / (c + radicand.sqrt()))
}

/// Normal-branch energy at a given `beta`:
/// `E = sqrt(m01^2 + 2 m01 m02 (1 + Z^2 a^2/beta^2)^(-1/2) + m02^2)`.
pub fn energy_normal<T: Float>(m01: T, m02: T, zalpha: T, beta: T) -> T {
    let x = (zalpha / beta) * (zalpha / beta);
    let m0 = m01 + m02;
    // m0^2 - 2 m01 m02 (1 - k) avoids forming the near-cancelling sum.
    (m0 * m0 - lit::<T>(2.0) * m01 * m02 * one_minus_inv_sqrt1p(x)).sqrt()
}

/// Abnormal-branch energy at a given `beta`:
/// `E = sqrt(m01^2 - 2 m01 m02 (1 + Z^2 a^2/beta^2)^(-1/2) + m02^2)`.
///
/// The radicand equals `(m01 - m02)^2 + 2 m01 m02 (1 - k)`, a sum of
/// non-negative terms; it is asserted non-negative rather than assumed.
pub fn energy_abnormal<T: Float>(m01: T, m02: T, zalpha: T, beta: T) -> T {
    let x = (zalpha / beta) * (zalpha / beta);
    let dm = m01 - m02;
    let radicand = dm * dm + lit::<T>(2.0) * m01 * m02 * one_minus_inv_sqrt1p(x);
    assert!(
        radicand >= T::zero(),
        "abnormal radicand must be non-negative"
    );
    radicand.sqrt()
}

/// Binding energy from the converged pair `(mu, mu0)`:
/// `|E'| = Z^2 a^2 mu^2 / ((mu0 + mu) beta^2)`.
pub fn binding_from_beta<T: Float>(mu: T, mu0: T, zalpha: T, beta: T) -> Result<T> {
    let denom = (mu0 + mu) * beta * beta;
    if denom == T::zero() {
        return Err(Error::DivisionByZero {
            context: "binding_from_beta: (mu0 + mu) beta^2",
        });
    }
    Ok(zalpha * zalpha * mu * mu / denom)
}

/// Relative residual of the binding-energy quadratic
/// `(Z^2 a^2 + beta^2)|E'|^2 - 2 mu0 (Z^2 a^2 + beta^2)|E'| + mu0^2 Z^2 a^2 = 0`,
/// normalized by `mu0^2 Z^2 a^2`.
///
/// Evaluated as `s |E'| (|E'| - 2 mu0) + mu0^2 Z^2 a^2`; near the larger
/// root the subtraction `|E'| - 2 mu0` is exact (Sterbenz), so the residual
/// keeps full precision at both roots.
pub fn residual_quadratic_53<T: Float>(eabs: T, mu0: T, zalpha: T, beta: T) -> T {
    let za2 = zalpha * zalpha;
    let s = za2 + beta * beta;
    let norm = mu0 * mu0 * za2;
    (s * eabs * (eabs - lit::<T>(2.0) * mu0) + norm) / norm
}

/// Every intermediate of one sigma evaluation.
#[derive(Debug, Clone, Copy)]
struct LevelState<T> {
    beta: T,
    m: T,
    eprime: T,
    mu0: T,
    mu: T,
    d_factor: T,
    d0: T,
    /// Closure residual of the binding-energy quadratic, evaluated from the
    /// exact-algebra intermediates: on both branches
    /// `|E'| (|E'| - 2 mu0) = -mu0^2 (1 - k)(1 + k)`, so the residual
    /// reduces to `(Z^2 a^2 - (Z^2 a^2 + beta^2)(1 - k)(1 + k)) / Z^2 a^2`.
    /// The stored `|E'|` and `mu0` alone cannot express this below their
    /// own rounding on the abnormal branch, where `|E'| ~ 2 mu0`.
    residual_53: T,
}

fn eval_state<T: Float>(
    system: &TwoBodySystem<T>,
    qn: QuantumNumbers,
    branch: Branch,
    policy: AbnormalD0Policy,
    sigma: T,
    iteration: usize,
) -> Result<LevelState<T>> {
    let beta = int::<T>(qn.n()) - sigma;
    if !(beta > T::zero()) {
        return Err(Error::NonPositiveBeta {
            iteration,
            beta: beta.to_f64().unwrap_or(f64::NAN),
        });
    }
    let (m01, m02) = (system.m01(), system.m02());
    let m0 = system.m0();
    let zalpha = system.z_alpha();
    let x = (zalpha / beta) * (zalpha / beta);
    let k = inv_sqrt1p(x);
    let omk = one_minus_inv_sqrt1p(x);
    let two = lit::<T>(2.0);

    let (m, binding, mu_sign) = match branch {
        Branch::Normal => {
            let m = (m0 * m0 - two * m01 * m02 * omk).sqrt();
            // |E'| = (m0^2 - m^2)/(m0 + m) = 2 m01 m02 (1 - k)/(m0 + m)
            let binding = two * m01 * m02 * omk / (m0 + m);
            (m, binding, T::one())
        }
        Branch::Abnormal => {
            let m = energy_abnormal(m01, m02, zalpha, beta);
            // |E'| = 2 m01 m02 (1 + k)/(m0 + m)
            let binding = two * m01 * m02 * (two - omk) / (m0 + m);
            (m, binding, -T::one())
        }
    };
    let mu0 = two * m01 * m02 / (m0 + m);
    let mu = mu_sign * mu0 * k;
    let d_factor = mu * (m0 + m) / (two * m * m);
    let d0 = match (branch, policy) {
        (Branch::Abnormal, AbnormalD0Policy::FreezeZero) => T::zero(),
        _ => two * zalpha * zalpha * d_factor,
    };
    let za2 = zalpha * zalpha;
    let residual_53 = if za2 == T::zero() {
        T::zero()
    } else {
        (za2 - (za2 + beta * beta) * omk * (T::one() + k)) / za2
    };
    Ok(LevelState {
        beta,
        m,
        eprime: -binding,
        mu0,
        mu,
        d_factor,
        d0,
        residual_53,
    })
}

/// One application of the sigma map: evaluate all intermediates at `sigma`
/// and return the updated shift. Exposed for consistency diagnostics.
pub fn sigma_step<T: Float>(
    system: &TwoBodySystem<T>,
    qn: QuantumNumbers,
    branch: Branch,
    policy: AbnormalD0Policy,
    sigma: T,
) -> Result<T> {
    let state = eval_state(system, qn, branch, policy, sigma, 0)?;
    sigma_from_state(system, qn.l(), &state, 0)
}

/// The implicit shift relation at fixed `d0` and `beta`:
/// `sigma = l + 1/2 + d0/(2 beta) - sqrt((l+1/2)^2 - Z^2 a^2 + 3 d0/2 - d0/beta)`,
/// with the difference of the outer terms taken in quotient form to
/// preserve precision.
pub(crate) fn sigma_relation<T: Float>(
    l: u32,
    zalpha: T,
    d0: T,
    beta: T,
    iteration: usize,
) -> Result<T> {
    let za2 = zalpha * zalpha;
    let c = int::<T>(l) + lit(0.5);
    let shift = lit::<T>(1.5) * d0 - d0 / beta;
    let radicand = c * c - za2 + shift;
    if radicand < T::zero() {
        return Err(Error::NegativeRadicand {
            iteration,
            radicand: radicand.to_f64().unwrap_or(f64::NAN),
            sigma: f64::NAN,
        });
    }
    Ok((za2 - shift) / (c + radicand.sqrt()) + lit::<T>(0.5) * d0 / beta)
}

fn sigma_from_state<T: Float>(
    system: &TwoBodySystem<T>,
    l: u32,
    state: &LevelState<T>,
    iteration: usize,
) -> Result<T> {
    sigma_relation(l, system.z_alpha(), state.d0, state.beta, iteration)
}

/// Solve one level by fixed-point iteration on `sigma_l`.
pub fn solve_level<T: Float>(
    system: &TwoBodySystem<T>,
    qn: QuantumNumbers,
    branch: Branch,
    config: &SolverConfig<T>,
) -> Result<SpectrumLevel<T>> {
    config.validate()?;
    let zalpha = system.z_alpha();
    let mut sigma = if zalpha == T::zero() {
        T::zero()
    } else {
        sigma_l_zeroth(qn.l(), zalpha)?
    };

    let mut iterations = 0;
    let mut converged = false;
    let mut last_delta = T::infinity();
    while iterations < config.max_iter {
        let state = eval_state(system, qn, branch, config.abnormal_d0, sigma, iterations)?;
        let sigma_next = match sigma_from_state(system, qn.l(), &state, iterations) {
            Ok(s) => s,
            Err(Error::NegativeRadicand {
                iteration,
                radicand,
                ..
            }) => {
                return Err(Error::NegativeRadicand {
                    iteration,
                    radicand,
                    sigma: sigma.to_f64().unwrap_or(f64::NAN),
                })
            }
            Err(e) => return Err(e),
        };
        iterations += 1;
        last_delta = (sigma_next - sigma).abs();
        if last_delta <= config.rel_tol * T::one().max(sigma.abs()) {
            sigma = sigma_next;
            converged = true;
            break;
        }
        sigma = sigma + config.damping * (sigma_next - sigma);
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations,
            last_delta: last_delta.to_f64().unwrap_or(f64::NAN),
        });
    }

    // Recompute every field from the converged sigma so the record closes
    // on itself.
    let state = eval_state(system, qn, branch, config.abnormal_d0, sigma, iterations)?;
    Ok(SpectrumLevel {
        qn,
        branch,
        sigma_l: sigma,
        beta: state.beta,
        d0: state.d0,
        d_factor: state.d_factor,
        mu0: state.mu0,
        mu: state.mu,
        m: state.m,
        energy: state.m,
        eprime: state.eprime,
        iterations,
        residual_53: state.residual_53,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const ALPHA: f64 = 0.0072973525693;
    const M_PI: f64 = 139.57039;
    const M_E: f64 = 0.51099895;
    const M_P: f64 = 938.27208816;

    fn pionium() -> TwoBodySystem<f64> {
        TwoBodySystem::new(M_PI, M_PI, 1, ALPHA).unwrap()
    }

    fn hydrogen() -> TwoBodySystem<f64> {
        TwoBodySystem::new(M_E, M_P, 1, ALPHA).unwrap()
    }

    fn qn(n: u32, l: u32) -> QuantumNumbers {
        QuantumNumbers::new(n, l).unwrap()
    }

    /// Non-relativistic Bohr binding, the independent oracle for ground
    /// states: `mu' Z^2 alpha^2 / (2 n^2)` with the classic reduced mass.
    fn bohr_oracle(m01: f64, m02: f64, zalpha: f64, n: u32) -> f64 {
        let mu = m01 * m02 / (m01 + m02);
        mu * zalpha * zalpha / (2.0 * (n as f64) * (n as f64))
    }

    #[test]
    fn quantum_numbers_validate() {
        assert!(QuantumNumbers::new(0, 0).is_err());
        assert!(QuantumNumbers::new(1, 1).is_err());
        assert_eq!(qn(3, 1).n_r(), 1);
    }

    #[test]
    fn sigma_zeroth_quadratic_residual_oracle() {
        // sigma solves sigma^2 - 2 c sigma + (Z alpha)^2 = 0 exactly; check
        // the residual instead of re-deriving the root.
        for l in 0..4u32 {
            for &zalpha in &[1e-4, ALPHA, 0.1, 0.4] {
                let sigma = sigma_l_zeroth::<f64>(l, zalpha).unwrap();
                let c = l as f64 + 0.5;
                let residual = sigma * sigma - 2.0 * c * sigma + zalpha * zalpha;
                assert!(
                    residual.abs() <= 1e-12 * zalpha * zalpha,
                    "l={l} zalpha={zalpha}: residual {residual}"
                );
            }
        }
    }

    #[test]
    fn sigma_zeroth_reference_value() {
        // Frozen from the closed form at Z alpha = 1/137.035999.
        let sigma = sigma_l_zeroth::<f64>(0, 1.0 / 137.035999).unwrap();
        assert_relative_eq!(sigma, 5.3257e-5, max_relative = 1e-4);
    }

    #[test]
    fn sigma_zeroth_free_limit_is_exact() {
        for l in 0..5u32 {
            assert_eq!(sigma_l_zeroth::<f64>(l, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn sigma_zeroth_supercritical() {
        assert!(matches!(
            sigma_l_zeroth::<f64>(0, 0.51),
            Err(Error::SupercriticalCoupling { l: 0, .. })
        ));
        // Boundary is inclusive.
        assert!(sigma_l_zeroth::<f64>(0, 0.5).is_err());
        assert!(sigma_l_zeroth::<f64>(0, 0.4999).is_ok());
        // Higher l survives couplings that kill s states.
        assert!(sigma_l_zeroth::<f64>(1, 0.51).is_ok());
    }

    #[test]
    fn energy_free_limits() {
        assert_relative_eq!(
            energy_normal(2.0, 5.0, 0.0, 1.0),
            7.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            energy_abnormal(2.0, 5.0, 0.0, 1.0),
            3.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn abnormal_equal_masses_vanishes_at_large_n() {
        let e100 = energy_abnormal(M_PI, M_PI, ALPHA, 100.0);
        let e1000 = energy_abnormal(M_PI, M_PI, ALPHA, 1000.0);
        assert!(e1000 < e100);
        assert!(e1000 < 1.5e-3);
        assert!(e1000 > 0.0);
    }

    #[test]
    fn pionium_ground_state_binding_matches_bohr() {
        let level = solve_level(&pionium(), qn(1, 0), Branch::Normal, &SolverConfig::default())
            .unwrap();
        let oracle = bohr_oracle(M_PI, M_PI, ALPHA, 1);
        // Bohr is the leading order; agreement to O(alpha^2) relative.
        assert_relative_eq!(level.binding_energy(), oracle, max_relative = 1e-3);
        // ~1.858 keV
        assert_relative_eq!(level.binding_energy(), 1.858e-3, max_relative = 1e-3);
        assert!(level.converged);
        assert!(level.iterations <= 10);
    }

    #[test]
    fn hydrogen_ground_state_binding_matches_bohr() {
        let level = solve_level(&hydrogen(), qn(1, 0), Branch::Normal, &SolverConfig::default())
            .unwrap();
        let oracle = bohr_oracle(M_E, M_P, ALPHA, 1);
        assert_relative_eq!(level.binding_energy(), oracle, max_relative = 1e-4);
        // ~13.598 eV
        assert_relative_eq!(level.binding_energy(), 13.598e-6, max_relative = 1e-3);
    }

    #[test]
    fn zero_coupling_collapses_to_rest_mass() {
        let sys = TwoBodySystem::<f64>::with_zero_coupling(3.0, 4.0, 1).unwrap();
        for n in 1..=5 {
            let level =
                solve_level(&sys, qn(n, 0), Branch::Normal, &SolverConfig::default()).unwrap();
            assert!((level.energy - 7.0).abs() <= 1e-14 * 7.0);
            assert_eq!(level.sigma_l, 0.0);
            assert_eq!(level.binding_energy().abs(), 0.0);
        }
    }

    #[test]
    fn residual_53_vanishes_at_converged_levels() {
        for (sys, label) in [(pionium(), "pionium"), (hydrogen(), "hydrogen")] {
            let level =
                solve_level(&sys, qn(1, 0), Branch::Normal, &SolverConfig::default()).unwrap();
            assert!(
                level.residual_53.abs() <= 1e-10,
                "{label}: residual {}",
                level.residual_53
            );
        }
    }

    #[test]
    fn residual_53_detects_perturbed_binding() {
        let level = solve_level(&pionium(), qn(1, 0), Branch::Normal, &SolverConfig::default())
            .unwrap();
        let zalpha = pionium().z_alpha();
        let perturbed = residual_quadratic_53(
            level.binding_energy() * 1.01,
            level.mu0,
            zalpha,
            level.beta,
        );
        assert!(perturbed.abs() > 1e-3, "residual {perturbed}");
    }

    #[test]
    fn residual_53_accepts_both_quadratic_roots() {
        // Oracle: the explicit quadratic formula for
        // (za^2 + b^2) e^2 - 2 mu0 (za^2 + b^2) e + mu0^2 za^2 = 0, at a
        // moderate coupling where the roots themselves carry enough
        // precision for the 1e-12 bound.
        // Stable variant: q = -b/2 + sqrt(disc)/2 with e_large = q/a and
        // e_small = c/q, so neither root loses digits to cancellation.
        let stable_roots = |mu0: f64, zalpha: f64, beta: f64| -> (f64, f64) {
            let s = zalpha * zalpha + beta * beta;
            let q = mu0 * s + mu0 * beta * s.sqrt();
            (mu0 * mu0 * zalpha * zalpha / q, q / s)
        };

        let (small, large) = stable_roots(1.0, 0.4, 1.0);
        for root in [small, large] {
            let r = residual_quadratic_53(root, 1.0, 0.4, 1.0);
            assert!(r.abs() <= 1e-12, "root {root}: residual {r}");
        }
        // At MeV scale the larger root's own representation limits its
        // residual to the few-1e-11 level; the smaller (physical binding)
        // root keeps full precision.
        let (small, large) = stable_roots(69.7856, ALPHA, 0.99994674);
        assert!(residual_quadratic_53(small, 69.7856, ALPHA, 0.99994674).abs() <= 1e-12);
        assert!(residual_quadratic_53(large, 69.7856, ALPHA, 0.99994674).abs() <= 1e-10);
    }

    #[test]
    fn binding_from_beta_closes_on_converged_level() {
        let level = solve_level(&hydrogen(), qn(1, 0), Branch::Normal, &SolverConfig::default())
            .unwrap();
        let zalpha = hydrogen().z_alpha();
        let via_beta = binding_from_beta(level.mu, level.mu0, zalpha, level.beta).unwrap();
        assert_relative_eq!(via_beta, level.binding_energy(), max_relative = 1e-10);
        assert_relative_eq!(via_beta, 13.598e-6, max_relative = 1e-3);
    }

    #[test]
    fn binding_from_beta_free_limit() {
        let mu0 = 0.5;
        let b = binding_from_beta(mu0, mu0, ALPHA, 1e9).unwrap();
        assert!(b < 1e-20);
        assert!(matches!(
            binding_from_beta(-1.0, 1.0, ALPHA, 1.0),
            Err(Error::DivisionByZero { .. })
        ));
    }

    #[test]
    fn abnormal_branch_freeze_zero_converges() {
        let level = solve_level(
            &pionium(),
            qn(1, 0),
            Branch::Abnormal,
            &SolverConfig::default(),
        )
        .unwrap();
        assert!(level.converged);
        assert!(level.mu < 0.0);
        assert_eq!(level.d0, 0.0);
        assert!(level.energy > 0.0 && level.energy < 2.0);
        // E ~ alpha m_pi for n = 1.
        assert_relative_eq!(level.energy, ALPHA * M_PI, max_relative = 1e-2);
        // The accounting still closes: m = m0 + E'.
        assert_relative_eq!(
            level.m,
            pionium().m0() + level.eprime,
            max_relative = 1e-12
        );
    }

    #[test]
    fn abnormal_full_iteration_reports_negative_radicand() {
        let config = SolverConfig {
            abnormal_d0: AbnormalD0Policy::FullIteration,
            ..SolverConfig::default()
        };
        let err = solve_level(&pionium(), qn(1, 0), Branch::Abnormal, &config).unwrap_err();
        assert!(matches!(err, Error::NegativeRadicand { .. }), "{err}");
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let config = SolverConfig {
            max_iter: 1,
            ..SolverConfig::default()
        };
        let err = solve_level(&pionium(), qn(1, 0), Branch::Normal, &config).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { iterations: 1, .. }), "{err}");
    }

    #[test]
    fn solver_rejects_bad_config() {
        let config = SolverConfig::<f64> {
            rel_tol: 0.0,
            ..SolverConfig::default()
        };
        assert!(solve_level(&pionium(), qn(1, 0), Branch::Normal, &config).is_err());
        let config = SolverConfig::<f64> {
            damping: 1.5,
            ..SolverConfig::default()
        };
        assert!(solve_level(&pionium(), qn(1, 0), Branch::Normal, &config).is_err());
    }

    #[test]
    fn supercritical_system_fails_for_s_states() {
        let sys = TwoBodySystem::new(M_E, 193729.025, 69, ALPHA).unwrap();
        let err =
            solve_level(&sys, qn(1, 0), Branch::Normal, &SolverConfig::default()).unwrap_err();
        assert!(matches!(err, Error::SupercriticalCoupling { l: 0, .. }));
        let sys68 = TwoBodySystem::new(M_E, 193729.025, 68, ALPHA).unwrap();
        assert!(solve_level(&sys68, qn(1, 0), Branch::Normal, &SolverConfig::default()).is_ok());
    }

    #[test]
    fn solver_is_generic_over_f32() {
        let sys = TwoBodySystem::<f32>::new(139.57039, 139.57039, 1, 0.007297353).unwrap();
        let config = SolverConfig {
            rel_tol: 1e-6f32,
            ..SolverConfig::default()
        };
        let level = solve_level(&sys, qn(1, 0), Branch::Normal, &config).unwrap();
        let rel = (level.binding_energy() - 1.858e-3).abs() / 1.858e-3;
        assert!(rel < 1e-2, "f32 binding off by {rel}");
    }

    #[test]
    fn sigma_step_is_stationary_at_convergence() {
        let level = solve_level(&pionium(), qn(2, 1), Branch::Normal, &SolverConfig::default())
            .unwrap();
        let next = sigma_step(
            &pionium(),
            level.qn,
            level.branch,
            AbnormalD0Policy::FreezeZero,
            level.sigma_l,
        )
        .unwrap();
        assert!((next - level.sigma_l).abs() <= 1e-16 * level.sigma_l.abs().max(1e-30));
    }
}
