//! Closed-form comparison spectra.
//!
//! Independent models that the solver is checked against: Connell's
//! two-particle fine-structure formula, the one-body Klein-Gordon Coulomb
//! spectrum (the heavy-partner limit), the non-relativistic Bohr binding,
//! the light-over-heavy series expansion of the normal levels, and the
//! abnormal particleium spectrum with its non-relativistic form.

use crate::error::{Error, Result};
use crate::float::{int, inv_sqrt1p, lit, one_minus_inv_sqrt1p, Float};
use crate::spectrum::SpectrumLevel;
use crate::two_body::TwoBodySystem;

/// One model-versus-solver comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow<T> {
    pub label: String,
    pub model_energy: T,
    pub solver_energy: T,
    /// `model_energy - solver_energy`, exactly as stored.
    pub gap: T,
    /// The order the gap scales as; reported, not asserted.
    pub gap_order: String,
}

/// Connell's two-particle fine-structure formula:
/// `E = sqrt(m^2 + M^2 + 2 m M / sqrt(1 + Z^2 a^2/(n + eps + 1)^2))`
/// with `n` the radial quantum number and `eps` a free input.
pub fn connell_energy<T: Float>(m: T, big_m: T, zalpha: T, n_radial: u32, epsilon: T) -> T {
    let denom = int::<T>(n_radial) + epsilon + T::one();
    let x = (zalpha / denom) * (zalpha / denom);
    let sum = m + big_m;
    (sum * sum - lit::<T>(2.0) * m * big_m * one_minus_inv_sqrt1p(x)).sqrt()
}

/// One-body Klein-Gordon Coulomb binding energy (positive):
/// `m01 (1 - (1 + Z^2 a^2/(n - delta_l)^2)^(-1/2))` with
/// `delta_l = l + 1/2 - sqrt((l+1/2)^2 - Z^2 a^2)`.
pub fn kg_one_body_binding<T: Float>(m01: T, zalpha: T, n: u32, l: u32) -> Result<T> {
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
    let delta = za2 / (c + radicand.sqrt());
    let denom = int::<T>(n) - delta;
    let x = (zalpha / denom) * (zalpha / denom);
    Ok(m01 * one_minus_inv_sqrt1p(x))
}

/// Non-relativistic Bohr binding `mu' Z^2 a^2 / (2 n^2)` for a classic
/// reduced mass `mu'`.
pub fn bohr_binding<T: Float>(mu_prime: T, zalpha: T, n: u32) -> T {
    let n_t = int::<T>(n);
    mu_prime * zalpha * zalpha / (lit::<T>(2.0) * n_t * n_t)
}

/// Partial sum of the light-over-heavy expansion of the normal energy
/// level, `num_terms` in 2..=4:
///
/// ```text
/// E = m_heavy
///   + m_light k
///   + (1/2) m_light (m_light/m_heavy)   x k^2
///   - (1/2) m_light (m_light/m_heavy)^2 x k^3 + ...
/// ```
///
/// with `x = Z^2 a^2 / beta^2` and `k = (1 + x)^(-1/2)`. Meaningful for
/// `m_light << m_heavy`; check [`TwoBodySystem::mass_ratio`] before
/// trusting a truncation.
pub fn pionic_hydrogen_series<T: Float>(
    system: &TwoBodySystem<T>,
    level: &SpectrumLevel<T>,
    num_terms: usize,
) -> Result<T> {
    if !(2..=4).contains(&num_terms) {
        return Err(Error::InvalidConfig {
            message: format!("series expansion supports 2..=4 terms, got {num_terms}"),
        });
    }
    let light = system.m01().min(system.m02());
    let heavy = system.m01().max(system.m02());
    let ratio = light / heavy;
    let zab = system.z_alpha() / level.beta;
    let x = zab * zab;
    let k = inv_sqrt1p(x);
    let half = lit::<T>(0.5);

    let mut sum = heavy + light * k;
    if num_terms >= 3 {
        sum = sum + half * light * ratio * x * k * k;
    }
    if num_terms >= 4 {
        sum = sum - half * light * ratio * ratio * x * k * k * k;
    }
    Ok(sum)
}

/// Abnormal energy levels of an equal-mass particle-antiparticle pair:
/// `E_n = sqrt(2) m sqrt(1 - (1 + a^2/(n - sigma_l)^2)^(-1/2))`.
pub fn abnormal_particleium_spectrum<T: Float>(m_particle: T, alpha: T, n: u32, sigma_l: T) -> T {
    let beta = int::<T>(n) - sigma_l;
    let x = (alpha / beta) * (alpha / beta);
    lit::<T>(2.0).sqrt() * m_particle * one_minus_inv_sqrt1p(x).sqrt()
}

/// Non-relativistic limit of the abnormal particleium spectrum: `a m / n`.
pub fn abnormal_nonrel<T: Float>(m_particle: T, alpha: T, n: u32) -> T {
    alpha * m_particle / int::<T>(n)
}

/// All reference-model comparisons for one converged normal-branch level.
pub fn compare_level<T: Float>(
    system: &TwoBodySystem<T>,
    level: &SpectrumLevel<T>,
) -> Result<Vec<ComparisonRow<T>>> {
    let zalpha = system.z_alpha();
    let (n, l) = (level.qn.n(), level.qn.l());
    let solver_energy = level.energy;
    let m0 = system.m0();
    let light = system.m01().min(system.m02());
    let mut rows = Vec::new();

    // eps = l - sigma_l maps the radial quantum number onto beta = n - sigma.
    let epsilon = int::<T>(l) - level.sigma_l;
    let connell = connell_energy(system.m01(), system.m02(), zalpha, level.qn.n_r(), epsilon);
    rows.push(ComparisonRow {
        label: "connell(eps=l-sigma_l)".into(),
        model_energy: connell,
        solver_energy,
        gap: connell - solver_energy,
        gap_order: "rounding (algebraic identity)".into(),
    });

    let mu_prime = system.m01() * system.m02() / m0;
    let bohr = m0 - bohr_binding(mu_prime, zalpha, n);
    rows.push(ComparisonRow {
        label: "bohr".into(),
        model_energy: bohr,
        solver_energy,
        gap: bohr - solver_energy,
        gap_order: "alpha^4 mu'".into(),
    });

    let kg = m0 - kg_one_body_binding(light, zalpha, n, l)?;
    rows.push(ComparisonRow {
        label: "kg-one-body".into(),
        model_energy: kg,
        solver_energy,
        gap: kg - solver_energy,
        gap_order: "(m_light/m_heavy) alpha^2 mu'".into(),
    });

    for terms in 2..=4 {
        let model = pionic_hydrogen_series(system, level, terms)?;
        rows.push(ComparisonRow {
            label: format!("light-over-heavy series ({terms} terms)"),
            model_energy: model,
            solver_energy,
            gap: model - solver_energy,
            gap_order: format!("(m_light/m_heavy)^{} m_light alpha^2", terms - 1),
        });
    }
    Ok(rows)
}
