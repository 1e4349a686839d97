//! Mass accounting for a two-particle system.
//!
//! System mass `m = m0 + E'`, mass defect, binding energy, the two reduced
//! mass notions and the pointwise Salpeter dispersion. Everything here is
//! pure arithmetic over the MeV convention; no iteration lives in this
//! module.

use crate::error::{Error, Result};
use crate::float::{lit, Float};

/// The physical problem: two rest masses bound by a Coulomb coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBodySystem<T> {
    m01: T,
    m02: T,
    z: u32,
    alpha: T,
}

impl<T: Float> TwoBodySystem<T> {
    pub fn new(m01: T, m02: T, z: u32, alpha: T) -> Result<Self> {
        if !(m01 > T::zero()) || !(m02 > T::zero()) {
            return Err(Error::InvalidSystem {
                message: format!(
                    "rest masses must be positive, got m01={:?}, m02={:?}",
                    m01, m02
                ),
            });
        }
        if z == 0 {
            return Err(Error::InvalidSystem {
                message: "charge number Z must be >= 1".into(),
            });
        }
        if !(alpha > T::zero()) {
            return Err(Error::InvalidSystem {
                message: format!("coupling alpha must be positive, got {:?}", alpha),
            });
        }
        Ok(Self { m01, m02, z, alpha })
    }

    /// Same validation but with the coupling allowed to be zero, for
    /// free-limit checks.
    pub fn with_zero_coupling(m01: T, m02: T, z: u32) -> Result<Self> {
        let mut sys = Self::new(m01, m02, z, T::min_positive_value())?;
        sys.alpha = T::zero();
        Ok(sys)
    }

    pub fn m01(&self) -> T {
        self.m01
    }

    pub fn m02(&self) -> T {
        self.m02
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Total rest mass `m0 = m01 + m02`.
    pub fn m0(&self) -> T {
        self.m01 + self.m02
    }

    /// Effective coupling `Z * alpha`.
    pub fn z_alpha(&self) -> T {
        crate::float::int::<T>(self.z) * self.alpha
    }

    /// Light-to-heavy mass ratio, in (0, 1].
    pub fn mass_ratio(&self) -> T {
        if self.m01 <= self.m02 {
            self.m01 / self.m02
        } else {
            self.m02 / self.m01
        }
    }

    /// Mass bookkeeping for a given `E'`. Pure arithmetic; for deep abnormal
    /// levels `m` may approach zero, see [`MassAccounting::is_physical`].
    pub fn system_mass(&self, eprime: T) -> MassAccounting<T> {
        let m0 = self.m0();
        let m = m0 + eprime;
        MassAccounting {
            m0,
            eprime,
            m,
            delta_m: -eprime,
            energy: m,
        }
    }

    /// The relativistic reduced mass `mu0 = 2 m01 m02 / (m0 + m)` and its
    /// system mass `mu = mu0 + E'`, for a consistent `(m, E')` pair.
    pub fn reduced_masses(&self, m: T, eprime: T) -> Result<ReducedMasses<T>> {
        let denom = self.m0() + m;
        if denom == T::zero() {
            return Err(Error::DivisionByZero {
                context: "reduced_masses: m0 + m",
            });
        }
        let mu0 = lit::<T>(2.0) * self.m01 * self.m02 / denom;
        Ok(ReducedMasses {
            mu0,
            mu: mu0 + eprime,
        })
    }

    /// Relative residuals of the three reduced-mass identities, evaluated
    /// with the [`ReducedMasses`] built from `(m, E')`. The pair must satisfy
    /// `m = m0 + E'` to 1e-12 relative.
    pub fn identity_residuals(&self, m: T, eprime: T) -> Result<[T; 3]> {
        let m0 = self.m0();
        let expected = m0 + eprime;
        let scale = m0.max(m.abs()).max(T::min_positive_value());
        let gap = ((m - expected) / scale).abs();
        if gap > lit(1e-12) {
            return Err(Error::InconsistentMassPair {
                m: m.to_f64().unwrap_or(f64::NAN),
                expected: expected.to_f64().unwrap_or(f64::NAN),
                relative_gap: gap.to_f64().unwrap_or(f64::NAN),
            });
        }
        let ReducedMasses { mu0, mu } = self.reduced_masses(m, eprime)?;
        let two = lit::<T>(2.0);
        let four = lit::<T>(4.0);
        let msum = m0 + m;
        let mm = self.m01 * self.m02;
        // Relative residual of lhs = rhs against the larger side, so the
        // check stays meaningful whatever the binding regime.
        let rel = |lhs: T, rhs: T, floor: T| {
            (lhs - rhs) / lhs.abs().max(rhs.abs()).max(floor.abs())
        };

        // (m01 mu + m02 mu0)/m01 + (m02 mu + m01 mu0)/m02 = 2 m^2/(m0 + m)
        let lhs20 = (self.m01 * mu + self.m02 * mu0) / self.m01
            + (self.m02 * mu + self.m01 * mu0) / self.m02;
        let rhs20 = two * m * m / msum;
        let r20 = rel(lhs20, rhs20, two * mm / msum);

        // (m0 + m) E' + 2 m01 m02 = (m0 + m) mu
        let lhs21 = msum * eprime + two * mm;
        let rhs21 = msum * mu;
        let r21 = rel(lhs21, rhs21, two * mm);

        // ((m0 + m) E' + 2 m01 m02)^2 = (m0 + m)^2 (mu0 + mu) E' + 4 m01^2 m02^2
        let lhs22 = lhs21 * lhs21;
        let rhs22 = msum * msum * (mu0 + mu) * eprime + four * mm * mm;
        let r22 = rel(lhs22, rhs22, four * mm * mm);

        Ok([r20, r21, r22])
    }

    /// Pointwise Salpeter dispersion:
    /// `E' = sqrt(p1^2 + m01^2) - m01 + sqrt(p2^2 + m02^2) - m02 + U`.
    pub fn salpeter_dispersion(&self, p1: T, p2: T, potential: T) -> T {
        let kinetic = |p: T, m: T| (p * p + m * m).sqrt() - m;
        kinetic(p1, self.m01) + kinetic(p2, self.m02) + potential
    }
}

/// A consistent `(m0, E', m)` record in MeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassAccounting<T> {
    /// Total rest mass.
    pub m0: T,
    /// Kinetic-plus-potential sum; negative for bound states.
    pub eprime: T,
    /// System mass `m = m0 + E'`.
    pub m: T,
    /// Mass defect `m0 - m`; positive for bound states.
    pub delta_m: T,
    /// Total energy; numerically equal to `m` in the MeV convention.
    pub energy: T,
}

impl<T: Float> MassAccounting<T> {
    /// Whether the system mass is positive. Deep abnormal levels approach
    /// `m -> 0`; the accounting stays exact either way.
    pub fn is_physical(&self) -> bool {
        self.m > T::zero()
    }

    /// Binding energy `|E'|`; meaningful for bound states (`E' < 0`).
    pub fn binding_energy(&self) -> T {
        self.eprime.abs()
    }
}

/// Definition-6 reduced mass and its system mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedMasses<T> {
    pub mu0: T,
    pub mu: T,
}

/// Speed-type reduced mass for collinear motion, speeds in units of c:
/// `mu = m1 m2/(m1 + m2) (1 + v1 v2)` with `m_i` the relativistic masses.
pub fn speed_type_reduced_mass<T: Float>(m01: T, m02: T, v1: T, v2: T) -> Result<T> {
    let gamma_mass = |m0: T, v: T| -> Result<T> {
        if v.abs() >= T::one() {
            return Err(Error::SpeedNotSubluminal {
                speed: v.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(m0 / (T::one() - v * v).sqrt())
    };
    let m1 = gamma_mass(m01, v1)?;
    let m2 = gamma_mass(m02, v2)?;
    Ok(m1 * m2 / (m1 + m2) * (T::one() + v1 * v2))
}
