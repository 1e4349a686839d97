//! Frobenius-series radial wavefunctions.
//!
//! The radial solution is `R(rho) = rho^(-1) e^(-rho/2) f(rho)` with
//! `f = sum_nu b_nu rho^(s+nu)`. The exponent `s` solves the indicial
//! relation, the coefficients follow a one-term recurrence, and for a
//! converged level the series terminates after `n_r + 1` terms; this is the
//! quantization condition `beta + d0/(2 beta) = n_r + s`.
//!
//! Only `s > 1/2` is required of the exponent (sufficient for the origin
//! integrability of `|R|^2 r^2`); for s states with any positive coupling
//! the physical root lies slightly below 1.

use crate::error::{Error, Result};
use crate::float::{int, lit, Float};
use crate::spectrum::SpectrumLevel;
use crate::two_body::TwoBodySystem;

/// The map between physical radius and the dimensionless radial variable,
/// `rho = alpha' r = 2 Z r / (beta a0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialScale<T> {
    alpha_prime: T,
    a0: T,
    beta: T,
    z: u32,
}

impl<T: Float> RadialScale<T> {
    /// Build the scale from a converged bound level. Defined for `mu > 0`
    /// (normal branch) and `E' < 0`.
    pub fn from_level(
        system: &TwoBodySystem<T>,
        level: &SpectrumLevel<T>,
        hbar_c: T,
    ) -> Result<Self> {
        if !(level.eprime < T::zero()) {
            return Err(Error::UnboundLevel {
                eprime: level.eprime.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !(level.mu > T::zero()) {
            return Err(Error::NonPositiveMu {
                mu: level.mu.to_f64().unwrap_or(f64::NAN),
            });
        }
        let m0 = system.m0();
        let m = level.m;
        let two = lit::<T>(2.0);
        // alpha' = (m0 + m)/m * sqrt((mu0 + mu)|E'|), converted to fm^-1.
        let alpha_prime =
            (m0 + m) / m * ((level.mu0 + level.mu) * -level.eprime).sqrt() / hbar_c;
        // a0 = 2m/(m0 + m) * hbar_c / (mu alpha), in fm.
        let a0 = two * m / (m0 + m) * hbar_c / (level.mu * system.alpha());
        Ok(Self {
            alpha_prime,
            a0,
            beta: level.beta,
            z: system.z(),
        })
    }

    /// Inverse length scale `alpha'` in fm^-1.
    pub fn alpha_prime(&self) -> T {
        self.alpha_prime
    }

    /// Length scale `a0` in fm.
    pub fn a0(&self) -> T {
        self.a0
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// Map a radius in fm to the dimensionless variable.
    pub fn rho(&self, r_fm: T) -> T {
        self.alpha_prime * r_fm
    }

    /// Relative gap between the two equivalent expressions for the scale,
    /// `alpha'` and `2Z/(beta a0)`. A nontrivial consistency check of the
    /// alpha'-a0-beta algebra; at a converged level it sits at rounding
    /// level.
    pub fn scale_residual(&self) -> T {
        let alt = lit::<T>(2.0) * int::<T>(self.z) / (self.beta * self.a0);
        (self.alpha_prime - alt) / self.alpha_prime
    }
}

/// Frobenius exponent and polynomial coefficients of the radial series,
/// `b0 = 1` convention.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution<T> {
    s: T,
    coeffs: Vec<T>,
    beta: T,
    d0: T,
    zalpha: T,
    l: u32,
}

/// Positive root of `s(s-1) = l(l+1) - Z^2 a^2 + 3 d0/2 - d0/beta`:
/// `s = 1/2 + sqrt((l+1/2)^2 - Z^2 a^2 + 3 d0/2 - d0/beta)`.
pub fn exponent_s<T: Float>(l: u32, zalpha: T, d0: T, beta: T) -> Result<T> {
    let c = int::<T>(l) + lit(0.5);
    let radicand = c * c - zalpha * zalpha + lit::<T>(1.5) * d0 - d0 / beta;
    if radicand < T::zero() {
        return Err(Error::SupercriticalCoupling {
            l,
            zalpha: zalpha.to_f64().unwrap_or(f64::NAN),
            critical: c.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(lit::<T>(0.5) + radicand.sqrt())
}

/// Recurrence numerator/denominator parameters shared with the shooting
/// verifier: `b_{nu+1} = (s + nu - B) / ((s+nu)(s+nu+1) + C) b_nu`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Recurrence<T> {
    pub s: T,
    /// `B = beta + d0/(2 beta)`.
    pub big_b: T,
    /// `C = Z^2 a^2 - l(l+1) - 3 d0/2 + d0/beta`.
    pub big_c: T,
}

impl<T: Float> Recurrence<T> {
    pub fn new(s: T, beta: T, d0: T, zalpha: T, l: u32) -> Self {
        let ell = int::<T>(l);
        Self {
            s,
            big_b: beta + d0 / (lit::<T>(2.0) * beta),
            big_c: zalpha * zalpha - ell * (ell + T::one()) - lit::<T>(1.5) * d0 + d0 / beta,
        }
    }

    pub fn ratio(&self, nu: usize) -> Result<T> {
        let nu_t = T::from_usize(nu).expect("index representable");
        let sv = self.s + nu_t;
        let denominator = sv * (sv + T::one()) + self.big_c;
        if denominator == T::zero() {
            return Err(Error::DegenerateRecurrence {
                nu,
                denominator: denominator.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok((sv - self.big_b) / denominator)
    }

    /// Evaluate the (possibly non-terminating) series and its derivative at
    /// `rho`, summing until the terms fall below rounding.
    pub fn eval_with_derivative(&self, rho: T, max_terms: usize) -> Result<(T, T)> {
        let mut poly = T::one(); // sum b_nu rho^nu
        let mut dpoly = T::zero(); // sum nu b_nu rho^(nu-1)
        let mut coeff = T::one();
        let mut power = T::one();
        let mut small_streak = 0;
        for nu in 0..max_terms {
            coeff = coeff * self.ratio(nu)?;
            power = power * rho;
            let term = coeff * power;
            poly = poly + term;
            let nu1 = T::from_usize(nu + 1).expect("index representable");
            dpoly = dpoly + nu1 * coeff * power / rho;
            if term.abs() <= T::epsilon() * poly.abs() {
                small_streak += 1;
                if small_streak >= 3 {
                    break;
                }
            } else {
                small_streak = 0;
            }
        }
        // f = rho^s P, f' = rho^(s-1) (s P + rho P')
        let rho_s = rho.powf(self.s);
        let f = rho_s * poly;
        let fp = rho_s / rho * (self.s * poly + rho * dpoly);
        Ok((f, fp))
    }
}

/// Coefficients `b0..b_{n_r}` of the radial polynomial.
pub fn recurrence_coeffs<T: Float>(
    s: T,
    beta: T,
    d0: T,
    zalpha: T,
    l: u32,
    n_r: u32,
) -> Result<SeriesSolution<T>> {
    let rec = Recurrence::new(s, beta, d0, zalpha, l);
    let mut coeffs = Vec::with_capacity(n_r as usize + 1);
    coeffs.push(T::one());
    for nu in 0..n_r as usize {
        let next = *coeffs.last().unwrap() * rec.ratio(nu)?;
        coeffs.push(next);
    }
    Ok(SeriesSolution {
        s,
        coeffs,
        beta,
        d0,
        zalpha,
        l,
    })
}

impl<T: Float> SeriesSolution<T> {
    pub fn s(&self) -> T {
        self.s
    }

    /// `b0..b_{n_r}`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn n_r(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// The extrapolated coefficient `b_{n_r + 1}`. Vanishes (to rounding)
    /// exactly when the quantization condition holds.
    pub fn next_coeff(&self) -> Result<T> {
        let rec = Recurrence::new(self.s, self.beta, self.d0, self.zalpha, self.l);
        let nu = self.coeffs.len() - 1;
        Ok(*self.coeffs.last().unwrap() * rec.ratio(nu)?)
    }

    /// `|b_{n_r+1}| / max_nu |b_nu|`, the termination defect.
    pub fn termination_defect(&self) -> Result<T> {
        let next = self.next_coeff()?.abs();
        let max = self
            .coeffs
            .iter()
            .fold(T::zero(), |acc, b| acc.max(b.abs()));
        Ok(next / max)
    }

    /// The polynomial part `sum b_nu rho^nu` (Horner).
    fn poly(&self, rho: T) -> T {
        let mut acc = T::zero();
        for &b in self.coeffs.iter().rev() {
            acc = acc * rho + b;
        }
        acc
    }

    /// Full radial amplitude `R(rho) = e^(-rho/2) rho^(s-1) poly(rho)`,
    /// unnormalized.
    pub fn radial_amplitude(&self, rho: T) -> T {
        (-rho * lit::<T>(0.5)).exp() * rho.powf(self.s - T::one()) * self.poly(rho)
    }
}

/// Fraction of the normalization integral allowed past the end of the grid.
const TAIL_LIMIT: f64 = 1e-8;

/// Sample `R(r)` on a strictly increasing positive grid (fm) and normalize
/// so the trapezoid estimate of `integral |R|^2 r^2 dr` equals one.
///
/// Refuses grids whose exponential tail is not captured: the estimated
/// mass beyond `r_max` must stay below 1e-8 of the total.
pub fn radial_wavefunction<T: Float>(
    scale: &RadialScale<T>,
    series: &SeriesSolution<T>,
    r_grid: &[T],
) -> Result<Vec<T>> {
    if r_grid.len() < 2 || !(r_grid[0] > T::zero()) {
        return Err(Error::InvalidGrid);
    }
    if r_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid);
    }
    let mut samples: Vec<T> = r_grid
        .iter()
        .map(|&r| series.radial_amplitude(scale.rho(r)))
        .collect();

    // Trapezoid of g = |R|^2 r^2 over the grid.
    let g = |i: usize| samples[i] * samples[i] * r_grid[i] * r_grid[i];
    let mut total = T::zero();
    for i in 1..r_grid.len() {
        total = total + (g(i) + g(i - 1)) * (r_grid[i] - r_grid[i - 1]) * lit::<T>(0.5);
    }

    // Tail estimate: beyond r_max the integrand decays like e^(-alpha' r).
    let last = r_grid.len() - 1;
    let tail = g(last) / scale.alpha_prime();
    let tail_fraction = tail / (total + tail);
    let limit = lit::<T>(TAIL_LIMIT);
    if !(tail_fraction <= limit) || !total.is_finite() {
        let ap = scale.alpha_prime().to_f64().unwrap_or(f64::NAN);
        let r_max = r_grid[last].to_f64().unwrap_or(f64::NAN);
        let frac = tail_fraction.to_f64().unwrap_or(f64::NAN);
        // Decay length 1/alpha'; ask for enough extra e-foldings.
        let suggested = r_max + (frac / TAIL_LIMIT).max(1.0).ln() / ap + 5.0 / ap;
        return Err(Error::TailMass {
            tail_fraction: frac,
            limit: TAIL_LIMIT,
            suggested_r_max: suggested,
        });
    }

    let inv_norm = total.sqrt().recip();
    for v in &mut samples {
        *v = *v * inv_norm;
    }
    Ok(samples)
}

/// Number of strict sign changes, endpoints excluded. Exact zeros are
/// skipped rather than double-counted.
pub fn node_count<T: Float>(samples: &[T]) -> usize {
    if samples.len() < 3 {
        return 0;
    }
    let interior = &samples[1..samples.len() - 1];
    let mut count = 0;
    let mut last_sign = 0i8;
    for &v in interior {
        let sign = if v > T::zero() {
            1
        } else if v < T::zero() {
            -1
        } else {
            0
        };
        if sign != 0 {
            if last_sign != 0 && sign != last_sign {
                count += 1;
            }
            last_sign = sign;
        }
    }
    count
}
