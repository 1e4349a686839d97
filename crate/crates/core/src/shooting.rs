//! Independent eigenvalue verification by two-sided shooting.
//!
//! Recomputes `beta` numerically for the approximate radial equation and
//! for the full one, with `d0` held as a fixed external number: what is
//! being verified here is the beta-d0 closed form, not the outer
//! self-consistency loop.
//!
//! The equations are integrated in the `u = e^(-rho/2) f` form, where both
//! boundary behaviors are explicit: `u ~ rho^s` at the origin and
//! `u ~ e^(-rho/2) rho^B` at infinity. The outward leg starts from the
//! Frobenius series (fixed-step integration straight across the 1/rho^2
//! region would lose six digits), the inward leg from the decaying
//! asymptote; classical fixed-step RK4 meets at an interior match point
//! and bisection drives the two-sided mismatch to zero. The mismatch that
//! is bisected is the normalized Wronskian of the two solutions, which has
//! the same zeros as the log-derivative discontinuity but no poles when a
//! wavefunction node wanders near the match point; the log-derivative gap
//! itself is reported as the diagnostic.

use crate::error::{Error, Result};
use crate::float::{int, lit, Float};
use crate::series::{exponent_s, node_count, Recurrence};
use crate::spectrum::sigma_relation;

/// Geometry, step counts and bracketing for one shooting run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig<T> {
    /// Inner end of the sampled domain.
    pub rho_min: T,
    /// Outer end; `None` selects `50 + 10 n`.
    pub rho_max: Option<T>,
    /// RK4 steps per leg.
    pub steps: usize,
    /// Handoff point below which the series supplies the solution.
    pub series_cut: T,
    /// Interior match point; `None` selects twice the closed-form beta.
    pub match_point: Option<T>,
    /// Bisection bracket; `None` centers +/- 0.3 on the closed-form beta
    /// and widens once if the mismatch does not change sign.
    pub bracket: Option<(T, T)>,
    /// Bracket width at which bisection stops.
    pub bisection_tol: T,
}

impl<T: Float> Default for ShootingConfig<T> {
    fn default() -> Self {
        Self {
            rho_min: lit(1e-6),
            rho_max: None,
            steps: 20_000,
            series_cut: T::one(),
            match_point: None,
            bracket: None,
            bisection_tol: lit(1e-12),
        }
    }
}

/// Outcome of one eigenvalue search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResult<T> {
    /// The shot eigenvalue.
    pub beta: T,
    /// Log-derivative discontinuity at the match point.
    pub mismatch: T,
    /// Sign changes of the assembled solution; equals `n_r` when the right
    /// level was found.
    pub node_count: usize,
    /// Mismatch evaluations spent.
    pub iterations: usize,
}

/// Gap report between a closed-form and a shot eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaComparison<T> {
    pub beta_closed: T,
    pub beta_numeric: T,
    pub abs_gap: T,
    pub rel_gap: T,
    pub rel_tol: T,
    pub pass: bool,
}

/// Closed-form `beta(n, l)` at fixed `d0`: the solution of the shift
/// relation, iterated to rounding level.
pub fn beta_closed_form<T: Float>(l: u32, zalpha: T, d0: T, n_r: u32) -> Result<T> {
    let n = int::<T>(n_r + l + 1);
    let mut sigma = T::zero();
    for iteration in 0..200 {
        let beta = n - sigma;
        if !(beta > T::zero()) {
            return Err(Error::NonPositiveBeta {
                iteration,
                beta: beta.to_f64().unwrap_or(f64::NAN),
            });
        }
        let next = sigma_relation(l, zalpha, d0, beta, iteration)?;
        let delta = (next - sigma).abs();
        sigma = next;
        if delta <= lit::<T>(4.0) * T::epsilon() * T::one().max(sigma.abs()) {
            return Ok(n - sigma);
        }
    }
    Err(Error::NoConvergence {
        iterations: 200,
        last_delta: f64::NAN,
    })
}

/// Shoot on the approximate radial equation.
pub fn shoot_eigenvalue_approx<T: Float>(
    l: u32,
    zalpha: T,
    d0: T,
    n_r: u32,
    config: &ShootingConfig<T>,
) -> Result<EigenResult<T>> {
    shoot(EquationKind::Approx, l, zalpha, d0, None, n_r, config)
}

/// Shoot on the full radial equation. The `rho`-dependent coefficient
/// factors take `beta` from the current bisection iterate (quasilinear
/// freezing). `beta_hint` recenters the bracket, e.g. on the approximate
/// eigenvalue.
pub fn shoot_eigenvalue_full<T: Float>(
    l: u32,
    zalpha: T,
    d0: T,
    beta_hint: Option<T>,
    n_r: u32,
    config: &ShootingConfig<T>,
) -> Result<EigenResult<T>> {
    shoot(EquationKind::Full, l, zalpha, d0, beta_hint, n_r, config)
}

/// Pure comparison of a closed-form eigenvalue against a shot one.
pub fn compare_beta<T: Float>(
    beta_closed: T,
    result: &EigenResult<T>,
    rel_tol: T,
) -> BetaComparison<T> {
    let abs_gap = (result.beta - beta_closed).abs();
    let rel_gap = abs_gap / beta_closed.abs();
    BetaComparison {
        beta_closed,
        beta_numeric: result.beta,
        abs_gap,
        rel_gap,
        rel_tol,
        pass: rel_gap <= rel_tol,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EquationKind {
    Approx,
    Full,
}

/// Radial ODE in `u`-form: `u'' + a1(rho) u' + a0(rho) u = 0`.
#[derive(Debug, Clone, Copy)]
struct RadialOde<T> {
    kind: EquationKind,
    /// `B = beta + d0/(2 beta)`.
    big_b: T,
    /// Approximate-equation 1/rho^2 coefficient.
    big_c: T,
    /// `d0 / beta`.
    d0b: T,
    /// Full-equation 1/rho^2..1/rho^4 coefficients.
    c2: T,
    c3: T,
    c4: T,
}

impl<T: Float> RadialOde<T> {
    fn new(kind: EquationKind, l: u32, zalpha: T, d0: T, beta: T) -> Self {
        let ell = int::<T>(l);
        let ll1 = ell * (ell + T::one());
        let za2 = zalpha * zalpha;
        let two = lit::<T>(2.0);
        let d0b = d0 / beta;
        let big_b = beta + d0 / (two * beta);
        let big_c = za2 - ll1 - lit::<T>(1.5) * d0 + d0b;
        let c2 = za2 - ll1 + lit::<T>(0.5) * d0 + d0b + d0b * d0b / lit::<T>(4.0);
        let c3 = (za2 - two * ll1 + two + d0b) * d0b;
        let c4 = (za2 - lit::<T>(4.0) * ll1 + lit::<T>(12.0)) * d0b * d0b / lit::<T>(4.0);
        Self {
            kind,
            big_b,
            big_c,
            d0b,
            c2,
            c3,
            c4,
        }
    }

    /// `(a1, a0)` of the u-form at `rho`.
    #[inline]
    fn u_coeffs(&self, rho: T) -> (T, T) {
        let quarter = lit::<T>(0.25);
        let inv = rho.recip();
        match self.kind {
            EquationKind::Approx => {
                let q = self.big_b * inv + self.big_c * inv * inv;
                (T::zero(), q - quarter)
            }
            EquationKind::Full => {
                let t = T::one() + self.d0b * inv;
                let inv2 = inv * inv;
                // 1 + p = -2 d0b / (rho^2 t)
                let a1 = -lit::<T>(2.0) * self.d0b * inv2 / t;
                let q = (self.big_b * inv
                    + (self.c2 + (self.c3 + self.c4 * inv) * inv) * inv2)
                    / (t * t);
                (a1, q - quarter + lit::<T>(0.5) * a1)
            }
        }
    }

    /// Where `1 + d0/(beta rho)` crosses zero, if anywhere on the positive
    /// axis.
    fn singularity(&self) -> Option<T> {
        if self.d0b < T::zero() {
            Some(-self.d0b)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Geometry<T> {
    rho_min: T,
    rho_cut: T,
    rho_match: T,
    rho_max: T,
    steps: usize,
}

fn geometry<T: Float>(
    n: u32,
    beta_est: T,
    config: &ShootingConfig<T>,
) -> Result<Geometry<T>> {
    let rho_max = config
        .rho_max
        .unwrap_or_else(|| lit::<T>(50.0) + lit::<T>(10.0) * int::<T>(n));
    let rho_match = config
        .match_point
        .unwrap_or_else(|| lit::<T>(2.0) * beta_est);
    let rho_cut = config.series_cut.min(rho_match * lit(0.5));
    let ordered = config.rho_min > T::zero()
        && config.rho_min < rho_cut
        && rho_cut < rho_match
        && rho_match < rho_max;
    if !ordered || config.steps < 16 || !(config.bisection_tol > T::zero()) {
        return Err(Error::InvalidConfig {
            message: format!(
                "shooting window must satisfy 0 < rho_min < series_cut < match < rho_max \
                 with steps >= 16; got rho_min={:?}, series_cut={:?}, match={:?}, rho_max={:?}, \
                 steps={}",
                config.rho_min, rho_cut, rho_match, rho_max, config.steps
            ),
        });
    }
    Ok(Geometry {
        rho_min: config.rho_min,
        rho_cut,
        rho_match,
        rho_max,
        steps: config.steps,
    })
}

const RENORM_THRESHOLD: f64 = 1e250;
const MAX_SERIES_TERMS: usize = 400;

/// One RK4 leg; `u` samples are appended to `record` in integration order.
/// Renormalizes the linear state when it grows past threshold; retries once
/// from a rescaled start if non-finite values appear anyway.
fn integrate_leg<T: Float>(
    ode: &RadialOde<T>,
    from: T,
    to: T,
    steps: usize,
    start: (T, T),
    mut record: Option<&mut Vec<T>>,
) -> Result<(T, T)> {
    let deriv = |rho: T, u: T, v: T| -> (T, T) {
        let (a1, a0) = ode.u_coeffs(rho);
        (v, -a1 * v - a0 * u)
    };
    let h = (to - from) / T::from_usize(steps).expect("steps representable");
    let threshold = lit::<T>(RENORM_THRESHOLD);

    for attempt in 0..2 {
        let (mut u, mut v) = start;
        if attempt == 1 {
            let norm = u.abs().max(v.abs());
            if norm > T::zero() && norm.is_finite() {
                u = u / norm;
                v = v / norm;
            }
        }
        if let Some(rec) = record.as_deref_mut() {
            rec.clear();
            rec.push(u);
        }
        let mut rho = from;
        let mut ok = true;
        for step in 0..steps {
            let (k1u, k1v) = deriv(rho, u, v);
            let half_h = h * lit::<T>(0.5);
            let (k2u, k2v) = deriv(rho + half_h, u + half_h * k1u, v + half_h * k1v);
            let (k3u, k3v) = deriv(rho + half_h, u + half_h * k2u, v + half_h * k2v);
            let (k4u, k4v) = deriv(rho + h, u + h * k3u, v + h * k3v);
            let sixth = h / lit::<T>(6.0);
            u = u + sixth * (k1u + lit::<T>(2.0) * (k2u + k3u) + k4u);
            v = v + sixth * (k1v + lit::<T>(2.0) * (k2v + k3v) + k4v);
            rho = from + h * T::from_usize(step + 1).expect("steps representable");
            if !(u.is_finite() && v.is_finite()) {
                ok = false;
                break;
            }
            let mag = u.abs().max(v.abs());
            if mag > threshold {
                u = u / mag;
                v = v / mag;
                if let Some(rec) = record.as_deref_mut() {
                    for s in rec.iter_mut() {
                        *s = *s / mag;
                    }
                }
            }
            if let Some(rec) = record.as_deref_mut() {
                rec.push(u);
            }
        }
        if ok {
            return Ok((u, v));
        }
    }
    Err(Error::NonFinite {
        context: "shooting RK4 leg",
    })
}

struct Shot<T> {
    /// Normalized Wronskian of (outward, inward) at the match point.
    wronskian: T,
    /// Log-derivative discontinuity at the match point.
    logderiv_gap: T,
    nodes: usize,
}

fn evaluate<T: Float>(
    kind: EquationKind,
    l: u32,
    zalpha: T,
    d0: T,
    beta: T,
    geom: &Geometry<T>,
    record: bool,
) -> Result<Shot<T>> {
    let ode = RadialOde::new(kind, l, zalpha, d0, beta);
    if let Some(rho_sing) = ode.singularity() {
        if rho_sing >= geom.rho_min && rho_sing <= geom.rho_max {
            return Err(Error::CoefficientSingularity {
                rho: rho_sing.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let s = exponent_s(l, zalpha, d0, beta)?;
    let rec = Recurrence::new(s, beta, d0, zalpha, l);

    // Outward: series values at the handoff point.
    let (f, fp) = rec.eval_with_derivative(geom.rho_cut, MAX_SERIES_TERMS)?;
    let damp = (-geom.rho_cut * lit::<T>(0.5)).exp();
    let start_out = (damp * f, damp * (fp - f * lit::<T>(0.5)));
    let mut out_samples = record.then(Vec::new);
    let (u_out, v_out) = integrate_leg(
        &ode,
        geom.rho_cut,
        geom.rho_match,
        geom.steps,
        start_out,
        out_samples.as_mut(),
    )?;

    // Inward: decaying asymptote u ~ e^(-rho/2) rho^B (1 + a1/rho),
    // normalized to u(rho_max) = 1.
    let a1 = ode.big_b * (T::one() - ode.big_b) - ode.big_c;
    let logderiv_inf = -lit::<T>(0.5) + ode.big_b / geom.rho_max
        - a1 / (geom.rho_max * geom.rho_max + a1 * geom.rho_max);
    let mut in_samples = record.then(Vec::new);
    let (u_in, v_in) = integrate_leg(
        &ode,
        geom.rho_max,
        geom.rho_match,
        geom.steps,
        (T::one(), logderiv_inf),
        in_samples.as_mut(),
    )?;

    let norm = ((u_out * u_out + v_out * v_out) * (u_in * u_in + v_in * v_in)).sqrt();
    let wronskian = (v_out * u_in - u_out * v_in) / norm;
    let logderiv_gap = v_out / u_out - v_in / u_in;

    let nodes = if record {
        let mut assembled: Vec<T> = Vec::new();
        // Series region: the polynomial factor carries the sign changes.
        let series_points = 256;
        for i in 0..series_points {
            let t = T::from_usize(i).expect("index") / T::from_usize(series_points).expect("n");
            let rho = geom.rho_min + (geom.rho_cut - geom.rho_min) * t;
            let (fv, _) = rec.eval_with_derivative(rho, MAX_SERIES_TERMS)?;
            assembled.push((-rho * lit::<T>(0.5)).exp() * fv);
        }
        assembled.extend(out_samples.unwrap());
        // Scale the inward leg onto the outward one and append it in
        // ascending rho order.
        let scale = if u_in.abs() > T::zero() {
            u_out / u_in
        } else {
            v_out / v_in
        };
        let inward = in_samples.unwrap();
        for &u in inward.iter().rev().skip(1) {
            assembled.push(u * scale);
        }
        node_count(&assembled)
    } else {
        0
    };

    Ok(Shot {
        wronskian,
        logderiv_gap,
        nodes,
    })
}

fn shoot<T: Float>(
    kind: EquationKind,
    l: u32,
    zalpha: T,
    d0: T,
    beta_hint: Option<T>,
    n_r: u32,
    config: &ShootingConfig<T>,
) -> Result<EigenResult<T>> {
    let beta_est = match beta_hint {
        Some(b) => b,
        None => beta_closed_form(l, zalpha, d0, n_r)?,
    };
    let geom = geometry(n_r + l + 1, beta_est, config)?;

    let half_width = lit::<T>(0.3);
    let auto_bracket = config.bracket.is_none();
    let (mut lo, mut hi) = config
        .bracket
        .unwrap_or((beta_est - half_width, beta_est + half_width));
    lo = lo.max(lit(0.05));

    let mut iterations = 0;
    let eval = |beta: T, record: bool, iterations: &mut usize| -> Result<Shot<T>> {
        *iterations += 1;
        evaluate(kind, l, zalpha, d0, beta, &geom, record)
    };

    let mut w_lo = eval(lo, false, &mut iterations)?.wronskian;
    let mut w_hi = eval(hi, false, &mut iterations)?.wronskian;
    if w_lo * w_hi > T::zero() && auto_bracket {
        // Widen once; eigenvalues are spaced by roughly one unit of beta.
        lo = (lo - half_width).max(lit(0.05));
        hi = hi + half_width;
        w_lo = eval(lo, false, &mut iterations)?.wronskian;
        w_hi = eval(hi, false, &mut iterations)?.wronskian;
    }
    if w_lo * w_hi > T::zero() {
        return Err(Error::BracketFailure {
            beta_lo: lo.to_f64().unwrap_or(f64::NAN),
            beta_hi: hi.to_f64().unwrap_or(f64::NAN),
            mismatch_lo: w_lo.to_f64().unwrap_or(f64::NAN),
            mismatch_hi: w_hi.to_f64().unwrap_or(f64::NAN),
        });
    }

    let mut mid = (lo + hi) * lit::<T>(0.5);
    while (hi - lo) > config.bisection_tol * T::one().max(mid.abs()) {
        mid = (lo + hi) * lit::<T>(0.5);
        let w_mid = eval(mid, false, &mut iterations)?.wronskian;
        if w_mid == T::zero() {
            break;
        }
        if w_mid * w_lo < T::zero() {
            hi = mid;
        } else {
            lo = mid;
            w_lo = w_mid;
        }
    }

    let last = eval(mid, true, &mut iterations)?;
    Ok(EigenResult {
        beta: mid,
        mismatch: last.logderiv_gap,
        node_count: last.nodes,
        iterations,
    })
}
