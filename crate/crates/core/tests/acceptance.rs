//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `--nocapture` to see them). Tolerances are pinned in the
//! assertions.

use twobody_core::{
    beta_closed_form, bohr_binding, compare_beta, connell_energy, energy_normal, exponent_s,
    kg_one_body_binding, node_count, radial_wavefunction, recurrence_coeffs,
    residual_quadratic_53, shoot_eigenvalue_approx, shoot_eigenvalue_full, sigma_l_zeroth,
    solve_level, Branch, Catalog, Error, PhysicalConstants, QuantumNumbers, RadialScale,
    ShootingConfig, SolverConfig, SpectrumLevel, System64, TwoBodySystem,
};

fn constants() -> PhysicalConstants {
    PhysicalConstants::builtin()
}

fn mass(name: &str) -> f64 {
    Catalog::builtin().lookup(name).unwrap().rest_energy
}

fn hydrogen() -> System64 {
    System64::new(mass("electron"), mass("proton"), 1, constants().alpha).unwrap()
}

fn pionium() -> System64 {
    System64::new(mass("pi+"), mass("pi-"), 1, constants().alpha).unwrap()
}

fn solve(sys: &System64, n: u32, l: u32, branch: Branch) -> SpectrumLevel<f64> {
    solve_level(
        sys,
        QuantumNumbers::new(n, l).unwrap(),
        branch,
        &SolverConfig::default(),
    )
    .unwrap()
}

/// SplitMix64, for reproducible randomized criteria.
struct Rng(u64);

impl Rng {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}

#[test]
fn criterion_01_free_limit_exactness() {
    let mut rng = Rng(0x5eed_0001);
    let mut pairs = vec![(3.0, 4.0), (0.51099895, 938.27208816), (139.57039, 139.57039)];
    for _ in 0..5 {
        pairs.push((rng.in_range(0.1, 1e4), rng.in_range(0.1, 1e4)));
    }
    for (m01, m02) in pairs {
        let sys = TwoBodySystem::<f64>::with_zero_coupling(m01, m02, 1).unwrap();
        let m0 = m01 + m02;
        for n in 1..=5 {
            for l in 0..n {
                let level = solve(&sys, n, l, Branch::Normal);
                let gap = ((level.energy - m0) / m0).abs();
                assert!(
                    gap <= 1e-14,
                    "alpha=0, m01={m01}, m02={m02}, n={n}, l={l}: relative gap {gap}"
                );
            }
        }
    }
    println!("acceptance criterion 1 (free-limit exactness): PASS");
}

#[test]
fn criterion_02_bohr_order_agreement() {
    let c = constants();

    let h = solve(&hydrogen(), 1, 0, Branch::Normal);
    let mu_h = mass("electron") * mass("proton") / (mass("electron") + mass("proton"));
    let bohr_h = bohr_binding(mu_h, c.alpha, 1);
    let rel_h = ((h.binding_energy() - bohr_h) / bohr_h).abs();
    assert!(rel_h <= 1e-4, "hydrogen 1S vs Bohr: {rel_h}");
    // The Bohr value itself is the documented 13.598 eV.
    assert!(((bohr_h - 13.598e-6) / 13.598e-6).abs() <= 1e-4);

    let p = solve(&pionium(), 1, 0, Branch::Normal);
    let bohr_p = bohr_binding(mass("pi+") / 2.0, c.alpha, 1);
    let rel_p = ((p.binding_energy() - bohr_p) / bohr_p).abs();
    assert!(rel_p <= 1e-3, "pionium 1S vs Bohr: {rel_p}");
    assert!(((bohr_p - 1.858e-3) / 1.858e-3).abs() <= 1e-3);

    println!(
        "acceptance criterion 2 (Bohr-order agreement): PASS \
         (hydrogen {rel_h:.2e}, pionium {rel_p:.2e})"
    );
}

#[test]
fn criterion_03_heavy_partner_limit() {
    let c = constants();
    let m01 = mass("electron");
    let m02 = m01 * 1e8;
    let sys = System64::new(m01, m02, 1, c.alpha).unwrap();
    for (n, l) in [(1u32, 0u32), (2, 0), (2, 1), (3, 2)] {
        let level = solve(&sys, n, l, Branch::Normal);
        let kg = kg_one_body_binding(m01, c.alpha, n, l).unwrap();
        let rel = ((level.binding_energy() - kg) / kg).abs();
        assert!(rel <= 1e-6, "n={n} l={l}: solver vs KG one-body gap {rel}");
    }
    println!("acceptance criterion 3 (heavy-partner Klein-Gordon limit): PASS");
}

#[test]
fn criterion_04_connell_equivalence() {
    let c = constants();
    let mut rng = Rng(0x5eed_0004);
    for case in 0..20 {
        let m01 = 10f64.powf(rng.in_range(-0.3, 3.3));
        let m02 = 10f64.powf(rng.in_range(-0.3, 3.3));
        let z = 1 + (rng.next_u64() % 3) as u32;
        let n = 1 + (rng.next_u64() % 6) as u32;
        let l = (rng.next_u64() % n as u64) as u32;
        let sys = System64::new(m01, m02, z, c.alpha).unwrap();
        let level = solve(&sys, n, l, Branch::Normal);
        let epsilon = l as f64 - level.sigma_l;
        let connell = connell_energy(m01, m02, sys.z_alpha(), level.qn.n_r(), epsilon);
        let direct = energy_normal(m01, m02, sys.z_alpha(), level.beta);
        let rel = ((connell - direct) / direct).abs();
        assert!(
            rel <= 1e-14,
            "case {case}: m01={m01:.4}, m02={m02:.4}, Z={z}, n={n}, l={l}: gap {rel}"
        );
    }
    println!("acceptance criterion 4 (Connell equivalence, 20 randomized systems): PASS");
}

#[test]
fn criterion_05_quadratic_root_residual() {
    for (sys, label) in [(hydrogen(), "hydrogen"), (pionium(), "pionium")] {
        for n in 1..=6u32 {
            for l in 0..n {
                for branch in [Branch::Normal, Branch::Abnormal] {
                    let level = solve(&sys, n, l, branch);
                    assert!(
                        level.residual_53.abs() <= 1e-10,
                        "{label} n={n} l={l} {branch}: residual {}",
                        level.residual_53
                    );
                }
                // The literal quadratic applied to the stored fields; on
                // the normal branch the stored binding carries enough
                // precision for the same bound.
                let level = solve(&sys, n, l, Branch::Normal);
                let op = residual_quadratic_53(
                    level.binding_energy(),
                    level.mu0,
                    sys.z_alpha(),
                    level.beta,
                );
                assert!(
                    op.abs() <= 1e-10,
                    "{label} n={n} l={l}: op residual {op}"
                );
            }
        }
    }
    println!("acceptance criterion 5 (quadratic-root residual <= 1e-10): PASS");
}

#[test]
fn criterion_06_series_termination() {
    for (sys, label) in [(hydrogen(), "hydrogen"), (pionium(), "pionium")] {
        for n in 1..=6u32 {
            for l in 0..n {
                let level = solve(&sys, n, l, Branch::Normal);
                let s = exponent_s(l, sys.z_alpha(), level.d0, level.beta).unwrap();
                let series =
                    recurrence_coeffs(s, level.beta, level.d0, sys.z_alpha(), l, level.qn.n_r())
                        .unwrap();
                let defect = series.termination_defect().unwrap();
                assert!(
                    defect <= 1e-12,
                    "{label} n={n} l={l}: termination defect {defect}"
                );
            }
        }
    }
    println!("acceptance criterion 6 (series termination b_(n_r+1) = 0): PASS");
}

#[test]
fn criterion_07_ode_oracle() {
    let config = ShootingConfig::default();
    let mut max_c = 0.0f64;
    for (sys, label) in [(hydrogen(), "hydrogen"), (pionium(), "pionium")] {
        let zalpha = sys.z_alpha();
        for n in 1..=3u32 {
            for l in 0..n.min(3) {
                let level = solve(&sys, n, l, Branch::Normal);
                let n_r = level.qn.n_r();
                let closed = beta_closed_form(l, zalpha, level.d0, n_r).unwrap();
                let approx = shoot_eigenvalue_approx(l, zalpha, level.d0, n_r, &config).unwrap();
                let report = compare_beta(closed, &approx, 1e-8);
                assert!(
                    report.pass,
                    "{label} n={n} l={l}: approx shooting gap {} vs closed form",
                    report.rel_gap
                );
                assert_eq!(
                    approx.node_count, n_r as usize,
                    "{label} n={n} l={l}: node count"
                );
                assert!(
                    approx.mismatch.abs() <= 1e-9,
                    "{label} n={n} l={l}: log-derivative mismatch {}",
                    approx.mismatch
                );

                let full = shoot_eigenvalue_full(
                    l,
                    zalpha,
                    level.d0,
                    Some(approx.beta),
                    n_r,
                    &config,
                )
                .unwrap();
                let rel_gap = ((full.beta - approx.beta) / approx.beta).abs();
                assert!(
                    rel_gap <= 10.0 * level.d0,
                    "{label} n={n} l={l}: full-approx gap {rel_gap} > 10 d0 = {}",
                    10.0 * level.d0
                );
                if level.d0 > 0.0 {
                    max_c = max_c.max(rel_gap / level.d0);
                }
            }
        }
    }
    println!(
        "acceptance criterion 7 (ODE oracle, approx <= 1e-8; full vs approx <= 10 d0): PASS \
         (reported constant C = max |beta_full - beta_approx| / (beta d0) = {max_c:.3})"
    );
}

#[test]
fn criterion_08_abnormal_branch_asymptotics() {
    let c = constants();
    let sys = pionium();
    let m_pi = mass("pi+");

    let mut previous = f64::INFINITY;
    for n in 1..=30u32 {
        let level = solve(&sys, n, 0, Branch::Abnormal);
        assert!(level.energy > 0.0, "n={n}: abnormal energy not positive");
        assert!(
            level.energy < previous,
            "n={n}: abnormal energy not strictly decreasing"
        );
        previous = level.energy;
    }

    let e100 = solve(&sys, 100, 0, Branch::Abnormal).energy;
    let e200 = solve(&sys, 200, 0, Branch::Abnormal).energy;
    assert!(e200 < e100 && e200 > 0.0, "E_n -> 0 trend violated");

    let alpha_mpi = c.alpha * m_pi;
    assert!(((alpha_mpi - 1.0185) / 1.0185).abs() <= 1e-3);
    let rel = (200.0 * e200 - alpha_mpi).abs() / alpha_mpi;
    assert!(rel <= 1e-3, "n E_n at n=200: relative gap {rel} from alpha m_pi");

    println!(
        "acceptance criterion 8 (abnormal asymptotics, n*E_200 vs alpha*m_pi gap {rel:.2e}): PASS"
    );
}

#[test]
fn criterion_09_symmetry_monotonicity_nodes() {
    let c = constants();

    // m01 <-> m02 swap invariance.
    let ab = System64::new(mass("pi-"), mass("proton"), 1, c.alpha).unwrap();
    let ba = System64::new(mass("proton"), mass("pi-"), 1, c.alpha).unwrap();
    for n in 1..=4u32 {
        let ea = solve(&ab, n, 0, Branch::Normal).energy;
        let eb = solve(&ba, n, 0, Branch::Normal).energy;
        assert!(
            ((ea - eb) / ea).abs() <= 1e-14,
            "swap symmetry violated at n={n}"
        );
    }

    // Normal-branch energies strictly increase with n at fixed l.
    for (sys, label) in [(hydrogen(), "hydrogen"), (pionium(), "pionium")] {
        for l in 0..3u32 {
            let mut previous = 0.0;
            for n in (l + 1)..=6 {
                let e = solve(&sys, n, l, Branch::Normal).energy;
                assert!(
                    e > previous,
                    "{label} l={l}: E_n not strictly increasing at n={n}"
                );
                previous = e;
            }
        }
    }

    // Node theorem: node_count = n_r for all n <= 6.
    for (sys, label) in [(hydrogen(), "hydrogen"), (pionium(), "pionium")] {
        for n in 1..=6u32 {
            for l in 0..n {
                let level = solve(&sys, n, l, Branch::Normal);
                let s = exponent_s(l, sys.z_alpha(), level.d0, level.beta).unwrap();
                let series =
                    recurrence_coeffs(s, level.beta, level.d0, sys.z_alpha(), l, level.qn.n_r())
                        .unwrap();
                let scale = RadialScale::from_level(&sys, &level, c.hbar_c).unwrap();
                let r_max = 60.0 / scale.alpha_prime();
                let points = 4001;
                let grid: Vec<f64> = (0..points)
                    .map(|i| r_max * 1e-6 + (r_max - r_max * 1e-6) * i as f64 / (points - 1) as f64)
                    .collect();
                let samples = radial_wavefunction(&scale, &series, &grid).unwrap();
                assert_eq!(
                    node_count(&samples),
                    level.qn.n_r() as usize,
                    "{label} n={n} l={l}: node count"
                );
            }
        }
    }

    println!("acceptance criterion 9 (swap symmetry, monotonicity, node theorem): PASS");
}

#[test]
fn criterion_10_supercritical_guard() {
    let c = constants();
    // Z alpha >= 1/2 must fail for s states: Z = 69 with the default alpha.
    assert!(69.0 * c.alpha >= 0.5 && 68.0 * c.alpha < 0.5);

    let sys69 = System64::new(mass("electron"), mass("lead-nucleus"), 69, c.alpha).unwrap();
    let err = solve_level(
        &sys69,
        QuantumNumbers::new(1, 0).unwrap(),
        Branch::Normal,
        &SolverConfig::default(),
    )
    .unwrap_err();
    match err {
        Error::SupercriticalCoupling { l, zalpha, critical } => {
            assert_eq!(l, 0);
            assert!(zalpha >= critical);
        }
        other => panic!("expected supercritical error, got {other:?}"),
    }
    assert!(sigma_l_zeroth::<f64>(0, 69.0 * c.alpha).is_err());

    let sys68 = System64::new(mass("electron"), mass("lead-nucleus"), 68, c.alpha).unwrap();
    let level = solve(&sys68, 1, 0, Branch::Normal);
    assert!(level.converged);

    println!("acceptance criterion 10 (supercritical guard at Z alpha >= 1/2): PASS");
}
