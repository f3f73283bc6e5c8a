//! Self-check run by `gad-entropy check`: module invariants evaluated on
//! fixed grids and seeded random samples.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{completeness_deviation, evolve_master_equation, BathSpec, GadChannel};
use crate::entropy::{budget, ADDITIVITY_TOLERANCE};
use crate::prep::PrepSetting;
use crate::qstate::{
    dephase, fidelity, l1_coherence, random_state, relative_entropy, validate, von_neumann_entropy,
};
use crate::qstate::QubitState;
use crate::tomography::{linear_inversion, project_to_physical, simulate_counts, Basis, CountRecord};

pub const SUITE_SEED: u64 = 0x5EED_0001;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &'static str, worst: f64, tolerance: f64) {
        self.checks.push(CheckResult {
            name,
            passed: worst <= tolerance,
            worst,
            tolerance,
        });
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<40} worst {:.3e} (tol {:.0e})",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.worst,
                c.tolerance
            )?;
        }
        Ok(())
    }
}

fn grid(n: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
}

pub fn run_property_suite() -> SuiteReport {
    let mut report = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);

    let mut worst: f64 = 0.0;
    for p in grid(11, 0.5, 1.0) {
        for r in grid(11, 0.0, 1.0) {
            worst = worst.max(completeness_deviation(&GadChannel::new(p, r).unwrap()));
        }
    }
    report.record("kraus completeness (11x11)", worst, 1e-12);

    let mut worst_valid: f64 = 0.0;
    let mut worst_fixed: f64 = 0.0;
    let mut worst_contract: f64 = 0.0;
    for _ in 0..500 {
        let ch = GadChannel::new(rng.random_range(0.5..=1.0), rng.random_range(0.0..=1.0)).unwrap();
        let rho = random_state(&mut rng);
        let sigma = random_state(&mut rng);
        let out = ch.apply(&rho);
        if validate(out.elements()).is_err() {
            worst_valid = f64::INFINITY;
        }
        let eq = ch.equilibrium_state();
        worst_fixed = worst_fixed.max(ch.apply(&eq).max_abs_diff(&eq));
        let before = relative_entropy(&rho, &sigma);
        let after = relative_entropy(&out, &ch.apply(&sigma));
        if let (Some(b), Some(a)) = (before.finite(), after.finite()) {
            worst_contract = worst_contract.max(a - b);
        }
    }
    report.record("channel output is a valid state", worst_valid, 0.0);
    report.record("equilibrium is a fixed point", worst_fixed, 1e-12);
    report.record("relative entropy contracts", worst_contract, 1e-10);

    let mut worst_closed: f64 = 0.0;
    for alpha in grid(9, 0.0, std::f64::consts::FRAC_PI_4) {
        let prep = PrepSetting::new(alpha, false).unwrap();
        for p in grid(11, 0.5, 1.0) {
            for r in grid(11, 0.0, 1.0) {
                let ch = GadChannel::new(p, r).unwrap();
                worst_closed = worst_closed.max(prep.evolved_closed_form(&ch).max_abs_diff(&ch.apply(&prep.prepare())));
            }
        }
    }
    report.record("closed-form evolution matches Kraus", worst_closed, 1e-12);

    let mut worst_lindblad: f64 = 0.0;
    for n in [0.0, 0.125, 1.0] {
        let bath = BathSpec::with_occupation(n, 1.0).unwrap();
        for t in [0.1, 0.5, 1.0, 2.0] {
            let rho = random_state(&mut rng);
            let ode = evolve_master_equation(&bath, &rho, t, bath.default_step()).unwrap();
            let kraus = bath.channel_at(t).unwrap().apply(&rho);
            worst_lindblad = worst_lindblad.max(ode.max_abs_diff(&kraus));
        }
    }
    report.record("master equation matches Kraus", worst_lindblad, 1e-6);

    let mut worst_add: f64 = 0.0;
    let mut worst_neg: f64 = 0.0;
    for _ in 0..1000 {
        let prep = PrepSetting::new(rng.random_range(0.0..=std::f64::consts::FRAC_PI_4), false).unwrap();
        let ch = GadChannel::new(rng.random_range(0.5..0.999), rng.random_range(0.0..=1.0)).unwrap();
        match budget(&prep.prepare(), &ch) {
            Ok(b) => {
                let (t, p) = (b.total.value(), b.population.value());
                worst_add = worst_add.max((t - p - b.coherence).abs());
                worst_neg = worst_neg.max(0.0 - t).max(0.0 - p).max(0.0 - b.coherence);
            }
            Err(_) => worst_add = f64::INFINITY,
        }
    }
    report.record("budget additivity", worst_add, ADDITIVITY_TOLERANCE);
    report.record("budget nonnegativity", worst_neg, 0.0);

    let mut worst_entropy: f64 = 0.0;
    let mut worst_dephase: f64 = 0.0;
    let mut worst_l1: f64 = 0.0;
    for _ in 0..200 {
        let rho = random_state(&mut rng);
        let s = von_neumann_entropy(&rho);
        worst_entropy = worst_entropy.max(0.0 - s).max(s - std::f64::consts::LN_2);
        worst_dephase = worst_dephase.max(dephase(&dephase(&rho)).max_abs_diff(&dephase(&rho)));
        let r = rng.random_range(0.0..=1.0);
        let a = l1_coherence(&GadChannel::new(0.6, r).unwrap().apply(&rho));
        let b = l1_coherence(&GadChannel::new(0.95, r).unwrap().apply(&rho));
        worst_l1 = worst_l1.max((a - b).abs());
    }
    report.record("entropy within [0, ln 2]", worst_entropy, 1e-12);
    report.record("dephasing is idempotent", worst_dephase, 0.0);
    report.record("l1 coherence after channel ignores p", worst_l1, 1e-12);

    let mut worst_tomo: f64 = 0.0;
    for k in 0..20u64 {
        let rho = random_state(&mut rng);
        let rec = simulate_counts(&rho, 100_000, SUITE_SEED + k).unwrap();
        worst_tomo = worst_tomo.max(1.0 - fidelity(&rho, &project_to_physical(&linear_inversion(&rec))));
    }
    report.record("tomography infidelity at 1e5 shots", worst_tomo, 1e-3);

    // |D>: the D basis always clicks; H is binomial with probability 1/2.
    let mut worst_counts: f64 = 0.0;
    for k in 0..20u64 {
        let rec = simulate_counts(&QubitState::diagonal_polarized(), 100_000, SUITE_SEED ^ k).unwrap();
        let sigma = (100_000.0f64 * 0.25).sqrt();
        worst_counts = worst_counts
            .max((rec.count(Basis::D) as f64 - 100_000.0).abs())
            .max((rec.count(Basis::H) as f64 - 50_000.0).abs() / sigma - 5.0);
        let h = simulate_counts(&QubitState::horizontal(), 1000, k).unwrap();
        worst_counts = worst_counts.max(h.count(Basis::V) as f64).max(1000.0 - h.count(Basis::H) as f64);
    }
    report.record("count statistics", worst_counts, 0.0);

    let mut worst_exact: f64 = 0.0;
    for counts in [[100, 0, 50, 50], [30, 70, 12, 91], [0, 100, 100, 0]] {
        let rec = CountRecord::new(counts, 100, 0).unwrap();
        let v = linear_inversion(&rec);
        let f = rec.frequencies();
        worst_exact = worst_exact
            .max((v.z - (f[0] - f[1])).abs())
            .max((v.y - (2.0 * f[2] - 1.0)).abs())
            .max((v.x - (2.0 * f[3] - 1.0)).abs());
    }
    report.record("linear inversion formulas", worst_exact, 1e-15);

    report
}
