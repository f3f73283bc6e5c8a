//! Generalized amplitude damping (GAD) channel.
//!
//! `p` is the weight of the relaxation branch (`p = 1/2` is an infinite
//! temperature bath, `p = 1` a zero temperature bath) and `r` the damping
//! strength (`r = 0` no interaction, `r = 1` full thermalization).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{c, real_mat, CMat2, QubitState};

/// Two channels are considered to share a bath when their `p` differ by less
/// than this.
const SAME_P_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GadChannel {
    p: f64,
    r: f64,
}

impl GadChannel {
    pub fn new(p: f64, r: f64) -> Result<Self> {
        if !(0.5..=1.0).contains(&p) {
            return Err(Error::ParameterOutOfRange {
                name: "p",
                value: p,
                range: "[0.5, 1]",
            });
        }
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::ParameterOutOfRange {
                name: "r",
                value: r,
                range: "[0, 1]",
            });
        }
        Ok(Self { p, r })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// `M0, M1` (relaxation) and `M2, M3` (excitation):
    ///
    /// ```text
    /// M0 = sqrt(p)   [[1, 0], [0, sqrt(1-r)]]    M1 = sqrt(p)   [[0, sqrt r], [0, 0]]
    /// M2 = sqrt(1-p) [[sqrt(1-r), 0], [0, 1]]    M3 = sqrt(1-p) [[0, 0], [sqrt r, 0]]
    /// ```
    pub fn kraus_operators(&self) -> [CMat2; 4] {
        let sp = self.p.sqrt();
        let sq = (1.0 - self.p).sqrt();
        let keep = (1.0 - self.r).sqrt();
        let jump = self.r.sqrt();
        [
            real_mat(sp, 0.0, 0.0, sp * keep),
            real_mat(0.0, sp * jump, 0.0, 0.0),
            real_mat(sq * keep, 0.0, 0.0, sq),
            real_mat(0.0, 0.0, sq * jump, 0.0),
        ]
    }

    /// `rho -> sum_k M_k rho M_k^dagger`.
    pub fn apply(&self, state: &QubitState) -> QubitState {
        let rho = state.elements();
        let out = self
            .kraus_operators()
            .iter()
            .fold(CMat2::zeros(), |acc, m| acc + m * rho * m.adjoint());
        QubitState::assume_valid(out)
    }

    /// Thermal fixed point `diag(p, 1 - p)`.
    pub fn equilibrium_state(&self) -> QubitState {
        QubitState::assume_valid(real_mat(self.p, 0.0, 0.0, 1.0 - self.p))
    }

    /// Applying `self` then `next` equals one channel with the same `p` and
    /// `r = 1 - (1 - r1)(1 - r2)`.
    pub fn compose(&self, next: &GadChannel) -> Result<GadChannel> {
        if (self.p - next.p).abs() > SAME_P_TOLERANCE {
            return Err(Error::MismatchedTemperature {
                first: self.p,
                second: next.p,
            });
        }
        let r = 1.0 - (1.0 - self.r) * (1.0 - next.r);
        GadChannel::new(self.p, r.clamp(0.0, 1.0))
    }
}

/// Max over entries of `|sum_k M_k^dagger M_k - I|`.
pub fn completeness_deviation(ch: &GadChannel) -> f64 {
    let sum = ch
        .kraus_operators()
        .iter()
        .fold(CMat2::zeros(), |acc, m| acc + m.adjoint() * m);
    (sum - CMat2::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Physical description of the bath with `hbar = k_B = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    omega_s: f64,
    temperature: f64,
    gamma0: f64,
}

impl BathSpec {
    pub fn new(omega_s: f64, temperature: f64, gamma0: f64) -> Result<Self> {
        if !(omega_s.is_finite() && omega_s > 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "omega_s",
                value: omega_s,
                range: "(0, inf)",
            });
        }
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "temperature",
                value: temperature,
                range: "[0, inf)",
            });
        }
        if !(gamma0.is_finite() && gamma0 > 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "gamma0",
                value: gamma0,
                range: "(0, inf)",
            });
        }
        Ok(Self {
            omega_s,
            temperature,
            gamma0,
        })
    }

    /// Bath with the given mean occupation `n` at `omega_s = 1`.
    pub fn with_occupation(mean_occupation: f64, gamma0: f64) -> Result<Self> {
        if !(mean_occupation.is_finite() && mean_occupation >= 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "mean_occupation",
                value: mean_occupation,
                range: "[0, inf)",
            });
        }
        let temperature = if mean_occupation == 0.0 {
            0.0
        } else {
            1.0 / (1.0 / mean_occupation).ln_1p()
        };
        Self::new(1.0, temperature, gamma0)
    }

    pub fn omega_s(&self) -> f64 {
        self.omega_s
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    /// `n = 1 / (exp(omega_s / T) - 1)`, zero at `T = 0`.
    pub fn mean_occupation(&self) -> f64 {
        if self.temperature == 0.0 {
            0.0
        } else {
            1.0 / (self.omega_s / self.temperature).exp_m1()
        }
    }

    /// Population decay rate `(2n + 1) gamma0`.
    pub fn total_rate(&self) -> f64 {
        (2.0 * self.mean_occupation() + 1.0) * self.gamma0
    }

    /// `p = 1 / (1 + exp(-omega_s / T))`.
    pub fn p_from_temperature(&self) -> f64 {
        if self.temperature == 0.0 {
            1.0
        } else {
            1.0 / (1.0 + (-self.omega_s / self.temperature).exp())
        }
    }

    /// `r(t) = 1 - exp(-(2n + 1) gamma0 t)`.
    pub fn r_from_time(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::ParameterOutOfRange {
                name: "t",
                value: t,
                range: "[0, inf)",
            });
        }
        Ok(-(-self.total_rate() * t).exp_m1())
    }

    /// The Kraus channel equivalent to evolving for time `t` in this bath.
    pub fn channel_at(&self, t: f64) -> Result<GadChannel> {
        GadChannel::new(self.p_from_temperature(), self.r_from_time(t)?)
    }

    /// Step used by [`evolve_master_equation`] when none is given:
    /// `1e-3 / ((2n + 1) gamma0)`.
    pub fn default_step(&self) -> f64 {
        1e-3 / self.total_rate()
    }
}

fn lowering() -> CMat2 {
    real_mat(0.0, 1.0, 0.0, 0.0)
}

fn raising() -> CMat2 {
    real_mat(0.0, 0.0, 1.0, 0.0)
}

/// `D[L] rho = L rho L^dagger - {L^dagger L, rho} / 2`.
fn dissipator(l: &CMat2, rho: &CMat2) -> CMat2 {
    let ldl = l.adjoint() * l;
    l * rho * l.adjoint() - (ldl * rho + rho * ldl) * c(0.5, 0.0)
}

fn rhs(bath: &BathSpec, rho: &CMat2) -> CMat2 {
    let n = bath.mean_occupation();
    let down = Complex64::from(bath.gamma0 * (n + 1.0));
    let up = Complex64::from(bath.gamma0 * n);
    dissipator(&lowering(), rho) * down + dissipator(&raising(), rho) * up
}

/// Right-hand side of the thermal master equation (interaction picture):
/// `gamma0 (n + 1) D[sigma_-] rho + gamma0 n D[sigma_+] rho`.
pub fn lindblad_derivative(bath: &BathSpec, state: &QubitState) -> CMat2 {
    rhs(bath, state.elements())
}

/// Integrates the master equation from `initial` for time `t` with the
/// classical fixed-step RK4 scheme.
///
/// The number of steps is `ceil(t / dt)`, with the step shrunk so the last
/// one lands exactly on `t`.
pub fn evolve_master_equation(
    bath: &BathSpec,
    initial: &QubitState,
    t: f64,
    dt: f64,
) -> Result<QubitState> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            range: "[0, inf)",
        });
    }
    if t == 0.0 {
        return Ok(*initial);
    }
    if !(dt.is_finite() && dt > 0.0 && dt <= t) {
        return Err(Error::StepSizeInvalid { dt, t });
    }
    let steps = (t / dt).ceil() as u64;
    let h = t / steps as f64;
    let half = Complex64::from(0.5 * h);
    let full = Complex64::from(h);
    let sixth = Complex64::from(h / 6.0);
    let two = Complex64::from(2.0);

    let mut rho = *initial.elements();
    for _ in 0..steps {
        let k1 = rhs(bath, &rho);
        let k2 = rhs(bath, &(rho + k1 * half));
        let k3 = rhs(bath, &(rho + k2 * half));
        let k4 = rhs(bath, &(rho + k3 * full));
        rho += (k1 + k2 * two + k3 * two + k4) * sixth;
    }
    let hermitian = (rho + rho.adjoint()) * c(0.5, 0.0);
    QubitState::new(hermitian)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{random_state, relative_entropy};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn eq2_state() -> QubitState {
        let pc = 0.5f64.sqrt() / 2.0;
        QubitState::new(real_mat(0.7, pc, pc, 0.3)).unwrap()
    }

    #[test]
    fn parameter_ranges_are_enforced() {
        assert!(GadChannel::new(0.49, 0.5).is_err());
        assert!(GadChannel::new(1.01, 0.5).is_err());
        assert!(GadChannel::new(0.9, -0.1).is_err());
        assert!(GadChannel::new(0.9, 1.1).is_err());
        assert!(GadChannel::new(f64::NAN, 0.1).is_err());
        assert!(GadChannel::new(0.5, 0.0).is_ok());
        assert!(GadChannel::new(1.0, 1.0).is_ok());
    }

    #[test]
    fn kraus_operators_at_zero_time_are_identity() {
        let ops = GadChannel::new(1.0, 0.0).unwrap().kraus_operators();
        assert_eq!(ops[0], CMat2::identity());
        for m in &ops[1..] {
            assert_eq!(*m, CMat2::zeros());
        }
    }

    #[test]
    fn kraus_operators_at_infinite_temperature_full_damping() {
        let h = 0.5f64.sqrt();
        let ops = GadChannel::new(0.5, 1.0).unwrap().kraus_operators();
        let expected = [
            real_mat(h, 0.0, 0.0, 0.0),
            real_mat(0.0, h, 0.0, 0.0),
            real_mat(0.0, 0.0, 0.0, h),
            real_mat(0.0, 0.0, h, 0.0),
        ];
        for (m, e) in ops.iter().zip(expected.iter()) {
            assert!((m - e).norm() < 1e-15);
        }
    }

    #[test]
    fn completeness_on_grid() {
        for i in 0..=10 {
            for j in 0..=10 {
                let ch = GadChannel::new(0.5 + 0.05 * i as f64, 0.1 * j as f64).unwrap();
                assert!(completeness_deviation(&ch) < 1e-12);
            }
        }
    }

    #[test]
    fn apply_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rho = random_state(&mut rng);
            assert!(GadChannel::new(0.8, 0.0).unwrap().apply(&rho).max_abs_diff(&rho) < 1e-15);
            let full = GadChannel::new(0.8, 1.0).unwrap().apply(&rho);
            assert!(full.max_abs_diff(&QubitState::diagonal(0.8, 0.2).unwrap()) < 1e-15);
        }
        let out = GadChannel::new(0.9, 0.5)
            .unwrap()
            .apply(&QubitState::diagonal_polarized());
        assert!(out.max_abs_diff(&eq2_state()) < 1e-15);
    }

    #[test]
    fn equilibrium_examples() {
        let eq = |p| GadChannel::new(p, 0.3).unwrap().equilibrium_state();
        assert_eq!(eq(0.5), QubitState::maximally_mixed());
        assert!(eq(0.9).max_abs_diff(&QubitState::diagonal(0.9, 0.1).unwrap()) < 1e-15);
        assert_eq!(eq(1.0), QubitState::horizontal());
    }

    #[test]
    fn bath_mappings() {
        let bath = BathSpec::new(9f64.ln(), 1.0, 1.0).unwrap();
        assert!((bath.mean_occupation() - 0.125).abs() < 1e-15);
        assert!((bath.p_from_temperature() - 0.9).abs() < 1e-15);
        assert_eq!(bath.r_from_time(0.0).unwrap(), 0.0);
        assert!((bath.r_from_time(1.0).unwrap() - 0.713_495_203_139_809_9).abs() < 1e-15);
        assert!((bath.r_from_time(1e4).unwrap() - 1.0).abs() < 1e-15);
        assert!(bath.r_from_time(-1.0).is_err());

        let cold = BathSpec::new(1.0, 0.0, 1.0).unwrap();
        assert_eq!(cold.mean_occupation(), 0.0);
        assert_eq!(cold.p_from_temperature(), 1.0);
        let hot = BathSpec::new(1.0, 1e12, 1.0).unwrap();
        assert!((hot.p_from_temperature() - 0.5).abs() < 1e-12);

        let via_n = BathSpec::with_occupation(0.125, 1.0).unwrap();
        assert!((via_n.p_from_temperature() - 0.9).abs() < 1e-14);
        assert!(BathSpec::new(0.0, 1.0, 1.0).is_err());
        assert!(BathSpec::new(1.0, -1.0, 1.0).is_err());
        assert!(BathSpec::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn r_is_monotone_in_time() {
        let bath = BathSpec::with_occupation(1.0, 0.7).unwrap();
        let mut last = -1.0;
        for k in 0..200 {
            let r = bath.r_from_time(0.05 * k as f64).unwrap();
            assert!(r > last);
            last = r;
        }
    }

    #[test]
    fn lindblad_derivative_examples() {
        let bath = BathSpec::with_occupation(0.125, 1.0).unwrap();
        let eq = bath.channel_at(1.0).unwrap().equilibrium_state();
        assert!(lindblad_derivative(&bath, &eq).norm() < 1e-12);

        let vacuum = BathSpec::with_occupation(0.0, 1.0).unwrap();
        let d = lindblad_derivative(&vacuum, &QubitState::vertical());
        assert!((d[(1, 1)].re + 1.0).abs() < 1e-15);
        assert!((d[(0, 0)].re - 1.0).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let d = lindblad_derivative(&bath, &random_state(&mut rng));
            assert!(d.trace().norm() < 1e-15);
            assert!((d - d.adjoint()).norm() < 1e-15);
        }
    }

    #[test]
    fn evolve_examples() {
        let bath = BathSpec::with_occupation(0.125, 1.0).unwrap();
        let d = QubitState::diagonal_polarized();
        assert_eq!(evolve_master_equation(&bath, &d, 0.0, 0.1).unwrap(), d);

        let evolved = evolve_master_equation(&bath, &d, 1.0, bath.default_step()).unwrap();
        let kraus = GadChannel::new(0.9, 0.713_495_203_139_809_9).unwrap().apply(&d);
        assert!(evolved.max_abs_diff(&kraus) < 1e-6);

        let eq = GadChannel::new(0.9, 0.0).unwrap().equilibrium_state();
        let still = evolve_master_equation(&bath, &eq, 2.0, bath.default_step()).unwrap();
        assert!(still.max_abs_diff(&eq) < 1e-9);
    }

    #[test]
    fn evolve_rejects_bad_steps() {
        let bath = BathSpec::with_occupation(0.5, 1.0).unwrap();
        let d = QubitState::diagonal_polarized();
        for dt in [0.0, -0.1, 2.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                evolve_master_equation(&bath, &d, 1.0, dt),
                Err(Error::StepSizeInvalid { .. })
            ));
        }
        assert!(evolve_master_equation(&bath, &d, -1.0, 0.1).is_err());
        // Non-divisible step is shortened to land on t.
        let a = evolve_master_equation(&bath, &d, 1.0, 0.3).unwrap();
        let b = bath.channel_at(1.0).unwrap().apply(&d);
        assert!(a.max_abs_diff(&b) < 1e-4);
    }

    #[test]
    fn compose_examples() {
        let ch = |r| GadChannel::new(0.7, r).unwrap();
        assert_eq!(ch(0.0).compose(&ch(0.4)).unwrap().r(), 0.4);
        assert_eq!(ch(1.0).compose(&ch(0.4)).unwrap().r(), 1.0);
        assert_eq!(ch(0.5).compose(&ch(0.5)).unwrap().r(), 0.75);
        assert!(matches!(
            ch(0.5).compose(&GadChannel::new(0.8, 0.5).unwrap()),
            Err(Error::MismatchedTemperature { .. })
        ));
    }

    proptest! {
        #[test]
        fn composition_matches_sequential_application(
            p in 0.5..=1.0f64, r1 in 0.0..=1.0f64, r2 in 0.0..=1.0f64, seed in any::<u64>(),
        ) {
            let rho = random_state(&mut ChaCha8Rng::seed_from_u64(seed));
            let a = GadChannel::new(p, r1).unwrap();
            let b = GadChannel::new(p, r2).unwrap();
            let sequential = b.apply(&a.apply(&rho));
            let joint = a.compose(&b).unwrap().apply(&rho);
            prop_assert!(sequential.max_abs_diff(&joint) < 1e-12);
        }

        #[test]
        fn apply_is_contractive_and_fixes_equilibrium(
            p in 0.5..(1.0 - 1e-6), r in 0.0..=1.0f64, seed in any::<u64>(),
        ) {
            let ch = GadChannel::new(p, r).unwrap();
            let eq = ch.equilibrium_state();
            prop_assert!(ch.apply(&eq).max_abs_diff(&eq) < 1e-12);
            let rho = random_state(&mut ChaCha8Rng::seed_from_u64(seed));
            let out = ch.apply(&rho);
            prop_assert!(crate::qstate::validate(out.elements()).is_ok());
            let before = relative_entropy(&rho, &eq).value();
            let after = relative_entropy(&out, &eq).value();
            prop_assert!(after <= before + 1e-10);
        }

        #[test]
        fn coherence_decays_by_sqrt_one_minus_r(
            p in 0.5..=1.0f64, r in 0.0..=1.0f64, seed in any::<u64>(),
        ) {
            let rho = random_state(&mut ChaCha8Rng::seed_from_u64(seed));
            let out = GadChannel::new(p, r).unwrap().apply(&rho);
            let expected = rho.coherence_element() * (1.0 - r).sqrt();
            prop_assert!((out.coherence_element() - expected).norm() < 1e-12);
        }
    }
}
