//! Four-basis single-qubit tomography with binomial shot noise.
//!
//! Each basis `H, V, R, D` is measured with its own fixed number of shots.
//! Reconstruction is linear inversion of the observed frequencies followed by
//! radial projection of the Bloch vector into the unit ball. Error bars come
//! from a parametric bootstrap: counts are redrawn from binomials at the
//! observed frequencies and pushed through the same reconstruction.
//!
//! Random numbers come from ChaCha8. A generator is identified by
//! `(seed, stream)`; stream 0 draws the counts and stream `k + 1` draws
//! bootstrap replicate `k`.

use nalgebra::Vector2;
use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::qstate::{BlochVector, QubitState};

/// Identifier recorded in output metadata so runs can be reproduced.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9), streams selected by (seed, stream)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    H,
    V,
    R,
    D,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::H, Basis::V, Basis::R, Basis::D];

    fn ket(self) -> Vector2<Complex64> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Basis::H => Vector2::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            Basis::V => Vector2::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
            Basis::R => Vector2::new(Complex64::new(s, 0.0), Complex64::new(0.0, s)),
            Basis::D => Vector2::new(Complex64::new(s, 0.0), Complex64::new(s, 0.0)),
        }
    }
}

/// Generator for `(seed, stream)`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A child seed for independent task `index` under `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    stream_rng(seed, index).next_u64()
}

/// `<b|rho|b>` for `b` in `H, V, R, D` order.
pub fn projector_probabilities(state: &QubitState) -> [f64; 4] {
    Basis::ALL.map(|b| {
        let ket = b.ket();
        (ket.adjoint() * state.elements() * ket)[(0, 0)].re.clamp(0.0, 1.0)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRecord {
    counts: [u64; 4],
    shots_per_basis: u64,
    seed: u64,
}

impl CountRecord {
    pub fn new(counts: [u64; 4], shots_per_basis: u64, seed: u64) -> Result<Self> {
        if shots_per_basis == 0 {
            return Err(Error::InvalidRecord("shots per basis must be positive".into()));
        }
        if let Some(c) = counts.iter().find(|&&c| c > shots_per_basis) {
            return Err(Error::InvalidRecord(format!(
                "count {c} exceeds {shots_per_basis} shots"
            )));
        }
        Ok(Self {
            counts,
            shots_per_basis,
            seed,
        })
    }

    pub fn counts(&self) -> [u64; 4] {
        self.counts
    }

    pub fn count(&self, basis: Basis) -> u64 {
        self.counts[basis as usize]
    }

    pub fn shots_per_basis(&self) -> u64 {
        self.shots_per_basis
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn frequencies(&self) -> [f64; 4] {
        let n = self.shots_per_basis as f64;
        self.counts.map(|c| c as f64 / n)
    }
}

fn draw_counts<R: rand::Rng + ?Sized>(probabilities: [f64; 4], shots: u64, rng: &mut R) -> [u64; 4] {
    probabilities.map(|p| {
        Binomial::new(shots, p.clamp(0.0, 1.0))
            .expect("probability clamped to [0, 1]")
            .sample(rng)
    })
}

/// One binomial draw per basis, reproducible from `seed`.
pub fn simulate_counts(state: &QubitState, shots: u64, seed: u64) -> Result<CountRecord> {
    if shots == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "shots",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let mut rng = stream_rng(seed, 0);
    let counts = draw_counts(projector_probabilities(state), shots, &mut rng);
    CountRecord::new(counts, shots, seed)
}

/// `<Z> = f_H - f_V`, `<X> = 2 f_D - 1`, `<Y> = 2 f_R - 1`.
///
/// The result is unit-trace and Hermitian but may lie outside the Bloch
/// ball.
pub fn linear_inversion(record: &CountRecord) -> BlochVector {
    let [f_h, f_v, f_r, f_d] = record.frequencies();
    BlochVector::new(2.0 * f_d - 1.0, 2.0 * f_r - 1.0, f_h - f_v)
}

/// Nearest state in Frobenius norm: vectors outside the unit ball are
/// rescaled onto the sphere.
pub fn project_to_physical(estimate: &BlochVector) -> QubitState {
    let len = estimate.length();
    let v = if len > 1.0 {
        estimate.scaled(1.0 / len)
    } else {
        *estimate
    };
    QubitState::assume_valid(v.matrix())
}

/// Standard errors of the independent real parameters of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementErrors {
    pub rho00: f64,
    pub rho11: f64,
    pub re_rho01: f64,
    pub im_rho01: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub state: QubitState,
    pub record: CountRecord,
    pub stderr: ElementErrors,
    pub n_bootstrap: usize,
    /// Bootstrap replicate states, in replicate order.
    pub replicates: Vec<QubitState>,
}

/// Sample standard deviation (`n - 1` denominator).
pub fn sample_std(values: impl IntoIterator<Item = f64>) -> f64 {
    let values: Vec<f64> = values.into_iter().collect();
    let n = values.len();
    if n < 2 {
        return f64::NAN;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n - 1) as f64).sqrt()
}

/// Reconstructs the state behind `record` and bootstraps its uncertainty.
pub fn reconstruct(record: &CountRecord, n_bootstrap: usize) -> Result<Reconstruction> {
    if n_bootstrap < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "n_bootstrap",
            value: n_bootstrap as f64,
            range: "[2, inf)",
        });
    }
    let state = project_to_physical(&linear_inversion(record));
    let observed = record.frequencies();
    let shots = record.shots_per_basis();

    let replicates: Vec<QubitState> = (0..n_bootstrap as u64)
        .map(|k| {
            let mut rng = stream_rng(record.seed(), k + 1);
            let counts = draw_counts(observed, shots, &mut rng);
            let resampled = CountRecord {
                counts,
                shots_per_basis: shots,
                seed: record.seed(),
            };
            project_to_physical(&linear_inversion(&resampled))
        })
        .collect();

    let stderr = ElementErrors {
        rho00: sample_std(replicates.iter().map(|s| s.ground_population())),
        rho11: sample_std(replicates.iter().map(|s| s.excited_population())),
        re_rho01: sample_std(replicates.iter().map(|s| s.coherence_element().re)),
        im_rho01: sample_std(replicates.iter().map(|s| s.coherence_element().im)),
    };
    Ok(Reconstruction {
        state,
        record: *record,
        stderr,
        n_bootstrap,
        replicates,
    })
}

/// Simulates one measurement run of `state` and reconstructs it.
pub fn reconstruct_with_errors(
    state: &QubitState,
    shots: u64,
    seed: u64,
    n_bootstrap: usize,
) -> Result<Reconstruction> {
    let record = simulate_counts(state, shots, seed)?;
    reconstruct(&record, n_bootstrap)
}
