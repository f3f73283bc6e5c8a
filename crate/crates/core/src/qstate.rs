//! Single-qubit density matrices.
//!
//! Basis convention: index 0 is the ground state `|H>`, index 1 the excited
//! state `|V>`. All entropies are in nats.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::extended::ExtendedReal;

pub type CMat2 = Matrix2<Complex64>;

/// Tolerance on Hermiticity, trace and eigenvalue sign for a valid state.
pub const STATE_TOLERANCE: f64 = 1e-12;

/// Eigenvalues of the reference state below this are treated as outside
/// its support when computing relative entropies.
pub const SUPPORT_TOLERANCE: f64 = 1e-12;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn real_mat(m00: f64, m01: f64, m10: f64, m11: f64) -> CMat2 {
    CMat2::new(c(m00, 0.0), c(m01, 0.0), c(m10, 0.0), c(m11, 0.0))
}

/// Spectral decomposition of a 2x2 Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone, Copy)]
pub struct Eigen {
    pub values: [f64; 2],
    pub vectors: [Vector2<Complex64>; 2],
}

/// Diagonalizes the Hermitian part of `m` with a single complex Jacobi
/// rotation.
///
/// Writing `m01 = |c| e^{i phi}`, the phase is removed by
/// `diag(1, e^{-i phi})` and the remaining real symmetric block is rotated by
/// `theta = atan2(2|c|, a - b) / 2`.
pub fn eigh(m: &CMat2) -> Eigen {
    let a = m[(0, 0)].re;
    let b = m[(1, 1)].re;
    let off = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
    let modulus = off.norm();
    let phase = if modulus > 0.0 { off / modulus } else { c(1.0, 0.0) };

    let theta = 0.5 * (2.0 * modulus).atan2(a - b);
    let (sin, cos) = theta.sin_cos();
    let sin2 = (2.0 * theta).sin();
    let hi = a * cos * cos + b * sin * sin + modulus * sin2;
    let lo = a * sin * sin + b * cos * cos - modulus * sin2;

    let conj_phase = phase.conj();
    let v_hi = Vector2::new(c(cos, 0.0), conj_phase * sin);
    let v_lo = Vector2::new(-phase * sin, c(cos, 0.0));
    Eigen {
        values: [hi, lo],
        vectors: [v_hi, v_lo],
    }
}

fn hermitian_deviation(m: &CMat2) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Checks the three density-matrix conditions, in order: Hermiticity, unit
/// trace, positive semidefiniteness.
pub fn validate(m: &CMat2) -> Result<()> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NotHermitian {
            deviation: f64::NAN,
        });
    }
    let deviation = hermitian_deviation(m);
    if deviation > STATE_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let trace_dev = (m.trace() - c(1.0, 0.0)).norm();
    if trace_dev > STATE_TOLERANCE {
        return Err(Error::TraceDeviation {
            deviation: trace_dev,
        });
    }
    let min_eigenvalue = eigh(m).values[1];
    if min_eigenvalue < -STATE_TOLERANCE {
        return Err(Error::NegativeEigenvalue { min_eigenvalue });
    }
    Ok(())
}

/// Bloch vector `(x, y, z)` of a unit-trace Hermitian 2x2 matrix
/// `(I + x X + y Y + z Z) / 2`. Its length may exceed one, in which case the
/// matrix is not a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn length(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.x * factor, self.y * factor, self.z * factor)
    }

    pub fn matrix(&self) -> CMat2 {
        CMat2::new(
            c(0.5 * (1.0 + self.z), 0.0),
            c(0.5 * self.x, -0.5 * self.y),
            c(0.5 * self.x, 0.5 * self.y),
            c(0.5 * (1.0 - self.z), 0.0),
        )
    }
}

/// A validated single-qubit density matrix. Immutable; every operation
/// returns a new value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    elements: CMat2,
}

impl QubitState {
    pub fn new(elements: CMat2) -> Result<Self> {
        validate(&elements)?;
        Ok(Self { elements })
    }

    /// Wraps the output of a map that is known to preserve validity.
    pub(crate) fn assume_valid(elements: CMat2) -> Self {
        debug_assert!(
            validate(&elements).is_ok(),
            "invalid state {elements:?}: {:?}",
            validate(&elements)
        );
        Self { elements }
    }

    pub fn diagonal(ground: f64, excited: f64) -> Result<Self> {
        Self::new(real_mat(ground, 0.0, 0.0, excited))
    }

    pub fn from_bloch(v: BlochVector) -> Result<Self> {
        Self::new(v.matrix())
    }

    /// Pure state `|psi><psi|` from (not necessarily normalized) amplitudes.
    pub fn pure(amp_h: Complex64, amp_v: Complex64) -> Result<Self> {
        let norm = (amp_h.norm_sqr() + amp_v.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::TraceDeviation { deviation: 1.0 });
        }
        let psi = Vector2::new(amp_h / norm, amp_v / norm);
        Self::new(psi * psi.adjoint())
    }

    pub fn maximally_mixed() -> Self {
        Self::assume_valid(real_mat(0.5, 0.0, 0.0, 0.5))
    }

    /// `|H><H|`, the ground state.
    pub fn horizontal() -> Self {
        Self::assume_valid(real_mat(1.0, 0.0, 0.0, 0.0))
    }

    /// `|V><V|`, the excited state.
    pub fn vertical() -> Self {
        Self::assume_valid(real_mat(0.0, 0.0, 0.0, 1.0))
    }

    /// `|D><D|` with `|D> = (|H> + |V>)/sqrt 2`.
    pub fn diagonal_polarized() -> Self {
        Self::assume_valid(real_mat(0.5, 0.5, 0.5, 0.5))
    }

    /// `|R><R|` with `|R> = (|H> + i|V>)/sqrt 2`.
    pub fn right_circular() -> Self {
        Self::assume_valid(CMat2::new(
            c(0.5, 0.0),
            c(0.0, -0.5),
            c(0.0, 0.5),
            c(0.5, 0.0),
        ))
    }

    pub fn elements(&self) -> &CMat2 {
        &self.elements
    }

    pub fn ground_population(&self) -> f64 {
        self.elements[(0, 0)].re
    }

    pub fn excited_population(&self) -> f64 {
        self.elements[(1, 1)].re
    }

    /// The `rho_01` element.
    pub fn coherence_element(&self) -> Complex64 {
        self.elements[(0, 1)]
    }

    pub fn bloch_vector(&self) -> BlochVector {
        let off = self.elements[(0, 1)];
        BlochVector::new(
            2.0 * off.re,
            -2.0 * off.im,
            self.elements[(0, 0)].re - self.elements[(1, 1)].re,
        )
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        eigh(&self.elements).values
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.elements[(0, 1)].norm() <= tol && self.elements[(1, 0)].norm() <= tol
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &QubitState) -> f64 {
        (self.elements - other.elements)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// `-x ln x` with `0 ln 0 = 0`; slightly negative inputs are rounding noise.
fn entropy_term(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

/// `S(rho) = -tr rho ln rho`, in `[0, ln 2]`.
pub fn von_neumann_entropy(state: &QubitState) -> f64 {
    state.eigenvalues().iter().map(|&l| entropy_term(l)).sum()
}

/// `D(rho || sigma) = tr(rho ln rho - rho ln sigma)`.
///
/// Infinite when `rho` has weight above [`SUPPORT_TOLERANCE`] on an
/// eigenvector of `sigma` whose eigenvalue is below it.
pub fn relative_entropy(rho: &QubitState, sigma: &QubitState) -> ExtendedReal {
    let spectral = eigh(sigma.elements());
    let mut cross = 0.0;
    for (mu, v) in spectral.values.iter().zip(spectral.vectors.iter()) {
        let weight = (v.adjoint() * rho.elements() * v)[(0, 0)].re;
        if *mu < SUPPORT_TOLERANCE {
            if weight > SUPPORT_TOLERANCE {
                return ExtendedReal::Infinite;
            }
            continue;
        }
        cross += weight * mu.ln();
    }
    let d = -von_neumann_entropy(rho) - cross;
    ExtendedReal::Finite(d.max(0.0))
}

/// Removes all coherences in the energy eigenbasis.
pub fn dephase(state: &QubitState) -> QubitState {
    let m = state.elements();
    QubitState::assume_valid(CMat2::new(
        m[(0, 0)],
        c(0.0, 0.0),
        c(0.0, 0.0),
        m[(1, 1)],
    ))
}

/// l1-norm of coherence: sum of moduli of the off-diagonal elements.
pub fn l1_coherence(state: &QubitState) -> f64 {
    state.elements[(0, 1)].norm() + state.elements[(1, 0)].norm()
}

/// Relative entropy of coherence `S(dephase(rho)) - S(rho)`.
pub fn rel_entropy_coherence(state: &QubitState) -> f64 {
    (von_neumann_entropy(&dephase(state)) - von_neumann_entropy(state)).max(0.0)
}

/// Uhlmann fidelity `(tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`, which for qubits
/// reduces to `tr(rho sigma) + 2 sqrt(det rho det sigma)`.
pub fn fidelity(rho: &QubitState, sigma: &QubitState) -> f64 {
    let overlap = (rho.elements() * sigma.elements()).trace().re;
    let det_rho = rho.elements().determinant().re.max(0.0);
    let det_sigma = sigma.elements().determinant().re.max(0.0);
    (overlap + 2.0 * (det_rho * det_sigma).sqrt()).clamp(0.0, 1.0)
}

/// Draws a random state: direction uniform on the sphere, radius
/// `u^(1/3)` (uniform in the ball), with one draw in ten placed on the
/// surface so pure states are exercised.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> QubitState {
    let (x, y, z): (f64, f64, f64) = loop {
        let x: f64 = StandardNormal.sample(rng);
        let y: f64 = StandardNormal.sample(rng);
        let z: f64 = StandardNormal.sample(rng);
        let n = (x * x + y * y + z * z).sqrt();
        if n > 1e-9 {
            break (x / n, y / n, z / n);
        }
    };
    let radius = if rng.random::<f64>() < 0.1 {
        1.0
    } else {
        rng.random::<f64>().cbrt()
    };
    let v = BlochVector::new(x * radius, y * radius, z * radius);
    QubitState::assume_valid(v.matrix())
}
