//! C ABI over `gad-entropy`.
//!
//! States and channels cross the boundary as opaque heap handles created by
//! `gad_*_new`-style functions and released with the matching `*_free`.
//! Every fallible function returns a [`GadStatus`] and writes its result
//! through an out-pointer; on failure the out-pointer is left untouched and
//! `gad_last_error_message` describes the error. Panics never cross the
//! boundary; they surface as `GAD_STATUS_PANIC`.
//!
//! Matrices are passed row-major as `GadComplex[4]` (`m00, m01, m10, m11`),
//! basis index 0 being `|H>` (ground) and 1 being `|V>` (excited).

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gad_entropy::channel::BathSpec;
use gad_entropy::qstate::{
    dephase, fidelity, l1_coherence, rel_entropy_coherence, relative_entropy, von_neumann_entropy, CMat2,
};
use gad_entropy::tomography::reconstruct_with_errors;
use gad_entropy::{budget, BlochVector, Error, PrepSetting, QubitState};
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadStatus {
    Ok = 0,
    NullPointer = 1,
    NotHermitian = 2,
    TraceDeviation = 3,
    NegativeEigenvalue = 4,
    ParameterOutOfRange = 5,
    AngleOutOfRange = 6,
    CoherenceOutOfRange = 7,
    StepSizeInvalid = 8,
    MismatchedTemperature = 9,
    ReferenceNotDiagonal = 10,
    Indeterminate = 11,
    ConsistencyViolation = 12,
    InvalidRecord = 13,
    Panic = 99,
}

impl From<&Error> for GadStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotHermitian { .. } => GadStatus::NotHermitian,
            Error::TraceDeviation { .. } => GadStatus::TraceDeviation,
            Error::NegativeEigenvalue { .. } => GadStatus::NegativeEigenvalue,
            Error::ParameterOutOfRange { .. } => GadStatus::ParameterOutOfRange,
            Error::AngleOutOfRange { .. } => GadStatus::AngleOutOfRange,
            Error::CoherenceOutOfRange { .. } => GadStatus::CoherenceOutOfRange,
            Error::StepSizeInvalid { .. } => GadStatus::StepSizeInvalid,
            Error::MismatchedTemperature { .. } => GadStatus::MismatchedTemperature,
            Error::ReferenceNotDiagonal { .. } => GadStatus::ReferenceNotDiagonal,
            Error::Indeterminate => GadStatus::Indeterminate,
            Error::ConsistencyViolation { .. } => GadStatus::ConsistencyViolation,
            // Harness-only errors cannot come out of the functions exported here.
            Error::InvalidRecord(_) | Error::ConfigInvalid(_) | Error::EmptyRows | Error::Io { .. } => {
                GadStatus::InvalidRecord
            }
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GadComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for GadComplex {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

/// Entropy budget in nats. A divergent production is `+INFINITY`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GadBudget {
    pub total: f64,
    pub population: f64,
    pub coherence: f64,
}

/// Bootstrap standard errors of a reconstructed state.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GadElementErrors {
    pub rho00: f64,
    pub rho11: f64,
    pub re_rho01: f64,
    pub im_rho01: f64,
}

/// Opaque qubit density matrix.
pub struct GadState(QubitState);

/// Opaque generalized amplitude damping channel.
pub struct GadChannelHandle(gad_entropy::GadChannel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn fail(e: Error) -> GadStatus {
    let status = GadStatus::from(&e);
    set_last_error(e.to_string());
    status
}

fn null_pointer() -> GadStatus {
    set_last_error("null pointer argument".into());
    GadStatus::NullPointer
}

/// Runs `body`, converting panics into `GadStatus::Panic`.
fn guard(body: impl FnOnce() -> GadStatus) -> GadStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            GadStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> GadStatus {
    if out.is_null() {
        return null_pointer();
    }
    out.write(value);
    GadStatus::Ok
}

unsafe fn write_state(out: *mut *mut GadState, state: QubitState) -> GadStatus {
    if out.is_null() {
        return null_pointer();
    }
    out.write(Box::into_raw(Box::new(GadState(state))));
    GadStatus::Ok
}

macro_rules! deref {
    ($p:expr) => {
        match $p.as_ref() {
            Some(v) => v,
            None => return null_pointer(),
        }
    };
}

macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return fail(e),
        }
    };
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn gad_status_message(status: GadStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        GadStatus::Ok => b"ok\0",
        GadStatus::NullPointer => b"null pointer argument\0",
        GadStatus::NotHermitian => b"matrix is not Hermitian\0",
        GadStatus::TraceDeviation => b"trace is not one\0",
        GadStatus::NegativeEigenvalue => b"matrix has a negative eigenvalue\0",
        GadStatus::ParameterOutOfRange => b"parameter out of range\0",
        GadStatus::AngleOutOfRange => b"preparation angle out of range\0",
        GadStatus::CoherenceOutOfRange => b"coherence out of range\0",
        GadStatus::StepSizeInvalid => b"invalid integration step\0",
        GadStatus::MismatchedTemperature => b"channels have different temperatures\0",
        GadStatus::ReferenceNotDiagonal => b"reference state is not diagonal\0",
        GadStatus::Indeterminate => b"entropy production is indeterminate\0",
        GadStatus::ConsistencyViolation => b"entropy budget is inconsistent\0",
        GadStatus::InvalidRecord => b"invalid count record\0",
        GadStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Message of the last failure on this thread, or null if none. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gad_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Validates a row-major 2x2 complex matrix and wraps it as a state.
#[no_mangle]
pub unsafe extern "C" fn gad_state_new(elements: *const GadComplex, out: *mut *mut GadState) -> GadStatus {
    guard(|| {
        if elements.is_null() {
            return null_pointer();
        }
        let e = std::slice::from_raw_parts(elements, 4);
        let c = |z: GadComplex| Complex64::new(z.re, z.im);
        let m = CMat2::new(c(e[0]), c(e[1]), c(e[2]), c(e[3]));
        write_state(out, attempt!(QubitState::new(m)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn gad_state_from_bloch(x: f64, y: f64, z: f64, out: *mut *mut GadState) -> GadStatus {
    guard(|| write_state(out, attempt!(QubitState::from_bloch(BlochVector::new(x, y, z)))))
}

/// Wave-plate preparation at angle `alpha` (radians, `[0, pi/4]`).
#[no_mangle]
pub unsafe extern "C" fn gad_state_prepare(alpha: f64, dephased: bool, out: *mut *mut GadState) -> GadStatus {
    guard(|| write_state(out, attempt!(PrepSetting::new(alpha, dephased)).prepare()))
}

#[no_mangle]
pub unsafe extern "C" fn gad_state_free(state: *mut GadState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

#[no_mangle]
pub unsafe extern "C" fn gad_state_elements(state: *const GadState, out: *mut GadComplex) -> GadStatus {
    guard(|| {
        let s = deref!(state);
        if out.is_null() {
            return null_pointer();
        }
        let m = s.0.elements();
        for (k, z) in [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]].into_iter().enumerate() {
            out.add(k).write(z.into());
        }
        GadStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn gad_von_neumann_entropy(state: *const GadState, out: *mut f64) -> GadStatus {
    guard(|| write(out, von_neumann_entropy(&deref!(state).0)))
}

/// `D(rho || sigma)` in nats; `+INFINITY` when the support condition fails.
#[no_mangle]
pub unsafe extern "C" fn gad_relative_entropy(
    rho: *const GadState,
    sigma: *const GadState,
    out: *mut f64,
) -> GadStatus {
    guard(|| write(out, relative_entropy(&deref!(rho).0, &deref!(sigma).0).value()))
}

#[no_mangle]
pub unsafe extern "C" fn gad_l1_coherence(state: *const GadState, out: *mut f64) -> GadStatus {
    guard(|| write(out, l1_coherence(&deref!(state).0)))
}

#[no_mangle]
pub unsafe extern "C" fn gad_rel_entropy_coherence(state: *const GadState, out: *mut f64) -> GadStatus {
    guard(|| write(out, rel_entropy_coherence(&deref!(state).0)))
}

#[no_mangle]
pub unsafe extern "C" fn gad_fidelity(a: *const GadState, b: *const GadState, out: *mut f64) -> GadStatus {
    guard(|| write(out, fidelity(&deref!(a).0, &deref!(b).0)))
}

#[no_mangle]
pub unsafe extern "C" fn gad_dephase(state: *const GadState, out: *mut *mut GadState) -> GadStatus {
    guard(|| write_state(out, dephase(&deref!(state).0)))
}

#[no_mangle]
pub unsafe extern "C" fn gad_channel_new(p: f64, r: f64, out: *mut *mut GadChannelHandle) -> GadStatus {
    guard(|| {
        let ch = attempt!(gad_entropy::GadChannel::new(p, r));
        if out.is_null() {
            return null_pointer();
        }
        out.write(Box::into_raw(Box::new(GadChannelHandle(ch))));
        GadStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn gad_channel_free(ch: *mut GadChannelHandle) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

#[no_mangle]
pub unsafe extern "C" fn gad_channel_apply(
    ch: *const GadChannelHandle,
    state: *const GadState,
    out: *mut *mut GadState,
) -> GadStatus {
    guard(|| write_state(out, deref!(ch).0.apply(&deref!(state).0)))
}

#[no_mangle]
pub unsafe extern "C" fn gad_channel_equilibrium(ch: *const GadChannelHandle, out: *mut *mut GadState) -> GadStatus {
    guard(|| write_state(out, deref!(ch).0.equilibrium_state()))
}

/// Writes the four Kraus operators, each row-major, into `out[16]`.
#[no_mangle]
pub unsafe extern "C" fn gad_channel_kraus(ch: *const GadChannelHandle, out: *mut GadComplex) -> GadStatus {
    guard(|| {
        let ops = deref!(ch).0.kraus_operators();
        if out.is_null() {
            return null_pointer();
        }
        for (k, m) in ops.iter().enumerate() {
            for (j, z) in [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]].into_iter().enumerate() {
                out.add(4 * k + j).write(z.into());
            }
        }
        GadStatus::Ok
    })
}

/// Entropy production of `state` through `ch`, relative to the channel's
/// equilibrium state.
#[no_mangle]
pub unsafe extern "C" fn gad_budget(
    state: *const GadState,
    ch: *const GadChannelHandle,
    out: *mut GadBudget,
) -> GadStatus {
    guard(|| {
        let b = attempt!(budget(&deref!(state).0, &deref!(ch).0));
        write(
            out,
            GadBudget {
                total: b.total.value(),
                population: b.population.value(),
                coherence: b.coherence,
            },
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn gad_p_from_temperature(
    omega_s: f64,
    temperature: f64,
    gamma0: f64,
    out: *mut f64,
) -> GadStatus {
    guard(|| write(out, attempt!(BathSpec::new(omega_s, temperature, gamma0)).p_from_temperature()))
}

#[no_mangle]
pub unsafe extern "C" fn gad_r_from_time(
    omega_s: f64,
    temperature: f64,
    gamma0: f64,
    t: f64,
    out: *mut f64,
) -> GadStatus {
    guard(|| {
        let bath = attempt!(BathSpec::new(omega_s, temperature, gamma0));
        write(out, attempt!(bath.r_from_time(t)))
    })
}

/// Integrates the master equation up to `t`. A non-positive `dt` selects the
/// default step.
#[no_mangle]
pub unsafe extern "C" fn gad_evolve(
    omega_s: f64,
    temperature: f64,
    gamma0: f64,
    initial: *const GadState,
    t: f64,
    dt: f64,
    out: *mut *mut GadState,
) -> GadStatus {
    guard(|| {
        let bath = attempt!(BathSpec::new(omega_s, temperature, gamma0));
        let dt = if dt > 0.0 { dt } else { bath.default_step().min(t) };
        let state = attempt!(gad_entropy::channel::evolve_master_equation(
            &bath,
            &deref!(initial).0,
            t,
            dt
        ));
        write_state(out, state)
    })
}

/// Simulates four-basis tomography of `state` and reconstructs it.
/// `errors` may be null.
#[no_mangle]
pub unsafe extern "C" fn gad_tomography_reconstruct(
    state: *const GadState,
    shots_per_basis: u64,
    seed: u64,
    n_bootstrap: usize,
    out: *mut *mut GadState,
    errors: *mut GadElementErrors,
) -> GadStatus {
    guard(|| {
        let rec = attempt!(reconstruct_with_errors(&deref!(state).0, shots_per_basis, seed, n_bootstrap));
        if out.is_null() {
            return null_pointer();
        }
        if !errors.is_null() {
            errors.write(GadElementErrors {
                rho00: rec.stderr.rho00,
                rho11: rec.stderr.rho11,
                re_rho01: rec.stderr.re_rho01,
                im_rho01: rec.stderr.im_rho01,
            });
        }
        write_state(out, rec.state)
    })
}
