use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use gad_entropy_ffi::*;

fn last_error() -> String {
    let p = gad_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn state(alpha: f64) -> *mut GadState {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gad_state_prepare(alpha, false, &mut s) }, GadStatus::Ok);
    s
}

#[test]
fn budget_through_handles() {
    unsafe {
        let rho = state(0.0);
        let mut ch = ptr::null_mut();
        assert_eq!(gad_channel_new(0.6, 1.0, &mut ch), GadStatus::Ok);
        let mut b = GadBudget::default();
        assert_eq!(gad_budget(rho, ch, &mut b), GadStatus::Ok);
        assert!((b.population / b.total - 0.028_604_531_339_663_65).abs() < 1e-12);
        assert!((b.coherence - std::f64::consts::LN_2).abs() < 1e-12);
        gad_channel_free(ch);
        gad_state_free(rho);
    }
}

#[test]
fn zero_temperature_codes() {
    unsafe {
        let rho = state(0.0);
        let mut ch = ptr::null_mut();
        assert_eq!(gad_channel_new(1.0, 0.5, &mut ch), GadStatus::Ok);
        let mut b = GadBudget::default();
        assert_eq!(gad_budget(rho, ch, &mut b), GadStatus::Indeterminate);
        assert!(last_error().contains("indeterminate"));
        gad_channel_free(ch);

        assert_eq!(gad_channel_new(1.0, 1.0, &mut ch), GadStatus::Ok);
        assert_eq!(gad_budget(rho, ch, &mut b), GadStatus::Ok);
        assert_eq!(b.total, f64::INFINITY);
        gad_channel_free(ch);
        gad_state_free(rho);
    }
}

#[test]
fn state_validation_and_elements() {
    unsafe {
        let c = |re: f64, im: f64| GadComplex { re, im };
        let mut s = ptr::null_mut();
        let bad = [c(0.5, 0.0), c(0.3, 0.0), c(0.1, 0.0), c(0.5, 0.0)];
        assert_eq!(gad_state_new(bad.as_ptr(), &mut s), GadStatus::NotHermitian);
        assert!(s.is_null());
        let neg = [c(1.2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.2, 0.0)];
        assert_eq!(gad_state_new(neg.as_ptr(), &mut s), GadStatus::NegativeEigenvalue);

        let good = [c(0.7, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(0.3, 0.0)];
        assert_eq!(gad_state_new(good.as_ptr(), &mut s), GadStatus::Ok);
        let mut back = [GadComplex::default(); 4];
        assert_eq!(gad_state_elements(s, back.as_mut_ptr()), GadStatus::Ok);
        assert_eq!(back, good);

        let mut d = ptr::null_mut();
        assert_eq!(gad_dephase(s, &mut d), GadStatus::Ok);
        let mut l1 = -1.0;
        assert_eq!(gad_l1_coherence(d, &mut l1), GadStatus::Ok);
        assert_eq!(l1, 0.0);
        gad_state_free(d);
        gad_state_free(s);
        gad_state_free(ptr::null_mut());
    }
}

#[test]
fn null_arguments_are_reported() {
    unsafe {
        let mut x = 0.0;
        assert_eq!(gad_von_neumann_entropy(ptr::null(), &mut x), GadStatus::NullPointer);
        let rho = state(0.1);
        assert_eq!(gad_von_neumann_entropy(rho, ptr::null_mut()), GadStatus::NullPointer);
        assert_eq!(gad_state_elements(rho, ptr::null_mut()), GadStatus::NullPointer);
        gad_state_free(rho);
    }
}

#[test]
fn kraus_and_equilibrium() {
    unsafe {
        let mut ch = ptr::null_mut();
        assert_eq!(gad_channel_new(0.8, 0.36, &mut ch), GadStatus::Ok);
        let mut k = [GadComplex::default(); 16];
        assert_eq!(gad_channel_kraus(ch, k.as_mut_ptr()), GadStatus::Ok);
        assert!((k[0].re - 0.8f64.sqrt()).abs() < 1e-15);
        assert!((k[5].re - 0.8f64.sqrt() * 0.6).abs() < 1e-15);
        let mut eq = ptr::null_mut();
        assert_eq!(gad_channel_equilibrium(ch, &mut eq), GadStatus::Ok);
        let mut e = [GadComplex::default(); 4];
        gad_state_elements(eq, e.as_mut_ptr());
        assert!((e[0].re - 0.8).abs() < 1e-15 && (e[3].re - 0.2).abs() < 1e-15);
        gad_state_free(eq);
        gad_channel_free(ch);
    }
}

#[test]
fn bath_mapping_and_integration() {
    unsafe {
        // n = 0.125 at omega = 1 means T = 1 / ln 9.
        let temperature = 1.0 / 9f64.ln();
        let mut r = 0.0;
        assert_eq!(gad_r_from_time(1.0, temperature, 1.0, 1.0, &mut r), GadStatus::Ok);
        assert!((r - 0.713_495_203_139_809_9).abs() < 1e-12);
        let mut p = 0.0;
        assert_eq!(gad_p_from_temperature(1.0, temperature, 1.0, &mut p), GadStatus::Ok);
        assert!((p - 0.9).abs() < 1e-12);
        assert_eq!(gad_r_from_time(1.0, temperature, 1.0, -1.0, &mut r), GadStatus::ParameterOutOfRange);

        let rho = state(0.0);
        let mut ode = ptr::null_mut();
        assert_eq!(gad_evolve(1.0, temperature, 1.0, rho, 1.0, 0.0, &mut ode), GadStatus::Ok);
        let mut ch = ptr::null_mut();
        gad_channel_new(p, 0.713_495_203_139_809_9, &mut ch);
        let mut kraus = ptr::null_mut();
        gad_channel_apply(ch, rho, &mut kraus);
        let mut f = 0.0;
        gad_fidelity(ode, kraus, &mut f);
        assert!((f - 1.0).abs() < 1e-9);
        assert_eq!(gad_evolve(1.0, temperature, 1.0, rho, 1.0, 2.0, &mut ode), GadStatus::StepSizeInvalid);
        for s in [rho, ode, kraus] {
            gad_state_free(s);
        }
        gad_channel_free(ch);
    }
}

#[test]
fn tomography_is_seeded() {
    unsafe {
        let rho = state(0.2);
        let run = |seed| {
            let mut out = ptr::null_mut();
            let mut err = GadElementErrors::default();
            assert_eq!(gad_tomography_reconstruct(rho, 10_000, seed, 20, &mut out, &mut err), GadStatus::Ok);
            let mut e = [GadComplex::default(); 4];
            gad_state_elements(out, e.as_mut_ptr());
            gad_state_free(out);
            (e, err)
        };
        assert_eq!(run(1), run(1));
        assert_ne!(run(1).0, run(2).0);
        let mut out = ptr::null_mut();
        assert_eq!(
            gad_tomography_reconstruct(rho, 10_000, 1, 1, &mut out, ptr::null_mut()),
            GadStatus::ParameterOutOfRange
        );
        gad_state_free(rho);
    }
}

#[test]
fn status_messages_are_static() {
    for s in [GadStatus::Ok, GadStatus::Indeterminate, GadStatus::Panic] {
        let msg = unsafe { CStr::from_ptr(gad_status_message(s)) };
        assert!(!msg.to_bytes().is_empty());
    }
}

/// Compiles `tests/smoke.c` against the generated header and the static
/// library. Skipped when no C compiler is on the PATH.
#[test]
fn c_smoke_program() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler `{cc}`");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/ffi-<hash> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libgad_entropy_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
