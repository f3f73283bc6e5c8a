use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gad-entropy"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("spawn gad-entropy")
}

#[test]
fn fig2_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["fig2", "--r-points", "11", "--bootstrap", "20"], dir.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("sigma_coh spread across p"));
    let csv = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    assert_eq!(csv.lines().count(), 34);
    assert!(dir.path().join("fig2.csv.meta").exists());
}

#[test]
fn fig3_honours_out_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["fig3", "--r-points", "3", "--bootstrap", "5", "--shots", "500"];
    let with = |seed: &str, name: &str| {
        let mut args = base.to_vec();
        args.extend(["--seed", seed, "--out", name]);
        assert!(run(&args, dir.path()).status.success());
        std::fs::read(dir.path().join(name)).unwrap()
    };
    let a = with("1", "a.csv");
    assert_eq!(a, with("1", "b.csv"));
    assert_ne!(a, with("2", "c.csv"));
}

#[test]
fn sweep_reads_config_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("s.conf"),
        "p_values = 0.8\nalpha_deg = 0, 10\nr_grid = 0, 1\nbootstrap = 4\nshots = 200\nout = s.csv\n",
    )
    .unwrap();
    let out = run(&["sweep", "--config", "s.conf"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["check"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["--help"], dir.path()).status.code(), Some(0));
    assert_eq!(run(&["--version"], dir.path()).status.code(), Some(0));
    assert_eq!(run(&[], dir.path()).status.code(), Some(1));
    assert_eq!(run(&["fig4"], dir.path()).status.code(), Some(1));
    assert_eq!(run(&["fig2", "--shots", "0"], dir.path()).status.code(), Some(1));
    assert_eq!(run(&["fig2", "--bootstrap", "1"], dir.path()).status.code(), Some(1));

    std::fs::write(dir.path().join("bad.conf"), "p_values = 0.2\n").unwrap();
    assert_eq!(run(&["sweep", "--config", "bad.conf"], dir.path()).status.code(), Some(1));
    assert_eq!(run(&["sweep", "--config", "missing.conf"], dir.path()).status.code(), Some(3));
    assert_eq!(
        run(&["fig2", "--r-points", "2", "--out", "no/such/dir/x.csv"], dir.path()).status.code(),
        Some(3)
    );
}
