use std::path::Path;
use std::process::{Command, Output};

fn gb_lrei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gb-lrei"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("study.cfg");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const SMALL_SOLITON: &str = "\
# short soliton study
init = soliton
omega = 1/2
M = 512
T = 0.25
r = 2
taus = 2^-4, 2^-5, 2^-6
";

#[test]
fn converge_writes_csv_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_SOLITON);
    let out = dir.path().join("table.csv");
    let status = gb_lrei(&["converge", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let csv = std::fs::read_to_string(out).unwrap();
    let data: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], "tau,error_hr,pairwise_order");
    assert_eq!(data.len(), 4);
    assert!(data[1].starts_with("6.250000000000000e-2,"));
    assert!(data[1].ends_with(','));
    assert!(csv.contains("# M = 512\n"));
    assert!(csv.contains("# reference = exact\n"));
}

#[test]
fn flags_override_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_SOLITON);
    let run = gb_lrei(&["converge", "--config", &cfg, "--taus", "0.125", "--r", "1"]);
    assert!(run.status.success());
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.contains("# r = 1\n"));
    assert!(stdout.contains("# slope = none\n"));
    assert_eq!(stdout.lines().filter(|l| !l.starts_with('#')).count(), 2);
}

#[test]
fn invalid_configs_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "init = soliton\nwavelength = 3\n");
    assert_eq!(
        gb_lrei(&["converge", "--config", &cfg]).status.code(),
        Some(1)
    );
    assert_eq!(
        gb_lrei(&["converge", "--taus", "0.3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        gb_lrei(&["converge", "--init", "rough", "--reference", "exact"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        gb_lrei(&["converge", "--config", "/no/such/file"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        gb_lrei(&["converge", "--no-such-flag"]).status.code(),
        Some(1)
    );
}

#[test]
fn help_exits_cleanly() {
    let run = gb_lrei(&["--help"]);
    assert_eq!(run.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&run.stdout).contains("converge"));
}

#[test]
fn verify_prints_one_line_per_identity() {
    let run = gb_lrei(&["verify", "--seeds", "3"]);
    assert_eq!(run.status.code(), Some(0));
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 7);
    assert!(stdout.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn step_dump_emits_term_spectra() {
    let run = gb_lrei(&[
        "step",
        "--dump",
        "--init",
        "rough",
        "--M",
        "32",
        "--taus",
        "0.5",
        "--tau-ref",
        "0.01",
        "--tau",
        "0.1",
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.contains("term,k,re,im\n"));
    for term in ["u", "I1", "I2", "T0", "L1", "L2", "L3", "L4", "u_next"] {
        let rows = stdout
            .lines()
            .filter(|l| l.starts_with(&format!("{term},")))
            .count();
        assert_eq!(rows, 32, "{term}");
    }
}
