use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn kamcap(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kamcap")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

#[test]
fn noble_prints_mediant() {
    let dir = tempfile::tempdir().unwrap();
    let o = kamcap(dir.path(), &["noble", "43/74", "18/31"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0.580905");
    let o = kamcap(dir.path(), &["noble", "0/1", "1/1", "--digits", "10"]);
    assert_eq!(stdout(&o).trim(), "0.6180339887");
}

#[test]
fn integrable_pipeline_is_proved() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = kamcap(d, &["model", "--eps", "0", "--noble", "43/74", "18/31", "--r-i", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(d.join("h0.tfh").exists() && d.join("omega.freq").exists());
    let o = kamcap(d, &["normalize"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = kamcap(d, &["estimate", "--r-ii", "50", "--cross-check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("0 violations"), "{out}");
    assert!(out.contains("VERDICT PROVED"), "{out}");
    let cert = std::fs::read_to_string(d.join("certificate.txt")).unwrap();
    assert!(cert.starts_with("KAM CERTIFICATE v1\n"));
}

#[test]
fn bundled_sample_runs_through() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let tfh = data("sample.tfh");
    let freq = data("sample.freq");
    let log = d.join("steps.jsonl");
    let o = kamcap(
        d,
        &["normalize", "--tfh", tfh.to_str().unwrap(), "--freq", freq.to_str().unwrap(), "--log", log.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&log).unwrap().lines().count(), 2);
    let snap = std::fs::read_to_string(d.join("hri.tfh")).unwrap();
    assert!(snap.starts_with("TFH v1\n4 3 2\n"));
    let o = kamcap(d, &["estimate", "--freq", freq.to_str().unwrap(), "--r-ii", "300"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let first = std::fs::read_to_string(d.join("certificate.txt")).unwrap();
    kamcap(d, &["estimate", "--freq", freq.to_str().unwrap(), "--r-ii", "300"]);
    assert_eq!(std::fs::read_to_string(d.join("certificate.txt")).unwrap(), first);
}

#[test]
fn failed_hypothesis_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let freq = data("sample.freq");
    let tfh = data("sample.tfh");
    kamcap(d, &["normalize", "--tfh", tfh.to_str().unwrap(), "--freq", freq.to_str().unwrap()]);
    let o = kamcap(d, &["estimate", "--freq", freq.to_str().unwrap(), "--gamma", "1e-30", "--r-ii", "300"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAILED smallness"), "{}", stdout(&o));
}

#[test]
fn errors_exit_one_and_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = kamcap(d, &["estimate", "--ledger", "missing.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing.txt"), "{}", stderr(&o));
    let o = kamcap(d, &["model", "--eps", "0.001"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--omega or --noble"), "{}", stderr(&o));
    let o = kamcap(d, &["model", "--eps", "0.001", "--omega", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("resonance"), "{}", stderr(&o));
    std::fs::write(d.join("bad.tfh"), "TFH v1\n4 3 2\n0 1 x\n").unwrap();
    std::fs::copy(data("sample.freq"), d.join("omega.freq")).unwrap();
    let o = kamcap(d, &["normalize", "--tfh", "bad.tfh"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.tfh:3"), "{}", stderr(&o));
    let o = kamcap(d, &["fam", "--eps", "0.004"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fam_writes_csv_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("scan.conf"), "eps = 0.0\nfrom = 0.34\nto = 0.36\nn = 30\nperiods = 300\n").unwrap();
    let o = kamcap(d, &["fam", "--config", "scan.conf", "--n", "25", "--plot", "fam.gp"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(d.join("fam.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("psi0,omega,amplitude,flag"));
    assert_eq!(lines.count(), 25);
    assert!(stdout(&o).contains("regular branch psi0 [0.34, 0.36] (25 orbits)"), "{}", stdout(&o));
    assert!(std::fs::read_to_string(d.join("fam.gp")).unwrap().contains("'fam.csv'"));
}

#[test]
fn run_writes_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = kamcap(d, &["run", "--eps", "0.0001", "--noble", "43/74", "18/31", "--r-i", "2", "--r-ii", "300", "--dir", "out"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    for f in ["omega.freq", "ledger.txt", "hri.tfh", "certificate.txt"] {
        assert!(d.join("out").join(f).exists(), "{f}");
    }
    let o = kamcap(d, &["run", "--eps", "0.0001", "--omega", "0.5809"]);
    assert_eq!(o.status.code(), Some(1));
}
