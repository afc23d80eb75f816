use std::process::Command;

use qsel_cli::report::VerificationReport;
use qsel_cli::run::run;
use qsel_core::scalars::parse_rational;
use qsel_core::{LaurentPoly, Rational};

fn qsel(args: &[&str]) -> (i32, Vec<VerificationReport>, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qsel").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    let out = String::from_utf8(out).unwrap();
    let reports = out
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| VerificationReport::from_json(l).unwrap())
        .collect();
    (code, reports, out, String::from_utf8(err).unwrap())
}

#[test]
fn selberg_example_passes() {
    let (code, r, _, _) = qsel(&["verify", "selberg", "--family", "hk", "--n", "2", "--k", "1", "--alpha", "1.5", "--beta", "2.5", "--q", "0.3"]);
    assert_eq!(code, 0);
    assert_eq!(r.len(), 1);
    assert!(r[0].pass);
    assert_eq!(r[0].identity, "eq1.1");
    assert_eq!(r[0].precision_bits, 256);
    assert!(r[0].truncation.as_ref().unwrap().achieved > 0);
}

#[test]
fn ct_example_is_exact() {
    let (code, r, _, _) = qsel(&["verify", "ct", "--n0", "1", "--n1", "2", "--a", "1", "--b", "1", "--k", "1", "--q", "1/2"]);
    assert_eq!(code, 0);
    assert_eq!((r[0].lhs.as_str(), r[0].rhs.as_str()), ("3255/512", "3255/512"));
    assert_eq!(r[0].abs_err, "0");
}

#[test]
fn hecke_example_summarizes_relations() {
    let (code, r, _, _) = qsel(&["verify", "hecke", "--n", "2", "--max-deg", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r[0].identity, "hecke.relations");
    assert_eq!(r[0].lhs, r[0].rhs);
    assert!(r[0].rhs.parse::<usize>().unwrap() > 100);
}

#[test]
fn exact_selberg_and_other_verifiers() {
    for args in [
        &["verify", "selberg", "--family", "thm73-II", "--n0", "1", "--n1", "2", "--k", "1", "--alpha", "1", "--beta", "2", "--q", "1/3", "--exact"][..],
        &["verify", "selberg", "--family", "thm74", "--n0", "1", "--n1", "2", "--k", "0", "--x", "1", "--y", "1.5", "--q", "0.3"],
        &["verify", "norm", "--chi1", "0,2"],
        &["verify", "norm", "--adjoint", "1"],
        &["verify", "classical", "--which", "eq7.14", "--n0", "1", "--n1", "2", "--gamma", "1", "--c", "1"],
        &["verify", "classical", "--reflection", "D", "--n0", "1", "--n1", "2", "--gamma", "2"],
    ] {
        let (code, r, _, err) = qsel(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(r[0].pass, "{args:?}");
    }
}

#[test]
fn norm_defaults_to_double_extended() {
    let (_, r, _, _) = qsel(&["verify", "norm", "--lambda", "0,0"]);
    assert_eq!(r[0].precision_bits, 64);
    assert_eq!(r[0].tolerance, "1.000e-10");
    let (code, _, _, _) = qsel(&["verify", "norm", "--lambda", "0,1"]);
    assert_eq!(code, 2);
}

#[test]
fn json_round_trip_is_byte_identical() {
    let (_, r, out, _) = qsel(&["verify", "classical", "--which", "eq7.9", "--n0", "1", "--n1", "2", "--gamma", "1"]);
    let line = out.lines().next().unwrap();
    assert_eq!(r[0].to_json(), line);
    let (_, _, out, _) = qsel(&["verify", "ct", "--n1", "3", "--a", "2", "--b", "2", "--k", "2", "--q", "1/2", "--budget", "10"]);
    let line = out.lines().next().unwrap();
    assert_eq!(VerificationReport::from_json(line).unwrap().to_json(), line);
}

#[test]
fn exit_codes() {
    // budget exhausted: report still emitted
    let (code, r, _, _) = qsel(&["verify", "ct", "--n1", "3", "--a", "2", "--b", "2", "--k", "2", "--q", "1/2", "--budget", "10"]);
    assert_eq!(code, 3);
    assert!(!r[0].pass);
    assert!(r[0].reason.as_deref().unwrap().contains("budget"));
    // tolerance below what 64 bits can deliver
    let (code, r, _, _) = qsel(&["--precision", "64", "--tol", "1e-40", "verify", "selberg", "--family", "hk", "--n", "2", "--k", "1", "--alpha", "1.5", "--beta", "2.5", "--q", "0.5"]);
    assert_eq!(code, 1);
    assert!(!r[0].pass);
    for bad in [
        &["--bogus"][..],
        &["verify", "ct", "--n1", "2"],
        &["--precision", "100", "verify", "hecke", "--n", "2"],
        &["verify", "selberg", "--family", "nope", "--n", "2", "--k", "0", "--q", "0.5"],
        &["--suite", "acceptance", "verify", "hecke", "--n", "2"],
        &[],
    ] {
        assert_eq!(qsel(bad).0, 2, "{bad:?}");
    }
    assert_eq!(qsel(&["--help"]).0, 0);
}

#[test]
fn binary_exit_code() {
    let status = Command::new(env!("CARGO_BIN_EXE_qsel"))
        .args(["verify", "ct", "--n1", "3", "--a", "2", "--b", "2", "--k", "2", "--q", "1/2", "--budget", "10"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
    assert_eq!(String::from_utf8(status.stdout).unwrap().lines().count(), 1);
    let status = Command::new(env!("CARGO_BIN_EXE_qsel")).arg("--frobnicate").output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}

fn sweep(src: &str, extra: &[&str]) -> (i32, Vec<VerificationReport>, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.toml");
    std::fs::write(&path, src).unwrap();
    let mut args: Vec<&str> = extra.to_vec();
    let p = path.to_str().unwrap().to_string();
    args.extend(["sweep", p.as_str()]);
    qsel(&args)
}

#[test]
fn sweep_grid_is_row_major() {
    let src = r#"
[[selberg]]
family = "thm73-I"
n0 = 1
n1 = 2
k = [0, 1, 2]
alpha = "1.5"
beta = "2"
q = ["0.2", "0.5"]
"#;
    let (code, r, _, err) = sweep(src, &[]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(r.len(), 6);
    let cells: Vec<(String, String)> = r.iter().map(|x| (x.params["k"].clone(), x.params["q"].clone())).collect();
    let expect: Vec<(String, String)> = [("0", "0.2"), ("0", "0.5"), ("1", "0.2"), ("1", "0.5"), ("2", "0.2"), ("2", "0.5")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    assert_eq!(cells, expect);
    assert!(r.iter().all(|x| x.identity == "thm7.3-I" && x.pass));
    assert!(err.contains("thm7.3-I"));
}

#[test]
fn sweep_mixed_sections_and_errors() {
    let src = r#"
[[ct]]
n0 = [0, 1]
n1 = 2
a = 1
b = [1, 2]
k = 1
q = "1/3"

[[hecke]]
n = 2
max_deg = 1

[[classical]]
which = ["eq7.7", "eq7.8"]
n1 = 2
gamma = [0, 1]
"#;
    let (code, r, _, _) = sweep(src, &["--precision", "128", "--tol", "1e-25"]);
    assert_eq!(code, 0);
    assert_eq!(r.len(), 4 + 4 + 1);
    assert_eq!(r[0].identity, "eq1.3");
    assert_eq!(r[4].identity, "eq7.7");
    assert_eq!(r[8].identity, "hecke.relations");

    assert_eq!(sweep("[[selberg]]\nfamily = \"hk\"\nn = 2\nk = []\nq = 0.5\n", &[]).0, 2);
    assert_eq!(sweep("", &[]).0, 2);
    assert_eq!(sweep("[[ct]]\nn1 = 2\na = 1\nb = 1\nk = 1\nq = \"1/2\"\nbogus = 3\n", &[]).0, 2);
    assert_eq!(sweep("[[nope]]\nx = 1\n", &[]).0, 2);
    // one failing cell fails the sweep
    let (code, r, _, _) = sweep("[[selberg]]\nfamily = \"hk\"\nn = 2\nk = 1\nalpha = 1.5\nbeta = 2.5\nq = [0.2, 0.5]\n", &["--precision", "64", "--tol", "1e-40"]);
    assert_eq!((code, r.len()), (1, 2));
}

#[test]
fn csv_and_deterministic_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let c = csv.to_str().unwrap();
    let args = ["--deterministic", "--csv", c, "verify", "classical", "--which", "eq7.10", "--n1", "2", "--gamma", "1"];
    let (code, r, first, _) = qsel(&args);
    assert_eq!(code, 0);
    assert_eq!(r[0].runtime_ms, 0);
    let (_, _, second, _) = qsel(&args);
    assert_eq!(first, second);
    let mut rd = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(rd.headers().unwrap().get(0), Some("identity"));
    let rows: Vec<csv::StringRecord> = rd.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].get(0), Some("eq7.10"));
    assert_eq!(rows[0].get(7), Some("true"));
}

#[test]
fn koornwinder_compute_prints_monic_polynomial() {
    let (code, _, out, _) = qsel(&["koornwinder", "compute", "--lambda", "1,0"]);
    assert_eq!(code, 0);
    let e = LaurentPoly::<Rational>::parse_text(2, &out, parse_rational).unwrap();
    assert_eq!(e.coeff(&[1, 0]), Rational::from_integer(1.into()));
    assert_eq!(e.len(), 5);
    assert_eq!(qsel(&["koornwinder", "compute", "--lambda", "1,x"]).0, 2);
}
