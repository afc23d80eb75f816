//! One line per acceptance criterion, written straight to stderr so it shows
//! up in normal `cargo test` output.

mod oracles;

use std::io::Write;

use qsel_cli::fixtures;
use qsel_cli::suite::{self, CriterionResult};

fn report(res: &CriterionResult) {
    let _ = writeln!(std::io::stderr(), "{}", res.line());
}

fn run(n: usize) {
    let res = suite::criterion(n);
    report(&res);
    assert!(res.pass, "{}", res.line());
}

#[test]
fn criterion_01() {
    run(1);
}

#[test]
fn criterion_02() {
    run(2);
}

#[test]
fn criterion_03() {
    run(3);
}

#[test]
fn criterion_04() {
    run(4);
}

#[test]
fn criterion_05() {
    run(5);
}

#[test]
fn criterion_06() {
    run(6);
}

#[test]
fn criterion_07() {
    run(7);
}

#[test]
fn criterion_08() {
    run(8);
}

#[test]
fn criterion_09() {
    run(9);
}

/// Library values against the frozen fixtures, and the oracles re-run
/// against the same fixtures.
#[test]
fn criterion_10() {
    let mut res = suite::criterion(10);
    let frozen = fixtures::load();
    let fresh = oracles::oracle_fixtures();
    let mut mismatched = Vec::new();
    for f in &frozen {
        match fresh.iter().find(|o| o.id == f.id) {
            Some(o) if o.oracle == f.oracle && o.settings == f.settings && fixtures::matches(f, &o.value).0 => {}
            _ => mismatched.push(f.id.clone()),
        }
    }
    if fresh.len() != frozen.len() {
        mismatched.push(format!("{} oracle entries vs {} frozen", fresh.len(), frozen.len()));
    }
    res.detail.push_str(&format!("; oracles reproduce {}/{} fixtures", frozen.len() - mismatched.len().min(frozen.len()), frozen.len()));
    if !mismatched.is_empty() {
        res.pass = false;
        res.detail.push_str(&format!("; oracle mismatch {mismatched:?}"));
    }
    report(&res);
    assert!(res.pass, "{}", res.line());
}
