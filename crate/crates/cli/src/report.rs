//! One JSON line per verified identity.

use std::collections::BTreeMap;
use std::io::Write;

use qsel_core::{Error, Rational, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Real,
}

/// How a truncated computation stopped: the achieved shell index J,
/// quadrature size M, or expansion size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub kind: String,
    pub achieved: u64,
    pub last_delta: String,
}

impl Truncation {
    pub fn new(kind: &str, achieved: u64, last_delta: f64) -> Self {
        Truncation { kind: kind.into(), achieved, last_delta: fmt_err(last_delta) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub abs_err: String,
    pub rel_err: String,
    pub tolerance: String,
    pub pass: bool,
    pub truncation: Option<Truncation>,
    pub runtime_ms: u64,
    pub mode: Mode,
    pub precision_bits: u32,
    /// Set when the computation itself failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Budget,
    Convergence,
    Invalid,
    Numeric,
}

impl ErrorKind {
    pub fn of(e: &Error) -> Self {
        match e {
            Error::Budget { .. } => ErrorKind::Budget,
            Error::NonConvergence { .. } => ErrorKind::Convergence,
            Error::InvalidParams(_) | Error::Parse(_) => ErrorKind::Invalid,
            _ => ErrorKind::Numeric,
        }
    }
}

pub type Params = BTreeMap<String, String>;

/// Builds a parameter snapshot from `(key, value)` pairs.
pub fn params<K: Into<String>, V: ToString>(kv: impl IntoIterator<Item = (K, V)>) -> Params {
    kv.into_iter().map(|(k, v)| (k.into(), v.to_string())).collect()
}

pub fn fmt_err(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v:.3e}")
    }
}

impl VerificationReport {
    fn base(identity: &str, params: Params, mode: Mode, bits: u32) -> Self {
        VerificationReport {
            identity: identity.into(),
            params,
            lhs: String::new(),
            rhs: String::new(),
            abs_err: String::new(),
            rel_err: String::new(),
            tolerance: String::new(),
            pass: false,
            truncation: None,
            runtime_ms: 0,
            mode,
            precision_bits: bits,
            error: None,
            reason: None,
        }
    }

    /// Real-mode comparison; passes when |lhs − rhs|/|rhs| < tol.
    pub fn real<T: Scalar>(identity: &str, params: Params, lhs: &T, rhs: &T, tol: f64) -> Self {
        let mut r = Self::base(identity, params, Mode::Real, T::precision_bits());
        let diff = lhs.clone() - rhs.clone();
        let abs = diff.magnitude();
        let rel = if rhs.is_zero() { abs } else { (diff / rhs.clone()).magnitude() };
        r.lhs = lhs.to_text();
        r.rhs = rhs.to_text();
        r.abs_err = fmt_err(abs);
        r.rel_err = fmt_err(rel);
        r.tolerance = fmt_err(tol);
        r.pass = rel < tol;
        r
    }

    /// Exact comparison; passes only on equality.
    pub fn exact(identity: &str, params: Params, lhs: &Rational, rhs: &Rational) -> Self {
        let mut r = Self::base(identity, params, Mode::Exact, 0);
        let diff = lhs - rhs;
        r.lhs = lhs.to_string();
        r.rhs = rhs.to_string();
        r.abs_err = diff.to_string();
        r.rel_err = if num_traits::Zero::is_zero(rhs) { diff.to_string() } else { (diff / rhs).to_string() };
        r.tolerance = "0".into();
        r.pass = lhs == rhs;
        r
    }

    /// Exact count check, e.g. relations satisfied out of relations tested.
    pub fn count(identity: &str, params: Params, ok: usize, total: usize) -> Self {
        let mut r = Self::base(identity, params, Mode::Exact, 0);
        r.lhs = ok.to_string();
        r.rhs = total.to_string();
        r.abs_err = (total - ok).to_string();
        r.rel_err = if total == 0 { "0".into() } else { fmt_err((total - ok) as f64 / total as f64) };
        r.tolerance = "0".into();
        r.pass = ok == total;
        r
    }

    pub fn failed(identity: &str, params: Params, mode: Mode, bits: u32, err: &Error) -> Self {
        let mut r = Self::base(identity, params, mode, bits);
        r.error = Some(ErrorKind::of(err));
        r.reason = Some(err.to_string());
        r
    }

    pub fn with_truncation(mut self, t: Truncation) -> Self {
        self.truncation = Some(t);
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = fmt_err(tol);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}

/// Collects reports, streams them as JSON lines and optionally as CSV.
pub struct Sink<'a> {
    out: &'a mut dyn Write,
    csv: Option<csv::Writer<std::fs::File>>,
    pub reports: Vec<VerificationReport>,
    pub deterministic: bool,
}

const CSV_HEADER: [&str; 14] = [
    "identity", "params", "lhs", "rhs", "abs_err", "rel_err", "tolerance", "pass", "truncation",
    "runtime_ms", "mode", "precision_bits", "error", "reason",
];

impl<'a> Sink<'a> {
    pub fn new(out: &'a mut dyn Write) -> Self {
        Sink { out, csv: None, reports: Vec::new(), deterministic: false }
    }

    pub fn with_csv(mut self, path: &std::path::Path) -> std::io::Result<Self> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(CSV_HEADER)?;
        self.csv = Some(w);
        Ok(self)
    }

    /// The underlying output stream, for plain-text commands.
    pub fn out(&mut self) -> &mut dyn Write {
        &mut *self.out
    }

    pub fn emit(&mut self, mut r: VerificationReport) -> std::io::Result<()> {
        if self.deterministic {
            r.runtime_ms = 0;
        }
        writeln!(self.out, "{}", r.to_json())?;
        if let Some(w) = self.csv.as_mut() {
            let params = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
            let trunc = r
                .truncation
                .as_ref()
                .map(|t| format!("{}={} ({})", t.kind, t.achieved, t.last_delta))
                .unwrap_or_default();
            let err = r.error.map(|e| format!("{e:?}").to_lowercase()).unwrap_or_default();
            w.write_record([
                r.identity.as_str(),
                &params,
                &r.lhs,
                &r.rhs,
                &r.abs_err,
                &r.rel_err,
                &r.tolerance,
                if r.pass { "true" } else { "false" },
                &trunc,
                &r.runtime_ms.to_string(),
                if r.mode == Mode::Exact { "exact" } else { "real" },
                &r.precision_bits.to_string(),
                &err,
                r.reason.as_deref().unwrap_or(""),
            ])?;
            w.flush()?;
        }
        self.reports.push(r);
        Ok(())
    }

    /// 0 when everything passed, 3 if any computation ran out of budget or
    /// failed to converge, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        exit_code(&self.reports)
    }
}

pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports
        .iter()
        .any(|r| matches!(r.error, Some(ErrorKind::Budget | ErrorKind::Convergence)))
    {
        3
    } else if reports.iter().all(|r| r.pass) {
        0
    } else {
        1
    }
}
