//! Argument parsing and dispatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsel_core::classical::{Corollary, ReflectionFamily};
use qsel_core::ctidentity::{CtOptions, CtParams};
use qsel_core::qselberg::Family;
use qsel_core::HeckeCtx;

use crate::checks::{self, ClassicalInput, NormInput, NormWhat, SelbergInput};
use crate::config::{self, Job};
use crate::report::{Sink, VerificationReport};
use crate::suite;
use crate::with_precision;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qsel", version, about = "Verify q-Selberg integrals, Koornwinder polynomial identities and constant term identities")]
pub struct Cli {
    /// Working precision in bits for real-mode identities: 64, 128, 256, 512 or 1024
    /// [default: 256, or 64 for `verify norm`].
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Relative tolerance for real-mode identities [default: 1e-30, or 1e-10 for `verify norm`].
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Also write reports as CSV to this path.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Report runtime_ms as 0 so output is byte-stable across runs.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Run a preset suite instead of a subcommand.
    #[arg(long, value_enum)]
    pub suite: Option<SuiteName>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SuiteName {
    Acceptance,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify a single identity.
    #[command(subcommand)]
    Verify(Verify),
    /// Nonsymmetric Koornwinder polynomials.
    #[command(subcommand)]
    Koornwinder(Koornwinder),
    /// Run every cell of a TOML parameter grid.
    Sweep {
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Jackson-integral q-Selberg identities.
    Selberg(SelbergArgs),
    /// Baker-Forrester constant term identity, exactly.
    Ct(CtArgs),
    /// Torus norms of E_λ and χ₁, or adjointness of T_i.
    Norm(NormArgs),
    /// Hecke relations on the monomial box |μ_i| ≤ max-deg.
    Hecke(HeckeArgs),
    /// q → 1 corollaries and the reflection-group product.
    Classical(ClassicalArgs),
}

#[derive(Args, Debug)]
pub struct SelbergArgs {
    /// hk, thm73-I, thm73-II or thm74
    #[arg(long)]
    pub family: String,
    /// Number of variables (hk).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub n0: Option<usize>,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub k: u32,
    /// α, or x for thm74.
    #[arg(long, alias = "x", default_value = "1", allow_hyphen_values = true)]
    pub alpha: String,
    /// β, or y for thm74.
    #[arg(long, alias = "y", default_value = "1", allow_hyphen_values = true)]
    pub beta: String,
    #[arg(long)]
    pub q: String,
    /// Evaluate both sides in rational arithmetic (integer α, β; rational q).
    #[arg(long)]
    pub exact: bool,
}

#[derive(Args, Debug)]
pub struct CtArgs {
    #[arg(long, default_value_t = 0)]
    pub n0: usize,
    #[arg(long)]
    pub n1: usize,
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub q: String,
    /// Maximum number of live terms during the expansion.
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(Args, Debug)]
pub struct NormArgs {
    /// ⟨E_λ, E_λ⟩ for dominant λ, e.g. "1,0".
    #[arg(long, conflicts_with_all = ["chi1", "adjoint"])]
    pub lambda: Option<String>,
    /// ⟨χ₁, χ₁⟩ for the split "n0,n1".
    #[arg(long, conflicts_with = "adjoint")]
    pub chi1: Option<String>,
    /// Adjointness of T_i for this i in two variables.
    #[arg(long)]
    pub adjoint: Option<usize>,
    #[arg(long, default_value = "0.3")]
    pub q: String,
    #[arg(long, default_value = "0.5")]
    pub t: String,
    /// Askey-Wilson parameters a1,a2,a3,a4.
    #[arg(long, default_value = "0.3,-0.2,0.25,-0.35", allow_hyphen_values = true)]
    pub a: String,
    /// Largest trapezoid size per dimension.
    #[arg(long, default_value_t = 512)]
    pub m_max: usize,
}

#[derive(Args, Debug)]
pub struct HeckeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub max_deg: i64,
    /// Rational point √q,t,t0,t0v,tn,tnv.
    #[arg(long, default_value = config::DEFAULT_POINT)]
    pub point: String,
}

#[derive(Args, Debug)]
pub struct ClassicalArgs {
    /// eq7.7 ... eq7.15
    #[arg(long, required_unless_present = "reflection")]
    pub which: Option<String>,
    /// Reflection-group form for family A, B or D instead.
    #[arg(long, conflicts_with = "which")]
    pub reflection: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub n0: usize,
    #[arg(long)]
    pub n1: usize,
    #[arg(long, default_value = "1")]
    pub alpha: String,
    #[arg(long, default_value = "1")]
    pub beta: String,
    #[arg(long, default_value = "1")]
    pub gamma: String,
    #[arg(long, default_value = "0")]
    pub c: String,
}

#[derive(Subcommand, Debug)]
pub enum Koornwinder {
    /// Print E_λ, one term per line as "c : e1 e2 ...".
    Compute {
        /// Weight, e.g. "1,0" or "0,2,1".
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = config::DEFAULT_POINT)]
        point: String,
    },
}

struct Settings {
    precision: Option<u32>,
    tol: Option<f64>,
}

impl Settings {
    fn bits(&self) -> u32 {
        self.precision.unwrap_or(256)
    }
    fn tol(&self) -> f64 {
        self.tol.unwrap_or(1e-30)
    }
}

fn usage(err: &mut dyn Write, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}

fn parse_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| format!("cannot read {s:?} as a comma-separated list of integers")))
        .collect()
}

fn selberg_input(a: &SelbergArgs) -> Result<SelbergInput, String> {
    let family = checks::parse_family(&a.family).ok_or_else(|| format!("unknown family {:?}", a.family))?;
    let (n0, n1) = if family == Family::HabsiegerKadell {
        (a.n.or(a.n0).ok_or("--n is required for hk")?, 0)
    } else {
        (a.n0.unwrap_or(0), a.n1.ok_or("--n1 is required")?)
    };
    Ok(SelbergInput { family, n0, n1, alpha: a.alpha.clone(), beta: a.beta.clone(), k: a.k, q: a.q.clone() })
}

fn bad_precision(bits: u32) -> String {
    format!("unsupported precision {bits}; use 64, 128, 256, 512 or 1024")
}

/// Runs one sweep or verify job at the given settings.
fn execute(job: &Job, s: &Settings, opts: &CtOptions) -> Result<VerificationReport, String> {
    Ok(match job {
        Job::Selberg(inp) => with_precision!(s.bits(), T => checks::selberg::<T>(inp, s.tol()), _ => return Err(bad_precision(s.bits()))),
        Job::Ct(p) => checks::ct(p, opts),
        Job::Classical(inp) => with_precision!(s.bits(), T => checks::classical::<T>(inp, s.tol()), _ => return Err(bad_precision(s.bits()))),
        Job::Hecke { point, n, max_deg } => {
            let p = checks::parse_param_point(point).map_err(|e| e.to_string())?;
            checks::hecke_relations(&p, *n, *max_deg)
        }
    })
}

fn verify(v: &Verify, s: &Settings) -> Result<VerificationReport, String> {
    match v {
        Verify::Selberg(a) => {
            let inp = selberg_input(a)?;
            if a.exact {
                Ok(checks::selberg_exact(&inp))
            } else {
                execute(&Job::Selberg(inp), s, &CtOptions::default())
            }
        }
        Verify::Ct(a) => {
            let q = checks::parse_q(&a.q).map_err(|e| e.to_string())?;
            let mut opts = CtOptions::default();
            if let Some(b) = a.budget {
                opts.budget = b;
            }
            execute(&Job::Ct(CtParams::new(a.n0, a.n1, a.a, a.b, a.k, q)), s, &opts)
        }
        Verify::Hecke(a) => execute(
            &Job::Hecke { point: a.point.clone(), n: a.n, max_deg: a.max_deg },
            s,
            &CtOptions::default(),
        ),
        Verify::Classical(a) => {
            if let Some(f) = &a.reflection {
                let fam = ReflectionFamily::parse(f).ok_or_else(|| format!("unknown reflection family {f:?}"))?;
                let bits = s.bits();
                return with_precision!(bits, T => Ok(checks::reflection::<T>(fam, a.n0, a.n1, &a.gamma, s.tol())), _ => Err(bad_precision(bits)));
            }
            let w = a.which.as_deref().unwrap_or_default();
            let which = Corollary::parse(w).ok_or_else(|| format!("unknown corollary {w:?}"))?;
            let inp = ClassicalInput {
                which,
                n0: a.n0,
                n1: a.n1,
                alpha: a.alpha.clone(),
                beta: a.beta.clone(),
                gamma: a.gamma.clone(),
                c: a.c.clone(),
            };
            execute(&Job::Classical(inp), s, &CtOptions::default())
        }
        Verify::Norm(a) => {
            let what = match (&a.lambda, &a.chi1, a.adjoint) {
                (Some(l), None, None) => {
                    let l = parse_list(l)?;
                    if !qsel_core::Weight(l.clone()).is_dominant() {
                        return Err("--lambda must be dominant".into());
                    }
                    NormWhat::E(l)
                }
                (None, Some(c), None) => match parse_list(c)?.as_slice() {
                    &[n0, n1] if n0 >= 0 && n1 >= 2 => NormWhat::Chi1(n0 as usize, n1 as usize),
                    _ => return Err("--chi1 takes n0,n1 with n1 >= 2".into()),
                },
                (None, None, Some(i)) if i <= 2 => NormWhat::Adjoint(i),
                (None, None, Some(_)) => return Err("--adjoint takes i in 0..=2".into()),
                _ => return Err("give one of --lambda, --chi1 or --adjoint".into()),
            };
            let parts: Vec<String> = a.a.split(',').map(|x| x.trim().to_string()).collect();
            let a4: [String; 4] = parts.try_into().map_err(|_| "--a takes four comma-separated values".to_string())?;
            let inp = NormInput { q: a.q.clone(), t: a.t.clone(), a: a4, m_max: a.m_max };
            let bits = s.precision.unwrap_or(64);
            let tol = s.tol.unwrap_or(suite::NORM_TOL);
            with_precision!(bits, T => Ok(checks::norm::<T>(&what, &inp, tol)), _ => Err(bad_precision(bits)))
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    if let Some(bits) = cli.precision {
        if ![64, 128, 256, 512, 1024].contains(&bits) {
            return usage(err, bad_precision(bits));
        }
    }
    if cli.tol.is_some_and(|t| !(t > 0.0)) {
        return usage(err, "--tol must be positive");
    }
    let settings = Settings { precision: cli.precision, tol: cli.tol };
    let mut sink = Sink::new(out);
    sink.deterministic = cli.deterministic;
    if let Some(path) = &cli.csv {
        sink = match sink.with_csv(path) {
            Ok(s) => s,
            Err(e) => return usage(err, format!("cannot write {}: {e}", path.display())),
        };
    }

    match (&cli.suite, &cli.command) {
        (Some(_), Some(_)) => usage(err, "--suite cannot be combined with a subcommand"),
        (None, None) => usage(err, "nothing to do; give a subcommand or --suite acceptance"),
        (Some(SuiteName::Acceptance), None) => {
            let mut all_pass = true;
            for n in 1..=10 {
                let res = suite::criterion(n);
                let _ = writeln!(err, "{}", res.line());
                all_pass &= res.pass;
                for r in res.reports {
                    if sink.emit(r).is_err() {
                        return EXIT_FAIL;
                    }
                }
            }
            match sink.exit_code() {
                EXIT_PASS if !all_pass => EXIT_FAIL,
                c => c,
            }
        }
        (None, Some(Command::Verify(v))) => match verify(v, &settings) {
            Ok(r) => {
                if sink.emit(r).is_err() {
                    return EXIT_FAIL;
                }
                sink.exit_code()
            }
            Err(m) => usage(err, m),
        },
        (None, Some(Command::Koornwinder(Koornwinder::Compute { lambda, point }))) => {
            let lam = match parse_list(lambda) {
                Ok(l) => l,
                Err(m) => return usage(err, m),
            };
            let p = match checks::parse_param_point(point) {
                Ok(p) => p,
                Err(e) => return usage(err, e),
            };
            match HeckeCtx::new(p, lam.len()).and_then(|c| c.koornwinder_e(&lam)) {
                Ok(e) => {
                    let _ = write!(sink.out(), "{}", e.to_text());
                    EXIT_PASS
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_FAIL
                }
            }
        }
        (None, Some(Command::Sweep { file })) => {
            let src = match std::fs::read_to_string(file) {
                Ok(s) => s,
                Err(e) => return usage(err, format!("cannot read {}: {e}", file.display())),
            };
            let jobs = match config::parse_sweep(&src) {
                Ok(j) => j,
                Err(m) => return usage(err, m),
            };
            let opts = CtOptions::default();
            let mut table: BTreeMap<String, (usize, usize)> = BTreeMap::new();
            for job in &jobs {
                let r = match execute(job, &settings, &opts) {
                    Ok(r) => r,
                    Err(m) => return usage(err, m),
                };
                let e = table.entry(r.identity.clone()).or_default();
                e.0 += usize::from(r.pass);
                e.1 += 1;
                if sink.emit(r).is_err() {
                    return EXIT_FAIL;
                }
            }
            let _ = writeln!(err, "{:<12} {:>6} {:>6}", "identity", "pass", "total");
            for (id, (ok, total)) in &table {
                let _ = writeln!(err, "{id:<12} {ok:>6} {total:>6}");
            }
            sink.exit_code()
        }
    }
}

