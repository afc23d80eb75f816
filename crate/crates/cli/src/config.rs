//! Sweep files.
//!
//! A sweep file is TOML with one array of tables per identity family. Every
//! key takes either a single value or an array; the grid is the Cartesian
//! product in the fixed key order listed in [`KEYS`], with the last key
//! varying fastest. See `docs/sweep.md` for the full grammar.

use qsel_core::classical::Corollary;
use qsel_core::ctidentity::CtParams;

use crate::checks::{self, ClassicalInput, SelbergInput};

/// Recognised keys per section, in grid order.
pub const KEYS: [(&str, &[&str]); 4] = [
    ("selberg", &["family", "n", "n0", "n1", "k", "alpha", "beta", "q"]),
    ("ct", &["n0", "n1", "a", "b", "k", "q"]),
    ("classical", &["which", "n0", "n1", "alpha", "beta", "gamma", "c"]),
    ("hecke", &["point", "n", "max_deg"]),
];

#[derive(Clone, Debug)]
pub enum Job {
    Selberg(SelbergInput),
    Ct(CtParams),
    Classical(ClassicalInput),
    Hecke { point: String, n: usize, max_deg: i64 },
}

/// Default rational point for the Hecke relations.
pub const DEFAULT_POINT: &str = "1/2,1/3,1/2,1/3,2/5,1/4";

fn value_text(v: &toml::Value) -> Result<String, String> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(f) => Ok(f.to_string()),
        other => Err(format!("unsupported value {other}")),
    }
}

fn axis(table: &toml::Table, key: &str) -> Result<Option<Vec<String>>, String> {
    match table.get(key) {
        None => Ok(None),
        Some(toml::Value::Array(a)) => a.iter().map(value_text).collect::<Result<_, _>>().map(Some),
        Some(v) => Ok(Some(vec![value_text(v)?])),
    }
}

/// Row-major Cartesian product: the last axis varies fastest.
fn product(axes: &[(&str, Vec<String>)]) -> Vec<Vec<(String, String)>> {
    let mut out: Vec<Vec<(String, String)>> = vec![vec![]];
    for (k, vals) in axes {
        out = out
            .into_iter()
            .flat_map(|row| {
                vals.iter().map(move |v| {
                    let mut r = row.clone();
                    r.push((k.to_string(), v.clone()));
                    r
                })
            })
            .collect();
    }
    out
}

fn get<'a>(cell: &'a [(String, String)], key: &str) -> Option<&'a str> {
    cell.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn int<T: std::str::FromStr>(cell: &[(String, String)], key: &str, default: Option<T>) -> Result<T, String> {
    match get(cell, key) {
        Some(v) => v.parse().map_err(|_| format!("{key}: expected a nonnegative integer, got {v:?}")),
        None => default.ok_or_else(|| format!("missing key {key}")),
    }
}

fn text(cell: &[(String, String)], key: &str, default: &str) -> String {
    get(cell, key).unwrap_or(default).to_string()
}

fn job(section: &str, cell: &[(String, String)]) -> Result<Job, String> {
    Ok(match section {
        "selberg" => {
            let fam = get(cell, "family").ok_or("selberg: missing key family")?;
            let family = checks::parse_family(fam).ok_or_else(|| format!("unknown family {fam:?}"))?;
            let (n0, n1) = if family == qsel_core::qselberg::Family::HabsiegerKadell {
                (int(cell, "n", None)?, 0)
            } else {
                (int(cell, "n0", Some(0))?, int(cell, "n1", None)?)
            };
            Job::Selberg(SelbergInput {
                family,
                n0,
                n1,
                alpha: text(cell, "alpha", "1"),
                beta: text(cell, "beta", "1"),
                k: int(cell, "k", None)?,
                q: get(cell, "q").ok_or("selberg: missing key q")?.to_string(),
            })
        }
        "ct" => {
            let q = checks::parse_q(get(cell, "q").ok_or("ct: missing key q")?).map_err(|e| e.to_string())?;
            Job::Ct(CtParams::new(
                int(cell, "n0", Some(0))?,
                int(cell, "n1", None)?,
                int(cell, "a", None)?,
                int(cell, "b", None)?,
                int(cell, "k", None)?,
                q,
            ))
        }
        "classical" => {
            let w = get(cell, "which").ok_or("classical: missing key which")?;
            Job::Classical(ClassicalInput {
                which: Corollary::parse(w).ok_or_else(|| format!("unknown corollary {w:?}"))?,
                n0: int(cell, "n0", Some(0))?,
                n1: int(cell, "n1", None)?,
                alpha: text(cell, "alpha", "1"),
                beta: text(cell, "beta", "1"),
                gamma: text(cell, "gamma", "0"),
                c: text(cell, "c", "0"),
            })
        }
        "hecke" => Job::Hecke {
            point: text(cell, "point", DEFAULT_POINT),
            n: int(cell, "n", None)?,
            max_deg: int(cell, "max_deg", Some(2))?,
        },
        _ => unreachable!(),
    })
}

/// Expands a sweep file into jobs in deterministic order: sections in the
/// order of [`KEYS`], tables in file order, cells row-major.
pub fn parse_sweep(src: &str) -> Result<Vec<Job>, String> {
    let doc: toml::Table = src.parse().map_err(|e: toml::de::Error| e.to_string())?;
    for k in doc.keys() {
        if !KEYS.iter().any(|(s, _)| s == k) {
            return Err(format!("unknown section [[{k}]]"));
        }
    }
    let mut jobs = Vec::new();
    for (section, keys) in KEYS {
        let Some(v) = doc.get(section) else { continue };
        let tables = v.as_array().ok_or_else(|| format!("{section} must be an array of tables ([[{section}]])"))?;
        for t in tables {
            let t = t.as_table().ok_or_else(|| format!("{section}: expected a table"))?;
            if let Some(k) = t.keys().find(|k| !keys.contains(&k.as_str())) {
                return Err(format!("{section}: unknown key {k}"));
            }
            let mut axes = Vec::new();
            for &k in keys {
                if let Some(vals) = axis(t, k)? {
                    axes.push((k, vals));
                }
            }
            for cell in product(&axes) {
                jobs.push(job(section, &cell)?);
            }
        }
    }
    if jobs.is_empty() {
        return Err("sweep grid is empty".into());
    }
    Ok(jobs)
}
