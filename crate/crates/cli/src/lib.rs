//! Command-line front end: single verifications, TOML sweeps and the
//! acceptance suite, all reporting as JSON lines.

pub mod checks;
pub mod config;
pub mod fixtures;
pub mod report;
pub mod run;
pub mod suite;

/// Runs `$body` with `$t` bound to the real type for `$bits`; any other
/// precision evaluates `$bad`.
#[macro_export]
macro_rules! with_precision {
    ($bits:expr, $t:ident => $body:expr, _ => $bad:expr) => {
        match $bits {
            64 => { type $t = qsel_core::Real64; $body }
            128 => { type $t = qsel_core::Real128; $body }
            256 => { type $t = qsel_core::Real256; $body }
            512 => { type $t = qsel_core::Real512; $body }
            1024 => { type $t = qsel_core::Real1024; $body }
            _ => $bad,
        }
    };
}

/// All exponent vectors in `[-m, m]^n`, lexicographic.
pub fn box_exponents(n: usize, m: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-m..=m).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}
