//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string. Failures come back as
//! `{"error": "..."}` so the page can show them inline.

use domlab::bounds::{
    exhaustive_upper_c, expected_dominating_sets, f_eps, g_minus, g_plus, tnp_upper_grid,
    verify_interval_table, ExhaustiveVariant,
};
use domlab::branch_bound::{bb_solve, BbConfig, TieRule};
use domlab::exhaustive::exhaustive_solve;
use domlab::graph::gnp_sample;
use domlab::{Result, SolveReport};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest graph the page will sample. Exhaustive search is skipped above
/// [`EXHAUSTIVE_MAX_N`].
pub const MAX_N: usize = 60;
pub const EXHAUSTIVE_MAX_N: usize = 20;
const BROWSER_CAP: u64 = 2_000_000;

fn finish(result: Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn report_json(r: &SolveReport) -> Value {
    json!({
        "opt_size": r.opt_size,
        "opt_set": r.opt_set.as_ref().map(|s| s.to_vec()),
        "expansions": r.expansions,
        "capped": r.capped,
        "dominating_sets": r.dominating_sets,
    })
}

/// Samples `G(n, p)` and solves it with branch and bound under both tie
/// rules and, for small `n`, with exhaustive search.
#[wasm_bindgen]
pub fn solve_sample(n: usize, p: f64, seed: u64) -> String {
    finish((|| {
        if n > MAX_N {
            return Err(domlab::Error::TooLarge {
                what: "demo graph",
                n,
                limit: MAX_N,
            });
        }
        let g = gnp_sample(n, p, seed)?;
        let det = bb_solve(
            &g,
            &BbConfig {
                cap: BROWSER_CAP,
                ..BbConfig::default()
            },
        )?;
        let rand = bb_solve(
            &g,
            &BbConfig {
                tie: TieRule::Random(seed),
                cap: BROWSER_CAP,
                ..BbConfig::default()
            },
        )?;
        let exhaustive = if n <= EXHAUSTIVE_MAX_N {
            report_json(&exhaustive_solve(&g)?)
        } else {
            Value::Null
        };
        let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
        Ok(json!({
            "n": n,
            "p": p,
            "seed": seed,
            "edges": edges,
            "bb": report_json(&det),
            "bb_rand": report_json(&rand),
            "exhaustive": exhaustive,
            "expected_dominating_sets": finite(expected_dominating_sets(n as u64, p)?),
        }))
    })())
}

/// Per-`n` bases of the branch-and-bound growth bounds at `steps` points of
/// `j` in `(0, j_max]`. `exhaustive_base` reads the same axis as `c` and is
/// null where `c <= 1`.
#[wasm_bindgen]
pub fn bound_curves(j_max: f64, steps: usize) -> String {
    finish((|| {
        if !(j_max > 0.0 && j_max.is_finite()) || steps == 0 || steps > 400 {
            return Err(domlab::Error::Param(format!(
                "need 0 < j_max < inf and 1 <= steps <= 400, got {j_max}, {steps}"
            )));
        }
        let mut rows = Vec::with_capacity(steps);
        for k in 1..=steps {
            let j = j_max * k as f64 / steps as f64;
            let t = tnp_upper_grid(j)?;
            rows.push(json!({
                "j": j,
                "g_plus": g_plus(j)?,
                "g_minus": g_minus(j)?,
                "tnp_grid_max": t.grid_max,
                "tnp_grid_argmax": t.grid_argmax,
                "exhaustive_base": if j > 1.0 {
                    json!(exhaustive_upper_c(j, ExhaustiveVariant::Proof)?)
                } else {
                    Value::Null
                },
            }));
        }
        Ok(Value::Array(rows))
    })())
}

/// `f_eps` sampled over `eps` in `[0, 1/2]` together with the grid check of
/// the interval table at the same `c`.
#[wasm_bindgen]
pub fn feps_profile(c: f64, steps: usize) -> String {
    finish((|| {
        if !(2..=5_000).contains(&steps) {
            return Err(domlab::Error::Param(format!(
                "steps must be in 2..=5000, got {steps}"
            )));
        }
        let curve = (0..steps)
            .map(|k| {
                let eps = 0.5 * k as f64 / (steps - 1) as f64;
                Ok([eps, f_eps(eps, c)?])
            })
            .collect::<Result<Vec<_>>>()?;
        let rows: Vec<Value> = verify_interval_table(c)?
            .into_iter()
            .map(|r| {
                json!({
                    "lo": r.lo,
                    "hi": r.hi,
                    "stated": r.stated_bound,
                    "grid_max": r.grid_max,
                    "pass": r.pass,
                })
            })
            .collect();
        Ok(json!({ "c": c, "curve": curve, "intervals": rows }))
    })())
}
