//! Closed-form complexity bounds, evaluated numerically.
//!
//! Combinatorial quantities are computed in natural-log space; a bound of
//! the form `b^n` is reported through its per-`n` base `b`. Asymptotic
//! `(1 + o(1))` factors are taken as exactly 1.

use std::f64::consts::{E, PI};
use std::fmt::Write as _;

use crate::error::{Error, Result};

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(domain(format!("probability {p} outside [0, 1]")))
    }
}

/// `ln m! - ((m + 1/2) ln m - m + ln(2π)/2)`, for `m >= 16`.
fn stirling_tail(m: f64) -> f64 {
    let r = 1.0 / m;
    let r2 = r * r;
    r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))))
}

/// `ln C(n, k)`.
pub fn log_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(domain(format!("binomial ({n} choose {k}) needs k <= n")));
    }
    let k = k.min(n - k);
    if k == 0 {
        return Ok(0.0);
    }
    if n <= 66 {
        // Exact integer; every intermediate fits in u128.
        let mut c: u128 = 1;
        for i in 0..k as u128 {
            c = c * (n as u128 - i) / (i + 1);
        }
        return Ok((c as f64).ln());
    }
    if k <= 32 {
        let (nf, kf) = (n as f64, k as f64);
        return Ok((1..=k)
            .map(|i| ((nf - kf + i as f64) / i as f64).ln())
            .sum());
    }
    let (nf, kf) = (n as f64, k as f64);
    let rest = nf - kf;
    let ratio = kf / nf;
    let entropy = -kf * ratio.ln() - rest * (-ratio).ln_1p();
    let prefactor = 0.5 * (nf / (2.0 * PI * kf * rest)).ln();
    Ok(entropy + prefactor + stirling_tail(nf) - stirling_tail(kf) - stirling_tail(rest))
}

/// Log of the bound `C(n, x)^2 · exp(-p·x·(x-1)/2)` on
/// `C(n, k) · Pr[γ > n - k]`, with `x = n - k`.
pub fn m_upper(n: u64, k: u64, p: f64) -> Result<f64> {
    if k == 0 || k > n {
        return Err(domain(format!(
            "m_upper needs 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(domain(format!("m_upper needs 0 < p <= 1, got {p}")));
    }
    let x = n - k;
    let xf = x as f64;
    Ok(2.0 * log_binomial(n, x)? - p * xf * (xf - 1.0) / 2.0)
}

/// `max_k m_upper(n, k, p) / n`: the per-`n` log growth of the bound.
pub fn m_upper_rate(n: u64, p: f64) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for k in 1..=n {
        best = best.max(m_upper(n, k, p)?);
    }
    Ok(best / n as f64)
}

fn entropy_nats(eps: f64) -> f64 {
    let term = |t: f64| if t == 0.0 { 0.0 } else { -t * t.ln() };
    term(eps) + term(1.0 - eps)
}

/// Binary entropy in bits. The endpoints take their limit value 0.
pub fn binary_entropy(eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(domain(format!("entropy argument {eps} outside [0, 1]")));
    }
    Ok(entropy_nats(eps) / std::f64::consts::LN_2)
}

/// `(ε^{-ε} (1-ε)^{-(1-ε)})^2 · exp(-c ε² / 2)`.
pub fn f_eps(eps: f64, c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(domain(format!("f_eps argument {eps} outside [0, 1]")));
    }
    if !(c > 0.0) {
        return Err(domain(format!("f_eps needs c > 0, got {c}")));
    }
    Ok((2.0 * entropy_nats(eps) - c * eps * eps / 2.0).exp())
}

/// One row of the interval table for `f_eps`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalRow {
    pub lo: f64,
    pub hi: f64,
    pub stated_bound: f64,
    pub grid_max: f64,
    pub pass: bool,
}

/// Intervals of `ε` and the claimed upper bound on `f_eps` over each, for
/// `c = 20`. The first row carries the overall 1.99 claim.
pub const INTERVAL_TABLE: [(f64, f64, f64); 9] = [
    (1.0 / 10.0, 1.0 / 8.0, 1.99),
    (1.0 / 8.0, 1.0 / 7.0, 1.943),
    (1.0 / 7.0, 0.15, 1.9),
    (0.15, 0.17, 1.988),
    (0.17, 0.19, 1.981),
    (0.19, 0.21, 1.95),
    (0.21, 0.25, 1.982),
    (0.25, 0.35, 1.955),
    (0.35, 0.5, 1.2),
];

/// Grid points per interval, endpoints included.
pub const INTERVAL_GRID: usize = 10_001;

pub fn verify_interval_table(c: f64) -> Result<Vec<IntervalRow>> {
    INTERVAL_TABLE
        .iter()
        .map(|&(lo, hi, stated_bound)| {
            let mut grid_max = f64::NEG_INFINITY;
            for i in 0..INTERVAL_GRID {
                let eps = lo + (hi - lo) * i as f64 / (INTERVAL_GRID - 1) as f64;
                grid_max = grid_max.max(f_eps(eps, c)?);
            }
            Ok(IntervalRow {
                lo,
                hi,
                stated_bound,
                grid_max,
                pass: grid_max < stated_bound,
            })
        })
        .collect()
}

/// `max{0.99, 1 - 1/(10c)}`.
pub fn sparse_lower_eps(c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(domain(format!("c must be positive, got {c}")));
    }
    Ok(f64::max(0.99, 1.0 - 1.0 / (10.0 * c)))
}

/// `(1 - e^{-2c(1-ε)})^ε`, the factor that must stay below 1/2.
pub fn sparse_lower_inner(c: f64, eps: f64) -> Result<f64> {
    if !(c > 0.0) || !(0.0..=1.0).contains(&eps) {
        return Err(domain(format!(
            "need c > 0 and eps in [0, 1], got c = {c}, eps = {eps}"
        )));
    }
    Ok((-(-2.0 * c * (1.0 - eps)).exp_m1()).powf(eps))
}

/// Per-`n` base `2 (1 - e^{-2c(1-ε)})^ε` of the bound on `Pr[γ <= n - εn]`.
pub fn sparse_lower_prob_bound(c: f64, eps: f64) -> Result<f64> {
    Ok(2.0 * sparse_lower_inner(c, eps)?)
}

/// Per-`n` base `(1/ε)^ε` of the lower bound on the running time.
pub fn sparse_lower_base(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(domain(format!("eps must lie in (0, 1], got {eps}")));
    }
    Ok((-eps * eps.ln()).exp())
}

/// `ln` of the `k`-th term `C(n, k) (1 - (1-p)^{n-k})^k`, or `None` when the
/// term is zero.
fn log_ds_term(n: u64, k: u64, p: f64) -> Option<f64> {
    if k == 0 {
        return Some(0.0);
    }
    if k == n {
        // The empty set dominates nothing once n >= 1.
        return None;
    }
    // ln(1 - (1-p)^{n-k}) with (1-p)^{n-k} = exp((n-k) ln(1-p)); at p = 1
    // the exponent is -inf and the log is 0.
    let t = (n - k) as f64 * (-p).ln_1p();
    let hit = -t.exp_m1();
    if hit <= 0.0 {
        return None;
    }
    Some(log_binomial(n, k).expect("k <= n") + k as f64 * hit.ln())
}

/// Natural log of the expected number of dominating sets of `G(n, p)`.
pub fn log_expected_dominating_sets(n: u64, p: f64) -> Result<f64> {
    check_prob(p)?;
    let terms: Vec<f64> = (0..=n).filter_map(|k| log_ds_term(n, k, p)).collect();
    let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| (t - top).exp()).sum();
    Ok(top + sum.ln())
}

/// `E[#dominating sets of G(n, p)] = Σ_k C(n, k) (1 - (1-p)^{n-k})^k`.
pub fn expected_dominating_sets(n: u64, p: f64) -> Result<f64> {
    Ok(log_expected_dominating_sets(n, p)?.exp())
}

/// Principal branch `W₀` of the Lambert W function, by Halley iteration.
pub fn lambert_w(x: f64) -> Result<f64> {
    const BRANCH: f64 = -1.0 / E;
    if x.is_nan() || x < BRANCH {
        return Err(domain(format!("Lambert W needs x >= -1/e, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    let mut w = if x >= 0.0 {
        x.ln_1p()
    } else if x < -0.3 {
        // Series about the branch point.
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else {
        x
    };
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 || w == -1.0 {
            break;
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        let next = w - step;
        if !next.is_finite() {
            break;
        }
        let done = (next - w).abs() <= 4.0 * f64::EPSILON * (1.0 + next.abs());
        w = next;
        if done {
            break;
        }
    }
    Ok(w)
}

/// `exp(1 - W(j)/j)`; equals 1 at `j = 0` (limit).
pub fn g_plus(j: f64) -> Result<f64> {
    if !(j >= 0.0) {
        return Err(domain(format!("g_plus needs j >= 0, got {j}")));
    }
    if j == 0.0 {
        return Ok(1.0);
    }
    Ok((1.0 - lambert_w(j)? / j).exp())
}

/// `exp(1/e - W(j e^{-j-1+j/e}) / j)`.
pub fn g_minus(j: f64) -> Result<f64> {
    if !(j > 0.0) {
        return Err(domain(format!("g_minus needs j > 0, got {j}")));
    }
    let arg = (j.ln() - j - 1.0 + j / E).exp();
    Ok((1.0 / E - lambert_w(arg)? / j).exp())
}

/// Grid resolution used by [`tnp_upper_grid`].
pub const TNP_GRID: usize = 10_000;

/// Grid maximization of the per-`n` base of the exhaustive-search bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TnpGrid {
    pub j: f64,
    /// `max_i f(i)` over the grid, `f(i) = (e/i)^i (1 - e^{j(i-1)})^i`.
    pub grid_max: f64,
    pub grid_argmax: f64,
    /// `1 - W(j)/j`, the root of `1 - e^{j(x-1)} = x`.
    pub closed_argmax: f64,
    /// `e^{1 - W(j)/j}`.
    pub closed_max: f64,
    /// `f` evaluated at `closed_argmax`.
    pub f_at_closed_argmax: f64,
}

/// `f(i) = (e/i)^i (1 - e^{j(i-1)})^i`, with `f(0) = 1` by continuity.
pub fn tnp_base(i: f64, j: f64) -> f64 {
    if i == 0.0 {
        return 1.0;
    }
    let hit = -(j * (i - 1.0)).exp_m1();
    if hit <= 0.0 {
        return 0.0;
    }
    (i * (1.0 - i.ln() + hit.ln())).exp()
}

/// Maximizes [`tnp_base`] over `i = k / TNP_GRID`, `k = 0..TNP_GRID`, and
/// reports it next to the closed-form stationary point.
pub fn tnp_upper_grid(j: f64) -> Result<TnpGrid> {
    if !(j > 0.0) {
        return Err(domain(format!("tnp_upper_grid needs j > 0, got {j}")));
    }
    let (mut grid_max, mut grid_argmax) = (f64::NEG_INFINITY, 0.0);
    for k in 0..TNP_GRID {
        let i = k as f64 / TNP_GRID as f64;
        let v = tnp_base(i, j);
        if v > grid_max {
            grid_max = v;
            grid_argmax = i;
        }
    }
    let closed_argmax = 1.0 - lambert_w(j)? / j;
    Ok(TnpGrid {
        j,
        grid_max,
        grid_argmax,
        closed_argmax,
        closed_max: g_plus(j)?,
        f_at_closed_argmax: tnp_base(closed_argmax, j),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExhaustiveVariant {
    /// `2 (1 - e^{-2c})^{1/3}`, as stated.
    Statement,
    /// `2 (1 - e^{-4c/3})^{1/3}`, as derived in the proof chain.
    Proof,
}

/// Per-`n` base of the exhaustive-search bound for `p = c/n`:
/// `max{1.99, 2 (1 - e^{-a c})^{1/3}}` with `a = 2` or `4/3`.
pub fn exhaustive_upper_c(c: f64, variant: ExhaustiveVariant) -> Result<f64> {
    if !(c > 1.0) {
        return Err(domain(format!("exhaustive bound needs c > 1, got {c}")));
    }
    let rate = match variant {
        ExhaustiveVariant::Statement => 2.0,
        ExhaustiveVariant::Proof => 4.0 / 3.0,
    };
    let base = 2.0 * (-(-rate * c).exp_m1()).cbrt();
    Ok(base.max(1.99))
}

/// A named evaluation, printable as a single `key=value` record.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundEval {
    pub name: &'static str,
    pub params: Vec<(&'static str, f64)>,
    pub value: f64,
    pub per_n_base: Option<f64>,
}

impl BoundEval {
    pub fn to_record(&self) -> String {
        let mut out = format!("name={}", self.name);
        for (k, v) in &self.params {
            let _ = write!(out, " {k}={v}");
        }
        let _ = write!(out, " value={}", self.value);
        match self.per_n_base {
            Some(b) => {
                let _ = write!(out, " per_n_base={b}");
            }
            None => out.push_str(" per_n_base=-"),
        }
        out
    }
}
