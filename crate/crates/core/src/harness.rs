//! Seeded experiment sweeps over `G(n, p)` regimes.
//!
//! Every trial derives its own seed from `(master seed, regime, n, trial)`,
//! so trials can run in any order, in parallel, or alone, and still produce
//! the same record. Sweeps sort their output by `(n, trial)`.

use std::fmt;
use std::io;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::branch_bound::{bb_solve, bb_solve_observed, pruning_violations, BbConfig, TieRule};
use crate::error::{param, Error, Result};
use crate::exhaustive::{count_dominating_sets, exhaustive_solve};
use crate::graph::{domination_number_oracle, gnp_sample, Graph};
use crate::report::Algorithm;

/// Largest `n` for Monte Carlo dominating-set counts.
pub const MONTE_CARLO_MAX_N: usize = 15;

/// A capped fraction above this invalidates an `n` group in growth fits.
pub const MAX_CAPPED_FRACTION: f64 = 0.2;

/// splitmix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds `fields` into `seed` one splitmix64 round per field.
pub fn mix_seed(seed: u64, fields: &[u64]) -> u64 {
    fields
        .iter()
        .fold(splitmix64(seed), |h, &f| splitmix64(h ^ f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrowthFn {
    Log,
    Sqrt,
}

impl GrowthFn {
    fn eval(self, n: f64) -> f64 {
        match self {
            GrowthFn::Log => n.ln(),
            GrowthFn::Sqrt => n.sqrt(),
        }
    }
}

/// A rule mapping `n` to an edge probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Regime {
    /// `p` independent of `n`.
    FixedP(f64),
    /// `p = c / n`.
    COverN(f64),
    /// `p = scale · f(n) / n`, clamped to `(0, 1]`.
    FOverN { f: GrowthFn, scale: f64 },
}

impl Regime {
    pub fn fixed_p(p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(param(format!("fixed-p regime needs p in (0, 1], got {p}")));
        }
        Ok(Regime::FixedP(p))
    }

    pub fn c_over_n(c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(param(format!("c-over-n regime needs c > 0, got {c}")));
        }
        Ok(Regime::COverN(c))
    }

    pub fn f_over_n(f: GrowthFn, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(param(format!(
                "f-over-n regime needs scale > 0, got {scale}"
            )));
        }
        Ok(Regime::FOverN { f, scale })
    }

    /// Builds a regime from its CSV/CLI label and parameter.
    pub fn from_label(label: &str, value: f64) -> Result<Self> {
        match label {
            "fixed-p" => Self::fixed_p(value),
            "c-over-n" => Self::c_over_n(value),
            "f-over-n-log" => Self::f_over_n(GrowthFn::Log, value),
            "f-over-n-sqrt" => Self::f_over_n(GrowthFn::Sqrt, value),
            other => Err(param(format!("unknown regime {other:?}"))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Regime::FixedP(_) => "fixed-p",
            Regime::COverN(_) => "c-over-n",
            Regime::FOverN {
                f: GrowthFn::Log, ..
            } => "f-over-n-log",
            Regime::FOverN {
                f: GrowthFn::Sqrt, ..
            } => "f-over-n-sqrt",
        }
    }

    pub fn param(&self) -> f64 {
        match *self {
            Regime::FixedP(v) | Regime::COverN(v) => v,
            Regime::FOverN { scale, .. } => scale,
        }
    }

    /// Resolved edge probability at `n`.
    pub fn p(&self, n: usize) -> f64 {
        let nf = n as f64;
        let raw = match *self {
            Regime::FixedP(p) => p,
            Regime::COverN(c) => c / nf,
            Regime::FOverN { f, scale } => scale * f.eval(nf) / nf,
        };
        raw.clamp(f64::MIN_POSITIVE, 1.0)
    }

    fn tag(&self) -> u64 {
        match self {
            Regime::FixedP(_) => 1,
            Regime::COverN(_) => 2,
            Regime::FOverN {
                f: GrowthFn::Log, ..
            } => 3,
            Regime::FOverN {
                f: GrowthFn::Sqrt, ..
            } => 4,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.label(), self.param())
    }
}

/// Seed for one trial: splitmix64 rounds over
/// `(master, regime tag, param bits, n, trial)`.
pub fn trial_seed(master_seed: u64, regime: &Regime, n: usize, trial: u32) -> u64 {
    mix_seed(
        master_seed,
        &[
            regime.tag(),
            regime.param().to_bits(),
            n as u64,
            u64::from(trial),
        ],
    )
}

/// One trial of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub regime: Regime,
    pub n: usize,
    pub p: f64,
    pub trial: u32,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub expansions: u64,
    pub opt_size: Option<usize>,
    pub capped: bool,
}

/// Everything needed to run a trial in isolation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Job {
    pub regime: Regime,
    pub n: usize,
    pub trial: u32,
    pub master_seed: u64,
    pub algorithm: Algorithm,
    pub cap: u64,
}

impl Job {
    pub fn run(&self) -> Result<ExperimentRecord> {
        run_trial(
            self.regime,
            self.n,
            self.trial,
            self.master_seed,
            self.algorithm,
            self.cap,
        )
    }
}

pub fn run_trial(
    regime: Regime,
    n: usize,
    trial: u32,
    master_seed: u64,
    algorithm: Algorithm,
    cap: u64,
) -> Result<ExperimentRecord> {
    if n == 0 {
        return Err(param("trials need n >= 1"));
    }
    let seed = trial_seed(master_seed, &regime, n, trial);
    let p = regime.p(n);
    let graph = gnp_sample(n, p, seed)?;
    let report = match algorithm {
        Algorithm::BranchBound => bb_solve(
            &graph,
            &BbConfig {
                cap,
                ..BbConfig::default()
            },
        )?,
        Algorithm::BranchBoundRandom => {
            let tie = TieRule::Random(splitmix64(seed ^ 0x7469_6562_7265_616b));
            bb_solve(
                &graph,
                &BbConfig {
                    tie,
                    cap,
                    ..BbConfig::default()
                },
            )?
        }
        Algorithm::Exhaustive => {
            let mut r = exhaustive_solve(&graph)?;
            if r.expansions > cap {
                r.capped = true;
                r.opt_size = None;
            }
            r
        }
        Algorithm::Oracle => return Err(param("the oracle is not an experiment algorithm")),
    };
    Ok(ExperimentRecord {
        regime,
        n,
        p,
        trial,
        seed,
        algorithm,
        expansions: report.expansions,
        opt_size: if report.capped { None } else { report.opt_size },
        capped: report.capped,
    })
}

/// All `(n, trial)` jobs of a sweep, in `(n, trial)` order.
pub fn sweep_jobs(
    regime: Regime,
    n_list: &[usize],
    trials: u32,
    master_seed: u64,
    algorithm: Algorithm,
    cap: u64,
) -> Vec<Job> {
    n_list
        .iter()
        .flat_map(|&n| {
            (0..trials).map(move |trial| Job {
                regime,
                n,
                trial,
                master_seed,
                algorithm,
                cap,
            })
        })
        .collect()
}

/// Runs `jobs` in parallel and returns records sorted by `(n, trial)`.
pub fn run_jobs(jobs: &[Job]) -> Result<Vec<ExperimentRecord>> {
    let mut records = jobs.par_iter().map(Job::run).collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| (r.n, r.trial));
    Ok(records)
}

pub fn sweep(
    regime: Regime,
    n_list: &[usize],
    trials: u32,
    master_seed: u64,
    algorithm: Algorithm,
    cap: u64,
) -> Result<Vec<ExperimentRecord>> {
    if n_list.is_empty() {
        return Err(param("sweep needs at least one n"));
    }
    if trials == 0 {
        return Err(param("sweep needs at least one trial"));
    }
    run_jobs(&sweep_jobs(
        regime,
        n_list,
        trials,
        master_seed,
        algorithm,
        cap,
    ))
}

/// Per-`n` summary of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct RatePoint {
    pub n: usize,
    pub trials: usize,
    pub capped: usize,
    /// Mean of `log2(expansions)` over uncapped trials.
    pub mean_log2: f64,
    /// `mean_log2 / n`.
    pub rate: f64,
    /// False when more than [`MAX_CAPPED_FRACTION`] of the trials were capped.
    pub valid: bool,
}

impl RatePoint {
    pub fn capped_fraction(&self) -> f64 {
        self.capped as f64 / self.trials as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthFit {
    pub points: Vec<RatePoint>,
    /// Least-squares slope of `mean_log2` against `n` over valid points: an
    /// estimate of `log2` of the exponential base. `None` with fewer than
    /// two valid points.
    pub slope: Option<f64>,
    pub excluded_capped: usize,
}

pub fn growth_rate(records: &[ExperimentRecord]) -> Result<GrowthFit> {
    let mut ns: Vec<usize> = records.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let mut points = Vec::with_capacity(ns.len());
    for n in ns {
        let group: Vec<&ExperimentRecord> = records.iter().filter(|r| r.n == n).collect();
        let done: Vec<f64> = group
            .iter()
            .filter(|r| !r.capped)
            .map(|r| (r.expansions as f64).log2())
            .collect();
        let capped = group.len() - done.len();
        let mean_log2 = if done.is_empty() {
            f64::NAN
        } else {
            done.iter().sum::<f64>() / done.len() as f64
        };
        points.push(RatePoint {
            n,
            trials: group.len(),
            capped,
            mean_log2,
            rate: mean_log2 / n as f64,
            valid: !done.is_empty() && capped as f64 / group.len() as f64 <= MAX_CAPPED_FRACTION,
        });
    }
    let excluded_capped = points.iter().map(|p| p.capped).sum();
    if points.iter().all(|p| p.capped == p.trials) {
        return Err(param("no estimate: every trial was capped"));
    }
    let valid: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.valid)
        .map(|p| (p.n as f64, p.mean_log2))
        .collect();
    let slope = least_squares_slope(&valid);
    Ok(GrowthFit {
        points,
        slope,
        excluded_capped,
    })
}

fn least_squares_slope(xy: &[(f64, f64)]) -> Option<f64> {
    if xy.len() < 2 {
        return None;
    }
    let k = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / k;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Sample mean and standard error of the number of dominating sets of
/// `G(n, p)`.
pub fn monte_carlo_expected_ds(
    n: usize,
    p: f64,
    samples: u32,
    master_seed: u64,
) -> Result<(f64, f64)> {
    if n > MONTE_CARLO_MAX_N {
        return Err(Error::TooLarge {
            what: "Monte Carlo dominating-set count",
            n,
            limit: MONTE_CARLO_MAX_N,
        });
    }
    if samples == 0 {
        return Err(param("need at least one sample"));
    }
    let counts = (0..samples)
        .into_par_iter()
        .map(|i| {
            let g = gnp_sample(
                n,
                p,
                mix_seed(master_seed, &[n as u64, p.to_bits(), u64::from(i)]),
            )?;
            count_dominating_sets(&g).map(|c| c as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let k = counts.len() as f64;
    let mean = counts.iter().sum::<f64>() / k;
    if counts.len() == 1 {
        return Ok((mean, 0.0));
    }
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (k - 1.0);
    Ok((mean, (var / k).sqrt()))
}

pub const CSV_HEADER: [&str; 10] = [
    "regime",
    "param",
    "n",
    "p",
    "trial",
    "seed",
    "algorithm",
    "expansions",
    "opt_size",
    "capped",
];

/// 17 significant digits.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv_to<W: io::Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.regime.label().to_string(),
            fmt_f64(r.regime.param()),
            r.n.to_string(),
            fmt_f64(r.p),
            r.trial.to_string(),
            r.seed.to_string(),
            r.algorithm.to_string(),
            r.expansions.to_string(),
            r.opt_size.map(|s| s.to_string()).unwrap_or_default(),
            r.capped.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(records: &[ExperimentRecord], path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv_to(records, io::BufWriter::new(file))
}

pub fn read_csv_from<R: io::Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(input);
    let mut rows = rd.records();
    match rows.next() {
        Some(header) => {
            let header = header?;
            if header.iter().ne(CSV_HEADER) {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("unexpected header {:?}", header.iter().collect::<Vec<_>>()),
                });
            }
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "missing header".into(),
            })
        }
    }
    let mut out = Vec::new();
    for row in rows {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        out.push(parse_row(&row).map_err(|msg| Error::Parse { line, msg })?);
    }
    Ok(out)
}

fn parse_row(row: &csv::StringRecord) -> std::result::Result<ExperimentRecord, String> {
    if row.len() != CSV_HEADER.len() {
        return Err(format!(
            "expected {} fields, got {}",
            CSV_HEADER.len(),
            row.len()
        ));
    }
    fn field<T: FromStr>(row: &csv::StringRecord, i: usize) -> std::result::Result<T, String> {
        row[i]
            .parse()
            .map_err(|_| format!("bad {} value {:?}", CSV_HEADER[i], &row[i]))
    }
    let regime = Regime::from_label(&row[0], field(row, 1)?).map_err(|e| e.to_string())?;
    let opt_size = if row[8].is_empty() {
        None
    } else {
        Some(field(row, 8)?)
    };
    let capped: bool = field(row, 9)?;
    if capped && opt_size.is_some() {
        return Err("capped row carries an opt_size".into());
    }
    Ok(ExperimentRecord {
        regime,
        n: field(row, 2)?,
        p: field(row, 3)?,
        trial: field(row, 4)?,
        seed: field(row, 5)?,
        algorithm: row[6].parse().map_err(|e: Error| e.to_string())?,
        expansions: field(row, 7)?,
        opt_size,
        capped,
    })
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<ExperimentRecord>> {
    read_csv_from(io::BufReader::new(std::fs::File::open(path)?))
}

/// Seed of the fixed random battery used by [`verify`].
pub const BATTERY_SEED: u64 = 0x646f_6d6c_6162_0001;
pub const BATTERY_PROBS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
/// Random-tie seeds checked per graph.
pub const VERIFY_TIE_SEEDS: [u64; 3] = [11, 22, 33];

/// The `i`-th graph of the random battery: `n = 6 + i mod 7`,
/// `p = BATTERY_PROBS[(i / 7) mod 5]`.
pub fn battery_graph(i: usize) -> Graph {
    let n = 6 + i % 7;
    let p = BATTERY_PROBS[(i / 7) % BATTERY_PROBS.len()];
    gnp_sample(n, p, mix_seed(BATTERY_SEED, &[i as u64])).expect("battery p is valid")
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GraphCheck {
    pub gamma: usize,
    /// Human-readable disagreements with the oracle.
    pub mismatches: Vec<String>,
    pub pruning_violations: usize,
}

/// Runs every solver on `g` and compares against the oracle: branch-and-bound
/// with the deterministic rule and each of [`VERIFY_TIE_SEEDS`], and
/// exhaustive search. Also counts expanded nodes with potential above `γ`.
pub fn check_graph(g: &Graph) -> Result<GraphCheck> {
    let (gamma, _) = domination_number_oracle(g)?;
    let mut check = GraphCheck {
        gamma,
        ..GraphCheck::default()
    };
    let rules = std::iter::once(TieRule::Deterministic)
        .chain(VERIFY_TIE_SEEDS.iter().map(|&s| TieRule::Random(s)));
    for tie in rules {
        let mut violations = 0;
        let cfg = BbConfig {
            tie,
            ..BbConfig::default()
        };
        let r = bb_solve_observed(g, &cfg, |node| {
            violations += pruning_violations([node], gamma);
        })?;
        check.pruning_violations += violations;
        let ok =
            r.opt_size == Some(gamma) && r.opt_set.as_ref().is_some_and(|s| g.is_dominating(s));
        if !ok {
            check.mismatches.push(format!(
                "bb {tie:?}: {:?} vs oracle {gamma} on {g:?}",
                r.opt_size
            ));
        }
    }
    let r = exhaustive_solve(g)?;
    if r.opt_size != Some(gamma) {
        check.mismatches.push(format!(
            "exhaustive: {:?} vs oracle {gamma} on {g:?}",
            r.opt_size
        ));
    }
    Ok(check)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifySummary {
    /// `(n, graphs checked)` for the exhaustive labeled-graph sweep.
    pub exhaustive_counts: Vec<(usize, usize)>,
    pub battery_checked: usize,
    pub mismatches: Vec<String>,
    pub pruning_violations: usize,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.pruning_violations == 0
    }
}

/// Checks all labeled graphs on `1..=max_n` vertices (`max_n <= 6`) and the
/// first `battery` graphs of the random battery.
pub fn verify(max_n: usize, battery: usize) -> Result<VerifySummary> {
    if max_n > 6 {
        return Err(Error::TooLarge {
            what: "exhaustive labeled-graph verification",
            n: max_n,
            limit: 6,
        });
    }
    let mut graphs: Vec<(Option<usize>, Graph)> = Vec::new();
    let mut summary = VerifySummary::default();
    for n in 1..=max_n {
        let pairs = n * (n - 1) / 2;
        let count = 1usize << pairs;
        summary.exhaustive_counts.push((n, count));
        graphs.extend((0..count as u64).map(|m| (Some(n), Graph::from_pair_mask(n, m))));
    }
    graphs.extend((0..battery).map(|i| (None, battery_graph(i))));
    summary.battery_checked = battery;
    let checks = graphs
        .par_iter()
        .map(|(_, g)| check_graph(g))
        .collect::<Result<Vec<_>>>()?;
    for c in checks {
        summary.mismatches.extend(c.mismatches);
        summary.pruning_violations += c.pruning_violations;
    }
    Ok(summary)
}
