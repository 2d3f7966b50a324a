//! `domlab` command line.
//!
//! Exit codes: 0 success, 1 usage or input error (and a failed `verify`),
//! 2 solver capped.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bounds::{self, BoundEval, ExhaustiveVariant};
use crate::branch_bound::{bb_solve, BbConfig, TieRule, DEFAULT_CAP};
use crate::error::{param, Result};
use crate::exhaustive::exhaustive_solve;
use crate::graph::{gnp_sample, oracle_counted, Graph};
use crate::harness::{self, Regime};
use crate::report::{Algorithm, SolveReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CAPPED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "domlab",
    version,
    about = "Exact minimum dominating set solvers and G(n,p) complexity lab"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample G(n,p) and write it in edge-list form.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve minimum dominating set on a graph file.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "bb")]
        algo: SolveAlgo,
        #[arg(long, value_enum, default_value = "det")]
        tie: Tie,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        /// Abort when the frontier holds more nodes than this.
        #[arg(long)]
        frontier_limit: Option<usize>,
    },
    /// Evaluate a closed-form bound.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Run a seeded sweep and write one CSV row per trial.
    Experiment {
        #[arg(long, value_enum)]
        regime: RegimeArg,
        #[arg(long)]
        param: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "bb")]
        algo: ExperimentAlgo,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-check all solvers against the oracle.
    Verify {
        /// Check every labeled graph on up to this many vertices (<= 6).
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Number of graphs from the fixed random battery (n in 6..=12).
        #[arg(long, default_value_t = 300)]
        battery: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SolveAlgo {
    Bb,
    Exhaustive,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Tie {
    Det,
    Rand,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExperimentAlgo {
    Bb,
    BbRand,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RegimeArg {
    FixedP,
    COverN,
    FOverNLog,
    FOverNSqrt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Variant {
    Statement,
    Proof,
}

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    /// ln C(n, k).
    LogBinomial {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// ln of C(n,x)^2 exp(-p x (x-1)/2), x = n - k.
    MUpper {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: f64,
    },
    /// max over k of m-upper, divided by n.
    MRate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
    },
    /// Binary entropy H(eps) in bits.
    Entropy {
        #[arg(long)]
        eps: f64,
    },
    Feps {
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 20.0)]
        c: f64,
    },
    /// Grid check of the f(eps) interval table.
    FepsTable {
        #[arg(long, default_value_t = 20.0)]
        c: f64,
    },
    /// Lower-bound quantities for p = c/n.
    SparseLower {
        #[arg(long)]
        c: f64,
        /// Defaults to max{0.99, 1 - 1/(10c)}.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Expected number of dominating sets of G(n,p).
    ExpectedDs {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
    },
    LambertW {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },
    Gplus {
        #[arg(long)]
        j: f64,
    },
    Gminus {
        #[arg(long)]
        j: f64,
    },
    /// Grid maximum of the exhaustive-search base against its closed form.
    Tnp {
        #[arg(long)]
        j: f64,
    },
    /// Exhaustive-search base for p = c/n.
    ExhaustiveUpper {
        #[arg(long)]
        c: f64,
        #[arg(long, value_enum, default_value = "proof")]
        variant: Variant,
    },
}

/// Parses `args` (program name first) and runs the command, writing records
/// to `out` and configuration echoes and errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_ERROR;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let _ = writeln!(err, "config: {:?}", cli.command);
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Gen {
            n,
            p,
            seed,
            out: path,
        } => {
            let g = gnp_sample(n, p, seed)?;
            std::fs::write(&path, g.to_text())?;
            writeln!(out, "n={} m={}", g.n(), g.edge_count())?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            input,
            algo,
            tie,
            seed,
            cap,
            frontier_limit,
        } => {
            let text = std::fs::read_to_string(&input)?;
            let g: Graph = text.parse()?;
            let report = solve(&g, algo, tie, seed, cap, frontier_limit)?;
            writeln!(out, "{}", report.to_record())?;
            Ok(if report.capped { EXIT_CAPPED } else { EXIT_OK })
        }
        Command::Bounds(b) => {
            for line in bounds_records(b)? {
                writeln!(out, "{line}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Experiment {
            regime,
            param: value,
            n_list,
            trials,
            seed,
            algo,
            cap,
            out: path,
        } => {
            let regime = match regime {
                RegimeArg::FixedP => Regime::fixed_p(value)?,
                RegimeArg::COverN => Regime::c_over_n(value)?,
                RegimeArg::FOverNLog => Regime::f_over_n(harness::GrowthFn::Log, value)?,
                RegimeArg::FOverNSqrt => Regime::f_over_n(harness::GrowthFn::Sqrt, value)?,
            };
            let algorithm = match algo {
                ExperimentAlgo::Bb => Algorithm::BranchBound,
                ExperimentAlgo::BbRand => Algorithm::BranchBoundRandom,
                ExperimentAlgo::Exhaustive => Algorithm::Exhaustive,
            };
            for &n in &n_list {
                writeln!(err, "config: n={n} p={}", regime.p(n))?;
            }
            let records = harness::sweep(regime, &n_list, trials, seed, algorithm, cap)?;
            harness::write_csv(&records, &path)?;
            write_summary(&records, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { max_n, battery } => {
            let s = harness::verify(max_n, battery)?;
            for (n, count) in &s.exhaustive_counts {
                writeln!(out, "verify n={n} graphs={count}")?;
            }
            writeln!(out, "verify battery={}", s.battery_checked)?;
            for m in &s.mismatches {
                writeln!(out, "mismatch {m}")?;
            }
            writeln!(
                out,
                "verify mismatches={} pruning_violations={} result={}",
                s.mismatches.len(),
                s.pruning_violations,
                if s.passed() { "pass" } else { "fail" }
            )?;
            Ok(if s.passed() { EXIT_OK } else { EXIT_ERROR })
        }
    }
}

fn solve(
    g: &Graph,
    algo: SolveAlgo,
    tie: Tie,
    seed: Option<u64>,
    cap: u64,
    frontier_limit: Option<usize>,
) -> Result<SolveReport> {
    match algo {
        SolveAlgo::Bb => {
            let tie = match (tie, seed) {
                (Tie::Det, _) => TieRule::Deterministic,
                (Tie::Rand, Some(s)) => TieRule::Random(s),
                (Tie::Rand, None) => return Err(param("--tie rand requires --seed")),
            };
            bb_solve(
                g,
                &BbConfig {
                    tie,
                    cap,
                    frontier_limit,
                },
            )
        }
        SolveAlgo::Exhaustive => exhaustive_solve(g),
        SolveAlgo::Oracle => {
            let (_, set, examined) = oracle_counted(g)?;
            let mut r = SolveReport::new(Algorithm::Oracle, g.n());
            r.expansions = examined;
            Ok(r.solved(set))
        }
    }
}

fn eval(
    name: &'static str,
    params: Vec<(&'static str, f64)>,
    value: f64,
    base: Option<f64>,
) -> String {
    BoundEval {
        name,
        params,
        value,
        per_n_base: base,
    }
    .to_record()
}

fn bounds_records(cmd: BoundsCmd) -> Result<Vec<String>> {
    use BoundsCmd::*;
    let rec = match cmd {
        LogBinomial { n, k } => eval(
            "log-binomial",
            vec![("n", n as f64), ("k", k as f64)],
            bounds::log_binomial(n, k)?,
            None,
        ),
        MUpper { n, k, p } => {
            let v = bounds::m_upper(n, k, p)?;
            eval(
                "m-upper",
                vec![("n", n as f64), ("k", k as f64), ("p", p)],
                v,
                Some((v / n as f64).exp()),
            )
        }
        MRate { n, p } => {
            let r = bounds::m_upper_rate(n, p)?;
            eval("m-rate", vec![("n", n as f64), ("p", p)], r, Some(r.exp()))
        }
        Entropy { eps } => eval(
            "entropy",
            vec![("eps", eps)],
            bounds::binary_entropy(eps)?,
            None,
        ),
        Feps { eps, c } => {
            let v = bounds::f_eps(eps, c)?;
            eval("feps", vec![("eps", eps), ("c", c)], v, Some(v))
        }
        FepsTable { c } => {
            return Ok(bounds::verify_interval_table(c)?
                .into_iter()
                .map(|row| {
                    format!(
                        "{} pass={}",
                        eval(
                            "feps-interval",
                            vec![
                                ("c", c),
                                ("lo", row.lo),
                                ("hi", row.hi),
                                ("stated", row.stated_bound)
                            ],
                            row.grid_max,
                            Some(row.grid_max),
                        ),
                        row.pass
                    )
                })
                .collect())
        }
        SparseLower { c, eps } => {
            let eps = match eps {
                Some(e) => e,
                None => bounds::sparse_lower_eps(c)?,
            };
            let inner = bounds::sparse_lower_inner(c, eps)?;
            return Ok(vec![
                eval(
                    "sparse-lower-eps",
                    vec![("c", c)],
                    bounds::sparse_lower_eps(c)?,
                    None,
                ),
                format!(
                    "{} inner={inner}",
                    eval(
                        "sparse-lower-prob-bound",
                        vec![("c", c), ("eps", eps)],
                        bounds::sparse_lower_prob_bound(c, eps)?,
                        Some(bounds::sparse_lower_prob_bound(c, eps)?),
                    )
                ),
                eval(
                    "sparse-lower-base",
                    vec![("eps", eps)],
                    bounds::sparse_lower_base(eps)?,
                    Some(bounds::sparse_lower_base(eps)?),
                ),
            ]);
        }
        ExpectedDs { n, p } => {
            let ln = bounds::log_expected_dominating_sets(n, p)?;
            let base = (n > 0).then(|| (ln / n as f64).exp());
            format!(
                "{} log_value={ln}",
                eval(
                    "expected-ds",
                    vec![("n", n as f64), ("p", p)],
                    ln.exp(),
                    base
                )
            )
        }
        LambertW { x } => eval("lambert-w", vec![("x", x)], bounds::lambert_w(x)?, None),
        Gplus { j } => {
            let v = bounds::g_plus(j)?;
            eval("gplus", vec![("j", j)], v, Some(v))
        }
        Gminus { j } => {
            let v = bounds::g_minus(j)?;
            eval("gminus", vec![("j", j)], v, Some(v))
        }
        Tnp { j } => {
            let t = bounds::tnp_upper_grid(j)?;
            format!(
                "{} argmax={} closed_argmax={} closed_max={}",
                eval("tnp", vec![("j", j)], t.grid_max, Some(t.grid_max)),
                t.grid_argmax,
                t.closed_argmax,
                t.closed_max
            )
        }
        ExhaustiveUpper { c, variant } => {
            let (label, v) = match variant {
                Variant::Statement => ("statement", ExhaustiveVariant::Statement),
                Variant::Proof => ("proof", ExhaustiveVariant::Proof),
            };
            let b = bounds::exhaustive_upper_c(c, v)?;
            format!(
                "{} variant={label}",
                eval("exhaustive-upper", vec![("c", c)], b, Some(b))
            )
        }
    };
    Ok(vec![rec])
}

fn write_summary(records: &[harness::ExperimentRecord], out: &mut dyn Write) -> Result<()> {
    match harness::growth_rate(records) {
        Ok(fit) => {
            for p in &fit.points {
                writeln!(
                    out,
                    "summary n={} trials={} capped={} capped_fraction={} mean_log2_expansions={} rate={} valid={}",
                    p.n,
                    p.trials,
                    p.capped,
                    p.capped_fraction(),
                    p.mean_log2,
                    p.rate,
                    p.valid
                )?;
            }
            match fit.slope {
                Some(s) => writeln!(
                    out,
                    "summary slope={s} excluded_capped={}",
                    fit.excluded_capped
                )?,
                None => writeln!(
                    out,
                    "summary slope=- excluded_capped={}",
                    fit.excluded_capped
                )?,
            }
        }
        Err(_) => writeln!(out, "summary slope=- no_estimate=all-capped")?,
    }
    Ok(())
}
