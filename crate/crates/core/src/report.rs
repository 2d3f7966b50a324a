use std::fmt;
use std::str::FromStr;

use crate::error::{param, Error};
use crate::graph::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Best-first branch-and-bound, deterministic tie-break.
    BranchBound,
    /// Best-first branch-and-bound, seeded random tie-break.
    BranchBoundRandom,
    Exhaustive,
    Oracle,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::BranchBound => "bb",
            Algorithm::BranchBoundRandom => "bb-rand",
            Algorithm::Exhaustive => "exhaustive",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "bb" => Ok(Algorithm::BranchBound),
            "bb-rand" => Ok(Algorithm::BranchBoundRandom),
            "exhaustive" => Ok(Algorithm::Exhaustive),
            "oracle" => Ok(Algorithm::Oracle),
            other => Err(param(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// Why a run stopped without an optimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapReason {
    Expansions,
    FrontierOverflow,
}

impl CapReason {
    pub fn as_str(self) -> &'static str {
        match self {
            CapReason::Expansions => "expansions",
            CapReason::FrontierOverflow => "frontier-overflow",
        }
    }
}

/// Outcome of one solver run.
///
/// When `capped` is false, `opt_set` is present and `opt_size == opt_set.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub opt_size: Option<usize>,
    pub opt_set: Option<VertexSet>,
    /// Frontier pops for branch-and-bound; subsets examined for exhaustive
    /// search and the oracle.
    pub expansions: u64,
    pub capped: bool,
    pub cap_reason: Option<CapReason>,
    pub tie_rule: Option<&'static str>,
    pub seed: Option<u64>,
    /// Children tested for domination (branch-and-bound only).
    pub feasibility_checks: Option<u64>,
    /// Dominating subsets encountered (exhaustive search only).
    pub dominating_sets: Option<u64>,
}

impl SolveReport {
    pub(crate) fn new(algorithm: Algorithm, n: usize) -> Self {
        Self {
            algorithm,
            n,
            opt_size: None,
            opt_set: None,
            expansions: 0,
            capped: false,
            cap_reason: None,
            tie_rule: None,
            seed: None,
            feasibility_checks: None,
            dominating_sets: None,
        }
    }

    pub(crate) fn solved(mut self, set: VertexSet) -> Self {
        self.opt_size = Some(set.len());
        self.opt_set = Some(set);
        self
    }

    pub(crate) fn capped(mut self, reason: CapReason) -> Self {
        self.capped = true;
        self.cap_reason = Some(reason);
        self
    }

    /// Single-line `key=value` record. Absent values are written as `-`,
    /// vertex lists as comma-joined ascending indices.
    pub fn to_record(&self) -> String {
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
        }
        let set = self.opt_set.as_ref().map_or_else(
            || "-".to_string(),
            |s| {
                s.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            },
        );
        let mut out = format!(
            "algorithm={} n={} opt_size={} opt_set={} expansions={} capped={} cap_reason={} tie_rule={} seed={}",
            self.algorithm,
            self.n,
            opt(&self.opt_size),
            if set.is_empty() { "-".into() } else { set },
            self.expansions,
            self.capped,
            self.cap_reason.map_or("-", CapReason::as_str),
            self.tie_rule.unwrap_or("-"),
            opt(&self.seed),
        );
        if let Some(c) = self.feasibility_checks {
            out.push_str(&format!(" feasibility_checks={c}"));
        }
        if let Some(c) = self.dominating_sets {
            out.push_str(&format!(" dominating_sets={c}"));
        }
        out
    }
}
