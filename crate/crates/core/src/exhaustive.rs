//! Naive exhaustive search: every subset of `V` is examined.

use crate::error::{param, Error, Result};
use crate::graph::{Graph, VertexSet, ORACLE_MAX_N};
use crate::report::{Algorithm, SolveReport};

/// Coverage lookup over subset masks: the low `split` bits and the high
/// bits each index a precomputed union of closed neighborhoods.
struct CoverTable {
    split: usize,
    low: Vec<u32>,
    high: Vec<u32>,
}

impl CoverTable {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let closed = g.closed_masks();
        let split = n / 2;
        let build = |offset: usize, bits: usize| {
            let mut table = vec![0u32; 1 << bits];
            for mask in 1..table.len() {
                let b = mask.trailing_zeros() as usize;
                table[mask] = table[mask & (mask - 1)] | closed[offset + b];
            }
            table
        };
        Self {
            split,
            low: build(0, split),
            high: build(split, n - split),
        }
    }

    #[inline]
    fn covered(&self, mask: u32) -> u32 {
        self.low[(mask & ((1 << self.split) - 1)) as usize]
            | self.high[(mask >> self.split) as usize]
    }
}

fn guard(g: &Graph, what: &'static str) -> Result<()> {
    if g.n() > ORACLE_MAX_N {
        return Err(Error::TooLarge {
            what,
            n: g.n(),
            limit: ORACLE_MAX_N,
        });
    }
    Ok(())
}

/// Examines all `2^n` subsets in increasing mask order (bit `v` = vertex
/// `v`) and keeps the first one of minimum size, which is the smallest mask
/// among the minimum dominating sets.
///
/// `expansions` is the number of subsets examined (`2^n`);
/// `dominating_sets` the number of those that dominate.
pub fn exhaustive_solve(g: &Graph) -> Result<SolveReport> {
    guard(g, "exhaustive search")?;
    let n = g.n();
    if n == 0 {
        return Err(param("exhaustive search needs n >= 1"));
    }
    let table = CoverTable::new(g);
    let full: u32 = (1u32 << n) - 1;
    let mut best = full;
    let mut best_size = n as u32;
    let mut dominating = 0u64;
    for mask in 0..=full {
        if table.covered(mask) == full {
            dominating += 1;
            if mask.count_ones() < best_size {
                best_size = mask.count_ones();
                best = mask;
            }
        }
    }
    let mut report = SolveReport::new(Algorithm::Exhaustive, n);
    report.expansions = 1u64 << n;
    report.dominating_sets = Some(dominating);
    Ok(report.solved(VertexSet::from_mask(n, best as u64)))
}

/// Exact number of dominating subsets of `V`.
pub fn count_dominating_sets(g: &Graph) -> Result<u64> {
    guard(g, "dominating-set count")?;
    let n = g.n();
    if n == 0 {
        // The empty set dominates the empty graph.
        return Ok(1);
    }
    let table = CoverTable::new(g);
    let full: u32 = (1u32 << n) - 1;
    Ok((0..=full).filter(|&m| table.covered(m) == full).count() as u64)
}
