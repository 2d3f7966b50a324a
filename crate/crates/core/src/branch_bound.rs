//! Best-first branch-and-bound for minimum dominating set.
//!
//! Vertices are decided in index order. A node at depth `δ` fixes
//! `x_0..x_{δ-1}`; every undecided coordinate is implicitly 1, so the
//! node's implied vertex set is `{i < δ : x_i = 1} ∪ {δ, ..., n-1}`. Since
//! supersets of dominating sets dominate, a node is feasible iff its implied
//! set dominates.
//!
//! The potential `u(x, δ) = |x| - n + δ` counts the vertices already
//! committed among the decided coordinates. It never decreases from parent
//! to child, so the first depth-`n` node popped from a min-potential
//! frontier is optimal.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::report::{Algorithm, CapReason, SolveReport};

/// Default expansion cap.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Largest graph for which [`classify_nodes`] materializes the whole tree.
pub const CLASSIFY_MAX_N: usize = 15;

/// A branch-and-bound tree node.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BbNode {
    set: VertexSet,
    depth: usize,
}

impl BbNode {
    /// Depth 0, every vertex taken.
    pub fn root(n: usize) -> Self {
        Self {
            set: VertexSet::full(n),
            depth: 0,
        }
    }

    pub fn from_prefix(n: usize, prefix: &[bool]) -> Result<Self> {
        if prefix.len() > n {
            return Err(param(format!(
                "prefix of length {} exceeds n = {n}",
                prefix.len()
            )));
        }
        let mut set = VertexSet::full(n);
        for (i, &taken) in prefix.iter().enumerate() {
            if !taken {
                set.remove(i);
            }
        }
        Ok(Self {
            set,
            depth: prefix.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.set.n()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Decided coordinates `x_0..x_{δ-1}`.
    pub fn prefix(&self) -> Vec<bool> {
        (0..self.depth).map(|i| self.set.contains(i)).collect()
    }

    /// The vertex set this node stands for.
    pub fn implied_set(&self) -> &VertexSet {
        &self.set
    }

    /// `|x| - n + δ`, with `|x|` counted over the full vector.
    pub fn potential(&self) -> usize {
        self.set.len() + self.depth - self.n()
    }

    pub fn is_complete(&self) -> bool {
        self.depth == self.n()
    }

    /// `(left, right)`: `x_δ = 1` and `x_δ = 0`.
    pub fn children(&self) -> Result<(BbNode, BbNode)> {
        if self.is_complete() {
            return Err(param("a depth-n node has no children"));
        }
        let left = BbNode {
            set: self.set.clone(),
            depth: self.depth + 1,
        };
        let mut right = left.clone();
        right.set.remove(self.depth);
        Ok((left, right))
    }

    /// Compact key for trees with `n <= 64`: `(depth, prefix bits)`.
    fn key(&self) -> (usize, u64) {
        let low = self.set.words().first().copied().unwrap_or(0);
        let mask = if self.depth >= 64 {
            u64::MAX
        } else {
            (1u64 << self.depth) - 1
        };
        (self.depth, low & mask)
    }
}

impl std::fmt::Debug for BbNode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let bits: String = (0..self.n())
            .map(|i| if self.set.contains(i) { '1' } else { '0' })
            .collect();
        write!(f, "({{{bits}}}, {})", self.depth)
    }
}

pub fn potential(node: &BbNode) -> usize {
    node.potential()
}

pub fn node_set(node: &BbNode) -> VertexSet {
    node.implied_set().clone()
}

pub fn children(node: &BbNode) -> Result<(BbNode, BbNode)> {
    node.children()
}

/// Whether dropping vertex `v` from the dominating set `set` keeps it
/// dominating. Only `N[v]` can lose its last dominator.
fn still_dominating_without(g: &Graph, set: &VertexSet, v: usize) -> bool {
    let s = set.words();
    let check = |w: usize| {
        if w != v && set.contains(w) {
            return true;
        }
        g.row(w).iter().zip(s).enumerate().any(|(i, (r, sw))| {
            let mut m = r & sw;
            if i == v / 64 {
                m &= !(1 << (v % 64));
            }
            m != 0
        })
    };
    check(v) && g.neighbors(v).iter().all(check)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieRule {
    /// Deeper first, then right child before left, then insertion order.
    Deterministic,
    /// Uniformly random order among equal potentials, seeded.
    Random(u64),
}

impl TieRule {
    pub fn name(self) -> &'static str {
        match self {
            TieRule::Deterministic => "det",
            TieRule::Random(_) => "rand",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BbConfig {
    pub tie: TieRule,
    /// Maximum number of frontier pops.
    pub cap: u64,
    /// Abort with [`CapReason::FrontierOverflow`] when the frontier grows past this.
    pub frontier_limit: Option<usize>,
}

impl Default for BbConfig {
    fn default() -> Self {
        Self {
            tie: TieRule::Deterministic,
            cap: DEFAULT_CAP,
            frontier_limit: None,
        }
    }
}

struct Entry {
    potential: usize,
    tie: u64,
    seq: u64,
    node: BbNode,
}

impl Entry {
    fn rank(&self) -> (usize, u64, u64) {
        (self.potential, self.tie, self.seq)
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank()
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // BinaryHeap is a max-heap; the smallest rank must come out first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.rank().cmp(&self.rank())
    }
}

/// Explorable nodes keyed by `(potential, tie key, insertion sequence)`.
pub struct Frontier {
    heap: BinaryHeap<Entry>,
    seq: u64,
    rng: Option<ChaCha8Rng>,
}

impl Frontier {
    pub fn new(tie: TieRule) -> Self {
        Self {
            heap: BinaryHeap::new(),
            seq: 0,
            rng: match tie {
                TieRule::Deterministic => None,
                TieRule::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
        }
    }

    pub fn push(&mut self, node: BbNode, is_right: bool) {
        let tie = match &mut self.rng {
            Some(rng) => rng.next_u64(),
            None => ((node.n() - node.depth) as u64) << 1 | u64::from(!is_right),
        };
        self.seq += 1;
        self.heap.push(Entry {
            potential: node.potential(),
            tie,
            seq: self.seq,
            node,
        });
    }

    pub fn pop(&mut self) -> Option<BbNode> {
        self.heap.pop().map(|e| e.node)
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &BbNode> {
        self.heap.iter().map(|e| &e.node)
    }
}

/// Result of a single [`Search::step`].
#[derive(Debug)]
pub enum Step {
    /// An interior node was expanded and its feasible children queued.
    Expanded(BbNode),
    /// A depth-n node was popped; its implied set is a minimum dominating set.
    Solved(BbNode),
    Capped(CapReason),
}

/// Stepwise best-first search, one frontier pop per [`step`](Search::step).
pub struct Search<'g> {
    graph: &'g Graph,
    config: BbConfig,
    frontier: Frontier,
    expansions: u64,
    feasibility_checks: u64,
    last: Option<Step>,
    finished: bool,
}

impl<'g> Search<'g> {
    pub fn new(graph: &'g Graph, config: BbConfig) -> Result<Self> {
        if graph.n() == 0 {
            return Err(param("branch-and-bound needs n >= 1"));
        }
        if config.cap == 0 {
            return Err(param("expansion cap must be at least 1"));
        }
        let mut frontier = Frontier::new(config.tie);
        frontier.push(BbNode::root(graph.n()), false);
        Ok(Self {
            graph,
            config,
            frontier,
            expansions: 0,
            feasibility_checks: 0,
            last: None,
            finished: false,
        })
    }

    pub fn expansions(&self) -> u64 {
        self.expansions
    }

    pub fn feasibility_checks(&self) -> u64 {
        self.feasibility_checks
    }

    pub fn frontier(&self) -> &Frontier {
        &self.frontier
    }

    /// Pops one node. Once the search has solved or capped, keeps
    /// returning that terminal step.
    pub fn step(&mut self) -> &Step {
        if !self.finished {
            let step = self.advance();
            self.finished = !matches!(step, Step::Expanded(_));
            self.last = Some(step);
        }
        self.last.as_ref().expect("step recorded")
    }

    fn advance(&mut self) -> Step {
        if self.expansions >= self.config.cap {
            return Step::Capped(CapReason::Expansions);
        }
        // The frontier always holds the left spine of any popped node, so
        // it cannot run dry before a complete node is reached.
        let node = self.frontier.pop().expect("frontier never empties");
        self.expansions += 1;
        if node.is_complete() {
            return Step::Solved(node);
        }
        let (left, right) = node.children().expect("node is not complete");
        self.frontier.push(left, false);
        self.feasibility_checks += 1;
        if still_dominating_without(self.graph, node.implied_set(), node.depth()) {
            self.frontier.push(right, true);
        }
        if let Some(limit) = self.config.frontier_limit {
            if self.frontier.len() > limit {
                return Step::Capped(CapReason::FrontierOverflow);
            }
        }
        Step::Expanded(node)
    }

    fn finish(&mut self) -> Step {
        loop {
            let step = self.advance();
            if !matches!(step, Step::Expanded(_)) {
                return step;
            }
        }
    }
}

impl Step {
    fn node(&self) -> Option<&BbNode> {
        match self {
            Step::Expanded(node) | Step::Solved(node) => Some(node),
            Step::Capped(_) => None,
        }
    }
}

fn report_for(graph: &Graph, config: &BbConfig) -> SolveReport {
    let (algorithm, seed) = match config.tie {
        TieRule::Deterministic => (Algorithm::BranchBound, None),
        TieRule::Random(seed) => (Algorithm::BranchBoundRandom, Some(seed)),
    };
    let mut report = SolveReport::new(algorithm, graph.n());
    report.tie_rule = Some(config.tie.name());
    report.seed = seed;
    report
}

pub fn bb_solve(graph: &Graph, config: &BbConfig) -> Result<SolveReport> {
    bb_solve_observed(graph, config, |_| {})
}

/// [`bb_solve`] that hands every expanded node to `observer`, in pop order.
pub fn bb_solve_observed(
    graph: &Graph,
    config: &BbConfig,
    mut observer: impl FnMut(&BbNode),
) -> Result<SolveReport> {
    let mut search = Search::new(graph, *config)?;
    let outcome = loop {
        let step = search.advance();
        if let Some(node) = step.node() {
            observer(node);
        }
        if !matches!(step, Step::Expanded(_)) {
            break step;
        }
    };
    Ok(into_report(graph, config, &search, outcome))
}

fn into_report(
    graph: &Graph,
    config: &BbConfig,
    search: &Search<'_>,
    outcome: Step,
) -> SolveReport {
    let mut report = report_for(graph, config);
    report.expansions = search.expansions;
    report.feasibility_checks = Some(search.feasibility_checks);
    match outcome {
        Step::Solved(node) => report.solved(node.set),
        Step::Capped(reason) => report.capped(reason),
        Step::Expanded(_) => unreachable!("search stopped mid-run"),
    }
}

impl Search<'_> {
    /// Runs to completion and produces the report.
    pub fn run(mut self) -> SolveReport {
        let outcome = match self.last.take() {
            Some(terminal) if self.finished => terminal,
            _ => self.finish(),
        };
        into_report(self.graph, &self.config, &self, outcome)
    }
}

/// Number of expanded nodes whose potential exceeds `gamma`.
pub fn pruning_violations<'a>(
    expanded: impl IntoIterator<Item = &'a BbNode>,
    gamma: usize,
) -> usize {
    expanded
        .into_iter()
        .filter(|node| node.potential() > gamma)
        .count()
}

/// Sizes of the four node categories over the full binary tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NodeCounts {
    /// Visited nodes (feasible by construction).
    pub visited: usize,
    /// Nodes whose implied set does not dominate.
    pub infeasible: usize,
    /// Feasible, unvisited children of visited nodes.
    pub explorable: usize,
    /// Feasible nodes whose parent has not been visited.
    pub hidden: usize,
}

impl NodeCounts {
    pub fn total(&self) -> usize {
        self.visited + self.infeasible + self.explorable + self.hidden
    }
}

/// Partitions all `2^{n+1} - 1` tree nodes into the four categories, given
/// the set of visited nodes.
pub fn classify_nodes<'a>(
    graph: &Graph,
    visited: impl IntoIterator<Item = &'a BbNode>,
) -> Result<NodeCounts> {
    let n = graph.n();
    if n > CLASSIFY_MAX_N {
        return Err(Error::TooLarge {
            what: "node classification",
            n,
            limit: CLASSIFY_MAX_N,
        });
    }
    let visited: HashSet<(usize, u64)> = visited.into_iter().map(BbNode::key).collect();
    let mut counts = NodeCounts::default();
    for depth in 0..=n {
        for bits in 0..1u64 << depth {
            let prefix: Vec<bool> = (0..depth).map(|i| bits >> i & 1 == 1).collect();
            let node = BbNode::from_prefix(n, &prefix)?;
            if !graph.is_dominating(node.implied_set()) {
                counts.infeasible += 1;
            } else if visited.contains(&(depth, bits)) {
                counts.visited += 1;
            } else if depth > 0 && visited.contains(&(depth - 1, bits & !(1 << (depth - 1)))) {
                counts.explorable += 1;
            } else {
                counts.hidden += 1;
            }
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{domination_number_oracle, gnp_sample};

    fn node(n: usize, prefix: &[u8]) -> BbNode {
        let p: Vec<bool> = prefix.iter().map(|&b| b == 1).collect();
        BbNode::from_prefix(n, &p).unwrap()
    }

    fn det() -> BbConfig {
        BbConfig::default()
    }

    #[test]
    fn potential_examples() {
        assert_eq!(potential(&node(3, &[1])), 1);
        assert_eq!(potential(&node(3, &[0])), 0);
        assert_eq!(potential(&BbNode::root(3)), 0);
        assert_eq!(potential(&node(3, &[0, 1, 0])), 1);
    }

    #[test]
    fn node_set_examples() {
        assert_eq!(node_set(&BbNode::root(3)).to_vec(), vec![0, 1, 2]);
        assert_eq!(node_set(&node(3, &[0])).to_vec(), vec![1, 2]);
        assert_eq!(node_set(&node(3, &[0, 1, 0])).to_vec(), vec![1]);
    }

    #[test]
    fn children_examples() {
        let (l, r) = children(&BbNode::root(3)).unwrap();
        assert_eq!((l.prefix(), l.depth()), (vec![true], 1));
        assert_eq!((r.prefix(), r.depth()), (vec![false], 1));
        assert_eq!(l.implied_set(), BbNode::root(3).implied_set());
        let (_, r) = children(&node(3, &[0])).unwrap();
        assert_eq!(r.prefix(), vec![false, false]);
        assert_eq!(r.implied_set().to_vec(), vec![2]);
        assert!(children(&node(3, &[1, 1, 1])).is_err());
    }

    #[test]
    fn path_gives_middle_vertex() {
        let r = bb_solve(&Graph::path(3), &det()).unwrap();
        assert_eq!(r.opt_size, Some(1));
        assert_eq!(r.opt_set.unwrap().to_vec(), vec![1]);
        assert_eq!(r.expansions, 4);
    }

    #[test]
    fn edgeless_walks_left_spine() {
        let r = bb_solve(&Graph::new(3), &det()).unwrap();
        assert_eq!((r.opt_size, r.expansions), (Some(3), 4));
    }

    #[test]
    fn complete_graph_trace() {
        let r = bb_solve(&Graph::complete(4), &det()).unwrap();
        assert_eq!((r.opt_size, r.expansions), (Some(1), 5));
        assert_eq!(r.opt_set.unwrap().to_vec(), vec![3]);
    }

    #[test]
    fn cap_yields_capped_report() {
        let g = Graph::path(3);
        let cfg = BbConfig { cap: 1, ..det() };
        let r = bb_solve(&g, &cfg).unwrap();
        assert!(r.capped);
        assert_eq!(r.cap_reason, Some(CapReason::Expansions));
        assert_eq!((r.opt_size, r.expansions), (None, 1));
        assert!(bb_solve(&g, &BbConfig { cap: 0, ..det() }).is_err());
        assert!(bb_solve(&Graph::new(0), &det()).is_err());
    }

    #[test]
    fn frontier_overflow_is_a_distinct_cap() {
        let g = Graph::complete(12);
        let cfg = BbConfig {
            frontier_limit: Some(3),
            ..det()
        };
        let r = bb_solve(&g, &cfg).unwrap();
        assert_eq!(r.cap_reason, Some(CapReason::FrontierOverflow));
        assert!(r.capped && r.opt_set.is_none());
    }

    #[test]
    fn stepping_matches_one_shot() {
        let g = gnp_sample(9, 0.4, 5).unwrap();
        let mut s = Search::new(&g, det()).unwrap();
        let mut steps = 0;
        while matches!(s.step(), Step::Expanded(_)) {
            steps += 1;
        }
        assert!(matches!(s.step(), Step::Solved(_)));
        let one_shot = bb_solve(&g, &det()).unwrap();
        assert_eq!(s.run(), one_shot);
        assert_eq!(steps + 1, one_shot.expansions);
    }

    #[test]
    fn random_rule_is_reproducible() {
        let g = gnp_sample(11, 0.3, 8).unwrap();
        let cfg = BbConfig {
            tie: TieRule::Random(77),
            ..det()
        };
        assert_eq!(bb_solve(&g, &cfg).unwrap(), bb_solve(&g, &cfg).unwrap());
    }

    #[test]
    fn incremental_check_matches_direct() {
        for seed in 0..200 {
            let g = gnp_sample(10, 0.25, seed).unwrap();
            let mut set = VertexSet::full(10);
            for v in 0..10 {
                if !g.is_dominating(&set) {
                    break;
                }
                let mut without = set.clone();
                without.remove(v);
                assert_eq!(
                    still_dominating_without(&g, &set, v),
                    g.is_dominating(&without)
                );
                if seed % 2 == 0 {
                    set = without;
                }
            }
        }
    }

    #[test]
    fn classification_of_path_trace() {
        let g = Graph::path(3);
        // Total nodes 15. Infeasible implied sets: {}, {0}, {2}, {0,?}...
        let mut search = Search::new(&g, det()).unwrap();
        let mut visited = Vec::new();
        let counts = classify_nodes(&g, &visited).unwrap();
        let (l, _) = BbNode::root(3).children().unwrap();
        // Nothing visited yet: every feasible node is hidden.
        assert_eq!((counts.visited, counts.explorable), (0, 0));
        assert_eq!(counts.total(), 15);
        loop {
            let step = search.step();
            let Some(node) = step.node().cloned() else {
                break;
            };
            let terminal = !matches!(step, Step::Expanded(_));
            visited.push(node);
            let counts = classify_nodes(&g, &visited).unwrap();
            assert_eq!(counts.total(), 15);
            assert_eq!(counts.visited, visited.len());
            if terminal {
                break;
            }
            assert_eq!(counts.explorable, search.frontier().len());
        }
        // After the root alone both children are explorable.
        let counts = classify_nodes(&g, &[BbNode::root(3)]).unwrap();
        assert_eq!(counts.explorable, 2);
        assert!(g.is_dominating(l.implied_set()));
        assert!(classify_nodes(&Graph::new(16), &[]).is_err());
    }

    #[test]
    fn pruning_invariant_detects_anti_greedy_order() {
        // Expanding nodes in max-potential order visits u(x) > γ on K_4.
        let g = Graph::complete(4);
        let gamma = domination_number_oracle(&g).unwrap().0;
        let mut expanded = vec![BbNode::root(4)];
        let mut node = BbNode::root(4);
        while !node.is_complete() {
            node = node.children().unwrap().0;
            expanded.push(node.clone());
        }
        assert!(pruning_violations(&expanded, gamma) > 0);

        let mut trace = Vec::new();
        bb_solve_observed(&g, &det(), |x| trace.push(x.clone())).unwrap();
        assert_eq!(pruning_violations(&trace, gamma), 0);
    }
}
