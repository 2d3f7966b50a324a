//! Undirected simple graphs stored as per-vertex adjacency bit rows.
//!
//! Vertices are `0..n`. Every row has `n.div_ceil(64)` words and bits at
//! positions `>= n` are always clear.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Error, Result};

/// Largest graph the brute-force ground-truth routines will accept.
pub const ORACLE_MAX_N: usize = 25;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A subset of `0..n` as a bit-vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self {
            n,
            words: vec![u64::MAX; words_for(n)],
        };
        s.trim();
        s
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in indices {
            if v >= n {
                return Err(param(format!("vertex {v} out of range for n = {n}")));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Builds a set from the low `n` bits of `mask` (`n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask needs n <= 64");
        let mut s = Self::empty(n);
        if n > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Universe size.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range for n = {}", self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range for n = {}", self.n);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        Self {
            n,
            stride,
            adj: vec![0; n * stride],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for v in 0..n {
            for w in v + 1..n {
                g.set_edge(v, w);
            }
        }
        g
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for v in 1..n {
            g.set_edge(v - 1, v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph whose edges are selected by `mask` over the pairs `(v, w)`,
    /// `v < w`, in row-major order (bit 0 is `(0,1)`, then `(0,2)`, ...).
    /// Used to enumerate all labeled graphs on small vertex counts.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut g = Self::new(n);
        let mut bit = 0;
        for v in 0..n {
            for w in v + 1..n {
                if mask >> bit & 1 == 1 {
                    g.set_edge(v, w);
                }
                bit += 1;
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(param(format!(
                "edge ({u}, {v}) out of range for n = {}",
                self.n
            )));
        }
        if u == v {
            return Err(param(format!("self-loop at vertex {u}")));
        }
        self.set_edge(u, v);
        Ok(())
    }

    #[inline]
    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.stride + v / 64] |= 1 << (v % 64);
        self.adj[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `v` as raw words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.stride..(v + 1) * self.stride]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet {
            n: self.n,
            words: self.row(v).to_vec(),
        }
    }

    /// `N[v]`: the neighbors of `v` together with `v` itself.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.neighbors(v);
        s.insert(v);
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&v| v > u)
                .collect::<Vec<_>>()
                .into_iter()
                .map(move |v| (u, v))
        })
    }

    /// Closed neighborhoods as `u32` masks, for the brute-force routines.
    pub(crate) fn closed_masks(&self) -> Vec<u32> {
        debug_assert!(self.n <= 32);
        (0..self.n)
            .map(|v| (self.row(v).first().copied().unwrap_or(0) as u32) | (1 << v))
            .collect()
    }

    pub fn is_dominating(&self, s: &VertexSet) -> bool {
        debug_assert_eq!(s.n, self.n);
        let mut covered = s.clone();
        for v in s.iter() {
            for (c, r) in covered.words.iter_mut().zip(self.row(v)) {
                *c |= r;
            }
        }
        covered == VertexSet::full(self.n)
    }

    /// Greedy independent set: scan `order`, keep each vertex that has no
    /// neighbor already kept. The result is maximal, hence dominating.
    pub fn maximal_independent_set(&self, order: &[usize]) -> Result<VertexSet> {
        check_permutation(order, self.n)?;
        let mut kept = VertexSet::empty(self.n);
        let mut blocked = VertexSet::empty(self.n);
        for &v in order {
            if blocked.contains(v) {
                continue;
            }
            kept.insert(v);
            blocked.insert(v);
            for (b, r) in blocked.words.iter_mut().zip(self.row(v)) {
                *b |= r;
            }
        }
        Ok(kept)
    }

    /// Edge-ordered text form: `"n m"` then one `"u v"` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut g = Graph::new(0);
        let mut seen = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(err(format!("expected two integers, got {line:?}")));
            }
            let a: usize = fields[0]
                .parse()
                .map_err(|_| err(format!("not a non-negative integer: {:?}", fields[0])))?;
            let b: usize = fields[1]
                .parse()
                .map_err(|_| err(format!("not a non-negative integer: {:?}", fields[1])))?;
            match header {
                None => {
                    header = Some((a, b));
                    g = Graph::new(a);
                }
                Some((n, m)) => {
                    if a >= b {
                        return Err(err(format!("edge must satisfy u < v, got {a} {b}")));
                    }
                    if b >= n {
                        return Err(err(format!("vertex {b} out of range for n = {n}")));
                    }
                    if g.has_edge(a, b) {
                        return Err(err(format!("duplicate edge {a} {b}")));
                    }
                    if seen == m {
                        return Err(err(format!("more than the declared {m} edges")));
                    }
                    g.set_edge(a, b);
                    seen += 1;
                }
            }
        }
        let Some((_, m)) = header else {
            return Err(Error::Parse {
                line: 1,
                msg: "missing \"n m\" header".into(),
            });
        };
        if seen != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("header declares {m} edges but {seen} were given"),
            });
        }
        Ok(g)
    }
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(param(format!(
            "order has {} entries, expected {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(param(format!("order is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// Maps a raw 64-bit draw to a uniform double in `[0, 1)` using its top
/// 53 bits.
#[inline]
pub(crate) fn unit_f64(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Samples `G(n, p)`.
///
/// The generator is ChaCha8 seeded with `seed` through
/// `SeedableRng::seed_from_u64`. One `u64` is drawn per unordered pair, in
/// row-major order `(0,1), (0,2), ..., (0,n-1), (1,2), ...`, and the edge is
/// kept when the top 53 bits, read as a fraction in `[0,1)`, are below `p`.
/// The output depends only on `(n, p, seed)`.
pub fn gnp_sample(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(param(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for v in 0..n {
        for w in v + 1..n {
            if unit_f64(rng.next_u64()) < p {
                g.set_edge(v, w);
            }
        }
    }
    Ok(g)
}

/// Minimum dominating set by enumerating subsets in order of increasing
/// cardinality (lexicographic by mask within a size). Returns `(γ(G), witness)`.
pub fn domination_number_oracle(g: &Graph) -> Result<(usize, VertexSet)> {
    oracle_counted(g).map(|(k, w, _)| (k, w))
}

/// [`domination_number_oracle`] plus the number of subsets examined.
pub(crate) fn oracle_counted(g: &Graph) -> Result<(usize, VertexSet, u64)> {
    let n = g.n();
    if n == 0 {
        return Err(param("domination oracle needs n >= 1"));
    }
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge {
            what: "domination oracle",
            n,
            limit: ORACLE_MAX_N,
        });
    }
    let closed = g.closed_masks();
    let full: u32 = (1u32 << n) - 1;
    let mut examined = 0u64;
    for k in 1..=n {
        let mut s: u32 = (1u32 << k) - 1;
        loop {
            examined += 1;
            let mut covered = 0u32;
            let mut rest = s;
            while rest != 0 {
                covered |= closed[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            if covered == full {
                return Ok((k, VertexSet::from_mask(n, s as u64), examined));
            }
            // Gosper's hack: next mask with the same popcount.
            let c = s & s.wrapping_neg();
            let r = s + c;
            if r > full || r == 0 {
                break;
            }
            s = (((r ^ s) >> 2) / c) | r;
            if s > full {
                break;
            }
        }
    }
    unreachable!("the full vertex set always dominates")
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn domination_is_monotone(seed in any::<u64>(), n in 1usize..16, p in 0.0f64..1.0,
                                  a in any::<u64>(), b in any::<u64>()) {
            let g = gnp_sample(n, p, seed).unwrap();
            let s = VertexSet::from_mask(n, a);
            let t = VertexSet::from_mask(n, a | b);
            if g.is_dominating(&s) {
                prop_assert!(g.is_dominating(&t));
            }
        }

        #[test]
        fn oracle_at_most_greedy_mis(seed in any::<u64>(), n in 1usize..13, p in 0.0f64..1.0,
                                     rot in 0usize..13) {
            let g = gnp_sample(n, p, seed).unwrap();
            let order: Vec<usize> = (0..n).map(|i| (i + rot) % n).rev().collect();
            let mis = g.maximal_independent_set(&order).unwrap();
            prop_assert!(g.is_dominating(&mis));
            for u in mis.iter() {
                for v in mis.iter() {
                    prop_assert!(!g.has_edge(u, v));
                }
            }
            let (gamma, witness) = domination_number_oracle(&g).unwrap();
            prop_assert!(g.is_dominating(&witness));
            prop_assert_eq!(witness.len(), gamma);
            prop_assert!(gamma <= mis.len());
        }

        #[test]
        fn text_round_trip(seed in any::<u64>(), n in 0usize..40, p in 0.0f64..1.0) {
            let g = gnp_sample(n, p, seed).unwrap();
            prop_assert_eq!(g.to_text().parse::<Graph>().unwrap(), g);
        }
    }
}
