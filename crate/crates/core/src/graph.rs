//! Simple undirected graphs stored as per-vertex bit rows, and two-terminal
//! graphs built on top of them.
//!
//! Vertices are `0..n` with `n <= 64`. All values are immutable once built;
//! the structural operations return new graphs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Default vertex bound for canonical forms.
pub const DEFAULT_CANON_BOUND: usize = 10;

/// Hard ceiling for canonical forms: the adjacency code must fit in a `u128`.
pub const MAX_CANON_BOUND: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graphs are limited to {MAX_VERTICES} vertices");
        Graph { n, rows: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.rows[u] = low_bits(n) & !(1u64 << u);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeBound {
                what: "vertex count",
                size: n,
                bound: MAX_VERTICES,
            });
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return domain(format!("edge ({u}, {v}) out of range for n = {n}"));
            }
            if u == v {
                return domain(format!("self-loop at vertex {u}"));
            }
            if g.has_edge(u, v) {
                return domain(format!("duplicate edge ({u}, {v})"));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a mask over the unordered pairs in row-major order
    /// `(0,1), (0,2), .., (0,n-1), (1,2), ..`.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    #[cfg(test)]
    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bit row.
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> DegreeSequence {
        DegreeSequence((0..self.n).map(|v| self.degree(v)).collect())
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut higher = self.rows[u] & !low_bits(u + 1);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let full = low_bits(self.n);
        let rows = (0..self.n)
            .map(|u| !self.rows[u] & full & !(1u64 << u))
            .collect();
        Graph { n: self.n, rows }
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        assert!(n <= MAX_VERTICES, "graphs are limited to {MAX_VERTICES} vertices");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Graph { n, rows }
    }

    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        let left = low_bits(self.n);
        let right = low_bits(g.n) & !left;
        for u in 0..self.n {
            g.rows[u] |= right;
        }
        for v in self.n..g.n {
            g.rows[v] |= left;
        }
        g
    }

    /// `copies` disjoint copies of `self`.
    pub fn times(&self, copies: usize) -> Graph {
        (0..copies).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// The subgraph induced by deleting `removed`, remaining vertices kept in order.
    pub fn without_vertices(&self, removed: &[usize]) -> Graph {
        let kept: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        let mut g = Graph::empty(kept.len());
        for (i, &u) in kept.iter().enumerate() {
            for (j, &v) in kept.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Canonical form under vertex relabeling. Two graphs share a key iff they
    /// are isomorphic.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        self.canonical_key_with_bound(DEFAULT_CANON_BOUND)
    }

    pub fn canonical_key_with_bound(&self, bound: usize) -> Result<CanonicalKey> {
        check_canon_bound(self.n, bound)?;
        let mut search = CanonSearch::new(self);
        search.run(&[]);
        Ok(search.finish())
    }

    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool> {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        let mut a = self.degrees().0;
        let mut b = other.degrees().0;
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(false);
        }
        Ok(self.canonical_key_with_bound(MAX_CANON_BOUND)?
            == other.canonical_key_with_bound(MAX_CANON_BOUND)?)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from_parts(self, None)
    }

    pub fn to_dot(&self) -> String {
        dot(self, None)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        let n = degrees.len();
        if let Some(&d) = degrees.iter().find(|&&d| n == 0 || d > n - 1) {
            return domain(format!("degree {d} impossible on {n} vertices"));
        }
        if degrees.iter().sum::<usize>() % 2 == 1 {
            return domain("degree sum is odd");
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A graph with an unordered pair of distinct terminals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwoTerminalGraph {
    graph: Graph,
    s: usize,
    t: usize,
}

impl TwoTerminalGraph {
    pub fn new(graph: Graph, s: usize, t: usize) -> Result<Self> {
        if s == t {
            return domain("terminals must be distinct");
        }
        if s >= graph.n() || t >= graph.n() {
            return domain(format!(
                "terminals ({s}, {t}) out of range for n = {}",
                graph.n()
            ));
        }
        Ok(TwoTerminalGraph { graph, s, t })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminals(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_universal(&self, v: usize) -> bool {
        v < self.n() && self.graph.degree(v) + 1 == self.n()
    }

    /// `G - s - t`.
    pub fn core(&self) -> Graph {
        self.graph.without_vertices(&[self.s, self.t])
    }

    pub fn swapped(&self) -> Self {
        TwoTerminalGraph {
            graph: self.graph.clone(),
            s: self.t,
            t: self.s,
        }
    }

    /// Canonical form under isomorphisms mapping `{s, t}` onto `{s', t'}`
    /// as an unordered pair.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        self.canonical_key_with_bound(DEFAULT_CANON_BOUND)
    }

    pub fn canonical_key_with_bound(&self, bound: usize) -> Result<CanonicalKey> {
        check_canon_bound(self.n(), bound)?;
        let mut search = CanonSearch::new(&self.graph);
        search.run(&[self.s, self.t]);
        search.run(&[self.t, self.s]);
        Ok(search.finish())
    }

    /// Stricter form: `s` must map to `s'` and `t` to `t'`.
    pub fn ordered_canonical_key(&self) -> Result<CanonicalKey> {
        check_canon_bound(self.n(), DEFAULT_CANON_BOUND)?;
        let mut search = CanonSearch::new(&self.graph);
        search.run(&[self.s, self.t]);
        Ok(search.finish())
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from_parts(&self.graph, Some((self.s, self.t)))
    }

    pub fn to_dot(&self) -> String {
        dot(&self.graph, Some((self.s, self.t)))
    }
}

/// Adjacency code of a canonical relabeling. Bits are ordered column-major
/// over pairs `(i, j)`, `i < j`: `(0,1), (0,2), (1,2), (0,3), ..`, with the
/// first pair most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub n: u8,
    pub code: u128,
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:x}", self.n, self.code)
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_canon_bound(n: usize, bound: usize) -> Result<()> {
    let bound = bound.min(MAX_CANON_BOUND);
    if n > bound {
        return Err(Error::SizeBound {
            what: "vertex count for canonical form",
            size: n,
            bound,
        });
    }
    Ok(())
}

/// Minimum adjacency code over all relabelings that place a fixed prefix of
/// vertices first and then the remaining vertices in non-increasing degree
/// order. Restricting to degree-ordered labelings keeps the result an
/// isomorphism invariant while pruning most permutations.
struct CanonSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    allowed: Vec<u64>,
    best: Option<u128>,
}

impl<'a> CanonSearch<'a> {
    fn new(g: &'a Graph) -> Self {
        CanonSearch {
            g,
            order: Vec::with_capacity(g.n()),
            allowed: Vec::with_capacity(g.n()),
            best: None,
        }
    }

    fn run(&mut self, prefix: &[usize]) {
        let n = self.g.n();
        let mut fixed = 0u64;
        self.allowed.clear();
        for &v in prefix {
            self.allowed.push(1 << v);
            fixed |= 1 << v;
        }
        let mut rest: Vec<usize> = (0..n).filter(|&v| fixed >> v & 1 == 0).collect();
        rest.sort_by_key(|&v| std::cmp::Reverse(self.g.degree(v)));
        for &v in &rest {
            let d = self.g.degree(v);
            let cell = rest
                .iter()
                .filter(|&&w| self.g.degree(w) == d)
                .fold(0u64, |acc, &w| acc | 1 << w);
            self.allowed.push(cell);
        }
        self.order.clear();
        self.dfs(0, 0, 0);
    }

    fn dfs(&mut self, pos: usize, used: u64, prefix: u128) {
        let n = self.g.n();
        if pos == n {
            if self.best.is_none_or(|b| prefix < b) {
                self.best = Some(prefix);
            }
            return;
        }
        let mut candidates = self.allowed[pos] & !used;
        let mut tried = 0u64;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            // Swapping twins is an automorphism fixing every placed vertex, so
            // only one of them needs exploring here.
            if self.has_twin_in(v, tried) {
                continue;
            }
            tried |= 1 << v;
            let mut column = 0u128;
            for (i, &u) in self.order.iter().enumerate() {
                if self.g.has_edge(u, v) {
                    column |= 1 << (pos - 1 - i);
                }
            }
            let next = (prefix << pos) | column;
            if let Some(best) = self.best {
                let total = n * (n - 1) / 2;
                let done = pos * (pos + 1) / 2;
                if next > best >> (total - done) {
                    continue;
                }
            }
            self.order.push(v);
            self.dfs(pos + 1, used | 1 << v, next);
            self.order.pop();
        }
    }

    fn has_twin_in(&self, v: usize, set: u64) -> bool {
        let mut set = set;
        while set != 0 {
            let u = set.trailing_zeros() as usize;
            set &= set - 1;
            if self.g.row(u) & !(1 << v) == self.g.row(v) & !(1 << u) {
                return true;
            }
        }
        false
    }

    fn finish(self) -> CanonicalKey {
        CanonicalKey {
            n: self.g.n() as u8,
            code: self.best.unwrap_or(0),
        }
    }
}

/// On-disk graph format: `{"n": .., "terminals": [s, t], "edges": [[u, v], ..]}`
/// with `u < v` and edges sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminals: Option<[usize; 2]>,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    fn from_parts(g: &Graph, terminals: Option<(usize, usize)>) -> Self {
        GraphJson {
            n: g.n(),
            terminals: terminals.map(|(s, t)| [s, t]),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(self.n, &edges)
    }

    pub fn to_two_terminal(&self) -> Result<TwoTerminalGraph> {
        let [s, t] = self
            .terminals
            .ok_or_else(|| Error::Parse("graph has no terminals".into()))?;
        TwoTerminalGraph::new(self.to_graph()?, s, t)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn dot(g: &Graph, terminals: Option<(usize, usize)>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let is_terminal = terminals.is_some_and(|(s, t)| v == s || v == t);
        if is_terminal {
            out.push_str(&format!("  {v} [shape=doublecircle];\n"));
        } else {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn complement_of_empty_is_complete() {
        assert_eq!(Graph::empty(3).complement(), Graph::complete(3));
        assert_eq!(Graph::complete(5).complement().edge_count(), 0);
    }

    #[test]
    fn join_and_union_counts() {
        let k1 = Graph::complete(1);
        assert_eq!(k1.join(&k1), Graph::complete(2));
        let g = Graph::complete(2).join(&k1.times(3));
        assert_eq!((g.n(), g.edge_count()), (5, 7));
        assert_eq!(g.join(&Graph::empty(0)), g);
        assert_eq!(g.disjoint_union(&Graph::empty(0)), g);

        let k4_2k1 = Graph::complete(4).disjoint_union(&k1.times(2));
        assert_eq!((k4_2k1.n(), k4_2k1.edge_count()), (6, 6));
        let three = k1.times(3);
        assert_eq!((three.n(), three.edge_count()), (3, 0));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(TwoTerminalGraph::new(Graph::empty(3), 1, 1).is_err());
        assert!(TwoTerminalGraph::new(Graph::empty(3), 0, 3).is_err());
    }

    #[test]
    fn universal_vertices() {
        let star = Graph::complete(1).join(&Graph::empty(4));
        let tt = TwoTerminalGraph::new(star, 0, 1).unwrap();
        assert!(tt.is_universal(0));
        assert!(!tt.is_universal(1));
        let iso = TwoTerminalGraph::new(Graph::empty(3), 0, 1).unwrap();
        assert!(!iso.is_universal(2));
        let k4 = TwoTerminalGraph::new(Graph::complete(4), 2, 3).unwrap();
        assert!((0..4).all(|v| k4.is_universal(v)));
    }

    #[test]
    fn terminal_keys_on_p3() {
        let ends = TwoTerminalGraph::new(path(3), 0, 2).unwrap();
        let end_mid = TwoTerminalGraph::new(path(3), 0, 1).unwrap();
        assert_ne!(
            ends.canonical_key().unwrap(),
            end_mid.canonical_key().unwrap()
        );
        // Brute force over all 3! bijections agrees.
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let found = perms.iter().any(|p| {
            let h = path(3).permuted(p);
            h == path(3) && {
                let (a, b) = (p[0], p[2]);
                [a, b] == [0, 1] || [a, b] == [1, 0]
            }
        });
        assert!(!found);
    }

    #[test]
    fn key_ignores_terminal_order() {
        let g = TwoTerminalGraph::new(path(4), 0, 2).unwrap();
        assert_eq!(
            g.canonical_key().unwrap(),
            g.swapped().canonical_key().unwrap()
        );
        assert_ne!(
            g.ordered_canonical_key().unwrap(),
            g.swapped().ordered_canonical_key().unwrap()
        );
    }

    #[test]
    fn key_size_bound() {
        let g = Graph::empty(11);
        assert!(matches!(g.canonical_key(), Err(Error::SizeBound { .. })));
        assert!(g.canonical_key_with_bound(12).is_ok());
    }

    #[test]
    fn json_and_dot() {
        let tt = TwoTerminalGraph::new(path(3), 0, 2).unwrap();
        let json = serde_json::to_string(&tt.to_json()).unwrap();
        assert_eq!(json, r#"{"n":3,"terminals":[0,2],"edges":[[0,1],[1,2]]}"#);
        let back = GraphJson::parse(&json).unwrap().to_two_terminal().unwrap();
        assert_eq!(back, tt);
        let dot = tt.to_dot();
        assert!(dot.contains("0 [shape=doublecircle]"));
        assert!(dot.contains("1 -- 2;"));
    }

    #[test]
    fn degree_sequence_checks() {
        assert!(DegreeSequence::new(vec![1, 1, 1]).is_err());
        assert!(DegreeSequence::new(vec![3, 1, 1]).is_err());
        assert_eq!(DegreeSequence::new(vec![2, 1, 1]).unwrap().sum(), 4);
    }
}
