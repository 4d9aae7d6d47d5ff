//! Two-terminal reliability: N-vectors, the reliability polynomial, and the
//! brute-force search for locally most reliable graphs.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{CanonicalKey, Graph, TwoTerminalGraph};
use crate::error::{domain, Error, Result};

/// Default edge bound for full subset enumeration.
pub const DEFAULT_MAX_EDGES: usize = 24;
/// Default vertex bound for enumerating `T(n, m)`.
pub const DEFAULT_MAX_VERTICES: usize = 7;

/// Size limits for the exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for EnumBounds {
    fn default() -> Self {
        EnumBounds {
            max_vertices: DEFAULT_MAX_VERTICES,
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

impl EnumBounds {
    /// Reads `LMRTTG_MAX_ENUM`, either `V` or `V,E`. Unset means defaults.
    pub fn from_env() -> Result<Self> {
        match std::env::var("LMRTTG_MAX_ENUM") {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Self::default();
        let mut parts = s.split(',').map(str::trim);
        let num = |p: &str| -> Result<usize> {
            match p.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::Parse(format!("bad enumeration bound {p:?}"))),
            }
        };
        if let Some(v) = parts.next() {
            out.max_vertices = num(v)?;
        }
        if let Some(e) = parts.next() {
            out.max_edges = num(e)?;
        }
        if parts.next().is_some() {
            return Err(Error::Parse(format!("bad enumeration bound {s:?}")));
        }
        Ok(out)
    }
}

/// `(N_1, .., N_m)`, where `N_i` counts the `i`-edge subsets joining `s` to `t`.
/// Ordering is lexicographic; compare only vectors of equal length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NVector {
    counts: Vec<BigUint>,
}

impl NVector {
    pub fn new(counts: Vec<BigUint>) -> Self {
        NVector { counts }
    }

    pub fn from_u64(counts: &[u64]) -> Self {
        NVector::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// Number of edges `m`.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `N_i` for `1 <= i <= m`.
    pub fn get(&self, i: usize) -> &BigUint {
        &self.counts[i - 1]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `(i + 1) N_{i+1} >= (m - i) N_i` for every `i`.
    pub fn satisfies_extension(&self) -> bool {
        let m = self.len();
        (1..m).all(|i| BigUint::from(i + 1) * self.get(i + 1) >= BigUint::from(m - i) * self.get(i))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.counts.iter().map(|c| c.to_string()).collect()
    }
}

impl Serialize for NVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.counts.iter().map(|c| c.to_string()))
    }
}

fn edge_table(g: &Graph) -> Vec<(u32, u32)> {
    g.edges().into_iter().map(|(u, v)| (u as u32, v as u32)).collect()
}

/// Whether the edges of `edges` selected by `mask` join `s` and `t`.
fn connects(edges: &[(u32, u32)], mask: u64, s: usize, t: usize) -> bool {
    let mut reach = 1u64 << s;
    loop {
        let before = reach;
        let mut rest = mask;
        while rest != 0 {
            let (u, v) = edges[rest.trailing_zeros() as usize];
            rest &= rest - 1;
            if (reach >> u | reach >> v) & 1 == 1 {
                reach |= 1 << u | 1 << v;
            }
        }
        if reach >> t & 1 == 1 {
            return true;
        }
        if reach == before {
            return false;
        }
    }
}

/// All `k`-bit masks over the low `width` bits, in increasing order.
pub(crate) fn masks_of_weight(width: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    let first = if k == 0 {
        Some(0)
    } else if k <= width {
        Some(u64::MAX >> (64 - k))
    } else {
        None
    };
    std::iter::successors(first, move |&x| {
        if x == 0 {
            return None;
        }
        // Gosper's hack.
        let c = x & x.wrapping_neg();
        let r = x.checked_add(c)?;
        let next = (((r ^ x) >> 2) / c) | r;
        (next <= limit).then_some(next)
    })
    .take_while(move |&x| x <= limit)
}

/// `N_i` alone, by enumerating the `i`-subsets of edges.
pub fn n_coefficient(g: &TwoTerminalGraph, i: usize) -> Result<u64> {
    let edges = edge_table(g.graph());
    let m = edges.len();
    if i == 0 || i > m {
        return domain(format!("coefficient index {i} outside 1..={m}"));
    }
    if m > 63 {
        return Err(Error::SizeBound {
            what: "edge count",
            size: m,
            bound: 63,
        });
    }
    let (s, t) = g.terminals();
    Ok(coefficient(&edges, s, t, i))
}

fn coefficient(edges: &[(u32, u32)], s: usize, t: usize, i: usize) -> u64 {
    let m = edges.len();
    let st = edges
        .iter()
        .any(|&(u, v)| (u as usize, v as usize) == (s.min(t), s.max(t)));
    match i {
        1 => st as u64,
        2 => {
            let mut ns = 0u64;
            let mut nt = 0u64;
            for &(u, v) in edges {
                for (a, b) in [(u as usize, v as usize), (v as usize, u as usize)] {
                    if a == s {
                        ns |= 1 << b;
                    }
                    if a == t {
                        nt |= 1 << b;
                    }
                }
            }
            st as u64 * (m as u64 - 1) + (ns & nt).count_ones() as u64
        }
        _ => masks_of_weight(m, i)
            .filter(|&mask| connects(edges, mask, s, t))
            .count() as u64,
    }
}

pub fn n_vector(g: &TwoTerminalGraph) -> Result<NVector> {
    n_vector_with_bound(g, DEFAULT_MAX_EDGES)
}

/// Full `2^m` subset enumeration, bucketed by subset size.
pub fn n_vector_with_bound(g: &TwoTerminalGraph, max_edges: usize) -> Result<NVector> {
    let edges = edge_table(g.graph());
    let m = edges.len();
    if m > max_edges.min(40) {
        return Err(Error::SizeBound {
            what: "edge count",
            size: m,
            bound: max_edges.min(40),
        });
    }
    let (s, t) = g.terminals();
    let chunk_bits = m.min(12);
    let chunks = 1u64 << (m - chunk_bits);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|hi| {
            let mut local = vec![0u64; m + 1];
            for lo in 0..1u64 << chunk_bits {
                let mask = hi << chunk_bits | lo;
                if connects(&edges, mask, s, t) {
                    local[mask.count_ones() as usize] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; m + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(NVector::from_u64(&counts[1..]))
}

/// Exact `R(p) = sum N_i p^i (1 - p)^(m - i)`.
pub fn reliability_at(g: &TwoTerminalGraph, p: &BigRational) -> Result<BigRational> {
    let nv = n_vector(g)?;
    ReliabilityPolynomial::new(nv).eval(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReliabilityPolynomial {
    nv: NVector,
}

impl ReliabilityPolynomial {
    pub fn new(nv: NVector) -> Self {
        ReliabilityPolynomial { nv }
    }

    pub fn n_vector(&self) -> &NVector {
        &self.nv
    }

    pub fn eval(&self, p: &BigRational) -> Result<BigRational> {
        if *p < BigRational::zero() || *p > BigRational::one() {
            return domain(format!("p = {p} outside [0, 1]"));
        }
        let m = self.nv.len();
        let q = BigRational::one() - p;
        let mut sum = BigRational::zero();
        for i in 1..=m {
            let c = self.nv.get(i);
            if c.is_zero() {
                continue;
            }
            let term = BigRational::from_integer(c.clone().into())
                * num_traits::pow(p.clone(), i)
                * num_traits::pow(q.clone(), m - i);
            sum += term;
        }
        Ok(sum)
    }
}

/// Parses `a/b` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

pub fn lex_compare(a: &NVector, b: &NVector) -> Result<Ordering> {
    if a.len() != b.len() {
        return domain(format!(
            "N-vectors of different lengths {} and {}",
            a.len(),
            b.len()
        ));
    }
    Ok(a.counts.cmp(&b.counts))
}

/// Keeps the maximizers of `N_1`, then of `N_2` among those, up to `level`.
pub fn filtration(candidates: &[TwoTerminalGraph], level: usize) -> Result<Vec<TwoTerminalGraph>> {
    let Some(first) = candidates.first() else {
        return domain("filtration of an empty candidate list");
    };
    let (n, m) = (first.n(), first.edge_count());
    if candidates.iter().any(|g| g.n() != n || g.edge_count() != m) {
        return domain("candidates do not share (n, m)");
    }
    if level == 0 || level > m {
        return domain(format!("level {level} outside 1..={m}"));
    }
    let mut survivors = candidates.to_vec();
    for i in 1..=level {
        let scores: Vec<u64> = survivors
            .par_iter()
            .map(|g| {
                let (s, t) = g.terminals();
                coefficient(&edge_table(g.graph()), s, t, i)
            })
            .collect();
        let best = scores.iter().copied().max().unwrap_or(0);
        survivors = survivors
            .into_iter()
            .zip(scores)
            .filter_map(|(g, c)| (c == best).then_some(g))
            .collect();
    }
    Ok(survivors)
}

fn check_bounds(n: u64, m: u64, bounds: EnumBounds) -> Result<(usize, usize)> {
    if n < 2 {
        return domain(format!("two-terminal graphs need n >= 2; got {n}"));
    }
    if n as usize > bounds.max_vertices {
        return Err(Error::SizeBound {
            what: "vertex count",
            size: n as usize,
            bound: bounds.max_vertices,
        });
    }
    let pairs = (n * (n - 1) / 2) as usize;
    if m as usize > pairs {
        return domain(format!("m = {m} exceeds C({n}, 2) = {pairs}"));
    }
    Ok((n as usize, pairs))
}

/// One representative per class of `T(n, m)`, terminals `0, 1`, sorted by key.
pub fn enumerate_t(n: u64, m: u64) -> Result<Vec<(CanonicalKey, TwoTerminalGraph)>> {
    enumerate_t_with_bounds(n, m, EnumBounds::default())
}

pub fn enumerate_t_with_bounds(
    n: u64,
    m: u64,
    bounds: EnumBounds,
) -> Result<Vec<(CanonicalKey, TwoTerminalGraph)>> {
    let (nv, pairs) = check_bounds(n, m, bounds)?;
    let masks: Vec<u64> = masks_of_weight(pairs, m as usize).collect();
    let keyed: Vec<(CanonicalKey, TwoTerminalGraph)> = masks
        .par_iter()
        .map(|&mask| {
            let g = TwoTerminalGraph::new(Graph::from_pair_mask(nv, mask), 0, 1)?;
            Ok((g.canonical_key_with_bound(nv.max(crate::graph::DEFAULT_CANON_BOUND))?, g))
        })
        .collect::<Result<_>>()?;
    let mut classes = BTreeMap::new();
    for (k, g) in keyed {
        classes.entry(k).or_insert(g);
    }
    Ok(classes.into_iter().collect())
}

/// Result of the brute-force LMRTTG search.
#[derive(Clone, Debug, Serialize)]
pub struct LmrttgSearch {
    pub n: u64,
    pub m: u64,
    /// One representative per unordered-terminal class, sorted by key.
    #[serde(skip)]
    pub winners: Vec<TwoTerminalGraph>,
    pub winner_keys: Vec<CanonicalKey>,
    /// Winning classes when `s` and `t` may not be swapped.
    pub ordered_classes: usize,
    pub n_vector: NVector,
    /// Labeled graphs with terminals `0, 1` that entered the filtration.
    pub classes_examined: usize,
}

impl LmrttgSearch {
    pub fn unique(&self) -> bool {
        self.winners.len() == 1
    }

    pub fn unique_ordered(&self) -> bool {
        self.ordered_classes == 1
    }
}

pub fn find_lmrttg(n: u64, m: u64) -> Result<LmrttgSearch> {
    find_lmrttg_with_bounds(n, m, EnumBounds::default())
}

/// `(N_1, N_2)` of the labeled graph with pair mask `mask` and terminals
/// `0, 1`, read straight off the mask: pair `(0, 1)` is bit 0, pairs `(0, v)`
/// follow it and pairs `(1, v)` start at bit `n - 1`.
fn leading_pair(n: usize, m: u64, mask: u64) -> (u64, u64) {
    let st = mask & 1;
    let inner = crate::graph::low_bits(n - 2);
    let common = (mask >> 1 & inner & mask >> (n - 1)).count_ones() as u64;
    (st, st * (m - 1) + common)
}

/// Level-wise filtration over all labeled graphs with terminals `0, 1`.
/// The first two levels are applied while streaming the candidates; the
/// survivors are then merged by canonical key once few enough remain, since
/// isomorphic graphs share every `N_i`.
pub fn find_lmrttg_with_bounds(n: u64, m: u64, bounds: EnumBounds) -> Result<LmrttgSearch> {
    let (nv, pairs) = check_bounds(n, m, bounds)?;
    if m == 0 {
        return domain("LMRTTG search needs m >= 1");
    }
    let canon_bound = nv.max(crate::graph::DEFAULT_CANON_BOUND);
    const CHUNK: usize = 1 << 20;
    let mut examined = 0;
    let mut lead = (0u64, 0u64);
    let mut kept: Vec<u64> = Vec::new();
    let mut stream = masks_of_weight(pairs, m as usize).peekable();
    while stream.peek().is_some() {
        let chunk: Vec<u64> = stream.by_ref().take(CHUNK).collect();
        examined += chunk.len();
        let (best, mut hits) = chunk
            .par_iter()
            .fold(
                || ((0u64, 0u64), Vec::new()),
                |(best, mut hits), &mask| {
                    let key = leading_pair(nv, m, mask);
                    match key.cmp(&best) {
                        Ordering::Greater => (key, vec![mask]),
                        Ordering::Equal => {
                            hits.push(mask);
                            (best, hits)
                        }
                        Ordering::Less => (best, hits),
                    }
                },
            )
            .reduce(
                || ((0u64, 0u64), Vec::new()),
                |a, b| match a.0.cmp(&b.0) {
                    Ordering::Greater => a,
                    Ordering::Less => b,
                    Ordering::Equal => (a.0, [a.1, b.1].concat()),
                },
            );
        match best.cmp(&lead) {
            Ordering::Greater => {
                lead = best;
                kept = hits;
            }
            Ordering::Equal => kept.append(&mut hits),
            Ordering::Less => {}
        }
    }
    kept.sort_unstable();
    let mut survivors: Vec<(Vec<(u32, u32)>, u64)> = kept
        .into_par_iter()
        .map(|mask| (edge_table(&Graph::from_pair_mask(nv, mask)), mask))
        .collect();
    let mut counts = vec![lead.0, lead.1];
    counts.truncate(m as usize);
    let mut merged = false;
    for i in 3..=m as usize {
        let scores: Vec<u64> = survivors
            .par_iter()
            .map(|(edges, _)| coefficient(edges, 0, 1, i))
            .collect();
        let best = scores.iter().copied().max().unwrap_or(0);
        counts.push(best);
        survivors = survivors
            .into_iter()
            .zip(scores)
            .filter_map(|(x, c)| (c == best).then_some(x))
            .collect();
        if !merged && survivors.len() <= 50_000 {
            let mut by_key = BTreeMap::new();
            for (edges, mask) in survivors {
                let g = TwoTerminalGraph::new(Graph::from_pair_mask(nv, mask), 0, 1)?;
                by_key
                    .entry(g.canonical_key_with_bound(canon_bound)?)
                    .or_insert((edges, mask));
            }
            survivors = by_key.into_values().collect();
            merged = true;
        }
    }
    let mut winners = BTreeMap::new();
    for (_, mask) in survivors {
        let g = TwoTerminalGraph::new(Graph::from_pair_mask(nv, mask), 0, 1)?;
        winners.entry(g.canonical_key_with_bound(canon_bound)?).or_insert(g);
    }
    let mut ordered_classes = 0;
    for g in winners.values() {
        let a = g.ordered_canonical_key()?;
        let b = g.swapped().ordered_canonical_key()?;
        ordered_classes += if a == b { 1 } else { 2 };
    }
    let (winner_keys, winners): (Vec<_>, Vec<_>) = winners.into_iter().unzip();
    Ok(LmrttgSearch {
        n,
        m,
        winners,
        winner_keys,
        ordered_classes,
        n_vector: NVector::from_u64(&counts),
        classes_examined: examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_g;
    use num_bigint::BigInt;

    fn tt(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> TwoTerminalGraph {
        TwoTerminalGraph::new(Graph::from_edges(n, edges).unwrap(), s, t).unwrap()
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    /// Deletion-contraction on multigraph edge lists, independent of the
    /// subset enumeration: returns the polynomial in `p` as coefficients of
    /// `p^i (1 - p)^(m - i)`.
    fn oracle(edges: &[(usize, usize)], s: usize, t: usize) -> Vec<u64> {
        fn go(edges: &[(usize, usize)], s: usize, t: usize) -> Vec<u64> {
            let m = edges.len();
            if s == t {
                // Every subset connects: coefficient C(m, i).
                let mut row = vec![1u64; m + 1];
                for i in 1..=m {
                    row[i] = row[i - 1] * (m - i + 1) as u64 / i as u64;
                }
                return row;
            }
            let Some(&(u, v)) = edges.first() else {
                return vec![0];
            };
            let rest = &edges[1..];
            // Deleting: edge absent, shift nothing.
            let del = go(rest, s, t);
            // Contracting: merge v into u, drop loops.
            let relabel = |x: usize| if x == v { u } else { x };
            let contracted: Vec<_> = rest
                .iter()
                .map(|&(a, b)| (relabel(a), relabel(b)))
                .filter(|(a, b)| a != b)
                .collect();
            let loops = rest.len() - contracted.len();
            let mut con = go(&contracted, relabel(s), relabel(t));
            // Each dropped loop doubles every coefficient's subset choices.
            for _ in 0..loops {
                let mut next = vec![0u64; con.len() + 1];
                for (i, c) in con.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] += c;
                }
                con = next;
            }
            let mut out = vec![0u64; m + 1];
            for (i, c) in del.iter().enumerate() {
                out[i] += c;
            }
            for (i, c) in con.iter().enumerate() {
                out[i + 1] += c;
            }
            out
        }
        go(edges, s, t)[1..].to_vec()
    }

    #[test]
    fn known_vectors() {
        let g45 = build_g(4, 5).unwrap();
        assert_eq!(n_vector(&g45).unwrap(), NVector::from_u64(&[1, 6, 10, 5, 1]));
        let k4 = TwoTerminalGraph::new(Graph::complete(4), 2, 3).unwrap();
        assert_eq!(n_vector(&k4).unwrap(), NVector::from_u64(&[1, 7, 18, 15, 6, 1]));
        let split = tt(4, &[(0, 2), (1, 3)], 0, 1);
        assert_eq!(n_vector(&split).unwrap(), NVector::from_u64(&[0, 0]));
    }

    #[test]
    fn matches_deletion_contraction() {
        let graphs = [
            tt(5, &[(0, 1), (0, 2), (2, 1), (2, 3), (3, 4), (4, 1), (0, 3)], 0, 1),
            tt(6, &[(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1), (2, 5), (3, 4)], 0, 1),
            TwoTerminalGraph::new(Graph::complete(5), 0, 4).unwrap(),
            tt(4, &[(0, 1), (2, 3)], 0, 3),
        ];
        for g in &graphs {
            let (s, t) = g.terminals();
            let want = NVector::from_u64(&oracle(&g.graph().edges(), s, t));
            assert_eq!(n_vector(g).unwrap(), want);
            for i in 1..=g.edge_count() {
                assert_eq!(
                    BigUint::from(n_coefficient(g, i).unwrap()),
                    *want.get(i),
                    "N_{i}"
                );
            }
        }
    }

    #[test]
    fn reliability_values() {
        let g45 = build_g(4, 5).unwrap();
        assert_eq!(reliability_at(&g45, &rat(1, 2)).unwrap(), rat(23, 32));
        assert_eq!(reliability_at(&g45, &rat(1, 1)).unwrap(), rat(1, 1));
        assert_eq!(reliability_at(&g45, &rat(0, 1)).unwrap(), rat(0, 1));
        let edge = tt(2, &[(0, 1)], 0, 1);
        assert_eq!(reliability_at(&edge, &rat(3, 7)).unwrap(), rat(3, 7));
        assert!(reliability_at(&edge, &rat(3, 2)).is_err());
        assert!(reliability_at(&edge, &rat(-1, 2)).is_err());
    }

    #[test]
    fn binomial_basis_sums_to_one() {
        for m in 1..=12u64 {
            let mut row = vec![1u64; m as usize];
            for i in 1..=m as usize {
                let mut c = 1u64;
                for j in 0..i as u64 {
                    c = c * (m - j) / (j + 1);
                }
                row[i - 1] = c;
            }
            // N_0 = 1 is not stored, so add (1 - p)^m back by hand.
            let poly = ReliabilityPolynomial::new(NVector::from_u64(&row));
            for (a, b) in [(1, 3), (2, 5), (7, 9)] {
                let p = rat(a, b);
                let rest = num_traits::pow(BigRational::one() - &p, m as usize);
                assert_eq!(poly.eval(&p).unwrap() + rest, BigRational::one());
            }
        }
    }

    #[test]
    fn lex_order() {
        let a = NVector::from_u64(&[1, 6, 10, 5, 1]);
        let b = NVector::from_u64(&[0, 7, 10, 5, 1]);
        assert_eq!(lex_compare(&a, &a).unwrap(), Ordering::Equal);
        assert_eq!(lex_compare(&a, &b).unwrap(), Ordering::Greater);
        assert!(lex_compare(&a, &NVector::from_u64(&[1])).is_err());
    }

    #[test]
    fn gosper_counts() {
        assert_eq!(masks_of_weight(6, 3).count(), 20);
        assert_eq!(masks_of_weight(6, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(masks_of_weight(6, 6).collect::<Vec<_>>(), vec![63]);
        assert_eq!(masks_of_weight(3, 4).count(), 0);
        assert!(masks_of_weight(10, 4).all(|x| x.count_ones() == 4 && x < 1024));
    }

    #[test]
    fn enumerate_small() {
        // K4 minus one edge: missing st, missing a terminal edge, missing the inner edge.
        let classes = enumerate_t(4, 5).unwrap();
        assert_eq!(classes.len(), 3);
        assert_eq!(enumerate_t(4, 6).unwrap().len(), 1);
        for (_, g) in enumerate_t(5, 6).unwrap() {
            assert_eq!((g.n(), g.edge_count()), (5, 6));
            assert!(n_vector(&g).unwrap().satisfies_extension());
        }
        assert!(enumerate_t(8, 3).is_err());
    }

    #[test]
    fn search_examples() {
        let r = find_lmrttg(4, 5).unwrap();
        assert!(r.unique());
        assert_eq!(r.winner_keys[0], build_g(4, 5).unwrap().canonical_key().unwrap());
        assert_eq!(r.n_vector, NVector::from_u64(&[1, 6, 10, 5, 1]));
        let r = find_lmrttg(6, 15).unwrap();
        assert!(r.unique());
        assert_eq!(r.winners[0].graph(), &Graph::complete(6));
    }

    #[test]
    fn filtration_equals_lex_max() {
        let all: Vec<_> = enumerate_t(5, 7).unwrap().into_iter().map(|(_, g)| g).collect();
        let vecs: Vec<_> = all.iter().map(|g| n_vector(g).unwrap()).collect();
        let best = vecs.iter().max().unwrap();
        let lex: Vec<_> = all
            .iter()
            .zip(&vecs)
            .filter(|(_, v)| *v == best)
            .map(|(g, _)| g.clone())
            .collect();
        assert_eq!(filtration(&all, 7).unwrap(), lex);
        assert!(filtration(&[], 1).is_err());
    }

    #[test]
    fn dense_level_three_has_universal_terminals() {
        for m in 8..=10 {
            let all: Vec<_> = enumerate_t(5, m).unwrap().into_iter().map(|(_, g)| g).collect();
            for g in filtration(&all, 3).unwrap() {
                assert!(g.is_universal(0) && g.is_universal(1));
            }
        }
    }

    #[test]
    fn leading_pair_reads_mask() {
        for n in 2..=7usize {
            let pairs = n * (n - 1) / 2;
            for m in 1..=pairs.min(8) {
                for mask in masks_of_weight(pairs, m).step_by(7) {
                    let g = Graph::from_pair_mask(n, mask);
                    let e = edge_table(&g);
                    let want = (coefficient(&e, 0, 1, 1), if m >= 2 { coefficient(&e, 0, 1, 2) } else { 0 });
                    let got = leading_pair(n, m as u64, mask);
                    assert_eq!((got.0, if m >= 2 { got.1 } else { 0 }), want, "n={n} mask={mask:b}");
                }
            }
        }
    }

    #[test]
    fn bounds_parse() {
        assert_eq!(EnumBounds::parse("8").unwrap().max_vertices, 8);
        assert_eq!(
            EnumBounds::parse("6,20").unwrap(),
            EnumBounds {
                max_vertices: 6,
                max_edges: 20
            }
        );
        assert!(EnumBounds::parse("0").is_err());
        assert!(EnumBounds::parse("1,2,3").is_err());
    }
}
