//! The named graphs: the quasi-complete family `C1..C3`, the quasi-star
//! family `S1..S3`, the unique H-optimal graph `H(n, m)` and the unique
//! locally most reliable two-terminal graph `G(n, m)`.
//!
//! Labeling: C-families list clique vertices first (descending degree), then
//! the attachment vertex, then isolated vertices. S-families list universal
//! vertices first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classification::{classify, PairSign};
use crate::error::{domain, Error, Result};
use crate::graph::{Graph, TwoTerminalGraph, MAX_VERTICES};

pub fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// The unique `(k, j)` with `1 <= j <= k` and `m = C(k+1, 2) - j`.
pub fn decompose_kj(m: u64) -> (u64, u64) {
    // k is the largest integer with C(k, 2) <= m.
    let mut k = ((2.0 * m as f64).sqrt() as u64).max(1);
    while binom2(k) > m {
        k -= 1;
    }
    while binom2(k + 1) <= m {
        k += 1;
    }
    (k, binom2(k + 1) - m)
}

/// The unique `(k', j')` with `1 <= j' <= k'` and `m = C(n,2) - C(k'+1, 2) + j'`.
pub fn decompose_kj_prime(n: u64, m: u64) -> Result<(u64, u64)> {
    let total = binom2(n);
    if m > total {
        return domain(format!("m = {m} exceeds C({n}, 2) = {total}"));
    }
    Ok(decompose_kj(total - m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub k: u64,
    pub j: u64,
    pub kp: u64,
    pub jp: u64,
}

impl FamilyParams {
    pub fn new(n: u64, m: u64) -> Result<Self> {
        let (kp, jp) = decompose_kj_prime(n, m)?;
        let (k, j) = decompose_kj(m);
        Ok(FamilyParams { k, j, kp, jp })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    C1,
    C2,
    C3,
    S1,
    S2,
    S3,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] = [
        FamilyTag::C1,
        FamilyTag::C2,
        FamilyTag::C3,
        FamilyTag::S1,
        FamilyTag::S2,
        FamilyTag::S3,
    ];

    pub fn is_star_side(self) -> bool {
        matches!(self, FamilyTag::S1 | FamilyTag::S2 | FamilyTag::S3)
    }

    /// `C_i <-> S_i`.
    pub fn dual(self) -> FamilyTag {
        match self {
            FamilyTag::C1 => FamilyTag::S1,
            FamilyTag::C2 => FamilyTag::S2,
            FamilyTag::C3 => FamilyTag::S3,
            FamilyTag::S1 => FamilyTag::C1,
            FamilyTag::S2 => FamilyTag::C2,
            FamilyTag::S3 => FamilyTag::C3,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTag::C1 => "C1",
            FamilyTag::C2 => "C2",
            FamilyTag::C3 => "C3",
            FamilyTag::S1 => "S1",
            FamilyTag::S2 => "S2",
            FamilyTag::S3 => "S3",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(FamilyTag::C1),
            "c2" => Ok(FamilyTag::C2),
            "c3" => Ok(FamilyTag::C3),
            "s1" => Ok(FamilyTag::S1),
            "s2" => Ok(FamilyTag::S2),
            "s3" => Ok(FamilyTag::S3),
            other => Err(Error::Parse(format!("unknown family tag {other:?}"))),
        }
    }
}

fn check_pair(n: u64, m: u64) -> Result<()> {
    if m > binom2(n) {
        return domain(format!("m = {m} exceeds C({n}, 2) = {}", binom2(n)));
    }
    Ok(())
}

/// Side conditions for the existence of each family member.
pub fn family_exists(n: u64, m: u64, tag: FamilyTag) -> Result<bool> {
    check_pair(n, m)?;
    let p = FamilyParams::new(n, m)?;
    let exists = match tag {
        FamilyTag::C1 | FamilyTag::S1 => true,
        FamilyTag::C2 => second_exists(n, p.k, p.j),
        FamilyTag::S2 => second_exists(n, p.kp, p.jp),
        FamilyTag::C3 => p.j == 3 && p.k < n,
        FamilyTag::S3 => p.jp == 3 && p.kp < n,
    };
    Ok(exists)
}

// k + 1 <= 2k - j - 1 <= n - 1
fn second_exists(n: u64, k: u64, j: u64) -> bool {
    let hub = (2 * k).checked_sub(j + 1);
    hub.is_some_and(|h| k < h && h < n)
}

pub fn build_family(n: u64, m: u64, tag: FamilyTag) -> Result<Graph> {
    check_pair(n, m)?;
    if n as usize > MAX_VERTICES {
        return Err(Error::SizeBound {
            what: "vertex count",
            size: n as usize,
            bound: MAX_VERTICES,
        });
    }
    if !family_exists(n, m, tag)? {
        return Err(Error::DoesNotExist { tag, n, m });
    }
    let p = FamilyParams::new(n, m)?;
    let nn = n as usize;
    let (k, j, kp, jp) = (p.k as usize, p.j as usize, p.kp as usize, p.jp as usize);
    let g = match tag {
        FamilyTag::C1 => quasi_complete(nn, k, j),
        FamilyTag::C2 => {
            // (K1 v (K_{k-1} u (k-j)K1)) u (n-2k+j)K1
            let inner = Graph::complete(k - 1).disjoint_union(&Graph::empty(k - j));
            Graph::complete(1)
                .join(&inner)
                .disjoint_union(&Graph::empty(nn + j - 2 * k))
        }
        FamilyTag::C3 => {
            // (K_{k-2} v 3K1) u (n-k-1)K1
            Graph::complete(k - 2)
                .join(&Graph::empty(3))
                .disjoint_union(&Graph::empty(nn - k - 1))
        }
        FamilyTag::S1 => quasi_star(nn, kp, jp),
        FamilyTag::S2 => {
            // K_{n-2k'+j'} v ((K_{k'-j'} v (k'-1)K1) u K1)
            let inner = Graph::complete(kp - jp)
                .join(&Graph::empty(kp - 1))
                .disjoint_union(&Graph::empty(1));
            Graph::complete(nn + jp - 2 * kp).join(&inner)
        }
        FamilyTag::S3 => {
            // K_{n-k'-1} v (K3 u (k'-2)K1)
            let inner = Graph::complete(3).disjoint_union(&Graph::empty(kp - 2));
            Graph::complete(nn - kp - 1).join(&inner)
        }
    };
    debug_assert_eq!((g.n(), g.edge_count() as u64), (nn, m));
    Ok(g)
}

/// `(K_{k-j} v (K1 u K_j)) u (n-k-1)K1`: a k-clique plus one vertex joined to
/// `k - j` of its vertices. When `j = k` the extra vertex is isolated, which
/// also covers `m = C(n, 2)` where `k = n`.
fn quasi_complete(n: usize, k: usize, j: usize) -> Graph {
    let mut g = Graph::complete(k).disjoint_union(&Graph::empty(n - k));
    if j < k {
        for v in 0..k - j {
            g.add_edge(v, k);
        }
    }
    g
}

/// `K_{n-k'-1} v ((K1 v j'K1) u (k'-j')K1)`: `n - k' - 1` universal vertices, a
/// centre joined to `j'` further vertices, and `k' - j'` vertices adjacent to the
/// universal block only. When `k' = n` (only for `m = 0`) this is the empty graph.
fn quasi_star(n: usize, kp: usize, jp: usize) -> Graph {
    if kp == n {
        return Graph::empty(n);
    }
    let centre = Graph::complete(1).join(&Graph::empty(jp));
    Graph::complete(n - kp - 1).join(&centre.disjoint_union(&Graph::empty(kp - jp)))
}

/// Every existing member of the six families, in tag order. Isomorphic
/// members are kept under their own tags.
pub fn candidate_set(n: u64, m: u64) -> Result<Vec<(FamilyTag, Graph)>> {
    let mut out = Vec::new();
    for tag in FamilyTag::ALL {
        if family_exists(n, m, tag)? {
            out.push((tag, build_family(n, m, tag)?));
        }
    }
    Ok(out)
}

pub const SEVEN_S1: [(u64, u64); 4] = [(5, 5), (6, 6), (6, 8), (6, 9)];
pub const SEVEN_S2: [(u64, u64); 3] = [(6, 7), (7, 9), (7, 12)];

/// `m` within 3 of either end of `[0, C(n, 2)]`.
pub fn is_trivial_m(n: u64, m: u64) -> bool {
    let total = binom2(n);
    m <= 3 || (m <= total && total - m <= 3)
}

/// Which case of the H-optimal characterization produced the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HBranch {
    OutsideI,
    Plus,
    Minus,
    ExceptionalS1,
    ExceptionalS2,
    TrivialM,
    StarCentral,
}

#[derive(Clone, Debug)]
pub struct HOptimal {
    pub tag: FamilyTag,
    pub branch: HBranch,
    pub graph: Graph,
}

fn prefer(n: u64, m: u64, first: FamilyTag, fallback: FamilyTag) -> Result<FamilyTag> {
    Ok(if family_exists(n, m, first)? {
        first
    } else {
        fallback
    })
}

/// The unique H-optimal graph of `G(n, m)`.
///
/// Branches are tried in the order trivial `m`, the seven exceptional pairs,
/// `I+` / `I-`, then the central `I* ∩ J` band. When more than one applies the
/// candidates must agree up to isomorphism.
pub fn build_h(n: u64, m: u64) -> Result<HOptimal> {
    if n == 0 {
        return domain("H(n, m) needs n >= 1");
    }
    check_pair(n, m)?;
    if n < 5 {
        return Ok(HOptimal {
            tag: FamilyTag::S1,
            branch: HBranch::OutsideI,
            graph: build_family(n, m, FamilyTag::S1)?,
        });
    }
    let class = classify(n, m)?;
    let sign = class.sign.expect("pairs with n >= 5 lie in I");
    let mut applicable: Vec<(HBranch, FamilyTag)> = Vec::new();
    if sign == PairSign::Star && is_trivial_m(n, m) {
        applicable.push((HBranch::TrivialM, FamilyTag::S1));
    }
    if sign == PairSign::Star && SEVEN_S1.contains(&(n, m)) {
        applicable.push((HBranch::ExceptionalS1, FamilyTag::S1));
    }
    if sign == PairSign::Star && SEVEN_S2.contains(&(n, m)) {
        applicable.push((HBranch::ExceptionalS2, FamilyTag::S2));
    }
    match sign {
        PairSign::Plus => {
            applicable.push((HBranch::Plus, prefer(n, m, FamilyTag::S2, FamilyTag::S1)?));
        }
        PairSign::Minus => {
            applicable.push((HBranch::Minus, prefer(n, m, FamilyTag::C3, FamilyTag::C1)?));
        }
        PairSign::Star if class.in_j => {
            applicable.push((
                HBranch::StarCentral,
                prefer(n, m, FamilyTag::C3, FamilyTag::C1)?,
            ));
        }
        PairSign::Star => {}
    }
    let Some(&(branch, tag)) = applicable.first() else {
        return Err(Error::Internal(format!(
            "no H-optimal branch applies to ({n}, {m})"
        )));
    };
    let graph = build_family(n, m, tag)?;
    for &(other_branch, other_tag) in &applicable[1..] {
        if other_tag == tag {
            continue;
        }
        let other = build_family(n, m, other_tag)?;
        if !graph.is_isomorphic(&other)? {
            return Err(Error::Internal(format!(
                "branches {branch:?} and {other_branch:?} disagree at ({n}, {m})"
            )));
        }
    }
    Ok(HOptimal { tag, branch, graph })
}

fn check_construction_range(n: u64, m: u64) -> Result<()> {
    if n < 4 || m < 5 || m > binom2(n) {
        return domain(format!(
            "G(n, m) is defined for n >= 4 and 5 <= m <= C(n, 2); got ({n}, {m})"
        ));
    }
    if n as usize > MAX_VERTICES {
        return Err(Error::SizeBound {
            what: "vertex count",
            size: n as usize,
            bound: MAX_VERTICES,
        });
    }
    Ok(())
}

/// Sparse construction with terminals `s = 0`, `t = 1` and `v_i = i + 1`:
/// the edge `st`, then two-paths `s - v_i - t`, then `v_1 v_2` when `m` is even.
///
/// Defined for `5 <= m <= 2n - 2`; `m = 2n - 2` is only reachable by the even
/// branch and is accepted because the formula stays well defined there.
pub fn build_g_sparse(n: u64, m: u64) -> Result<TwoTerminalGraph> {
    check_construction_range(n, m)?;
    if m > 2 * n - 2 {
        return domain(format!(
            "sparse construction needs m <= 2n - 2; got ({n}, {m})"
        ));
    }
    let mut g = Graph::empty(n as usize);
    g.add_edge(0, 1);
    let paths = if m % 2 == 1 { (m - 1) / 2 } else { (m - 2) / 2 };
    for i in 0..paths as usize {
        g.add_edge(0, i + 2);
        g.add_edge(i + 2, 1);
    }
    if m.is_multiple_of(2) {
        g.add_edge(2, 3);
    }
    TwoTerminalGraph::new(g, 0, 1)
}

/// The unique LMRTTG of `T(n, m)`: the sparse construction for `m <= 2n - 3`,
/// otherwise universal terminals `0, 1` around `H(n - 2, m - (2n - 3))` on
/// vertices `2..n`.
pub fn build_g(n: u64, m: u64) -> Result<TwoTerminalGraph> {
    check_construction_range(n, m)?;
    if m <= 2 * n - 3 {
        return build_g_sparse(n, m);
    }
    let core = build_h(n - 2, m - (2 * n - 3))?.graph;
    TwoTerminalGraph::new(Graph::complete(2).join(&core), 0, 1)
}
