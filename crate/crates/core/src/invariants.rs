//! Degree-based and small-subgraph invariants: Zagreb indices, triangle and
//! path counts, `H(G) = M2(G) - 6 k3(G)`, and the closed forms used to get
//! `H` for every family member without building the graph.

use num_rational::Ratio;
use serde::Serialize;

use crate::constructions::{binom2, decompose_kj, FamilyParams, FamilyTag, family_exists};
use crate::error::{domain, Error, Result};
use crate::graph::Graph;

/// Every invariant of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantBundle {
    pub n: usize,
    pub m: i64,
    pub m1: i64,
    pub m2: i64,
    pub k3: i64,
    pub p3: i64,
    pub p4: i64,
    pub h_value: i64,
}

pub fn invariant_bundle(g: &Graph) -> InvariantBundle {
    InvariantBundle {
        n: g.n(),
        m: g.edge_count() as i64,
        m1: zagreb1(g),
        m2: zagreb2(g),
        k3: count_triangles(g),
        p3: count_p3(g),
        p4: count_p4(g),
        h_value: h_invariant(g),
    }
}

pub fn zagreb1(g: &Graph) -> i64 {
    (0..g.n()).map(|v| (g.degree(v) as i64).pow(2)).sum()
}

pub fn zagreb2(g: &Graph) -> i64 {
    g.edges()
        .into_iter()
        .map(|(u, v)| g.degree(u) as i64 * g.degree(v) as i64)
        .sum()
}

pub fn count_triangles(g: &Graph) -> i64 {
    // Each triangle u < v < w is seen once from its smallest edge.
    g.edges()
        .into_iter()
        .map(|(u, v)| {
            let above = !crate::graph::low_bits(v + 1);
            (g.row(u) & g.row(v) & above).count_ones() as i64
        })
        .sum()
}

/// Paths on three vertices: `sum C(d, 2)`.
pub fn count_p3(g: &Graph) -> i64 {
    (0..g.n())
        .map(|v| {
            let d = g.degree(v) as i64;
            d * (d - 1) / 2
        })
        .sum()
}

/// Paths on four vertices, each unordered path counted once.
pub fn count_p4(g: &Graph) -> i64 {
    // Middle edge uv with one extra neighbour on each side, minus the
    // choices that close a triangle (three per triangle).
    let through: i64 = g
        .edges()
        .into_iter()
        .map(|(u, v)| (g.degree(u) as i64 - 1) * (g.degree(v) as i64 - 1))
        .sum();
    through - 3 * count_triangles(g)
}

pub fn h_invariant(g: &Graph) -> i64 {
    zagreb2(g) - 6 * count_triangles(g)
}

/// `H(C1)` in terms of the `(k, j)` decomposition of `m`.
pub fn closed_h_c1(k: u64, j: u64) -> Result<i128> {
    if j < 1 || j > k {
        return domain(format!("closed form needs 1 <= j <= k; got k = {k}, j = {j}"));
    }
    let (k, j) = (k as i128, j as i128);
    let twice = k.pow(4) - k.pow(3) - 6 * j * k * k + 2 * (j * j + 7 * j + 1) * k
        - (5 * j * j + 7 * j);
    debug_assert_eq!(twice % 2, 0);
    Ok(twice / 2)
}

/// `M1(S1)` from the `(k', j')` decomposition. Also accepts `k' = n`, which
/// only occurs at `m = 0` and evaluates to 0.
pub fn closed_m1_s1(n: u64, kp: u64, jp: u64) -> Result<i128> {
    if jp < 1 || jp > kp || kp > n {
        return domain(format!(
            "closed form needs 1 <= j' <= k' <= n; got n = {n}, k' = {kp}, j' = {jp}"
        ));
    }
    let (n, kp, jp) = (n as i128, kp as i128, jp as i128);
    Ok((n - kp - 1 + jp).pow(2)
        + jp * (n - kp).pow(2)
        + (kp - jp) * (n - kp - 1).pow(2)
        + (n - kp - 1) * (n - 1).pow(2))
}

/// `M1(C1)` from its degree data: `k - j` vertices of degree `k`, `j` of
/// degree `k - 1` and the attachment vertex of degree `k - j`.
pub fn m1_c1(k: u64, j: u64) -> i128 {
    let (k, j) = (k as i128, j as i128);
    (k - j) * k * k + j * (k - 1) * (k - 1) + (k - j) * (k - j)
}

fn binom3(n: i128) -> i128 {
    n * (n - 1) * (n - 2) / 6
}

/// The additive term in `H(G) + H(complement G) = (n - 9/2) M1(G) + h(n, m)`.
pub fn h_offset(n: u64, m: u64) -> i128 {
    let (n, m) = (n as i128, m as i128);
    2 * m * m - 6 * binom3(n) + (n - 1).pow(2) * (n * (n - 1) / 2) - 3 * (n - 1) * (n - 3) * m
}

/// `H(G) + H(complement G) - (n - 9/2) M1(G) - h(n, m)` in exact rationals.
pub fn complement_sum_residual(g: &Graph) -> Ratio<i128> {
    let n = g.n() as i128;
    let lhs = Ratio::from_integer((h_invariant(g) + h_invariant(&g.complement())) as i128);
    let rhs = Ratio::new(2 * n - 9, 2) * Ratio::from_integer(zagreb1(g) as i128)
        + Ratio::from_integer(h_offset(g.n() as u64, g.edge_count() as u64));
    lhs - rhs
}

/// `H` of a family member from closed forms only.
///
/// The C-side uses the `(k, j)` closed form plus the fixed offsets; the S-side
/// goes through the complement identity with `complement(S1(n, m)) = C1(n, C(n,2) - m)`.
pub fn family_h(n: u64, m: u64, tag: FamilyTag) -> Result<i128> {
    if !family_exists(n, m, tag)? {
        return Err(Error::DoesNotExist { tag, n, m });
    }
    let p = FamilyParams::new(n, m)?;
    let h_c1 = closed_h_c1(p.k, p.j)?;
    let h_s1 = || -> Result<i128> {
        let (kc, jc) = decompose_kj(binom2(n) - m);
        let h_complement = closed_h_c1(kc, jc)?;
        let twice = (2 * n as i128 - 9) * closed_m1_s1(n, p.kp, p.jp)? + 2 * h_offset(n, m)
            - 2 * h_complement;
        debug_assert_eq!(twice % 2, 0);
        Ok(twice / 2)
    };
    let cubic = |k: u64, j: u64| -> i128 {
        // (k - 7/2)(k - j)(k - j - 1); the last two factors have an even product.
        let (k, j) = (k as i128, j as i128);
        (2 * k - 7) * ((k - j) * (k - j - 1) / 2)
    };
    Ok(match tag {
        FamilyTag::C1 => h_c1,
        FamilyTag::C2 => h_c1 - cubic(p.k, p.j),
        FamilyTag::C3 => h_c1 + 3,
        FamilyTag::S1 => h_s1()?,
        FamilyTag::S2 => h_s1()? + cubic(p.kp, p.jp),
        FamilyTag::S3 => h_s1()? - 3,
    })
}

/// `LHS - RHS` of the three complement identities for `k3`, `p3` and `p4`.
pub fn ramsey_residuals(g: &Graph) -> [i64; 3] {
    let n = g.n() as i64;
    let m = g.edge_count() as i64;
    let total = n * (n - 1) / 2;
    let c3 = n * (n - 1) * (n - 2) / 6;
    let h = g.complement();
    let p3 = count_p3(g);
    let k3_res = count_triangles(g) + count_triangles(&h) - (c3 - m * (n - 2) + p3);
    let p3_res = p3 + count_p3(&h) - (2 * p3 + (n - 2) * (total - 2 * m));
    let p4_res = count_p4(g) + count_p4(&h)
        - (2 * (n - 5) * p3 + 2 * m * m - 8 * m + 3 * m * n - 3 * c3 + (n - 2).pow(2) * (total - 3 * m));
    [k3_res, p3_res, p4_res]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_family;

    fn fam(n: u64, m: u64, tag: FamilyTag) -> Graph {
        build_family(n, m, tag).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Oracle: ordered vertex sequences, divided by orientation count.
    fn brute_counts(g: &Graph) -> (i64, i64, i64) {
        let n = g.n();
        let (mut k3, mut p3, mut p4) = (0, 0, 0);
        for a in 0..n {
            for b in 0..n {
                if b == a || !g.has_edge(a, b) {
                    continue;
                }
                for c in 0..n {
                    if c == a || c == b || !g.has_edge(b, c) {
                        continue;
                    }
                    p3 += 1;
                    if g.has_edge(a, c) {
                        k3 += 1;
                    }
                    for d in 0..n {
                        if d != a && d != b && d != c && g.has_edge(c, d) {
                            p4 += 1;
                        }
                    }
                }
            }
        }
        (k3 / 6, p3 / 2, p4 / 2)
    }

    #[test]
    fn zagreb_examples() {
        let k4_2k1 = Graph::complete(4).disjoint_union(&Graph::empty(2));
        assert_eq!(zagreb1(&k4_2k1), 36);
        assert_eq!(zagreb1(&Graph::complete(1).join(&Graph::empty(5))), 30);
        assert_eq!(zagreb1(&Graph::empty(4)), 0);
        assert_eq!(zagreb2(&fam(6, 6, FamilyTag::S1)), 39);
        assert_eq!(zagreb2(&fam(6, 8, FamilyTag::C1)), 89);
        assert_eq!(zagreb2(&fam(9, 3, FamilyTag::S1)), 9);
    }

    #[test]
    fn count_examples() {
        let k4 = Graph::complete(4);
        assert_eq!((count_triangles(&k4), count_p3(&k4), count_p4(&k4)), (4, 12, 12));
        assert_eq!(brute_counts(&k4), (4, 12, 12));
        assert_eq!(count_triangles(&fam(6, 8, FamilyTag::C1)), 5);
        assert_eq!(count_triangles(&fam(6, 8, FamilyTag::S1)), 3);
        let p4 = path(4);
        assert_eq!((count_triangles(&p4), count_p3(&p4), count_p4(&p4)), (0, 2, 1));
    }

    #[test]
    fn counts_match_brute_force_on_all_small_graphs() {
        for n in 1..=5usize {
            let pairs = n * (n - 1) / 2;
            for mask in 0..1u64 << pairs {
                let g = Graph::from_pair_mask(n, mask);
                assert_eq!(
                    brute_counts(&g),
                    (count_triangles(&g), count_p3(&g), count_p4(&g)),
                    "{g:?}"
                );
            }
        }
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_invariant(&fam(6, 6, FamilyTag::S1)), 33);
        assert_eq!(h_invariant(&fam(6, 6, FamilyTag::C1)), 30);
        assert_eq!(h_invariant(&fam(7, 9, FamilyTag::S2)), 81);
        assert_eq!(h_invariant(&fam(7, 9, FamilyTag::C1)), 78);
        assert_eq!(h_invariant(&fam(8, 3, FamilyTag::C1)), 6);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_h_c1(4, 4).unwrap(), 30);
        let mut k4_minus = Graph::complete(4);
        k4_minus.remove_edge(0, 1);
        assert_eq!(h_invariant(&k4_minus), 21);
        assert_eq!(closed_h_c1(3, 1).unwrap(), 21);
        assert_eq!(closed_h_c1(1, 1).unwrap(), 0);
        assert!(closed_h_c1(3, 4).is_err());
        assert!(closed_h_c1(3, 0).is_err());

        assert_eq!(closed_m1_s1(6, 4, 1).unwrap(), 36);
        assert_eq!(zagreb1(&fam(6, 6, FamilyTag::S1)), 36);
        assert_eq!(closed_m1_s1(6, 5, 5).unwrap(), 30);
        assert!(closed_m1_s1(6, 5, 6).is_err());
        assert!(closed_m1_s1(6, 7, 1).is_err());
    }

    #[test]
    fn h_offset_examples() {
        assert_eq!(h_offset(6, 6), 57);
        // H(S1_{6,6}) + H(C1_{6,9}) = (6 - 9/2) * 36 + 57 = 111, with H(C1_{6,9}) = 78.
        let s = fam(6, 6, FamilyTag::S1);
        assert!(s.complement().is_isomorphic(&fam(6, 9, FamilyTag::C1)).unwrap());
        assert_eq!(h_invariant(&s) + h_invariant(&fam(6, 9, FamilyTag::C1)), 111);
        assert_eq!(h_invariant(&fam(6, 9, FamilyTag::S1)) - h_invariant(&fam(6, 9, FamilyTag::C1)), 3);
        for n in 1..10 {
            assert_eq!(complement_sum_residual(&Graph::empty(n)), Ratio::from_integer(0));
        }
    }

    #[test]
    fn family_h_offsets() {
        assert_eq!(
            family_h(6, 7, FamilyTag::C3).unwrap(),
            family_h(6, 7, FamilyTag::C1).unwrap() + 3
        );
        for n in 5..12 {
            assert_eq!(
                family_h(n, 5, FamilyTag::C2).unwrap(),
                family_h(n, 5, FamilyTag::C1).unwrap() + 1
            );
        }
        assert!(matches!(
            family_h(6, 6, FamilyTag::C3),
            Err(Error::DoesNotExist { .. })
        ));
    }

    #[test]
    fn ramsey_examples() {
        assert_eq!(ramsey_residuals(&Graph::complete(5)), [0, 0, 0]);
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(brute_counts(&petersen), (0, 30, 60));
        assert_eq!(brute_counts(&petersen.complement()), (
            count_triangles(&petersen.complement()),
            count_p3(&petersen.complement()),
            count_p4(&petersen.complement())
        ));
        assert_eq!(ramsey_residuals(&petersen), [0, 0, 0]);
    }

    #[test]
    fn zagreb1_is_twice_p3_plus_twice_m() {
        for n in 1..=6usize {
            let pairs = n * (n - 1) / 2;
            for mask in 0..1u64 << pairs {
                let g = Graph::from_pair_mask(n, mask);
                assert_eq!(zagreb1(&g), 2 * count_p3(&g) + 2 * g.edge_count() as i64);
            }
        }
    }
}
