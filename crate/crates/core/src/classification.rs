//! Sign classification of `(n, m)` by comparing `M1` of the quasi-star and the
//! quasi-complete graph, plus the two closed-form predictions it is checked
//! against.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::constructions::{binom2, is_trivial_m, FamilyParams};
use crate::error::{domain, Result};
use crate::invariants::{closed_m1_s1, m1_c1};

pub type Rational = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumParams {
    pub n: u64,
    pub k_n: u64,
    pub alpha_n: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub q_n: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub r_n: Rational,
}

pub(crate) fn ser_ratio<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_ratio(r))
}

/// `a/b`, or just `a` for integers.
pub fn format_ratio(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn spectrum(n: u64) -> Result<SpectrumParams> {
    if n < 5 {
        return domain(format!("spectrum parameters need n >= 5; got {n}"));
    }
    let total = binom2(n);
    // Largest k with 2 C(k, 2) <= C(n, 2).
    let mut k = 1;
    while 2 * binom2(k + 1) <= total {
        k += 1;
    }
    let (ni, ki) = (n as i128, k as i128);
    let q = Rational::new(1 - 2 * (2 * ki - 3).pow(2) + (2 * ni - 5).pow(2), 4);
    let denom = -1 - 2 * (2 * ki - 4).pow(2) + (2 * ni - 5).pow(2);
    assert!(denom != 0, "R_n denominator vanished at n = {n}");
    let r = Rational::new(4 * (total as i128 - 2 * binom2(k) as i128) * (ki - 2), denom);
    Ok(SpectrumParams {
        n,
        k_n: k,
        alpha_n: binom2(k),
        q_n: q,
        r_n: r,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PairSign {
    /// `M1(S1) > M1(C1)`
    Plus,
    /// `M1(C1) > M1(S1)`
    Minus,
    /// Equality.
    Star,
}

impl fmt::Display for PairSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairSign::Plus => "PLUS",
            PairSign::Minus => "MINUS",
            PairSign::Star => "STAR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairClass {
    pub n: u64,
    pub m: u64,
    pub in_i: bool,
    pub in_j: bool,
    /// `None` outside `I`.
    pub sign: Option<PairSign>,
    pub m1_s1: i128,
    pub m1_c1: i128,
    pub params: FamilyParams,
}

/// The central band `n >= 8`, `|m - C(n,2)/2| <= n/2`.
pub fn in_j(n: u64, m: u64) -> bool {
    let total = binom2(n);
    n >= 8 && total <= 2 * m + n && 2 * m <= total + n
}

/// Classifies `(n, m)` by exact comparison of `M1(S1)` and `M1(C1)`.
pub fn classify(n: u64, m: u64) -> Result<PairClass> {
    let params = FamilyParams::new(n, m)?;
    let m1_s1 = closed_m1_s1(n, params.kp, params.jp)?;
    let m1_c1 = m1_c1(params.k, params.j);
    let in_i = n >= 5;
    let sign = in_i.then(|| match m1_s1.cmp(&m1_c1) {
        std::cmp::Ordering::Greater => PairSign::Plus,
        std::cmp::Ordering::Less => PairSign::Minus,
        std::cmp::Ordering::Equal => PairSign::Star,
    });
    Ok(PairClass {
        n,
        m,
        in_i,
        in_j: in_j(n, m),
        sign,
        m1_s1,
        m1_c1,
        params,
    })
}

/// All `m` with `M1(S1) = M1(C1)`. Without `include_trivial`, `m` within 3 of
/// either end of the range is dropped.
pub fn istar_pairs(n: u64, include_trivial: bool) -> Result<Vec<u64>> {
    if n < 5 {
        return domain(format!("I* is defined for n >= 5; got {n}"));
    }
    let mut out = Vec::new();
    for m in 0..=binom2(n) {
        if !include_trivial && is_trivial_m(n, m) {
            continue;
        }
        if classify(n, m)?.sign == Some(PairSign::Star) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Predicts the sign from the three-way case split on the sign of `q_n`.
///
/// For `q_n > 0` the extra equality points `m = alpha_n, C(n,2) - alpha_n` are
/// taken when `(2n - 3)^2 - 2(2k_n - 1)^2` is `-1` or `7`.
pub fn moptimal_predict(n: u64, m: u64) -> Result<PairSign> {
    let total = binom2(n);
    if m > total {
        return domain(format!("m = {m} exceeds C({n}, 2) = {total}"));
    }
    let sp = spectrum(n)?;
    let half = Rational::new(total as i128, 2);
    let mr = Rational::from_integer(m as i128);
    let alpha = sp.alpha_n;
    let zero = Rational::from_integer(0);
    let trivial = is_trivial_m(n, m);
    if sp.q_n >= zero {
        let equal = if sp.q_n > zero {
            let (ni, ki) = (n as i128, sp.k_n as i128);
            let pell = (2 * ni - 3).pow(2) - 2 * (2 * ki - 1).pow(2);
            trivial || mr == half || ((m == alpha || m == total - alpha) && (pell == -1 || pell == 7))
        } else {
            trivial || mr == half || (alpha <= m && m <= total - alpha)
        };
        return Ok(if equal {
            PairSign::Star
        } else if mr <= half {
            PairSign::Plus
        } else {
            PairSign::Minus
        });
    }
    let r = sp.r_n;
    if trivial || mr == half || mr == half - r || mr == half + r {
        return Ok(PairSign::Star);
    }
    let star_side = mr <= half - r || (half <= mr && mr <= half + r);
    Ok(if star_side {
        PairSign::Plus
    } else {
        PairSign::Minus
    })
}

/// Strict sign away from the central band, for `n >= 6`.
pub fn different_check(n: u64, m: u64) -> Result<Option<PairSign>> {
    if n < 6 {
        return domain(format!("the off-centre test needs n >= 6; got {n}"));
    }
    let total = binom2(n);
    if m > total {
        return domain(format!("m = {m} exceeds C({n}, 2) = {total}"));
    }
    // 4 <= m < C/2 - n/2  and  C/2 + n/2 < m <= C - 4, doubled.
    if m >= 4 && 2 * m + n < total {
        Ok(Some(PairSign::Plus))
    } else if 2 * m > total + n && m + 4 <= total {
        Ok(Some(PairSign::Minus))
    } else {
        Ok(None)
    }
}

/// `n/sqrt(2) - 2 < x < n/sqrt(2) + 1`, by squaring.
pub fn within_root_half_band(n: u64, x: u64) -> bool {
    let (n, x) = (n as i128, x as i128);
    let lower = 2 * (x + 2).pow(2) > n * n;
    let upper = x - 1 < 0 || 2 * (x - 1).pow(2) < n * n;
    lower && upper
}

/// Both `k` and `k'` lie in the band `(n/sqrt 2 - 2, n/sqrt 2 + 1)`.
pub fn kandkprime_holds(n: u64, m: u64) -> Result<bool> {
    let p = FamilyParams::new(n, m)?;
    Ok(within_root_half_band(n, p.k) && within_root_half_band(n, p.kp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn spectrum_examples() {
        let s5 = spectrum(5).unwrap();
        assert_eq!((s5.k_n, s5.q_n), (3, r(2, 1)));
        let s6 = spectrum(6).unwrap();
        assert_eq!((s6.k_n, s6.q_n, s6.alpha_n), (4, r(0, 1), 6));
        let s7 = spectrum(7).unwrap();
        assert_eq!((s7.k_n, s7.q_n, s7.r_n), (5, r(-4, 1), r(3, 2)));
        assert!(spectrum(4).is_err());
    }

    #[test]
    fn spectrum_invariants() {
        for n in 5..=500u64 {
            let s = spectrum(n).unwrap();
            let total = binom2(n);
            assert!(2 * binom2(s.k_n) <= total && total < 2 * binom2(s.k_n + 1));
            assert_eq!(s.alpha_n, binom2(s.k_n));
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(6, 7).unwrap().sign, Some(PairSign::Star));
        let c = classify(6, 5).unwrap();
        assert_eq!((c.sign, c.m1_s1, c.m1_c1), (Some(PairSign::Plus), 30, 26));
        assert_eq!(classify(5, 5).unwrap().sign, Some(PairSign::Star));
        let outside = classify(4, 3).unwrap();
        assert!(!outside.in_i && outside.sign.is_none());
        assert!(classify(4, 7).is_err());
    }

    #[test]
    fn istar_examples() {
        assert_eq!(istar_pairs(5, false).unwrap(), vec![5]);
        assert_eq!(istar_pairs(6, false).unwrap(), vec![6, 7, 8, 9]);
        assert_eq!(istar_pairs(7, false).unwrap(), vec![9, 12]);
        assert_eq!(
            istar_pairs(6, true).unwrap(),
            vec![0, 1, 2, 3, 6, 7, 8, 9, 12, 13, 14, 15]
        );
    }

    #[test]
    fn moptimal_examples() {
        for m in 6..=9 {
            assert_eq!(moptimal_predict(6, m).unwrap(), PairSign::Star);
        }
        assert_eq!(moptimal_predict(7, 9).unwrap(), PairSign::Star);
        for n in 5..30 {
            assert_eq!(moptimal_predict(n, 2).unwrap(), PairSign::Star);
        }
    }

    #[test]
    fn different_examples() {
        assert_eq!(different_check(10, 10).unwrap(), Some(PairSign::Plus));
        assert_eq!(different_check(10, 41).unwrap(), Some(PairSign::Minus));
        assert_eq!(different_check(8, 14).unwrap(), None);
        assert!(different_check(5, 3).is_err());
    }

    #[test]
    fn sign_flips_under_complement() {
        for n in 5..=40u64 {
            let total = binom2(n);
            for m in 0..=total {
                let a = classify(n, m).unwrap().sign.unwrap();
                let b = classify(n, total - m).unwrap().sign.unwrap();
                let flipped = match a {
                    PairSign::Plus => PairSign::Minus,
                    PairSign::Minus => PairSign::Plus,
                    PairSign::Star => PairSign::Star,
                };
                assert_eq!(b, flipped, "({n}, {m})");
            }
        }
    }

    #[test]
    fn band_check_is_exact() {
        // n = 10: n / sqrt 2 = 7.07..., band is (5.07, 8.07).
        assert!(!within_root_half_band(10, 5));
        assert!(within_root_half_band(10, 6));
        assert!(within_root_half_band(10, 8));
        assert!(!within_root_half_band(10, 9));
    }
}
