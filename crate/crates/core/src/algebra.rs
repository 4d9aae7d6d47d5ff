//! Exact arithmetic in `Q(sqrt 2)`, polynomials over it, and Sturm chains.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::classification::in_j;
use crate::constructions::{family_exists, FamilyTag};
use crate::error::{domain, Result};
use crate::invariants::family_h;

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `a + b sqrt 2` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadNumber {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadNumber { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadNumber::new(a, BigRational::zero())
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadNumber::new(rat(a, 1), rat(b, 1))
    }

    pub fn zero() -> Self {
        QuadNumber::from_ints(0, 0)
    }

    pub fn one() -> Self {
        QuadNumber::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: when `a` and `b` disagree, the larger of `a^2` and `2 b^2`
    /// decides.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * rat(2, 1);
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadNumber::new(self.a.clone(), -self.b.clone())
    }

    /// `a^2 - 2 b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(2, 1)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadNumber::new(&self.a / &n, -(&self.b / &n)))
    }

    /// Rational upper bound on `|self|`, using `sqrt 2 < 3/2`.
    pub fn abs_upper(&self) -> BigRational {
        self.a.abs() + self.b.abs() * rat(3, 2)
    }

    pub fn to_f64(&self) -> f64 {
        ratio_f64(&self.a) + ratio_f64(&self.b) * std::f64::consts::SQRT_2
    }
}

fn sign_of(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn ratio_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt2", self.a, self.b)
    }
}

impl Serialize for QuadNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq([self.a.to_string(), self.b.to_string()])
    }
}

impl Add for &QuadNumber {
    type Output = QuadNumber;
    fn add(self, o: &QuadNumber) -> QuadNumber {
        QuadNumber::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &QuadNumber {
    type Output = QuadNumber;
    fn sub(self, o: &QuadNumber) -> QuadNumber {
        QuadNumber::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &QuadNumber {
    type Output = QuadNumber;
    fn mul(self, o: &QuadNumber) -> QuadNumber {
        QuadNumber::new(
            &self.a * &o.a + &self.b * &o.b * rat(2, 1),
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Div for &QuadNumber {
    type Output = QuadNumber;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QuadNumber) -> QuadNumber {
        self * &o.inverse().expect("division by zero in Q(sqrt 2)")
    }
}

impl Neg for &QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        QuadNumber::new(-self.a.clone(), -self.b.clone())
    }
}

/// Coefficients in ascending degree; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadPolynomial {
    coeffs: Vec<QuadNumber>,
}

impl QuadPolynomial {
    pub fn new(mut coeffs: Vec<QuadNumber>) -> Self {
        while coeffs.last().is_some_and(QuadNumber::is_zero) {
            coeffs.pop();
        }
        QuadPolynomial { coeffs }
    }

    /// From `(a_i, b_i)` integer pairs scaled by `1/den`, ascending degree.
    pub fn from_int_pairs(pairs: &[(i64, i64)], den: i64) -> Self {
        QuadPolynomial::new(
            pairs
                .iter()
                .map(|&(a, b)| QuadNumber::new(rat(a, den), rat(b, den)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[QuadNumber] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&QuadNumber> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &QuadNumber) -> QuadNumber {
        self.coeffs
            .iter()
            .rev()
            .fold(QuadNumber::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> QuadNumber {
        self.eval(&QuadNumber::rational(x.clone()))
    }

    pub fn derivative(&self) -> Self {
        QuadPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &QuadNumber::from_ints(i as i64, 0))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = QuadNumber::zero();
        QuadPolynomial::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = other.coeffs.get(i).unwrap_or(&zero);
                    a - b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        QuadPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Remainder of division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().inverse().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let factor = &r[top] * &lead_inv;
            let shift = top - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&factor * c);
            }
            r.pop();
            while r.last().is_some_and(QuadNumber::is_zero) {
                r.pop();
            }
        }
        QuadPolynomial::new(r)
    }
}

/// `p(x)`, the lower bound for `H(C1) - H(S1)` on the central band.
pub fn p_poly() -> QuadPolynomial {
    QuadPolynomial::from_int_pairs(&[(72, 0), (-46, -226), (19, 76), (-20, -37), (3, -2)], 8)
}

/// `q(x)`, the bound on the gaps between the S-side families.
pub fn q_poly() -> QuadPolynomial {
    QuadPolynomial::from_int_pairs(&[(4, 0), (0, -16), (-2, 0), (0, 2)], 8)
}

/// `r = p - q`.
pub fn r_poly() -> QuadPolynomial {
    p_poly().sub(&q_poly())
}

pub fn eval_p(x: &BigRational) -> QuadNumber {
    p_poly().eval_rational(x)
}

pub fn eval_q(x: &BigRational) -> QuadNumber {
    q_poly().eval_rational(x)
}

pub fn eval_r(x: &BigRational) -> QuadNumber {
    r_poly().eval_rational(x)
}

/// `f, f', -rem(f, f'), ..` until the remainder vanishes.
pub fn sturm_sequence(f: &QuadPolynomial) -> Result<Vec<QuadPolynomial>> {
    if f.is_zero() {
        return domain("Sturm sequence of the zero polynomial");
    }
    let mut chain = vec![f.clone()];
    let d = f.derivative();
    if d.is_zero() {
        return Ok(chain);
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            return Ok(chain);
        }
        chain.push(r);
    }
}

/// Sign changes along the chain at `x`, zeros skipped.
pub fn sign_variations(chain: &[QuadPolynomial], x: &BigRational) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| p.eval_rational(x).signum())
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots in `(lo, hi]`. Needs `f(lo) != 0`.
pub fn count_roots(f: &QuadPolynomial, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    if lo >= hi {
        return domain(format!("empty interval ({lo}, {hi}]"));
    }
    if f.eval_rational(lo).is_zero() {
        return domain(format!("f vanishes at the open end {lo}; move it"));
    }
    let chain = sturm_sequence(f)?;
    Ok(count_with_chain(&chain, lo, hi))
}

fn count_with_chain(chain: &[QuadPolynomial], lo: &BigRational, hi: &BigRational) -> usize {
    sign_variations(chain, lo).saturating_sub(sign_variations(chain, hi))
}

/// Integer `B` with every real root in `(-B, B)`.
pub fn root_bound(f: &QuadPolynomial) -> BigRational {
    let lead = f.leading().expect("zero polynomial");
    // |lead| >= a lower bound from |a| - 3/2 |b| when positive, else via the norm.
    let lead_abs_low = {
        let n = lead.norm().abs();
        // |a + b sqrt2| = |norm| / |a - b sqrt2| >= |norm| / abs_upper(conjugate).
        n / lead.conjugate().abs_upper()
    };
    let max = f.coeffs[..f.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs_upper())
        .max()
        .unwrap_or_else(BigRational::zero);
    (BigRational::one() + max / lead_abs_low).ceil() + BigRational::one()
}

/// Half-open bracket `(lo, hi]` around the greatest real root, refined by
/// exact bisection until `hi - lo < width`.
pub fn greatest_root_bracket(
    f: &QuadPolynomial,
    width: &BigRational,
) -> Result<Option<(BigRational, BigRational)>> {
    let chain = sturm_sequence(f)?;
    let b = root_bound(f);
    let mut lo = -b.clone();
    let mut hi = b;
    if count_with_chain(&chain, &lo, &hi) == 0 {
        return Ok(None);
    }
    while &(&hi - &lo) >= width {
        let mut mid = (&lo + &hi) / rat(2, 1);
        if f.eval_rational(&mid).is_zero() {
            mid = (&mid + &hi) / rat(2, 1);
        }
        if count_with_chain(&chain, &mid, &hi) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some((lo, hi)))
}

/// One `(n, m)` check of the two central-band inequalities.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub n: u64,
    pub m: u64,
    /// `H(C1) - H(S1) - p(n)`, must be `>= 0`.
    pub c1_s1_margin: QuadNumber,
    /// Largest `|H(S_i) - H(S_j)|` over existing families.
    pub s_gap: i128,
    /// `q(n) - s_gap`, must be `>= 0`.
    pub s_gap_margin: QuadNumber,
    pub pass: bool,
}

pub fn bound_check(n: u64, m: u64) -> Result<BoundCheck> {
    if !in_j(n, m) {
        return domain(format!("({n}, {m}) is outside the central band"));
    }
    let x = rat(n as i64, 1);
    let gap = family_h(n, m, FamilyTag::C1)? - family_h(n, m, FamilyTag::S1)?;
    let c1_s1_margin = &QuadNumber::from_ints(gap as i64, 0) - &eval_p(&x);
    let mut hs = Vec::new();
    for tag in [FamilyTag::S1, FamilyTag::S2, FamilyTag::S3] {
        if family_exists(n, m, tag)? {
            hs.push(family_h(n, m, tag)?);
        }
    }
    let s_gap = hs.iter().max().unwrap() - hs.iter().min().unwrap();
    let s_gap_margin = &eval_q(&x) - &QuadNumber::from_ints(s_gap as i64, 0);
    let pass = c1_s1_margin.signum() >= 0 && s_gap_margin.signum() >= 0;
    Ok(BoundCheck {
        n,
        m,
        c1_s1_margin,
        s_gap,
        s_gap_margin,
        pass,
    })
}

/// Everything the Sturm claim needs, in one report.
#[derive(Clone, Debug, Serialize)]
pub struct SturmReport {
    pub chain_degrees: Vec<usize>,
    pub roots_436_437: usize,
    pub roots_437_1e6: usize,
    pub sign_r_436: i32,
    pub sign_r_437: i32,
    pub greatest_root: (String, String),
    pub pass: bool,
}

pub fn sturm_report() -> Result<SturmReport> {
    let r = r_poly();
    let chain = sturm_sequence(&r)?;
    let x436 = rat(436, 1);
    let x437 = rat(437, 1);
    let roots_436_437 = count_roots(&r, &x436, &x437)?;
    let roots_437_1e6 = count_roots(&r, &x437, &rat(1_000_000, 1))?;
    let sign_r_436 = eval_r(&x436).signum();
    let sign_r_437 = eval_r(&x437).signum();
    let (lo, hi) = greatest_root_bracket(&r, &rat(1, 1_000_000))?
        .expect("r has a real root");
    let pass = roots_436_437 == 1 && roots_437_1e6 == 0 && sign_r_437 > 0;
    Ok(SturmReport {
        chain_degrees: chain.iter().filter_map(QuadPolynomial::degree).collect(),
        roots_436_437,
        roots_437_1e6,
        sign_r_436,
        sign_r_437,
        greatest_root: (lo.to_string(), hi.to_string()),
        pass,
    })
}
