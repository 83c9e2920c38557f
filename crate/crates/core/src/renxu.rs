//! Degrees of the lowest nonsymmetric generators.
//!
//! In characteristic 3 a low-degree generator exists exactly when m has a
//! base-3 digit equal to 1; it is then a product P_k^(3^a) Δ^(2b) of a
//! Frobenius power of a characteristic-zero generator with a power of the
//! Vandermonde Δ. In characteristic 2 the degrees are read off the binary
//! size of 2m + 1.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{integer_content, Integers, PrimeField};
use crate::error::{Error, Result};
use crate::linalg::kernel_rational;
use crate::poly::{reduce_mod_p, vandermonde, Monomial, Poly};
use crate::quasi::QuasiOrder;

/// True iff some base-3 digit of m equals 1.
pub fn in_x(m: u64) -> bool {
    let mut n = m;
    while n > 0 {
        if n % 3 == 1 {
            return true;
        }
        n /= 3;
    }
    false
}

/// Membership through the intervals 3^(a-1) <= m mod 3^a <= 2*3^(a-1) - 1.
pub fn in_x_interval(m: u64) -> bool {
    let m = m as u128;
    let mut lo = 1u128;
    while lo <= m {
        let r = m % (3 * lo);
        if lo <= r && r < 2 * lo {
            return true;
        }
        lo *= 3;
    }
    false
}

/// Whether integers a, k >= 0 exist with
/// (3m + 3)/(3k + 2) <= 3^a <= 3m/(3k + 1).
pub fn conjecture_interval_check(m: u64) -> bool {
    let mut pow = 1u64;
    while pow <= 3 * m {
        let mut k = 0u64;
        while pow * (3 * k + 1) <= 3 * m {
            if 3 * m + 3 <= pow * (3 * k + 2) {
                return true;
            }
            k += 1;
        }
        pow *= 3;
    }
    false
}

/// Default largest k for which `char0_generator` runs.
pub const CHAR0_BUDGET: u32 = 4;

/// The s12-anti-invariant generator of Q_k(3, Q) in degree 3k + 1, as an
/// integer polynomial with coprime coefficients and positive leading
/// coefficient.
pub fn char0_generator(k: u32) -> Result<Poly<Integers>> {
    char0_generator_with_budget(k, CHAR0_BUDGET)
}

pub fn char0_generator_with_budget(k: u32, max_k: u32) -> Result<Poly<Integers>> {
    if k > max_k {
        return Err(Error::BudgetExceeded(format!(
            "characteristic-zero generator for k = {k} exceeds the budget k <= {max_k}"
        )));
    }
    let d = 3 * k + 1;
    let r = 2 * k + 1;
    let mons = Monomial::of_degree(d);
    let n = mons.len();
    let col = |m: &Monomial| mons.binary_search(m).expect("monomial of degree d");
    let bin = |n: u32, t: u32| -> BigInt {
        if t > n {
            BigInt::zero()
        } else {
            num_integer::binomial(BigInt::from(n), BigInt::from(t))
        }
    };
    let mut rows = Vec::new();
    // s12 K = -K
    for m in &mons {
        let [e1, e2, e3] = m.0;
        if e1 < e2 {
            continue;
        }
        let mut row = vec![BigInt::zero(); n];
        row[col(m)] += 1;
        row[col(&Monomial::new(e2, e1, e3))] += 1;
        rows.push(row);
    }
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let kk = 3 - i - j;
        for t in 1..r {
            for ek in 0..=d {
                let mut row = vec![BigInt::zero(); n];
                let mut any = false;
                for (c, m) in mons.iter().enumerate() {
                    if m.0[kk] != ek {
                        continue;
                    }
                    let v = bin(m.0[j], t) - bin(m.0[i], t);
                    if !v.is_zero() {
                        row[c] = v;
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = kernel_rational(n, rows);
    if kernel.len() != 1 {
        return Err(Error::Contract(format!(
            "expected a one-dimensional solution space in degree {d}, found dimension {}",
            kernel.len()
        )));
    }
    let v: &Vec<BigRational> = &kernel[0];
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = integer_content(&ints);
    ints.iter_mut().for_each(|x| *x /= &g);
    if ints.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        ints.iter_mut().for_each(|x| *x = -&*x);
    }
    Ok(Poly::from_terms(&Integers, mons.into_iter().zip(ints)))
}

/// The reduction of `char0_generator(k)` modulo 3.
pub fn pk_mod3(k: u32) -> Result<Poly<PrimeField>> {
    let f3 = PrimeField::new(3)?;
    Ok(reduce_mod_p(&char0_generator(k)?, &f3))
}

/// A candidate P_k^(3^a) Δ^(2b) of degree 3^a (3k + 1) + 6b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CounterexampleSpec {
    pub a: u32,
    pub k: u32,
    pub b: u32,
    pub degree: u32,
}

impl CounterexampleSpec {
    pub fn polynomial(&self) -> Result<Poly<PrimeField>> {
        let f3 = PrimeField::new(3)?;
        let base = pk_mod3(self.k)?.pow(3u32.pow(self.a));
        Ok(&base * &vandermonde(&f3).pow(2 * self.b))
    }
}

/// Smallest b with 3^a (2k + 1) + 2b >= 2m + 1.
fn minimal_b(m: u64, a: u32, k: u64) -> u64 {
    let reach = 3u64.pow(a) * (2 * k + 1);
    (2 * m + 1).saturating_sub(reach) / 2
}

/// The lowest-degree P_k^(3^a) Δ^(2b) that is m-quasi-invariant over F3
/// and has degree below 3m + 1. Ties go to the lexicographically smallest
/// (a, k).
pub fn minimal_counterexample(m: u32) -> Option<CounterexampleSpec> {
    let m64 = m as u64;
    let mut a_max = 0u32;
    while 3u64.pow(a_max) < 2 * m64 + 1 {
        a_max += 1;
    }
    let mut best: Option<CounterexampleSpec> = None;
    for a in 1..=a_max {
        for k in 0..=m64 {
            if in_x(k) {
                continue;
            }
            let b = minimal_b(m64, a, k);
            let degree = 3u64.pow(a) * (3 * k + 1) + 6 * b;
            if degree >= 3 * m64 + 1 {
                continue;
            }
            let cand = CounterexampleSpec {
                a,
                k: k as u32,
                b: b as u32,
                degree: degree as u32,
            };
            if best.map_or(true, |b| cand.degree < b.degree) {
                best = Some(cand);
            }
        }
    }
    best
}

/// (2^(a+1), 6m + 3 - 2^(a+1)) with a the largest integer with 2^a < 2m + 1;
/// (1, 2) for m = 0.
pub fn char2_degrees(m: &QuasiOrder) -> (u32, u32) {
    let r = m.r();
    if m.twice_m() == 0 {
        return (1, 2);
    }
    let mut a = 0u32;
    while 1u32 << (a + 1) < r {
        a += 1;
    }
    let pa = 1u32 << a;
    (2 * pa, pa + 3 * (r - pa))
}

/// The largest a with 2^a < 2m + 1.
pub fn char2_exponent(m: &QuasiOrder) -> Option<u32> {
    if m.twice_m() == 0 {
        return None;
    }
    let mut a = 0u32;
    while 1u32 << (a + 1) < m.r() {
        a += 1;
    }
    Some(a)
}

/// Degree of the lowest nonsymmetric generator of Q_m(3, F_p), p in {2, 3}.
pub fn lowest_generator_degree(m: &QuasiOrder) -> Result<u32> {
    match m.characteristic() {
        3 => {
            let mi = m.m().expect("characteristic 3 orders are integers");
            Ok(minimal_counterexample(mi).map_or(3 * mi + 1, |c| c.degree))
        }
        2 => {
            let (x, y) = char2_degrees(m);
            Ok(x.min(y))
        }
        p => Err(Error::Unsupported(format!(
            "closed-form generator degrees are only known for p = 2, 3 (got {p})"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Flat,
    Climbing,
    Closed,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Flat => "flat",
            Phase::Climbing => "climbing",
            Phase::Closed => "closed",
        })
    }
}

/// Where m sits on the staircase that starts at t + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StaircaseInfo {
    pub m: u32,
    /// Largest non-member of X below m.
    pub t: u32,
    /// (a, k) of the generator for t + 1.
    pub a: u32,
    pub k: u32,
    /// (3^(a-1) + 1) / 2.
    pub d: u32,
    pub phase: Phase,
    /// Degree predicted by the staircase.
    pub degree: u32,
}

pub fn staircase_info(m: u32) -> Result<StaircaseInfo> {
    if !in_x(m as u64) {
        return Err(Error::Contract(format!("{m} has no base-3 digit 1")));
    }
    let t = (0..m).rev().find(|&t| !in_x(t as u64)).expect("0 is not in X");
    let start = minimal_counterexample(t + 1).ok_or_else(|| {
        Error::Contract(format!("no low-degree generator for {} although it is in X", t + 1))
    })?;
    let d = (3u32.pow(start.a - 1) + 1) / 2;
    if in_x((t + 2 * d) as u64) {
        return Err(Error::Contract(format!(
            "staircase from {} does not close at {}",
            t + 1,
            t + 2 * d
        )));
    }
    let (phase, degree) = if m <= t + d {
        (Phase::Flat, start.degree)
    } else if m < t + 2 * d {
        (Phase::Climbing, start.degree + 6 * (m - t - d))
    } else {
        return Err(Error::Contract(format!("{m} lies past the staircase closing at {}", t + 2 * d)));
    };
    Ok(StaircaseInfo {
        m,
        t,
        a: start.a,
        k: start.k,
        d,
        phase,
        degree,
    })
}

/// One row of the characteristic-3 generator degree table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StaircaseRow {
    pub m: u32,
    pub lower: u32,
    pub upper: u32,
    pub in_x: bool,
    pub phase: Phase,
}

pub fn staircase_row(m: u32) -> Result<StaircaseRow> {
    let q = QuasiOrder::integer(3, m)?;
    let lower = lowest_generator_degree(&q)?;
    let in_x = in_x(m as u64);
    let phase = if in_x { staircase_info(m)?.phase } else { Phase::Closed };
    Ok(StaircaseRow {
        m,
        lower,
        upper: q.top_degree() - lower,
        in_x,
        phase,
    })
}

pub fn staircase_table(max_m: u32) -> Result<Vec<StaircaseRow>> {
    (0..=max_m).map(staircase_row).collect()
}

/// An alternative closed-form guess for the generator spec, kept for
/// comparison with `minimal_counterexample`.
///
/// a is the largest position (1-based, from the right) of a base-3 digit 1,
/// k = ⌈(⌈m/3^a⌉ - 1)/2⌉, b = max((2m + 1 - 3^a (2k + 1))/2, 0) and the
/// degree is 3^a (2k + 1) + 6b.
pub fn remark_formula(m: u32) -> Option<CounterexampleSpec> {
    let m64 = m as u64;
    let mut a = None;
    let (mut n, mut pos) = (m64, 1u32);
    while n > 0 {
        if n % 3 == 1 {
            a = Some(pos);
        }
        n /= 3;
        pos += 1;
    }
    let a = a?;
    let pa = 3u64.pow(a);
    let ceil_m = m64.div_ceil(pa);
    let k = (ceil_m - 1).div_ceil(2);
    let b = minimal_b(m64, a, k);
    Some(CounterexampleSpec {
        a,
        k: k as u32,
        b: b as u32,
        degree: (pa * (2 * k + 1) + 6 * b) as u32,
    })
}
