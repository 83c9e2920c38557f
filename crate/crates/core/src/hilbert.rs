//! Truncated Hilbert series: closed forms, the characteristic-zero shape and
//! the series read off the linear-algebra oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::quasi::{dim_component, QuasiOrder};
use crate::renxu;

/// Coefficients of a power series in t for degrees `0..coeffs.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    pub coeffs: Vec<u64>,
}

impl TruncatedSeries {
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs[d]
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Numerator data of a Hilbert series over the symmetric polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertShape {
    pub m: QuasiOrder,
    pub d_low: u32,
    /// (exponent, multiplicity) pairs of the numerator.
    pub numerator: Vec<(u32, u32)>,
    /// Set for half-integer m, where the closed form is an extrapolation.
    pub extended: bool,
}

impl HilbertShape {
    /// 1 + 2t^d + 2t^(6m+3-d) + t^(6m+3).
    pub fn new(m: QuasiOrder, d_low: u32) -> Self {
        let top = m.top_degree();
        HilbertShape {
            m,
            d_low,
            numerator: vec![(0, 1), (d_low, 2), (top - d_low, 2), (top, 1)],
            extended: m.is_half_integer(),
        }
    }

    pub fn d_high(&self) -> u32 {
        self.m.top_degree() - self.d_low
    }

    /// The numerator exponents with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .numerator
            .iter()
            .flat_map(|&(e, k)| std::iter::repeat(e).take(k as usize))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Σ t^deg / ((1-t)(1-t^2)(1-t^3)), truncated to `terms` coefficients.
pub fn series_of_free_module(generator_degrees: &[u32], terms: usize) -> TruncatedSeries {
    let mut c = vec![0u64; terms];
    for &g in generator_degrees {
        if (g as usize) < terms {
            c[g as usize] += 1;
        }
    }
    for k in 1..=3 {
        for i in k..terms {
            c[i] += c[i - k];
        }
    }
    TruncatedSeries { coeffs: c }
}

/// The Hilbert shape predicted for Q_m(3, F_p), p in {2, 3}.
pub fn hilbert_shape(m: &QuasiOrder) -> Result<HilbertShape> {
    let d = renxu::lowest_generator_degree(m)?;
    Ok(HilbertShape::new(*m, d))
}

pub fn series_closed_form(m: &QuasiOrder, terms: usize) -> Result<TruncatedSeries> {
    Ok(series_of_free_module(&hilbert_shape(m)?.degrees(), terms))
}

/// The characteristic-zero shape, d = 3m + 1.
pub fn char0_shape(m: u32) -> HilbertShape {
    let q = QuasiOrder::integer(0, m).expect("integer order");
    HilbertShape::new(q, 3 * m + 1)
}

pub fn series_char0(m: u32, terms: usize) -> TruncatedSeries {
    series_of_free_module(&char0_shape(m).degrees(), terms)
}

/// The characteristic-zero series for an order in any characteristic.
///
/// Over Q, (1 - s_ij)K vanishes to odd order along x_i = x_j, so a
/// half-integer m imposes the same conditions as m + 1/2.
pub fn series_char0_for(m: &QuasiOrder, terms: usize) -> TruncatedSeries {
    series_char0((m.twice_m() + 1) / 2, terms)
}

/// Default number of coefficients the oracle computes: 6m + 10.
pub fn default_budget(m: &QuasiOrder) -> usize {
    m.top_degree() as usize + 7
}

/// Dimensions of the graded components, from the oracle.
///
/// Refuses requests longer than `budget` (default 6m + 10) instead of
/// truncating.
pub fn series_empirical(m: &QuasiOrder, terms: usize, budget: Option<usize>) -> Result<TruncatedSeries> {
    let budget = budget.unwrap_or_else(|| default_budget(m));
    if terms > budget {
        return Err(Error::BudgetExceeded(format!(
            "{terms} terms requested, oracle budget is {budget}"
        )));
    }
    let coeffs = (0..terms as u32)
        .map(|d| dim_component(m, d).map(|x| x as u64))
        .collect::<Result<_>>()?;
    Ok(TruncatedSeries { coeffs })
}

/// True iff the numerator exponent multiset is invariant under e -> 6m+3-e.
pub fn palindrome_check(shape: &HilbertShape) -> bool {
    let top = shape.m.top_degree();
    let degs = shape.degrees();
    if degs.iter().any(|&e| e > top) {
        return false;
    }
    let mut mirrored: Vec<u32> = degs.iter().map(|&e| top - e).collect();
    mirrored.sort_unstable();
    mirrored == degs
}
