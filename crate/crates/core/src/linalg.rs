//! Exact linear algebra over F_p and Q.
//!
//! The F_p solver keeps an incremental row-echelon form. Rows are plain `u64`
//! vectors; while eliminating, entries are allowed to grow past p and are only
//! reduced when the next update could overflow, which keeps the inner loop a
//! straight multiply-add.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{add_mod, integer_content, inv_mod, mul_mod};

/// Incremental row-echelon form over F_p.
///
/// A row may carry `aug` trailing columns that take part in every row
/// operation but are never chosen as pivots. Inserting `(v, e_j)` for a list
/// of vectors records which combinations of the inputs each stored row is,
/// which yields both linear relations and solution witnesses.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u64,
    ncols: usize,
    aug: usize,
    rows: Vec<Vec<u64>>,
    pivot_cols: Vec<usize>,
    pivot_of_col: Vec<Option<usize>>,
    /// Largest multiply-add count that can be accumulated before reducing.
    lazy_budget: u64,
}

/// Outcome of reducing or inserting a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The vector was independent and is now stored.
    Independent,
    /// The vector reduced to zero; the augmented part of the residue.
    Dependent(Vec<u64>),
}

impl Echelon {
    pub fn new(p: u64, ncols: usize) -> Self {
        Self::with_aug(p, ncols, 0)
    }

    pub fn with_aug(p: u64, ncols: usize, aug: usize) -> Self {
        let sq = (p - 1) as u128 * (p - 1) as u128;
        let lazy_budget = if sq == 0 {
            u64::MAX
        } else {
            ((u64::MAX as u128 - (p - 1) as u128) / sq).min(u64::MAX as u128) as u64
        };
        Echelon {
            p,
            ncols,
            aug,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            pivot_of_col: vec![None; ncols],
            lazy_budget,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn width(&self) -> usize {
        self.ncols + self.aug
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces `v` (entries already below p) against the stored pivots.
    /// On return every entry is below p.
    pub fn reduce(&self, v: &mut [u64]) {
        debug_assert_eq!(v.len(), self.width());
        let p = self.p;
        let mut pending = 0u64;
        for col in 0..self.ncols {
            let Some(ri) = self.pivot_of_col[col] else {
                continue;
            };
            let c = v[col] % p;
            if c == 0 {
                v[col] = 0;
                continue;
            }
            if pending >= self.lazy_budget {
                v[col..].iter_mut().for_each(|x| *x %= p);
                pending = 0;
            }
            let f = p - c;
            let row = &self.rows[ri];
            if self.lazy_budget == 0 {
                for (x, &y) in v[col..].iter_mut().zip(&row[col..]) {
                    *x = add_mod(*x % p, mul_mod(f, y, p), p);
                }
            } else {
                for (x, &y) in v[col..].iter_mut().zip(&row[col..]) {
                    *x += f * y;
                }
                pending += 1;
            }
            v[col] = 0;
        }
        v.iter_mut().for_each(|x| *x %= p);
    }

    /// Reduces and, if nonzero in the main columns, stores the vector.
    pub fn insert(&mut self, mut v: Vec<u64>) -> Insert {
        let p = self.p;
        v.iter_mut().for_each(|x| *x %= p);
        self.reduce(&mut v);
        match v[..self.ncols].iter().position(|&x| x != 0) {
            None => Insert::Dependent(v[self.ncols..].to_vec()),
            Some(piv) => {
                let inv = inv_mod(v[piv], p);
                v[piv..].iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
                self.pivot_of_col[piv] = Some(self.rows.len());
                self.pivot_cols.push(piv);
                self.rows.push(v);
                Insert::Independent
            }
        }
    }

    /// Clears every pivot column above its pivot, giving the reduced form.
    fn back_substitute(&mut self) {
        let p = self.p;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.pivot_cols[i]));
        for (pos, &i) in order.iter().enumerate() {
            let pc = self.pivot_cols[i];
            let pivot_row = self.rows[i].clone();
            for &j in &order[pos + 1..] {
                let c = self.rows[j][pc];
                if c == 0 {
                    continue;
                }
                let f = p - c;
                for (x, &y) in self.rows[j][pc..].iter_mut().zip(&pivot_row[pc..]) {
                    *x = add_mod(*x % p, mul_mod(f, y, p), p);
                }
            }
        }
    }

    /// The reduced row-echelon rows, ordered by pivot column.
    pub fn rref_rows(mut self) -> Vec<Vec<u64>> {
        self.back_substitute();
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivot_cols[i]);
        let mut rows = std::mem::take(&mut self.rows);
        idx.into_iter().map(|i| std::mem::take(&mut rows[i])).collect()
    }

    /// Basis of the right kernel of the stored rows (main columns only).
    ///
    /// One vector per free column f, with a 1 at f and zeros at the other
    /// free columns, listed by increasing f.
    pub fn kernel(mut self) -> Vec<Vec<u64>> {
        let p = self.p;
        self.back_substitute();
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivot_of_col[f].is_some() {
                continue;
            }
            let mut v = vec![0u64; self.ncols];
            v[f] = 1;
            for (ri, row) in self.rows.iter().enumerate() {
                let x = row[f];
                if x != 0 {
                    v[self.pivot_cols[ri]] = p - x;
                }
            }
            out.push(v);
        }
        assert_eq!(out.len() + self.rows.len(), self.ncols, "rank-nullity");
        out
    }
}

/// Kernel of a matrix over F_p given by its rows.
pub fn kernel_mod_p(p: u64, ncols: usize, rows: impl IntoIterator<Item = Vec<u64>>) -> Vec<Vec<u64>> {
    let mut e = Echelon::new(p, ncols);
    for r in rows {
        e.insert(r);
        if e.rank() == ncols {
            break;
        }
    }
    e.kernel()
}

/// Rank of a matrix over F_p given by its rows.
pub fn rank_mod_p(p: u64, ncols: usize, rows: impl IntoIterator<Item = Vec<u64>>) -> usize {
    let mut e = Echelon::new(p, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Kernel of an integer matrix over Q.
///
/// Forward elimination is fraction-free: a row is combined as
/// `pivot * row - row[col] * pivot_row` and then divided by its content.
/// The returned basis is in reduced form (a 1 at the free column, zeros at
/// other free columns), one vector per free column in increasing order.
pub fn kernel_rational(ncols: usize, rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigRational>> {
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for mut row in rows {
        assert_eq!(row.len(), ncols);
        for (pc, prow) in &echelon {
            if row[*pc].is_zero() {
                continue;
            }
            let a = prow[*pc].clone();
            let b = row[*pc].clone();
            for (x, y) in row.iter_mut().zip(prow) {
                *x = &a * &*x - &b * y;
            }
            let g = integer_content(&row);
            if !g.is_zero() && !g.is_one() {
                row.iter_mut().for_each(|x| *x /= &g);
            }
        }
        if let Some(pc) = row.iter().position(|x| !x.is_zero()) {
            if row[pc].is_negative() {
                row.iter_mut().for_each(|x| *x = -&*x);
            }
            echelon.push((pc, row));
        }
    }
    echelon.sort_by_key(|(pc, _)| *pc);
    // back substitution in Q, last pivot first
    let mut reduced: Vec<(usize, Vec<BigRational>)> = Vec::with_capacity(echelon.len());
    for (pc, row) in echelon.into_iter().rev() {
        let lead = BigRational::from_integer(row[pc].clone());
        let mut r: Vec<BigRational> = row
            .into_iter()
            .map(|x| BigRational::from_integer(x) / &lead)
            .collect();
        for (qc, qrow) in &reduced {
            let c = r[*qc].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(qrow) {
                *x -= &c * y;
            }
        }
        reduced.push((pc, r));
    }
    let rank = reduced.len();
    let mut is_pivot = vec![false; ncols];
    for (pc, _) in &reduced {
        is_pivot[*pc] = true;
    }
    let mut out = Vec::new();
    for f in (0..ncols).filter(|&f| !is_pivot[f]) {
        let mut v = vec![BigRational::zero(); ncols];
        v[f] = BigRational::one();
        for (pc, r) in &reduced {
            v[*pc] = -r[f].clone();
        }
        out.push(v);
    }
    assert_eq!(out.len() + rank, ncols, "rank-nullity");
    out
}
