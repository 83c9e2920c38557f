//! Quasi-invariance tests and graded components of Q_m(3, F_p).
//!
//! A graded component is the kernel of the linear conditions "the
//! coefficient of u^t in (1 - s_ij)K at x_j = x_i + u vanishes for t < 2m+1".
//! The conditions of s12 split into independent blocks by the exponent of
//! x3, so they are solved first; the s13 and s23 conditions are then imposed
//! on that kernel. Both steps are exact and the result is the kernel of the
//! full system.

use std::fmt;

use crate::coeff::{add_mod, mul_mod, PrimeField, Ring};
use crate::dense::{self, Form, SymmetricMultiples};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Insert};
use crate::poly::{Monomial, Perm, Poly};

/// The order m, stored as 2m, together with the characteristic it lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QuasiOrder {
    twice_m: u32,
    p: u64,
}

impl QuasiOrder {
    /// Half-integers are accepted only in characteristic 2. `p = 0` stands
    /// for characteristic zero.
    pub fn new(p: u64, twice_m: u32) -> Result<Self> {
        if p != 0 {
            PrimeField::new(p)?;
        }
        if p != 2 && twice_m % 2 == 1 {
            return Err(Error::InvalidOrder(format!(
                "m = {twice_m}/2 is a half-integer, which is only meaningful in characteristic 2"
            )));
        }
        Ok(QuasiOrder { twice_m, p })
    }

    pub fn integer(p: u64, m: u32) -> Result<Self> {
        Self::new(p, 2 * m)
    }

    pub fn twice_m(&self) -> u32 {
        self.twice_m
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Required divisibility exponent 2m + 1.
    pub fn r(&self) -> u32 {
        self.twice_m + 1
    }

    /// 6m + 3, the top degree of the Hilbert numerator.
    pub fn top_degree(&self) -> u32 {
        3 * self.twice_m + 3
    }

    pub fn is_half_integer(&self) -> bool {
        self.twice_m % 2 == 1
    }

    /// m itself, when it is an integer.
    pub fn m(&self) -> Option<u32> {
        (!self.is_half_integer()).then_some(self.twice_m / 2)
    }

    pub fn field(&self) -> Result<PrimeField> {
        if self.p == 0 {
            return Err(Error::Unsupported("characteristic zero has no prime field".into()));
        }
        PrimeField::new(self.p)
    }
}

impl fmt::Display for QuasiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_half_integer() {
            write!(f, "{}/2", self.twice_m)
        } else {
            write!(f, "{}", self.twice_m / 2)
        }
    }
}

const TRANSPOSITIONS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

/// Minimum over the three transpositions of the valuation of (1 - s_ij)K
/// along (i, j); `None` stands for infinity (K symmetric).
pub fn quasi_order<R: Ring>(k: &Poly<R>) -> Result<Option<u32>> {
    if k.is_zero() {
        return Err(Error::UndefinedOrder);
    }
    let mut best: Option<u32> = None;
    for (i, j) in TRANSPOSITIONS {
        let diff = k - &k.permute(&Perm::transposition(i, j));
        if let Some(v) = diff.valuation_along(i, j) {
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    }
    Ok(best)
}

pub fn is_m_quasi_invariant<R: Ring>(k: &Poly<R>, m: &QuasiOrder) -> Result<bool> {
    if k.ring().characteristic() != m.characteristic() {
        return Err(Error::RingMismatch(
            k.ring().name(),
            format!("characteristic {}", m.characteristic()),
        ));
    }
    if k.is_zero() {
        return Ok(true);
    }
    Ok(quasi_order(k)?.map_or(true, |o| o >= m.r()))
}

/// C(n, t) mod p for n <= d and t < r.
struct BinomialTable {
    rows: Vec<Vec<u64>>,
}

impl BinomialTable {
    fn new(field: &PrimeField, d: u32, r: u32) -> Self {
        let rows = (0..=d)
            .map(|n| (0..r).map(|t| field.binomial_mod(n, t)).collect())
            .collect();
        BinomialTable { rows }
    }

    #[inline]
    fn get(&self, n: u32, t: u32) -> u64 {
        self.rows[n as usize][t as usize]
    }
}

/// Kernel vectors of the s12 conditions, as sparse lists of
/// (monomial index, coefficient).
fn s12_kernel(p: u64, d: u32, r: u32, bin: &BinomialTable) -> Vec<Vec<(usize, u64)>> {
    let tmax = r.min(d + 1);
    let mut out = Vec::new();
    for c in 0..=d {
        let n = d - c;
        let ncols = n as usize + 1;
        let mut ech = Echelon::new(p, ncols);
        for t in 1..tmax {
            let row: Vec<u64> = (0..=n)
                .map(|e1| (bin.get(n - e1, t) + p - bin.get(e1, t)) % p)
                .collect();
            ech.insert(row);
            if ech.rank() == ncols {
                break;
            }
        }
        for v in ech.kernel() {
            out.push(
                v.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(e1, &x)| (dense::index(d, e1 as u32, n - e1 as u32), x))
                    .collect(),
            );
        }
    }
    out
}

/// Basis of the degree-d component in dense coordinates (not canonical).
fn component_vectors(m: &QuasiOrder, d: u32) -> Result<Vec<Vec<u64>>> {
    let field = m.field()?;
    let p = field.modulus();
    let r = m.r();
    let nmon = dense::monomial_count(d);
    let bin = BinomialTable::new(&field, d, r);
    let stage1 = s12_kernel(p, d, r, &bin);
    let n1 = stage1.len();
    let tmax = r.min(d + 1);
    if tmax <= 1 || n1 == 0 {
        return Ok(stage1.iter().map(|v| to_dense(v, nmon)).collect());
    }

    // rows: s13 conditions keyed by (t, e2), then s23 conditions keyed by (t, e1)
    let block = (d as usize + 1) * (tmax as usize - 1);
    let mut b = vec![vec![0u64; n1]; 2 * block];
    let mons: Vec<Monomial> = Monomial::of_degree(d);
    for (col, v) in stage1.iter().enumerate() {
        for &(mi, x) in v {
            let [e1, e2, e3] = mons[mi].0;
            for t in 1..tmax {
                let base = (t as usize - 1) * (d as usize + 1);
                let c13 = (bin.get(e3, t) + p - bin.get(e1, t)) % p;
                if c13 != 0 {
                    let cell = &mut b[base + e2 as usize][col];
                    *cell = add_mod(*cell, mul_mod(c13, x, p), p);
                }
                let c23 = (bin.get(e3, t) + p - bin.get(e2, t)) % p;
                if c23 != 0 {
                    let cell = &mut b[block + base + e1 as usize][col];
                    *cell = add_mod(*cell, mul_mod(c23, x, p), p);
                }
            }
        }
    }
    let mut ech = Echelon::new(p, n1);
    for row in b.into_iter().filter(|r| r.iter().any(|&x| x != 0)) {
        ech.insert(row);
        if ech.rank() == n1 {
            break;
        }
    }
    let kernel = ech.kernel();
    Ok(kernel
        .into_iter()
        .map(|y| {
            let mut out = vec![0u64; nmon];
            for (yk, v) in y.iter().zip(&stage1) {
                if *yk == 0 {
                    continue;
                }
                for &(mi, x) in v {
                    out[mi] = add_mod(out[mi], mul_mod(*yk, x, p), p);
                }
            }
            out
        })
        .collect())
}

fn to_dense(v: &[(usize, u64)], n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for &(i, x) in v {
        out[i] = x;
    }
    out
}

/// dim of the degree-d component of Q_m(3, F_p).
pub fn dim_component(m: &QuasiOrder, d: u32) -> Result<usize> {
    Ok(component_vectors(m, d)?.len())
}

/// A basis of one graded piece of Q_m(3, F_p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComponentBasis {
    pub m: QuasiOrder,
    pub degree: u32,
    pub basis: Vec<Poly<PrimeField>>,
}

impl GradedComponentBasis {
    pub fn p(&self) -> u64 {
        self.m.characteristic()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Reduced row-echelon basis of the span of `vecs` with respect to
/// descending graded-lex order: the first element has the largest leading
/// monomial, every leading coefficient is 1 and no leading monomial appears
/// in another element.
fn canonical_basis(field: &PrimeField, d: u32, vecs: &[Vec<u64>]) -> Vec<Poly<PrimeField>> {
    let n = dense::monomial_count(d);
    let mut ech = Echelon::new(field.modulus(), n);
    for v in vecs {
        ech.insert(v.iter().rev().copied().collect());
    }
    ech.rref_rows()
        .into_iter()
        .map(|row| {
            let coeffs: Vec<u64> = row.into_iter().rev().collect();
            Form {
                p: field.modulus(),
                degree: d,
                coeffs,
            }
            .to_poly(field)
        })
        .collect()
}

pub fn component_basis(m: &QuasiOrder, d: u32) -> Result<GradedComponentBasis> {
    let field = m.field()?;
    let vecs = component_vectors(m, d)?;
    Ok(GradedComponentBasis {
        m: *m,
        degree: d,
        basis: canonical_basis(&field, d, &vecs),
    })
}

/// The eigenvalue-`eigenvalue` eigenspace of s_ij inside the degree-d
/// component.
pub fn eigen_component(
    m: &QuasiOrder,
    d: u32,
    transposition: (usize, usize),
    eigenvalue: i8,
) -> Result<GradedComponentBasis> {
    let field = m.field()?;
    let p = field.modulus();
    if eigenvalue != 1 && eigenvalue != -1 {
        return Err(Error::Contract(format!("eigenvalue {eigenvalue} is not +1 or -1")));
    }
    if eigenvalue == -1 && p == 2 {
        return Err(Error::Unsupported("eigenvalue -1 equals +1 in characteristic 2".into()));
    }
    let s = Perm::transposition(transposition.0, transposition.1);
    let vecs = component_vectors(m, d)?;
    let lambda = if eigenvalue == 1 { 1 } else { p - 1 };
    let n = dense::monomial_count(d);
    let k = vecs.len();
    let mons = Monomial::of_degree(d);
    let mut ech = Echelon::with_aug(p, n, k);
    let mut kernel = Vec::new();
    for (i, v) in vecs.iter().enumerate() {
        // s v - λ v, then the unit vector e_i
        let mut row = vec![0u64; n + k];
        for (mi, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let img = s.act_monomial(&mons[mi]);
            let j = dense::index(d, img.0[0], img.0[1]);
            row[j] = add_mod(row[j], x, p);
            row[mi] = add_mod(row[mi], mul_mod(p - lambda, x, p), p);
        }
        row[n + i] = 1;
        if let Insert::Dependent(rel) = ech.insert(row) {
            kernel.push(rel);
        }
    }
    let eigvecs: Vec<Vec<u64>> = kernel
        .iter()
        .map(|y| {
            let mut out = vec![0u64; n];
            for (yi, v) in y.iter().zip(&vecs) {
                if *yi == 0 {
                    continue;
                }
                for (o, &x) in out.iter_mut().zip(v) {
                    *o = add_mod(*o, mul_mod(*yi, x, p), p);
                }
            }
            out
        })
        .collect();
    Ok(GradedComponentBasis {
        m: *m,
        degree: d,
        basis: canonical_basis(&field, d, &eigvecs),
    })
}

pub(crate) fn check_homogeneous(k: &Poly<PrimeField>) -> Result<Option<u32>> {
    if k.is_zero() {
        return Ok(None);
    }
    k.homogeneous_degree().map(Some).ok_or(Error::NotHomogeneous)
}

/// Symmetric coefficients P_i of a combination Σ P_i g_i.
pub(crate) fn witness_from(
    field: &PrimeField,
    coeffs: &[u64],
    labels: &[(usize, (u32, u32, u32))],
    ngens: usize,
    negate: bool,
) -> Vec<Poly<PrimeField>> {
    let p = field.modulus();
    let mut out = vec![Poly::zero(field); ngens];
    for (&c, &(g, e)) in coeffs.iter().zip(labels) {
        if c == 0 {
            continue;
        }
        let c = if negate { (p - c) % p } else { c };
        out[g] = &out[g] + &dense::symmetric_monomial(field, e).scale(&field.elem(c));
    }
    out
}

/// Products of each generator with every symmetric monomial, landing in
/// degree `d`, with (generator index, exponent) labels.
pub(crate) fn products_in_degree(
    gens: &[(Option<u32>, &Poly<PrimeField>)],
    d: u32,
) -> Result<(Vec<Vec<u64>>, Vec<(usize, (u32, u32, u32))>)> {
    let mut vecs = Vec::new();
    let mut labels = Vec::new();
    for (gi, (deg, g)) in gens.iter().enumerate() {
        let Some(dg) = deg else { continue };
        if *dg > d {
            continue;
        }
        let s = d - dg;
        let mult = SymmetricMultiples::new(&Form::from_poly(g, *dg)?, s);
        for (form, e) in mult.level(s).iter().zip(dense::symmetric_exponents(s)) {
            vecs.push(form.coeffs.clone());
            labels.push((gi, e));
        }
    }
    Ok((vecs, labels))
}

/// Decides whether K = Σ P_i g_i with symmetric P_i; on success returns the
/// P_i.
pub fn in_module_span(
    k: &Poly<PrimeField>,
    gens: &[Poly<PrimeField>],
) -> Result<Option<Vec<Poly<PrimeField>>>> {
    let field = *k.ring();
    let Some(dk) = check_homogeneous(k)? else {
        return Ok(Some(vec![Poly::zero(&field); gens.len()]));
    };
    let degs: Vec<Option<u32>> = gens.iter().map(check_homogeneous).collect::<Result<_>>()?;
    let tagged: Vec<(Option<u32>, &Poly<PrimeField>)> = degs.into_iter().zip(gens).collect();
    let (vecs, labels) = products_in_degree(&tagged, dk)?;
    let n = dense::monomial_count(dk);
    let na = vecs.len();
    let mut ech = Echelon::with_aug(field.modulus(), n, na);
    for (i, v) in vecs.into_iter().enumerate() {
        let mut row = v;
        row.resize(n + na, 0);
        row[n + i] = 1;
        ech.insert(row);
    }
    let mut target = Form::from_poly(k, dk)?.coeffs;
    target.resize(n + na, 0);
    ech.reduce(&mut target);
    if target[..n].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    Ok(Some(witness_from(&field, &target[n..], &labels, gens.len(), true)))
}

/// A symmetric relation Σ P_i g_i = 0 found in a given degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: u32,
    pub coefficients: Vec<Poly<PrimeField>>,
}

/// Searches degrees 0..=max_degree in increasing order for symmetric
/// P_i, not all zero, with Σ P_i g_i = 0. The first nonzero P_i is scaled
/// to have leading coefficient 1.
pub fn find_relation(gens: &[Poly<PrimeField>], p: u64, max_degree: u32) -> Result<Option<Relation>> {
    let field = PrimeField::new(p)?;
    for g in gens {
        if g.ring() != &field {
            return Err(Error::RingMismatch(g.ring().name(), field.name()));
        }
    }
    let degs: Vec<Option<u32>> = gens.iter().map(check_homogeneous).collect::<Result<_>>()?;
    if let Some(i) = degs.iter().position(|d| d.is_none()) {
        // a zero generator satisfies 1 * g_i = 0
        let mut coefficients = vec![Poly::zero(&field); gens.len()];
        coefficients[i] = Poly::one(&field);
        return Ok(Some(Relation {
            degree: 0,
            coefficients,
        }));
    }
    let tagged: Vec<(Option<u32>, &Poly<PrimeField>)> = degs.into_iter().zip(gens).collect();
    for d in 0..=max_degree {
        let (vecs, labels) = products_in_degree(&tagged, d)?;
        let n = dense::monomial_count(d);
        let na = vecs.len();
        let mut ech = Echelon::with_aug(p, n, na);
        for (i, v) in vecs.into_iter().enumerate() {
            let mut row = v;
            row.resize(n + na, 0);
            row[n + i] = 1;
            if let Insert::Dependent(rel) = ech.insert(row) {
                let mut coefficients = witness_from(&field, &rel, &labels, gens.len(), false);
                let lead = coefficients
                    .iter()
                    .find_map(|c| c.leading_term().map(|(_, v)| *v))
                    .expect("a dependent insertion has a nonzero coefficient");
                let inv = field.div_exact(&field.one(), &lead).expect("nonzero");
                coefficients.iter_mut().for_each(|c| *c = c.scale(&inv));
                return Ok(Some(Relation {
                    degree: d,
                    coefficients,
                }));
            }
        }
    }
    Ok(None)
}

/// Number of symmetric monomials e1^a e2^b e3^c of degree d.
pub fn symmetric_dimension(d: u32) -> usize {
    dense::symmetric_exponents(d).len()
}

#[cfg(test)]
mod tests;
