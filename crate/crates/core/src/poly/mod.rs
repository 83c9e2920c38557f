//! Sparse polynomials in x1, x2, x3 and the action of S3 on them.

mod parse;

pub use parse::parse_poly;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::coeff::{Integers, PrimeField, Ring};
use crate::error::{Error, Result};

/// Exponent vector (e1, e2, e3) of the monomial x1^e1 x2^e2 x3^e3.
///
/// Ordered graded-lexicographically: total degree first, then lex on the
/// exponents, so `x1 > x2 > x3` and every degree-2 monomial exceeds every
/// linear one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(e1: u32, e2: u32, e3: u32) -> Self {
        Monomial([e1, e2, e3])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= o.0[i])
    }

    fn div(&self, o: &Monomial) -> Monomial {
        Monomial([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    /// All monomials of total degree `d`, in ascending graded-lex order.
    pub fn of_degree(d: u32) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
        for e1 in 0..=d {
            for e2 in 0..=d - e1 {
                out.push(Monomial([e1, e2, d - e1 - e2]));
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then(self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// An element of S3, stored as the 0-based images of the three indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Perm([u8; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2]);

    /// Builds a permutation from the images of 1, 2, 3 (1-based).
    pub fn from_images(images: [u8; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if !(1..=3).contains(&i) || seen[(i - 1) as usize] {
                return Err(Error::Contract(format!("{images:?} is not a permutation of 1..3")));
            }
            seen[(i - 1) as usize] = true;
        }
        Ok(Perm([images[0] - 1, images[1] - 1, images[2] - 1]))
    }

    /// The transposition s_ij for 1-based `i != j`.
    pub fn transposition(i: usize, j: usize) -> Self {
        assert!(i != j && (1..=3).contains(&i) && (1..=3).contains(&j));
        let mut im = [0u8, 1, 2];
        im.swap(i - 1, j - 1);
        Perm(im)
    }

    /// The 3-cycle s = (1 2 3).
    pub fn cycle() -> Self {
        Perm([1, 2, 0])
    }

    pub fn all() -> [Perm; 6] {
        [
            Perm([0, 1, 2]),
            Perm([1, 0, 2]),
            Perm([0, 2, 1]),
            Perm([2, 1, 0]),
            Perm([1, 2, 0]),
            Perm([2, 0, 1]),
        ]
    }

    /// 1-based image of the 1-based index `i`.
    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1] as usize + 1
    }

    pub fn images(&self) -> [u8; 3] {
        [self.0[0] + 1, self.0[1] + 1, self.0[2] + 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
        ])
    }

    pub fn is_odd(&self) -> bool {
        let p = self.0;
        let inversions = (p[0] > p[1]) as u8 + (p[0] > p[2]) as u8 + (p[1] > p[2]) as u8;
        inversions % 2 == 1
    }

    /// The exponent vector of the image of a monomial under x_i -> x_σ(i).
    pub fn act_monomial(&self, m: &Monomial) -> Monomial {
        let mut out = [0u32; 3];
        for i in 0..3 {
            out[self.0[i] as usize] = m.0[i];
        }
        Monomial(out)
    }
}

/// A polynomial over the ring `R` in canonical sparse form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<R: Ring> {
    ring: R,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> Poly<R> {
    pub fn zero(ring: &R) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &R) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn constant(ring: &R, c: R::Elem) -> Self {
        Self::term(ring, Monomial::ONE, c)
    }

    pub fn term(ring: &R, m: Monomial, c: R::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(m, c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &R, e1: u32, e2: u32, e3: u32) -> Self {
        Self::term(ring, Monomial::new(e1, e2, e3), ring.one())
    }

    /// The variable x_i, 1-based.
    pub fn var(ring: &R, i: usize) -> Self {
        assert!((1..=3).contains(&i), "variable index {i} out of range");
        let mut e = [0u32; 3];
        e[i - 1] = 1;
        Self::term(ring, Monomial(e), ring.one())
    }

    /// Sums coefficients of repeated monomials and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, R::Elem)>>(ring: &R, it: I) -> Self {
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in it {
            match acc.get_mut(&m) {
                Some(v) => *v = ring.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Graded-lex largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// `Some(d)` if every term has degree `d`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_ring(&self, o: &Self) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch(self.ring.name(), o.ring.name()));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check_ring(o)?;
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            add_into(&self.ring, &mut terms, *m, c);
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check_ring(o)?;
        let r = &self.ring;
        let mut acc: HashMap<Monomial, R::Elem> =
            HashMap::with_capacity(self.len().saturating_mul(o.len()).min(1 << 16));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let prod = r.mul(c1, c2);
                let m = m1.mul(m2);
                match acc.get_mut(&m) {
                    Some(v) => *v = r.add(v, &prod),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !r.is_zero(c)).collect();
        Ok(Poly {
            ring: r.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let r = &self.ring;
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (*m, r.mul(v, c)))
            .filter(|(_, v)| !r.is_zero(v))
            .collect();
        Poly {
            ring: r.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        let r = &self.ring;
        Poly {
            ring: r.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, r.neg(v))).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under x_i -> x_σ(i).
    pub fn permute(&self, s: &Perm) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (s.act_monomial(m), c.clone()))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.permute(&Perm::transposition(1, 2)) == *self
            && self.permute(&Perm::transposition(2, 3)) == *self
    }

    /// Largest r with (x_i - x_j)^r dividing the polynomial; `None` for zero.
    ///
    /// Substitutes x_j = x_i + u and returns the smallest power of u with a
    /// nonzero coefficient.
    pub fn valuation_along(&self, i: usize, j: usize) -> Option<u32> {
        assert!(i != j && (1..=3).contains(&i) && (1..=3).contains(&j));
        if self.is_zero() {
            return None;
        }
        let (i, j) = (i - 1, j - 1);
        let k = 3 - i - j;
        let r = &self.ring;
        let max_t = self.terms.keys().map(|m| m.0[j]).max().unwrap_or(0);
        for t in 0..=max_t {
            let mut acc: HashMap<(u32, u32), R::Elem> = HashMap::new();
            for (m, c) in &self.terms {
                let b = m.0[j];
                if b < t {
                    continue;
                }
                let bin = r.binomial(b, t);
                if r.is_zero(&bin) {
                    continue;
                }
                let v = r.mul(c, &bin);
                let key = (m.0[i] + b - t, m.0[k]);
                match acc.get_mut(&key) {
                    Some(x) => *x = r.add(x, &v),
                    None => {
                        acc.insert(key, v);
                    }
                }
            }
            if acc.values().any(|c| !r.is_zero(c)) {
                return Some(t);
            }
        }
        unreachable!("a nonzero polynomial has a nonzero coefficient at u^max")
    }

    /// Exact quotient by `divisor`, or `None` if it does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.check_ring(divisor).ok()?;
        let r = &self.ring;
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(r);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qc = r.div_exact(c, &lc)?;
            let qm = m.div(&lm);
            let step = Poly::term(r, qm, qc);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Value at a point of R^3.
    pub fn eval(&self, point: &[R::Elem; 3]) -> R::Elem {
        let r = &self.ring;
        let pw = |x: &R::Elem, e: u32| {
            let mut acc = r.one();
            for _ in 0..e {
                acc = r.mul(&acc, x);
            }
            acc
        };
        self.terms.iter().fold(r.zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for v in 0..3 {
                t = r.mul(&t, &pw(&point[v], m.0[v]));
            }
            r.add(&acc, &t)
        })
    }

    /// Coefficient-wise image in another ring; zero images are dropped.
    pub fn map_ring<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(c)))
            .filter(|(_, c)| !target.is_zero(c))
            .collect();
        Poly {
            ring: target.clone(),
            terms,
        }
    }
}

fn add_into<R: Ring>(ring: &R, terms: &mut BTreeMap<Monomial, R::Elem>, m: Monomial, c: &R::Elem) {
    match terms.get_mut(&m) {
        Some(v) => {
            let s = ring.add(v, c);
            if ring.is_zero(&s) {
                terms.remove(&m);
            } else {
                *v = s;
            }
        }
        None => {
            if !ring.is_zero(c) {
                terms.insert(m, c.clone());
            }
        }
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        self.checked_add(o).expect("polynomials over the same ring")
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        self.checked_sub(o).expect("polynomials over the same ring")
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        self.checked_mul(o).expect("polynomials over the same ring")
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::neg(self)
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, e)),
        }
    }
    parts.join("*")
}

/// Canonical text form: graded-lex descending, `*` between factors.
pub fn format_poly<R: Ring>(p: &Poly<R>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let r = p.ring();
    let one = r.one();
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let negative = r.is_negative(c);
        let c = if negative { r.neg(c) } else { c.clone() };
        match (idx, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono = format_monomial(m);
        if mono.is_empty() {
            out.push_str(&r.format_elem(&c));
        } else if c == one {
            out.push_str(&mono);
        } else {
            out.push_str(&r.format_elem(&c));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// Coefficient-wise reduction of an integer polynomial modulo `p`.
pub fn reduce_mod_p(k: &Poly<Integers>, field: &PrimeField) -> Poly<PrimeField> {
    k.map_ring(field, |c: &BigInt| field.from_int(c))
}

/// e1, e2 or e3 over the given ring.
pub fn elementary_symmetric<R: Ring>(ring: &R, i: usize) -> Poly<R> {
    let m = |e1, e2, e3| Poly::monomial(ring, e1, e2, e3);
    match i {
        1 => &(&m(1, 0, 0) + &m(0, 1, 0)) + &m(0, 0, 1),
        2 => &(&m(1, 1, 0) + &m(1, 0, 1)) + &m(0, 1, 1),
        3 => m(1, 1, 1),
        _ => panic!("elementary symmetric index {i} out of range 1..=3"),
    }
}

/// x_i - x_j.
pub fn linear_difference<R: Ring>(ring: &R, i: usize, j: usize) -> Poly<R> {
    &Poly::var(ring, i) - &Poly::var(ring, j)
}

/// The Vandermonde product (x1 - x2)(x1 - x3)(x2 - x3).
pub fn vandermonde<R: Ring>(ring: &R) -> Poly<R> {
    &(&linear_difference(ring, 1, 2) * &linear_difference(ring, 1, 3))
        * &linear_difference(ring, 2, 3)
}

/// M_d = (x1 + x2 - 2x3)^(2{d/2}) (x1 - x3)^⌊d/2⌋ (x2 - x3)^⌊d/2⌋ over F3.
pub fn m_d_polynomial(d: u32) -> Poly<PrimeField> {
    let f3 = PrimeField::new(3).expect("3 is prime");
    let half = d / 2;
    let mut out = &linear_difference(&f3, 1, 3).pow(half) * &linear_difference(&f3, 2, 3).pow(half);
    if d % 2 == 1 {
        let lin = &(&Poly::var(&f3, 1) + &Poly::var(&f3, 2)) - &Poly::var(&f3, 3).scale(&f3.from_i64(2));
        out = &out * &lin;
    }
    out
}

#[cfg(test)]
mod tests;
