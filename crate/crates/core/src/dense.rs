//! Dense coordinates for homogeneous forms over F_p.
//!
//! A form of degree d is a vector indexed by the monomials of degree d in
//! ascending graded-lex order, i.e. by (e1, e2) with e3 = d - e1 - e2.

use std::collections::HashMap;

use crate::coeff::{add_mod, PrimeField};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};

pub fn monomial_count(d: u32) -> usize {
    ((d as usize + 1) * (d as usize + 2)) / 2
}

/// Position of (e1, e2, d - e1 - e2) among the monomials of degree d.
#[inline]
pub fn index(d: u32, e1: u32, e2: u32) -> usize {
    let (d, e1, e2) = (d as usize, e1 as usize, e2 as usize);
    e1 * (d + 1) - e1 * e1.saturating_sub(1) / 2 + e2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub p: u64,
    pub degree: u32,
    pub coeffs: Vec<u64>,
}

impl Form {
    pub fn zero(p: u64, degree: u32) -> Self {
        Form {
            p,
            degree,
            coeffs: vec![0; monomial_count(degree)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coordinates of a homogeneous polynomial of degree `degree`.
    pub fn from_poly(k: &Poly<PrimeField>, degree: u32) -> Result<Self> {
        let p = k.ring().modulus();
        let mut f = Form::zero(p, degree);
        for (m, c) in k.terms() {
            if m.degree() != degree {
                return Err(Error::NotHomogeneous);
            }
            f.coeffs[index(degree, m.0[0], m.0[1])] = c.value();
        }
        Ok(f)
    }

    pub fn to_poly(&self, field: &PrimeField) -> Poly<PrimeField> {
        let d = self.degree;
        let mut terms = Vec::new();
        for e1 in 0..=d {
            for e2 in 0..=d - e1 {
                let c = self.coeffs[index(d, e1, e2)];
                if c != 0 {
                    terms.push((Monomial::new(e1, e2, d - e1 - e2), field.elem(c)));
                }
            }
        }
        Poly::from_terms(field, terms)
    }

    fn shifted(&self, de: [u32; 3]) -> Form {
        let d = self.degree;
        let nd = d + de[0] + de[1] + de[2];
        let mut out = Form::zero(self.p, nd);
        for e1 in 0..=d {
            for e2 in 0..=d - e1 {
                let c = self.coeffs[index(d, e1, e2)];
                if c != 0 {
                    let j = index(nd, e1 + de[0], e2 + de[1]);
                    out.coeffs[j] = add_mod(out.coeffs[j], c, self.p);
                }
            }
        }
        out
    }

    fn add_assign(&mut self, o: &Form) {
        debug_assert_eq!(self.degree, o.degree);
        for (x, &y) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *x = add_mod(*x, y, self.p);
        }
    }

    /// Product with the elementary symmetric polynomial e_i.
    pub fn mul_elementary(&self, i: usize) -> Form {
        match i {
            1 => {
                let mut out = self.shifted([1, 0, 0]);
                out.add_assign(&self.shifted([0, 1, 0]));
                out.add_assign(&self.shifted([0, 0, 1]));
                out
            }
            2 => {
                let mut out = self.shifted([1, 1, 0]);
                out.add_assign(&self.shifted([1, 0, 1]));
                out.add_assign(&self.shifted([0, 1, 1]));
                out
            }
            3 => self.shifted([1, 1, 1]),
            _ => panic!("elementary symmetric index {i} out of range 1..=3"),
        }
    }
}

/// Exponents (a, b, c) with a + 2b + 3c = `degree`, in a fixed order.
pub fn symmetric_exponents(degree: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for c in 0..=degree / 3 {
        for b in 0..=(degree - 3 * c) / 2 {
            out.push((degree - 3 * c - 2 * b, b, c));
        }
    }
    out
}

/// Products e1^a e2^b e3^c * g for all symmetric monomials, grouped by the
/// degree of the symmetric factor. Level `s` lists the products in the order
/// of `symmetric_exponents(s)`.
pub struct SymmetricMultiples {
    levels: Vec<Vec<Form>>,
}

impl SymmetricMultiples {
    pub fn new(g: &Form, max_sym_degree: u32) -> Self {
        let mut levels: Vec<Vec<Form>> = Vec::new();
        let mut lookup: Vec<HashMap<(u32, u32, u32), usize>> = Vec::new();
        for s in 0..=max_sym_degree {
            let exps = symmetric_exponents(s);
            let mut level = Vec::with_capacity(exps.len());
            let mut pos = HashMap::new();
            for (idx, &(a, b, c)) in exps.iter().enumerate() {
                let form = if s == 0 {
                    g.clone()
                } else if c > 0 {
                    levels[s as usize - 3][lookup[s as usize - 3][&(a, b, c - 1)]].mul_elementary(3)
                } else if b > 0 {
                    levels[s as usize - 2][lookup[s as usize - 2][&(a, b - 1, 0)]].mul_elementary(2)
                } else {
                    levels[s as usize - 1][lookup[s as usize - 1][&(a - 1, 0, 0)]].mul_elementary(1)
                };
                pos.insert((a, b, c), idx);
                level.push(form);
            }
            levels.push(level);
            lookup.push(pos);
        }
        SymmetricMultiples { levels }
    }

    /// The products whose symmetric factor has degree `s`.
    pub fn level(&self, s: u32) -> &[Form] {
        self.levels.get(s as usize).map_or(&[], |v| v.as_slice())
    }
}

/// The symmetric monomial e1^a e2^b e3^c as a polynomial.
pub fn symmetric_monomial(field: &PrimeField, (a, b, c): (u32, u32, u32)) -> Poly<PrimeField> {
    let mut f = Form {
        p: field.modulus(),
        degree: 0,
        coeffs: vec![1],
    };
    for _ in 0..a {
        f = f.mul_elementary(1);
    }
    for _ in 0..b {
        f = f.mul_elementary(2);
    }
    for _ in 0..c {
        f = f.mul_elementary(3);
    }
    f.to_poly(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{elementary_symmetric, parse_poly};

    #[test]
    fn index_is_ascending_gradedlex() {
        for d in 0..8 {
            let mons = Monomial::of_degree(d);
            assert_eq!(mons.len(), monomial_count(d));
            for (i, m) in mons.iter().enumerate() {
                assert_eq!(index(d, m.0[0], m.0[1]), i);
            }
            assert!(mons.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn elementary_products_match_sparse() {
        let f = PrimeField::new(3).unwrap();
        let k = parse_poly("x1^2*x2 + 2*x3^3 + x1*x2*x3", &f).unwrap();
        let form = Form::from_poly(&k, 3).unwrap();
        for i in 1..=3 {
            let want = &elementary_symmetric(&f, i) * &k;
            assert_eq!(form.mul_elementary(i).to_poly(&f), want);
        }
    }

    #[test]
    fn symmetric_multiples_match_monomials() {
        let f = PrimeField::new(2).unwrap();
        let g = parse_poly("x1 + x2", &f).unwrap();
        let sm = SymmetricMultiples::new(&Form::from_poly(&g, 1).unwrap(), 7);
        for s in 0..=7 {
            for (form, e) in sm.level(s).iter().zip(symmetric_exponents(s)) {
                let want = &symmetric_monomial(&f, e) * &g;
                assert_eq!(form.to_poly(&f), want);
            }
        }
    }

    #[test]
    fn symmetric_exponent_counts() {
        // coefficients of 1/((1-t)(1-t^2)(1-t^3)), by direct enumeration
        let counts: Vec<usize> = (0..7).map(|d| symmetric_exponents(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 4, 5, 7]);
    }
}
