//! Exact scalar arithmetic: prime fields, the integers and the rationals.
//!
//! Every polynomial in the crate is parameterised by a [`Ring`], a small value
//! that knows how to build and combine its elements. Prime fields carry their
//! modulus at runtime so that F2, F3 and any other word-sized prime share one
//! code path.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commutative coefficient ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Image of an integer under the canonical map Z -> R.
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    /// Image of the binomial coefficient C(n, k).
    fn binomial(&self, n: u32, k: u32) -> Self::Elem {
        if k > n {
            return self.zero();
        }
        let b: BigUint = num_integer::binomial(BigUint::from(n), BigUint::from(k));
        self.from_int(&BigInt::from(b))
    }

    /// `Some(a / b)` when `b` divides `a` in the ring.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// 0 for the integers and the rationals.
    fn characteristic(&self) -> u64;

    /// Parses a non-negative literal `num` or `num/den`.
    fn parse_literal(&self, num: &BigUint, den: Option<&BigUint>) -> Result<Self::Elem>;

    fn format_elem(&self, a: &Self::Elem) -> String;

    /// True when the element should be printed with a leading minus sign
    /// (never for prime fields, which print canonical representatives).
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn name(&self) -> String;
}

/// An element of F_p, always fully reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp {
            value: add_mod(self.value, o.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn sub(self, o: Fp) -> Fp {
        self.add(o.neg())
    }

    pub fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }

    pub fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp {
            value: mul_mod(self.value, o.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Multiplicative inverse in F_p by the extended Euclidean algorithm.
pub fn ff_inv(x: Fp) -> Result<Fp> {
    if x.value == 0 {
        return Err(Error::DivisionByZero);
    }
    let (mut r0, mut r1) = (x.modulus as i128, x.value as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        // only reachable for a composite modulus
        return Err(Error::DivisionByZero);
    }
    let m = x.modulus as i128;
    Ok(Fp::new(t0.rem_euclid(m) as u64, x.modulus))
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    ff_inv(Fp::new(a, p))
        .expect("inverse of a nonzero residue modulo a prime")
        .value
}

/// The canonical reduced fraction `num/den` with positive denominator.
pub fn rat_normalize(num: BigInt, den: BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// gcd of the absolute values; 0 for an empty or all-zero list.
pub fn integer_content(coeffs: &[BigInt]) -> BigInt {
    coeffs
        .iter()
        .fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp::new(v, self.p)
    }

    /// C(n, k) mod p by Lucas' theorem.
    pub fn binomial_mod(&self, mut n: u32, mut k: u32) -> u64 {
        let p = self.p;
        if k > n {
            return 0;
        }
        let mut acc = 1u64;
        while k > 0 || n > 0 {
            let (ni, ki) = ((n as u64 % p), (k as u64 % p));
            if ki > ni {
                return 0;
            }
            acc = mul_mod(acc, small_binomial_mod(ni, ki, p), p);
            n = (n as u64 / p) as u32;
            k = (k as u64 / p) as u32;
        }
        acc
    }
}

fn small_binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = mul_mod(num, (n - i) % p, p);
        den = mul_mod(den, (i + 1) % p, p);
    }
    mul_mod(num, inv_mod(den, p), p)
}

impl Ring for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        Fp::new(0, self.p)
    }
    fn one(&self) -> Fp {
        Fp::new(1, self.p)
    }
    fn is_zero(&self, a: &Fp) -> bool {
        a.value == 0
    }
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        a.add(*b)
    }
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        a.sub(*b)
    }
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        a.mul(*b)
    }
    fn neg(&self, a: &Fp) -> Fp {
        a.neg()
    }
    fn from_int(&self, n: &BigInt) -> Fp {
        let r = n.mod_floor(&BigInt::from(self.p));
        Fp::new(r.to_u64().expect("reduced residue fits in a word"), self.p)
    }
    fn from_i64(&self, n: i64) -> Fp {
        Fp::new((n as i128).rem_euclid(self.p as i128) as u64, self.p)
    }
    fn binomial(&self, n: u32, k: u32) -> Fp {
        Fp::new(self.binomial_mod(n, k), self.p)
    }
    fn div_exact(&self, a: &Fp, b: &Fp) -> Option<Fp> {
        ff_inv(*b).ok().map(|bi| a.mul(bi))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn parse_literal(&self, num: &BigUint, den: Option<&BigUint>) -> Result<Fp> {
        if den.is_some() {
            return Err(Error::NotRepresentable(format!(
                "fractions are only accepted over Q, not {}",
                self.name()
            )));
        }
        Ok(self.from_int(&BigInt::from(num.clone())))
    }
    fn format_elem(&self, a: &Fp) -> String {
        a.value.to_string()
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// The integers, used for characteristic-zero generators before reduction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn parse_literal(&self, num: &BigUint, den: Option<&BigUint>) -> Result<BigInt> {
        if den.is_some() {
            return Err(Error::NotRepresentable(
                "fractions are only accepted over Q, not Z".into(),
            ));
        }
        Ok(BigInt::from(num.clone()))
    }
    fn format_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn is_negative(&self, a: &BigInt) -> bool {
        a.sign() == Sign::Minus
    }
    fn name(&self) -> String {
        "Z".into()
    }
}

/// The rational numbers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn parse_literal(&self, num: &BigUint, den: Option<&BigUint>) -> Result<BigRational> {
        let den = den.cloned().unwrap_or_else(BigUint::one);
        rat_normalize(BigInt::from(num.clone()), BigInt::from(den))
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn name(&self) -> String {
        "Q".into()
    }
}
