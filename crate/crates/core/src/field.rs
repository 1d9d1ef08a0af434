//! Arithmetic in small finite fields GF(p^m).
//!
//! Elements are coefficient vectors over GF(p), lowest degree first. The
//! canonical enumeration order of a field is lexicographic in that vector,
//! so `coeffs[0]` is the most significant digit of an element's index. The
//! same rule orders vectors over a field everywhere else in the crate, which
//! makes the additive group of GF(p^m)^t a mixed-radix group on indices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order the crate accepts.
pub const MAX_ORDER: u64 = 1 << 16;
/// Largest field order that gets full operation tables.
pub const MAX_TABULATED: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("field of order {0} is not supported without an explicit modulus")]
    UnsupportedSize(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("element {0:?} is not valid in this field")]
    BadElement(Vec<u32>),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("truncation length {m} outside 1..={n}")]
    BadLength { m: usize, n: usize },
    #[error("binary operation needs a second operand")]
    MissingOperand,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

/// Built-in moduli (lowest degree first, monic) for the non-prime orders up to 64.
const BUILTIN_MODULI: &[(u32, &[u32])] = &[
    (2, &[1, 1, 1]),             // x^2 + x + 1
    (2, &[1, 1, 0, 1]),          // x^3 + x + 1
    (2, &[1, 1, 0, 0, 1]),       // x^4 + x + 1
    (2, &[1, 0, 1, 0, 0, 1]),    // x^5 + x^2 + 1
    (2, &[1, 1, 0, 1, 1, 0, 1]), // x^6 + x^4 + x^3 + x + 1
    (3, &[2, 2, 1]),             // x^2 + 2x + 2
    (3, &[1, 2, 0, 1]),          // x^3 + 2x + 1
    (5, &[2, 4, 1]),             // x^2 + 4x + 2
    (7, &[3, 6, 1]),             // x^2 + 6x + 3
];

pub fn builtin_modulus(p: u32, m: usize) -> Option<Vec<u32>> {
    BUILTIN_MODULI
        .iter()
        .find(|(bp, coeffs)| *bp == p && coeffs.len() == m + 1)
        .map(|(_, c)| c.to_vec())
}

/// Coefficient arithmetic for polynomial helpers, over field indices.
pub(crate) trait Scalars {
    fn order(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct PrimeScalars(pub u32);

impl Scalars for PrimeScalars {
    fn order(&self) -> u32 {
        self.0
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
    fn neg(&self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }
}

/// `a mod modulus` for a monic modulus, in place; returns the reduced vector of length deg(modulus).
pub(crate) fn poly_rem<F: Scalars>(f: &F, mut a: Vec<u32>, modulus: &[u32]) -> Vec<u32> {
    let deg = modulus.len() - 1;
    while a.len() > deg {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - deg;
            for (i, &c) in modulus[..deg].iter().enumerate() {
                a[shift + i] = f.add(a[shift + i], f.neg(f.mul(lead, c)));
            }
        }
    }
    a.resize(deg, 0);
    a
}

pub(crate) fn poly_mulmod<F: Scalars>(f: &F, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    poly_rem(f, prod, modulus)
}

/// Irreducibility by trial division with every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible<F: Scalars>(f: &F, modulus: &[u32]) -> bool {
    let deg = modulus.len() - 1;
    let q = f.order() as u64;
    for d in 1..=deg / 2 {
        let count = q.pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % q) as u32);
                c /= q;
            }
            divisor.push(1);
            if poly_rem(f, modulus.to_vec(), &divisor).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `deg` in lexicographic order of its coefficient vector.
pub(crate) fn first_irreducible<F: Scalars>(f: &F, deg: usize) -> Vec<u32> {
    let q = f.order() as u64;
    let total = q.pow(deg as u32);
    for code in 0..total {
        let mut poly = digits_lex(code, q as u32, deg);
        poly.push(1);
        if is_irreducible(f, &poly) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Digits of `index` in base `q`, most significant first, `len` digits.
pub fn digits_lex(mut index: u64, q: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % q as u64) as u32;
        index /= q as u64;
    }
    out
}

pub fn index_lex(digits: &[u32], q: u32) -> u64 {
    digits.iter().fold(0u64, |acc, &d| acc * q as u64 + d as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

/// A validated description of GF(p^m).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    m: usize,
    /// Monic, lowest degree first, length `m + 1`.
    modulus: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The first `m` coordinates of the element over the prime field.
    pub fn truncate(&self, m: usize) -> Result<Vec<u32>, FieldError> {
        truncate(&self.coeffs, m)
    }
}

/// The first `m` entries of a coordinate vector of length `n`, `1 <= m <= n`.
pub fn truncate(coeffs: &[u32], m: usize) -> Result<Vec<u32>, FieldError> {
    let n = coeffs.len();
    if m == 0 || m > n {
        return Err(FieldError::BadLength { m, n });
    }
    Ok(coeffs[..m].to_vec())
}

impl FieldSpec {
    /// `modulus` is lowest degree first; omitted, the built-in table is used.
    pub fn new(p: u64, m: usize, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::BadDegree);
        }
        let order = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if order > MAX_ORDER as u128 {
            return Err(FieldError::UnsupportedSize(order.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let modulus = match modulus {
            Some(c) => c,
            None if m == 1 => vec![0, 1],
            None => builtin_modulus(p, m).ok_or(FieldError::UnsupportedSize(order as u64))?,
        };
        if modulus.len() != m + 1 || modulus[m] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus { expected: m });
        }
        if !is_irreducible(&PrimeScalars(p), &modulus) {
            return Err(FieldError::ReducibleModulus(p));
        }
        Ok(Self { p, m, modulus })
    }

    /// GF(q) for a prime power `q` with the built-in modulus.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::new(p as u64, m, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.m as u32)
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.m || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadElement(coeffs));
        }
        Ok(FieldElement { coeffs })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.m] }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = 1;
        FieldElement { coeffs }
    }

    pub fn from_index(&self, index: u32) -> FieldElement {
        FieldElement {
            coeffs: digits_lex(index as u64, self.p, self.m),
        }
    }

    pub fn index_of(&self, a: &FieldElement) -> u32 {
        index_lex(&a.coeffs, self.p) as u32
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|i| self.from_index(i))
    }

    fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if a.coeffs.len() != self.m || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadElement(a.coeffs.clone()));
        }
        Ok(())
    }

    fn scalars(&self) -> PrimeScalars {
        PrimeScalars(self.p)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let f = self.scalars();
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.add(x, y)).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let f = self.scalars();
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| f.neg(x)).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: poly_mulmod(&self.scalars(), &a.coeffs, &b.coeffs, &self.modulus),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        // a^(q-2)
        let mut exp = self.order() as u64 - 2;
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Single entry point over [`FieldOp`]; `b` is required for binary ops.
    pub fn arith(
        &self,
        op: FieldOp,
        a: &FieldElement,
        b: Option<&FieldElement>,
    ) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if let Some(b) = b {
            self.check(b)?;
        }
        let need_b = || b.ok_or(FieldError::MissingOperand);
        Ok(match op {
            FieldOp::Add => self.add(a, need_b()?),
            FieldOp::Sub => self.sub(a, need_b()?),
            FieldOp::Mul => self.mul(a, need_b()?),
            FieldOp::Neg => self.neg(a),
            FieldOp::Inv => self.inv(a)?,
        })
    }
}

/// Operation tables for a field of order at most [`MAX_TABULATED`], over element indices.
#[derive(Debug, Clone)]
pub struct Gf {
    spec: FieldSpec,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl Gf {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        let q = spec.order();
        if q as u64 > MAX_TABULATED {
            return Err(FieldError::UnsupportedSize(q as u64));
        }
        let elems: Vec<FieldElement> = spec.elements().collect();
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * n + j] = spec.index_of(&spec.add(a, b));
                mul[i * n + j] = spec.index_of(&spec.mul(a, b));
            }
        }
        let neg = elems.iter().map(|a| spec.index_of(&spec.neg(a))).collect();
        let inv = elems
            .iter()
            .map(|a| spec.inv(a).map(|i| spec.index_of(&i)).unwrap_or(0))
            .collect();
        Ok(Self { spec, q, add, mul, neg, inv })
    }

    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        Self::new(FieldSpec::of_order(q)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Inverse of a nonzero index.
    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.inv[a as usize])
    }

    pub fn one(&self) -> u32 {
        self.spec.index_of(&self.spec.one())
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

impl Scalars for Gf {
    fn order(&self) -> u32 {
        self.q
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        Gf::add(self, a, b)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        Gf::mul(self, a, b)
    }
    fn neg(&self, a: u32) -> u32 {
        Gf::neg(self, a)
    }
}

/// GF(q^n) as n-dimensional vectors over a tabulated GF(q).
///
/// For prime `q` with `q^n` in the built-in table the built-in modulus is
/// used; otherwise the lexicographically first monic irreducible of degree `n`.
#[derive(Debug, Clone)]
pub struct ExtField {
    base: Gf,
    n: usize,
    modulus: Vec<u32>,
}

impl ExtField {
    pub fn new(base: Gf, n: usize) -> Result<Self, FieldError> {
        if n == 0 {
            return Err(FieldError::BadDegree);
        }
        let order = (base.q() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(FieldError::UnsupportedSize(order));
        }
        let modulus = if n == 1 {
            vec![0, 1]
        } else if base.spec().degree() == 1 {
            builtin_modulus(base.spec().characteristic(), n)
                .unwrap_or_else(|| first_irreducible(&base, n))
        } else {
            first_irreducible(&base, n)
        };
        Ok(Self { base, n, modulus })
    }

    pub fn base(&self) -> &Gf {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        (self.base.q() as u64).pow(self.n as u32)
    }

    pub fn vector(&self, index: u64) -> Vec<u32> {
        digits_lex(index, self.base.q(), self.n)
    }

    pub fn index(&self, v: &[u32]) -> u64 {
        index_lex(v, self.base.q())
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        poly_mulmod(&self.base, a, b, &self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> FieldSpec {
        FieldSpec::new(2, 3, Some(vec![1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn prime_field_needs_no_modulus() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn non_prime_characteristic_is_rejected() {
        assert_eq!(FieldSpec::new(4, 1, None), Err(FieldError::NotPrime(4)));
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert_eq!(
            FieldSpec::new(2, 2, Some(vec![1, 0, 1])),
            Err(FieldError::ReducibleModulus(2))
        );
    }

    #[test]
    fn unsupported_size_without_modulus() {
        assert_eq!(FieldSpec::new(2, 7, None), Err(FieldError::UnsupportedSize(128)));
        // an explicit modulus lifts the restriction: x^7 + x + 1
        assert!(FieldSpec::new(2, 7, Some(vec![1, 1, 0, 0, 0, 0, 0, 1])).is_ok());
    }

    #[test]
    fn gf8_irreducibility_by_root_search() {
        // a cubic is irreducible iff it has no root
        let m = [1u32, 1, 0, 1];
        for x in 0..2u32 {
            let v = m.iter().rev().fold(0, |acc, &c| (acc * x + c) % 2);
            assert_ne!(v, 0);
        }
        assert!(FieldSpec::new(2, 3, Some(m.to_vec())).is_ok());
    }

    #[test]
    fn gf2_one_plus_one() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        let one = f.one();
        assert_eq!(f.arith(FieldOp::Add, &one, Some(&one)).unwrap(), f.zero());
    }

    #[test]
    fn gf8_x_times_x_squared() {
        let f = gf8();
        let x = f.element(vec![0, 1, 0]).unwrap();
        let x2 = f.element(vec![0, 0, 1]).unwrap();
        let got = f.arith(FieldOp::Mul, &x, Some(&x2)).unwrap();
        assert_eq!(got, f.element(vec![1, 1, 0]).unwrap());
    }

    #[test]
    fn gf8_table_matches_integer_carryless_oracle() {
        // carry-less multiply of bit patterns (bit i = coeff of x^i) reduced by 0b1011
        fn clmul(a: u32, b: u32) -> u32 {
            let mut r = 0;
            for i in 0..3 {
                if (b >> i) & 1 == 1 {
                    r ^= a << i;
                }
            }
            for bit in (3..6).rev() {
                if (r >> bit) & 1 == 1 {
                    r ^= 0b1011 << (bit - 3);
                }
            }
            r
        }
        let f = gf8();
        let to_bits = |e: &FieldElement| e.coeffs().iter().enumerate().map(|(i, &c)| c << i).sum::<u32>();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(to_bits(&f.mul(&a, &b)), clmul(to_bits(&a), to_bits(&b)));
            }
        }
    }

    #[test]
    fn gf3_inverse_of_two() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        let two = f.element(vec![2]).unwrap();
        assert_eq!(f.arith(FieldOp::Inv, &two, None).unwrap(), two);
        assert_eq!(f.arith(FieldOp::Inv, &f.zero(), None), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn binary_op_without_operand() {
        let f = gf8();
        assert_eq!(
            f.arith(FieldOp::Mul, &f.one(), None),
            Err(FieldError::MissingOperand)
        );
    }

    #[test]
    fn truncate_prefixes() {
        let f = gf8();
        let a = f.element(vec![1, 0, 1]).unwrap();
        assert_eq!(a.truncate(3).unwrap(), vec![1, 0, 1]);
        assert_eq!(a.truncate(1).unwrap(), vec![1]);
        assert_eq!(f.zero().truncate(2).unwrap(), vec![0, 0]);
        assert_eq!(a.truncate(0), Err(FieldError::BadLength { m: 0, n: 3 }));
        assert_eq!(a.truncate(4), Err(FieldError::BadLength { m: 4, n: 3 }));
    }

    #[test]
    fn every_builtin_is_a_field() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::of_order(q).unwrap();
            let e: Vec<_> = f.elements().collect();
            let (zero, one) = (f.zero(), f.one());
            for a in &e {
                assert_eq!(f.add(a, &f.neg(a)), zero);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), one);
                }
                for b in &e {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in &e {
                        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn all_builtin_moduli_are_irreducible() {
        for q in [4u64, 8, 16, 32, 64, 9, 27, 25, 49] {
            assert!(FieldSpec::of_order(q).is_ok(), "q = {q}");
        }
    }

    #[test]
    fn tables_agree_with_spec() {
        let gf = Gf::of_order(9).unwrap();
        let spec = gf.spec().clone();
        for a in 0..9 {
            for b in 0..9 {
                let ea = spec.from_index(a);
                let eb = spec.from_index(b);
                assert_eq!(gf.mul(a, b), spec.index_of(&spec.mul(&ea, &eb)));
                assert_eq!(gf.add(a, b), spec.index_of(&spec.add(&ea, &eb)));
            }
        }
        assert_eq!(gf.one(), spec.index_of(&spec.one()));
    }

    #[test]
    fn extension_over_non_prime_base_is_a_field() {
        let ext = ExtField::new(Gf::of_order(4).unwrap(), 2).unwrap();
        assert_eq!(ext.order(), 16);
        let one = ext.vector(ext.index(&[1, 0]));
        for i in 1..16 {
            let a = ext.vector(i);
            let inv = (1..16).filter(|&j| ext.mul(&a, &ext.vector(j)) == one).count();
            assert_eq!(inv, 1, "element {a:?}");
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
