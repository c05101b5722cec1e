//! Polynomials over F₂ of arbitrary degree.
//!
//! Coefficients are packed little-endian into `u64` words: bit `i` of the
//! vector is the coefficient of `x^i`. The representation is canonical, with
//! no zero words above the leading one.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPolynomial {
    words: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn x() -> Self {
        Self::from_u64(2)
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = Self { words: vec![bits] };
        p.normalize();
        p
    }

    pub fn monomial(n: usize) -> Self {
        let mut p = Self::zero();
        p.set_coeff(n, true);
        p
    }

    /// Sum of `x^e` over the given exponents; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut p = Self::zero();
        for e in exponents {
            let bit = p.coeff(e);
            p.set_coeff(e, !bit);
        }
        p
    }

    /// `1 + x + ... + x^(n-1)`.
    pub fn all_ones(n: usize) -> Self {
        Self::from_exponents(0..n)
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree, with `deg(0) = -1`.
    pub fn degree(&self) -> isize {
        match self.words.last() {
            None => -1,
            Some(&top) => {
                ((self.words.len() - 1) * 64 + (63 - top.leading_zeros() as usize)) as isize
            }
        }
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        let w = i / 64;
        if value {
            if self.words.len() <= w {
                self.words.resize(w + 1, 0);
            }
            self.words[w] |= 1 << (i % 64);
        } else if w < self.words.len() {
            self.words[w] &= !(1 << (i % 64));
            self.normalize();
        }
    }

    /// The coefficient vector as an integer, if it fits in 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn shl(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (n / 64, n % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs != 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        let mut p = Self { words };
        p.normalize();
        p
    }

    fn xor_assign(&mut self, other: &Self) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        self.normalize();
    }

    /// Quotient and remainder. Returns `None` for a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree();
        if dd < 0 {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while rem.degree() >= dd {
            let shift = (rem.degree() - dd) as usize;
            quot.set_coeff(shift, true);
            rem.xor_assign(&divisor.shl(shift));
        }
        Some((quot, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Option<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// True if `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_some_and(|r| r.is_zero())
    }

    /// Monic gcd by the Euclidean algorithm. Over F₂ every nonzero polynomial
    /// is monic, so no normalization step is needed; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a
    }

    fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        (self * other).rem(modulus).expect("nonzero modulus")
    }

    /// Ben-Or irreducibility test: `f` of degree `n` is irreducible iff
    /// `gcd(x^(2^i) - x, f) = 1` for every `1 <= i <= n/2`.
    pub fn is_irreducible(&self) -> bool {
        let n = self.degree();
        if n < 1 {
            return false;
        }
        let x = Self::x().rem(self).expect("nonzero");
        let mut h = x.clone();
        for _ in 1..=(n as usize / 2) {
            h = h.mul_mod(&h, self);
            if !(&h + &x).gcd(self).is_one() {
                return false;
            }
        }
        true
    }

    /// The least nontrivial factor (as an integer) by trial division over all
    /// polynomials of degree `1..=deg/2`. `None` if the polynomial is
    /// irreducible, constant, or too large for a 64-bit search.
    pub fn smallest_factor(&self) -> Option<Self> {
        let n = self.degree();
        if n < 2 {
            return None;
        }
        let max = (n as u32) / 2;
        (2u64..(1u64 << (max + 1)))
            .map(Self::from_u64)
            .find(|d| d.divides(self))
    }

    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = format!("{:x}", self.words.last().unwrap());
        for w in self.words.iter().rev().skip(1) {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix("0x").unwrap_or(s);
        if s.is_empty() {
            return Err(Error::Parse("empty hex polynomial".into()));
        }
        let mut p = Self::zero();
        for (i, ch) in s.chars().rev().enumerate() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?} in {s:?}")))?;
            for b in 0..4 {
                if (v >> b) & 1 == 1 {
                    p.set_coeff(4 * i + b, true);
                }
            }
        }
        Ok(p)
    }
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn add(self, rhs: Self) -> BinaryPolynomial {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl Add for BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn add(self, rhs: Self) -> BinaryPolynomial {
        &self + &rhs
    }
}

impl Mul for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn mul(self, rhs: Self) -> BinaryPolynomial {
        let mut out = BinaryPolynomial::zero();
        if rhs.is_zero() {
            return out;
        }
        for i in 0..=rhs.degree() as usize {
            if rhs.coeff(i) {
                out.xor_assign(&self.shl(i));
            }
        }
        out
    }
}

impl Mul for BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn mul(self, rhs: Self) -> BinaryPolynomial {
        &self * &rhs
    }
}

impl FromStr for BinaryPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_hex(s)
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for i in (0..=self.degree() as usize).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({self})")
    }
}

/// The monic irreducible polynomial of degree `m` whose coefficient vector,
/// read as an integer, is least.
pub fn find_irreducible(m: u32) -> Result<BinaryPolynomial> {
    if !(1..=crate::field::MAX_DEGREE).contains(&m) {
        return Err(Error::DegreeOutOfRange(m));
    }
    let lo = 1u64 << m;
    Ok((lo..lo << 1)
        .map(BinaryPolynomial::from_u64)
        .find(BinaryPolynomial::is_irreducible)
        .expect("an irreducible polynomial exists in every degree"))
}
