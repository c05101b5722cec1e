//! Arithmetic in F_{2^m} for m <= 24 over a configurable irreducible modulus.
//!
//! Elements are bit vectors in the power basis of the modulus, bit 0 being
//! the constant term. [`FieldCtx`] is immutable once built and can be shared
//! freely between threads.

use std::fmt;
use std::ops::{Add, AddAssign};

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};
use crate::poly::{find_irreducible, BinaryPolynomial};

pub const MAX_DEGREE: u32 = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    /// Wraps a raw bit vector without range checking; see
    /// [`FieldCtx::element`] for the checked form.
    pub const fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for FieldElem {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElem {
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}", self.0)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem(0x{:x})", self.0)
    }
}

impl fmt::LowerHex for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// Tower parameters: q = 2^t and the ambient field is F_{q^{3k}}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tower {
    pub t: u32,
    pub k: u32,
}

impl Tower {
    pub fn new(t: u32, k: u32) -> Result<Self> {
        if t == 0 || k == 0 || 3 * t * k > MAX_DEGREE {
            return Err(Error::TowerOutOfRange { t, k });
        }
        Ok(Self { t, k })
    }

    pub fn q(self) -> u64 {
        1 << self.t
    }

    /// Degree over F₂ of the ambient field, `3tk`.
    pub fn degree(self) -> u32 {
        3 * self.t * self.k
    }

    /// Degree over F₂ of F_{q^k}, `tk`.
    pub fn subfield_degree(self) -> u32 {
        self.t * self.k
    }

    /// `q^k` as an integer.
    pub fn qk(self) -> u64 {
        1 << self.subfield_degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    m: u32,
    modulus: BinaryPolynomial,
    // modulus with the x^m term included
    modulus_bits: u64,
    tower: Option<Tower>,
    // bit j set iff Tr(x^j) = 1
    trace_mask: u32,
}

impl FieldCtx {
    /// Context for F_{2^m}. The modulus defaults to [`find_irreducible`].
    pub fn new(m: u32, modulus: Option<BinaryPolynomial>) -> Result<Self> {
        Self::build(m, modulus, None)
    }

    /// Context for F_{q^{3k}} with q = 2^t.
    pub fn tower(t: u32, k: u32, modulus: Option<BinaryPolynomial>) -> Result<Self> {
        let tower = Tower::new(t, k)?;
        Self::build(tower.degree(), modulus, Some(tower))
    }

    fn build(m: u32, modulus: Option<BinaryPolynomial>, tower: Option<Tower>) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let modulus = match modulus {
            None => find_irreducible(m)?,
            Some(p) => {
                if p.degree() != m as isize {
                    return Err(Error::ModulusDegree {
                        modulus: p.clone(),
                        expected: m,
                        found: p.degree(),
                    });
                }
                if !p.is_irreducible() {
                    let factor = p.smallest_factor().expect("reducible polynomial has a factor");
                    return Err(Error::ReducibleModulus { modulus: p, factor });
                }
                p
            }
        };
        let modulus_bits = modulus.to_u64().expect("degree <= 24");
        let mut ctx = Self {
            m,
            modulus,
            modulus_bits,
            tower,
            trace_mask: 0,
        };
        ctx.trace_mask = (0..m)
            .filter(|&j| ctx.trace_sum(FieldElem(1 << j)) == FieldElem::ONE)
            .fold(0, |acc, j| acc | 1 << j);
        Ok(ctx)
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements, `2^m`.
    pub fn order(&self) -> u64 {
        1 << self.m
    }

    pub fn modulus(&self) -> &BinaryPolynomial {
        &self.modulus
    }

    pub fn tower_params(&self) -> Option<Tower> {
        self.tower
    }

    pub fn require_tower(&self) -> Result<Tower> {
        self.tower.ok_or(Error::NoTower)
    }

    /// Bit mask of valid element encodings.
    pub fn mask(&self) -> u32 {
        ((1u64 << self.m) - 1) as u32
    }

    pub fn element(&self, bits: u64) -> Result<FieldElem> {
        if bits >> self.m != 0 {
            return Err(Error::ElementOutOfRange { bits, m: self.m });
        }
        Ok(FieldElem(bits as u32))
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 >> self.m == 0
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.order()).map(|v| FieldElem(v as u32))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        FieldElem(rng.gen::<u32>() & self.mask())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        FieldElem(rng.gen_range(1..self.order()) as u32)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        a + b
    }

    /// Carry-less product reduced by the modulus.
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (mut x, mut y) = (a.0 as u64, b.0);
        let mut prod = 0u64;
        while y != 0 {
            if y & 1 == 1 {
                prod ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        FieldElem(self.reduce(prod))
    }

    fn reduce(&self, mut v: u64) -> u32 {
        let m = self.m;
        while v >> m != 0 {
            let top = 63 - v.leading_zeros();
            v ^= self.modulus_bits << (top - m);
        }
        v as u32
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// Square-and-multiply; `pow(a, 0) = 1` including `a = 0`.
    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let (mut base, mut acc) = (a, FieldElem::ONE);
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `a^(2^m - 2)`.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// `a^(2^i)` by repeated squaring; `i` is reduced mod m.
    pub fn frobenius(&self, a: FieldElem, i: u64) -> FieldElem {
        (0..i % self.m as u64).fold(a, |acc, _| self.square(acc))
    }

    /// `Σ_{i<m} a^(2^i)` computed term by term. The result is 0 or 1.
    pub fn trace_sum(&self, a: FieldElem) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        let mut cur = a;
        for _ in 0..self.m {
            acc += cur;
            cur = self.square(cur);
        }
        acc
    }

    /// Absolute trace onto F₂ as a bit.
    pub fn abs_trace(&self, a: FieldElem) -> u8 {
        ((a.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// Mask `w` with `abs_trace(a·y) = parity(y & w)` for every y.
    pub fn trace_form(&self, a: FieldElem) -> u32 {
        (0..self.m)
            .filter(|&j| self.abs_trace(self.mul(a, FieldElem(1 << j))) == 1)
            .fold(0, |acc, j| acc | 1 << j)
    }

    fn check_divisor(&self, d: u32) -> Result<()> {
        if d == 0 || self.m % d != 0 {
            return Err(Error::NotADivisor { d, m: self.m });
        }
        Ok(())
    }

    /// Relative trace onto F_{2^d}: `Σ_{i < m/d} a^(2^(d i))`.
    pub fn rel_trace(&self, a: FieldElem, d: u32) -> Result<FieldElem> {
        self.check_divisor(d)?;
        let mut acc = FieldElem::ZERO;
        let mut cur = a;
        for _ in 0..self.m / d {
            acc += cur;
            cur = self.frobenius(cur, d as u64);
        }
        Ok(acc)
    }

    /// Absolute trace of `z ∈ F_{2^d}` taken inside the subfield,
    /// `Σ_{i<d} z^(2^i)`.
    pub fn subfield_trace(&self, z: FieldElem, d: u32) -> Result<u8> {
        self.check_divisor(d)?;
        if !self.in_subfield(z, d) {
            return Err(Error::NotInSubfield(z, d));
        }
        let mut acc = FieldElem::ZERO;
        let mut cur = z;
        for _ in 0..d {
            acc += cur;
            cur = self.square(cur);
        }
        debug_assert!(acc.0 <= 1);
        Ok(acc.0 as u8)
    }

    pub fn in_subfield(&self, a: FieldElem, d: u32) -> bool {
        self.frobenius(a, d as u64) == a
    }

    /// The subfield F_{2^d} in encoding order, computed as the kernel of
    /// `a ↦ a^(2^d) + a`.
    pub fn enumerate_subfield(&self, d: u32) -> Result<Vec<FieldElem>> {
        self.check_divisor(d)?;
        let basis = self.linear_matrix(|a| self.frobenius(a, d as u64) + a).kernel_basis();
        Ok(gf2::span(&basis).into_iter().map(FieldElem).collect())
    }

    /// Matrix of an F₂-linear map of the field in the power basis.
    pub fn linear_matrix(&self, f: impl Fn(FieldElem) -> FieldElem) -> BitMatrix {
        BitMatrix::from_linear_fn(self.m, self.m, |v| f(FieldElem(v)).0)
    }
}
