//! 2-linearized polynomials `Σ c_i x^(2^i)` over F_{2^m}.
//!
//! Exponent indices are always reduced mod m, since `x^(2^m) = x` on the
//! field; a polynomial is stored as exactly m coefficients. The same value
//! can be read as a coefficient vector or as an F₂-linear map.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::gf2::{self, BitMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElem>,
}

impl LinearizedPoly {
    pub fn zero(m: u32) -> Self {
        Self {
            coeffs: vec![FieldElem::ZERO; m as usize],
        }
    }

    pub fn identity(m: u32) -> Self {
        Self::frobenius_power(m, 0)
    }

    /// The monomial `x^(2^e)`, with `e` reduced mod m.
    pub fn frobenius_power(m: u32, e: u64) -> Self {
        Self::monomial(m, e, FieldElem::ONE)
    }

    pub fn monomial(m: u32, e: u64, c: FieldElem) -> Self {
        let mut p = Self::zero(m);
        p.coeffs[(e % m as u64) as usize] = c;
        p
    }

    pub fn from_coeffs(ctx: &FieldCtx, coeffs: Vec<FieldElem>) -> Result<Self> {
        if coeffs.len() != ctx.degree() as usize {
            return Err(Error::LinearizedLength {
                expected: ctx.degree(),
                found: coeffs.len(),
            });
        }
        if let Some(bad) = coeffs.iter().find(|c| !ctx.contains(**c)) {
            return Err(Error::ElementOutOfRange {
                bits: bad.bits() as u64,
                m: ctx.degree(),
            });
        }
        Ok(Self { coeffs })
    }

    pub fn degree_m(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Indices with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }

    /// Multiply every coefficient by the constant `c` (the map `c·L(x)`).
    pub fn scale(&self, ctx: &FieldCtx, c: FieldElem) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| ctx.mul(c, a)).collect(),
        }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        let mut power = x;
        for &c in &self.coeffs {
            acc += ctx.mul(c, power);
            power = ctx.square(power);
        }
        acc
    }

    /// The polynomial of `x ↦ self(inner(x))`.
    pub fn compose(&self, ctx: &FieldCtx, inner: &Self) -> Self {
        let m = self.coeffs.len();
        let mut out = Self::zero(m as u32);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in inner.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[(i + j) % m] += ctx.mul(a, ctx.frobenius(b, i as u64));
            }
        }
        out
    }

    /// Matrix over F₂ in the power basis: column i is `L(x^i)`.
    pub fn matrix(&self, ctx: &FieldCtx) -> BitMatrix {
        ctx.linear_matrix(|x| self.eval(ctx, x))
    }

    pub fn compile(&self, ctx: &FieldCtx) -> CompiledLinear {
        CompiledLinear::new(&self.matrix(ctx))
    }

    pub fn kernel_image(&self, ctx: &FieldCtx) -> KernelImage {
        let mat = self.matrix(ctx);
        KernelImage {
            kernel: mat.kernel_basis().into_iter().map(FieldElem::from_bits).collect(),
            image: mat.image_basis().into_iter().map(FieldElem::from_bits).collect(),
        }
    }

    /// Whether the map sends F_{2^d} bijectively onto itself, by exhaustive
    /// evaluation over the subfield.
    pub fn permutes(&self, ctx: &FieldCtx, d: u32) -> Result<Permutes> {
        let sub = ctx.enumerate_subfield(d)?;
        // preimage[y] = first x with L(x) = y, or u32::MAX
        let mut preimage = vec![u32::MAX; ctx.order() as usize];
        for &x in &sub {
            let y = self.eval(ctx, x);
            if !ctx.in_subfield(y, d) {
                return Ok(Permutes::NotSubfieldStable { x, image: y });
            }
            let slot = &mut preimage[y.bits() as usize];
            if *slot != u32::MAX {
                return Ok(Permutes::NotInjective {
                    first: FieldElem::from_bits(*slot),
                    second: x,
                    image: y,
                });
            }
            *slot = x.bits();
        }
        Ok(Permutes::Yes)
    }

    /// Textual form `lin[i:hex,...]` listing nonzero coefficients.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|i| format!("{i}:{:x}", self.coeffs[i]))
            .collect();
        format!("lin[{}]", parts.join(","))
    }

    pub fn parse_text(ctx: &FieldCtx, s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse(format!("linearized polynomial {s:?}: {msg}"));
        let inner = s
            .trim()
            .strip_prefix("lin[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected lin[...]".into()))?;
        let mut p = Self::zero(ctx.degree());
        for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (i, c) = item
                .split_once(':')
                .ok_or_else(|| bad(format!("expected index:hex, got {item:?}")))?;
            let i: u32 = i.trim().parse().map_err(|_| bad(format!("bad index {i:?}")))?;
            if i >= ctx.degree() {
                return Err(bad(format!("index {i} not below m = {}", ctx.degree())));
            }
            let c = u64::from_str_radix(c.trim(), 16)
                .map_err(|_| bad(format!("bad coefficient {c:?}")))?;
            p.coeffs[i as usize] += ctx.element(c)?;
        }
        Ok(p)
    }
}

impl std::ops::Add for &LinearizedPoly {
    type Output = LinearizedPoly;

    fn add(self, rhs: Self) -> LinearizedPoly {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        LinearizedPoly {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPoly({})", self.to_text())
    }
}

/// `S_n = Σ_{i<n} x^(q^i)` with q = 2^t, as a 2-linearized polynomial with
/// unit coefficients at indices `t·i mod m` (collisions cancel).
pub fn s_polynomial(ctx: &FieldCtx, n_terms: u32) -> Result<LinearizedPoly> {
    let tower = ctx.require_tower()?;
    let m = ctx.degree();
    let mut p = LinearizedPoly::zero(m);
    for i in 0..n_terms as u64 {
        p.coeffs[(tower.t as u64 * i % m as u64) as usize] += FieldElem::ONE;
    }
    Ok(p)
}

/// Relative trace onto F_{q^k} as the linearized polynomial
/// `x + x^(q^k) + x^(q^2k)`.
pub fn relative_trace_poly(ctx: &FieldCtx) -> Result<LinearizedPoly> {
    let d = ctx.require_tower()?.subfield_degree() as u64;
    let m = ctx.degree();
    let mut p = LinearizedPoly::zero(m);
    for i in 0..3 {
        p.coeffs[(d * i % m as u64) as usize] += FieldElem::ONE;
    }
    Ok(p)
}

/// F₂ bases of kernel and image, in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelImage {
    pub kernel: Vec<FieldElem>,
    pub image: Vec<FieldElem>,
}

impl KernelImage {
    pub fn kernel_elements(&self) -> Vec<FieldElem> {
        enumerate_span(&self.kernel)
    }

    pub fn image_elements(&self) -> Vec<FieldElem> {
        enumerate_span(&self.image)
    }
}

pub fn enumerate_span(basis: &[FieldElem]) -> Vec<FieldElem> {
    let bits: Vec<u32> = basis.iter().map(|e| e.bits()).collect();
    gf2::span(&bits).into_iter().map(FieldElem::from_bits).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Permutes {
    Yes,
    NotSubfieldStable {
        x: FieldElem,
        image: FieldElem,
    },
    NotInjective {
        first: FieldElem,
        second: FieldElem,
        image: FieldElem,
    },
}

impl Permutes {
    pub fn holds(self) -> bool {
        self == Permutes::Yes
    }
}

/// A linear map evaluated by byte-indexed lookup tables.
#[derive(Clone, Debug)]
pub struct CompiledLinear {
    tables: Vec<[u32; 256]>,
}

impl CompiledLinear {
    pub fn new(mat: &BitMatrix) -> Self {
        let cols = mat.columns();
        let tables = cols
            .chunks(8)
            .map(|chunk| {
                let mut t = [0u32; 256];
                for (v, slot) in t.iter_mut().enumerate() {
                    *slot = chunk
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| (v >> i) & 1 == 1)
                        .fold(0, |acc, (_, c)| acc ^ c);
                }
                t
            })
            .collect();
        Self { tables }
    }

    #[inline]
    pub fn apply(&self, x: FieldElem) -> FieldElem {
        let v = x.bits();
        let mut acc = 0;
        for (i, t) in self.tables.iter().enumerate() {
            acc ^= t[((v >> (8 * i)) & 0xff) as usize];
        }
        FieldElem::from_bits(acc)
    }
}
