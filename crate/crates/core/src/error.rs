use thiserror::Error;

use crate::field::FieldElem;
use crate::poly::BinaryPolynomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("extension degree {0} outside supported range 1..=24")]
    DegreeOutOfRange(u32),

    #[error("tower parameters t={t}, k={k} invalid: need t >= 1, k >= 1 and 3*t*k <= 24")]
    TowerOutOfRange { t: u32, k: u32 },

    #[error("modulus {modulus} has degree {found}, expected {expected}")]
    ModulusDegree {
        modulus: BinaryPolynomial,
        expected: u32,
        found: isize,
    },

    #[error("modulus {modulus} is reducible: divisible by {factor}")]
    ReducibleModulus {
        modulus: BinaryPolynomial,
        factor: BinaryPolynomial,
    },

    #[error("element 0x{bits:x} does not fit in F_2^{m}")]
    ElementOutOfRange { bits: u64, m: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("subfield degree {d} does not divide extension degree {m}")]
    NotADivisor { d: u32, m: u32 },

    #[error("{0} is not in the subfield of degree {1}")]
    NotInSubfield(FieldElem, u32),

    #[error("field context has no tower parameters (t, k)")]
    NoTower,

    #[error("theorem 1 requires q = 4 (t = 2), got t = {0}")]
    RequiresQ4(u32),

    #[error("linearized polynomial has {found} coefficients, field degree is {expected}")]
    LinearizedLength { expected: u32, found: usize },

    #[error("relative trace of {0} is nonzero")]
    NonzeroRelativeTrace(FieldElem),

    #[error("relative trace of {0} is zero")]
    ZeroRelativeTrace(FieldElem),

    #[error("no Case-1 witness y in the subfield for a = {0}")]
    NoCase1Witness(FieldElem),

    #[error("candidate search is limited to m <= {limit}, got m = {m}")]
    SearchTooLarge { m: u32, limit: u32 },

    #[error("element is zero")]
    ZeroElement,

    #[error("all-a character sum over F_2^{m} exceeds the cost gate (m <= {limit}); use sampling or the override")]
    CostGate { m: u32, limit: u32 },

    #[error("map table has {len} entries, expected {expected}")]
    TableLength { len: usize, expected: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}
