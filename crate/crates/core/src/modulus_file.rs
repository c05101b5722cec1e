//! Modulus override files: one `m:hex` entry per line, e.g. `6:43` for
//! x^6 + x + 1. Blank lines and `#` comments are ignored.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::poly::BinaryPolynomial;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModulusOverrides {
    by_degree: BTreeMap<u32, BinaryPolynomial>,
}

impl ModulusOverrides {
    pub fn parse(text: &str) -> Result<Self> {
        let mut by_degree = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("modulus file line {}: {msg}", lineno + 1));
            let (m, hex) = line.split_once(':').ok_or_else(|| err("expected m:hex"))?;
            let m: u32 = m.trim().parse().map_err(|_| err("bad degree"))?;
            let poly = BinaryPolynomial::from_hex(hex).map_err(|e| err(&e.to_string()))?;
            if poly.degree() != m as isize {
                return Err(err(&format!("polynomial {poly} does not have degree {m}")));
            }
            if by_degree.insert(m, poly).is_some() {
                return Err(err(&format!("duplicate entry for degree {m}")));
            }
        }
        Ok(Self { by_degree })
    }

    pub fn get(&self, m: u32) -> Option<&BinaryPolynomial> {
        self.by_degree.get(&m)
    }

    pub fn tower_ctx(&self, t: u32, k: u32) -> Result<FieldCtx> {
        FieldCtx::tower(t, k, self.get(3 * t * k).cloned())
    }

    pub fn ctx(&self, m: u32) -> Result<FieldCtx> {
        FieldCtx::new(m, self.get(m).cloned())
    }
}
