//! Named maps F_{2^m} → F_{2^m}, either as an evaluator or a full table.
//!
//! The hex table exchange format is one `x:gx` pair per line, lowercase hex
//! without prefix, 2^m lines sorted by x.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Largest degree for which built-in maps are materialized eagerly.
pub const TABLE_MAX_DEGREE: u32 = 18;

type MapFn = dyn Fn(FieldElem) -> FieldElem + Send + Sync;

#[derive(Clone)]
enum Repr {
    Table(Arc<Vec<FieldElem>>),
    Eval(Arc<MapFn>),
}

#[derive(Clone)]
pub struct FieldMap {
    name: String,
    ctx: FieldCtx,
    repr: Repr,
}

impl FieldMap {
    pub fn from_fn(
        name: impl Into<String>,
        ctx: &FieldCtx,
        f: impl Fn(FieldElem) -> FieldElem + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            ctx: ctx.clone(),
            repr: Repr::Eval(Arc::new(f)),
        }
    }

    pub fn from_table(name: impl Into<String>, ctx: &FieldCtx, table: Vec<FieldElem>) -> Result<Self> {
        if table.len() as u64 != ctx.order() {
            return Err(Error::TableLength {
                len: table.len(),
                expected: ctx.order(),
            });
        }
        if let Some(bad) = table.iter().find(|v| !ctx.contains(**v)) {
            return Err(Error::ElementOutOfRange {
                bits: bad.bits() as u64,
                m: ctx.degree(),
            });
        }
        Ok(Self {
            name: name.into(),
            ctx: ctx.clone(),
            repr: Repr::Table(Arc::new(table)),
        })
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        Self::from_fn("identity", ctx, |x| x)
    }

    /// `x ↦ x^e`.
    pub fn power(ctx: &FieldCtx, e: u64) -> Self {
        let c = ctx.clone();
        Self::from_fn(format!("x^{e}"), ctx, move |x| c.pow(x, e))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn is_table(&self) -> bool {
        matches!(self.repr, Repr::Table(_))
    }

    #[inline]
    pub fn eval(&self, x: FieldElem) -> FieldElem {
        match &self.repr {
            Repr::Table(t) => t[x.bits() as usize],
            Repr::Eval(f) => f(x),
        }
    }

    /// All 2^m values, indexed by element encoding.
    pub fn table(&self) -> Arc<Vec<FieldElem>> {
        match &self.repr {
            Repr::Table(t) => Arc::clone(t),
            Repr::Eval(f) => Arc::new(
                (0..self.ctx.order() as u32)
                    .into_par_iter()
                    .map(|v| f(FieldElem::from_bits(v)))
                    .collect(),
            ),
        }
    }

    pub fn materialize(&self) -> Self {
        Self {
            name: self.name.clone(),
            ctx: self.ctx.clone(),
            repr: Repr::Table(self.table()),
        }
    }

    /// Materialize when the field is small enough for an eager table.
    pub fn materialize_if_small(self) -> Self {
        if self.ctx.degree() <= TABLE_MAX_DEGREE {
            self.materialize()
        } else {
            self
        }
    }

    /// A table copy with the value at `x` replaced by `value`.
    pub fn with_entry(&self, x: FieldElem, value: FieldElem) -> Self {
        let mut t = (*self.table()).clone();
        t[x.bits() as usize] = value;
        Self {
            name: format!("{}[{x}:={value}]", self.name),
            ctx: self.ctx.clone(),
            repr: Repr::Table(Arc::new(t)),
        }
    }

    pub fn to_hex_table(&self) -> String {
        let table = self.table();
        let mut out = String::with_capacity(table.len() * 10);
        for (x, v) in table.iter().enumerate() {
            out.push_str(&format!("{x:x}:{v:x}\n"));
        }
        out
    }

    /// Parse a hex table. The entry count must be a power of two and the
    /// x column must be exactly 0, 1, 2, ... in order.
    pub fn parse_hex_table(text: &str) -> Result<Vec<FieldElem>> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("table line {}: {msg}", lineno + 1));
            let (x, v) = line.split_once(':').ok_or_else(|| err("expected x:gx"))?;
            let x = u32::from_str_radix(x, 16).map_err(|_| err("bad x"))?;
            let v = u32::from_str_radix(v, 16).map_err(|_| err("bad value"))?;
            if x as usize != values.len() {
                return Err(err(&format!("expected x = {:x}, found {x:x}", values.len())));
            }
            values.push(FieldElem::from_bits(v));
        }
        if values.is_empty() || !values.len().is_power_of_two() || values.len() < 2 {
            return Err(Error::Parse(format!(
                "table has {} entries, expected 2^m with m >= 1",
                values.len()
            )));
        }
        Ok(values)
    }
}

impl fmt::Debug for FieldMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldMap")
            .field("name", &self.name)
            .field("m", &self.ctx.degree())
            .field("table", &self.is_table())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_table_round_trip() {
        let ctx = FieldCtx::new(4, None).unwrap();
        let cube = FieldMap::power(&ctx, 3);
        let text = cube.to_hex_table();
        assert!(text.starts_with("0:0\n1:1\n"));
        assert_eq!(text.lines().count(), 16);
        let parsed = FieldMap::parse_hex_table(&text).unwrap();
        let back = FieldMap::from_table("cube", &ctx, parsed).unwrap();
        for x in ctx.elements() {
            assert_eq!(back.eval(x), cube.eval(x));
        }
    }

    #[test]
    fn malformed_tables() {
        assert!(FieldMap::parse_hex_table("0:0\n1:1\n2:2\n").is_err());
        assert!(FieldMap::parse_hex_table("0:0\n2:1\n").is_err());
        assert!(FieldMap::parse_hex_table("0:0\n1:zz\n").is_err());
        assert!(FieldMap::parse_hex_table("").is_err());
        let ctx = FieldCtx::new(1, None).unwrap();
        let vals = FieldMap::parse_hex_table("0:0\n1:2\n").unwrap();
        assert!(FieldMap::from_table("bad", &ctx, vals).is_err());
        let ctx2 = FieldCtx::new(2, None).unwrap();
        assert!(FieldMap::from_table("short", &ctx2, vec![FieldElem::ZERO; 2]).is_err());
    }

    #[test]
    fn materialized_agrees_with_evaluator() {
        let ctx = FieldCtx::new(10, None).unwrap();
        let f = FieldMap::power(&ctx, 7);
        let t = f.materialize();
        assert!(t.is_table() && !f.is_table());
        for x in ctx.elements() {
            assert_eq!(t.eval(x), f.eval(x));
        }
        let mutated = t.with_entry(FieldElem::ONE, FieldElem::ZERO);
        assert_eq!(mutated.eval(FieldElem::ONE), FieldElem::ZERO);
        assert_eq!(t.eval(FieldElem::ONE), FieldElem::ONE);
    }
}
