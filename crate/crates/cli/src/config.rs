//! Run configuration: parameter ranges, map specs, sampling modes and
//! output formats.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use ppverify_core::constructions::build_l_note;
use ppverify_core::{
    build_g_thm1, build_g_thm3, CharSumMode, FieldCtx, FieldMap, LinearizedPoly, ModulusOverrides,
    MAX_DEGREE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PpMethod {
    Exhaustive,
    Charsum,
    Both,
}

/// Parse `a..b` (inclusive), `a,b,c` or a single value.
pub fn parse_range(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: u32 = lo.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
        let hi: u32 = hi.trim().parse().with_context(|| format!("bad range end in {s:?}"))?;
        if lo > hi {
            bail!("empty range {s:?}");
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|v| v.trim().parse::<u32>().with_context(|| format!("bad value {v:?}")))
        .collect()
}

/// Every (t, k) pair of the two ranges; each must satisfy 3tk <= 24.
pub fn expand_towers(t: &str, k: &str) -> Result<Vec<(u32, u32)>> {
    let (ts, ks) = (parse_range(t)?, parse_range(k)?);
    let mut out = Vec::new();
    for &t in &ts {
        for &k in &ks {
            if t == 0 || k == 0 || 3 * t * k > MAX_DEGREE {
                bail!("tower t={t}, k={k} outside 1 <= 3tk <= {MAX_DEGREE}");
            }
            out.push((t, k));
        }
    }
    Ok(out)
}

/// `all` or `sample:n:seed`.
pub fn parse_mode(s: &str, override_gate: bool) -> Result<CharSumMode> {
    if s == "all" {
        return Ok(CharSumMode::All { override_gate });
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["sample", n, seed] => Ok(CharSumMode::Sample {
            n: n.parse().with_context(|| format!("bad sample count {n:?}"))?,
            seed: seed.parse().with_context(|| format!("bad seed {seed:?}"))?,
        }),
        ["sample", n] => Ok(CharSumMode::Sample {
            n: n.parse().with_context(|| format!("bad sample count {n:?}"))?,
            seed: ppverify_core::DEFAULT_SEED,
        }),
        _ => bail!("mode must be `all` or `sample:n:seed`, got {s:?}"),
    }
}

pub fn load_overrides(path: Option<&Path>) -> Result<ModulusOverrides> {
    match path {
        None => Ok(ModulusOverrides::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading modulus file {}", p.display()))?;
            Ok(ModulusOverrides::parse(&text)?)
        }
    }
}

/// `builtin:L-note`, `L-note`, `identity` or `lin[...]`.
pub fn parse_linearized(ctx: &FieldCtx, spec: &str) -> Result<LinearizedPoly> {
    let spec = spec.trim();
    match spec.strip_prefix("builtin:").unwrap_or(spec) {
        "L-note" => Ok(build_l_note(ctx)?),
        "identity" => Ok(LinearizedPoly::identity(ctx.degree())),
        other if other.starts_with("lin[") => Ok(LinearizedPoly::parse_text(ctx, other)?),
        other => bail!("unknown linearized polynomial {other:?}"),
    }
}

/// Where the field for a map comes from.
pub enum MapSource {
    Builtin(String),
    Table(PathBuf),
}

impl MapSource {
    pub fn parse(spec: &str) -> Self {
        match spec.strip_prefix("builtin:") {
            Some(name) => MapSource::Builtin(name.to_string()),
            None => MapSource::Table(PathBuf::from(spec)),
        }
    }
}

/// Field parameters given on the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct FieldArgs {
    pub t: Option<u32>,
    pub k: Option<u32>,
    pub m: Option<u32>,
}

impl FieldArgs {
    pub fn ctx(&self, overrides: &ModulusOverrides) -> Result<FieldCtx> {
        match (self.t, self.k, self.m) {
            (Some(t), Some(k), None) => Ok(overrides.tower_ctx(t, k)?),
            (None, None, Some(m)) => Ok(overrides.ctx(m)?),
            (None, None, None) => bail!("field not specified: give --t and --k, or --m"),
            _ => bail!("give either --t and --k, or --m"),
        }
    }
}

pub fn resolve_map(spec: &str, field: FieldArgs, overrides: &ModulusOverrides) -> Result<FieldMap> {
    match MapSource::parse(spec) {
        MapSource::Builtin(name) => {
            let ctx = field.ctx(overrides)?;
            builtin_map(&ctx, &name)
        }
        MapSource::Table(path) => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading table {}", path.display()))?;
            let values = FieldMap::parse_hex_table(&text)?;
            let m = values.len().trailing_zeros();
            let ctx = if field.t.is_some() || field.k.is_some() || field.m.is_some() {
                let ctx = field.ctx(overrides)?;
                if ctx.degree() != m {
                    bail!("table has 2^{m} entries but the field has degree {}", ctx.degree());
                }
                ctx
            } else {
                overrides.ctx(m)?
            };
            Ok(FieldMap::from_table(path.display().to_string(), &ctx, values)?)
        }
    }
}

fn builtin_map(ctx: &FieldCtx, name: &str) -> Result<FieldMap> {
    if name == "g-thm1" {
        return Ok(build_g_thm1(ctx)?);
    }
    if name == "L-note" {
        let l = build_l_note(ctx)?;
        let c = ctx.clone();
        return Ok(FieldMap::from_fn("L-note", ctx, move |x| l.eval(&c, x)).materialize_if_small());
    }
    if name == "identity" {
        return Ok(FieldMap::identity(ctx));
    }
    if let Some(inner) = name.strip_prefix("g-thm3(").and_then(|r| r.strip_suffix(')')) {
        let l = parse_linearized(ctx, inner)?;
        return Ok(build_g_thm3(ctx, &l)?);
    }
    Err(anyhow!(
        "unknown builtin map {name:?} (expected g-thm1, L-note, identity or g-thm3(L))"
    ))
}
