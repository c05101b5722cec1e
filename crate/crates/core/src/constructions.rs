//! The concrete maps under test over F_{q^{3k}}, q = 2^t:
//!
//! * `g1(x) = x + S(x)^{q^{2k}} + S(x)^{q^k + 3}` with `S = S_{2k}`,
//! * `L_note = (x + S^{q^{2k}})^{4 q^{3k-1}}`, folded into linearized form,
//! * `g3(x) = L(x) + S(x)^{q^k + 3}` for a 2-linearized `L`,
//!
//! plus the coefficient check of `L + L^{q^{2k}} = S^4` and a search for
//! further admissible `L`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem, Tower};
use crate::linearized::{relative_trace_poly, s_polynomial, CompiledLinear, LinearizedPoly};
use crate::map::{FieldMap, TABLE_MAX_DEGREE};
use crate::pp_test::{is_permutation_exhaustive, PPVerdict};

/// Candidate family explored by [`search_l_candidates`].
pub const SEARCH_FAMILY: &str = "L = L_note + P o Tr_{q^3k/q^k}, P = sum of at most two terms p*x^(2^j), \
     j < tk, p in F_{q^k}^*; order: P = 0, then single terms by (j, p), then pairs by (j1 < j2, p1, p2)";

/// `S_{2k}` for the context's tower.
pub fn s_2k(ctx: &FieldCtx) -> Result<LinearizedPoly> {
    let tower = ctx.require_tower()?;
    s_polynomial(ctx, 2 * tower.k)
}

// Evaluates S(x) together with S(x)^{q^k + 3}.
struct Correction {
    ctx: FieldCtx,
    s: CompiledLinear,
    s_qk: CompiledLinear,
}

impl Correction {
    fn new(ctx: &FieldCtx, tower: Tower) -> Result<Self> {
        let s = s_2k(ctx)?;
        let m = ctx.degree();
        let frob_k = LinearizedPoly::frobenius_power(m, tower.subfield_degree() as u64);
        Ok(Self {
            ctx: ctx.clone(),
            s: s.compile(ctx),
            s_qk: frob_k.compose(ctx, &s).compile(ctx),
        })
    }

    #[inline]
    fn s_power(&self, x: FieldElem) -> FieldElem {
        let s = self.s.apply(x);
        let s3 = self.ctx.mul(self.ctx.square(s), s);
        self.ctx.mul(self.s_qk.apply(x), s3)
    }
}

/// The first theorem's map `x + S^{q^{2k}} + S^{q^k+3}`.
pub fn build_g_thm1(ctx: &FieldCtx) -> Result<FieldMap> {
    let tower = ctx.require_tower()?;
    let corr = Correction::new(ctx, tower)?;
    let frob_2k = LinearizedPoly::frobenius_power(ctx.degree(), 2 * tower.subfield_degree() as u64);
    let s_q2k = frob_2k.compose(ctx, &s_2k(ctx)?).compile(ctx);
    let map = FieldMap::from_fn("g-thm1", ctx, move |x| x + s_q2k.apply(x) + corr.s_power(x));
    Ok(map.materialize_if_small())
}

/// `Frob^e ∘ (id + Frob^{2kt} ∘ S)` with `e = 2 + t(3k - 1)`, i.e. the
/// 2-linearized form of `(x + S^{q^{2k}})^{4 q^{3k-1}}`.
pub fn build_l_note(ctx: &FieldCtx) -> Result<LinearizedPoly> {
    let tower = ctx.require_tower()?;
    let m = ctx.degree();
    let (t, k) = (tower.t as u64, tower.k as u64);
    let inner = &LinearizedPoly::identity(m)
        + &LinearizedPoly::frobenius_power(m, 2 * k * t).compose(ctx, &s_2k(ctx)?);
    Ok(LinearizedPoly::frobenius_power(m, 2 + t * (3 * k - 1)).compose(ctx, &inner))
}

/// `L + Frob^{2kt} ∘ L`.
pub fn condition_ii_lhs(ctx: &FieldCtx, l: &LinearizedPoly) -> Result<LinearizedPoly> {
    let tower = ctx.require_tower()?;
    let frob = LinearizedPoly::frobenius_power(ctx.degree(), 2 * tower.subfield_degree() as u64);
    Ok(l + &frob.compose(ctx, l))
}

/// `S^4 = Frob^2 ∘ S`.
pub fn condition_ii_rhs(ctx: &FieldCtx) -> Result<LinearizedPoly> {
    Ok(LinearizedPoly::frobenius_power(ctx.degree(), 2).compose(ctx, &s_2k(ctx)?))
}

/// `L + L^{q^{2k}} ≡ S^4 (mod x^{2^m} - x)`, compared coefficientwise.
pub fn check_condition_ii(ctx: &FieldCtx, l: &LinearizedPoly) -> Result<bool> {
    Ok(condition_ii_lhs(ctx, l)? == condition_ii_rhs(ctx)?)
}

/// The generalized map `L(x) + S^{q^k+3}`.
pub fn build_g_thm3(ctx: &FieldCtx, l: &LinearizedPoly) -> Result<FieldMap> {
    let tower = ctx.require_tower()?;
    if l.degree_m() != ctx.degree() {
        return Err(Error::LinearizedLength {
            expected: ctx.degree(),
            found: l.degree_m() as usize,
        });
    }
    let corr = Correction::new(ctx, tower)?;
    let lc = l.compile(ctx);
    let name = format!("g-thm3({})", l.to_text());
    let map = FieldMap::from_fn(name, ctx, move |x| lc.apply(x) + corr.s_power(x));
    Ok(map.materialize_if_small())
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchCandidate {
    /// Position in the deterministic candidate sequence.
    pub index: usize,
    /// Terms `(j, p)` of the perturbation `P = Σ p x^{2^j}`.
    pub terms: Vec<(u32, u32)>,
    #[serde(serialize_with = "ser_text")]
    pub poly: LinearizedPoly,
    pub pp: PPVerdict,
}

fn ser_text<S: serde::Serializer>(p: &LinearizedPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_text())
}

// The first `budget` perturbations in search order.
fn perturbations(ctx: &FieldCtx, budget: usize) -> Result<Vec<Vec<(u32, FieldElem)>>> {
    let d = ctx.require_tower()?.subfield_degree();
    let units: Vec<FieldElem> = ctx.enumerate_subfield(d)?.into_iter().skip(1).collect();
    let singles = (0..d).flat_map(|j| units.iter().map(move |&p| vec![(j, p)]));
    let pairs = (0..d).flat_map(|j1| {
        let units = &units;
        (j1 + 1..d).flat_map(move |j2| {
            units
                .iter()
                .flat_map(move |&p1| units.iter().map(move |&p2| vec![(j1, p1), (j2, p2)]))
        })
    });
    Ok(std::iter::once(Vec::new())
        .chain(singles)
        .chain(pairs)
        .take(budget)
        .collect())
}

/// Examine up to `budget` candidates `L_note + P ∘ Tr_{q^{3k}/q^k}` and keep
/// those satisfying both hypotheses. Each kept candidate carries an
/// exhaustive permutation verdict for its `g3`.
pub fn search_l_candidates(ctx: &FieldCtx, budget: usize) -> Result<Vec<SearchCandidate>> {
    let tower = ctx.require_tower()?;
    if ctx.degree() > TABLE_MAX_DEGREE {
        return Err(Error::SearchTooLarge {
            m: ctx.degree(),
            limit: TABLE_MAX_DEGREE,
        });
    }
    let m = ctx.degree();
    let l_note = build_l_note(ctx)?;
    let trace = relative_trace_poly(ctx)?;
    let d = tower.subfield_degree();
    let ctx = Arc::new(ctx.clone());
    let candidates = perturbations(&ctx, budget)?;
    let results: Result<Vec<Option<SearchCandidate>>> = candidates
        .into_par_iter()
        .enumerate()
        .map(|(index, terms)| {
            let p = terms.iter().fold(LinearizedPoly::zero(m), |acc, &(j, c)| {
                &acc + &LinearizedPoly::monomial(m, j as u64, c)
            });
            let l = &l_note + &p.compose(&ctx, &trace);
            if !l.permutes(&ctx, d)?.holds() || !check_condition_ii(&ctx, &l)? {
                return Ok(None);
            }
            let pp = is_permutation_exhaustive(&build_g_thm3(&ctx, &l)?);
            Ok(Some(SearchCandidate {
                index,
                terms: terms.iter().map(|&(j, c)| (j, c.bits())).collect(),
                poly: l,
                pp,
            }))
        })
        .collect();
    Ok(results?.into_iter().flatten().collect())
}
