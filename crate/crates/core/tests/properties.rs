use std::sync::OnceLock;

use ppverify_core::gf2::{echelon, in_span, BitMatrix};
use ppverify_core::pp_test::{char_sum, is_permutation_exhaustive};
use ppverify_core::{BinaryPolynomial, FieldCtx, FieldElem, FieldMap, LinearizedPoly, Permutes, Verdict};
use proptest::prelude::*;

fn contexts() -> &'static [FieldCtx] {
    static CTX: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    CTX.get_or_init(|| {
        [1, 2, 3, 4, 6, 8, 9, 12, 13, 18, 24]
            .into_iter()
            .map(|m| FieldCtx::new(m, None).unwrap())
            .collect()
    })
}

fn ctx_and(n: usize) -> impl Strategy<Value = (FieldCtx, Vec<FieldElem>)> {
    (0..contexts().len()).prop_flat_map(move |i| {
        let ctx = contexts()[i].clone();
        let mask = ctx.mask();
        proptest::collection::vec(any::<u32>(), n)
            .prop_map(move |v| (ctx.clone(), v.into_iter().map(|b| FieldElem::from_bits(b & mask)).collect()))
    })
}

fn small_ctx_and_poly() -> impl Strategy<Value = (FieldCtx, LinearizedPoly)> {
    (1u32..=10).prop_flat_map(|m| {
        let ctx = FieldCtx::new(m, None).unwrap();
        let mask = ctx.mask();
        proptest::collection::vec(any::<u32>(), m as usize).prop_map(move |v| {
            let coeffs = v.into_iter().map(|b| FieldElem::from_bits(b & mask)).collect();
            let l = LinearizedPoly::from_coeffs(&ctx, coeffs).unwrap();
            (ctx.clone(), l)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms((ctx, v) in ctx_and(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        prop_assert_eq!(ctx.mul(a, b + c), ctx.mul(a, b) + ctx.mul(a, c));
        prop_assert_eq!(ctx.mul(a, FieldElem::ONE), a);
        prop_assert_eq!(a + a, FieldElem::ZERO);
        prop_assert_eq!(ctx.square(a), ctx.mul(a, a));
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), FieldElem::ONE);
        }
        // a^(2^m) = a
        prop_assert_eq!(ctx.frobenius(a, ctx.degree() as u64), a);
    }

    #[test]
    fn trace_is_linear_and_binary((ctx, v) in ctx_and(2)) {
        let (a, b) = (v[0], v[1]);
        prop_assert_eq!(ctx.abs_trace(a + b), ctx.abs_trace(a) ^ ctx.abs_trace(b));
        prop_assert_eq!(FieldElem::from_bits(ctx.abs_trace(a) as u32), ctx.trace_sum(a));
        let w = ctx.trace_form(a);
        prop_assert_eq!((b.bits() & w).count_ones() as u8 & 1, ctx.abs_trace(ctx.mul(a, b)));
    }

    #[test]
    fn relative_trace_lands_in_subfield((ctx, v) in ctx_and(2)) {
        let m = ctx.degree();
        for d in (1..=m).filter(|d| m % d == 0) {
            let r = ctx.rel_trace(v[0], d).unwrap();
            prop_assert!(ctx.in_subfield(r, d));
            prop_assert_eq!(ctx.rel_trace(v[0] + v[1], d).unwrap(), r + ctx.rel_trace(v[1], d).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn linearized_eval_is_additive((ctx, l) in small_ctx_and_poly(), x in any::<u32>(), y in any::<u32>()) {
        let x = FieldElem::from_bits(x & ctx.mask());
        let y = FieldElem::from_bits(y & ctx.mask());
        prop_assert_eq!(l.eval(&ctx, x + y), l.eval(&ctx, x) + l.eval(&ctx, y));
        let mat = l.matrix(&ctx);
        prop_assert_eq!(mat.apply(x.bits()), l.eval(&ctx, x).bits());
        prop_assert_eq!(l.compile(&ctx).apply(x), l.eval(&ctx, x));
    }

    #[test]
    fn composition_matches_nested_eval((ctx, a) in small_ctx_and_poly(), b in any::<u64>(), x in any::<u32>()) {
        let inner = LinearizedPoly::frobenius_power(ctx.degree(), b % 7).scale(&ctx, FieldElem::from_bits((b >> 8) as u32 & ctx.mask()));
        let x = FieldElem::from_bits(x & ctx.mask());
        prop_assert_eq!(a.compose(&ctx, &inner).eval(&ctx, x), a.eval(&ctx, inner.eval(&ctx, x)));
    }

    #[test]
    fn rank_nullity_and_kernel((ctx, l) in small_ctx_and_poly()) {
        let ki = l.kernel_image(&ctx);
        prop_assert_eq!(ki.kernel.len() + ki.image.len(), ctx.degree() as usize);
        for z in ki.kernel_elements() {
            prop_assert!(l.eval(&ctx, z).is_zero());
        }
        let zeros = ctx.elements().filter(|&x| l.eval(&ctx, x).is_zero()).count();
        prop_assert_eq!(zeros, 1usize << ki.kernel.len());
        let image_basis = echelon(ki.image.iter().map(|e| e.bits()).collect());
        for x in ctx.elements().take(64) {
            prop_assert!(in_span(l.eval(&ctx, x).bits(), &image_basis));
        }
        let perm = l.permutes(&ctx, ctx.degree()).unwrap();
        prop_assert_eq!(matches!(perm, Permutes::Yes), ki.kernel.is_empty());
    }

    #[test]
    fn solve_finds_preimage(cols in proptest::collection::vec(0u32..256, 1..8), x in any::<u32>()) {
        let mat = BitMatrix::from_columns(8, cols.clone());
        let target = mat.apply(x & ((1 << cols.len()) - 1));
        let sol = mat.solve(target).unwrap();
        prop_assert_eq!(mat.apply(sol), target);
        prop_assert!(sol <= x & ((1 << cols.len()) - 1));
    }

    #[test]
    fn gcd_divides_both(a in 1u64..1 << 20, b in 1u64..1 << 20) {
        let (pa, pb) = (BinaryPolynomial::from_u64(a), BinaryPolynomial::from_u64(b));
        let g = pa.gcd(&pb);
        prop_assert!(g.divides(&pa) && g.divides(&pb));
        let (qa, qb) = (pa.div_rem(&g).unwrap().0, pb.div_rem(&g).unwrap().0);
        prop_assert_eq!(qa.gcd(&qb), BinaryPolynomial::one());
    }

    #[test]
    fn polynomial_text_round_trip(a in 0u64..u64::MAX) {
        let p = BinaryPolynomial::from_u64(a);
        prop_assert_eq!(BinaryPolynomial::from_hex(&p.to_hex()).unwrap(), p);
    }

    #[test]
    fn table_round_trip_and_permutation_oracle(perm in Just((0u32..16).collect::<Vec<_>>()).prop_shuffle(), hit in 0usize..16, val in 0u32..16) {
        let ctx = FieldCtx::new(4, None).unwrap();
        let table: Vec<_> = perm.iter().map(|&b| FieldElem::from_bits(b)).collect();
        let map = FieldMap::from_table("p", &ctx, table.clone()).unwrap();
        prop_assert_eq!(FieldMap::parse_hex_table(&map.to_hex_table()).unwrap(), table);
        prop_assert!(is_permutation_exhaustive(&map).verdict == Verdict::Permutation);
        for a in ctx.elements().skip(1) {
            prop_assert_eq!(char_sum(&map, a), 0);
        }
        let mutated = map.with_entry(FieldElem::from_bits(hit as u32), FieldElem::from_bits(val));
        let bijective = perm[hit] == val;
        prop_assert_eq!(is_permutation_exhaustive(&mutated).verdict == Verdict::Permutation, bijective);
        prop_assert_eq!(ctx.elements().skip(1).all(|a| char_sum(&mutated, a) == 0), bijective);
    }
}
