//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits nonzero if any failed.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ppverify_core::linearized::relative_trace_poly;
use ppverify_core::pp_test::{
    char_sum, find_case1_witness, is_permutation_exhaustive, pp_verdict_charsum, shift_check,
};
use ppverify_core::proof_checks::{
    check_case2_factorization, check_eq22, check_eq23, check_gcd_identity, check_kernel_image,
    tracezero_set, Case2Data,
};
use ppverify_core::{
    build_g_thm1, build_g_thm3, build_l_note, check_condition_ii, s_polynomial, verify_thm3,
    CharSumMode, FieldCtx, FieldElem, FieldMap, Verdict, VerifyOptions,
    DEFAULT_SEED,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn all_charsums(g: &FieldMap) -> Verdict {
    pp_verdict_charsum(g, CharSumMode::All { override_gate: false })
        .expect("within gate")
        .verdict
}

fn within(elapsed: Duration, limit: f64) -> Check {
    let secs = elapsed.as_secs_f64();
    if secs >= limit {
        return Err(format!("took {secs:.3}s, limit {limit}s"));
    }
    Ok(String::new())
}

// towers (t, k) with 3tk <= max_m
fn towers(max_m: u32) -> Vec<(u32, u32)> {
    (1..=max_m / 3)
        .flat_map(|t| (1..=max_m / (3 * t)).map(move |k| (t, k)))
        .collect()
}

fn thm1_all_sums(k: u32, limit: f64) -> Check {
    let start = Instant::now();
    let ctx = FieldCtx::tower(2, k, None).unwrap();
    let g = build_g_thm1(&ctx).unwrap();
    let exhaustive = is_permutation_exhaustive(&g);
    let sums = pp_verdict_charsum(&g, CharSumMode::All { override_gate: false }).unwrap();
    let elapsed = start.elapsed();
    ensure!(exhaustive.verdict == Verdict::Permutation, "not a bijection: {:?}", exhaustive.witness);
    ensure!(sums.verdict == Verdict::Permutation, "nonzero sum: {:?}", sums.witness);
    ensure!(sums.checks == ctx.order() - 1, "only {} sums evaluated", sums.checks);
    within(elapsed, limit)?;
    Ok(format!("{} sums zero in {:.3}s", sums.checks, elapsed.as_secs_f64()))
}

fn criterion_1() -> Check {
    thm1_all_sums(1, 0.1)
}

fn criterion_2() -> Check {
    thm1_all_sums(2, 60.0)
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let ctx = FieldCtx::tower(2, 3, None).unwrap();
    let g = build_g_thm1(&ctx).unwrap();
    let exhaustive = is_permutation_exhaustive(&g);
    let sums = pp_verdict_charsum(&g, CharSumMode::Sample { n: 128, seed: DEFAULT_SEED }).unwrap();
    let elapsed = start.elapsed();
    ensure!(exhaustive.verdict == Verdict::Permutation, "not a bijection: {:?}", exhaustive.witness);
    ensure!(sums.verdict == Verdict::ProbablePermutation, "nonzero sum: {:?}", sums.witness);
    ensure!(sums.checks >= 128, "only {} sums", sums.checks);
    within(elapsed, 120.0)?;
    Ok(format!("bijection, {} sampled sums zero in {:.2}s", sums.checks, elapsed.as_secs_f64()))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let opts = VerifyOptions::default();
    for (t, k) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)] {
        let ctx = FieldCtx::tower(t, k, None).unwrap();
        let l = build_l_note(&ctx).unwrap();
        let g = build_g_thm3(&ctx, &l).unwrap();
        let exhaustive = is_permutation_exhaustive(&g);
        ensure!(exhaustive.verdict == Verdict::Permutation, "(t,k)=({t},{k}) not a bijection");
        ensure!(l.permutes(&ctx, t * k).unwrap().holds(), "(t,k)=({t},{k}) condition (i)");
        ensure!(check_condition_ii(&ctx, &l).unwrap(), "(t,k)=({t},{k}) condition (ii)");
        let report = verify_thm3(&ctx, &l, &opts).unwrap();
        ensure!(report.overall, "(t,k)=({t},{k}) report failed: {:?}", report.checks);
    }
    let elapsed = start.elapsed();
    within(elapsed, 60.0)?;
    Ok(format!("6 towers in {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_5() -> Check {
    let mut pointwise = 0;
    let all = towers(18);
    for &(t, k) in &all {
        let ctx = FieldCtx::tower(t, k, None).unwrap();
        let outcome = check_eq22(&ctx, DEFAULT_SEED).unwrap();
        ensure!(outcome.passed(), "(t,k)=({t},{k}): {:?}", outcome.counterexample);
        if ctx.degree() <= 12 {
            let q = 1u64 << t;
            let qk = q.pow(k);
            let s = s_polynomial(&ctx, 2 * k).unwrap();
            for x in ctx.elements() {
                let v = s.eval(&ctx, x);
                let sum = v + ctx.pow(v, qk) + ctx.pow(v, qk * qk);
                ensure!(sum.is_zero(), "(t,k)=({t},{k}) x={x}: pointwise sum {sum}");
            }
            pointwise += 1;
        }
    }
    Ok(format!("{} towers, {pointwise} pointwise", all.len()))
}

fn criterion_6() -> Check {
    let all = towers(18);
    for &(t, k) in &all {
        let ctx = FieldCtx::tower(t, k, None).unwrap();
        let outcome = check_kernel_image(&ctx).unwrap();
        ensure!(outcome.passed(), "(t,k)=({t},{k}): {:?}", outcome.counterexample);
        // independent count by sweeping every element
        let s = s_polynomial(&ctx, 2 * k).unwrap().compile(&ctx);
        let d = t * k;
        let mut image = vec![false; ctx.order() as usize];
        let mut kernel = 0u64;
        for x in ctx.elements() {
            let v = s.apply(x);
            if v.is_zero() {
                ensure!(ctx.in_subfield(x, d), "(t,k)=({t},{k}) kernel element {x} outside subfield");
                kernel += 1;
            }
            image[v.bits() as usize] = true;
        }
        let qk = 1u64 << d;
        ensure!(kernel == qk, "(t,k)=({t},{k}) |ker| = {kernel}");
        let image: Vec<FieldElem> = ctx.elements().filter(|x| image[x.bits() as usize]).collect();
        ensure!(image.len() as u64 == qk * qk, "(t,k)=({t},{k}) |image| = {}", image.len());
        ensure!(image == tracezero_set(&ctx).unwrap(), "(t,k)=({t},{k}) image != trace-zero set");
    }
    Ok(format!("{} towers", all.len()))
}

fn criterion_7() -> Check {
    for k in 1..=8 {
        let outcome = check_gcd_identity(k);
        ensure!(outcome.passed(), "{:?}", outcome.counterexample);
    }
    Ok("k = 1..8".into())
}

fn criterion_8() -> Check {
    let ctx = FieldCtx::tower(2, 1, None).unwrap();
    let g = build_g_thm1(&ctx).unwrap();
    let data = Case2Data::new(&ctx, &g).unwrap();
    let (mut case1, mut case2) = (0, 0);
    for a in ctx.elements().skip(1) {
        if !ctx.rel_trace(a, 2).unwrap().is_zero() {
            let y = find_case1_witness(&ctx, a).map_err(|e| e.to_string())?;
            ensure!(shift_check(&g, a, y) == Some(1), "a={a} y={y}: shift constant not 1");
            case1 += 1;
            continue;
        }
        let c = data.decompose(a).unwrap();
        ensure!(c + ctx.pow(c, 4) == a, "a={a}: c={c} does not decompose a");
        for outcome in [
            check_eq23(&ctx, &g, a).unwrap(),
            check_case2_factorization(&ctx, &g, a).unwrap(),
        ] {
            ensure!(outcome.passed(), "{:?}", outcome.counterexample);
        }
        let coset = data.coset(c);
        ensure!(coset.len() == 4, "coset of size {}", coset.len());
        for c2 in coset {
            ensure!(c2 + ctx.pow(c2, 4) == a, "a={a}: coset member {c2} does not decompose a");
            for outcome in [data.eq23(a, c2), data.factorization(a, c2)] {
                ensure!(outcome.passed(), "{:?}", outcome.counterexample);
            }
        }
        ensure!(char_sum(&g, a) == 0, "a={a}: sum {}", char_sum(&g, a));
        case2 += 1;
    }
    ensure!((case1, case2) == (48, 15), "case sizes {case1}/{case2}");
    Ok(format!("{case1} Case-1 twists, {case2} Case-2 twists with cosets"))
}

fn criterion_9() -> Check {
    let ctx = FieldCtx::new(4, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut maps = Vec::new();
    for i in 0..200 {
        let table: Vec<FieldElem> = if i % 2 == 0 {
            (0..16).map(|_| ctx.random_element(&mut rng)).collect()
        } else {
            let mut v: Vec<FieldElem> = ctx.elements().collect();
            v.shuffle(&mut rng);
            v
        };
        maps.push(FieldMap::from_table(format!("random-{i}"), &ctx, table).unwrap());
    }
    let random = maps.len();
    for (t, k) in towers(12) {
        let ctx = FieldCtx::tower(t, k, None).unwrap();
        let l = build_l_note(&ctx).unwrap();
        let lmap = {
            let l = l.clone();
            let c = ctx.clone();
            FieldMap::from_fn("L-note", &ctx, move |x| l.eval(&c, x))
        };
        maps.push(lmap);
        maps.push(build_g_thm3(&ctx, &l).unwrap());
        maps.push(FieldMap::identity(&ctx));
        // a non-permuting linear map exercises the negative branch
        let tr = relative_trace_poly(&ctx).unwrap();
        let c = ctx.clone();
        maps.push(FieldMap::from_fn("rel-trace", &ctx, move |x| tr.eval(&c, x)));
        if t == 2 {
            maps.push(build_g_thm1(&ctx).unwrap());
        }
    }
    let mut positives = 0;
    for f in &maps {
        let a = is_permutation_exhaustive(f).verdict;
        let b = all_charsums(f);
        ensure!(a == b, "{}: exhaustive {a:?} vs character sums {b:?}", f.name());
        positives += (a == Verdict::Permutation) as usize;
    }
    Ok(format!(
        "{} maps ({random} random, {positives} permutations), 0 discrepancies",
        maps.len()
    ))
}

fn criterion_10() -> Check {
    let ctx = FieldCtx::tower(2, 1, None).unwrap();
    let g = build_g_thm1(&ctx).unwrap();
    let table = g.table();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut pairs: Vec<(u32, u32)> = (0..64u32)
        .flat_map(|x| (1..64u32).map(move |d| (x, d)))
        .collect();
    pairs.shuffle(&mut rng);
    pairs.truncate(500);
    let mut both = 0;
    for &(x, delta) in &pairs {
        let x = FieldElem::from_bits(x);
        let value = table[x.bits() as usize] + FieldElem::from_bits(delta);
        let mutated = g.with_entry(x, value);
        let a = is_permutation_exhaustive(&mutated).verdict;
        let b = all_charsums(&mutated);
        ensure!(
            a == Verdict::NotPermutation || b == Verdict::NotPermutation,
            "mutation g({x}) := {value} still passes"
        );
        both += (a == b) as usize;
    }
    Ok(format!("{} mutations detected ({both} by both criteria)", pairs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("first theorem, k=1: bijection and all sums zero", criterion_1),
        ("first theorem, k=2: bijection and all sums zero", criterion_2),
        ("first theorem, k=3: bijection and sampled sums zero", criterion_3),
        ("generalized theorem with the built-in L", criterion_4),
        ("S + S^(q^k) + S^(q^2k) vanishes", criterion_5),
        ("kernel and image of S_2k", criterion_6),
        ("gcd identity", criterion_7),
        ("case analysis at (t,k)=(2,1)", criterion_8),
        ("exhaustive and character-sum verdicts agree", criterion_9),
        ("single-entry mutations are detected", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
