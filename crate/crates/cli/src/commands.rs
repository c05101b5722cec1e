use anyhow::{bail, Context, Result};
use ppverify_core::pp_test::{char_sum, is_permutation_exhaustive, pp_verdict_charsum};
use ppverify_core::proof_checks::{verify_thm1, verify_thm3, VerifyOptions};
use ppverify_core::report::CSV_HEADER;
use ppverify_core::{search_l_candidates, PPVerdict, Verdict, VerificationReport, Witness};

use crate::config::{self, FieldArgs, Format, PpMethod};
use crate::output::emit;
use crate::{Cli, Command, Theorem};

/// Candidate search is limited to fields with an eager map table.
const SEARCH_MAX_DEGREE: u32 = ppverify_core::map::TABLE_MAX_DEGREE;

const SMOKE_TOWERS: [(u32, u32); 4] = [(1, 1), (1, 2), (2, 1), (1, 3)];

pub fn run(cli: Cli) -> Result<u8> {
    let overrides = config::load_overrides(cli.modulus_file.as_deref())?;
    let command = cli.command.unwrap_or(Command::Verify {
        theorem: Theorem::Smoke,
        t: None,
        k: "1".into(),
        l: "builtin:L-note".into(),
        format: Format::Text,
        output: None,
        seed: ppverify_core::DEFAULT_SEED,
        samples: 128,
        skip_on_hypothesis_failure: false,
    });
    match command {
        Command::Verify {
            theorem,
            t,
            k,
            l,
            format,
            output,
            seed,
            samples,
            skip_on_hypothesis_failure,
        } => {
            let opts = VerifyOptions {
                seed,
                samples,
                skip_conclusion_on_hypothesis_failure: skip_on_hypothesis_failure,
            };
            let jobs: Vec<(Theorem, u32, u32)> = match theorem {
                Theorem::Smoke => [(2, 1), (2, 2)]
                    .into_iter()
                    .map(|(t, k)| (Theorem::Thm1, t, k))
                    .chain(SMOKE_TOWERS.iter().map(|&(t, k)| (Theorem::Thm3, t, k)))
                    .collect(),
                Theorem::Thm1 => {
                    let towers = config::expand_towers(t.as_deref().unwrap_or("2"), &k)?;
                    if let Some(&(t, _)) = towers.iter().find(|(t, _)| *t != 2) {
                        bail!("thm1 is stated for q = 4 (t = 2), got t = {t}; use thm3 instead");
                    }
                    towers.into_iter().map(|(t, k)| (Theorem::Thm1, t, k)).collect()
                }
                Theorem::Thm3 => config::expand_towers(t.as_deref().unwrap_or("1"), &k)?
                    .into_iter()
                    .map(|(t, k)| (Theorem::Thm3, t, k))
                    .collect(),
            };
            // resolve every context and L up front so config errors exit 2
            let mut prepared = Vec::new();
            for (th, t, k) in jobs {
                let ctx = overrides.tower_ctx(t, k)?;
                let lp = match th {
                    Theorem::Thm3 => Some(config::parse_linearized(&ctx, &l)?),
                    _ => None,
                };
                prepared.push((ctx, lp));
            }
            let mut reports = Vec::new();
            for (ctx, lp) in prepared {
                let report = match lp {
                    Some(lp) => verify_thm3(&ctx, &lp, &opts)?,
                    None => verify_thm1(&ctx, &opts)?,
                };
                if format == Format::Text {
                    for line in report.text_lines() {
                        println!("{line}");
                    }
                    if report.hypothesis_failed() {
                        println!("  note: a hypothesis of the theorem failed; conclusions are not implied");
                    }
                }
                reports.push(report);
            }
            write_reports(&reports, format, output.as_deref())?;
            Ok(if reports.iter().all(|r| r.overall) { 0 } else { 1 })
        }
        Command::Pptest {
            field,
            map,
            method,
            mode,
            override_gate,
            format,
        } => {
            let f = config::resolve_map(&map, FieldArgs::from(field), &overrides)?;
            let mode = config::parse_mode(&mode, override_gate)?;
            let mut verdicts: Vec<PPVerdict> = Vec::new();
            if matches!(method, PpMethod::Exhaustive | PpMethod::Both) {
                verdicts.push(is_permutation_exhaustive(&f));
            }
            if matches!(method, PpMethod::Charsum | PpMethod::Both) {
                verdicts.push(pp_verdict_charsum(&f, mode)?);
            }
            let agree = verdicts
                .windows(2)
                .all(|w| w[0].verdict.is_positive() == w[1].verdict.is_positive());
            match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "map": f.name(),
                        "m": f.ctx().degree(),
                        "modulus_hex": f.ctx().modulus().to_hex(),
                        "verdicts": verdicts,
                        "agree": agree,
                    });
                    println!("{}", serde_json::to_string_pretty(&v)?);
                }
                _ => {
                    println!("map: {} (m = {})", f.name(), f.ctx().degree());
                    for v in &verdicts {
                        println!("{}", verdict_line(v));
                    }
                    if verdicts.len() > 1 {
                        println!("methods agree: {agree}");
                    }
                }
            }
            let all_positive = verdicts.iter().all(|v| v.verdict.is_positive());
            Ok(if agree && all_positive { 0 } else { 1 })
        }
        Command::Charsum { field, map, a } => {
            let f = config::resolve_map(&map, FieldArgs::from(field), &overrides)?;
            let bits = u64::from_str_radix(a.trim_start_matches("0x"), 16)
                .with_context(|| format!("bad twist {a:?}"))?;
            let a = f.ctx().element(bits)?;
            println!("{}", char_sum(&f, a));
            Ok(0)
        }
        Command::SearchL {
            t,
            k,
            budget,
            format,
            output,
        } => {
            let ctx = overrides.tower_ctx(t, k)?;
            if ctx.degree() > SEARCH_MAX_DEGREE {
                bail!(
                    "search-L is limited to m <= {SEARCH_MAX_DEGREE} (got m = {})",
                    ctx.degree()
                );
            }
            let found = search_l_candidates(&ctx, budget)?;
            let body = match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "t": t,
                        "k": k,
                        "m": ctx.degree(),
                        "modulus_hex": ctx.modulus().to_hex(),
                        "budget": budget,
                        "family": ppverify_core::constructions::SEARCH_FAMILY,
                        "candidates": found,
                    });
                    serde_json::to_string_pretty(&v)? + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("index,L,pp_verified\n");
                    for c in &found {
                        s.push_str(&format!(
                            "{},\"{}\",{}\n",
                            c.index,
                            c.poly.to_text(),
                            c.pp.verdict == Verdict::Permutation
                        ));
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!(
                        "# family: {}\n# examined {} candidates, accepted {}\n",
                        ppverify_core::constructions::SEARCH_FAMILY,
                        budget,
                        found.len()
                    );
                    for c in &found {
                        let status = if c.pp.verdict == Verdict::Permutation {
                            "PP-verified"
                        } else {
                            "NOT-PP"
                        };
                        s.push_str(&format!("{:>5} {} {status}\n", c.index, c.poly.to_text()));
                    }
                    s
                }
            };
            emit(&body, output.as_deref())?;
            Ok(if found.iter().all(|c| c.pp.verdict == Verdict::Permutation) {
                0
            } else {
                1
            })
        }
        Command::FieldInfo { field } => {
            let ctx = FieldArgs::from(field).ctx(&overrides)?;
            println!("m = {}", ctx.degree());
            println!("order = {}", ctx.order());
            println!("modulus = {} (hex {})", ctx.modulus(), ctx.modulus().to_hex());
            if let Some(tw) = ctx.tower_params() {
                println!("q = {} (t = {}), k = {}", tw.q(), tw.t, tw.k);
                println!("subfield F_(q^k) has degree {} over F_2", tw.subfield_degree());
            }
            Ok(0)
        }
        Command::Export { field, map, output } => {
            let f = config::resolve_map(&map, FieldArgs::from(field), &overrides)?;
            emit(&f.to_hex_table(), output.as_deref())?;
            Ok(0)
        }
    }
}

fn verdict_line(v: &PPVerdict) -> String {
    let verdict = match v.verdict {
        Verdict::Permutation => "permutation",
        Verdict::NotPermutation => "not-permutation",
        Verdict::ProbablePermutation => "probable-permutation",
    };
    let method = match v.method {
        ppverify_core::Method::Exhaustive => "exhaustive".to_string(),
        ppverify_core::Method::CharSumAll => "charsum(all)".to_string(),
        ppverify_core::Method::CharSumSample { n, seed } => format!("charsum(sample:{n}:{seed})"),
    };
    let witness = match v.witness {
        None => String::new(),
        Some(Witness::Collision { first, second, image }) => {
            format!(" witness: f(0x{first:x}) = f(0x{second:x}) = 0x{image:x}")
        }
        Some(Witness::Twist { a, sum }) => format!(" witness: a=0x{a:x} sum={sum}"),
    };
    format!("{method}: {verdict} (checks = {}){witness}", v.checks)
}

fn write_reports(
    reports: &[VerificationReport],
    format: Format,
    output: Option<&std::path::Path>,
) -> Result<()> {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(reports)? + "\n",
        Format::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for r in reports {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
        Format::Text => match output {
            Some(_) => reports
                .iter()
                .flat_map(|r| r.text_lines())
                .map(|l| l + "\n")
                .collect(),
            None => return Ok(()),
        },
    };
    emit(&body, output)
}
