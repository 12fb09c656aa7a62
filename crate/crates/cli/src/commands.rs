use std::io::Write;

use anyhow::{bail, Context, Result};
use permstat::conjectures::{gamma_jump_demo, run_conjecture, ConjectureRun};
use permstat::distribution::{compute, CacheEntry, DistCache};
use permstat::transforms::{build_theta, foata_inverse, foata_trace};
use permstat::verify::{run_suite, Suite};
use permstat::{Distribution, Method, Permutation, Poly, SetSpec, StatId};
use serde_json::json;

use crate::config::{Config, OutputFormat};

fn parse_perm(s: &str) -> Result<Permutation> {
    s.parse().with_context(|| format!("bad permutation {s:?}"))
}

fn parse_spec(s: &str) -> Result<SetSpec> {
    s.parse().with_context(|| format!("bad set spec {s:?}"))
}

fn json_line(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

pub fn stat(out: &mut dyn Write, perm: &str, stat: &str) -> Result<u8> {
    let sigma = parse_perm(perm)?;
    let stat: StatId = stat.parse().with_context(|| format!("bad statistic {stat:?}"))?;
    writeln!(out, "{}", stat.eval(&sigma))?;
    Ok(0)
}

fn one_method(cfg: &Config, poly: Poly, x: &SetSpec, y: &SetSpec, n: usize, m: Method) -> permstat::Result<Distribution> {
    let cap = cfg.enumeration_cap;
    match &cfg.cache_dir {
        Some(dir) => DistCache::new(dir).get_or_compute(&poly.stat(x, y), n, m, || compute(poly, x, y, n, m, cap)),
        None => compute(poly, x, y, n, m, cap),
    }
}

fn csv_row(out: &mut dyn Write, m: Method, d: &Distribution) -> Result<()> {
    let cells: Vec<String> = d.trimmed().iter().map(ToString::to_string).collect();
    writeln!(out, "{m},{}", cells.join(","))?;
    Ok(())
}

pub fn dist(out: &mut dyn Write, cfg: &Config, poly: &str, x: &str, y: &str, n: usize, method: &str) -> Result<u8> {
    let poly: Poly = poly.parse()?;
    let (x, y) = (parse_spec(x)?, parse_spec(y)?);
    if method != "all" {
        let m: Method = method.parse()?;
        let d = one_method(cfg, poly, &x, &y, n, m)?;
        match cfg.output_format {
            OutputFormat::Csv => csv_row(out, m, &d)?,
            OutputFormat::Json => json_line(out, &CacheEntry::new(&d, m))?,
        }
        return Ok(0);
    }

    let mut rows = Vec::new();
    let mut unavailable = Vec::new();
    for m in Method::ALL {
        match one_method(cfg, poly, &x, &y, n, m) {
            Ok(d) => rows.push((m, d)),
            Err(e @ (permstat::Error::NoMethod { .. } | permstat::Error::Hypothesis(_))) => {
                unavailable.push((m, e.to_string()))
            }
            Err(e @ permstat::Error::EnumerationCap { .. }) => unavailable.push((m, e.to_string())),
            Err(e) => return Err(e.into()),
        }
    }
    if rows.is_empty() {
        bail!("no method available for {poly} at n={n}");
    }
    let agree = rows.iter().all(|(_, d)| d.same_counts(&rows[0].1));
    let verdict = if agree { "agree" } else { "disagree" };
    match cfg.output_format {
        OutputFormat::Csv => {
            for (m, d) in &rows {
                csv_row(out, *m, d)?;
            }
            for (m, why) in &unavailable {
                eprintln!("{m}: {why}");
            }
            writeln!(out, "verdict,{verdict}")?;
        }
        OutputFormat::Json => {
            let results: Vec<CacheEntry> = rows.iter().map(|(m, d)| CacheEntry::new(d, *m)).collect();
            let skipped: Vec<_> = unavailable.iter().map(|(m, why)| json!({"method": m.name(), "reason": why})).collect();
            json_line(out, &json!({"results": results, "unavailable": skipped, "verdict": verdict}))?;
        }
    }
    Ok(if agree { 0 } else { 1 })
}

pub fn verify(out: &mut dyn Write, cfg: &Config, suite: &str, max_n: usize) -> Result<u8> {
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, max_n, cfg.enumeration_cap)?;
    match cfg.output_format {
        OutputFormat::Json => json_line(out, &report)?,
        OutputFormat::Csv => {
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    writeln!(out, "{tag} [{}] {}", c.suite, c.name)?;
                } else {
                    writeln!(out, "{tag} [{}] {}: {}", c.suite, c.name, c.detail)?;
                }
            }
            let failed = report.failures().count();
            writeln!(out, "{suite}: {} checks, {failed} failed", report.checks.len())?;
            if matches!(suite, Suite::Conjectures | Suite::All) && !report.counterexample {
                writeln!(out, "conjectures verified up to {max_n}")?;
            }
        }
    }
    Ok(report.exit_code() as u8)
}

pub fn foata(out: &mut dyn Write, cfg: &Config, perm: &str, invert: bool, trace: bool) -> Result<u8> {
    let w = parse_perm(perm)?;
    let (image, t) = if invert {
        let pre = foata_inverse(&w);
        let t = foata_trace(&pre);
        (pre, t)
    } else {
        let t = foata_trace(&w);
        (t.output.clone(), t)
    };
    match cfg.output_format {
        OutputFormat::Json => {
            let mut v = json!({"input": w.to_string(), "output": image.to_string()});
            if trace {
                v["cycles"] = json!(t.cycles.to_string());
                v["blocks"] = json!(t.blocks);
            }
            json_line(out, &v)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "{image}")?;
            if trace {
                writeln!(out, "cycles {}", t.cycles)?;
                let blocks: Vec<String> = t.blocks.iter().map(|b| permstat::permutation::format_entries(b)).collect();
                writeln!(out, "blocks {}", blocks.join("|"))?;
            }
        }
    }
    Ok(0)
}

pub fn theta(out: &mut dyn Write, cfg: &Config, n: usize, x: &str, y: &str) -> Result<u8> {
    let (x, y) = (parse_spec(x)?, parse_spec(y)?);
    let table = build_theta(n, &x, &y, cfg.enumeration_cap)
        .context("the adjacency/value bijection requires disjoint X and Y")?;
    let verified = table.verify();
    match cfg.output_format {
        OutputFormat::Csv => {
            write!(out, "{}", table.to_csv())?;
            let bad = table.mismatches().len();
            eprintln!("{} rows, {}", table.len(), if verified { "all verified".to_string() } else { format!("{bad} mismatched") });
        }
        OutputFormat::Json => {
            let rows: Vec<_> = table
                .forward
                .iter()
                .map(|(s, t)| {
                    let (a, v) = (table.source_stat.eval(s), table.target_stat.eval(t));
                    json!({"sigma": s, "image": t, "adj": a, "val": v, "ok": a == v})
                })
                .collect();
            json_line(out, &json!({"n": n, "bijective": table.is_bijective(), "verified": verified, "rows": rows}))?;
        }
    }
    Ok(if verified { 0 } else { 1 })
}

pub fn gamma_demo(out: &mut dyn Write, cfg: &Config, n: usize, x: &str, y: &str) -> Result<u8> {
    let (x, y) = (parse_spec(x)?, parse_spec(y)?);
    let jumps = gamma_jump_demo(n, &x, &y, cfg.enumeration_cap)?;
    match cfg.output_format {
        OutputFormat::Json => json_line(out, &jumps)?,
        OutputFormat::Csv => {
            for j in &jumps {
                writeln!(out, "{},{},{},{},{}", j.sigma, j.locus, j.image, j.before, j.after)?;
            }
            if jumps.is_empty() {
                eprintln!("no insertion into S_{n} raises gamma by 2 ({} is not in both sets)", n + 1);
            }
        }
    }
    Ok(0)
}

fn print_run(out: &mut dyn Write, run: &ConjectureRun) -> Result<()> {
    for r in &run.reports {
        match &r.witness {
            None => writeln!(out, "conjecture {} n={}: holds ({} tuples)", r.conjecture, r.n, r.table_sizes.0)?,
            Some(w) => writeln!(
                out,
                "conjecture {} n={}: COUNTEREXAMPLE tuple {:?} occurs {} times, swapped {} times",
                r.conjecture, r.n, w.tuple, w.left, w.right
            )?,
        }
    }
    Ok(())
}

pub fn conjectures(out: &mut dyn Write, cfg: &Config, max_n: usize, which: &str) -> Result<u8> {
    let which: &[u8] = match which {
        "1" => &[1],
        "2" => &[2],
        "both" => &[1, 2],
        other => bail!("--which must be 1, 2 or both, got {other:?}"),
    };
    let mut found = false;
    let mut runs = Vec::new();
    for &c in which {
        let run = run_conjecture(c, 1..=max_n, cfg.enumeration_cap)?;
        if run.reports.iter().any(|r| r.direct_check != r.holds) {
            bail!("conjecture {c}: the two tabulations disagree");
        }
        found |= !run.holds();
        runs.push(run);
    }
    match cfg.output_format {
        OutputFormat::Json => json_line(out, &runs)?,
        OutputFormat::Csv => {
            for run in &runs {
                print_run(out, run)?;
            }
            if !found {
                writeln!(out, "verified up to {max_n}")?;
            }
        }
    }
    Ok(if found { 2 } else { 0 })
}
