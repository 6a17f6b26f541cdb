//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Each criterion also has a wall-clock budget.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use sumquot::egt::{
    backtrack_transversal_clique, egt_condition, pair_density, random_dense_graph,
    sample_transversal_clique, tightness_construction, EgtOutcome,
};
use sumquot::oracle::quotient_of_sums_exact;
use sumquot::pipeline::{born_bands, certify_born, certify_full, Mode, PipelineConfig};
use sumquot::ratcore::rat;
use sumquot::{RatSet, SlopeDecomposition};
use sumquot_cli::commands::verify_cluster_families;
use sumquot_cli::corpus::{ap, gp, random, random_lprime_instance};

type Check = Result<String, String>;

/// Id, title, budget in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Seeded mix of progressions and random sets with sizes in `lo..=hi`.
fn corpus(count: u64, lo: usize, hi: usize) -> Vec<(String, RatSet)> {
    let span = (hi - lo + 1) as u64;
    (0..count)
        .map(|s| {
            let n = lo + ((s * 7 + s / 3) % span) as usize;
            let (name, set) = match s % 3 {
                0 => (
                    format!("ap(start={}, step={}, n={n})", 1 + s % 5, 1 + s % 3),
                    ap(&rat(1 + (s % 5) as i64, 1), &rat(1 + (s % 3) as i64, 1), n),
                ),
                1 => {
                    let ratio =
                        [rat(2, 1), rat(3, 2), rat(3, 1), rat(5, 4)][(s / 3 % 4) as usize].clone();
                    (
                        format!("gp(start=1, ratio={ratio}, n={n})"),
                        gp(&rat(1, 1), &ratio, n),
                    )
                }
                _ => (
                    format!("random(n={n}, range={}, seed={s})", 4 * n),
                    random(n, 4 * n, s),
                ),
            };
            (name, set.expect("valid corpus parameters"))
        })
        .collect()
}

fn sharpness() -> Check {
    let q = quotient_of_sums_exact(&RatSet::from_ints([1, 2, 3])).len();
    ensure(q == 17, || format!("|(A+A)/(A+A)| = {q}, expected 17"))?;
    Ok("{1,2,3} gives 17".into())
}

fn antal_suite() -> Check {
    let sets = corpus(60, 2, 30);
    for (name, a) in &sets {
        let n = a.len();
        let q = quotient_of_sums_exact(a).len();
        ensure(q >= 2 * n * n - 1, || format!("{name}: {q} < 2n^2 - 1"))?;
    }
    Ok(format!("{} sets, n in 2..=30", sets.len()))
}

fn born_suite() -> Check {
    let sets = corpus(45, 2, 40);
    for (name, a) in &sets {
        let n = a.len();
        let w = certify_born(a)
            .map_err(|e| format!("{name}: {e}"))?
            .witnesses;
        ensure(w.len() == n * n - 1, || {
            format!("{name}: {} witnesses", w.len())
        })?;
        ensure(w.is_subset(&quotient_of_sums_exact(a)), || {
            format!("{name}: witness outside the quotient set")
        })?;
        let d = SlopeDecomposition::new(a).unwrap();
        let bands = born_bands(&d);
        let listed: usize = bands.iter().map(|b| b.witnesses.len()).sum();
        ensure(listed == w.len(), || {
            format!("{name}: repeated witnesses across bands")
        })?;
        for b in &bands {
            ensure(
                b.witnesses.iter().all(|z| *z > b.lower && *z <= b.upper),
                || format!("{name}: witness outside ({}, {}]", b.lower, b.upper),
            )?;
        }
    }
    Ok(format!("{} sets, n in 2..=40", sets.len()))
}

fn ap_bracket() -> Check {
    let mut sizes = Vec::new();
    for n in [8usize, 16, 32, 64] {
        let q = quotient_of_sums_exact(&RatSet::interval(n as u64)).len();
        let (lo, hi) = (2 * n * n - 1, (2 * n - 1) * (2 * n - 1));
        ensure(lo <= q && q <= hi, || {
            format!("N={n}: {q} outside [{lo}, {hi}]")
        })?;
        sizes.push(format!("{n}:{q}"));
    }
    Ok(format!("sizes {}", sizes.join(" ")))
}

fn curve_incidences() -> Check {
    let (reports, _) =
        verify_cluster_families(&RatSet::interval(16), 8, 2).map_err(|e| e.to_string())?;
    ensure(!reports.is_empty(), || "no L families were built".into())?;
    for ps in &reports {
        ensure(ps.bound == 1 && ps.passed(), || {
            format!("L family failed: {ps:?}")
        })?;
    }
    let mut grid_points = 0;
    for seed in 0..200 {
        let inst = random_lprime_instance(seed, 12).map_err(|e| e.to_string())?;
        let ps = sumquot::curves::verify_ps_conditions(&inst.family, &inst.grid)
            .map_err(|e| e.to_string())?;
        ensure(ps.bound == 2 && ps.passed(), || {
            format!("L' instance {seed} failed: {ps:?}")
        })?;
        grid_points = grid_points.max(ps.grid_points);
    }
    Ok(format!(
        "{} L families, 200 L' instances (largest grid {grid_points} points)",
        reports.len()
    ))
}

fn egt_suite() -> Check {
    for (r, k) in [(2, 1), (3, 4), (4, 6), (5, 8)] {
        let g = tightness_construction(r, k).map_err(|e| e.to_string())?;
        let reduced = (k * k - k * k / (r - 1)) as u64;
        for j in 1..r {
            let d = pair_density(&g, 0, j).unwrap();
            ensure(d == reduced, || {
                format!("r={r} k={k}: density {d} on (0,{j}), expected {reduced}")
            })?;
        }
        ensure(backtrack_transversal_clique(&g).is_none(), || {
            format!("r={r} k={k}: clique found")
        })?;
    }
    let mut max_tries = 0;
    for seed in 0..50u64 {
        let (r, k) = (2 + (seed % 4) as usize, 1 + (seed * 5 % 8) as usize);
        let g = random_dense_graph(r, k, seed).map_err(|e| e.to_string())?;
        ensure(egt_condition(&g).unwrap() == EgtOutcome::Satisfied, || {
            format!("seed {seed}: below threshold")
        })?;
        let c = backtrack_transversal_clique(&g);
        ensure(c.is_some_and(|c| c.verify(&g)), || {
            format!("seed {seed}: backtracking found nothing")
        })?;
        let s = sample_transversal_clique(&g, seed, 10_000);
        ensure(s.certificate.is_some_and(|c| c.verify(&g)), || {
            format!("seed {seed}: sampler failed")
        })?;
        max_tries = max_tries.max(s.tries);
    }
    Ok(format!(
        "4 tightness graphs, 50 dense graphs, sampler needed at most {max_tries} tries"
    ))
}

fn pipeline_soundness() -> Check {
    let sets = corpus(20, 10, 24);
    let (mut full, mut clusters, mut clique) = (0, 0, 0);
    for (name, a) in &sets {
        let oracle = quotient_of_sums_exact(a);
        for (m, n) in [(2, 1), (4, 1), (8, 2)] {
            let config = PipelineConfig {
                override_m: Some(m),
                override_n: Some(n),
                ..PipelineConfig::default()
            };
            let tag = format!("{name} M={m} N={n}");
            let r = certify_full(a, &config).map_err(|e| format!("{tag}: {e}"))?;
            ensure(r.witnesses.is_subset(&oracle), || {
                format!("{tag}: witness outside the quotient set")
            })?;
            if r.mode != Mode::FullPipeline {
                continue;
            }
            full += 1;
            for w in r.per_cluster.windows(2) {
                ensure(w[0].slope_max < w[1].slope_min, || {
                    format!("{tag}: overlapping bands")
                })?;
            }
            for acc in &r.per_cluster {
                clusters += 1;
                ensure(acc.accounting_holds(), || {
                    format!("{tag}: accounting fails in cluster {}", acc.index)
                })?;
                if acc.method.is_clique() {
                    clique += 1;
                    ensure(acc.cross_errors_ok && acc.same_errors_ok, || {
                        format!("{tag}: error bound fails in cluster {}", acc.index)
                    })?;
                }
            }
        }
    }
    ensure(full > 0, || "no run reached the full pipeline".into())?;
    Ok(format!(
        "{full}/60 full-pipeline runs, {clusters} clusters, {clique} in clique mode"
    ))
}

fn determinism() -> Check {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let input = dir.join("acceptance_input.txt");
    std::fs::write(&input, "1\n2\n3\n5\n8\n13\n21\n34\n4/3\n7/2\n").map_err(|e| e.to_string())?;
    let input = input.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["oracle", "--input", input],
        vec!["born", "--input", input, "--format", "csv"],
        vec!["certify", "--input", input],
        vec![
            "certify",
            "--input",
            input,
            "--override-M",
            "4",
            "--override-N",
            "1",
            "--seed",
            "5",
        ],
        vec![
            "curves-verify",
            "--input",
            input,
            "--override-M",
            "2",
            "--override-N",
            "2",
            "--random-lprime",
            "5",
        ],
        vec!["egt", "--tightness", "r=4", "k=6", "--format", "text"],
        vec!["egt", "--random", "r=5", "k=8", "--seed", "3"],
        vec!["corpus", "random", "--n", "12", "--seed", "9"],
    ];
    for args in &runs {
        let once = || {
            Command::new(env!("CARGO_BIN_EXE_sumquot"))
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (once()?, once()?);
        ensure(a.status.success(), || {
            format!(
                "{args:?} exited with {}: {}",
                a.status,
                String::from_utf8_lossy(&a.stderr)
            )
        })?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || {
            format!("{args:?}: outputs differ")
        })?;
    }
    Ok(format!(
        "{} commands byte-identical across two runs",
        runs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "sharpness at {1,2,3}", 1, sharpness),
        (2, "2n^2 - 1 lower bound over the corpus", 60, antal_suite),
        (3, "neighbour-line certifier", 30, born_suite),
        (4, "AP bracket up to N = 64", 120, ap_bracket),
        (
            5,
            "incidence conditions for both curve families",
            120,
            curve_incidences,
        ),
        (6, "transversal clique suite", 60, egt_suite),
        (
            7,
            "pipeline soundness with overrides",
            120,
            pipeline_soundness,
        ),
        (8, "byte-identical reports", 120, determinism),
    ];
    let mut failed = 0;
    for (id, title, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = result.and_then(|detail| {
            if took > Duration::from_secs(budget) {
                Err(format!("{detail}; over the {budget} s budget"))
            } else {
                Ok(detail)
            }
        });
        let ms = took.as_millis();
        match result {
            Ok(detail) => println!("criterion {id} PASS {title}: {detail} ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL {title}: {why} ({ms} ms)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
