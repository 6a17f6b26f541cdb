//! Command dispatch. Each command fills a [`Report`] and lists any failed
//! soundness check; a nonempty list maps to exit code 2.

use std::io::Read;
use std::time::Instant;

use sumquot::curves::{family_l, verify_ps_conditions, PointGrid, PsReport};
use sumquot::egt::{
    backtrack_transversal_clique, egt_condition, egt_threshold, pair_density, random_dense_graph,
    sample_transversal_clique, tightness_construction, EgtOutcome,
};
use sumquot::intmath::decimal_string;
use sumquot::oracle::{bound_report, quotient_of_sums_exact};
use sumquot::pipeline::{
    build_clusters, certify_born, certify_full, dyadic_select, CertifiedBound, Constants,
    PipelineConfig,
};
use sumquot::{RatSet, SlopeDecomposition};

use crate::corpus::{self, random_lprime_instance};
use crate::input::{canonical_lines, input_digest, parse_input};
use crate::report::{Condition, Report};
use crate::{CliError, Command, CorpusKind, GlobalArgs};

/// Default cluster shape for `curves-verify` when no override is given.
const CURVES_M: usize = 8;
const CURVES_N: usize = 2;

#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    /// Failed soundness checks; empty on success.
    pub failures: Vec<String>,
}

impl Outcome {
    fn new(report: Report) -> Self {
        Outcome {
            report,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.failures.is_empty() {
            0
        } else {
            2
        }
    }
}

fn needs_input(command: &Command) -> bool {
    matches!(
        command,
        Command::Oracle | Command::Born | Command::Certify | Command::CurvesVerify { .. }
    )
}

fn read_input(global: &GlobalArgs) -> Result<RatSet, CliError> {
    let text = match &global.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            s
        }
    };
    parse_input(&text)
}

/// Run a parsed command line, reading the input set if the command needs one.
pub fn run(cli: &crate::Cli) -> Result<Outcome, CliError> {
    let set = if needs_input(&cli.command) {
        read_input(&cli.global)?
    } else {
        RatSet::new()
    };
    run_on(cli, &set)
}

/// Run a parsed command line on an already parsed set.
pub fn run_on(cli: &crate::Cli, set: &RatSet) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let g = &cli.global;
    let mut out = match &cli.command {
        Command::Oracle => oracle(set, g)?,
        Command::Born => born(set, g)?,
        Command::Certify => certify(set, g)?,
        Command::CurvesVerify {
            random_lprime,
            grid_side,
        } => curves_verify(set, g, *random_lprime, *grid_side)?,
        Command::Egt {
            tightness,
            random,
            max_tries,
            params,
        } => egt(*tightness, *random, *max_tries, params, g)?,
        Command::Corpus { kind, write } => corpus_cmd(kind, write.as_deref(), g)?,
    };
    if g.timing {
        out.report.timing_ms = start.elapsed().as_millis() as u64;
    }
    Ok(out)
}

fn with_input(command: &str, set: &RatSet) -> Report {
    let mut r = Report::new(command);
    r.input_digest = Some(input_digest(set));
    r.n = Some(set.len() as u64);
    r
}

fn cap_check(set: &RatSet, g: &GlobalArgs) -> Result<(), CliError> {
    if set.len() > g.max_n {
        return Err(CliError::Input(format!(
            "n = {} exceeds --max-n {}",
            set.len(),
            g.max_n
        )));
    }
    Ok(())
}

fn oracle(set: &RatSet, g: &GlobalArgs) -> Result<Outcome, CliError> {
    cap_check(set, g)?;
    let q = bound_report(set)?;
    let mut r = with_input("oracle", set);
    r.ratio_set_size = Some(q.ratio_set_size as u64);
    r.oracle_size = Some(q.quotient_size as u64);
    r.details.push("main1_ratio", q.main1_ratio.clone());
    r.details.push("antal_ok", q.antal_lhs_ok);
    let mut out = Outcome::new(r);
    out.check(q.antal_lhs_ok, || {
        format!("oracle size {} is below 2n^2 - 1", q.quotient_size)
    });
    Ok(out)
}

/// Compare a witness set with the oracle when the set is small enough.
fn against_oracle(out: &mut Outcome, set: &RatSet, witnesses: &RatSet, g: &GlobalArgs) {
    if set.len() > g.max_n {
        return;
    }
    let oracle = quotient_of_sums_exact(set);
    out.report.oracle_size = Some(oracle.len() as u64);
    out.check(witnesses.is_subset(&oracle), || {
        "witnesses are not all quotients of sums".into()
    });
}

fn born(set: &RatSet, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let b = certify_born(set)?;
    let mut r = with_input("born", set);
    r.born_count = Some(b.witnesses.len() as u64);
    r.mode = Some(b.mode.as_str().into());
    let mut out = Outcome::new(r);
    let n = set.len();
    let expected = if n < 2 { 0 } else { n * n - 1 };
    out.check(b.witnesses.len() == expected, || {
        format!(
            "born count {} differs from n^2 - 1 = {expected}",
            b.witnesses.len()
        )
    });
    against_oracle(&mut out, set, &b.witnesses, g);
    Ok(out)
}

fn constants(g: &GlobalArgs) -> Constants {
    let d = Constants::default();
    Constants {
        c_m: g.c_m.clone().unwrap_or(d.c_m),
        c_n: g.c_n.clone().unwrap_or(d.c_n),
        big_c: g.big_c.clone(),
        big_c_prime: g.big_c_prime.clone(),
    }
}

pub fn pipeline_config(g: &GlobalArgs) -> PipelineConfig {
    PipelineConfig {
        constants: constants(g),
        override_m: g.override_m,
        override_n: g.override_n,
        seed: g.seed,
        ..PipelineConfig::default()
    }
}

fn describe_clusters(out: &mut Outcome, bound: &CertifiedBound) {
    for acc in &bound.per_cluster {
        let key = |field: &str| format!("cluster.{}.{field}", acc.index);
        let d = &mut out.report.details;
        d.push(key("slope_min"), acc.slope_min.to_string());
        d.push(key("slope_max"), acc.slope_max.to_string());
        d.push(key("method"), acc.method.as_str());
        d.push(key("p_size"), acc.p_size as u64);
        d.push(key("t_pp_size"), acc.t_pp_size as u64);
        d.push(key("witnesses"), acc.witnesses.len() as u64);
        d.push(key("sum_sizes"), acc.sum_sizes);
        d.push(key("main_term"), acc.main_term);
        d.push(key("error_sum"), acc.error_sum);
        d.push(key("max_cross_error"), acc.max_cross_error as u64);
        d.push(key("max_same_error"), acc.max_same_error as u64);
        d.push(key("accounting_ok"), acc.accounting_holds());
        out.check(acc.accounting_holds(), || {
            format!("cluster {}: accounting inequality fails", acc.index)
        });
        out.check(
            !acc.method.is_clique() || (acc.cross_errors_ok && acc.same_errors_ok),
            || {
                format!(
                    "cluster {}: clique representatives exceed the error bound",
                    acc.index
                )
            },
        );
    }
}

fn certify(set: &RatSet, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let born = certify_born(set)?;
    let bound = certify_full(set, &pipeline_config(g))?;
    let mut r = with_input("certify", set);
    r.born_count = Some(born.witnesses.len() as u64);
    r.pipeline_count = Some(bound.witnesses.len() as u64);
    r.mode = Some(bound.mode.as_str().into());
    if let Some(sel) = &bound.selection {
        r.tau = Some(sel.tau);
        r.s_size = Some(sel.slopes.len() as u64);
        r.m = Some(bound.m as u64);
        r.big_n = Some(bound.n as u64);
        r.details.push("bucket_index", sel.bucket_index);
        r.details.push("bucket_mass", sel.mass);
    }
    r.cluster_count = Some(bound.cluster_count as u64);
    r.regime_ok = Some(bound.regime_ok);
    r.conditions = bound
        .conditions
        .iter()
        .map(|c| Condition {
            id: c.id.into(),
            status: c.status.as_str().into(),
        })
        .collect();
    if let Some(reason) = &bound.fallback_reason {
        r.details.push("fallback_reason", reason.clone());
    }
    let mut out = Outcome::new(r);
    if bound.mode == sumquot::pipeline::Mode::BornFallback {
        out.check(bound.witnesses == born.witnesses, || {
            "fallback witnesses differ from the neighbour-line certificate".into()
        });
    }
    describe_clusters(&mut out, &bound);
    against_oracle(&mut out, set, &bound.witnesses, g);
    Ok(out)
}

#[derive(Default)]
struct PsTally {
    families: u64,
    curves: u64,
    max_shared: usize,
    max_through: usize,
    violations: u64,
}

impl PsTally {
    fn add(&mut self, ps: &PsReport) {
        self.families += 1;
        self.curves += ps.curves as u64;
        self.max_shared = self.max_shared.max(ps.max_shared_points);
        self.max_through = self.max_through.max(ps.max_curves_through_pair);
        self.violations += ps.violation_count as u64;
    }

    fn write(&self, prefix: &str, r: &mut Report) {
        r.details.push(format!("{prefix}.families"), self.families);
        r.details.push(format!("{prefix}.curves"), self.curves);
        r.details.push(
            format!("{prefix}.max_shared_points"),
            self.max_shared as u64,
        );
        r.details.push(
            format!("{prefix}.max_curves_through_pair"),
            self.max_through as u64,
        );
        r.details
            .push(format!("{prefix}.violations"), self.violations);
    }
}

/// Family `𝓛` through every point on the `T` lines of every cluster, checked
/// on `A_λ1 × A_λ2` for each ordered pair of distinct `U` slopes.
pub fn verify_cluster_families(
    set: &RatSet,
    m: usize,
    n: usize,
) -> Result<(Vec<PsReport>, Report), CliError> {
    let d = SlopeDecomposition::new(set)?;
    let sel = dyadic_select(&d)?;
    let plan = build_clusters(&sel, m, n)?;
    let mut reports = Vec::new();
    for c in &plan.clusters {
        let points: Vec<_> = c.t.iter().flat_map(|l| d.points(l)).collect();
        for l1 in &c.u {
            for l2 in c.u.iter().filter(|l2| *l2 != l1) {
                let family = family_l(&points, l1, l2)?;
                let xs = d.line(l1).expect("selected slope").clone();
                let ys = d.line(l2).expect("selected slope").clone();
                reports.push(verify_ps_conditions(&family, &PointGrid::new(xs, ys)?)?);
            }
        }
    }
    let mut r = with_input("curves-verify", set);
    r.tau = Some(sel.tau);
    r.s_size = Some(sel.slopes.len() as u64);
    r.m = Some(m as u64);
    r.big_n = Some(n as u64);
    r.cluster_count = Some(plan.clusters.len() as u64);
    Ok((reports, r))
}

fn curves_verify(
    set: &RatSet,
    g: &GlobalArgs,
    random_lprime: usize,
    side: usize,
) -> Result<Outcome, CliError> {
    let m = g.override_m.unwrap_or(CURVES_M);
    let n = g.override_n.unwrap_or(CURVES_N);
    let (reports, mut r) = verify_cluster_families(set, m, n)?;
    let mut l = PsTally::default();
    reports.iter().for_each(|ps| l.add(ps));
    l.write("l", &mut r);

    let mut lp = PsTally::default();
    for i in 0..random_lprime {
        let inst = random_lprime_instance(g.seed.wrapping_add(i as u64), side)?;
        lp.add(&verify_ps_conditions(&inst.family, &inst.grid)?);
    }
    if random_lprime > 0 {
        lp.write("lprime", &mut r);
    }
    let mut out = Outcome::new(r);
    out.check(l.violations == 0, || {
        format!("{} violations in family L", l.violations)
    });
    out.check(lp.violations == 0, || {
        format!("{} violations in family L'", lp.violations)
    });
    Ok(out)
}

fn egt_params(params: &[String]) -> Result<(usize, usize), CliError> {
    let (mut r, mut k) = (None, None);
    for p in params {
        let (key, value) = p
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected key=value, got {p:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| CliError::Input(format!("{key}: not a nonnegative integer: {value:?}")))?;
        match key {
            "r" => r = Some(value),
            "k" => k = Some(value),
            _ => return Err(CliError::Input(format!("unknown parameter {key:?}"))),
        }
    }
    match (r, k) {
        (Some(r), Some(k)) => Ok((r, k)),
        _ => Err(CliError::Input(
            "egt needs r=<parts> and k=<part size>".into(),
        )),
    }
}

fn outcome_str(o: EgtOutcome) -> &'static str {
    match o {
        EgtOutcome::Satisfied => "satisfied",
        EgtOutcome::Violated => "violated",
        EgtOutcome::Indeterminate => "indeterminate",
    }
}

fn egt(
    tightness: bool,
    random: bool,
    max_tries: u64,
    params: &[String],
    g: &GlobalArgs,
) -> Result<Outcome, CliError> {
    if !tightness && !random {
        return Err(CliError::Input("egt needs --tightness or --random".into()));
    }
    let (r, k) = egt_params(params)?;
    let graph = if tightness {
        tightness_construction(r, k)?
    } else {
        random_dense_graph(r, k, g.seed)?
    };
    let mut rep = Report::new("egt");
    let d = &mut rep.details;
    d.push("graph", if tightness { "tightness" } else { "random" });
    d.push("r", r as u64);
    d.push("k", k as u64);
    let mut densities = Vec::new();
    for i in 0..r {
        for j in (i + 1)..r {
            let density = pair_density(&graph, i, j)?;
            d.push(format!("density.{i}-{j}"), density);
            densities.push(((i, j), density));
        }
    }
    let (lo, hi) = egt_threshold(r, k)?;
    d.push("threshold_low", decimal_string(&lo, 6));
    d.push("threshold_high", decimal_string(&hi, 6));
    let condition = egt_condition(&graph)?;
    d.push("condition", outcome_str(condition));
    let clique = backtrack_transversal_clique(&graph);
    d.push(
        "clique",
        if clique.is_some() {
            "present"
        } else {
            "absent"
        },
    );
    if let Some(c) = &clique {
        let picks: Vec<String> = c.picks.iter().map(usize::to_string).collect();
        d.push("clique_picks", picks.join(","));
    }
    let sampled = sample_transversal_clique(&graph, g.seed, max_tries);
    d.push("sampler_found", sampled.certificate.is_some());
    d.push("sampler_tries", sampled.tries);

    let mut out = Outcome::new(rep);
    out.check(clique.as_ref().is_none_or(|c| c.verify(&graph)), || {
        "backtracking returned a non-clique".into()
    });
    out.check(
        sampled
            .certificate
            .as_ref()
            .is_none_or(|c| c.verify(&graph)),
        || "sampler returned a non-clique".into(),
    );
    out.check(sampled.certificate.is_none() || clique.is_some(), || {
        "sampler found a clique that backtracking missed".into()
    });
    if tightness {
        let reduced = (k * k - k * k / (r - 1)) as u64;
        for ((i, j), density) in densities {
            let expected = if i == 0 { reduced } else { (k * k) as u64 };
            out.check(density == expected, || {
                format!("density of parts {i},{j} is {density}, expected {expected}")
            });
        }
        out.check(clique.is_none(), || {
            "tightness graph contains a transversal clique".into()
        });
    } else {
        out.check(condition == EgtOutcome::Satisfied, || {
            "random graph does not meet the density condition".into()
        });
        out.check(clique.is_some(), || {
            "graph above the density threshold has no transversal clique".into()
        });
    }
    Ok(out)
}

fn corpus_cmd(
    kind: &CorpusKind,
    write: Option<&std::path::Path>,
    g: &GlobalArgs,
) -> Result<Outcome, CliError> {
    let (name, set) = match kind {
        CorpusKind::Ap { start, step, n } => ("ap", corpus::ap(start, step, *n)?),
        CorpusKind::Gp { start, ratio, n } => ("gp", corpus::gp(start, ratio, *n)?),
        CorpusKind::Random { n, range } => ("random", corpus::random(*n, *range, g.seed)?),
    };
    if let Some(path) = write {
        std::fs::write(path, canonical_lines(&set) + "\n")
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let mut r = with_input("corpus", &set);
    r.details.push("kind", name);
    let elements: Vec<String> = set.iter().map(|x| x.to_string()).collect();
    r.details.push("elements", elements.join(" "));
    Ok(Outcome::new(r))
}
