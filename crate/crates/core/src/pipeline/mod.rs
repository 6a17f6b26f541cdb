//! Certified witness sets for `(A+A)/(A+A)`.
//!
//! Every certifier emits slopes `R(p + q)` with `p, q ∈ A × A`, which are
//! quotients of sums by construction, and re-checks each one against the
//! sumset before returning. The count is therefore a sound lower bound no
//! matter which asymptotic conditions hold.
//!
//! [`certify_born`] walks neighbouring lines through the origin and always
//! produces `|A|² - 1` slopes. [`certify_full`] runs the clustered
//! construction: dyadic selection of a band of lines, clusters of `M + N`
//! slopes, the technical filter, representatives from a transversal clique of
//! the good-pair graph, and exact accounting of the overlaps.

mod cluster;
mod select;

pub use cluster::{
    build_clusters, build_good_pair_graph, error_term, pair_count, realisation_set, richness_count,
    select_representatives, technical_filter, Cluster, ClusterAccount, ClusterPlan,
    RepresentativeMethod, TechnicalSubset,
};
pub use select::{
    choose_parameters, dyadic_select, evaluate_conditions, ConditionOutcome, ConditionStatus,
    Constants, ParameterChoice, PigeonholeSelection,
};

use cluster::{process_cluster, ClusterOutcome};

use crate::oracle::QuotientMembership;
use crate::ratcore::{require_positive, Point, RatSet, Rational, SlopeDecomposition};
use crate::{exec, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    FullPipeline,
    BornFallback,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::FullPipeline => "full-pipeline",
            Mode::BornFallback => "born-fallback",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub constants: Constants,
    pub override_m: Option<usize>,
    pub override_n: Option<usize>,
    pub seed: u64,
    /// Sampler budget per cluster before backtracking takes over.
    pub max_tries: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            constants: Constants::default(),
            override_m: None,
            override_n: None,
            seed: 0,
            max_tries: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedBound {
    pub witnesses: RatSet,
    pub per_cluster: Vec<ClusterAccount>,
    pub mode: Mode,
    pub regime_ok: bool,
    pub selection: Option<PigeonholeSelection>,
    pub m: usize,
    pub n: usize,
    pub cluster_count: usize,
    pub conditions: Vec<ConditionOutcome>,
    /// Why the clustered construction was not used.
    pub fallback_reason: Option<String>,
}

/// Witnesses of one pair of neighbouring lines `λ_i < λ_{i+1}`: the slopes
/// `R(p_i + q)` for `q` on the upper line, all strictly between the two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BornBand {
    pub lower: Rational,
    pub upper: Rational,
    pub base: Point,
    pub witnesses: RatSet,
}

/// One band per consecutive pair of slopes; `p_i` is the point of the lower
/// line nearest the origin.
pub fn born_bands(d: &SlopeDecomposition) -> Vec<BornBand> {
    let lines: Vec<(&Rational, &RatSet)> = d.iter().collect();
    exec::map_range(0..lines.len().saturating_sub(1), |i| {
        let (lower, xs) = lines[i];
        let (upper, next) = lines[i + 1];
        let base = Point::on_line(lower, xs.min().expect("nonempty line"));
        BornBand {
            lower: lower.clone(),
            upper: upper.clone(),
            witnesses: realisation_set(&base, upper, next),
            base,
        }
    })
}

fn check_witnesses(a: &RatSet, witnesses: &RatSet) -> Result<()> {
    let membership = QuotientMembership::new(a);
    let bad = exec::map(witnesses.as_slice(), |w| membership.contains(w))
        .into_iter()
        .zip(witnesses.iter())
        .find(|(ok, _)| !ok);
    match bad {
        Some((_, w)) => Err(Error::Invariant(format!(
            "witness {w} is not a quotient of sums"
        ))),
        None => Ok(()),
    }
}

fn born_witnesses(a: &RatSet) -> Result<RatSet> {
    if a.len() < 2 {
        return Ok(RatSet::new());
    }
    let d = SlopeDecomposition::new(a)?;
    let bands = born_bands(&d);
    let mut all = Vec::with_capacity(a.len() * a.len());
    for band in &bands {
        if band
            .witnesses
            .iter()
            .any(|w| *w <= band.lower || *w > band.upper)
        {
            return Err(Error::Invariant(format!(
                "witness outside ({}, {}]",
                band.lower, band.upper
            )));
        }
        all.extend(band.witnesses.iter().cloned());
    }
    let witnesses = RatSet::from_vec(all);
    let expected = a.len() * a.len() - 1;
    if witnesses.len() != expected {
        return Err(Error::Invariant(format!(
            "neighbour-line certifier produced {} witnesses, expected {expected}",
            witnesses.len()
        )));
    }
    check_witnesses(a, &witnesses)?;
    Ok(witnesses)
}

/// Neighbour-line certifier: exactly `|A|² - 1` witnesses (none when `|A| < 2`).
pub fn certify_born(a: &RatSet) -> Result<CertifiedBound> {
    require_positive(a)?;
    Ok(CertifiedBound {
        witnesses: born_witnesses(a)?,
        per_cluster: Vec::new(),
        mode: Mode::BornFallback,
        regime_ok: false,
        selection: None,
        m: 0,
        n: 0,
        cluster_count: 0,
        conditions: Vec::new(),
        fallback_reason: None,
    })
}

fn cluster_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Clustered construction. Without `M`/`N` overrides it only runs when every
/// regime condition holds; with overrides it runs whenever it can be carried
/// out. Otherwise the neighbour-line witnesses are returned with the reason.
pub fn certify_full(a: &RatSet, config: &PipelineConfig) -> Result<CertifiedBound> {
    require_positive(a)?;
    let mut out = certify_born(a)?;
    if a.len() < 2 {
        out.fallback_reason = Some("fewer than two elements".into());
        return Ok(out);
    }
    let d = SlopeDecomposition::new(a)?;
    let sel = dyadic_select(&d)?;
    let s_size = sel.slopes.len();
    let chosen = choose_parameters(sel.tau, &config.constants, s_size);
    let m = config.override_m.unwrap_or(chosen.m);
    let n = config.override_n.unwrap_or(chosen.n);
    let choice = evaluate_conditions(sel.tau, &config.constants, s_size, m, n);
    let overridden = config.override_m.is_some() || config.override_n.is_some();

    out.selection = Some(sel.clone());
    out.m = m;
    out.n = n;
    out.regime_ok = choice.regime_ok;
    out.conditions = choice.conditions;

    if !choice.regime_ok && !overridden {
        out.fallback_reason = Some("regime conditions not met".into());
        return Ok(out);
    }
    if m < 1 || n < 1 || m + n > s_size {
        out.fallback_reason = Some(format!("cannot form clusters: M={m}, N={n}, |S|={s_size}"));
        return Ok(out);
    }
    let plan = build_clusters(&sel, m, n)?;
    out.cluster_count = plan.clusters.len();
    let outcomes = exec::map(&plan.clusters, |c| {
        process_cluster(
            c,
            &d,
            sel.tau,
            cluster_seed(config.seed, c.index),
            config.max_tries,
        )
    });
    let mut accounts = Vec::with_capacity(outcomes.len());
    for (cluster, outcome) in plan.clusters.iter().zip(outcomes) {
        match outcome? {
            ClusterOutcome::Done(account) => accounts.push(*account),
            ClusterOutcome::RefinementFailed { t_prime, needed } => {
                out.fallback_reason = Some(format!(
                    "refinement failed in cluster {}: |T'| = {t_prime} < {needed}",
                    cluster.index
                ));
                return Ok(out);
            }
        }
    }

    for (i, acc) in accounts.iter().enumerate() {
        if acc
            .witnesses
            .iter()
            .any(|w| *w < acc.slope_min || *w > acc.slope_max)
        {
            return Err(Error::Invariant(format!(
                "cluster {i}: witness outside its band"
            )));
        }
        if let Some(next) = accounts.get(i + 1) {
            if acc.slope_max >= next.slope_min {
                return Err(Error::Invariant(format!(
                    "clusters {i} and {} overlap",
                    i + 1
                )));
            }
        }
    }
    let witnesses = accounts
        .iter()
        .fold(RatSet::new(), |acc, c| acc.union(&c.witnesses));
    let total: usize = accounts.iter().map(|c| c.witnesses.len()).sum();
    if witnesses.len() != total {
        return Err(Error::Invariant("cluster witness sets intersect".into()));
    }
    check_witnesses(a, &witnesses)?;

    out.witnesses = witnesses;
    out.per_cluster = accounts;
    out.mode = Mode::FullPipeline;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::quotient_of_sums_exact;

    #[test]
    fn born_counts() {
        assert_eq!(
            certify_born(&RatSet::from_ints([1, 2, 3]))
                .unwrap()
                .witnesses
                .len(),
            8
        );
        assert!(certify_born(&RatSet::from_ints([1]))
            .unwrap()
            .witnesses
            .is_empty());
        let a = RatSet::from_ints([1, 2, 4, 8]);
        let w = certify_born(&a).unwrap().witnesses;
        assert_eq!(w.len(), 15);
        assert!(w.is_subset(&quotient_of_sums_exact(&a)));
    }

    #[test]
    fn born_rejects_nonpositive() {
        assert!(certify_born(&RatSet::from_ints([-1, 2])).is_err());
        assert!(certify_born(&RatSet::new()).is_err());
    }

    #[test]
    fn defaults_fall_back_on_small_sets() {
        let r = certify_full(&RatSet::from_ints([1, 2, 3]), &PipelineConfig::default()).unwrap();
        assert_eq!(r.mode, Mode::BornFallback);
        assert_eq!(r.witnesses.len(), 8);
        assert_eq!((r.m, r.n), (0, 0));
        assert!(!r.regime_ok);
        assert!(r.fallback_reason.is_some());
    }

    #[test]
    fn overrides_run_the_full_pipeline() {
        let a = RatSet::interval(16);
        let oracle = quotient_of_sums_exact(&a);
        for (m, n) in [(2, 1), (4, 1), (8, 2)] {
            let config = PipelineConfig {
                override_m: Some(m),
                override_n: Some(n),
                ..PipelineConfig::default()
            };
            let r = certify_full(&a, &config).unwrap();
            assert_eq!(
                r.mode,
                Mode::FullPipeline,
                "M={m}, N={n}: {:?}",
                r.fallback_reason
            );
            assert!(r.witnesses.is_subset(&oracle));
            assert_eq!(r.cluster_count, r.per_cluster.len());
            assert!(r.per_cluster.iter().all(ClusterAccount::accounting_holds));
        }
    }

    #[test]
    fn oversized_overrides_fall_back() {
        let config = PipelineConfig {
            override_m: Some(100),
            override_n: Some(100),
            ..PipelineConfig::default()
        };
        let r = certify_full(&RatSet::interval(6), &config).unwrap();
        assert_eq!(r.mode, Mode::BornFallback);
        assert_eq!(r.witnesses.len(), 35);
    }

    #[test]
    fn singleton_falls_back_with_no_witnesses() {
        let r = certify_full(&RatSet::from_ints([4]), &PipelineConfig::default()).unwrap();
        assert!(r.witnesses.is_empty());
        assert_eq!(r.mode, Mode::BornFallback);
    }
}
