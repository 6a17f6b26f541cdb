use std::collections::BTreeMap;

use crate::curves::{CurveL, CurveLPrime};
use crate::egt::{
    backtrack_transversal_clique, sample_transversal_clique, MultipartiteGraph, Vertex,
};
use crate::intmath::pow_le;
use crate::ratcore::{Point, RatSet, Rational, SlopeDecomposition};
use crate::{Error, Result};

use super::select::PigeonholeSelection;

/// `M + N` consecutive slopes of `S`: the `M` smallest form `t`, the rest `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub index: usize,
    pub t: Vec<Rational>,
    pub u: Vec<Rational>,
}

impl Cluster {
    pub fn min_slope(&self) -> &Rational {
        self.t
            .first()
            .unwrap_or_else(|| self.u.first().expect("nonempty cluster"))
    }

    pub fn max_slope(&self) -> &Rational {
        self.u
            .last()
            .unwrap_or_else(|| self.t.last().expect("nonempty cluster"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterPlan {
    pub m: usize,
    pub n: usize,
    pub clusters: Vec<Cluster>,
}

/// `⌊|S|/(M+N)⌋` clusters in ascending slope order; leftover slopes are dropped.
pub fn build_clusters(sel: &PigeonholeSelection, m: usize, n: usize) -> Result<ClusterPlan> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidParameter(format!(
            "need M, N >= 1, got M={m}, N={n}"
        )));
    }
    let slopes = sel.slopes.as_slice();
    if m + n > slopes.len() {
        return Err(Error::InvalidParameter(format!(
            "M + N = {} exceeds |S| = {}",
            m + n,
            slopes.len()
        )));
    }
    let clusters = slopes
        .chunks_exact(m + n)
        .enumerate()
        .map(|(index, chunk)| Cluster {
            index,
            t: chunk[..m].to_vec(),
            u: chunk[m..].to_vec(),
        })
        .collect();
    Ok(ClusterPlan { m, n, clusters })
}

/// Number of `x` in `xs` whose partner `y` (from `solve`) lies in `ys` and
/// satisfies `contains`. A vanishing `solve` means either no `y` or every `y`.
fn count_on_grid(
    xs: &RatSet,
    ys: &RatSet,
    solve: impl Fn(&Rational) -> Option<Rational>,
    contains: impl Fn(&Rational, &Rational) -> bool,
) -> usize {
    let Some(y0) = ys.min() else { return 0 };
    xs.iter()
        .map(|x| match solve(x) {
            Some(y) => usize::from(ys.contains(&y) && contains(x, &y)),
            None if contains(x, y0) => ys.len(),
            None => 0,
        })
        .sum()
}

fn line<'a>(d: &'a SlopeDecomposition, slope: &Rational) -> Result<&'a RatSet> {
    d.line(slope)
        .ok_or_else(|| Error::InvalidParameter(format!("no line of slope {slope}")))
}

/// `|{(x, y) ∈ A_λ1 × A_λ2 : R(p + (x, λ1 x)) = R(p + (y, λ2 y))}|` for
/// `p = (a, λa)`, counted as grid points on the curve `l_p`.
pub fn richness_count(
    a: &Rational,
    lam: &Rational,
    lam1: &Rational,
    lam2: &Rational,
    d: &SlopeDecomposition,
) -> Result<usize> {
    let curve = CurveL::new(a.clone(), lam.clone(), lam1.clone(), lam2.clone())?;
    Ok(count_on_grid(
        line(d, lam1)?,
        line(d, lam2)?,
        |x| curve.solve_y(x),
        |x, y| crate::curves::Curve::contains(&curve, x, y),
    ))
}

/// `|{(x, y) ∈ A_λ1 × A_λ2 : (λ3 a + λ1 x)(b + y) = (λ4 b + λ2 y)(a + x)}|`.
pub fn pair_count(
    a: &Rational,
    b: &Rational,
    lams: [&Rational; 4],
    d: &SlopeDecomposition,
) -> Result<usize> {
    let curve = CurveLPrime::new(a.clone(), b.clone(), lams.map(Rational::clone))?;
    Ok(count_on_grid(
        line(d, lams[0])?,
        line(d, lams[1])?,
        |x| curve.solve_y(x),
        |x, y| crate::curves::Curve::contains(&curve, x, y),
    ))
}

/// Points of the `T` lines that stay below `τ^(24/25)` richness against every
/// ordered pair of distinct `U` slopes, and the refinement to equal-sized lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TechnicalSubset {
    /// Surviving x-coordinates per `T` line, ascending.
    pub survivors: BTreeMap<Rational, Vec<Rational>>,
    pub p_size: usize,
    /// Lines with at least `⌈τ/4⌉` survivors.
    pub t_prime: Vec<Rational>,
    /// The shallowest `⌈M/8⌉` lines of `t_prime`; empty if there are too few.
    pub t_pp: Vec<Rational>,
    /// The `⌈τ/4⌉` survivors nearest the origin on each `t_pp` line.
    pub lines_pp: BTreeMap<Rational, Vec<Rational>>,
}

impl TechnicalSubset {
    pub fn refined(&self) -> bool {
        !self.t_pp.is_empty()
    }
}

pub fn technical_filter(
    cluster: &Cluster,
    d: &SlopeDecomposition,
    tau: u64,
) -> Result<TechnicalSubset> {
    let pairs: Vec<(&Rational, &Rational)> = cluster
        .u
        .iter()
        .flat_map(|l1| cluster.u.iter().map(move |l2| (l1, l2)))
        .filter(|(l1, l2)| l1 != l2)
        .collect();
    let mut survivors = BTreeMap::new();
    for lam in &cluster.t {
        let xs = line(d, lam)?.as_slice();
        let keep = crate::exec::map(xs, |a| -> Result<bool> {
            for (l1, l2) in &pairs {
                let r = richness_count(a, lam, l1, l2, d)?;
                if !pow_le(r as u64, 25, tau, 24) {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        let mut kept = Vec::new();
        for (a, k) in xs.iter().zip(keep) {
            if k? {
                kept.push(a.clone());
            }
        }
        survivors.insert(lam.clone(), kept);
    }
    let p_size = survivors.values().map(Vec::len).sum();
    let quarter = tau.div_ceil(4) as usize;
    let eighth = cluster.t.len().div_ceil(8);
    let t_prime: Vec<Rational> = cluster
        .t
        .iter()
        .filter(|lam| survivors[*lam].len() >= quarter)
        .cloned()
        .collect();
    let (t_pp, lines_pp) = if t_prime.len() >= eighth {
        let t_pp: Vec<Rational> = t_prime[..eighth].to_vec();
        let lines_pp = t_pp
            .iter()
            .map(|lam| (lam.clone(), survivors[lam][..quarter].to_vec()))
            .collect();
        (t_pp, lines_pp)
    } else {
        (Vec::new(), BTreeMap::new())
    };
    Ok(TechnicalSubset {
        survivors,
        p_size,
        t_prime,
        t_pp,
        lines_pp,
    })
}

/// Parts are the `t_pp` lines, slots their `lines_pp` points. Two points are
/// joined when every `(λ1, λ2) ∈ U²` has pair count `c` with `c^25 <= τ^19`.
pub fn build_good_pair_graph(
    ts: &TechnicalSubset,
    u: &[Rational],
    d: &SlopeDecomposition,
    tau: u64,
) -> Result<MultipartiteGraph> {
    let parts = ts.t_pp.len();
    let slots = ts.lines_pp.values().next().map_or(0, Vec::len);
    let failure = std::sync::Mutex::new(None);
    let g = MultipartiteGraph::from_predicate(parts, slots, |p, q| {
        let (l3, l4) = (&ts.t_pp[p.part], &ts.t_pp[q.part]);
        let (a, b) = (&ts.lines_pp[l3][p.slot], &ts.lines_pp[l4][q.slot]);
        for l1 in u {
            for l2 in u {
                match pair_count(a, b, [l1, l2, l3, l4], d) {
                    Ok(c) if pow_le(c as u64, 25, tau, 19) => {}
                    Ok(_) => return false,
                    Err(e) => {
                        failure.lock().expect("unpoisoned").get_or_insert(e);
                        return false;
                    }
                }
            }
        }
        true
    });
    match failure.into_inner().expect("unpoisoned") {
        Some(e) => Err(e),
        None => Ok(g),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepresentativeMethod {
    Sampled,
    Backtracked,
    /// No transversal clique; the point nearest the origin on each line.
    Fallback,
}

impl RepresentativeMethod {
    pub fn is_clique(self) -> bool {
        self != RepresentativeMethod::Fallback
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RepresentativeMethod::Sampled => "sampled",
            RepresentativeMethod::Backtracked => "backtracked",
            RepresentativeMethod::Fallback => "fallback",
        }
    }
}

/// One slot per part: a transversal clique if the sampler or backtracking
/// finds one, else slot 0 everywhere.
pub fn select_representatives(
    g: &MultipartiteGraph,
    seed: u64,
    max_tries: u64,
) -> (Vec<usize>, RepresentativeMethod) {
    let sampled = sample_transversal_clique(g, seed, max_tries);
    if let Some(cert) = sampled.certificate {
        return (cert.picks, RepresentativeMethod::Sampled);
    }
    if let Some(cert) = backtrack_transversal_clique(g) {
        return (cert.picks, RepresentativeMethod::Backtracked);
    }
    (vec![0; g.parts()], RepresentativeMethod::Fallback)
}

/// `R(p + 𝒜_λ) = {(p.y + λx)/(p.x + x) : x ∈ A_λ}`.
pub fn realisation_set(p: &Point, lam: &Rational, xs: &RatSet) -> RatSet {
    xs.iter().map(|x| (&p.y + lam * x) / (&p.x + x)).collect()
}

/// `|R(p_λ3 + 𝒜_λ1) ∩ R(p_λ4 + 𝒜_λ2)|` for the representatives `p`.
pub fn error_term(
    lams: [&Rational; 4],
    reps: &BTreeMap<Rational, Point>,
    d: &SlopeDecomposition,
) -> Result<usize> {
    let [l1, l2, l3, l4] = lams;
    if l1 == l2 && l3 == l4 {
        return Err(Error::InvalidParameter(
            "error term needs (λ1, λ3) != (λ2, λ4)".into(),
        ));
    }
    let rep = |l: &Rational| {
        reps.get(l)
            .ok_or_else(|| Error::MissingRepresentative(l.clone()))
    };
    let first = realisation_set(rep(l3)?, l1, line(d, l1)?);
    let second = realisation_set(rep(l4)?, l2, line(d, l2)?);
    Ok(first.intersection_len(&second))
}

/// Per-cluster record of the witness construction and its accounting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterAccount {
    pub index: usize,
    pub slope_min: Rational,
    pub slope_max: Rational,
    pub p_size: usize,
    pub t_pp_size: usize,
    pub u_size: usize,
    pub method: RepresentativeMethod,
    pub representatives: BTreeMap<Rational, Point>,
    /// `R_j'`.
    pub witnesses: RatSet,
    /// `Σ_{(λ,λ')∈U×T''} |A_λ|`.
    pub sum_sizes: u64,
    /// `|U| · |T''| · τ`.
    pub main_term: u64,
    /// Sum of `E` over ordered pairs `(λ1,λ3) != (λ2,λ4)`.
    pub error_sum: u64,
    pub max_cross_error: usize,
    pub max_same_error: usize,
    /// Every cross-line `E` satisfies `E^25 <= τ^19`.
    pub cross_errors_ok: bool,
    /// Every same-line `E` satisfies `E^25 <= τ^24`.
    pub same_errors_ok: bool,
}

impl ClusterAccount {
    /// `|R_j'| >= Σ|A_λ| - ΣE` and `|R_j'| >= main - ΣE`.
    pub fn accounting_holds(&self) -> bool {
        let r = self.witnesses.len() as i128;
        let e = i128::from(self.error_sum);
        r >= i128::from(self.sum_sizes) - e && r >= i128::from(self.main_term) - e
    }
}

pub(crate) enum ClusterOutcome {
    Done(Box<ClusterAccount>),
    RefinementFailed { t_prime: usize, needed: usize },
}

pub(crate) fn process_cluster(
    cluster: &Cluster,
    d: &SlopeDecomposition,
    tau: u64,
    seed: u64,
    max_tries: u64,
) -> Result<ClusterOutcome> {
    let ts = technical_filter(cluster, d, tau)?;
    if !ts.refined() {
        return Ok(ClusterOutcome::RefinementFailed {
            t_prime: ts.t_prime.len(),
            needed: cluster.t.len().div_ceil(8),
        });
    }
    let g = build_good_pair_graph(&ts, &cluster.u, d, tau)?;
    let (picks, method) = select_representatives(&g, seed, max_tries);
    if method.is_clique() {
        let ok = picks.iter().enumerate().all(|(i, &s)| {
            picks
                .iter()
                .enumerate()
                .skip(i + 1)
                .all(|(j, &t)| g.has_edge(Vertex::new(i, s), Vertex::new(j, t)))
        });
        if !ok {
            return Err(Error::Invariant("representatives are not a clique".into()));
        }
    }
    let reps: BTreeMap<Rational, Point> = ts
        .t_pp
        .iter()
        .zip(&picks)
        .map(|(lam, &slot)| {
            let a = &ts.lines_pp[lam][slot];
            (lam.clone(), Point::on_line(lam, a))
        })
        .collect();

    let keys: Vec<(&Rational, &Rational)> = cluster
        .u
        .iter()
        .flat_map(|l| ts.t_pp.iter().map(move |lp| (l, lp)))
        .collect();
    let sets: Vec<RatSet> = keys
        .iter()
        .map(|(l, lp)| Ok(realisation_set(&reps[*lp], l, line(d, l)?)))
        .collect::<Result<_>>()?;
    for ((l, lp), set) in keys.iter().zip(&sets) {
        if set.len() != d.multiplicity(l) {
            return Err(Error::Invariant(format!(
                "R(p_{lp} + A_{l}) is not injective along the line"
            )));
        }
    }
    let witnesses = sets.iter().fold(RatSet::new(), |acc, s| acc.union(s));
    let sum_sizes = sets.iter().map(|s| s.len() as u64).sum();

    let mut error_sum = 0u64;
    let (mut max_cross, mut max_same) = (0usize, 0usize);
    let (mut cross_ok, mut same_ok) = (true, true);
    for (i, (_, l3)) in keys.iter().enumerate() {
        for (j, (_, l4)) in keys.iter().enumerate() {
            if i == j {
                continue;
            }
            let e = sets[i].intersection_len(&sets[j]);
            error_sum += e as u64;
            if l3 == l4 {
                max_same = max_same.max(e);
                same_ok &= pow_le(e as u64, 25, tau, 24);
            } else {
                max_cross = max_cross.max(e);
                cross_ok &= pow_le(e as u64, 25, tau, 19);
            }
        }
    }
    let account = ClusterAccount {
        index: cluster.index,
        slope_min: cluster.min_slope().clone(),
        slope_max: cluster.max_slope().clone(),
        p_size: ts.p_size,
        t_pp_size: ts.t_pp.len(),
        u_size: cluster.u.len(),
        method,
        representatives: reps,
        witnesses,
        sum_sizes,
        main_term: (cluster.u.len() * ts.t_pp.len()) as u64 * tau,
        error_sum,
        max_cross_error: max_cross,
        max_same_error: max_same,
        cross_errors_ok: cross_ok,
        same_errors_ok: same_ok,
    };
    if !account.same_errors_ok {
        return Err(Error::Invariant(format!(
            "cluster {}: same-line error exceeds τ^(24/25)",
            cluster.index
        )));
    }
    if method.is_clique() && !account.cross_errors_ok {
        return Err(Error::Invariant(format!(
            "cluster {}: cross-line error exceeds τ^(19/25) on a clique",
            cluster.index
        )));
    }
    if !account.accounting_holds() {
        return Err(Error::Invariant(format!(
            "cluster {}: |R_j'| = {} below Σ|A_λ| - ΣE = {} - {}",
            cluster.index,
            account.witnesses.len(),
            account.sum_sizes,
            account.error_sum
        )));
    }
    Ok(ClusterOutcome::Done(Box::new(account)))
}
