//! Pipeline stages re-derived by direct slope-coincidence counting.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumquot::intmath::pow_le;
use sumquot::oracle::quotient_of_sums_exact;
use sumquot::pipeline::*;
use sumquot::ratcore::slope_of_sum;
use sumquot::{Point, RatSet, Rational, SlopeDecomposition};

fn r_of(p: &Point, lam: &Rational, x: &Rational) -> Rational {
    slope_of_sum(p, &Point::on_line(lam, x)).unwrap()
}

/// `|{(x, y) ∈ A_λ1 × A_λ2 : R(p + (x, λ1 x)) = R(q + (y, λ2 y))}|`.
fn coincidences(
    d: &SlopeDecomposition,
    p: &Point,
    l1: &Rational,
    q: &Point,
    l2: &Rational,
) -> usize {
    let xs = d.line(l1).unwrap();
    let ys = d.line(l2).unwrap();
    xs.iter()
        .map(|x| {
            let z = r_of(p, l1, x);
            ys.iter().filter(|y| r_of(q, l2, y) == z).count()
        })
        .sum()
}

fn overrides(m: usize, n: usize) -> PipelineConfig {
    PipelineConfig {
        override_m: Some(m),
        override_n: Some(n),
        ..PipelineConfig::default()
    }
}

fn corpus() -> Vec<RatSet> {
    vec![
        RatSet::interval(16),
        RatSet::interval(24),
        RatSet::from_ints([1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]),
        RatSet::from_ints([1, 2, 4, 8, 16, 32, 64, 3, 6, 12, 24, 48]),
        RatSet::from_ints([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]),
    ]
}

#[test]
fn dyadic_constant_on_one_to_sixteen() {
    let d = SlopeDecomposition::new(&RatSet::interval(16)).unwrap();
    let sel = dyadic_select(&d).unwrap();
    assert!(Rational::from(sel.tau * sel.slopes.len() as u64) >= Rational::new(256, 20).unwrap());
    let mass: usize = sel.slopes.iter().map(|s| d.multiplicity(s)).sum();
    assert_eq!(mass as u64, sel.mass);
}

#[test]
fn cluster_intervals_are_disjoint() {
    let d = SlopeDecomposition::new(&RatSet::interval(16)).unwrap();
    let sel = dyadic_select(&d).unwrap();
    let plan = build_clusters(&sel, 8, 2).unwrap();
    assert_eq!(plan.clusters.len(), sel.slopes.len() / 10);
    for w in plan.clusters.windows(2) {
        assert!(w[0].max_slope() < w[1].min_slope());
    }
    for c in &plan.clusters {
        assert_eq!(c.t.len(), 8);
        assert_eq!(c.u.len(), 2);
        assert!(c.t.last().unwrap() < c.u.first().unwrap());
    }
}

#[test]
fn technical_survivors_match_recount() {
    for a in corpus() {
        let d = SlopeDecomposition::new(&a).unwrap();
        let sel = dyadic_select(&d).unwrap();
        let Ok(plan) = build_clusters(&sel, 8, 2) else {
            continue;
        };
        for c in &plan.clusters {
            let ts = technical_filter(c, &d, sel.tau).unwrap();
            for lam in &c.t {
                let expected: Vec<Rational> = d
                    .line(lam)
                    .unwrap()
                    .iter()
                    .filter(|a| {
                        let p = Point::on_line(lam, a);
                        c.u.iter().all(|l1| {
                            c.u.iter().filter(|l2| *l2 != l1).all(|l2| {
                                let r = coincidences(&d, &p, l1, &p, l2);
                                pow_le(r as u64, 25, sel.tau, 24)
                            })
                        })
                    })
                    .cloned()
                    .collect();
                assert_eq!(ts.survivors[lam], expected);
            }
        }
    }
}

#[test]
fn good_pair_edges_match_recount() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let mut checked = 0;
    for a in corpus() {
        let d = SlopeDecomposition::new(&a).unwrap();
        let sel = dyadic_select(&d).unwrap();
        let Ok(plan) = build_clusters(&sel, 16, 2) else {
            continue;
        };
        for c in &plan.clusters {
            let ts = technical_filter(c, &d, sel.tau).unwrap();
            if ts.t_pp.len() < 2 {
                continue;
            }
            let g = build_good_pair_graph(&ts, &c.u, &d, sel.tau).unwrap();
            for _ in 0..5 {
                let i = rng.random_range(0..ts.t_pp.len());
                let mut j = rng.random_range(0..ts.t_pp.len() - 1);
                if j >= i {
                    j += 1;
                }
                let (l3, l4) = (&ts.t_pp[i], &ts.t_pp[j]);
                let s = rng.random_range(0..ts.lines_pp[l3].len());
                let t = rng.random_range(0..ts.lines_pp[l4].len());
                let p = Point::on_line(l3, &ts.lines_pp[l3][s]);
                let q = Point::on_line(l4, &ts.lines_pp[l4][t]);
                let good = c.u.iter().all(|l1| {
                    c.u.iter().all(|l2| {
                        let n = coincidences(&d, &p, l1, &q, l2);
                        pow_le(n as u64, 25, sel.tau, 19)
                    })
                });
                let edge = g.has_edge(
                    sumquot::egt::Vertex::new(i, s),
                    sumquot::egt::Vertex::new(j, t),
                );
                assert_eq!(edge, good);
                checked += 1;
            }
        }
    }
    assert!(checked >= 50, "only {checked} vertex pairs checked");
}

#[test]
fn accounts_survive_independent_recount() {
    for a in corpus() {
        let oracle = quotient_of_sums_exact(&a);
        let d = SlopeDecomposition::new(&a).unwrap();
        for (m, n) in [(2, 1), (4, 1), (8, 2), (16, 2)] {
            let r = certify_full(&a, &overrides(m, n)).unwrap();
            assert!(r.witnesses.is_subset(&oracle));
            if r.mode != Mode::FullPipeline {
                continue;
            }
            let tau = r.selection.as_ref().unwrap().tau;
            let sel = r.selection.as_ref().unwrap();
            let plan = build_clusters(sel, m, n).unwrap();
            let mut union = RatSet::new();
            for (acc, c) in r.per_cluster.iter().zip(&plan.clusters) {
                let keys: Vec<(&Rational, &Rational)> =
                    c.u.iter()
                        .flat_map(|l| acc.representatives.keys().map(move |lp| (l, lp)))
                        .collect();
                let mut recount: BTreeMap<Rational, usize> = BTreeMap::new();
                for (l, lp) in &keys {
                    for x in d.line(l).unwrap().iter() {
                        *recount
                            .entry(r_of(&acc.representatives[*lp], l, x))
                            .or_default() += 1;
                    }
                }
                assert_eq!(recount.len(), acc.witnesses.len());
                let mut error_sum = 0;
                for (i, (l1, l3)) in keys.iter().enumerate() {
                    for (j, (l2, l4)) in keys.iter().enumerate() {
                        if i == j {
                            continue;
                        }
                        let (p, q) = (&acc.representatives[*l3], &acc.representatives[*l4]);
                        let e = coincidences(&d, p, l1, q, l2);
                        assert_eq!(
                            e,
                            error_term([l1, l2, l3, l4], &acc.representatives, &d).unwrap()
                        );
                        if l3 == l4 {
                            assert!(pow_le(e as u64, 25, tau, 24));
                        } else if acc.method.is_clique() {
                            assert!(pow_le(e as u64, 25, tau, 19));
                        }
                        error_sum += e as u64;
                    }
                }
                assert_eq!(error_sum, acc.error_sum);
                assert!(acc.accounting_holds());
                assert!(acc
                    .witnesses
                    .iter()
                    .all(|w| *w > acc.slope_min && *w < acc.slope_max));
                assert_eq!(union.intersection_len(&acc.witnesses), 0);
                union = union.union(&acc.witnesses);
            }
            assert_eq!(union, r.witnesses);
        }
    }
}

#[test]
fn realisation_increases_along_the_line() {
    let a = RatSet::interval(12);
    let d = SlopeDecomposition::new(&a).unwrap();
    let slopes: Vec<&Rational> = d.slopes().collect();
    for w in slopes.windows(2).step_by(7) {
        let p = Point::on_line(w[0], d.line(w[0]).unwrap().min().unwrap());
        let zs: Vec<Rational> = d
            .line(w[1])
            .unwrap()
            .iter()
            .map(|x| r_of(&p, w[1], x))
            .collect();
        assert!(zs.windows(2).all(|z| z[0] < z[1]));
    }
}

#[test]
fn runs_are_deterministic() {
    let a = RatSet::interval(20);
    let config = PipelineConfig {
        seed: 11,
        ..overrides(16, 2)
    };
    assert_eq!(
        certify_full(&a, &config).unwrap(),
        certify_full(&a, &config).unwrap()
    );
}
