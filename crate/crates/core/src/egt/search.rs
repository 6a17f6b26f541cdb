use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::{MultipartiteGraph, Vertex};

/// One slot per part; `picks[i]` is the chosen slot of part `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliqueCertificate {
    pub picks: Vec<usize>,
}

impl CliqueCertificate {
    pub fn new(picks: Vec<usize>) -> Self {
        CliqueCertificate { picks }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.picks
            .iter()
            .enumerate()
            .map(|(p, &s)| Vertex::new(p, s))
    }

    /// One in-range pick per part, all pairwise adjacent.
    pub fn verify(&self, g: &MultipartiteGraph) -> bool {
        if self.picks.len() != g.parts() || self.picks.iter().any(|&s| s >= g.part_size()) {
            return false;
        }
        let vs: Vec<Vertex> = self.vertices().collect();
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleOutcome {
    pub certificate: Option<CliqueCertificate>,
    /// Number of transversals drawn, including the successful one.
    pub tries: u64,
}

/// Draw uniform random transversals until one is a clique or `max_tries`
/// draws have failed.
pub fn sample_transversal_clique(
    g: &MultipartiteGraph,
    seed: u64,
    max_tries: u64,
) -> SampleOutcome {
    if g.part_size() == 0 && g.parts() > 0 {
        return SampleOutcome {
            certificate: None,
            tries: 0,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_tries {
        let picks: Vec<usize> = (0..g.parts())
            .map(|_| rng.random_range(0..g.part_size()))
            .collect();
        let cert = CliqueCertificate::new(picks);
        if cert.verify(g) {
            return SampleOutcome {
                certificate: Some(cert),
                tries: attempt,
            };
        }
    }
    SampleOutcome {
        certificate: None,
        tries: max_tries,
    }
}

/// Exhaustive search: always picks the open part with the fewest remaining
/// candidates, and drops candidates not adjacent to the latest pick.
pub fn backtrack_transversal_clique(g: &MultipartiteGraph) -> Option<CliqueCertificate> {
    let candidates: Vec<Vec<usize>> = (0..g.parts())
        .map(|_| (0..g.part_size()).collect())
        .collect();
    let mut picks = vec![None; g.parts()];
    if extend(g, &candidates, &mut picks) {
        Some(CliqueCertificate::new(
            picks.into_iter().map(|p| p.expect("assigned")).collect(),
        ))
    } else {
        None
    }
}

fn extend(g: &MultipartiteGraph, candidates: &[Vec<usize>], picks: &mut [Option<usize>]) -> bool {
    let Some(part) = (0..picks.len())
        .filter(|&p| picks[p].is_none())
        .min_by_key(|&p| candidates[p].len())
    else {
        return true;
    };
    for &slot in &candidates[part] {
        let v = Vertex::new(part, slot);
        let mut next = candidates.to_vec();
        let mut dead = false;
        for (q, list) in next.iter_mut().enumerate() {
            if q == part || picks[q].is_some() {
                continue;
            }
            list.retain(|&t| g.has_edge(v, Vertex::new(q, t)));
            if list.is_empty() {
                dead = true;
                break;
            }
        }
        if dead {
            continue;
        }
        picks[part] = Some(slot);
        if extend(g, &next, picks) {
            return true;
        }
        picks[part] = None;
    }
    false
}
