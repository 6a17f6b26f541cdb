use crate::{Error, Result};

/// Slot `slot` of part `part`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub part: usize,
    pub slot: usize,
}

impl Vertex {
    pub fn new(part: usize, slot: usize) -> Self {
        Vertex { part, slot }
    }
}

/// `r` independent parts of `k` vertices each, with a dense symmetric
/// adjacency matrix. Edges inside a part are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteGraph {
    parts: usize,
    part_size: usize,
    adj: Vec<bool>,
}

impl MultipartiteGraph {
    pub fn empty(parts: usize, part_size: usize) -> Self {
        let n = parts * part_size;
        MultipartiteGraph {
            parts,
            part_size,
            adj: vec![false; n * n],
        }
    }

    pub fn complete(parts: usize, part_size: usize) -> Self {
        let mut g = MultipartiteGraph::empty(parts, part_size);
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                if u / part_size != v / part_size {
                    g.adj[u * n + v] = true;
                }
            }
        }
        g
    }

    /// Build from a symmetric predicate evaluated once per cross-part pair.
    pub fn from_predicate<F>(parts: usize, part_size: usize, edge: F) -> Self
    where
        F: Fn(Vertex, Vertex) -> bool + Sync + Send,
    {
        let mut g = MultipartiteGraph::empty(parts, part_size);
        let n = g.vertex_count();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|(u, v)| u / part_size != v / part_size)
            .collect();
        let present = crate::exec::map(&pairs, |&(u, v)| edge(g.vertex(u), g.vertex(v)));
        for (&(u, v), on) in pairs.iter().zip(present) {
            if on {
                g.adj[u * n + v] = true;
                g.adj[v * n + u] = true;
            }
        }
        g
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn part_size(&self) -> usize {
        self.part_size
    }

    pub fn vertex_count(&self) -> usize {
        self.parts * self.part_size
    }

    fn index(&self, v: Vertex) -> usize {
        v.part * self.part_size + v.slot
    }

    fn vertex(&self, index: usize) -> Vertex {
        Vertex::new(index / self.part_size, index % self.part_size)
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v.part >= self.parts || v.slot >= self.part_size {
            return Err(Error::InvalidGraph(format!("vertex {v:?} out of range")));
        }
        Ok(())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let n = self.vertex_count();
        self.adj[self.index(u) * n + self.index(v)]
    }

    fn set_edge(&mut self, u: Vertex, v: Vertex, on: bool) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u.part == v.part {
            return Err(Error::InvalidGraph(format!(
                "edge {u:?}-{v:?} would join vertices of one part"
            )));
        }
        let n = self.vertex_count();
        let (iu, iv) = (self.index(u), self.index(v));
        self.adj[iu * n + iv] = on;
        self.adj[iv * n + iu] = on;
        Ok(())
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.set_edge(u, v, true)
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.set_edge(u, v, false)
    }

    /// Slots of `part` adjacent to `v`.
    pub fn neighbours_in(&self, v: Vertex, part: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.part_size).filter(move |&s| self.has_edge(v, Vertex::new(part, s)))
    }

    pub fn pair_edge_count(&self, i: usize, j: usize) -> u64 {
        let mut count = 0;
        for s in 0..self.part_size {
            for t in 0..self.part_size {
                if self.has_edge(Vertex::new(i, s), Vertex::new(j, t)) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn edge_count(&self) -> u64 {
        (0..self.parts)
            .flat_map(|i| ((i + 1)..self.parts).map(move |j| (i, j)))
            .map(|(i, j)| self.pair_edge_count(i, j))
            .sum()
    }
}
