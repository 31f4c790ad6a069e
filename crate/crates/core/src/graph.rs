//! Simple undirected graphs on at most 64 vertices, stored as one 64-bit
//! adjacency row per vertex. Vertex subsets are `u64` bitmasks throughout,
//! which keeps the subset sweeps in the separation module branch-light.

use crate::error::{Error, Result};
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn new(n: usize) -> Result<Self> {
        if n > 64 {
            return Err(Error::GraphTooLarge { n });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u as Vertex, v as Vertex)?;
            }
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Graph::new(n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let (u, v) = (u as usize, v as usize);
        if u >= self.n {
            return Err(Error::LabelOutOfRange { label: u as Vertex, n: self.n });
        }
        if v >= self.n {
            return Err(Error::LabelOutOfRange { label: v as Vertex, n: self.n });
        }
        if u == v {
            return Err(Error::Internal(format!("self-loop at vertex {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (u, v) = (u as usize, v as usize);
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Adjacency row of `v` as a bitmask.
    pub fn neighbours(&self, v: Vertex) -> u64 {
        self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].count_ones() as usize
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut row = self.adj[u] >> (u + 1) << (u + 1);
            while row != 0 {
                let v = row.trailing_zeros();
                out.push((u as Vertex, v as Vertex));
                row &= row - 1;
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Bitmask selecting every vertex.
    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Number of connected components of the subgraph induced on `subset`.
    /// The empty subset has zero components.
    pub fn component_count(&self, subset: u64) -> u32 {
        let mut remaining = subset;
        let mut count = 0;
        while remaining != 0 {
            let seed = remaining & remaining.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut reach = 0u64;
                let mut it = frontier;
                while it != 0 {
                    let v = it.trailing_zeros() as usize;
                    reach |= self.adj[v];
                    it &= it - 1;
                }
                frontier = reach & subset & !comp;
                comp |= frontier;
            }
            remaining &= !comp;
            count += 1;
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_count(self.full_mask()) == 1
    }

    /// Union of adjacency rows over `subset`, minus `subset` itself: the
    /// outside neighbourhood of a vertex set.
    pub fn neighbourhood_of_set(&self, subset: u64) -> u64 {
        let mut reach = 0u64;
        let mut it = subset;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            reach |= self.adj[v];
            it &= it - 1;
        }
        reach & !subset & self.full_mask()
    }
}
