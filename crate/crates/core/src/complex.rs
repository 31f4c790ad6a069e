//! Finite abstract simplicial complexes, stored as their facet lists.
//!
//! A `Complex` is canonical by construction: every facet is an ascending
//! vertex tuple, the facet list is sorted lexicographically and duplicate
//! free, and every label in `0..n` occurs in some facet (the empty complex,
//! `n = 0`, is the one exception and is a legal value). Canonical storage
//! makes structural equality plain `==` and keeps all serialisation
//! byte-stable.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    n: usize,
    facets: Vec<Vec<Vertex>>,
}

/// First condition that fails when a complex is checked against the
/// definition of a triangulated 2-sphere. Checks run in the order the
/// variants are listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SphereDefect {
    Empty,
    NotPure { facet: Vec<Vertex> },
    EdgeFacetCount { edge: (Vertex, Vertex), count: usize },
    LinkNotCycle { vertex: Vertex },
    Disconnected,
    EulerCharacteristic { chi: i64 },
}

impl fmt::Display for SphereDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphereDefect::Empty => write!(f, "complex is empty"),
            SphereDefect::NotPure { facet } => {
                write!(f, "facet {facet:?} does not have exactly 3 vertices")
            }
            SphereDefect::EdgeFacetCount { edge, count } => {
                write!(f, "edge ({}, {}) lies in {} facets, expected 2", edge.0, edge.1, count)
            }
            SphereDefect::LinkNotCycle { vertex } => {
                write!(f, "link of vertex {vertex} is not a single cycle")
            }
            SphereDefect::Disconnected => write!(f, "1-skeleton is disconnected"),
            SphereDefect::EulerCharacteristic { chi } => {
                write!(f, "Euler characteristic is {chi}, expected 2")
            }
        }
    }
}

/// Face counts `(f_0, ..., f_d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Complex {
    /// Build a complex from declared facets, validating labels and (in
    /// strict mode) that no declared facet is strictly contained in another.
    /// Exact duplicates are collapsed silently in either mode; lenient mode
    /// additionally drops strictly contained tuples.
    pub fn from_facets(n: usize, facets: &[Vec<Vertex>], strict: bool) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyFacetList);
        }
        let mut canon: Vec<Vec<Vertex>> = Vec::with_capacity(facets.len());
        for (index, tuple) in facets.iter().enumerate() {
            if tuple.is_empty() {
                return Err(Error::EmptyFacet { index });
            }
            let mut t = tuple.clone();
            t.sort_unstable();
            for w in t.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::RepeatedVertex { index, label: w[0] });
                }
            }
            if let Some(&label) = t.last() {
                if label as usize >= n {
                    return Err(Error::LabelOutOfRange { label, n });
                }
            }
            canon.push(t);
        }
        canon.sort();
        canon.dedup();

        // Containment scan: quadratic, but facet lists here are small.
        let mut contained: Vec<bool> = vec![false; canon.len()];
        for i in 0..canon.len() {
            for j in 0..canon.len() {
                if i != j && is_subset(&canon[i], &canon[j]) {
                    if strict {
                        return Err(Error::NonMaximalFacet {
                            inner: canon[i].clone(),
                            outer: canon[j].clone(),
                        });
                    }
                    contained[i] = true;
                    break;
                }
            }
        }
        let canon: Vec<Vec<Vertex>> = canon
            .into_iter()
            .zip(contained)
            .filter_map(|(f, c)| (!c).then_some(f))
            .collect();

        let mut seen = vec![false; n];
        for f in &canon {
            for &v in f {
                seen[v as usize] = true;
            }
        }
        if let Some(label) = seen.iter().position(|&s| !s) {
            return Err(Error::UnusedLabel { label: label as Vertex });
        }
        Ok(Complex { n, facets: canon })
    }

    /// The empty complex: no vertices, no facets.
    pub fn empty() -> Self {
        Complex { n: 0, facets: Vec::new() }
    }

    /// Internal constructor for facet lists already known to be canonical
    /// vertex-wise (each tuple sorted); re-sorts and re-checks cheaply in
    /// debug builds.
    pub(crate) fn from_canonical_parts(n: usize, mut facets: Vec<Vec<Vertex>>) -> Self {
        facets.sort();
        facets.dedup();
        let c = Complex { n, facets };
        debug_assert!(c.check_invariants().is_ok(), "{:?}", c.check_invariants());
        c
    }

    fn check_invariants(&self) -> Result<()> {
        let mut seen = vec![false; self.n];
        for f in &self.facets {
            if f.is_empty() {
                return Err(Error::EmptyFacet { index: 0 });
            }
            for w in f.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::Internal(format!("facet {f:?} not ascending")));
                }
            }
            for &v in f {
                if v as usize >= self.n {
                    return Err(Error::LabelOutOfRange { label: v, n: self.n });
                }
                seen[v as usize] = true;
            }
        }
        if let Some(label) = seen.iter().position(|&s| !s) {
            return Err(Error::UnusedLabel { label: label as Vertex });
        }
        Ok(())
    }

    /// The boundary of the 4-vertex tetrahedron: the smallest triangulated
    /// 2-sphere, and the seed of every stacked construction in this crate.
    pub fn boundary_tetrahedron() -> Self {
        Complex {
            n: 4,
            facets: vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        }
    }

    /// Boundary complex of the cyclic 4-polytope on `n >= 5` vertices: the
    /// 4-subsets selected by the evenness condition (any two vertices
    /// outside a facet must have an even number of facet vertices strictly
    /// between them). For every `n` this is a neighbourly triangulated
    /// 3-sphere.
    pub fn cyclic_polytope_boundary(n: usize) -> Result<Self> {
        if n < 5 {
            return Err(Error::TooFewVertices { n, min: 5 });
        }
        let mut facets = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for d in (c + 1)..n {
                        let s = [a as u32, b as u32, c as u32, d as u32];
                        if gale_even(n, &s) {
                            facets.push(s.to_vec());
                        }
                    }
                }
            }
        }
        Ok(Complex::from_canonical_parts(n, facets))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Dimension, i.e. the largest facet size minus one. The empty complex
    /// reports 0 here; callers that care about emptiness check for it first.
    pub fn dim(&self) -> usize {
        self.facets.iter().map(|f| f.len() - 1).max().unwrap_or(0)
    }

    pub fn facets(&self) -> &[Vec<Vertex>] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// True iff the ascending tuple `f` is one of the facets.
    pub fn is_facet(&self, f: &[Vertex]) -> bool {
        self.facets.binary_search_by(|probe| probe.as_slice().cmp(f)).is_ok()
    }

    /// True iff `face` (ascending) is a face, i.e. contained in some facet.
    pub fn contains_face(&self, face: &[Vertex]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// All faces grouped by dimension, each group sorted.
    pub fn all_faces(&self) -> Vec<Vec<Vec<Vertex>>> {
        if self.facets.is_empty() {
            return Vec::new();
        }
        let dim = self.dim();
        let mut by_dim: Vec<BTreeSet<Vec<Vertex>>> = vec![BTreeSet::new(); dim + 1];
        for facet in &self.facets {
            let k = facet.len();
            for mask in 1u32..(1 << k) {
                let mut face = Vec::with_capacity(mask.count_ones() as usize);
                for (i, &v) in facet.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        face.push(v);
                    }
                }
                by_dim[face.len() - 1].insert(face);
            }
        }
        by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.all_faces().iter().map(|g| g.len() as u64).collect())
    }

    /// Edges of the complex as ascending pairs, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            for i in 0..f.len() {
                for j in (i + 1)..f.len() {
                    set.insert((f[i], f[j]));
                }
            }
        }
        set.into_iter().collect()
    }

    /// 1-skeleton as a `Graph` (vertex labels preserved; requires n <= 64).
    pub fn one_skeleton(&self) -> Result<Graph> {
        let mut g = Graph::new(self.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// k-skeleton as a complex on the same labels: all faces of dimension
    /// at most k, with the inclusion-maximal ones as facets. Those are the
    /// k-dimensional faces plus any original facet of smaller dimension.
    pub fn skeleton(&self, k: usize) -> Complex {
        let faces = self.all_faces();
        let mut facets: Vec<Vec<Vertex>> = Vec::new();
        if k < faces.len() {
            facets.extend(faces[k].iter().cloned());
        }
        for f in &self.facets {
            if f.len() <= k {
                facets.push(f.clone());
            }
        }
        Complex::from_canonical_parts(self.n, facets)
    }

    /// Link of `v`, densely relabelled, together with the map from new
    /// labels back to original ones.
    pub fn link(&self, v: Vertex) -> Result<(Complex, Vec<Vertex>)> {
        if (v as usize) >= self.n {
            return Err(Error::UnknownVertex { vertex: v });
        }
        let mut link_facets: Vec<Vec<Vertex>> = Vec::new();
        let mut labels: BTreeSet<Vertex> = BTreeSet::new();
        for f in &self.facets {
            if f.contains(&v) {
                let rest: Vec<Vertex> = f.iter().copied().filter(|&x| x != v).collect();
                for &x in &rest {
                    labels.insert(x);
                }
                if !rest.is_empty() {
                    link_facets.push(rest);
                }
            }
        }
        let map: Vec<Vertex> = labels.into_iter().collect();
        let inverse: HashMap<Vertex, Vertex> =
            map.iter().enumerate().map(|(i, &old)| (old, i as Vertex)).collect();
        let relabelled: Vec<Vec<Vertex>> = link_facets
            .into_iter()
            .map(|f| {
                let mut g: Vec<Vertex> = f.into_iter().map(|x| inverse[&x]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        if relabelled.is_empty() {
            return Ok((Complex::empty(), map));
        }
        Ok((Complex::from_canonical_parts(map.len(), relabelled), map))
    }

    /// Induced subcomplex on the vertex set `a`: all faces of `self` whose
    /// vertices lie in `a`, densely relabelled by the sorted order of `a`.
    /// Returns the relabelled complex and the map new label -> old label.
    /// The empty set yields the empty complex.
    pub fn induced_subcomplex(&self, a: &[Vertex]) -> (Complex, Vec<Vertex>) {
        let set: BTreeSet<Vertex> = a.iter().copied().collect();
        for &v in &set {
            assert!((v as usize) < self.n, "vertex {v} out of range in induced_subcomplex");
        }
        let map: Vec<Vertex> = set.iter().copied().collect();
        let inverse: HashMap<Vertex, Vertex> =
            map.iter().enumerate().map(|(i, &old)| (old, i as Vertex)).collect();
        // Maximal faces of the induced complex are the inclusion-maximal
        // elements of { facet ∩ A }.
        let mut pieces: Vec<Vec<Vertex>> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|x| set.contains(x)).collect::<Vec<_>>())
            .filter(|p| !p.is_empty())
            .collect();
        pieces.sort();
        pieces.dedup();
        let maximal: Vec<Vec<Vertex>> = pieces
            .iter()
            .filter(|p| !pieces.iter().any(|q| q.len() > p.len() && is_subset(p, q)))
            .cloned()
            .collect();
        if maximal.is_empty() {
            return (Complex::empty(), map);
        }
        let relabelled: Vec<Vec<Vertex>> = maximal
            .into_iter()
            .map(|f| {
                let mut g: Vec<Vertex> = f.into_iter().map(|x| inverse[&x]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        (Complex::from_canonical_parts(map.len(), relabelled), map)
    }

    /// Relabel by a permutation (`perm[old] = new`).
    pub fn permuted(&self, perm: &[Vertex]) -> Complex {
        assert_eq!(perm.len(), self.n);
        let facets: Vec<Vec<Vertex>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<Vertex> = f.iter().map(|&v| perm[v as usize]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        Complex::from_canonical_parts(self.n, facets)
    }

    /// Check the definition of a triangulated 2-sphere condition by
    /// condition, reporting the first failure: purity in dimension 2, every
    /// edge in exactly two facets, every vertex link a single cycle,
    /// connectivity, Euler characteristic 2.
    pub fn sphere_defect(&self) -> Option<SphereDefect> {
        if self.facets.is_empty() {
            return Some(SphereDefect::Empty);
        }
        for f in &self.facets {
            if f.len() != 3 {
                return Some(SphereDefect::NotPure { facet: f.clone() });
            }
        }
        let mut edge_count: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for f in &self.facets {
            for &(i, j) in &[(0, 1), (0, 2), (1, 2)] {
                *edge_count.entry((f[i], f[j])).or_insert(0) += 1;
            }
        }
        let mut bad: Option<(Vertex, Vertex, usize)> = None;
        for (&(u, v), &c) in &edge_count {
            if c != 2 {
                // Deterministic diagnostic: report the lexicographically
                // first offending edge.
                if bad.map_or(true, |(bu, bv, _)| (u, v) < (bu, bv)) {
                    bad = Some((u, v, c));
                }
            }
        }
        if let Some((u, v, count)) = bad {
            return Some(SphereDefect::EdgeFacetCount { edge: (u, v), count });
        }
        for v in 0..self.n as Vertex {
            if self.vertex_link_cycle(v).is_err() {
                return Some(SphereDefect::LinkNotCycle { vertex: v });
            }
        }
        if !self.skeleton_connected() {
            return Some(SphereDefect::Disconnected);
        }
        let chi = self.f_vector().euler_characteristic();
        if chi != 2 {
            return Some(SphereDefect::EulerCharacteristic { chi });
        }
        None
    }

    pub fn is_triangulated_2sphere(&self) -> bool {
        self.sphere_defect().is_none()
    }

    /// Require 2-sphere-ness, turning the defect into an error.
    pub fn require_2sphere(&self) -> Result<()> {
        match self.sphere_defect() {
            None => Ok(()),
            Some(defect) => Err(Error::NotASphere { defect }),
        }
    }

    /// Connectivity of the 1-skeleton via union-find (no 64-vertex cap).
    pub fn skeleton_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for f in &self.facets {
            for w in f.windows(2) {
                let (a, b) = (find(&mut parent, w[0] as usize), find(&mut parent, w[1] as usize));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, 0);
        (0..self.n).all(|v| find(&mut parent, v) == root)
    }

    /// Neighbours of `v` in cyclic order around `v`, for pure 2-dimensional
    /// complexes in which every edge at `v` lies in exactly two facets.
    /// Fails if the link is not one single cycle. The walk starts at the
    /// smallest neighbour and moves towards the smaller of its two link
    /// neighbours, so the result is deterministic.
    pub fn vertex_link_cycle(&self, v: Vertex) -> Result<Vec<Vertex>> {
        let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
        for f in &self.facets {
            if f.len() == 3 && f.contains(&v) {
                let rest: Vec<Vertex> = f.iter().copied().filter(|&x| x != v).collect();
                adj.entry(rest[0]).or_default().push(rest[1]);
                adj.entry(rest[1]).or_default().push(rest[0]);
            }
        }
        if adj.is_empty() {
            return Err(Error::UnknownVertex { vertex: v });
        }
        let not_cycle = || Error::Internal(format!("link of {v} is not a single cycle"));
        for nbrs in adj.values() {
            if nbrs.len() != 2 {
                return Err(not_cycle());
            }
        }
        let start = *adj.keys().min().unwrap();
        let mut cycle = vec![start];
        let first = adj[&start].iter().copied().min().unwrap();
        let mut prev = start;
        let mut here = first;
        while here != start {
            cycle.push(here);
            let nbrs = &adj[&here];
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            prev = here;
            here = next;
        }
        if cycle.len() != adj.len() {
            return Err(not_cycle());
        }
        Ok(cycle)
    }

    /// True iff every pair of vertices spans an edge.
    pub fn is_neighbourly(&self) -> bool {
        self.edges().len() == self.n * (self.n.saturating_sub(1)) / 2
    }

    /// Induced 3-cycles (empty triangles) of a triangulated 2-sphere:
    /// vertex triples spanning three edges but no facet. Sorted
    /// lexicographically.
    pub fn induced_3cycles(&self) -> Result<Vec<[Vertex; 3]>> {
        self.require_2sphere()?;
        let g = self.one_skeleton()?;
        let mut out = Vec::new();
        for u in 0..self.n as Vertex {
            for v in (u + 1)..self.n as Vertex {
                if !g.has_edge(u, v) {
                    continue;
                }
                let common = g.neighbours(u) & g.neighbours(v);
                let mut it = common >> (v + 1) << (v + 1);
                while it != 0 {
                    let w = it.trailing_zeros() as Vertex;
                    it &= it - 1;
                    if !self.is_facet(&[u, v, w]) {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Flagness for triangulated 2-spheres, via absence of induced
    /// 3-cycles. Under this criterion the boundary tetrahedron (n = 4)
    /// counts as flag; see `is_flag_clique` for the general clique
    /// criterion, which it fails.
    pub fn is_flag(&self) -> Result<bool> {
        Ok(self.induced_3cycles()?.is_empty())
    }

    /// General flagness: every clique of the 1-skeleton spans a face. For
    /// 2-spheres with at least 5 vertices this agrees with `is_flag`; it
    /// disagrees exactly on the boundary tetrahedron, whose 4-clique spans
    /// no 3-face.
    pub fn is_flag_clique(&self) -> Result<bool> {
        let g = self.one_skeleton()?;
        // Depth-first enumeration of cliques of size >= 3; prune when the
        // current clique already fails to span a face.
        fn rec(c: &Complex, g: &Graph, clique: &mut Vec<Vertex>, allowed: u64) -> bool {
            let mut it = allowed;
            while it != 0 {
                let v = it.trailing_zeros() as Vertex;
                it &= it - 1;
                clique.push(v);
                let spans = clique.len() < 3 || c.contains_face(clique);
                if spans {
                    let rest = allowed & g.neighbours(v) & !((1u64 << (v + 1)) - 1);
                    if !rec(c, g, clique, rest) {
                        clique.pop();
                        return false;
                    }
                } else {
                    clique.pop();
                    return false;
                }
                clique.pop();
            }
            true
        }
        Ok(rec(self, &g, &mut Vec::new(), g.full_mask()))
    }
}

fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    // Both sorted ascending.
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// Evenness condition for the cyclic 4-polytope: every two non-members
/// i < j must have an even number of members strictly between them.
fn gale_even(n: usize, s: &[u32; 4]) -> bool {
    let member = |x: u32| s.contains(&x);
    for i in 0..n as u32 {
        if member(i) {
            continue;
        }
        for j in (i + 1)..n as u32 {
            if member(j) {
                continue;
            }
            let between = s.iter().filter(|&&x| x > i && x < j).count();
            if between % 2 == 1 {
                return false;
            }
        }
    }
    true
}
