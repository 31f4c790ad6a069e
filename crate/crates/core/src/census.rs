//! Canonical forms and exhaustive enumeration of triangulated 2-spheres.
//!
//! The canonical code of a sphere is built from its rotation system (the
//! cyclic neighbour order around each vertex, read off a coherent facet
//! orientation). For a root directed edge and a sense of rotation, a
//! breadth-first relabelling is fully determined: the root gets label 0,
//! its partner is visited first, and each vertex's rotation is read
//! starting from the neighbour that discovered it. The code bytes are
//! `[n]` followed by, per vertex in label order, its degree and its
//! rotation as new labels. The canonical code is the lexicographic
//! minimum over all root edges whose tail has minimum degree (byte 1 of a
//! code is the root degree, so no other root can win) and both senses;
//! minimising over the senses also makes the code independent of which of
//! the two sphere orientations the facet list happens to induce. Equal
//! codes mean isomorphic spheres, reflections included.
//!
//! Enumeration goes level by level. A sphere on n + 1 vertices whose
//! minimum degree is 3 is a 0-move on a sphere on n vertices; with
//! minimum degree 4 it is a 0-move followed by a 1A-move adding an edge
//! at the fresh vertex; with minimum degree 5 (the planar maximum) a
//! 0-move, such a 1A-move, and then a 1B-move adding another edge at the
//! fresh vertex. Applying all three batches to every sphere of one level
//! and deduplicating by canonical code therefore yields every sphere of
//! the next.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{Complex, Vertex};
use crate::error::{Error, Result};
use crate::moves::{edge_flip, is_stacked, star_vertex, valid_one_moves, OneMoveClass};
use crate::rational::Rational;
use crate::separation::{check_cap, separation_index};

/// Vertex cap for enumeration; the class counts grow roughly 6-fold per
/// vertex.
pub const CENSUS_CAP: usize = 12;

const UNSET: Vertex = Vertex::MAX;

/// Isomorphism-invariant byte string for a triangulated 2-sphere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn hex(&self) -> String {
        let mut out = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            out.push_str(&format!("{b:02x}"));
        }
        out
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

/// Rotation tables: `rot[p][q] = r` when r follows q counterclockwise
/// around p (for the orientation the facet list happens to induce), and
/// `rot_inv` is the reverse sense.
struct RotationSystem {
    rot: Vec<Vec<Vertex>>,
    rot_inv: Vec<Vec<Vertex>>,
    deg: Vec<usize>,
}

fn rotation_system(x: &Complex) -> Result<RotationSystem> {
    x.require_2sphere()?;
    let n = x.vertex_count();
    if n > 64 {
        return Err(Error::GraphTooLarge { n });
    }
    let facets = x.facets();
    // Which facets lie over each edge.
    let mut over_edge: BTreeMap<(Vertex, Vertex), Vec<usize>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        for (a, b) in [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])] {
            over_edge.entry((a, b)).or_default().push(i);
        }
    }
    // Coherent orientation by propagation from facet 0: if an oriented
    // facet traverses a shared edge as (p, q), its neighbour must traverse
    // it as (q, p).
    let mut oriented: Vec<Option<[Vertex; 3]>> = vec![None; facets.len()];
    oriented[0] = Some([facets[0][0], facets[0][1], facets[0][2]]);
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        let [p, q, r] = oriented[i].unwrap();
        for (a, b) in [(p, q), (q, r), (r, p)] {
            let key = (a.min(b), a.max(b));
            let pair = &over_edge[&key];
            let j = if pair[0] == i { pair[1] } else { pair[0] };
            let s = *facets[j].iter().find(|&&v| v != a && v != b).unwrap();
            let want = [b, a, s];
            match oriented[j] {
                None => {
                    oriented[j] = Some(want);
                    stack.push(j);
                }
                Some(existing) => {
                    debug_assert!(
                        existing == want || existing == [a, s, b] || existing == [s, b, a],
                        "incoherent orientation on a 2-sphere"
                    );
                }
            }
        }
    }
    let mut rot = vec![vec![UNSET; n]; n];
    let mut rot_inv = vec![vec![UNSET; n]; n];
    for o in oriented {
        let [p, q, r] = o.expect("dual graph of a 2-sphere is connected");
        for (a, b, c) in [(p, q, r), (q, r, p), (r, p, q)] {
            rot[a as usize][b as usize] = c;
            rot_inv[a as usize][c as usize] = b;
        }
    }
    let mut deg = vec![0usize; n];
    for (u, v) in x.edges() {
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    Ok(RotationSystem { rot, rot_inv, deg })
}

fn code_for_root(
    rs: &RotationSystem,
    n: usize,
    root: (Vertex, Vertex),
    mirror: bool,
) -> Vec<u8> {
    let table = if mirror { &rs.rot_inv } else { &rs.rot };
    let step = |x: Vertex, w: Vertex| table[x as usize][w as usize];
    let mut label = vec![UNSET; n];
    let mut start_nbr = vec![UNSET; n];
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    label[root.0 as usize] = 0;
    start_nbr[root.0 as usize] = root.1;
    order.push(root.0);
    let mut next = 1 as Vertex;
    let mut qi = 0;
    while qi < order.len() {
        let x = order[qi];
        qi += 1;
        let s = start_nbr[x as usize];
        let mut w = s;
        loop {
            if label[w as usize] == UNSET {
                label[w as usize] = next;
                next += 1;
                start_nbr[w as usize] = x;
                order.push(w);
            }
            w = step(x, w);
            if w == s {
                break;
            }
        }
    }
    debug_assert_eq!(order.len(), n);
    let mut code = Vec::with_capacity(7 * n - 11);
    code.push(n as u8);
    for &x in &order {
        code.push(rs.deg[x as usize] as u8);
        let s = start_nbr[x as usize];
        let mut w = s;
        loop {
            code.push(label[w as usize] as u8);
            w = step(x, w);
            if w == s {
                break;
            }
        }
    }
    code
}

/// Canonical code of a triangulated 2-sphere.
pub fn canonical_code(x: &Complex) -> Result<CanonicalCode> {
    let rs = rotation_system(x)?;
    let n = x.vertex_count();
    let min_deg = *rs.deg.iter().min().unwrap();
    let mut best: Option<Vec<u8>> = None;
    for u in 0..n {
        if rs.deg[u] != min_deg {
            continue;
        }
        for v in 0..n {
            if rs.rot[u][v] == UNSET {
                continue;
            }
            for mirror in [false, true] {
                let code = code_for_root(&rs, n, (u as Vertex, v as Vertex), mirror);
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    Ok(CanonicalCode(best.expect("sphere has at least one edge")))
}

/// Do two 2-spheres have the same combinatorial type (reflections count)?
pub fn isomorphic_spheres(a: &Complex, b: &Complex) -> Result<bool> {
    Ok(canonical_code(a)? == canonical_code(b)?)
}

/// One isomorphism class in a census level.
#[derive(Debug, Clone)]
pub struct CensusEntry {
    pub code: CanonicalCode,
    pub complex: Complex,
    pub s: Rational,
    pub stacked: bool,
    pub flag: bool,
}

/// All isomorphism classes of n-vertex triangulated 2-spheres, sorted by
/// canonical code.
#[derive(Debug, Clone)]
pub struct Census {
    pub n: usize,
    pub entries: Vec<CensusEntry>,
}

/// Enumerate every level from 4 up to `n` vertices.
pub fn sphere_censuses_up_to(n: usize) -> Result<Vec<Census>> {
    censuses_inner(n, false)
}

/// Belt-and-braces completeness cross-check: the same level scheme, but
/// following each 0-move by *unrestricted* single and double 1-moves (any
/// class, any edge) instead of only the fresh-vertex 1A/1B pattern. It
/// can only produce a superset of each level, so equal levels confirm the
/// restricted batches lose nothing. Much slower; meant for small n.
pub fn sphere_censuses_up_to_permissive(n: usize) -> Result<Vec<Census>> {
    censuses_inner(n, true)
}

fn censuses_inner(n: usize, permissive: bool) -> Result<Vec<Census>> {
    if n < 4 {
        return Err(Error::TooFewVertices { n, min: 4 });
    }
    check_cap(n, CENSUS_CAP)?;
    let s24 = Complex::boundary_tetrahedron();
    let mut levels: Vec<BTreeMap<CanonicalCode, Complex>> = Vec::with_capacity(n - 3);
    let mut first = BTreeMap::new();
    first.insert(canonical_code(&s24)?, s24);
    levels.push(first);
    for k in 4..n {
        let mut next: BTreeMap<CanonicalCode, Complex> = BTreeMap::new();
        let fresh = k as Vertex;
        let add = |map: &mut BTreeMap<CanonicalCode, Complex>, z: Complex| -> Result<()> {
            let code = canonical_code(&z)?;
            map.entry(code).or_insert(z);
            Ok(())
        };
        let first_keep = |ad: (Vertex, Vertex), cls: OneMoveClass| {
            permissive || (cls == OneMoveClass::OneA && (ad.0 == fresh || ad.1 == fresh))
        };
        let second_keep = |ad: (Vertex, Vertex), cls: OneMoveClass| {
            permissive || (cls == OneMoveClass::OneB && (ad.0 == fresh || ad.1 == fresh))
        };
        for parent in levels[k - 4].values() {
            for fi in 0..parent.facets().len() {
                let f = &parent.facets()[fi];
                let facet = [f[0], f[1], f[2]];
                let (z0, _) = star_vertex(parent, &facet)?;
                for (rm, ad, cls) in valid_one_moves(&z0) {
                    if !first_keep(ad, cls) {
                        continue;
                    }
                    let (z1, _) = edge_flip(&z0, rm, ad)?;
                    for (rm2, ad2, cls2) in valid_one_moves(&z1) {
                        if !second_keep(ad2, cls2) {
                            continue;
                        }
                        let (z2, _) = edge_flip(&z1, rm2, ad2)?;
                        add(&mut next, z2)?;
                    }
                    add(&mut next, z1)?;
                }
                add(&mut next, z0)?;
            }
        }
        levels.push(next);
    }
    levels
        .into_iter()
        .enumerate()
        .map(|(i, level)| census_from_level(4 + i, level))
        .collect()
}

/// Enumerate the n-vertex level only.
pub fn sphere_census(n: usize) -> Result<Census> {
    Ok(sphere_censuses_up_to(n)?.pop().expect("at least one level"))
}

fn census_from_level(n: usize, level: BTreeMap<CanonicalCode, Complex>) -> Result<Census> {
    let mut entries = Vec::with_capacity(level.len());
    for (code, complex) in level {
        let s = separation_index(&complex.one_skeleton()?);
        let stacked = is_stacked(&complex)?.is_some();
        let flag = complex.is_flag()?;
        entries.push(CensusEntry { code, complex, s, stacked, flag });
    }
    Ok(Census { n, entries })
}

/// Extremal statistics of one census level.
#[derive(Debug, Clone)]
pub struct ExtremalReport {
    pub n: usize,
    pub classes: usize,
    pub max_s: Rational,
    pub max_achievers: usize,
    pub max_achievers_all_stacked: bool,
    pub stacked_count: usize,
    pub min_s: Rational,
    pub min_achievers: usize,
    pub min_achieved_by_flag: bool,
    pub flag_count: usize,
    pub distinct_s: usize,
    pub distinct_s_among_flag: usize,
}

pub fn classify_census(census: &Census) -> ExtremalReport {
    assert!(!census.entries.is_empty());
    let max_s = census.entries.iter().map(|e| &e.s).max().unwrap().clone();
    let min_s = census.entries.iter().map(|e| &e.s).min().unwrap().clone();
    let max_entries: Vec<&CensusEntry> =
        census.entries.iter().filter(|e| e.s == max_s).collect();
    let min_entries: Vec<&CensusEntry> =
        census.entries.iter().filter(|e| e.s == min_s).collect();
    let mut all_s: Vec<&Rational> = census.entries.iter().map(|e| &e.s).collect();
    all_s.sort();
    all_s.dedup();
    let mut flag_s: Vec<&Rational> =
        census.entries.iter().filter(|e| e.flag).map(|e| &e.s).collect();
    flag_s.sort();
    flag_s.dedup();
    ExtremalReport {
        n: census.n,
        classes: census.entries.len(),
        max_s,
        max_achievers: max_entries.len(),
        max_achievers_all_stacked: max_entries.iter().all(|e| e.stacked),
        stacked_count: census.entries.iter().filter(|e| e.stacked).count(),
        min_s,
        min_achievers: min_entries.len(),
        min_achieved_by_flag: min_entries.iter().any(|e| e.flag),
        flag_count: census.entries.iter().filter(|e| e.flag).count(),
        distinct_s: all_s.len(),
        distinct_s_among_flag: flag_s.len(),
    }
}

/// One hex code per line.
pub fn codes_text(census: &Census) -> String {
    let mut out = String::new();
    for e in &census.entries {
        out.push_str(&e.code.hex());
        out.push('\n');
    }
    out
}

/// CSV with the per-class invariants.
pub fn csv_text(census: &Census) -> String {
    let mut out = String::from("code,f0,s_num,s_den,stacked,flag\n");
    for e in &census.entries {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            e.code.hex(),
            census.n,
            e.s.numer(),
            e.s.denom(),
            e.stacked,
            e.flag
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::octahedron;
    use crate::moves::{build_stacked, random_sphere};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn code_shape() {
        let code = canonical_code(&Complex::boundary_tetrahedron()).unwrap();
        assert_eq!(code.0.len(), 7 * 4 - 11);
        assert_eq!(code.0[0], 4);
        assert_eq!(code.0[1], 3);
        assert_eq!(code.hex().len(), 2 * (7 * 4 - 11));
    }

    #[test]
    fn permutation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..4u64 {
            let x = random_sphere(9, 12, seed).unwrap();
            let code = canonical_code(&x).unwrap();
            for _ in 0..25 {
                let mut perm: Vec<Vertex> = (0..9).collect();
                perm.shuffle(&mut rng);
                let y = x.permuted(&perm);
                assert_eq!(canonical_code(&y).unwrap(), code);
            }
        }
    }

    #[test]
    fn distinct_types_get_distinct_codes() {
        let (stacked, _) = build_stacked(6, 0).unwrap();
        assert!(!isomorphic_spheres(&stacked, &octahedron()).unwrap());
        assert!(isomorphic_spheres(&octahedron(), &octahedron()).unwrap());
    }

    #[test]
    fn small_census_counts() {
        let levels = sphere_censuses_up_to(8).unwrap();
        let counts: Vec<usize> = levels.iter().map(|c| c.entries.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14]);
    }

    #[test]
    fn census_level_invariants() {
        let census = sphere_census(7).unwrap();
        assert_eq!(census.entries.len(), 5);
        for e in &census.entries {
            assert_eq!(e.complex.vertex_count(), 7);
            assert!(e.complex.is_triangulated_2sphere());
            assert_eq!(canonical_code(&e.complex).unwrap(), e.code);
        }
        // Codes are strictly increasing (sorted, no duplicates).
        for pair in census.entries.windows(2) {
            assert!(pair[0].code < pair[1].code);
        }
        let report = classify_census(&census);
        assert_eq!(report.classes, 5);
        assert_eq!(report.max_s, crate::separation::stacked_value(7));
        assert!(report.max_achievers_all_stacked);
        assert_eq!(report.stacked_count, report.max_achievers);
    }

    #[test]
    fn artifact_text_is_stable() {
        let census = sphere_census(6).unwrap();
        let codes = codes_text(&census);
        assert_eq!(codes.lines().count(), 2);
        let csv = csv_text(&census);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "code,f0,s_num,s_den,stacked,flag");
        assert_eq!(lines.len(), 3);
        // The two 6-vertex spheres: the octahedron (flag, s = -4/5) and
        // the stacked sphere (s = -7/10).
        assert!(csv.contains(",-4,5,false,true"));
        assert!(csv.contains(",-7,10,true,false"));
    }

    #[test]
    fn census_cap() {
        let err = sphere_censuses_up_to(13).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
