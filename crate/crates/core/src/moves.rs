//! Bistellar moves on triangulated 2-spheres: vertex starring (0-moves),
//! edge flips (1-moves, with the A/B refinement by endpoint degree), and
//! degree-3 vertex removal (2-moves), plus the constructions built from
//! them: stacked spheres, the stackedness test, reduction of an arbitrary
//! 2-sphere to the boundary tetrahedron, and the index-reducing flip that
//! exists on every non-flag sphere with at least six vertices.
//!
//! Vertex labels stay dense `0..n`: a 0-move introduces the fresh vertex
//! `n`, and removing a vertex moves the last label into the freed slot.
//! Reduction sequences are recorded as *forward* (rebuild) moves in the
//! order the reduction discovers them, so replaying them requires
//! `reversed()` first; `build_stacked` records forward moves in forward
//! order and replays directly. Each function documents which convention it
//! uses.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{Complex, Vertex};
use crate::error::{Error, Result};

/// Classification of a 1-move `bd -> ac` by the degrees of `a` and `c`
/// in the complex *before* the move: `OneA` when one of them has degree 3,
/// `OneB` when one has degree exactly 4 and the other at least 4, `Other`
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OneMoveClass {
    OneA,
    OneB,
    Other,
}

impl fmt::Display for OneMoveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneMoveClass::OneA => write!(f, "1A"),
            OneMoveClass::OneB => write!(f, "1B"),
            OneMoveClass::Other => write!(f, "1"),
        }
    }
}

/// One applied move, carrying exactly the data needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveRecord {
    /// Star a new vertex into `facet`; the fresh vertex must come out as
    /// `new_vertex` (always the current vertex count).
    Zero { facet: [Vertex; 3], new_vertex: Vertex },
    /// Flip `removed` to `added` (both stored ascending). `class` records
    /// the A/B refinement; replay re-checks it for `OneA`/`OneB` records,
    /// while `Other` makes no claim.
    One { class: OneMoveClass, removed: (Vertex, Vertex), added: (Vertex, Vertex) },
    /// Remove the degree-3 vertex `removed`, restoring `facet` (its
    /// neighbour triple, in pre-move labels).
    Two { removed: Vertex, facet: [Vertex; 3] },
}

impl MoveRecord {
    /// One-line text form: `0 a b c -> x`, `1A b d -> a c`, `1B b d -> a c`,
    /// `1 b d -> a c`, `2 x -> a b c`.
    pub fn log_line(&self) -> String {
        match self {
            MoveRecord::Zero { facet, new_vertex } => {
                format!("0 {} {} {} -> {}", facet[0], facet[1], facet[2], new_vertex)
            }
            MoveRecord::One { class, removed, added } => {
                format!("{} {} {} -> {} {}", class, removed.0, removed.1, added.0, added.1)
            }
            MoveRecord::Two { removed, facet } => {
                format!("2 {} -> {} {} {}", removed, facet[0], facet[1], facet[2])
            }
        }
    }

    pub fn parse_log_line(line: &str, lineno: usize) -> Result<MoveRecord> {
        let err = |message: String| Error::Parse { line: lineno, message };
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| err(String::from("expected `->` in move line")))?;
        let parse_nums = |part: &str| -> Result<Vec<Vertex>> {
            part.split_whitespace()
                .map(|t| t.parse::<Vertex>().map_err(|_| err(format!("bad number `{t}`"))))
                .collect()
        };
        let mut lhs_tokens = lhs.split_whitespace();
        let kind = lhs_tokens.next().ok_or_else(|| err(String::from("empty move line")))?;
        let lhs_rest: Vec<&str> = lhs_tokens.collect();
        let lhs_nums = parse_nums(&lhs_rest.join(" "))?;
        let rhs_nums = parse_nums(rhs)?;
        match kind {
            "0" => {
                if lhs_nums.len() != 3 || rhs_nums.len() != 1 {
                    return Err(err(String::from("0-move needs `0 a b c -> x`")));
                }
                let mut facet = [lhs_nums[0], lhs_nums[1], lhs_nums[2]];
                facet.sort_unstable();
                Ok(MoveRecord::Zero { facet, new_vertex: rhs_nums[0] })
            }
            "1" | "1A" | "1B" => {
                if lhs_nums.len() != 2 || rhs_nums.len() != 2 {
                    return Err(err(String::from("1-move needs `1 b d -> a c`")));
                }
                let class = match kind {
                    "1A" => OneMoveClass::OneA,
                    "1B" => OneMoveClass::OneB,
                    _ => OneMoveClass::Other,
                };
                Ok(MoveRecord::One {
                    class,
                    removed: sorted_pair(lhs_nums[0], lhs_nums[1]),
                    added: sorted_pair(rhs_nums[0], rhs_nums[1]),
                })
            }
            "2" => {
                if lhs_nums.len() != 1 || rhs_nums.len() != 3 {
                    return Err(err(String::from("2-move needs `2 x -> a b c`")));
                }
                let mut facet = [rhs_nums[0], rhs_nums[1], rhs_nums[2]];
                facet.sort_unstable();
                Ok(MoveRecord::Two { removed: lhs_nums[0], facet })
            }
            other => Err(err(format!("unknown move kind `{other}`"))),
        }
    }
}

/// A start complex plus an ordered list of move records.
///
/// `replay` applies the records in stored order. Reduction routines
/// (`reduce_to_tetrahedron`, the `is_stacked` witness) store records in
/// discovery order — the move rebuilding the *last* reduction step comes
/// last — so their output must be `reversed()` before replaying.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSequence {
    pub start: Complex,
    pub records: Vec<MoveRecord>,
}

impl MoveSequence {
    pub fn replay(&self) -> Result<Complex> {
        let mut x = self.start.clone();
        for (index, record) in self.records.iter().enumerate() {
            x = apply_record(&x, record)
                .map_err(|e| Error::Replay { index, message: e.to_string() })?;
        }
        Ok(x)
    }

    /// Same start, records in reverse order.
    pub fn reversed(&self) -> MoveSequence {
        let mut records = self.records.clone();
        records.reverse();
        MoveSequence { start: self.start.clone(), records }
    }

    /// Text log, one move per line.
    pub fn to_log(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.log_line());
            out.push('\n');
        }
        out
    }
}

/// Parse a move log: one move per line, `#` comments and blank lines
/// ignored.
pub fn parse_move_log(text: &str) -> Result<Vec<MoveRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(MoveRecord::parse_log_line(line, i + 1)?);
    }
    Ok(out)
}

/// Apply one recorded move, validating its preconditions.
pub fn apply_record(x: &Complex, record: &MoveRecord) -> Result<Complex> {
    match record {
        MoveRecord::Zero { facet, new_vertex } => {
            let expect = x.vertex_count() as Vertex;
            if *new_vertex != expect {
                return Err(Error::Internal(format!(
                    "0-move names fresh vertex {new_vertex}, but the next label is {expect}"
                )));
            }
            star_vertex(x, facet).map(|(c, _)| c)
        }
        MoveRecord::One { class, removed, added } => {
            let actual = classify_1_move(x, *removed, *added)?;
            match class {
                OneMoveClass::Other => {}
                claimed if *claimed != actual => {
                    return Err(Error::Internal(format!(
                        "move claims class {claimed} but classifies as {actual}"
                    )));
                }
                _ => {}
            }
            edge_flip(x, *removed, *added).map(|(c, _)| c)
        }
        MoveRecord::Two { removed, facet } => {
            let (c, rec) = unstar_vertex(x, *removed)?;
            let MoveRecord::Two { facet: actual, .. } = rec else { unreachable!() };
            if actual != *facet {
                return Err(Error::Internal(format!(
                    "2-move at {removed} restores facet {actual:?}, log says {facet:?}"
                )));
            }
            Ok(c)
        }
    }
}

fn sorted_pair(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Vertex degrees in the 1-skeleton.
pub fn vertex_degrees(x: &Complex) -> Vec<usize> {
    let mut deg = vec![0usize; x.vertex_count()];
    for (u, v) in x.edges() {
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    deg
}

fn edge_set(x: &Complex) -> HashSet<(Vertex, Vertex)> {
    x.edges().into_iter().collect()
}

/// 0-move: star the fresh vertex `n` into `facet`, replacing it by three
/// facets. Works on any complex in which `facet` is a facet of size 3.
pub fn star_vertex(x: &Complex, facet: &[Vertex; 3]) -> Result<(Complex, MoveRecord)> {
    let mut f = *facet;
    f.sort_unstable();
    if !x.is_facet(&f) {
        return Err(Error::MissingFacet { facet: f.to_vec() });
    }
    let fresh = x.vertex_count() as Vertex;
    let mut facets: Vec<Vec<Vertex>> = Vec::with_capacity(x.facets().len() + 2);
    for g in x.facets() {
        if g.as_slice() != f.as_slice() {
            facets.push(g.clone());
        }
    }
    facets.push(vec![f[0], f[1], fresh]);
    facets.push(vec![f[0], f[2], fresh]);
    facets.push(vec![f[1], f[2], fresh]);
    let out = Complex::from_canonical_parts(x.vertex_count() + 1, facets);
    Ok((out, MoveRecord::Zero { facet: f, new_vertex: fresh }))
}

/// Remove vertex `removed` from a facet list, compacting labels by moving
/// the last label into the freed slot (no-op when `removed` is last).
fn compact_relabel(facets: Vec<Vec<Vertex>>, removed: Vertex, n_before: usize) -> Vec<Vec<Vertex>> {
    let last = (n_before - 1) as Vertex;
    facets
        .into_iter()
        .map(|f| {
            let mut g: Vec<Vertex> =
                f.into_iter().map(|v| if v == last { removed } else { v }).collect();
            g.sort_unstable();
            g
        })
        .collect()
}

/// 2-move: remove a degree-3 vertex and restore the facet spanned by its
/// three neighbours. Fails if the vertex does not have degree exactly 3 or
/// if the neighbour triple already spans a face. Labels are compacted by
/// moving the last label into the freed slot; the record keeps pre-move
/// labels.
pub fn unstar_vertex(x: &Complex, removed: Vertex) -> Result<(Complex, MoveRecord)> {
    let n = x.vertex_count();
    if removed as usize >= n {
        return Err(Error::UnknownVertex { vertex: removed });
    }
    let mut nbrs: Vec<Vertex> = Vec::new();
    for f in x.facets() {
        if f.contains(&removed) {
            for &v in f {
                if v != removed && !nbrs.contains(&v) {
                    nbrs.push(v);
                }
            }
        }
    }
    nbrs.sort_unstable();
    if nbrs.len() != 3 {
        return Err(Error::DegreeNotThree { vertex: removed, degree: nbrs.len() });
    }
    let (a, b, c) = (nbrs[0], nbrs[1], nbrs[2]);
    for pair in [[a, b], [a, c], [b, c]] {
        let mut f = vec![pair[0], pair[1], removed];
        f.sort_unstable();
        if !x.is_facet(&f) {
            return Err(Error::MissingFacet { facet: f });
        }
    }
    if x.contains_face(&[a, b, c]) {
        return Err(Error::FaceObstruction { facet: vec![a, b, c] });
    }
    let mut facets: Vec<Vec<Vertex>> = Vec::with_capacity(x.facets().len() - 2);
    for f in x.facets() {
        if !f.contains(&removed) {
            facets.push(f.clone());
        }
    }
    facets.push(vec![a, b, c]);
    let facets = compact_relabel(facets, removed, n);
    let out = Complex::from_canonical_parts(n - 1, facets);
    Ok((out, MoveRecord::Two { removed, facet: [a, b, c] }))
}

/// The two facets sharing edge `(b, d)`, as their apex vertices. Errors
/// unless there are exactly two.
fn flip_apexes(x: &Complex, b: Vertex, d: Vertex) -> Result<(Vertex, Vertex)> {
    let mut apexes: Vec<Vertex> = Vec::new();
    for f in x.facets() {
        if f.len() == 3 && f.contains(&b) && f.contains(&d) {
            apexes.push(*f.iter().find(|&&v| v != b && v != d).unwrap());
        }
    }
    match apexes.len() {
        0 => Err(Error::MissingEdge { edge: (b, d) }),
        2 => Ok((apexes[0].min(apexes[1]), apexes[0].max(apexes[1]))),
        _ => Err(Error::BadFlipEdge { edge: (b, d) }),
    }
}

/// Classify the 1-move `removed -> added` without applying it. Checks the
/// same preconditions as `edge_flip`.
pub fn classify_1_move(
    x: &Complex,
    removed: (Vertex, Vertex),
    added: (Vertex, Vertex),
) -> Result<OneMoveClass> {
    let (b, d) = sorted_pair(removed.0, removed.1);
    let (a, c) = flip_apexes(x, b, d)?;
    if sorted_pair(added.0, added.1) != (a, c) {
        return Err(Error::FlipMismatch { removed: (b, d), actual: (a, c) });
    }
    if x.contains_face(&[a, c]) {
        return Err(Error::EdgeAlreadyPresent { edge: (a, c) });
    }
    let deg = vertex_degrees(x);
    let (da, dc) = (deg[a as usize], deg[c as usize]);
    if da == 3 || dc == 3 {
        Ok(OneMoveClass::OneA)
    } else if da.min(dc) == 4 {
        Ok(OneMoveClass::OneB)
    } else {
        Ok(OneMoveClass::Other)
    }
}

/// 1-move: replace the two facets over `removed` by the two facets over
/// `added` (the other diagonal of the same quadrilateral). Requires the
/// new diagonal to be a non-edge.
pub fn edge_flip(
    x: &Complex,
    removed: (Vertex, Vertex),
    added: (Vertex, Vertex),
) -> Result<(Complex, MoveRecord)> {
    let class = classify_1_move(x, removed, added)?;
    let (b, d) = sorted_pair(removed.0, removed.1);
    let (a, c) = sorted_pair(added.0, added.1);
    let mut facets: Vec<Vec<Vertex>> = Vec::with_capacity(x.facets().len());
    for f in x.facets() {
        if !(f.contains(&b) && f.contains(&d)) {
            facets.push(f.clone());
        }
    }
    let mut f1 = vec![a, c, b];
    f1.sort_unstable();
    let mut f2 = vec![a, c, d];
    f2.sort_unstable();
    facets.push(f1);
    facets.push(f2);
    let out = Complex::from_canonical_parts(x.vertex_count(), facets);
    Ok((out, MoveRecord::One { class, removed: (b, d), added: (a, c) }))
}

/// All legal 1-moves of a pure 2-complex, as `(removed, added, class)`
/// triples in lexicographic edge order.
pub fn valid_one_moves(x: &Complex) -> Vec<((Vertex, Vertex), (Vertex, Vertex), OneMoveClass)> {
    let edges = x.edges();
    let deg = vertex_degrees(x);
    let edge_lookup: HashSet<(Vertex, Vertex)> = edges.iter().copied().collect();
    let mut out = Vec::new();
    for &(b, d) in &edges {
        let Ok((a, c)) = flip_apexes(x, b, d) else { continue };
        if edge_lookup.contains(&(a, c)) {
            continue;
        }
        let (da, dc) = (deg[a as usize], deg[c as usize]);
        let class = if da == 3 || dc == 3 {
            OneMoveClass::OneA
        } else if da.min(dc) == 4 {
            OneMoveClass::OneB
        } else {
            OneMoveClass::Other
        };
        out.push(((b, d), (a, c), class));
    }
    out
}

/// Build a stacked sphere on `n` vertices by starring `n - 4` times into
/// facets picked by a seeded RNG. The returned sequence starts at the
/// boundary tetrahedron and replays forward (no reversal needed).
pub fn build_stacked(n: usize, seed: u64) -> Result<(Complex, MoveSequence)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_stacked_with_rng(n, &mut rng)
}

fn build_stacked_with_rng(n: usize, rng: &mut ChaCha8Rng) -> Result<(Complex, MoveSequence)> {
    if n < 4 {
        return Err(Error::TooFewVertices { n, min: 4 });
    }
    let start = Complex::boundary_tetrahedron();
    let mut x = start.clone();
    let mut records = Vec::with_capacity(n - 4);
    while x.vertex_count() < n {
        let idx = rng.gen_range(0..x.facets().len());
        let f = &x.facets()[idx];
        let facet = [f[0], f[1], f[2]];
        let (next, rec) = star_vertex(&x, &facet)?;
        records.push(rec);
        x = next;
    }
    Ok((x, MoveSequence { start, records }))
}

/// A pseudorandom triangulated 2-sphere: a seeded stacked sphere shuffled
/// by `flips` random legal 1-moves. Deterministic in `(n, flips, seed)`.
pub fn random_sphere(n: usize, flips: usize, seed: u64) -> Result<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut x, _) = build_stacked_with_rng(n, &mut rng)?;
    for _ in 0..flips {
        let moves = valid_one_moves(&x);
        if moves.is_empty() {
            break;
        }
        let (removed, added, _) = moves[rng.gen_range(0..moves.len())];
        let (next, _) = edge_flip(&x, removed, added)?;
        x = next;
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Reduction to the boundary tetrahedron.
// ---------------------------------------------------------------------------

/// One reduction step: which vertex was removed from the pre-step complex,
/// how many vertices that complex had, and the forward (rebuild) moves in
/// rebuild order, expressed in post-step labels with the fresh vertex
/// encoded as `n_before - 1`.
struct ReductionStep {
    removed: Vertex,
    n_before: usize,
    forward: Vec<MoveRecord>,
}

/// Reduce a 2-sphere to 4 vertices. With `zero_only`, only degree-3
/// removals are allowed and `None` reports a dead end (the sphere is not
/// stacked); otherwise the degree-4 and degree-5 constructions below keep
/// the reduction going, which always succeeds because a planar graph has a
/// vertex of degree at most 5.
fn reduce_steps(x: &Complex, zero_only: bool) -> Result<Option<(Vec<ReductionStep>, Complex)>> {
    x.require_2sphere()?;
    let mut current = x.clone();
    let mut steps: Vec<ReductionStep> = Vec::new();
    while current.vertex_count() > 4 {
        let deg = vertex_degrees(&current);
        let lowest_with = |d: usize| deg.iter().position(|&k| k == d).map(|v| v as Vertex);
        if let Some(v) = lowest_with(3) {
            steps.push(reduce_degree3(&mut current, v)?);
        } else if zero_only {
            return Ok(None);
        } else if let Some(v) = lowest_with(4) {
            steps.push(reduce_degree4(&mut current, v)?);
        } else if let Some(v) = lowest_with(5) {
            steps.push(reduce_degree5(&mut current, v)?);
        } else {
            return Err(Error::Internal(String::from(
                "2-sphere with minimum degree above 5; planarity rules this out",
            )));
        }
    }
    Ok(Some((steps, current)))
}

/// Map a pre-removal label to its post-compaction slot.
fn post_label(v: Vertex, removed: Vertex, n_before: usize) -> Vertex {
    let last = (n_before - 1) as Vertex;
    debug_assert_ne!(v, removed);
    if v == last {
        removed
    } else {
        v
    }
}

fn reduce_degree3(current: &mut Complex, v: Vertex) -> Result<ReductionStep> {
    let n_before = current.vertex_count();
    let fresh = (n_before - 1) as Vertex;
    let (next, rec) = unstar_vertex(current, v)?;
    let MoveRecord::Two { facet, .. } = rec else { unreachable!() };
    let mut f: Vec<Vertex> =
        facet.iter().map(|&w| post_label(w, v, n_before)).collect();
    f.sort_unstable();
    let forward = vec![MoveRecord::Zero { facet: [f[0], f[1], f[2]], new_vertex: fresh }];
    *current = next;
    Ok(ReductionStep { removed: v, n_before, forward })
}

/// Degree-4 reduction: the link of `v` is a 4-cycle (a, b, c, d) and at
/// least one diagonal is a non-edge (otherwise the five vertices would
/// span a K5 inside a planar graph). Remove the star of `v` and fill with
/// the two triangles over that diagonal; the forward moves are one 0-move
/// into `abc` followed by the 1A-flip `ac -> d·fresh`.
fn reduce_degree4(current: &mut Complex, v: Vertex) -> Result<ReductionStep> {
    let n_before = current.vertex_count();
    let fresh = (n_before - 1) as Vertex;
    let cycle = current.vertex_link_cycle(v)?;
    debug_assert_eq!(cycle.len(), 4);
    let edges = edge_set(current);
    let diag1 = sorted_pair(cycle[0], cycle[2]);
    let diag2 = sorted_pair(cycle[1], cycle[3]);
    let missing1 = !edges.contains(&diag1);
    let missing2 = !edges.contains(&diag2);
    let (a, b, c, d) = match (missing1, missing2) {
        (true, true) => {
            // Both diagonals available: take the lexicographically smaller.
            if diag1 <= diag2 {
                (cycle[0], cycle[1], cycle[2], cycle[3])
            } else {
                (cycle[1], cycle[2], cycle[3], cycle[0])
            }
        }
        (true, false) => (cycle[0], cycle[1], cycle[2], cycle[3]),
        (false, true) => (cycle[1], cycle[2], cycle[3], cycle[0]),
        (false, false) => {
            return Err(Error::Internal(format!(
                "both diagonals of the degree-4 link of {v} are edges (K5 in a planar graph)"
            )))
        }
    };
    let mut facets: Vec<Vec<Vertex>> = Vec::with_capacity(current.facets().len() - 2);
    for f in current.facets() {
        if !f.contains(&v) {
            facets.push(f.clone());
        }
    }
    let mut t1 = vec![a, b, c];
    t1.sort_unstable();
    let mut t2 = vec![a, c, d];
    t2.sort_unstable();
    facets.push(t1.clone());
    facets.push(t2);
    let facets = compact_relabel(facets, v, n_before);
    let next = Complex::from_canonical_parts(n_before - 1, facets);
    debug_assert!(next.is_triangulated_2sphere());

    let m = |w: Vertex| post_label(w, v, n_before);
    let mut zero_facet: Vec<Vertex> = t1.iter().map(|&w| m(w)).collect();
    zero_facet.sort_unstable();
    let forward = vec![
        MoveRecord::Zero {
            facet: [zero_facet[0], zero_facet[1], zero_facet[2]],
            new_vertex: fresh,
        },
        MoveRecord::One {
            class: OneMoveClass::OneA,
            removed: sorted_pair(m(a), m(c)),
            added: sorted_pair(m(d), fresh),
        },
    ];
    *current = next;
    Ok(ReductionStep { removed: v, n_before, forward })
}

/// Degree-5 reduction: the link of `v` is a 5-cycle and some link vertex
/// `a` misses both its chords `ac`, `ad` (at most two chords fit in a
/// planar graph). Remove the star of `v` and fill with the fan
/// `abc, acd, ade`; the forward moves are a 0-move into `acd`, the 1A-flip
/// `ac -> b·fresh`, then the 1B-flip `ad -> e·fresh`.
fn reduce_degree5(current: &mut Complex, v: Vertex) -> Result<ReductionStep> {
    let n_before = current.vertex_count();
    let fresh = (n_before - 1) as Vertex;
    let cycle = current.vertex_link_cycle(v)?;
    debug_assert_eq!(cycle.len(), 5);
    let edges = edge_set(current);
    let mut choice: Option<(usize, bool)> = None;
    for i in 0..5 {
        let a = cycle[i];
        let c1 = sorted_pair(a, cycle[(i + 2) % 5]);
        let c2 = sorted_pair(a, cycle[(i + 3) % 5]);
        if !edges.contains(&c1) && !edges.contains(&c2) {
            match choice {
                Some((j, _)) if cycle[j] <= a => {}
                _ => choice = Some((i, true)),
            }
        }
    }
    let Some((i, _)) = choice else {
        return Err(Error::Internal(format!(
            "no chord-free vertex on the degree-5 link of {v}; planarity rules this out"
        )));
    };
    // Orient the cycle so the successor of `a` is its smaller neighbour.
    let succ = cycle[(i + 1) % 5];
    let pred = cycle[(i + 4) % 5];
    let at = |k: usize| {
        if succ <= pred {
            cycle[(i + k) % 5]
        } else {
            cycle[(i + 5 - k) % 5]
        }
    };
    let (a, b, c, d, e) = (at(0), at(1), at(2), at(3), at(4));

    let mut facets: Vec<Vec<Vertex>> = Vec::with_capacity(current.facets().len() - 2);
    for f in current.facets() {
        if !f.contains(&v) {
            facets.push(f.clone());
        }
    }
    for tri in [[a, b, c], [a, c, d], [a, d, e]] {
        let mut t = tri.to_vec();
        t.sort_unstable();
        facets.push(t);
    }
    let facets = compact_relabel(facets, v, n_before);
    let next = Complex::from_canonical_parts(n_before - 1, facets);
    debug_assert!(next.is_triangulated_2sphere());

    let m = |w: Vertex| post_label(w, v, n_before);
    let mut zero_facet = vec![m(a), m(c), m(d)];
    zero_facet.sort_unstable();
    let forward = vec![
        MoveRecord::Zero {
            facet: [zero_facet[0], zero_facet[1], zero_facet[2]],
            new_vertex: fresh,
        },
        MoveRecord::One {
            class: OneMoveClass::OneA,
            removed: sorted_pair(m(a), m(c)),
            added: sorted_pair(m(b), fresh),
        },
        MoveRecord::One {
            class: OneMoveClass::OneB,
            removed: sorted_pair(m(a), m(d)),
            added: sorted_pair(m(e), fresh),
        },
    ];
    *current = next;
    Ok(ReductionStep { removed: v, n_before, forward })
}

/// Stitch reduction steps into a single record list. Records come out in
/// discovery order (the rebuild move for the first reduction step last);
/// reversing the sequence and replaying from its start rebuilds the
/// original sphere up to relabelling.
fn assemble_sequence(steps: Vec<ReductionStep>, start: Complex) -> MoveSequence {
    // pi[s] = label, in the replayed complex, of the vertex sitting in
    // slot s of the current reduction complex.
    let mut pi: Vec<Vertex> = (0..start.vertex_count() as Vertex).collect();
    let mut replay_order: Vec<MoveRecord> = Vec::new();
    for step in steps.iter().rev() {
        let fresh = (step.n_before - 1) as Vertex;
        let tr = |w: Vertex| if w == fresh { fresh } else { pi[w as usize] };
        for rec in &step.forward {
            replay_order.push(translate_record(rec, &tr));
        }
        let mut next_pi = vec![0 as Vertex; step.n_before];
        for y in 0..step.n_before as Vertex {
            next_pi[y as usize] = if y == step.removed {
                fresh
            } else if y == fresh {
                pi[step.removed as usize]
            } else {
                pi[y as usize]
            };
        }
        pi = next_pi;
    }
    replay_order.reverse();
    MoveSequence { start, records: replay_order }
}

fn translate_record(rec: &MoveRecord, tr: &dyn Fn(Vertex) -> Vertex) -> MoveRecord {
    match rec {
        MoveRecord::Zero { facet, new_vertex } => {
            let mut f: Vec<Vertex> = facet.iter().map(|&w| tr(w)).collect();
            f.sort_unstable();
            MoveRecord::Zero { facet: [f[0], f[1], f[2]], new_vertex: *new_vertex }
        }
        MoveRecord::One { class, removed, added } => MoveRecord::One {
            class: *class,
            removed: sorted_pair(tr(removed.0), tr(removed.1)),
            added: sorted_pair(tr(added.0), tr(added.1)),
        },
        MoveRecord::Two { removed, facet } => {
            let mut f: Vec<Vertex> = facet.iter().map(|&w| tr(w)).collect();
            f.sort_unstable();
            MoveRecord::Two { removed: tr(*removed), facet: [f[0], f[1], f[2]] }
        }
    }
}

/// Stackedness test by greedy reduction: repeatedly remove the
/// lowest-labelled degree-3 vertex. For 2-spheres this greedy order is
/// complete — removing any degree-3 vertex of a stacked sphere leaves a
/// stacked sphere — so reaching 4 vertices is equivalent to stackedness.
/// Returns the witness rebuild sequence (discovery order; reverse to
/// replay) when stacked.
pub fn is_stacked(x: &Complex) -> Result<Option<MoveSequence>> {
    match reduce_steps(x, true)? {
        None => Ok(None),
        Some((steps, start)) => Ok(Some(assemble_sequence(steps, start))),
    }
}

/// Reduce an arbitrary triangulated 2-sphere to the boundary tetrahedron.
/// Every record in the output is a 0-move, a 1A-move, or a 1B-move, stored
/// in discovery order: `reversed().replay()` rebuilds a sphere isomorphic
/// to the input.
pub fn reduce_to_tetrahedron(x: &Complex) -> Result<MoveSequence> {
    let Some((steps, start)) = reduce_steps(x, false)? else {
        unreachable!("full reduction cannot dead-end");
    };
    Ok(assemble_sequence(steps, start))
}

/// On a non-flag sphere with at least six vertices, find an edge flip that
/// strictly lowers the separation index. The flip is read off the
/// lexicographically first induced 3-cycle {u, v, w}: the cycle splits the
/// sphere into two discs; on a disc with at least two interior vertices,
/// orient the boundary so the apexes b (over uv) and c (over vw) differ
/// and bw is a non-edge, then flip uv to ab, where a is the apex of uv on
/// the other disc. a and b lie on opposite sides of the cycle, so ab is
/// never an edge.
pub fn index_reducing_flip(t: &Complex) -> Result<(Complex, MoveRecord)> {
    t.require_2sphere()?;
    let n = t.vertex_count();
    if n < 6 {
        return Err(Error::TooFewVertices { n, min: 6 });
    }
    let cycles = t.induced_3cycles()?;
    let Some(&tri) = cycles.first() else {
        return Err(Error::NoInducedThreeCycle);
    };
    let g = t.one_skeleton()?;
    let tri_mask = tri.iter().fold(0u64, |m, &v| m | 1 << v);
    let rest = g.full_mask() & !tri_mask;

    // The induced 3-cycle separates the sphere: the skeleton minus the
    // three cycle vertices has exactly two components, the disc interiors.
    let seed = rest & rest.wrapping_neg();
    let mut comp1 = seed;
    let mut frontier = seed;
    while frontier != 0 {
        let mut reach = 0u64;
        let mut it = frontier;
        while it != 0 {
            let v = it.trailing_zeros();
            reach |= g.neighbours(v);
            it &= it - 1;
        }
        frontier = reach & rest & !comp1;
        comp1 |= frontier;
    }
    let comp2 = rest & !comp1;
    if comp2 == 0 || g.component_count(comp2) != 1 {
        return Err(Error::Internal(String::from(
            "induced 3-cycle does not split the sphere into two discs",
        )));
    }
    let (side1, side2) = if comp1.count_ones() >= comp2.count_ones() {
        (comp1, comp2)
    } else {
        (comp2, comp1)
    };
    debug_assert!(side1.count_ones() >= 2, "n >= 6 forces a side with two interior vertices");

    let apex_in = |p: Vertex, q: Vertex, side: u64| -> Result<Vertex> {
        for f in t.facets() {
            if f.contains(&p) && f.contains(&q) {
                let z = *f.iter().find(|&&x| x != p && x != q).unwrap();
                if side >> z & 1 == 1 {
                    return Ok(z);
                }
            }
        }
        Err(Error::Internal(format!("no facet over ({p}, {q}) on the requested side")))
    };

    let [u, v, w] = tri;
    let orderings =
        [(u, v, w), (u, w, v), (v, u, w), (v, w, u), (w, u, v), (w, v, u)];
    for (p, q, r) in orderings {
        let b = apex_in(p, q, side1)?;
        let c = apex_in(q, r, side1)?;
        if b != c && !g.has_edge(b, r) {
            let a = apex_in(p, q, side2)?;
            debug_assert!(!g.has_edge(a, b), "apexes on opposite sides cannot be adjacent");
            return edge_flip(t, (p, q), (a, b));
        }
    }
    Err(Error::Internal(String::from(
        "no orientation of the induced 3-cycle admits the flip; disc reasoning rules this out",
    )))
}
