//! Simplicial homology over Z2, and the subset-averaged invariants built
//! on it: the sigma vector (whose zeroth entry is the separation index of
//! the 1-skeleton) and the mu vector, plus closed-3-manifold validation,
//! the tight-neighbourly equation, the all-links-stacked (Walkup) class
//! test, and a brute-force Z2 tightness check.
//!
//! Faces are bitmasks over at most 64 vertices; boundary matrices are
//! column bitsets and ranks come from plain Gaussian elimination. All
//! subset sweeps accumulate into per-size integers and divide by binomials
//! once at the end, exactly.

use num::{BigInt, BigRational};
use serde::Serialize;

use crate::complex::{Complex, Vertex};
use crate::error::{Error, Result};
use crate::moves::is_stacked;
use crate::rational::{
    binomial_big, binomial_i128, decimal_6sig, fraction_str, rat, rat_int, Rational,
};
use crate::separation::{check_cap, separation_index, stacked_value};

/// Vertex cap for the full-subset sigma sweep (2^n homology computations).
pub const SIGMA_CAP: usize = 16;
/// Vertex cap for the brute-force tightness check.
pub const TIGHT_CAP: usize = 14;

/// Faces of every dimension as sorted bitmasks.
fn face_masks(x: &Complex) -> Result<Vec<Vec<u64>>> {
    if x.vertex_count() > 64 {
        return Err(Error::GraphTooLarge { n: x.vertex_count() });
    }
    Ok(x.all_faces()
        .iter()
        .map(|per_dim| {
            let mut masks: Vec<u64> = per_dim
                .iter()
                .map(|f| f.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect();
            masks.sort_unstable();
            masks
        })
        .collect())
}

fn first_set(col: &[u64]) -> Option<(usize, u32)> {
    col.iter()
        .enumerate()
        .find(|(_, &b)| b != 0)
        .map(|(blk, &b)| (blk, b.trailing_zeros()))
}

/// Rank of a Z2 matrix given as column bitsets; columns are consumed.
fn rank_z2(cols: &mut [Vec<u64>]) -> usize {
    let mut pivots: Vec<(usize, u32, usize)> = Vec::new();
    for c in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(c);
        let col = &mut rest[0];
        for &(blk, bit, p) in &pivots {
            if col[blk] >> bit & 1 == 1 {
                for (cb, pb) in col.iter_mut().zip(&done[p]) {
                    *cb ^= *pb;
                }
            }
        }
        if let Some((blk, bit)) = first_set(col) {
            pivots.push((blk, bit, c));
        }
    }
    pivots.len()
}

/// Columns of the boundary map from `upper` faces to `lower` faces; both
/// lists must be sorted masks, and `lower` must contain every facet of
/// every `upper` face.
fn boundary_cols(upper: &[u64], lower: &[u64]) -> Vec<Vec<u64>> {
    let blocks = lower.len().div_ceil(64);
    upper
        .iter()
        .map(|&f| {
            let mut col = vec![0u64; blocks];
            let mut bits = f;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                let row = lower
                    .binary_search(&(f ^ b))
                    .expect("faces are closed under taking subsets");
                col[row / 64] |= 1 << (row % 64);
                bits &= bits - 1;
            }
            col
        })
        .collect()
}

/// Unreduced Z2 Betti numbers from per-dimension face masks.
fn betti_from_masks(masks: &[Vec<u64>]) -> Vec<u64> {
    let top = masks.len();
    let mut ranks = vec![0usize; top + 1];
    for k in 1..top {
        let mut cols = boundary_cols(&masks[k], &masks[k - 1]);
        ranks[k] = rank_z2(&mut cols);
    }
    (0..top)
        .map(|k| {
            let rank_in = if k == 0 { 0 } else { ranks[k] };
            (masks[k].len() - rank_in - ranks[k + 1]) as u64
        })
        .collect()
}

/// Unreduced Z2 Betti numbers, indexed 0..=dim.
pub fn betti_z2(x: &Complex) -> Result<Vec<u64>> {
    if x.is_empty() {
        return Err(Error::EmptyFacetList);
    }
    let dim = x.dim();
    if dim > 3 {
        return Err(Error::DimensionTooHigh { dim, max: 3 });
    }
    Ok(betti_from_masks(&face_masks(x)?))
}

/// The sigma vector: sigma_i = sum over all vertex subsets A of the
/// reduced Betti number of the induced subcomplex, weighted by
/// 1 / C(n, |A|). Reduction only matters in dimension 0, where the empty
/// set contributes -1 and every nonempty A contributes its component
/// count minus one — making sigma_0 the separation index of the
/// 1-skeleton. Exponential in n (one homology computation per subset).
pub fn sigma_vector(x: &Complex) -> Result<Vec<Rational>> {
    if x.is_empty() {
        return Err(Error::EmptyFacetList);
    }
    let n = x.vertex_count();
    check_cap(n, SIGMA_CAP)?;
    let dim = x.dim();
    if dim > 3 {
        return Err(Error::DimensionTooHigh { dim, max: 3 });
    }
    let masks = face_masks(x)?;
    let top = masks.len();
    let mut sums = vec![vec![0i128; n + 1]; top];
    sums[0][0] = -1;
    for a in 1..(1u64 << n) {
        let size = a.count_ones() as usize;
        let local: Vec<Vec<u64>> = masks
            .iter()
            .map(|per| per.iter().copied().filter(|&f| f & !a == 0).collect())
            .collect();
        let b = betti_from_masks(&local);
        sums[0][size] += b[0] as i128 - 1;
        for i in 1..top {
            sums[i][size] += b[i] as i128;
        }
    }
    Ok(sums
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(size, &t)| BigRational::new(BigInt::from(t), binomial_big(n, size)))
                .sum()
        })
        .collect())
}

/// The mu vector: mu_0 = 1 and, for i >= 1,
/// mu_i = [i == 1] + (1/n) * sum over vertices of sigma_{i-1} of the
/// vertex link. Length dim + 1.
pub fn mu_vector(x: &Complex) -> Result<Vec<Rational>> {
    if x.is_empty() {
        return Err(Error::EmptyFacetList);
    }
    let n = x.vertex_count();
    let dim = x.dim();
    let mut link_sigma = Vec::with_capacity(n);
    for v in 0..n as Vertex {
        let (lk, _) = x.link(v)?;
        link_sigma.push(sigma_vector(&lk)?);
    }
    let mut mu = vec![rat_int(1)];
    for i in 1..=dim {
        let mut acc = rat_int(0);
        for ls in &link_sigma {
            if let Some(s) = ls.get(i - 1) {
                acc += s.clone();
            }
        }
        let base = if i == 1 { rat_int(1) } else { rat_int(0) };
        mu.push(base + acc / rat_int(n as i128));
    }
    Ok(mu)
}

/// mu_1 directly: 1 + (1/n) * sum of the links' separation indices. Agrees
/// with `mu_vector` but costs only one connected-set sweep per link.
pub fn mu_one(x: &Complex) -> Result<Rational> {
    if x.is_empty() {
        return Err(Error::EmptyFacetList);
    }
    let n = x.vertex_count();
    let mut acc = rat_int(0);
    for v in 0..n as Vertex {
        let (lk, _) = x.link(v)?;
        acc += separation_index(&lk.one_skeleton()?);
    }
    Ok(rat_int(1) + acc / rat_int(n as i128))
}

/// Check that `x` is a closed connected 3-manifold triangulation: pure of
/// dimension 3, every vertex link a triangulated 2-sphere, connected.
pub fn validate_3manifold(x: &Complex) -> Result<()> {
    if x.is_empty() {
        return Err(Error::EmptyFacetList);
    }
    let dim = x.dim();
    if dim != 3 {
        return Err(Error::NotManifold3 { reason: format!("dimension {dim}, expected 3") });
    }
    if let Some(f) = x.facets().iter().find(|f| f.len() != 4) {
        return Err(Error::NotManifold3 {
            reason: format!("facet {f:?} has dimension {}", f.len() - 1),
        });
    }
    for v in 0..x.vertex_count() as Vertex {
        let (lk, _) = x.link(v)?;
        if let Some(defect) = lk.sphere_defect() {
            return Err(Error::LinkNotSphere { vertex: v, defect });
        }
    }
    if !x.skeleton_connected() {
        return Err(Error::NotConnected);
    }
    Ok(())
}

/// Is every vertex link a stacked sphere? (Walkup's class for closed
/// 3-manifolds.)
pub fn in_walkup_class(x: &Complex) -> Result<bool> {
    validate_3manifold(x)?;
    for v in 0..x.vertex_count() as Vertex {
        let (lk, _) = x.link(v)?;
        if is_stacked(&lk)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The tight-neighbourly equation for closed 3-manifolds:
/// 10 * beta_1(Z2) == C(n - 4, 2). The left side can never exceed the
/// right for a closed 3-manifold, so `holds` marks the extreme case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightNeighbourlyCheck {
    pub beta1: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

pub fn tight_neighbourly_check(x: &Complex) -> Result<TightNeighbourlyCheck> {
    validate_3manifold(x)?;
    let betti = betti_z2(x)?;
    let beta1 = betti[1];
    let lhs = 10 * beta1;
    let rhs = binomial_i128(x.vertex_count().saturating_sub(4), 2) as u64;
    Ok(TightNeighbourlyCheck { beta1, lhs, rhs, holds: lhs == rhs })
}

/// Brute-force Z2 tightness: for every vertex subset A and every
/// dimension, the map H_*(X[A]) -> H_*(X) must be injective. In dimension
/// 0 (unreduced) that says every nonempty induced subcomplex is connected;
/// in higher dimensions it is a rank condition: a basis of the cycle space
/// of X[A], joined with a basis of the boundary space of X, has full rank
/// exactly when no nonzero cycle of X[A] becomes a boundary in X beyond
/// those that already bound in X[A]. Exponential in n.
pub fn is_tight_z2(x: &Complex) -> Result<bool> {
    if x.is_empty() {
        return Err(Error::EmptyFacetList);
    }
    let n = x.vertex_count();
    check_cap(n, TIGHT_CAP)?;
    let dim = x.dim();
    if dim > 3 {
        return Err(Error::DimensionTooHigh { dim, max: 3 });
    }
    if !x.skeleton_connected() {
        return Err(Error::NotConnected);
    }
    let g = x.one_skeleton()?;
    for a in 1..(1u64 << n) {
        if g.component_count(a) != 1 {
            return Ok(false);
        }
    }
    let masks = face_masks(x)?;
    // Boundary-space bases of X itself, per dimension.
    let mut x_boundary_basis: Vec<Vec<Vec<u64>>> = Vec::with_capacity(dim + 1);
    for i in 0..=dim {
        if i + 1 <= dim {
            x_boundary_basis.push(column_basis(boundary_cols(&masks[i + 1], &masks[i])));
        } else {
            x_boundary_basis.push(Vec::new());
        }
    }
    for a in 1..(1u64 << n) {
        let local: Vec<Vec<u64>> = masks
            .iter()
            .map(|per| per.iter().copied().filter(|&f| f & !a == 0).collect())
            .collect();
        for i in 1..=dim {
            if local[i].is_empty() {
                continue;
            }
            let cycles = kernel_z2(boundary_cols(&local[i], &local[i - 1]));
            if cycles.is_empty() {
                continue;
            }
            let z = cycles.len();
            let b_local = if i + 1 <= dim && !local[i + 1].is_empty() {
                rank_z2(&mut boundary_cols(&local[i + 1], &local[i]))
            } else {
                0
            };
            let b_global = x_boundary_basis[i].len();
            // Injectivity in dimension i: rank [Z_i(A) | B_i(X)] must be
            // z + b_global - b_local.
            let mut stacked_cols: Vec<Vec<u64>> = cycles
                .iter()
                .map(|vec_local| embed(vec_local, &local[i], &masks[i]))
                .collect();
            stacked_cols.extend(x_boundary_basis[i].iter().cloned());
            let joint = rank_z2(&mut stacked_cols);
            if joint != z + b_global - b_local {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Re-express a vector over `local` face indices in `global` face indices.
fn embed(vec_local: &[u64], local: &[u64], global: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; global.len().div_ceil(64)];
    for (j, &mask) in local.iter().enumerate() {
        if vec_local[j / 64] >> (j % 64) & 1 == 1 {
            let gi = global.binary_search(&mask).unwrap();
            out[gi / 64] |= 1 << (gi % 64);
        }
    }
    out
}

/// Kernel basis of a Z2 column matrix, as vectors over the column index
/// space.
fn kernel_z2(mut cols: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let ncols = cols.len();
    let cblocks = ncols.div_ceil(64);
    let mut companions: Vec<Vec<u64>> = (0..ncols)
        .map(|j| {
            let mut v = vec![0u64; cblocks];
            v[j / 64] |= 1 << (j % 64);
            v
        })
        .collect();
    let mut pivots: Vec<(usize, u32, usize)> = Vec::new();
    let mut kernel = Vec::new();
    for c in 0..ncols {
        {
            let (done, rest) = cols.split_at_mut(c);
            let (done_comp, rest_comp) = companions.split_at_mut(c);
            let col = &mut rest[0];
            let comp = &mut rest_comp[0];
            for &(blk, bit, p) in &pivots {
                if col[blk] >> bit & 1 == 1 {
                    for (cb, pb) in col.iter_mut().zip(&done[p]) {
                        *cb ^= *pb;
                    }
                    for (cb, pb) in comp.iter_mut().zip(&done_comp[p]) {
                        *cb ^= *pb;
                    }
                }
            }
        }
        if let Some((blk, bit)) = first_set(&cols[c]) {
            pivots.push((blk, bit, c));
        } else {
            kernel.push(companions[c].clone());
        }
    }
    kernel
}

/// Reduced column basis of a Z2 matrix.
fn column_basis(cols: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let mut pivots: Vec<(usize, u32)> = Vec::new();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for mut col in cols {
        loop {
            let Some((blk, bit)) = first_set(&col) else { break };
            match pivots.iter().position(|&(pb, pi)| (pb, pi) == (blk, bit)) {
                Some(p) => {
                    let pivot = basis[p].clone();
                    for (cb, pb) in col.iter_mut().zip(&pivot) {
                        *cb ^= *pb;
                    }
                }
                None => {
                    pivots.push((blk, bit));
                    basis.push(col);
                    break;
                }
            }
        }
    }
    basis
}

/// Summary of one closed 3-manifold, JSON-friendly.
#[derive(Debug, Clone, Serialize)]
pub struct ManifoldReport {
    pub n: usize,
    pub f_vector: Vec<u64>,
    pub betti: Vec<u64>,
    /// mu_1 as a reduced fraction.
    pub mu1: String,
    pub mu1_decimal: String,
    pub neighbourly: bool,
    pub tight_neighbourly: TightNeighbourlyCheck,
    /// True when every vertex link is stacked.
    pub walkup_class: bool,
    /// Brute-force Z2 tightness, present only when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight: Option<bool>,
    /// Failures of relations that hold for every closed 3-manifold; any
    /// entry means the input (or this library) is broken.
    pub violations: Vec<String>,
}

/// Validate and summarise a closed 3-manifold. `tight_brute` additionally
/// runs the exponential tightness check (vertex cap applies).
pub fn analyze_3manifold(x: &Complex, tight_brute: bool) -> Result<ManifoldReport> {
    validate_3manifold(x)?;
    let n = x.vertex_count();
    let f_vector = x.f_vector().0.clone();
    let betti = betti_z2(x)?;
    let mu1 = mu_one(x)?;
    let tight_neighbourly = tight_neighbourly_check(x)?;
    let mut violations = Vec::new();
    let mut walkup_class = true;

    // Per-link invariants: the separation index of a link can never
    // exceed the stacked-sphere value for its vertex count, with equality
    // exactly when the link is stacked.
    for v in 0..n as Vertex {
        let (lk, _) = x.link(v)?;
        let s = separation_index(&lk.one_skeleton()?);
        let bound = stacked_value(lk.vertex_count());
        let stacked = is_stacked(&lk)?.is_some();
        walkup_class &= stacked;
        if s > bound {
            violations.push(format!(
                "link of vertex {v}: separation index {} exceeds the stacked value {}",
                fraction_str(&s),
                fraction_str(&bound)
            ));
        } else if (s == bound) != stacked {
            violations.push(format!(
                "link of vertex {v}: equality with the stacked value must coincide with stackedness (index {}, stacked: {stacked})",
                fraction_str(&s)
            ));
        }
    }

    if betti[0] != 1 {
        violations.push(format!("beta_0 = {}, expected 1 for a connected complex", betti[0]));
    }
    if betti[3] != 1 {
        violations.push(format!("beta_3 = {}, expected 1 over Z2", betti[3]));
    }
    if betti[1] != betti[2] {
        violations.push(format!(
            "beta_1 = {} and beta_2 = {} break Poincare duality over Z2",
            betti[1], betti[2]
        ));
    }
    let chi = x.f_vector().euler_characteristic();
    if chi != 0 {
        violations.push(format!("Euler characteristic {chi}, expected 0"));
    }
    if tight_neighbourly.lhs > tight_neighbourly.rhs {
        violations.push(format!(
            "10 * beta_1 = {} exceeds C(n - 4, 2) = {}",
            tight_neighbourly.lhs, tight_neighbourly.rhs
        ));
    }
    let neighbourly = x.is_neighbourly();
    if rat_int(betti[1] as i128) > mu1 {
        violations.push(format!(
            "beta_1 = {} exceeds mu_1 = {}",
            betti[1],
            fraction_str(&mu1)
        ));
    }
    let mu1_upper = rat(((n - 4) * (n - 5)) as i64, 20);
    if neighbourly && mu1 > mu1_upper {
        violations.push(format!(
            "neighbourly, but mu_1 = {} exceeds (n-4)(n-5)/20 = {}",
            fraction_str(&mu1),
            fraction_str(&mu1_upper)
        ));
    }
    if tight_neighbourly.holds && !(neighbourly && walkup_class) {
        violations.push(format!(
            "tight-neighbourly, but neighbourly = {neighbourly} and all-links-stacked = {walkup_class}"
        ));
    }

    let tight = if tight_brute { Some(is_tight_z2(x)?) } else { None };
    Ok(ManifoldReport {
        n,
        f_vector,
        betti,
        mu1: fraction_str(&mu1),
        mu1_decimal: decimal_6sig(&mu1),
        neighbourly,
        tight_neighbourly,
        walkup_class,
        tight,
        violations,
    })
}
