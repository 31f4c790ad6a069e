//! The separation index of a graph: over all vertex subsets A, sum
//! (q(A) - 1) / C(n, |A|), where q(A) is the number of connected
//! components of the induced subgraph (q of the empty set is 0, so the
//! empty set contributes -1). Two independent engines compute it exactly:
//! a brute-force sweep of all 2^n subsets, and a connected-set enumeration
//! that only visits connected induced subgraphs. Per-size tallies are
//! plain `i128` integers; division by binomials happens once at the end in
//! exact rational arithmetic, so thread count and summation order cannot
//! change any output bit.

use num::BigInt;
use num::BigRational;
use rayon::prelude::*;

use crate::complex::{Complex, Vertex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moves::star_vertex;
use crate::rational::{binomial_big, binomial_i128, rat, Rational};

/// Default vertex cap for command-line runs; both engines are exponential
/// in the worst case.
pub const DEFAULT_CAP: usize = 20;

pub fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Per-size breakdown of the separation index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationProfile {
    pub n: usize,
    /// `sums[i]` = sum of q(A) - 1 over all subsets A of size i.
    pub sums: Vec<i128>,
    /// `s_i[i]` = `sums[i] / C(n, i)`.
    pub s_i: Vec<Rational>,
    /// The separation index: sum of all `s_i`.
    pub s: Rational,
}

impl SeparationProfile {
    fn from_sums(n: usize, sums: Vec<i128>) -> SeparationProfile {
        debug_assert_eq!(sums.len(), n + 1);
        let s_i: Vec<Rational> = sums
            .iter()
            .enumerate()
            .map(|(i, &t)| BigRational::new(BigInt::from(t), binomial_big(n, i)))
            .collect();
        let s = s_i.iter().cloned().sum();
        SeparationProfile { n, sums, s_i, s }
    }

    /// CSV rendering: one row per subset size, then a `total` row with the
    /// index as a reduced fraction.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,sum_q_minus_1,binom,s_i_num,s_i_den\n");
        for i in 0..=self.n {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                i,
                self.sums[i],
                binomial_big(self.n, i),
                self.s_i[i].numer(),
                self.s_i[i].denom(),
            ));
        }
        out.push_str(&format!("total,{},{}\n", self.s.numer(), self.s.denom()));
        out
    }
}

/// Brute-force engine: visit every subset mask and count components. Used
/// as the oracle in tests; exponential, so keep n small.
pub fn separation_profile_brute(g: &Graph) -> SeparationProfile {
    let n = g.n();
    let sums = if n <= 12 {
        brute_block(g, 0, 1u64 << n)
    } else {
        // Split on the high bits so rayon can chew blocks independently;
        // integer tallies make the merge order irrelevant.
        let low_bits = 12;
        let blocks = 1u64 << (n - low_bits);
        (0..blocks)
            .into_par_iter()
            .map(|b| brute_block(g, b << low_bits, (b + 1) << low_bits))
            .reduce(
                || vec![0i128; n + 1],
                |mut acc, part| {
                    for (a, p) in acc.iter_mut().zip(part) {
                        *a += p;
                    }
                    acc
                },
            )
    };
    SeparationProfile::from_sums(n, sums)
}

fn brute_block(g: &Graph, from: u64, to: u64) -> Vec<i128> {
    let mut sums = vec![0i128; g.n() + 1];
    for mask in from..to {
        let q = g.component_count(mask) as i128;
        sums[mask.count_ones() as usize] += q - 1;
    }
    sums
}

/// Fast engine: enumerate exactly the connected vertex sets. A connected
/// set C is a component of G[A] precisely when A contains C and avoids its
/// neighbourhood, so C contributes C(r, i - |C|) components at size i,
/// with r the number of vertices outside C and its neighbourhood. The
/// enumeration is the standard rooted search: extend by neighbours above a
/// forbidden set, each branch forbidding its earlier siblings, which
/// visits every connected set exactly once.
pub fn separation_profile(g: &Graph) -> SeparationProfile {
    let n = g.n();
    // bucket[c][r]: how many connected sets have size c and r free vertices.
    let mut bucket = vec![vec![0i128; n + 1]; n + 1];
    for v in 0..n as Vertex {
        let seed = 1u64 << v;
        let below: u64 = seed - 1;
        connected_sets(g, seed, below, &mut bucket);
    }
    let mut sums = vec![0i128; n + 1];
    sums[0] = -1;
    for i in 1..=n {
        let mut q_total = 0i128;
        for c in 1..=i {
            for (r, &count) in bucket[c].iter().enumerate() {
                if count != 0 && i - c <= r {
                    q_total += count * binomial_i128(r, i - c);
                }
            }
        }
        sums[i] = q_total - binomial_i128(n, i);
    }
    SeparationProfile::from_sums(n, sums)
}

fn connected_sets(g: &Graph, set: u64, forbidden: u64, bucket: &mut [Vec<i128>]) {
    let c = set.count_ones() as usize;
    let nb = g.neighbourhood_of_set(set);
    let r = g.n() - c - nb.count_ones() as usize;
    bucket[c][r] += 1;
    let mut cand = nb & !forbidden;
    let mut blocked = forbidden;
    while cand != 0 {
        let u = cand & cand.wrapping_neg();
        connected_sets(g, set | u, blocked, bucket);
        blocked |= u;
        cand &= cand - 1;
    }
}

/// The separation index via the fast engine.
pub fn separation_index(g: &Graph) -> Rational {
    separation_profile(g).s
}

/// Separation index of a complex's 1-skeleton.
pub fn separation_index_of(x: &Complex) -> Result<Rational> {
    Ok(separation_index(&x.one_skeleton()?))
}

/// Closed form for stacked 2-spheres: (n - 8)(n + 1) / 20.
pub fn stacked_value(n: usize) -> Rational {
    assert!(n >= 4, "stacked spheres need at least 4 vertices");
    let n = n as i64;
    rat((n - 8) * (n + 1), 20)
}

/// Closed form for the edgeless graph: (n + 1)(n - 2) / 2.
pub fn edgeless_value(n: usize) -> Rational {
    let n = n as i64;
    rat((n + 1) * (n - 2), 2)
}

/// Starring a vertex into a triangle of any graph shifts the index by a
/// fixed affine map: with n the old vertex count, s(new) =
/// (n + 2)/(n + 1) * s(old) + (n + 2)/20. This returns (lhs, rhs) of that
/// identity for the complex obtained by starring `facet` in `y`, so equal
/// values confirm it. The facet position never matters: the new vertex's
/// neighbours form a triangle, hence meet at most one component of any
/// induced subgraph.
pub fn zero_move_recurrence(y: &Complex, facet: &[Vertex; 3]) -> Result<(Rational, Rational)> {
    let (x, _) = star_vertex(y, facet)?;
    let n = y.vertex_count() as i64;
    let lhs = separation_index(&x.one_skeleton()?);
    let s_y = separation_index(&y.one_skeleton()?);
    let rhs = rat(n + 2, n + 1) * s_y + rat(n + 2, 20);
    Ok((lhs, rhs))
}

/// Outcome of checking one 2-sphere against the stacked-sphere bound
/// s <= (n - 8)(n + 1)/20, with equality exactly for stacked spheres.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StackedBoundVerdict {
    /// s equals the bound and the sphere is stacked.
    EqualityStacked,
    /// s is strictly below the bound and the sphere is not stacked.
    BelowNotStacked { gap: Rational },
    /// Anything else — never expected for a genuine 2-sphere.
    Violation { s: Rational, bound: Rational, stacked: bool },
}

pub fn stacked_bound_verdict(x: &Complex) -> Result<StackedBoundVerdict> {
    x.require_2sphere()?;
    let s = separation_index_of(x)?;
    let bound = stacked_value(x.vertex_count());
    let stacked = crate::moves::is_stacked(x)?.is_some();
    Ok(if s == bound && stacked {
        StackedBoundVerdict::EqualityStacked
    } else if s < bound && !stacked {
        StackedBoundVerdict::BelowNotStacked { gap: bound - s }
    } else {
        StackedBoundVerdict::Violation { s, bound, stacked }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::octahedron;
    use crate::moves::{build_stacked, random_sphere};
    use crate::rational::rat_int as ri;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for v in 0..n - 1 {
            g.add_edge(v as Vertex, v as Vertex + 1).unwrap();
        }
        g
    }

    fn random_graph(n: usize, p_num: u32, p_den: u32, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_range(0..p_den) < p_num {
                    g.add_edge(u as Vertex, v as Vertex).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn path_on_three_vertices() {
        let s = separation_index(&path(3));
        assert_eq!(s, rat(-2, 3));
        assert_eq!(separation_profile_brute(&path(3)).s, rat(-2, 3));
    }

    #[test]
    fn complete_graphs_score_minus_one() {
        for n in 1..=8 {
            assert_eq!(separation_index(&Graph::complete(n).unwrap()), ri(-1));
        }
    }

    #[test]
    fn edgeless_graphs_match_closed_form() {
        for n in 1..=8 {
            let s = separation_index(&Graph::edgeless(n).unwrap());
            assert_eq!(s, edgeless_value(n));
            // And the profile rows are all nonnegative except the empty set.
            let p = separation_profile(&Graph::edgeless(n).unwrap());
            assert_eq!(p.sums[0], -1);
        }
    }

    #[test]
    fn octahedron_score() {
        let g = octahedron().one_skeleton().unwrap();
        assert_eq!(separation_index(&g), rat(-4, 5));
    }

    #[test]
    fn octahedron_profile_rows() {
        let p = separation_profile(&octahedron().one_skeleton().unwrap());
        // Sizes 0..6: -1, 0, 3 (the three antipodal non-edges), 0, 0, 0, 0.
        assert_eq!(p.sums, vec![-1, 0, 3, 0, 0, 0, 0]);
        assert_eq!(p.s_i[2], rat(1, 5));
        let csv = p.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "i,sum_q_minus_1,binom,s_i_num,s_i_den");
        assert_eq!(lines[3], "2,3,15,1,5");
        assert_eq!(lines.last().unwrap(), &"total,-4,5");
    }

    #[test]
    fn engines_agree() {
        for seed in 0..8u64 {
            let g = random_graph(10, 1, 3, seed);
            assert_eq!(separation_profile(&g), separation_profile_brute(&g));
        }
        for seed in 0..3u64 {
            let x = random_sphere(11, 15, seed).unwrap();
            let g = x.one_skeleton().unwrap();
            assert_eq!(separation_profile(&g), separation_profile_brute(&g));
        }
        // Dense and sparse corners.
        for g in [Graph::complete(9).unwrap(), Graph::edgeless(9).unwrap(), path(9)] {
            assert_eq!(separation_profile(&g), separation_profile_brute(&g));
        }
    }

    #[test]
    fn stacked_spheres_match_closed_form() {
        for n in 4..=10 {
            let (x, _) = build_stacked(n, n as u64).unwrap();
            let s = separation_index_of(&x).unwrap();
            assert_eq!(s, stacked_value(n), "n = {n}");
        }
        assert_eq!(stacked_value(5), rat(-9, 10));
        assert_eq!(stacked_value(6), rat(-7, 10));
        assert_eq!(stacked_value(12), rat(13, 5));
    }

    #[test]
    fn starring_recurrence() {
        // Star every facet of the octahedron: the identity holds and the
        // result is facet-independent.
        let o = octahedron();
        for f in o.facets() {
            let (lhs, rhs) = zero_move_recurrence(&o, &[f[0], f[1], f[2]]).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(lhs, rat(-18, 35));
        }
        // And on a shuffled sphere.
        let x = random_sphere(9, 12, 7).unwrap();
        let f = &x.facets()[2];
        let (lhs, rhs) = zero_move_recurrence(&x, &[f[0], f[1], f[2]]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bound_verdicts() {
        let (stacked, _) = build_stacked(9, 1).unwrap();
        assert_eq!(
            stacked_bound_verdict(&stacked).unwrap(),
            StackedBoundVerdict::EqualityStacked
        );
        match stacked_bound_verdict(&octahedron()).unwrap() {
            StackedBoundVerdict::BelowNotStacked { gap } => {
                // -4/5 against -7/10: gap 1/10.
                assert_eq!(gap, rat(1, 10));
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn cap_guard() {
        assert!(check_cap(12, 20).is_ok());
        let err = check_cap(21, 20).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn brute_parallel_split_matches_serial() {
        // n = 13 exercises the rayon block path.
        let g = random_graph(13, 1, 2, 99);
        let fast = separation_profile(&g);
        let brute = separation_profile_brute(&g);
        assert_eq!(fast, brute);
    }
}
