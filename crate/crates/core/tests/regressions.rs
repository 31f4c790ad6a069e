//! Pinned values for instances whose outcome is fixed by computation
//! rather than by a closed form: once computed, the result is frozen here
//! so regressions surface immediately.

use sepindex::complex::{Complex, Vertex};
use sepindex::homology::{analyze_3manifold, betti_z2, in_walkup_class, validate_3manifold};

/// Subdivide the edge `(u, v)`: a fresh vertex `w` splits every facet
/// containing both `u` and `v` into two copies, one with `u` replaced by
/// `w` and one with `v` replaced by `w`.
fn subdivide_edge(x: &Complex, u: Vertex, v: Vertex) -> Complex {
    let w = x.vertex_count() as Vertex;
    let mut facets: Vec<Vec<Vertex>> = Vec::new();
    for f in x.facets() {
        if f.contains(&u) && f.contains(&v) {
            let mut a: Vec<Vertex> = f.iter().map(|&t| if t == u { w } else { t }).collect();
            let mut b: Vec<Vertex> = f.iter().map(|&t| if t == v { w } else { t }).collect();
            a.sort_unstable();
            b.sort_unstable();
            facets.push(a);
            facets.push(b);
        } else {
            facets.push(f.clone());
        }
    }
    Complex::from_facets(x.vertex_count() + 1, &facets, true).unwrap()
}

#[test]
fn edge_subdivided_cyclic_7_is_a_sphere_outside_the_walkup_class() {
    let c7 = Complex::cyclic_polytope_boundary(7).unwrap();
    let x = subdivide_edge(&c7, 0, 1);
    assert_eq!(x.vertex_count(), 8);
    validate_3manifold(&x).unwrap();
    assert_eq!(betti_z2(&x).unwrap(), vec![1, 0, 0, 1]);
    // Subdividing an edge of the neighbourly 7-vertex sphere puts a
    // bipyramid over a long cycle into the link of the fresh vertex, so
    // the all-links-stacked property is lost (pinned by computation).
    assert!(!in_walkup_class(&x).unwrap());
    let report = analyze_3manifold(&x, false).unwrap();
    assert!(report.violations.is_empty(), "violations: {:?}", report.violations);
    assert!(!report.neighbourly);
    assert_eq!(report.mu1, "141/280");
    assert!(!report.tight_neighbourly.holds);
}
