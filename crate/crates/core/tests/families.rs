mod common;

use common::{bisect_largest_root, char_poly, cubic_coefficients, grid_families, naive_rho};
use spf_core::extremal::{self, FamilyKind};
use spf_core::spectra::{cubic_roots, largest_eigenvalue_small, quotient, rho};

#[test]
fn closed_forms_match_quotient_determinants() {
    for (name, f, closed) in grid_families() {
        let q = quotient(&f.graph, &f.blocks).unwrap();
        let m = q
            .integer_matrix()
            .unwrap_or_else(|| panic!("{name}: partition not equitable"));
        assert_eq!(cubic_coefficients(&char_poly(&m)), closed, "{name}");
    }
}

#[test]
fn largest_roots_match_spectral_radius() {
    for (name, f, closed) in grid_families() {
        let poly = extremal::IntCubic {
            c2: closed[0],
            c1: closed[1],
            c0: closed[2],
        };
        let root = cubic_roots(&poly.to_poly()).unwrap()[0];
        let graph_rho = rho(&f.graph).unwrap();
        assert!((root - graph_rho).abs() <= 1e-8, "{name}: {root} vs {graph_rho}");
        let bisected = bisect_largest_root(closed);
        assert!(
            (root - bisected).abs() <= 1e-8,
            "{name}: {root} vs bisection {bisected}"
        );
        let dense = naive_rho(&f.graph);
        assert!(
            (graph_rho - dense).abs() <= 1e-8,
            "{name}: {graph_rho} vs dense {dense}"
        );
        let q = quotient(&f.graph, &f.blocks).unwrap();
        let schur = largest_eigenvalue_small(&q.matrix).unwrap();
        assert!((schur - graph_rho).abs() <= 1e-8, "{name}: quotient {schur}");
    }
}

#[test]
fn extremal_cubic_at_smallest_order() {
    assert_eq!(extremal::phi_bstar(3, 18).unwrap().coefficients(), [-12, -25, 120]);
    let root = bisect_largest_root([-12, -25, 120]);
    assert!((root - 13.2050).abs() < 1e-4);
    let m = vec![vec![2.0, 11.0, 4.0], vec![3.0, 10.0, 0.0], vec![3.0, 0.0, 0.0]];
    assert!((largest_eigenvalue_small(&m).unwrap() - root).abs() < 1e-8);
}

#[test]
fn structure_of_builders() {
    for (name, f, _) in grid_families() {
        let delta = f.delta.unwrap();
        assert!(f.graph.is_connected(), "{name}");
        match f.kind {
            FamilyKind::Extremal | FamilyKind::Case3 => assert_eq!(f.graph.min_degree(), delta, "{name}"),
            // Case 1 vertices in the singleton parts see only K_s.
            FamilyKind::Case1 => assert_eq!(f.graph.min_degree(), f.s, "{name}"),
            FamilyKind::General => unreachable!(),
        }
        assert!(!f.below_theorem_range, "{name}");
    }
    for (d, n) in common::grid() {
        assert_eq!(extremal::phi_b2(d, d, n).unwrap(), extremal::phi_bstar(d, n).unwrap());
        assert_eq!(extremal::build_extremal(d, n).unwrap().order(), n);
    }
    assert!(extremal::build_extremal(3, 8).unwrap().below_theorem_range);
}

#[test]
fn difference_polynomials_factor() {
    for (d, n) in common::grid() {
        let star = extremal::phi_bstar(d, n).unwrap();
        for s in common::case1_cuts(d, n) {
            let b2 = extremal::phi_b2(s, d, n).unwrap();
            let g = extremal::g_poly(s, d, n).unwrap();
            let k = s as i64 - d as i64;
            assert_eq!(b2.c2 - star.c2, k * g.a);
            assert_eq!(b2.c1 - star.c1, k * g.b);
            assert_eq!(b2.c0 - star.c0, k * g.c);
        }
        for s in common::case3_cuts(d, n) {
            let b3 = extremal::phi_b3(s, d, n).unwrap();
            let h = extremal::h_poly(s, d, n).unwrap();
            let k = d as i64 - s as i64;
            assert_eq!(b3.c2 - star.c2, k * h.a);
            assert_eq!(b3.c1 - star.c1, k * h.b);
            assert_eq!(b3.c0 - star.c0, k * h.c);
        }
    }
}
