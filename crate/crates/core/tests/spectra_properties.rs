mod common;

use common::{close, gnp, random_bipartite, rng};
use ngspec::bipartite::is_bipartite;
use ngspec::poly::{char_poly_exact, real_roots};
use ngspec::spectra::{eig_symmetric, RealMatrix};
use ngspec::{build_matrix, construct, spectrum, FamilySpec, Graph, LabelledGraphs, MatrixKind};
use rand::Rng;

const TOL: f64 = 1e-8;

#[test]
fn laplacian_interlaces_under_edge_removal() {
    let mut r = rng(11);
    let mut checked = 0;
    while checked < 300 {
        let g = gnp(r.gen_range(2..=12), 0.5, &mut r);
        let edges: Vec<_> = g.edges().collect();
        if edges.is_empty() {
            continue;
        }
        let (u, v) = edges[r.gen_range(0..edges.len())];
        let h = g.remove_edge(u, v).unwrap();
        for kind in [MatrixKind::Laplacian, MatrixKind::SignlessLaplacian] {
            let (a, b) = (spectrum(&g, kind).values, spectrum(&h, kind).values);
            for i in 0..g.n() {
                assert!(a[i] + TOL >= b[i], "{kind:?} {i}: {} < {}", a[i], b[i]);
                if i + 1 < g.n() {
                    assert!(b[i] + TOL >= a[i + 1], "{kind:?} {i}: {} < {}", b[i], a[i + 1]);
                }
            }
        }
        checked += 1;
    }
}

#[test]
fn complement_duality() {
    let mut r = rng(12);
    for _ in 0..200 {
        let n = r.gen_range(2..=14);
        let g = gnp(n, r.gen_range(0.1..0.9), &mut r);
        let a = spectrum(&g, MatrixKind::Laplacian).values;
        let b = spectrum(&g.complement(), MatrixKind::Laplacian).values;
        for i in 1..n {
            // μ_i(G) + μ_{n-i}(Ḡ) = n
            assert!((a[i - 1] + b[n - i - 1] - n as f64).abs() <= TOL);
        }
        assert!(a[n - 1].abs() <= TOL && b[n - 1].abs() <= TOL);
    }
}

#[test]
fn bipartite_l_and_q_are_cospectral() {
    for n in 1..=5 {
        for g in LabelledGraphs::new(n).unwrap().iter().filter(is_bipartite) {
            let l = spectrum(&g, MatrixKind::Laplacian).values;
            let q = spectrum(&g, MatrixKind::SignlessLaplacian).values;
            assert!(close(&l, &q, TOL));
        }
    }
    let mut r = rng(13);
    for _ in 0..200 {
        let g = random_bipartite(r.gen_range(1..8), r.gen_range(1..8), 0.5, &mut r);
        assert!(close(
            &spectrum(&g, MatrixKind::Laplacian).values,
            &spectrum(&g, MatrixKind::SignlessLaplacian).values,
            TOL
        ));
    }
}

#[test]
fn odd_cycle_separates_l_from_q() {
    let c5 = Graph::cycle(5).unwrap();
    let q = spectrum(&c5, MatrixKind::SignlessLaplacian);
    assert_eq!(q.zero_multiplicity(), 0);
    assert_eq!(spectrum(&c5, MatrixKind::Laplacian).zero_multiplicity(), 1);
}

#[test]
fn trace_and_zero_multiplicity() {
    let mut r = rng(14);
    for _ in 0..200 {
        let g = gnp(r.gen_range(1..=12), 0.3, &mut r);
        let l = spectrum(&g, MatrixKind::Laplacian);
        let q = spectrum(&g, MatrixKind::SignlessLaplacian);
        let two_e = 2.0 * g.edge_count() as f64;
        assert!((l.sum() - two_e).abs() <= 1e-7 && (q.sum() - two_e).abs() <= 1e-7);
        assert_eq!(l.zero_multiplicity(), g.component_count());
        assert!(l.largest() <= g.n() as f64 + TOL);
    }
}

#[test]
fn sturm_roots_match_jacobi() {
    let mut r = rng(15);
    for _ in 0..100 {
        let g = gnp(r.gen_range(2..=9), 0.5, &mut r);
        let m = build_matrix(&g, MatrixKind::SignlessLaplacian);
        let roots = real_roots(&char_poly_exact(&m).unwrap().to_rational(), 1e-10);
        let mut exact: Vec<f64> =
            roots.iter().flat_map(|root| std::iter::repeat_n(root.midpoint(), root.multiplicity)).collect();
        exact.reverse();
        assert!(close(&exact, &spectrum(&g, MatrixKind::SignlessLaplacian).values, 1e-8), "{exact:?}");
    }
}

#[test]
fn closed_form_family_spectra() {
    let g = construct(&FamilySpec::CompleteBipartite(3, 5)).unwrap();
    assert!(close(&spectrum(&g, MatrixKind::SignlessLaplacian).values, &[8., 5., 5., 3., 3., 3., 3., 0.], TOL));
    let p4 = spectrum(&Graph::path(4).unwrap(), MatrixKind::Laplacian).values;
    let s = 2f64.sqrt();
    assert!(close(&p4, &[2. + s, 2., 2. - s, 0.], TOL));
}

#[test]
fn jacobi_on_dense_real_matrix() {
    let m = RealMatrix::from_rows(&[vec![4.0, 1.0, -2.0], vec![1.0, 2.0, 0.0], vec![-2.0, 0.0, 3.0]]).unwrap();
    let s = eig_symmetric(&m, 1e-12).unwrap();
    assert!((s.sum() - 9.0).abs() < 1e-10);
    // det = 4·6 - 1·3 + (-2)·4 = 13
    let det: f64 = s.values.iter().product();
    assert!((det - 13.0).abs() < 1e-9);
    assert!(RealMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).and_then(|m| eig_symmetric(&m, 1e-10)).is_err());
}
