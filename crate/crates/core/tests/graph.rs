mod common;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use segchi_core::graph::{
    chromatic_number, is_critical, is_k_colorable, is_triangle_free, triangle_by_neighborhoods, triangle_by_triples,
};
use segchi_core::{
    augment_tilde, build, intersection_graph, Chromatic, Colorability, IntersectionGraph, NodeLimit, Rect, Unlimited,
};

use common::{brute_chromatic, brute_colorable, brute_has_triangle, random_graph};

fn chi(g: &IntersectionGraph) -> usize {
    match chromatic_number(g, Unlimited).unwrap() {
        Chromatic::Exact { chi, coloring } => {
            assert!(coloring.is_proper_for(g));
            assert_eq!(coloring.used_colors(), chi);
            chi
        }
        other => panic!("unlimited budget gave {other:?}"),
    }
}

#[test]
fn chromatic_number_matches_brute_force() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.random_range(1..=10);
        let density = rng.random_range(0.1..0.9);
        let edges = random_graph(&mut rng, n, density);
        let g = IntersectionGraph::from_edges(n, &edges);
        assert_eq!(chi(&g), brute_chromatic(n, &edges), "n={n} edges={edges:?}");
    }
}

/// Larger sparse-ish graphs stress the cached component search, where
/// wrong cache hits would show up as false "No" answers.
#[test]
fn k_colorability_matches_brute_force() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..150 {
        let n = rng.random_range(8..=12);
        let density = rng.random_range(0.15..0.5);
        let edges = random_graph(&mut rng, n, density);
        let g = IntersectionGraph::from_edges(n, &edges);
        for k in 2..=3 {
            let want = brute_colorable(n, &edges, k);
            match is_k_colorable(&g, k, Unlimited).unwrap() {
                Colorability::Yes(c) => {
                    assert!(want, "n={n} k={k} edges={edges:?}");
                    assert!(c.is_proper_for(&g) && c.used_colors() <= k);
                }
                Colorability::No => assert!(!want, "n={n} k={k} edges={edges:?}"),
                Colorability::Unknown => panic!("unlimited budget gave Unknown"),
            }
        }
    }
}

#[test]
fn relabelling_keeps_answers() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..60 {
        let n = rng.random_range(5..=11);
        let edges = random_graph(&mut rng, n, 0.45);
        let g = IntersectionGraph::from_edges(n, &edges);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let h = g.permuted(&perm);
        assert_eq!(chi(&g), chi(&h));
        let k = chi(&g) - 1;
        assert!(matches!(is_k_colorable(&h, k, Unlimited).unwrap(), Colorability::No));
    }
}

#[test]
fn triangle_methods_agree() {
    let mut rng = StdRng::seed_from_u64(14);
    for _ in 0..300 {
        let n = rng.random_range(1..=14);
        let density = rng.random_range(0.05..0.5);
        let edges = random_graph(&mut rng, n, density);
        let g = IntersectionGraph::from_edges(n, &edges);
        let want = brute_has_triangle(n, &edges);
        for found in [triangle_by_triples(&g), triangle_by_neighborhoods(&g), is_triangle_free(&g)] {
            match found {
                Ok(()) => assert!(!want),
                Err([a, b, c]) => {
                    assert!(want);
                    assert!(g.adjacent(a, b) && g.adjacent(a, c) && g.adjacent(b, c));
                }
            }
        }
    }
}

#[test]
fn tilde_two_is_a_five_cycle() {
    let t = augment_tilde(&build(2, &Rect::unit()).unwrap()).unwrap();
    let g = intersection_graph(&t.segments);
    assert_eq!(g.vertex_count(), 5);
    assert_eq!(g.degree_sequence(), vec![2; 5]);
    assert!(g.is_connected());
    assert!(is_triangle_free(&g).is_ok());
}

#[test]
fn tilde_families_are_critical() {
    for k in 1..=3 {
        let t = augment_tilde(&build(k, &Rect::unit()).unwrap()).unwrap();
        let g = intersection_graph(&t.segments);
        assert!(is_triangle_free(&g).is_ok());
        assert_eq!(chi(&g), k + 1);
        let report = is_critical(&g, k, Unlimited).unwrap();
        assert_eq!(report.critical(), Some(true), "k={k}");
    }
}

#[test]
fn plain_families_are_triangle_free() {
    for k in 1..=4 {
        let g = intersection_graph(&build(k, &Rect::unit()).unwrap().segments);
        assert!(is_triangle_free(&g).is_ok(), "k={k}");
    }
}

#[test]
fn small_budget_reports_unknown_not_a_wrong_answer() {
    let t = augment_tilde(&build(3, &Rect::unit()).unwrap()).unwrap();
    let g = intersection_graph(&t.segments);
    match chromatic_number(&g, NodeLimit::new(1)).unwrap() {
        Chromatic::Exact { chi, .. } => assert_eq!(chi, 4),
        Chromatic::Bracket { lower, upper } => assert!(lower <= 4 && 4 <= upper),
    }
    assert!(is_k_colorable(&g, 3, NodeLimit::new(0)).is_err());
}
