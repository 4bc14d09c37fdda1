use kissing_core::twodist::{
    canonical_form, count_graphs, dim2, enumerate_graphs, is_clique_union, partitions, sigma,
    SimpleGraph, WITNESS_TOL,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every permutation of `0..n` by Heap's algorithm.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, out);
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Burnside: the number of graphs up to isomorphism is the average over all
/// vertex permutations of `2^(number of orbits on unordered pairs)`.
fn burnside_count(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let index = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let perms = permutations(n);
    let mut total: u64 = 0;
    for p in &perms {
        let mut seen = vec![false; pairs.len()];
        let mut orbits = 0;
        for s in 0..pairs.len() {
            if seen[s] {
                continue;
            }
            orbits += 1;
            let mut cur = s;
            while !seen[cur] {
                seen[cur] = true;
                let (a, b) = pairs[cur];
                cur = index(p[a], p[b]);
            }
        }
        total += 1u64 << orbits;
    }
    total / perms.len() as u64
}

fn brute_partitions(n: usize, max: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|k| brute_partitions(n - k, k)).sum()
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn graph_counts_match_burnside() {
    for n in 1..=7 {
        assert_eq!(count_graphs(n).unwrap(), burnside_count(n), "n={n}");
    }
    assert_eq!(count_graphs(7).unwrap(), 1044);
}

#[test]
fn partitions_match_brute_force() {
    for n in 0..=30 {
        assert_eq!(
            partitions(n).unwrap(),
            u128::from(brute_partitions(n, n)),
            "n={n}"
        );
    }
}

#[test]
fn census_counts() {
    assert_eq!(count_graphs(6).unwrap(), 156);
    assert_eq!(partitions(6).unwrap(), 11);
    assert_eq!(sigma(6).unwrap(), 145);
    assert_eq!(sigma(2).unwrap(), 0);
    assert_eq!(sigma(7).unwrap(), 1029);
    let gamma = [1, 2, 4, 11, 34, 156, 1044];
    let p = [1, 2, 3, 5, 7, 11, 15];
    for n in 1..=7 {
        assert_eq!(sigma(n).unwrap(), gamma[n - 1] - p[n - 1], "n={n}");
    }
    assert!(count_graphs(9).is_err());
    assert!(count_graphs(0).is_err());
}

#[test]
fn enumeration_classes_are_distinct_and_canonical() {
    let graphs = enumerate_graphs(6);
    let mut forms: Vec<_> = graphs.iter().map(canonical_form).collect();
    for (g, f) in graphs.iter().zip(&forms) {
        assert_eq!(&f.to_graph(), g);
    }
    forms.dedup();
    assert_eq!(forms.len(), 156);
}

#[test]
fn einhorn_schoenberg() {
    let mut checked = 0;
    for n in 2..=6 {
        for g in enumerate_graphs(n) {
            let r = dim2(&g).unwrap();
            assert!(r.witness_error() < WITNESS_TOL, "{}", g.to_text());
            if is_clique_union(&g) {
                assert_eq!(r.dim2, n - 1, "{}", g.to_text());
            } else {
                assert!(r.dim2 < n - 1, "{}", g.to_text());
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 2 + 4 + 11 + 34 + 156);
}

#[test]
fn dim2_is_isomorphism_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..20 {
        let n = 4 + k % 5;
        let g = random_graph(n, &mut rng);
        let base = dim2(&g).unwrap();
        for _ in 0..50 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            let r = dim2(&h).unwrap();
            assert_eq!(r.dim2, base.dim2);
            assert!((r.ratio - base.ratio).abs() < 1e-8);
            assert!(r.witness_error() < WITNESS_TOL);
        }
    }
}

#[test]
fn deleting_a_vertex_never_raises_dim2() {
    for n in 3..=5 {
        for g in enumerate_graphs(n) {
            let d = dim2(&g).unwrap().dim2;
            for v in 0..n {
                let h = g.remove_vertex(v);
                assert!(dim2(&h).unwrap().dim2 <= d, "{} minus {v}", g.to_text());
            }
        }
    }
}

#[test]
fn triangular_five_lives_in_four_dimensions() {
    let r = dim2(&SimpleGraph::triangular(5)).unwrap();
    assert_eq!(r.dim2, 4);
    assert!(r.witness_error() < WITNESS_TOL);
    assert!(r.witness.iter().all(|p| p.len() == 4));
    // Edge midpoints of a regular simplex: long/short squared ratio is 2.
    assert!((r.ratio - 2.0).abs() < 1e-8);
}

#[test]
fn parsed_path_is_collinear() {
    let g = SimpleGraph::parse("3 2\n0 1\n1 2\n").unwrap();
    let r = dim2(&g).unwrap();
    assert_eq!(r.dim2, 1);
    assert!((r.ratio - 4.0).abs() < 1e-8);
}
