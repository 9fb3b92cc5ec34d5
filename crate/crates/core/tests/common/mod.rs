//! Naive reference implementations used to check the optimized engine.
//! Nothing here calls into the library's distance, twin or search code.

#![allow(dead_code)]

use std::collections::HashSet;

use itertools::Itertools;
use pgmd_core::graph::SimpleGraph;
use pgmd_core::group::{FiniteGroup, GroupSpec};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INF: u32 = u32::MAX / 4;

/// Floyd–Warshall over the edge list.
pub fn naive_distances(graph: &SimpleGraph) -> Vec<Vec<u32>> {
    let n = graph.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in graph.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn naive_is_resolving(d: &[Vec<u32>], w: &[usize]) -> bool {
    let mut seen = HashSet::new();
    (0..d.len()).all(|v| seen.insert(w.iter().map(|&x| d[v][x]).collect::<Vec<_>>()))
}

pub fn naive_is_minimal(d: &[Vec<u32>], w: &[usize]) -> bool {
    naive_is_resolving(d, w)
        && (0..w.len()).all(|i| {
            let mut smaller = w.to_vec();
            smaller.remove(i);
            !naive_is_resolving(d, &smaller)
        })
}

/// Smallest resolving set by plain ascending subset sweep; the first hit in
/// lexicographic order is the witness.
pub fn naive_metric_dimension(graph: &SimpleGraph) -> (usize, Vec<usize>) {
    let d = naive_distances(graph);
    let n = graph.vertex_count();
    for k in 0..=n {
        if let Some(w) = (0..n).combinations(k).find(|w| naive_is_resolving(&d, w)) {
            return (k, w);
        }
    }
    unreachable!()
}

/// Every minimal resolving set, lexicographically sorted, from all `2^n`
/// subsets.
pub fn naive_minimal_sets(graph: &SimpleGraph) -> Vec<Vec<usize>> {
    let d = naive_distances(graph);
    let n = graph.vertex_count();
    let mut out: Vec<Vec<usize>> = (0..=n)
        .flat_map(|k| (0..n).combinations(k))
        .filter(|w| naive_is_minimal(&d, w))
        .collect();
    out.sort();
    out
}

/// Literal exchange property: for all distinct minimal `W1, W2` and all
/// `u ∈ W1` some `v ∈ W2` makes `(W1 \ {u}) ∪ {v}` minimal resolving.
pub fn naive_exchange(graph: &SimpleGraph) -> bool {
    let d = naive_distances(graph);
    let sets = naive_minimal_sets(graph);
    sets.iter().all(|w1| {
        sets.iter().filter(|w2| *w2 != w1).all(|w2| {
            w1.iter().all(|&u| {
                w2.iter().any(|&v| {
                    let mut s: Vec<usize> = w1.iter().copied().filter(|&x| x != u).collect();
                    if !s.contains(&v) {
                        s.push(v);
                    }
                    s.sort();
                    s.len() == w1.len() && naive_is_minimal(&d, &s)
                })
            })
        })
    })
}

/// Pairwise twin test straight from neighborhoods.
pub fn naive_twin(graph: &SimpleGraph, u: usize, v: usize) -> bool {
    let n = graph.vertex_count();
    let open = |x: usize| (0..n).filter(|&y| graph.has_edge(x, y)).collect::<Vec<_>>();
    let closed = |x: usize| {
        (0..n)
            .filter(|&y| y == x || graph.has_edge(x, y))
            .collect::<Vec<_>>()
    };
    u == v || open(u) == open(v) || closed(u) == closed(v)
}

/// Connected random graph: a random tree plus each other pair with
/// probability `p`.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> SimpleGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = SimpleGraph::empty(n);
    for v in 1..n {
        let parent = rng.random_range(0..v);
        g.add_edge(parent, v).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.random_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Every group of order at most 12 reachable through the spec grammar,
/// up to the obvious duplicates.
pub fn small_groups() -> Vec<(String, FiniteGroup)> {
    let mut specs: Vec<GroupSpec> = (1..=12).map(GroupSpec::Cyclic).collect();
    specs.extend((2..=6).map(GroupSpec::Dihedral));
    for f in [
        vec![2, 2],
        vec![2, 4],
        vec![2, 2, 2],
        vec![3, 3],
        vec![2, 6],
    ] {
        specs.push(GroupSpec::DirectProduct(f));
    }
    specs
        .into_iter()
        .map(|s| (s.to_string(), s.build().unwrap()))
        .collect()
}
