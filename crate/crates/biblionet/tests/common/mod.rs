//! Shared helpers for the integration suites: seeded generators for random
//! networks, a dense matrix-product oracle, and a brute-force core oracle.
//! Every generator takes an explicit RNG so each suite controls its seeds.
#![allow(dead_code)]

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use biblionet::net::{Mode, NodeSet, SparseNetwork};

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn node_set(mode: Mode, prefix: &str, count: usize) -> Arc<NodeSet> {
    NodeSet::new(mode, (0..count).map(|i| format!("{prefix}{i}"))).unwrap()
}

/// A random network with roughly `density * rows * cols` arcs. Integer
/// weights are drawn from 1..=5, real ones from (0, 1).
pub fn random_network(
    rng: &mut StdRng,
    rows: Arc<NodeSet>,
    cols: Arc<NodeSet>,
    density: f64,
    integer_weights: bool,
    directed: bool,
) -> SparseNetwork {
    let mut arcs = Vec::new();
    for i in 0..rows.len() {
        for j in 0..cols.len() {
            if rng.random::<f64>() < density {
                let weight = if integer_weights {
                    rng.random_range(1..=5) as f64
                } else {
                    rng.random::<f64>().max(f64::MIN_POSITIVE)
                };
                arcs.push((i, j, weight));
            }
        }
    }
    SparseNetwork::from_arcs(rows, cols, arcs, directed).unwrap()
}

/// A random binary works × authors network.
pub fn random_binary_wa(
    rng: &mut StdRng,
    works: usize,
    authors: usize,
    density: f64,
) -> SparseNetwork {
    let work_set = node_set(Mode::Works, "w", works);
    let author_set = node_set(Mode::Authors, "a", authors);
    let mut arcs = Vec::new();
    for p in 0..works {
        for i in 0..authors {
            if rng.random::<f64>() < density {
                arcs.push((p, i, 1.0));
            }
        }
    }
    SparseNetwork::from_arcs(work_set, author_set, arcs, true).unwrap()
}

/// A random acyclic binary citation network over `works`: arcs only point
/// from a higher-numbered work to a lower-numbered one.
pub fn random_citation_dag(
    rng: &mut StdRng,
    works: &Arc<NodeSet>,
    density: f64,
) -> SparseNetwork {
    let mut arcs = Vec::new();
    for p in 0..works.len() {
        for q in 0..p {
            if rng.random::<f64>() < density {
                arcs.push((p, q, 1.0));
            }
        }
    }
    SparseNetwork::from_arcs(works.clone(), works.clone(), arcs, true).unwrap()
}

/// The set of works each work cites, read straight off the arcs.
pub fn reference_sets(ci: &SparseNetwork) -> Vec<Vec<usize>> {
    let mut refs = vec![Vec::new(); ci.row_set().len()];
    for (p, q, _) in ci.arcs() {
        refs[p].push(q);
    }
    refs
}

pub fn to_dense(net: &SparseNetwork) -> Vec<Vec<f64>> {
    let mut dense = vec![vec![0.0; net.col_set().len()]; net.row_set().len()];
    for (i, j, w) in net.arcs() {
        dense[i][j] = w;
    }
    dense
}

/// Plain triple-loop matrix product over dense copies, the oracle the
/// sparse multiplication is checked against.
pub fn dense_product(a: &SparseNetwork, b: &SparseNetwork) -> Vec<Vec<f64>> {
    let left = to_dense(a);
    let right = to_dense(b);
    let rows = a.row_set().len();
    let mid = a.col_set().len();
    let cols = b.col_set().len();
    let mut out = vec![vec![0.0; cols]; rows];
    for i in 0..rows {
        for k in 0..mid {
            if left[i][k] == 0.0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] += left[i][k] * right[k][j];
            }
        }
    }
    out
}

/// Symmetrized loop-free support matrix: `m[u][v] = max(w(u,v), w(v,u))`,
/// the value a core member earns from a neighbor. Matches the support
/// definition the core routines use, rebuilt independently from the arcs.
pub fn support_matrix(net: &SparseNetwork) -> Vec<Vec<f64>> {
    let n = net.row_set().len();
    let mut m = vec![vec![0.0f64; n]; n];
    for (u, v, w) in net.arcs() {
        if u == v {
            continue;
        }
        m[u][v] = m[u][v].max(w);
        m[v][u] = m[v][u].max(w);
    }
    m
}

/// Brute-force core oracle for networks of at most `usize::BITS` nodes:
/// enumerates every node subset, keeps those where each member reaches the
/// level inside the subset, and returns the union of all of them (the
/// property is monotone under union, so the union is the unique maximal
/// satisfying set). `weighted` selects weight-sum support over neighbor
/// counting.
pub fn brute_force_core(net: &SparseNetwork, level: f64, weighted: bool) -> Vec<usize> {
    let n = net.row_set().len();
    assert!(n <= 20, "brute-force oracle is exponential in node count");
    let m = support_matrix(net);
    let mut union = 0usize;
    for subset in 0usize..(1 << n) {
        let mut ok = true;
        for u in 0..n {
            if subset & (1 << u) == 0 {
                continue;
            }
            let mut score = 0.0;
            for v in 0..n {
                if v != u && subset & (1 << v) != 0 {
                    if weighted {
                        score += m[u][v];
                    } else if m[u][v] > 0.0 {
                        score += 1.0;
                    }
                }
            }
            if score < level {
                ok = false;
                break;
            }
        }
        if ok {
            union |= subset;
        }
    }
    (0..n).filter(|u| union & (1 << u) != 0).collect()
}

/// A random one-mode network for core tests; weights are multiples of 0.5
/// so level sweeps hit exact boundaries. Undirected networks get both
/// orientations of every edge, matching the storage invariant.
pub fn random_one_mode(
    rng: &mut StdRng,
    nodes: usize,
    density: f64,
    binary: bool,
    directed: bool,
) -> SparseNetwork {
    let set = node_set(Mode::Generic, "v", nodes);
    let mut arcs = Vec::new();
    for i in 0..nodes {
        for j in 0..nodes {
            if (directed || i <= j) && rng.random::<f64>() < density {
                let weight = if binary {
                    1.0
                } else {
                    rng.random_range(1..=6) as f64 * 0.5
                };
                arcs.push((i, j, weight));
                if !directed && i != j {
                    arcs.push((j, i, weight));
                }
            }
        }
    }
    SparseNetwork::from_arcs(set.clone(), set, arcs, directed).unwrap()
}

/// Total of all implied matrix entries. Undirected storage already holds
/// both orientations, so this is simply the sum over stored arcs.
pub fn full_matrix_sum(net: &SparseNetwork) -> f64 {
    net.arcs().map(|(_, _, w)| w).sum()
}

/// In-degree counts (number of incoming arcs) per column node.
pub fn in_degrees(net: &SparseNetwork) -> Vec<usize> {
    let mut degrees = vec![0usize; net.col_set().len()];
    for (_, j, _) in net.arcs() {
        degrees[j] += 1;
    }
    degrees
}

/// Out-degree counts per row node.
pub fn out_degrees(net: &SparseNetwork) -> Vec<usize> {
    (0..net.row_set().len()).map(|i| net.out_degree(i)).collect()
}

/// Weighted degree (strength) per node under the core support definition.
pub fn strengths(net: &SparseNetwork) -> Vec<f64> {
    let m = support_matrix(net);
    m.iter().map(|row| row.iter().sum()).collect()
}

pub fn approx(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
