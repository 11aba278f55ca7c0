//! Dense-group extraction by core peeling.
//!
//! A core at level `t` is the largest node subset in which every member's
//! support — its plain degree, or the sum of its arc weights to other
//! members — stays at or above `t`. Because support only grows when the
//! subset grows, repeatedly deleting any violating node converges to the
//! same unique maximal set no matter the order, which makes cores cheap,
//! deterministic summaries of where a collaboration network is dense.
//!
//! Loops never count toward support: a self-arc says nothing about a node's
//! embedding among others, and counting it would let singletons satisfy any
//! threshold on their own.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::net::{NodeSet, NodeVector, Partition, SparseNetwork};

/// A core of a network: the maximal subset whose members all keep at least
/// the requested support inside the subset.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreResult {
    over: Arc<NodeSet>,
    /// The threshold the members satisfy.
    pub level: f64,
    /// Sorted ids of the member nodes.
    pub members: Vec<usize>,
    /// Undirected edges of the symmetrized network with both ends among the
    /// members (loops excluded).
    pub induced_arcs: usize,
}

impl CoreResult {
    /// The node set the member ids index into.
    pub fn over(&self) -> &Arc<NodeSet> {
        &self.over
    }

    /// Labels of the member nodes, in id order.
    pub fn member_labels(&self) -> Vec<&str> {
        self.members.iter().map(|&u| self.over.label(u)).collect()
    }

    /// Membership as a two-class partition: members 1, everyone else 0.
    pub fn to_partition(&self) -> Partition {
        let mut classes = vec![0i64; self.over.len()];
        for &u in &self.members {
            classes[u] = 1;
        }
        Partition::new(self.over.clone(), classes).expect("classes match the node set")
    }
}

/// Symmetrized loop-free adjacency: for each node, its neighbors with weight
/// `max(w_uv, w_vu)`, rejecting negative weights.
fn symmetric_adjacency(net: &SparseNetwork) -> Result<Vec<Vec<(usize, f64)>>> {
    if !net.is_one_mode() {
        return Err(Error::NotOneMode {
            rows: net.row_set().describe(),
            cols: net.col_set().describe(),
        });
    }
    let n = net.row_set().len();
    // Collect both orientations of every non-loop arc, then keep the
    // heavier orientation per unordered pair.
    let mut half: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (i, j, w) in net.arcs() {
        if w < 0.0 {
            return Err(Error::NegativeWeight {
                from: net.row_set().label(i).to_string(),
                to: net.col_set().label(j).to_string(),
                weight: w,
            });
        }
        if i == j {
            continue;
        }
        half[i].push((j, w));
        half[j].push((i, w));
    }
    let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (u, mut list) in half.into_iter().enumerate() {
        list.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        for (v, w) in list {
            match adjacency[u].last_mut() {
                Some(last) if last.0 == v => last.1 = w,
                _ => adjacency[u].push((v, w)),
            }
        }
    }
    Ok(adjacency)
}

fn count_induced(adjacency: &[Vec<(usize, f64)>], members: &[usize]) -> usize {
    let mut inside = vec![false; adjacency.len()];
    for &u in members {
        inside[u] = true;
    }
    members
        .iter()
        .map(|&u| adjacency[u].iter().filter(|&&(v, _)| inside[v] && v > u).count())
        .sum()
}

/// Peels every node whose support drops below `level`, where a node's
/// support is the sum of `score` over its remaining neighbors.
fn peel(
    adjacency: &[Vec<(usize, f64)>],
    level: f64,
    score: impl Fn(f64) -> f64,
) -> Vec<usize> {
    let n = adjacency.len();
    let mut support: Vec<f64> = (0..n)
        .map(|u| adjacency[u].iter().map(|&(_, w)| score(w)).sum())
        .collect();
    let mut alive = vec![true; n];
    let mut queue: Vec<usize> = (0..n).filter(|&u| support[u] < level).collect();
    for &u in &queue {
        alive[u] = false;
    }
    while let Some(u) = queue.pop() {
        for &(v, w) in &adjacency[u] {
            if alive[v] {
                support[v] -= score(w);
                if support[v] < level {
                    alive[v] = false;
                    queue.push(v);
                }
            }
        }
    }
    (0..n).filter(|&u| alive[u]).collect()
}

/// The `k`-core: the maximal subset in which every node has at least `k`
/// neighbors inside the subset. Arc weights and directions are ignored;
/// only (symmetrized) adjacency counts.
pub fn k_core(net: &SparseNetwork, k: usize) -> Result<CoreResult> {
    let adjacency = symmetric_adjacency(net)?;
    let members = peel(&adjacency, k as f64, |_| 1.0);
    let induced_arcs = count_induced(&adjacency, &members);
    Ok(CoreResult {
        over: net.row_set().clone(),
        level: k as f64,
        members,
        induced_arcs,
    })
}

/// The weighted core at threshold `t`: the maximal subset in which every
/// node's total arc weight to other members is at least `t`.
///
/// Directed inputs are symmetrized by taking the heavier orientation of
/// each pair. On a binary network this coincides with [`k_core`] at
/// `k = ceil(t)`.
pub fn weight_core(net: &SparseNetwork, t: f64) -> Result<CoreResult> {
    let adjacency = symmetric_adjacency(net)?;
    let members = peel(&adjacency, t, |w| w);
    let induced_arcs = count_induced(&adjacency, &members);
    Ok(CoreResult {
        over: net.row_set().clone(),
        level: t,
        members,
        induced_arcs,
    })
}

/// For every node, the largest `k` such that the node belongs to the
/// `k`-core.
///
/// Nodes are consumed in order of current degree; each removal records the
/// node's degree at that moment (never letting it fall below the level
/// already reached), which is exactly its core number.
pub fn core_decomposition(net: &SparseNetwork) -> Result<NodeVector> {
    let adjacency = symmetric_adjacency(net)?;
    let n = adjacency.len();
    let mut degree: Vec<usize> = adjacency.iter().map(Vec::len).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    // Bucket queue over current degrees.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_degree + 1];
    for u in 0..n {
        buckets[degree[u]].push(u);
    }
    let mut removed = vec![false; n];
    let mut core = vec![0usize; n];
    let mut d = 0usize;
    while d <= max_degree {
        // Entries go stale when a degree decrements after the push; the
        // fresh entry always sits in the bucket of the current degree.
        match buckets[d].pop() {
            None => d += 1,
            Some(u) => {
                if removed[u] || degree[u] != d {
                    continue;
                }
                removed[u] = true;
                core[u] = d;
                for &(v, _) in &adjacency[u] {
                    if !removed[v] && degree[v] > d {
                        degree[v] -= 1;
                        buckets[degree[v]].push(v);
                    }
                }
            }
        }
    }
    NodeVector::new(
        net.row_set().clone(),
        core.into_iter().map(|c| c as f64).collect(),
    )
}
