//! Pre-flight analysis for network products.
//!
//! A product of two sparse networks is not automatically sparse: every shared
//! middle node `k` joins each of its predecessors in the left operand to each
//! of its successors in the right one, contributing a complete two-mode patch
//! of `dA(k) * dB(k)` accumulations. A single hub — one work with hundreds of
//! authors, say — can therefore blow a product up quadratically. This module
//! computes the per-node work profile and the summary quantities that bound
//! the product size, and offers a guarded multiplication that refuses to run
//! when the predicted work exceeds a budget, naming the hubs to drop.

use std::sync::Arc;

use crate::algebra::multiply;
use crate::error::{Error, Result};
use crate::net::{same_node_set, Direction, NodeSet, SparseNetwork};

/// Degree profile of a planned product over the shared middle set, with the
/// summary quantities controlling how sparse the result can be.
///
/// For each middle node `k`, `dA(k)` counts its predecessors in the left
/// operand and `dB(k)` its successors in the right one. The headline numbers:
///
/// * `exact_work` — `sum_k dA(k) * dB(k)`, the number of accumulations a
///   multiplication will emit, and an upper bound on the product's arcs;
/// * `delta_min` — the largest `min(dA(k), dB(k))` over all `k`;
/// * `d_star` — the smallest `d` such that at most `d` nodes have
///   `max(dA, dB) >= d` (a degree-profile analogue of the h-index);
/// * `k_star_size` — how many nodes clear that `d_star` threshold;
/// * `fill_bound` — `d_star * (delta_min * max(|rows|, |cols|) +
///   min(arcs_left, arcs_right))`, a closed-form ceiling on `exact_work`
///   that needs only the summary numbers.
#[derive(Debug, Clone)]
pub struct SparsityReport {
    middle: Arc<NodeSet>,
    /// Predecessor count of each middle node in the left operand.
    pub pred_degrees: Vec<usize>,
    /// Successor count of each middle node in the right operand.
    pub succ_degrees: Vec<usize>,
    /// Largest per-node minimum degree.
    pub delta_min: usize,
    /// Smallest `d` with at most `d` middle nodes of maximum degree `>= d`.
    pub d_star: usize,
    /// Number of middle nodes whose maximum degree reaches `d_star`.
    pub k_star_size: usize,
    /// Total accumulations a multiplication will perform.
    pub exact_work: u64,
    /// Closed-form ceiling on `exact_work` from the summary quantities.
    pub fill_bound: f64,
    /// Row count of the left operand.
    pub left_rows: usize,
    /// Column count of the right operand.
    pub right_cols: usize,
    /// Arc count of the left operand.
    pub left_arcs: usize,
    /// Arc count of the right operand.
    pub right_arcs: usize,
}

impl SparsityReport {
    /// The shared middle node set the profile ranges over.
    pub fn middle(&self) -> &Arc<NodeSet> {
        &self.middle
    }

    /// Accumulations contributed by middle node `k`.
    pub fn work_of(&self, k: usize) -> u64 {
        self.pred_degrees[k] as u64 * self.succ_degrees[k] as u64
    }

    /// `min(dA(k), dB(k))`.
    pub fn min_degree(&self, k: usize) -> usize {
        self.pred_degrees[k].min(self.succ_degrees[k])
    }

    /// `max(dA(k), dB(k))`.
    pub fn max_degree(&self, k: usize) -> usize {
        self.pred_degrees[k].max(self.succ_degrees[k])
    }

    /// Ids of the middle nodes whose maximum degree reaches `d_star`.
    pub fn k_star(&self) -> Vec<usize> {
        (0..self.middle.len())
            .filter(|&k| self.max_degree(k) >= self.d_star)
            .collect()
    }

    /// Middle nodes sorted by descending work (ties by label), as
    /// `(label, work)` pairs — the hubs a caller would drop first.
    pub fn worst_nodes(&self) -> Vec<(String, u64)> {
        let mut nodes: Vec<(String, u64)> = (0..self.middle.len())
            .filter(|&k| self.work_of(k) > 0)
            .map(|k| (self.middle.label(k).to_string(), self.work_of(k)))
            .collect();
        nodes.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        nodes
    }

    /// Packages this profile as a refusal of the given budget, listing the
    /// shortest descending-work hub prefix whose removal would fit.
    pub fn into_refusal(self, max_work: u64) -> WorkRefusal {
        let mut remaining = self.exact_work;
        let mut worst = Vec::new();
        for (label, work) in self.worst_nodes() {
            if remaining <= max_work {
                break;
            }
            remaining -= work;
            worst.push((label, work));
        }
        WorkRefusal {
            max_work,
            report: self,
            worst,
        }
    }

    /// Line-oriented text form: one `label<TAB>dA<TAB>dB` line per middle
    /// node, then a summary block.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("middle set: {}\n", self.middle.describe()));
        for k in 0..self.middle.len() {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                self.middle.label(k),
                self.pred_degrees[k],
                self.succ_degrees[k]
            ));
        }
        out.push_str(&format!("deltaMin: {}\n", self.delta_min));
        out.push_str(&format!("dStar: {}\n", self.d_star));
        out.push_str(&format!("kStarSize: {}\n", self.k_star_size));
        out.push_str(&format!("exactWork: {}\n", self.exact_work));
        out.push_str(&format!("fillBound: {}\n", self.fill_bound));
        out
    }
}

/// A refused multiplication: the predicted work beat the budget.
///
/// `worst` lists, in descending work order, the shortest prefix of hub nodes
/// whose removal would bring the remaining work within `max_work` — the
/// concrete to-drop list for a retry.
#[derive(Debug, Clone)]
pub struct WorkRefusal {
    /// The budget that was exceeded.
    pub max_work: u64,
    /// Full degree profile of the refused product.
    pub report: SparsityReport,
    /// Minimal descending-work hub prefix to remove, as `(label, work)`.
    pub worst: Vec<(String, u64)>,
}

/// Profiles the product `A * B` without computing it.
pub fn analyze_product(a: &SparseNetwork, b: &SparseNetwork) -> Result<SparsityReport> {
    if !same_node_set(a.col_set(), b.row_set()) {
        return Err(Error::IncompatibleSets {
            left: a.col_set().describe(),
            right: b.row_set().describe(),
        });
    }
    let middle = a.col_set().clone();
    let n = middle.len();

    let mut pred = vec![0usize; n];
    for (_, k, _) in a.arcs() {
        pred[k] += 1;
    }
    let succ: Vec<usize> = (0..n).map(|k| b.out_degree(k)).collect();

    let mut delta_min = 0usize;
    let mut exact_work = 0u64;
    let mut max_of_max = 0usize;
    for k in 0..n {
        delta_min = delta_min.max(pred[k].min(succ[k]));
        max_of_max = max_of_max.max(pred[k].max(succ[k]));
        exact_work += pred[k] as u64 * succ[k] as u64;
    }

    // |K(d)| = number of nodes with max-degree >= d, via suffix counts of the
    // max-degree histogram; scan upward until the count first drops to <= d.
    let mut histogram = vec![0usize; max_of_max + 2];
    for k in 0..n {
        histogram[pred[k].max(succ[k])] += 1;
    }
    let mut at_least = vec![0usize; max_of_max + 2];
    for d in (1..=max_of_max).rev() {
        at_least[d] = at_least[d + 1] + histogram[d];
    }
    let mut d_star = max_of_max + 1;
    for d in 1..=max_of_max + 1 {
        if at_least.get(d).copied().unwrap_or(0) <= d {
            d_star = d;
            break;
        }
    }
    let k_star_size = at_least.get(d_star).copied().unwrap_or(0);

    let left_rows = a.row_set().len();
    let right_cols = b.col_set().len();
    let left_arcs = a.arc_count();
    let right_arcs = b.arc_count();
    let fill_bound = d_star as f64
        * (delta_min as f64 * left_rows.max(right_cols) as f64
            + left_arcs.min(right_arcs) as f64);

    Ok(SparsityReport {
        middle,
        pred_degrees: pred,
        succ_degrees: succ,
        delta_min,
        d_star,
        k_star_size,
        exact_work,
        fill_bound,
        left_rows,
        right_cols,
        left_arcs,
        right_arcs,
    })
}

/// Multiplies `A * B` only if the predicted work stays within `max_work`;
/// otherwise refuses with the profile and the hubs to drop.
pub fn guarded_multiply(
    a: &SparseNetwork,
    b: &SparseNetwork,
    max_work: u64,
) -> Result<SparseNetwork> {
    let report = analyze_product(a, b)?;
    if report.exact_work <= max_work {
        return multiply(a, b);
    }
    Err(Error::WorkLimitExceeded(Box::new(
        report.into_refusal(max_work),
    )))
}

/// Removes every arc leaving (`Out`) or entering (`In`) a node whose degree
/// in that direction exceeds `threshold`, returning the thinned network and
/// the labels of the affected nodes.
///
/// The node sets are unchanged; hubs merely lose their arcs, so they can be
/// reviewed separately and the rest of the pipeline proceeds on a product
/// that can no longer explode through them.
pub fn drop_high_degree(
    net: &SparseNetwork,
    direction: Direction,
    threshold: usize,
) -> (SparseNetwork, Vec<String>) {
    let over = match direction {
        Direction::Out => net.row_set(),
        Direction::In => net.col_set(),
    };
    let mut degree = vec![0usize; over.len()];
    for (i, j, _) in net.arcs() {
        let node = match direction {
            Direction::Out => i,
            Direction::In => j,
        };
        degree[node] += 1;
    }
    let removed: Vec<String> = (0..over.len())
        .filter(|&k| degree[k] > threshold)
        .map(|k| over.label(k).to_string())
        .collect();
    let arcs = net
        .arcs()
        .filter(|&(i, j, _)| {
            if net.is_directed() {
                let node = match direction {
                    Direction::Out => i,
                    Direction::In => j,
                };
                degree[node] <= threshold
            } else {
                // An undirected arc is incident to both endpoints, so it goes
                // away when either endpoint does; this also keeps the stored
                // orientation pairs in step.
                degree[i] <= threshold && degree[j] <= threshold
            }
        })
        .collect();
    let kept = SparseNetwork::from_arcs(
        net.row_set().clone(),
        net.col_set().clone(),
        arcs,
        net.is_directed(),
    )
    .expect("dropping whole nodes keeps valid, symmetric arcs");
    (kept, removed)
}
