//! Elementary network operators: multiplication, transposition,
//! row-normalization, binarization, diagonal scaling, and weighted addition.
//!
//! Multiplication touches only nonzero elements. Every intermediate node `k`
//! contributes the products `a_ik * b_kj` over its predecessors in the left
//! network and successors in the right one, so the total work is
//! `sum_k deg_left(k) * deg_right(k)` rather than the cubic cost of the dense
//! triple loop. Weights live in the ordinary real semiring.

use crate::error::{Error, Result};
use crate::net::{same_node_set, Direction, NodeVector, SparseNetwork};

/// Which side of a network a diagonal scaling applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Denominator rule for [`row_normalize_by`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShareRule {
    /// Divide by the row's total outgoing weight (empty rows stay empty).
    /// Row sums of the result are 0 or 1.
    #[default]
    WholeRow,
    /// Divide by the row's total minus one, interpreting shares as time spent
    /// on each co-participant rather than on the row itself.
    ExcludingSelf,
}

/// Product of two compatible networks: `c_ij = sum_k a_ik * b_kj` over the
/// shared middle set, keeping only nonzero results.
///
/// The accumulator is a per-row scatter/gather buffer over reachable columns,
/// so the running time is proportional to the number of emitted
/// accumulations, not to the dense dimensions.
pub fn multiply(a: &SparseNetwork, b: &SparseNetwork) -> Result<SparseNetwork> {
    if !same_node_set(a.col_set(), b.row_set()) {
        return Err(Error::IncompatibleSets {
            left: a.col_set().describe(),
            right: b.row_set().describe(),
        });
    }
    let n_rows = a.row_set().len();
    let n_cols = b.col_set().len();

    let mut acc = vec![0.0f64; n_cols];
    let mut stamp = vec![usize::MAX; n_cols];
    let mut touched: Vec<usize> = Vec::new();
    let mut arcs: Vec<(usize, usize, f64)> = Vec::new();

    for i in 0..n_rows {
        touched.clear();
        for (k, aw) in a.out_arcs(i) {
            for (j, bw) in b.out_arcs(k) {
                if stamp[j] != i {
                    stamp[j] = i;
                    acc[j] = aw * bw;
                    touched.push(j);
                } else {
                    acc[j] += aw * bw;
                }
            }
        }
        touched.sort_unstable();
        for &j in &touched {
            if acc[j] != 0.0 {
                arcs.push((i, j, acc[j]));
            }
        }
    }

    SparseNetwork::from_arcs(a.row_set().clone(), b.col_set().clone(), arcs, true)
}

/// The reversed network; see [`SparseNetwork::transposed`].
pub fn transpose(net: &SparseNetwork) -> SparseNetwork {
    net.transposed()
}

/// Divides each arc weight by the total outgoing weight of its source node,
/// so every row of the result sums to 1 (or 0 for nodes without out-arcs).
///
/// Rejects negative weights, for which shares are undefined.
pub fn row_normalize(net: &SparseNetwork) -> Result<SparseNetwork> {
    row_normalize_by(net, ShareRule::WholeRow)
}

/// Row-normalization with an explicit denominator rule.
pub fn row_normalize_by(net: &SparseNetwork, rule: ShareRule) -> Result<SparseNetwork> {
    for (i, j, w) in net.arcs() {
        if w < 0.0 {
            return Err(Error::NegativeWeight {
                from: net.row_set().label(i).to_string(),
                to: net.col_set().label(j).to_string(),
                weight: w,
            });
        }
    }
    let sums = net.weight_sums(Direction::Out);
    let mut arcs = Vec::with_capacity(net.arc_count());
    for (i, j, w) in net.arcs() {
        // Rows that reach this point hold at least one positive arc, so the
        // whole-row sum is strictly positive.
        let denom = match rule {
            ShareRule::WholeRow => sums.get(i),
            ShareRule::ExcludingSelf => (sums.get(i) - 1.0).max(1.0),
        };
        arcs.push((i, j, w / denom));
    }
    SparseNetwork::from_arcs(net.row_set().clone(), net.col_set().clone(), arcs, true)
}

/// Replaces every stored weight by 1, keeping the arc set.
pub fn binarize(net: &SparseNetwork) -> SparseNetwork {
    let arcs = net.arcs().map(|(i, j, _)| (i, j, 1.0)).collect();
    SparseNetwork::from_arcs(net.row_set().clone(), net.col_set().clone(), arcs, true)
        .expect("binarized arcs are valid")
        .with_directed_flag(net.is_directed())
}

/// Scales arcs by a per-node factor on the chosen side; arcs scaled to
/// exactly zero disappear.
pub fn diag_scale(net: &SparseNetwork, d: &NodeVector, side: Side) -> Result<SparseNetwork> {
    let expected = match side {
        Side::Left => net.row_set(),
        Side::Right => net.col_set(),
    };
    if !same_node_set(d.over(), expected) {
        return Err(Error::VectorSetMismatch {
            vector: d.over().describe(),
            expected: expected.describe(),
        });
    }
    let arcs = net
        .arcs()
        .map(|(i, j, w)| {
            let f = match side {
                Side::Left => d.get(i),
                Side::Right => d.get(j),
            };
            (i, j, f * w)
        })
        .collect();
    SparseNetwork::from_arcs(net.row_set().clone(), net.col_set().clone(), arcs, true)
}

/// Arc-wise `alpha * a + beta * b` over identical node sets; absent arcs
/// count as zero, and exact-zero results are dropped.
pub fn add_scaled(
    a: &SparseNetwork,
    alpha: f64,
    b: &SparseNetwork,
    beta: f64,
) -> Result<SparseNetwork> {
    if !same_node_set(a.row_set(), b.row_set()) || !same_node_set(a.col_set(), b.col_set()) {
        return Err(Error::IncompatibleSets {
            left: format!("{} x {}", a.row_set().describe(), a.col_set().describe()),
            right: format!("{} x {}", b.row_set().describe(), b.col_set().describe()),
        });
    }
    let mut arcs = Vec::with_capacity(a.arc_count() + b.arc_count());
    for i in 0..a.row_set().len() {
        let mut left = a.out_arcs(i).peekable();
        let mut right = b.out_arcs(i).peekable();
        loop {
            match (left.peek().copied(), right.peek().copied()) {
                (Some((ja, wa)), Some((jb, wb))) => {
                    if ja == jb {
                        arcs.push((i, ja, alpha * wa + beta * wb));
                        left.next();
                        right.next();
                    } else if ja < jb {
                        arcs.push((i, ja, alpha * wa));
                        left.next();
                    } else {
                        arcs.push((i, jb, beta * wb));
                        right.next();
                    }
                }
                (Some((ja, wa)), None) => {
                    arcs.push((i, ja, alpha * wa));
                    left.next();
                }
                (None, Some((jb, wb))) => {
                    arcs.push((i, jb, beta * wb));
                    right.next();
                }
                (None, None) => break,
            }
        }
    }
    let directed = a.is_directed() || b.is_directed();
    Ok(
        SparseNetwork::from_arcs(a.row_set().clone(), a.col_set().clone(), arcs, true)?
            .with_directed_flag(directed),
    )
}

/// An identity-diagonal one-mode network over a set, useful as a
/// multiplication unit.
pub fn identity(set: std::sync::Arc<crate::net::NodeSet>) -> SparseNetwork {
    let arcs = (0..set.len()).map(|i| (i, i, 1.0)).collect();
    SparseNetwork::from_arcs(set.clone(), set, arcs, true).expect("identity arcs are valid")
}
