//! The network data model: node sets, sparse networks, partitions, and
//! per-node vectors.
//!
//! A [`SparseNetwork`] is a weighted directed network over one or two
//! [`NodeSet`]s, stored in compressed sparse row form. Networks are immutable
//! after construction; every operation produces a new network. Duplicate arcs
//! merge by summing their weights, and arcs whose weight is exactly zero are
//! never stored — an absent arc and a zero arc are the same thing.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// What kind of entities a node set holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Works,
    Authors,
    Keywords,
    Journals,
    Generic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Mode::Works => "works",
            Mode::Authors => "authors",
            Mode::Keywords => "keywords",
            Mode::Journals => "journals",
            Mode::Generic => "nodes",
        };
        f.write_str(name)
    }
}

/// An ordered set of uniquely labeled nodes of one mode.
///
/// Node ids are `0..len()` in label order of construction and are stable for
/// the lifetime of the set. Identity is by label: two sets with the same
/// labels in the same order are interchangeable, whatever their mode tags say.
#[derive(Debug)]
pub struct NodeSet {
    mode: Mode,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl NodeSet {
    /// Builds a node set from labels, rejecting duplicates.
    pub fn new<I, S>(mode: Mode, labels: I) -> Result<Arc<NodeSet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (id, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), id).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Arc::new(NodeSet {
            mode,
            labels,
            index,
        }))
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Id of a label, if present.
    pub fn id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    pub(crate) fn describe(&self) -> String {
        format!("{}({})", self.mode, self.len())
    }
}

/// Label-based equality; the mode tag is descriptive only.
impl PartialEq for NodeSet {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for NodeSet {}

/// True when two set handles denote the same node set.
pub fn same_node_set(a: &Arc<NodeSet>, b: &Arc<NodeSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Arc direction relative to a node: outgoing (row side) or incoming
/// (column side).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

/// A simple weighted directed network over `rows × cols`, stored as CSR.
///
/// One-mode networks are the special case where both sets are the same.
/// The `directed` flag records that a one-mode network is known to be
/// symmetric, which file writers use to emit edges instead of arc pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseNetwork {
    rows: Arc<NodeSet>,
    cols: Arc<NodeSet>,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    weights: Vec<f64>,
    directed: bool,
}

impl SparseNetwork {
    /// Builds a two-mode network from labeled arcs.
    ///
    /// Duplicate (source, target) pairs merge by summing; merged weights of
    /// exactly zero are dropped. Unknown labels and non-finite weights are
    /// rejected.
    pub fn two_mode(
        rows: Arc<NodeSet>,
        cols: Arc<NodeSet>,
        arcs: &[(&str, &str, f64)],
    ) -> Result<SparseNetwork> {
        let mut indexed = Vec::with_capacity(arcs.len());
        for &(src, dst, w) in arcs {
            let i = rows
                .id(src)
                .ok_or_else(|| Error::UnknownLabel(src.to_string()))?;
            let j = cols
                .id(dst)
                .ok_or_else(|| Error::UnknownLabel(dst.to_string()))?;
            indexed.push((i, j, w));
        }
        SparseNetwork::from_arcs(rows, cols, indexed, true)
    }

    /// Builds a one-mode network over a single node set.
    pub fn one_mode(set: Arc<NodeSet>, arcs: &[(&str, &str, f64)]) -> Result<SparseNetwork> {
        SparseNetwork::two_mode(set.clone(), set, arcs)
    }

    /// Builds a network from id-indexed arcs. Ids must lie inside the sets;
    /// duplicates merge, exact zeros are dropped.
    pub fn from_arcs(
        rows: Arc<NodeSet>,
        cols: Arc<NodeSet>,
        mut arcs: Vec<(usize, usize, f64)>,
        directed: bool,
    ) -> Result<SparseNetwork> {
        for &(i, j, w) in &arcs {
            if i >= rows.len() || j >= cols.len() {
                return Err(Error::UnknownLabel(format!("node id {}", i.max(j))));
            }
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight {
                    from: rows.label(i).to_string(),
                    to: cols.label(j).to_string(),
                    weight: w,
                });
            }
        }
        // Stable sort: duplicates of one (i, j) key merge in push order, so
        // a caller that appends mirrored arc pairs gets bitwise-identical
        // sums for both orientations even when addition order matters.
        arcs.sort_by_key(|&(i, j, _)| (i, j));

        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let mut col_idx = Vec::with_capacity(arcs.len());
        let mut weights = Vec::with_capacity(arcs.len());
        row_ptr.push(0);
        let mut cur_row = 0usize;
        let mut k = 0usize;
        while k < arcs.len() {
            let (i, j, _) = arcs[k];
            let mut w = 0.0;
            while k < arcs.len() && arcs[k].0 == i && arcs[k].1 == j {
                w += arcs[k].2;
                k += 1;
            }
            if w != 0.0 {
                while cur_row < i {
                    row_ptr.push(col_idx.len());
                    cur_row += 1;
                }
                col_idx.push(j);
                weights.push(w);
            }
        }
        while cur_row < rows.len() {
            row_ptr.push(col_idx.len());
            cur_row += 1;
        }

        let built = SparseNetwork {
            rows,
            cols,
            row_ptr,
            col_idx,
            weights,
            directed: true,
        };
        // Undirected storage keeps both orientations of every arc, so that
        // row scans see whole neighborhoods; enforce that here rather than
        // trusting the caller.
        if directed {
            Ok(built)
        } else {
            built.into_undirected()
        }
    }

    /// A network with no arcs.
    pub fn empty(rows: Arc<NodeSet>, cols: Arc<NodeSet>) -> SparseNetwork {
        let n = rows.len();
        SparseNetwork {
            rows,
            cols,
            row_ptr: vec![0; n + 1],
            col_idx: Vec::new(),
            weights: Vec::new(),
            directed: true,
        }
    }

    pub fn row_set(&self) -> &Arc<NodeSet> {
        &self.rows
    }

    pub fn col_set(&self) -> &Arc<NodeSet> {
        &self.cols
    }

    pub fn is_one_mode(&self) -> bool {
        same_node_set(&self.rows, &self.cols)
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn arc_count(&self) -> usize {
        self.col_idx.len()
    }

    /// Sum of all arc weights.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Out-arcs of a source node as `(target id, weight)`, targets ascending.
    pub fn out_arcs(&self, source: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let lo = self.row_ptr[source];
        let hi = self.row_ptr[source + 1];
        self.col_idx[lo..hi]
            .iter()
            .copied()
            .zip(self.weights[lo..hi].iter().copied())
    }

    pub fn out_degree(&self, source: usize) -> usize {
        self.row_ptr[source + 1] - self.row_ptr[source]
    }

    /// All arcs as `(source id, target id, weight)` in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows.len()).flat_map(move |i| self.out_arcs(i).map(move |(j, w)| (i, j, w)))
    }

    /// Weight of arc `(source, target)` by ids; `None` when absent.
    pub fn weight(&self, source: usize, target: usize) -> Option<f64> {
        let lo = self.row_ptr[source];
        let hi = self.row_ptr[source + 1];
        self.col_idx[lo..hi]
            .binary_search(&target)
            .ok()
            .map(|pos| self.weights[lo + pos])
    }

    /// Weight of arc `(source, target)` by labels; `None` when absent.
    pub fn weight_between(&self, source: &str, target: &str) -> Option<f64> {
        let i = self.rows.id(source)?;
        let j = self.cols.id(target)?;
        self.weight(i, j)
    }

    /// The reversed network: arc `(i, j, w)` becomes `(j, i, w)` and the node
    /// sets swap. Linear time in the number of arcs.
    pub fn transposed(&self) -> SparseNetwork {
        let n_rows = self.cols.len();
        let mut row_ptr = vec![0usize; n_rows + 1];
        for &j in &self.col_idx {
            row_ptr[j + 1] += 1;
        }
        for r in 0..n_rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        let mut col_idx = vec![0usize; self.col_idx.len()];
        let mut weights = vec![0.0f64; self.weights.len()];
        let mut next = row_ptr.clone();
        for (i, j, w) in self.arcs() {
            let pos = next[j];
            col_idx[pos] = i;
            weights[pos] = w;
            next[j] += 1;
        }
        SparseNetwork {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            row_ptr,
            col_idx,
            weights,
            directed: self.directed,
        }
    }

    /// Per-node arc counts in the given direction.
    pub fn degrees(&self, direction: Direction) -> NodeVector {
        match direction {
            Direction::Out => {
                let values = (0..self.rows.len())
                    .map(|i| self.out_degree(i) as f64)
                    .collect();
                NodeVector {
                    over: self.rows.clone(),
                    values,
                }
            }
            Direction::In => {
                let mut values = vec![0.0; self.cols.len()];
                for &j in &self.col_idx {
                    values[j] += 1.0;
                }
                NodeVector {
                    over: self.cols.clone(),
                    values,
                }
            }
        }
    }

    /// Per-node sums of arc weights in the given direction.
    pub fn weight_sums(&self, direction: Direction) -> NodeVector {
        match direction {
            Direction::Out => {
                let values = (0..self.rows.len())
                    .map(|i| self.out_arcs(i).map(|(_, w)| w).sum())
                    .collect();
                NodeVector {
                    over: self.rows.clone(),
                    values,
                }
            }
            Direction::In => {
                let mut values = vec![0.0; self.cols.len()];
                for (_, j, w) in self.arcs() {
                    values[j] += w;
                }
                NodeVector {
                    over: self.cols.clone(),
                    values,
                }
            }
        }
    }

    /// Marks a one-mode network as undirected after verifying that its arcs
    /// are exactly symmetric.
    pub fn into_undirected(mut self) -> Result<SparseNetwork> {
        if !self.is_one_mode() {
            return Err(Error::NotOneMode {
                rows: self.rows.describe(),
                cols: self.cols.describe(),
            });
        }
        for (i, j, w) in self.arcs() {
            if self.weight(j, i) != Some(w) {
                return Err(Error::NotSymmetric {
                    from: self.rows.label(i).to_string(),
                    to: self.cols.label(j).to_string(),
                });
            }
        }
        self.directed = false;
        Ok(self)
    }

    /// Sets the flag without re-validating storage; callers must guarantee
    /// that marking the network undirected leaves symmetric arcs behind.
    pub(crate) fn with_directed_flag(mut self, directed: bool) -> SparseNetwork {
        self.directed = directed;
        self
    }

    /// True when every arc weight is exactly 1.
    pub fn is_binary(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    /// First arc whose weight differs from 1, as an error payload.
    pub(crate) fn require_binary(&self) -> Result<()> {
        for (i, j, w) in self.arcs() {
            if w != 1.0 {
                return Err(Error::NotBinary {
                    from: self.rows.label(i).to_string(),
                    to: self.cols.label(j).to_string(),
                    weight: w,
                });
            }
        }
        Ok(())
    }

    /// Arc-wise comparison within an absolute-or-relative tolerance.
    pub fn approx_eq(&self, other: &SparseNetwork, tol: f64) -> bool {
        if !same_node_set(&self.rows, &other.rows)
            || !same_node_set(&self.cols, &other.cols)
            || self.row_ptr != other.row_ptr
            || self.col_idx != other.col_idx
        {
            return false;
        }
        self.weights
            .iter()
            .zip(&other.weights)
            .all(|(&a, &b)| (a - b).abs() <= tol * 1.0_f64.max(a.abs()).max(b.abs()))
    }
}

/// Assignment of every node of a set to an integer class.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    over: Arc<NodeSet>,
    classes: Vec<i64>,
    class_labels: Option<HashMap<i64, String>>,
}

impl Partition {
    /// One class id per node, in node order.
    pub fn new(over: Arc<NodeSet>, classes: Vec<i64>) -> Result<Partition> {
        if classes.len() != over.len() {
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "partition has {} entries for {} nodes",
                    classes.len(),
                    over.len()
                ),
            });
        }
        Ok(Partition {
            over,
            classes,
            class_labels: None,
        })
    }

    pub fn with_class_labels(mut self, labels: HashMap<i64, String>) -> Partition {
        self.class_labels = Some(labels);
        self
    }

    pub fn over(&self) -> &Arc<NodeSet> {
        &self.over
    }

    pub fn class_of(&self, node: usize) -> i64 {
        self.classes[node]
    }

    pub fn classes(&self) -> &[i64] {
        &self.classes
    }

    /// Distinct class ids, ascending.
    pub fn class_ids(&self) -> Vec<i64> {
        let mut ids: Vec<i64> = self.classes.to_vec();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn class_label(&self, class: i64) -> Option<&str> {
        self.class_labels
            .as_ref()
            .and_then(|m| m.get(&class))
            .map(String::as_str)
    }
}

/// One real value per node of a set.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeVector {
    over: Arc<NodeSet>,
    values: Vec<f64>,
}

impl NodeVector {
    pub fn new(over: Arc<NodeSet>, values: Vec<f64>) -> Result<NodeVector> {
        if values.len() != over.len() {
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "vector has {} entries for {} nodes",
                    values.len(),
                    over.len()
                ),
            });
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteWeight {
                from: "vector".to_string(),
                to: "entry".to_string(),
                weight: bad,
            });
        }
        Ok(NodeVector { over, values })
    }

    pub fn over(&self) -> &Arc<NodeSet> {
        &self.over
    }

    pub fn get(&self, node: usize) -> f64 {
        self.values[node]
    }

    pub fn get_by_label(&self, label: &str) -> Option<f64> {
        self.over.id(label).map(|id| self.values[id])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(mode: Mode, labels: &[&str]) -> Arc<NodeSet> {
        NodeSet::new(mode, labels.iter().copied()).unwrap()
    }

    #[test]
    fn two_mode_construction() {
        let works = set(Mode::Works, &["p1"]);
        let authors = set(Mode::Authors, &["a", "b"]);
        let net =
            SparseNetwork::two_mode(works, authors, &[("p1", "a", 1.0), ("p1", "b", 1.0)]).unwrap();
        assert_eq!(net.arc_count(), 2);
        assert_eq!(net.weight_between("p1", "a"), Some(1.0));
    }

    #[test]
    fn duplicate_arcs_merge() {
        let works = set(Mode::Works, &["p1"]);
        let authors = set(Mode::Authors, &["a"]);
        let net = SparseNetwork::two_mode(
            works.clone(),
            authors.clone(),
            &[("p1", "a", 1.0), ("p1", "a", 1.0)],
        )
        .unwrap();
        assert_eq!(net.arc_count(), 1);
        assert_eq!(net.weight_between("p1", "a"), Some(2.0));

        let cancelled =
            SparseNetwork::two_mode(works, authors, &[("p1", "a", 1.0), ("p1", "a", -1.0)])
                .unwrap();
        assert_eq!(cancelled.arc_count(), 0);
    }

    #[test]
    fn mirrored_duplicates_merge_symmetrically() {
        // 0.1 + 0.2 + 0.3 rounds differently under reorderings, so the merge
        // must consume both orientations' duplicates in the same order for
        // the undirected symmetry check to hold.
        let nodes = set(Mode::Generic, &["u", "v"]);
        let mut arcs = Vec::new();
        for w in [0.1, 0.2, 0.3] {
            arcs.push((0, 1, w));
            arcs.push((1, 0, w));
        }
        let net = SparseNetwork::from_arcs(nodes.clone(), nodes, arcs, false).unwrap();
        assert_eq!(net.weight(0, 1), net.weight(1, 0));
        assert_eq!(net.arc_count(), 2);
    }

    #[test]
    fn unknown_label_is_rejected() {
        let works = set(Mode::Works, &["p1"]);
        let authors = set(Mode::Authors, &["a"]);
        let err = SparseNetwork::two_mode(works, authors, &[("p9", "a", 1.0)]).unwrap_err();
        assert!(matches!(err, Error::UnknownLabel(l) if l == "p9"));
    }

    #[test]
    fn non_finite_weight_is_rejected() {
        let works = set(Mode::Works, &["p1"]);
        let authors = set(Mode::Authors, &["a"]);
        let err =
            SparseNetwork::two_mode(works, authors, &[("p1", "a", f64::NAN)]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteWeight { .. }));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = NodeSet::new(Mode::Authors, ["a", "a"]).unwrap_err();
        assert!(matches!(err, Error::DuplicateLabel(l) if l == "a"));
    }

    #[test]
    fn degrees_and_weight_sums() {
        let works = set(Mode::Works, &["p1", "p2", "p3"]);
        let authors = set(Mode::Authors, &["a", "b", "c"]);
        let wa = SparseNetwork::two_mode(
            works,
            authors,
            &[
                ("p1", "a", 1.0),
                ("p1", "b", 1.0),
                ("p2", "a", 1.0),
                ("p2", "b", 1.0),
                ("p2", "c", 1.0),
                ("p3", "c", 1.0),
            ],
        )
        .unwrap();
        let out = wa.degrees(Direction::Out);
        assert_eq!(out.get_by_label("p1"), Some(2.0));
        assert_eq!(out.get_by_label("p2"), Some(3.0));
        // binary network: weight sums coincide with degrees
        assert_eq!(wa.weight_sums(Direction::Out).values(), out.values());
        // in-degrees count works per author
        let ind = wa.degrees(Direction::In);
        assert_eq!(ind.get_by_label("c"), Some(2.0));
    }

    #[test]
    fn degrees_of_empty_network() {
        let works = set(Mode::Works, &["p1", "p2"]);
        let authors = set(Mode::Authors, &["a"]);
        let net = SparseNetwork::empty(works, authors);
        assert!(net.degrees(Direction::Out).values().iter().all(|&d| d == 0.0));
        assert!(net.degrees(Direction::In).values().iter().all(|&d| d == 0.0));
    }

    #[test]
    fn fractional_out_sums() {
        let works = set(Mode::Works, &["p"]);
        let authors = set(Mode::Authors, &["a", "b"]);
        let net =
            SparseNetwork::two_mode(works, authors, &[("p", "a", 0.5), ("p", "b", 0.5)]).unwrap();
        assert_eq!(net.weight_sums(Direction::Out).get_by_label("p"), Some(1.0));
    }

    #[test]
    fn out_totals_match_in_totals() {
        let s = set(Mode::Generic, &["x", "y", "z"]);
        let net = SparseNetwork::one_mode(
            s,
            &[("x", "y", 0.25), ("y", "z", 1.5), ("z", "x", 3.0), ("x", "z", 0.5)],
        )
        .unwrap();
        let out: f64 = net.weight_sums(Direction::Out).sum();
        let inn: f64 = net.weight_sums(Direction::In).sum();
        assert_eq!(out, net.total_weight());
        assert!((out - inn).abs() < 1e-12);
    }

    #[test]
    fn transpose_swaps_degrees() {
        let works = set(Mode::Works, &["p1", "p2"]);
        let authors = set(Mode::Authors, &["a"]);
        let net =
            SparseNetwork::two_mode(works, authors, &[("p1", "a", 1.0), ("p2", "a", 2.0)]).unwrap();
        let t = net.transposed();
        assert_eq!(t.weight_between("a", "p2"), Some(2.0));
        assert_eq!(
            net.degrees(Direction::Out).values(),
            t.degrees(Direction::In).values()
        );
        assert_eq!(t.transposed(), net);
    }

    #[test]
    fn node_set_equality_ignores_mode() {
        let a = set(Mode::Works, &["x", "y"]);
        let b = set(Mode::Generic, &["x", "y"]);
        assert!(same_node_set(&a, &b));
        let c = set(Mode::Works, &["y", "x"]);
        assert!(!same_node_set(&a, &c));
    }

    #[test]
    fn partition_and_vector_length_checks() {
        let s = set(Mode::Works, &["p1", "p2"]);
        assert!(Partition::new(s.clone(), vec![1]).is_err());
        assert!(NodeVector::new(s.clone(), vec![0.5, f64::INFINITY]).is_err());
        let p = Partition::new(s, vec![1994, 2004]).unwrap();
        assert_eq!(p.class_ids(), vec![1994, 2004]);
    }
}
