//! From data tables to networks, and structural edits of the results.
//!
//! A bibliography usually arrives as a table: one row per work, one column
//! per property (authors, keywords, year, …). A multi-valued property —
//! a cell holding a separator-joined list — unfolds into a binary two-mode
//! network from the keys to the observed values; a single-valued property
//! becomes a partition of the keys. All networks built from one table share
//! the same key node set, so they are immediately compatible for products.
//!
//! [`extract`] and [`shrink`] then cut a network down along a partition:
//! extraction keeps the selected classes' nodes, shrinking merges each class
//! into a single node while conserving total arc weight.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::net::{same_node_set, Mode, NodeSet, Partition, SparseNetwork};

/// A parsed table: unique row keys and their raw property cells.
#[derive(Debug, Clone)]
pub struct DataTable {
    key_column: String,
    property_names: Vec<String>,
    keys: Vec<String>,
    /// Per row, cells in `property_names` order.
    cells: Vec<Vec<String>>,
    separator: char,
}

/// How a table property turns into a network object.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyKind {
    /// Separator-joined value list per cell → binary two-mode network.
    MultiValued,
    /// One value per cell → partition of the keys.
    SingleValued,
}

/// Everything one table yields for the requested properties.
#[derive(Debug, Clone)]
pub struct TableNetworks {
    /// The shared key node set all results are over.
    pub keys: Arc<NodeSet>,
    /// `(property name, network)` per multi-valued property.
    pub networks: Vec<(String, SparseNetwork)>,
    /// `(property name, partition)` per single-valued property.
    pub partitions: Vec<(String, Partition)>,
}

impl DataTable {
    /// Parses CSV text with a header row; `key_column` names the column
    /// holding the unique row keys.
    pub fn from_csv_text(text: &str, key_column: &str) -> Result<DataTable> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers: Vec<String> = reader
            .headers()
            .map_err(csv_error)?
            .iter()
            .map(str::to_string)
            .collect();
        let key_index = headers
            .iter()
            .position(|h| h == key_column)
            .ok_or_else(|| Error::MissingProperty(key_column.to_string()))?;
        let property_names: Vec<String> = headers
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != key_index)
            .map(|(_, h)| h.clone())
            .collect();

        let mut keys = Vec::new();
        let mut seen = HashMap::new();
        let mut cells = Vec::new();
        for record in reader.records() {
            let record = record.map_err(csv_error)?;
            let key = record
                .get(key_index)
                .unwrap_or_default()
                .to_string();
            if seen.insert(key.clone(), ()).is_some() {
                return Err(Error::DuplicateKey(key));
            }
            let row: Vec<String> = record
                .iter()
                .enumerate()
                .filter(|&(idx, _)| idx != key_index)
                .map(|(_, cell)| cell.to_string())
                .collect();
            keys.push(key);
            cells.push(row);
        }
        Ok(DataTable {
            key_column: key_column.to_string(),
            property_names,
            keys,
            cells,
            separator: ';',
        })
    }

    /// Replaces the default `;` separator splitting multi-valued cells.
    pub fn with_separator(mut self, separator: char) -> DataTable {
        self.separator = separator;
        self
    }

    /// The name of the key column.
    pub fn key_column(&self) -> &str {
        &self.key_column
    }

    /// The property (non-key) column names, in file order.
    pub fn property_names(&self) -> impl Iterator<Item = &str> {
        self.property_names.iter().map(String::as_str)
    }

    fn property_index(&self, name: &str) -> Result<usize> {
        self.property_names
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::MissingProperty(name.to_string()))
    }

    /// The distinct values of a cell: separator-split, trimmed, blanks
    /// dropped, first occurrence kept.
    fn cell_values<'a>(&self, cell: &'a str) -> Vec<&'a str> {
        let mut values = Vec::new();
        for part in cell.split(self.separator) {
            let part = part.trim();
            if !part.is_empty() && !values.contains(&part) {
                values.push(part);
            }
        }
        values
    }
}

fn csv_error(err: csv::Error) -> Error {
    let line = err
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(0);
    Error::Parse {
        line,
        message: err.to_string(),
    }
}

/// Builds the networks and partitions for the named properties of a table.
///
/// Every result shares one key node set. Multi-valued properties produce
/// binary key × value networks whose value sets hold the observed values in
/// first-seen order. Single-valued properties produce partitions: when every
/// nonempty value is an integer it becomes the class number directly (years
/// stay years), otherwise classes are numbered 1, 2, … in first-seen order
/// and carry the value strings as class labels. Empty cells always map to
/// class 0.
pub fn table_to_networks(
    table: &DataTable,
    properties: &[(&str, PropertyKind)],
) -> Result<TableNetworks> {
    let keys = NodeSet::new(Mode::Works, table.keys.iter().map(String::as_str))?;
    let mut networks = Vec::new();
    let mut partitions = Vec::new();

    for &(name, kind) in properties {
        let column = table.property_index(name)?;
        match kind {
            PropertyKind::MultiValued => {
                let mut value_ids: HashMap<String, usize> = HashMap::new();
                let mut value_labels: Vec<String> = Vec::new();
                let mut arcs: Vec<(usize, usize, f64)> = Vec::new();
                for (row, cell_row) in table.cells.iter().enumerate() {
                    for value in table.cell_values(&cell_row[column]) {
                        let id = *value_ids.entry(value.to_string()).or_insert_with(|| {
                            value_labels.push(value.to_string());
                            value_labels.len() - 1
                        });
                        arcs.push((row, id, 1.0));
                    }
                }
                let values =
                    NodeSet::new(Mode::Generic, value_labels.iter().map(String::as_str))?;
                networks.push((
                    name.to_string(),
                    SparseNetwork::from_arcs(keys.clone(), values, arcs, true)?,
                ));
            }
            PropertyKind::SingleValued => {
                let mut raw: Vec<Option<String>> = Vec::with_capacity(table.keys.len());
                for (row, cell_row) in table.cells.iter().enumerate() {
                    let values = table.cell_values(&cell_row[column]);
                    match values.len() {
                        0 => raw.push(None),
                        1 => raw.push(Some(values[0].to_string())),
                        count => {
                            return Err(Error::NotScalar {
                                property: name.to_string(),
                                key: table.keys[row].clone(),
                                count,
                            })
                        }
                    }
                }
                let all_integers = raw
                    .iter()
                    .flatten()
                    .all(|v| v.parse::<i64>().is_ok());
                let partition = if all_integers {
                    let classes = raw
                        .iter()
                        .map(|v| {
                            v.as_ref()
                                .map(|v| v.parse::<i64>().expect("checked above"))
                                .unwrap_or(0)
                        })
                        .collect();
                    Partition::new(keys.clone(), classes)?
                } else {
                    let mut class_of: HashMap<String, i64> = HashMap::new();
                    let mut labels: HashMap<i64, String> = HashMap::new();
                    let mut next = 1i64;
                    let classes = raw
                        .iter()
                        .map(|v| match v {
                            None => 0,
                            Some(v) => *class_of.entry(v.clone()).or_insert_with(|| {
                                let class = next;
                                next += 1;
                                labels.insert(class, v.clone());
                                class
                            }),
                        })
                        .collect();
                    Partition::new(keys.clone(), classes)?.with_class_labels(labels)
                };
                partitions.push((name.to_string(), partition));
            }
        }
    }
    Ok(TableNetworks {
        keys,
        networks,
        partitions,
    })
}

/// The sub-network induced by the nodes in the selected partition classes.
///
/// The partition lies over the row set; a one-mode network keeps only arcs
/// with both ends selected, a two-mode network keeps the selected rows and
/// all columns. Every requested class must occur in the partition.
pub fn extract(
    net: &SparseNetwork,
    partition: &Partition,
    classes: &[i64],
) -> Result<SparseNetwork> {
    if !same_node_set(partition.over(), net.row_set()) {
        return Err(Error::PartitionSetMismatch {
            partition: partition.over().describe(),
            expected: net.row_set().describe(),
        });
    }
    let known = partition.class_ids();
    for class in classes {
        if !known.contains(class) {
            return Err(Error::UnknownClass(*class));
        }
    }
    let keep: Vec<bool> = partition
        .classes()
        .iter()
        .map(|c| classes.contains(c))
        .collect();
    let mut new_id = vec![usize::MAX; net.row_set().len()];
    let mut kept_labels = Vec::new();
    for id in 0..net.row_set().len() {
        if keep[id] {
            new_id[id] = kept_labels.len();
            kept_labels.push(net.row_set().label(id));
        }
    }
    let rows = NodeSet::new(net.row_set().mode(), kept_labels)?;

    if net.is_one_mode() {
        let arcs = net
            .arcs()
            .filter(|&(i, j, _)| keep[i] && keep[j])
            .map(|(i, j, w)| (new_id[i], new_id[j], w))
            .collect();
        Ok(SparseNetwork::from_arcs(rows.clone(), rows, arcs, true)?
            .with_directed_flag(net.is_directed()))
    } else {
        let arcs = net
            .arcs()
            .filter(|&(i, _, _)| keep[i])
            .map(|(i, j, w)| (new_id[i], j, w))
            .collect();
        Ok(
            SparseNetwork::from_arcs(rows, net.col_set().clone(), arcs, true)?
                .with_directed_flag(net.is_directed()),
        )
    }
}

/// Merges each partition class into a single node, summing arc weights.
///
/// Class nodes are ordered by class number and labeled by the partition's
/// class labels where given, `#n` otherwise. One-mode networks shrink on
/// both sides, two-mode networks on the rows; total weight is conserved.
pub fn shrink(net: &SparseNetwork, partition: &Partition) -> Result<SparseNetwork> {
    if !same_node_set(partition.over(), net.row_set()) {
        return Err(Error::PartitionSetMismatch {
            partition: partition.over().describe(),
            expected: net.row_set().describe(),
        });
    }
    let class_ids = partition.class_ids();
    let class_index: HashMap<i64, usize> = class_ids
        .iter()
        .enumerate()
        .map(|(idx, &class)| (class, idx))
        .collect();
    let labels: Vec<String> = class_ids
        .iter()
        .map(|&class| {
            partition
                .class_label(class)
                .map(str::to_string)
                .unwrap_or_else(|| format!("#{class}"))
        })
        .collect();
    let merged = NodeSet::new(net.row_set().mode(), labels)?;
    let class_of: Vec<usize> = partition
        .classes()
        .iter()
        .map(|class| class_index[class])
        .collect();

    if net.is_one_mode() {
        // Accumulate deterministically so a symmetric input shrinks to an
        // exactly symmetric output: both orientations of every unordered
        // pair receive the same additions in the same order.
        let mut sums: std::collections::BTreeMap<(usize, usize), f64> =
            std::collections::BTreeMap::new();
        if !net.is_directed() {
            for (i, j, w) in net.arcs().filter(|&(i, j, _)| i <= j) {
                let (ci, cj) = (class_of[i], class_of[j]);
                if i == j {
                    *sums.entry((ci, cj)).or_insert(0.0) += w;
                } else {
                    *sums.entry((ci, cj)).or_insert(0.0) += w;
                    *sums.entry((cj, ci)).or_insert(0.0) += w;
                }
            }
        } else {
            for (i, j, w) in net.arcs() {
                *sums.entry((class_of[i], class_of[j])).or_insert(0.0) += w;
            }
        }
        let arcs: Vec<(usize, usize, f64)> =
            sums.into_iter().map(|((i, j), w)| (i, j, w)).collect();
        Ok(SparseNetwork::from_arcs(merged.clone(), merged, arcs, true)?
            .with_directed_flag(net.is_directed()))
    } else {
        let arcs: Vec<(usize, usize, f64)> = net
            .arcs()
            .map(|(i, j, w)| (class_of[i], j, w))
            .collect();
        SparseNetwork::from_arcs(merged, net.col_set().clone(), arcs, true)
    }
}
