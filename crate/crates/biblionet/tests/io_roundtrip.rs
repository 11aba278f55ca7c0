//! File-format properties: reading back what was written yields the same
//! value, rewriting yields the same bytes, and malformed inputs fail with
//! line-numbered errors instead of silently misparsing.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use biblionet::net::{Mode, NodeSet, Partition, SparseNetwork};
use biblionet::pajek::{
    read_clu, read_clu_for, read_net, read_vec, read_vec_for, write_clu, write_net, write_vec,
};
use biblionet::{Error, NodeVector};

/// Printable-character labels, quotes and backslashes included.
fn labels(max: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::btree_set("[ -~]{1,12}", 1..=max).prop_map(|set: BTreeSet<String>| {
        set.into_iter()
            .enumerate()
            .map(|(i, s)| format!("{i}|{s}"))
            .collect()
    })
}

fn weights() -> impl Strategy<Value = f64> {
    prop_oneof![
        (1u32..=500).prop_map(|n| n as f64),
        (1u32..=500).prop_map(|n| n as f64 / 16.0),
        (-1e6..1e6f64).prop_filter("nonzero", |w| *w != 0.0),
        Just(1.0),
    ]
}

fn one_mode(
    set: Arc<NodeSet>,
    raw: Vec<(usize, usize, f64)>,
    directed: bool,
) -> SparseNetwork {
    let n = set.len();
    let mut arcs = Vec::new();
    for (i, j, w) in raw {
        let (i, j) = (i % n, j % n);
        arcs.push((i, j, w));
        if !directed && i != j {
            arcs.push((j, i, w));
        }
    }
    SparseNetwork::from_arcs(set.clone(), set, arcs, directed)
        .expect("mirrored arcs build a valid network")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn one_mode_networks_round_trip(
        names in labels(12),
        raw in prop::collection::vec((0usize..12, 0usize..12, weights()), 0..30),
        directed in any::<bool>(),
    ) {
        let set = NodeSet::new(Mode::Generic, names).unwrap();
        let net = one_mode(set, raw, directed);
        let text = write_net(&net);
        let back = read_net(&text).unwrap();
        prop_assert_eq!(&back, &net);
        prop_assert_eq!(write_net(&back), text);
    }

    #[test]
    fn two_mode_networks_round_trip(
        row_names in labels(10),
        col_names in labels(10),
        raw in prop::collection::vec((0usize..10, 0usize..10, weights()), 0..30),
    ) {
        let rows = NodeSet::new(Mode::Works, row_names).unwrap();
        let cols = NodeSet::new(
            Mode::Authors,
            col_names.into_iter().map(|s| format!("c{s}")).collect::<Vec<_>>(),
        )
        .unwrap();
        let arcs: Vec<_> = raw
            .into_iter()
            .map(|(i, j, w)| (i % rows.len(), j % cols.len(), w))
            .collect();
        let net = SparseNetwork::from_arcs(rows, cols, arcs, true).unwrap();
        let text = write_net(&net);
        let back = read_net(&text).unwrap();
        prop_assert_eq!(&back, &net);
        prop_assert_eq!(write_net(&back), text);
    }

    #[test]
    fn partitions_round_trip(classes in prop::collection::vec(-1000i64..=100_000, 1..60)) {
        let over = common::node_set(Mode::Generic, "v", classes.len());
        let partition = Partition::new(over.clone(), classes.clone()).unwrap();
        let text = write_clu(&partition);
        prop_assert_eq!(read_clu(&text).unwrap(), classes);
        let again = read_clu_for(&over, &text).unwrap();
        prop_assert_eq!(write_clu(&again), text);
    }

    #[test]
    fn vectors_round_trip(values in prop::collection::vec(-1e12..1e12f64, 1..60)) {
        let over = common::node_set(Mode::Generic, "v", values.len());
        let vector = NodeVector::new(over.clone(), values.clone()).unwrap();
        let text = write_vec(&vector);
        let back = read_vec(&text).unwrap();
        prop_assert_eq!(back.len(), values.len());
        for (a, b) in back.iter().zip(&values) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        let again = read_vec_for(&over, &text).unwrap();
        prop_assert_eq!(write_vec(&again), text);
    }
}

#[test]
fn quotes_and_backslashes_survive() {
    let set = NodeSet::new(
        Mode::Generic,
        ["say \"hi\"", "dos\\path\\x", "tab\there", "plain"],
    )
    .unwrap();
    let net = SparseNetwork::from_arcs(set.clone(), set, vec![(0, 1, 1.0), (2, 3, 2.5)], true)
        .unwrap();
    let text = write_net(&net);
    let back = read_net(&text).unwrap();
    assert_eq!(back, net);
    let reread: Vec<&str> = back.row_set().labels().collect();
    assert_eq!(reread, ["say \"hi\"", "dos\\path\\x", "tab\there", "plain"]);
}

#[test]
fn line_breaks_in_labels_fold_to_spaces() {
    let set = NodeSet::new(Mode::Generic, ["two\nlines", "cr\rhere"]).unwrap();
    let net = SparseNetwork::from_arcs(set.clone(), set, vec![(0, 1, 1.0)], true).unwrap();
    let back = read_net(&write_net(&net)).unwrap();
    let reread: Vec<&str> = back.row_set().labels().collect();
    assert_eq!(reread, ["two lines", "cr here"]);
}

#[test]
fn unquoted_labels_and_default_labels_parse() {
    let text = "*Vertices 3\n1 alpha\n3 gamma\n*Arcs\n1 3 2\n";
    let net = read_net(text).unwrap();
    let labels: Vec<&str> = net.row_set().labels().collect();
    assert_eq!(labels, ["alpha", "2", "gamma"]);
    assert_eq!(net.weight_between("alpha", "gamma"), Some(2.0));
}

#[test]
fn comments_blank_lines_and_crlf_are_tolerated() {
    let text = "% generated\r\n*vertices 2\r\n\r\n1 \"a\"\r\n2 \"b\"\r\n*ARCS\r\n% none yet\r\n1 2 3.5\r\n";
    let net = read_net(text).unwrap();
    assert_eq!(net.weight_between("a", "b"), Some(3.5));
}

#[test]
fn missing_weight_defaults_to_one() {
    let net = read_net("*Vertices 2\n1 \"a\"\n2 \"b\"\n*Arcs\n1 2\n").unwrap();
    assert_eq!(net.weight_between("a", "b"), Some(1.0));
}

#[test]
fn edges_section_builds_an_undirected_network() {
    let net = read_net("*Vertices 3\n1 \"a\"\n2 \"b\"\n3 \"c\"\n*Edges\n1 2 2\n2 2 5\n").unwrap();
    assert!(!net.is_directed());
    assert_eq!(net.weight_between("a", "b"), Some(2.0));
    assert_eq!(net.weight_between("b", "a"), Some(2.0));
    assert_eq!(net.weight_between("b", "b"), Some(5.0));
    assert_eq!(net.arc_count(), 3);
}

#[test]
fn malformed_inputs_fail_with_line_numbers() {
    let cases: &[(&str, u64)] = &[
        ("*Arcs\n1 2 1\n", 1),                               // no vertex count first
        ("*Vertices two\n", 1),                              // unparsable count
        ("*Vertices 2\n1 \"a\"\n9 \"b\"\n", 3),              // vertex id out of range
        ("*Vertices 2 5\n1 \"a\"\n2 \"b\"\n", 1),            // two-mode split too large
        ("*Vertices 2\n1 \"a\"\n2 \"b\"\n*Arcs\n1 9 1\n", 5), // arc endpoint out of range
        ("*Vertices 2\n1 \"a\"\n2 \"b\"\n*Arcs\n1 2 x\n", 5), // weight not a number
        ("*Vertices 2\n1 \"a\"\n2 \"b\"\n*Bogus\n", 4),      // unknown section
        ("*Vertices 3 1\n1 \"a\"\n2 \"b\"\n3 \"c\"\n*Edges\n2 3 1\n", 6), // edges in two-mode
        ("*Vertices 2\n1 \"a\n", 2),                          // unterminated quote
    ];
    for (text, line) in cases {
        match read_net(text) {
            Err(Error::Parse { line: got, .. }) => {
                assert_eq!(got as u64, *line, "wrong line for input {text:?}")
            }
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }
    assert!(matches!(
        read_clu("*Vertices 3\n1\n2\n"),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        read_vec("*Vertices 1\nnope\n"),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn partition_and_vector_binding_checks_sizes() {
    let over = common::node_set(Mode::Generic, "v", 3);
    assert!(read_clu_for(&over, "*Vertices 3\n1\n2\n3\n").is_ok());
    assert!(read_clu_for(&over, "*Vertices 2\n1\n2\n").is_err());
    assert!(read_vec_for(&over, "*Vertices 3\n0.5\n1\n2\n").is_ok());
    assert!(read_vec_for(&over, "*Vertices 2\n0.5\n1\n").is_err());
}
