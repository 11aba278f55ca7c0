//! Reading and writing Pajek text formats: networks (`.net`), partitions
//! (`.clu`), and vectors (`.vec`).
//!
//! A network file opens with `*Vertices N` (one-mode) or `*Vertices N N1`
//! (two-mode: vertices `1..=N1` form the row set, the rest the column set),
//! followed by `id "label"` vertex lines, then `*Arcs` and/or `*Edges`
//! sections whose lines read `source target weight`. Ids are 1-based and
//! global; an omitted weight means 1; an `*Edges` line states both
//! directions at once. Comment lines start with `%`; CRLF input is accepted.
//!
//! Writing always quotes labels, always writes weights, and emits `*Edges`
//! (upper triangle) for undirected networks and `*Arcs` otherwise. Weights
//! print in the shortest form that parses back to the identical float, so a
//! write/read cycle reproduces the original object exactly, and a
//! read/write cycle the original file. Embedded quotes and backslashes in
//! labels are escaped with a backslash; other backslash sequences pass
//! through unchanged.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::net::{Mode, NodeSet, NodeVector, Partition, SparseNetwork};

/// Splits a line into whitespace-separated tokens, honoring double quotes
/// (with `\"` and `\\` escapes) so labels may contain spaces.
fn tokenize(line: &str, line_no: usize) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().peekable();
    loop {
        while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
            chars.next();
        }
        match chars.peek() {
            None => break,
            Some('"') => {
                chars.next();
                let mut token = String::new();
                loop {
                    match chars.next() {
                        None => return Err(Error::parse(line_no, "unterminated quoted label")),
                        Some('\\') => match chars.peek() {
                            Some('"') | Some('\\') => token.push(chars.next().unwrap()),
                            _ => token.push('\\'),
                        },
                        Some('"') => break,
                        Some(c) => token.push(c),
                    }
                }
                tokens.push(token);
            }
            Some(_) => {
                let mut token = String::new();
                while matches!(chars.peek(), Some(c) if !c.is_whitespace()) {
                    token.push(chars.next().unwrap());
                }
                tokens.push(token);
            }
        }
    }
    Ok(tokens)
}

fn quote(label: &str) -> String {
    let escaped = label.replace('\\', "\\\\").replace('"', "\\\"");
    // The format is line-based with no escape for line breaks, so labels
    // containing them are folded onto one line.
    let escaped = escaped.replace(['\n', '\r'], " ");
    format!("\"{escaped}\"")
}

/// Iterates meaningful lines: (1-based number, content), skipping blanks
/// and `%` comments, tolerating CRLF endings.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(idx, raw)| (idx + 1, raw.strip_suffix('\r').unwrap_or(raw)))
        .filter(|(_, line)| {
            let t = line.trim_start();
            !t.is_empty() && !t.starts_with('%')
        })
}

fn parse_count(token: &str, line_no: usize, what: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::parse(line_no, format!("expected {what}, got `{token}`")))
}

fn parse_vertex_id(token: &str, line_no: usize, total: usize) -> Result<usize> {
    let id = parse_count(token, line_no, "a vertex id")?;
    if id == 0 || id > total {
        return Err(Error::parse(
            line_no,
            format!("vertex id {id} out of range 1..={total}"),
        ));
    }
    Ok(id - 1)
}

enum Section {
    Arcs,
    Edges,
}

/// Parses a Pajek `.net` file.
pub fn read_net(text: &str) -> Result<SparseNetwork> {
    let mut lines = lines(text).peekable();
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty file, expected `*Vertices`"))?;
    let tokens = tokenize(header, header_no)?;
    if tokens.is_empty() || !tokens[0].eq_ignore_ascii_case("*vertices") {
        return Err(Error::parse(header_no, "expected `*Vertices N [N1]`"));
    }
    let total = match tokens.get(1) {
        Some(t) => parse_count(t, header_no, "a vertex count")?,
        None => return Err(Error::parse(header_no, "expected `*Vertices N [N1]`")),
    };
    let first_mode = match tokens.get(2) {
        Some(t) => {
            let n1 = parse_count(t, header_no, "a first-mode size")?;
            if n1 > total {
                return Err(Error::parse(
                    header_no,
                    format!("first-mode size {n1} exceeds vertex count {total}"),
                ));
            }
            Some(n1)
        }
        None => None,
    };

    // Vertex lines until the next section; absent ids get their number as
    // the label, as Pajek does.
    let mut labels: Vec<Option<String>> = vec![None; total];
    while let Some(&(line_no, line)) = lines.peek() {
        if line.trim_start().starts_with('*') {
            break;
        }
        lines.next();
        let tokens = tokenize(line, line_no)?;
        let id = parse_vertex_id(&tokens[0], line_no, total)?;
        if labels[id].is_some() {
            return Err(Error::parse(line_no, format!("vertex {} defined twice", id + 1)));
        }
        labels[id] = Some(match tokens.get(1) {
            Some(label) => label.clone(),
            None => (id + 1).to_string(),
        });
    }
    let labels: Vec<String> = labels
        .into_iter()
        .enumerate()
        .map(|(id, label)| label.unwrap_or_else(|| (id + 1).to_string()))
        .collect();

    // Arc/edge sections; an `*Edges` line asserts both directions.
    let mut raw: Vec<(usize, usize, usize, f64, bool)> = Vec::new();
    let mut saw_arcs_section = false;
    let mut saw_edges_section = false;
    let mut section: Option<Section> = None;
    for (line_no, line) in lines {
        let trimmed = line.trim_start();
        if trimmed.starts_with('*') {
            let name = tokenize(trimmed, line_no)?
                .into_iter()
                .next()
                .unwrap_or_default();
            section = if name.eq_ignore_ascii_case("*arcs") {
                saw_arcs_section = true;
                Some(Section::Arcs)
            } else if name.eq_ignore_ascii_case("*edges") {
                saw_edges_section = true;
                Some(Section::Edges)
            } else {
                return Err(Error::parse(line_no, format!("unknown section `{name}`")));
            };
            continue;
        }
        let tokens = tokenize(line, line_no)?;
        if tokens.len() < 2 {
            return Err(Error::parse(line_no, "expected `source target [weight]`"));
        }
        let from = parse_vertex_id(&tokens[0], line_no, total)?;
        let to = parse_vertex_id(&tokens[1], line_no, total)?;
        let weight = match tokens.get(2) {
            Some(t) => t
                .parse::<f64>()
                .map_err(|_| Error::parse(line_no, format!("bad weight `{t}`")))?,
            None => 1.0,
        };
        match section {
            Some(Section::Arcs) => raw.push((line_no, from, to, weight, false)),
            Some(Section::Edges) => raw.push((line_no, from, to, weight, true)),
            None => return Err(Error::parse(line_no, "arc outside of a section")),
        }
    }

    match first_mode {
        None => {
            let set = NodeSet::new(Mode::Generic, labels.iter().map(String::as_str))?;
            let mut arcs = Vec::with_capacity(raw.len() * 2);
            for (_, from, to, weight, is_edge) in raw {
                arcs.push((from, to, weight));
                if is_edge && from != to {
                    arcs.push((to, from, weight));
                }
            }
            let undirected = saw_edges_section && !saw_arcs_section;
            SparseNetwork::from_arcs(set.clone(), set, arcs, !undirected)
        }
        Some(n1) => {
            let rows = NodeSet::new(Mode::Generic, labels[..n1].iter().map(String::as_str))?;
            let cols = NodeSet::new(Mode::Generic, labels[n1..].iter().map(String::as_str))?;
            let mut arcs = Vec::with_capacity(raw.len());
            for (line_no, from, to, weight, is_edge) in raw {
                if is_edge {
                    return Err(Error::parse(
                        line_no,
                        "edges are not meaningful in a two-mode network",
                    ));
                }
                if from >= n1 {
                    return Err(Error::parse(
                        line_no,
                        format!("arc source {} is not a first-mode vertex", from + 1),
                    ));
                }
                if to < n1 {
                    return Err(Error::parse(
                        line_no,
                        format!("arc target {} is not a second-mode vertex", to + 1),
                    ));
                }
                arcs.push((from, to - n1, weight));
            }
            SparseNetwork::from_arcs(rows, cols, arcs, true)
        }
    }
}

/// Serializes a network as a Pajek `.net` file.
pub fn write_net(net: &SparseNetwork) -> String {
    let mut out = String::new();
    if net.is_one_mode() {
        let set = net.row_set();
        out.push_str(&format!("*Vertices {}\n", set.len()));
        for id in 0..set.len() {
            out.push_str(&format!("{} {}\n", id + 1, quote(set.label(id))));
        }
        if net.is_directed() {
            out.push_str("*Arcs\n");
            for (i, j, w) in net.arcs() {
                out.push_str(&format!("{} {} {}\n", i + 1, j + 1, w));
            }
        } else {
            out.push_str("*Edges\n");
            for (i, j, w) in net.arcs().filter(|&(i, j, _)| i <= j) {
                out.push_str(&format!("{} {} {}\n", i + 1, j + 1, w));
            }
        }
    } else {
        let rows = net.row_set();
        let cols = net.col_set();
        let total = rows.len() + cols.len();
        out.push_str(&format!("*Vertices {} {}\n", total, rows.len()));
        for id in 0..rows.len() {
            out.push_str(&format!("{} {}\n", id + 1, quote(rows.label(id))));
        }
        for id in 0..cols.len() {
            out.push_str(&format!(
                "{} {}\n",
                rows.len() + id + 1,
                quote(cols.label(id))
            ));
        }
        out.push_str("*Arcs\n");
        for (i, j, w) in net.arcs() {
            out.push_str(&format!("{} {} {}\n", i + 1, rows.len() + j + 1, w));
        }
    }
    out
}

/// Reads the `*Vertices N` header and the `N` per-vertex values that make up
/// a partition or vector file.
fn read_values<T>(
    text: &str,
    parse: impl Fn(&str, usize) -> Result<T>,
) -> Result<Vec<T>> {
    let mut lines = lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty file, expected `*Vertices N`"))?;
    let tokens = tokenize(header, header_no)?;
    if tokens.len() != 2 || !tokens[0].eq_ignore_ascii_case("*vertices") {
        return Err(Error::parse(header_no, "expected `*Vertices N`"));
    }
    let count = parse_count(&tokens[1], header_no, "a vertex count")?;
    let mut values = Vec::with_capacity(count);
    let mut last_line = header_no;
    for (line_no, line) in lines {
        if values.len() == count {
            return Err(Error::parse(
                line_no,
                format!("more than {count} values"),
            ));
        }
        values.push(parse(line.trim(), line_no)?);
        last_line = line_no;
    }
    if values.len() != count {
        return Err(Error::parse(
            last_line,
            format!("expected {count} values, found {}", values.len()),
        ));
    }
    Ok(values)
}

/// Parses a `.clu` file into its raw class numbers.
pub fn read_clu(text: &str) -> Result<Vec<i64>> {
    read_values(text, |token, line_no| {
        token
            .parse::<i64>()
            .map_err(|_| Error::parse(line_no, format!("bad class number `{token}`")))
    })
}

/// Parses a `.clu` file as a partition over the given node set.
pub fn read_clu_for(set: &Arc<NodeSet>, text: &str) -> Result<Partition> {
    let classes = read_clu(text)?;
    if classes.len() != set.len() {
        return Err(Error::PartitionSetMismatch {
            partition: format!("{} classes", classes.len()),
            expected: set.describe(),
        });
    }
    Partition::new(set.clone(), classes)
}

/// Serializes a partition as a `.clu` file.
pub fn write_clu(partition: &Partition) -> String {
    let mut out = format!("*Vertices {}\n", partition.over().len());
    for class in partition.classes() {
        out.push_str(&format!("{class}\n"));
    }
    out
}

/// Parses a `.vec` file into its raw values.
pub fn read_vec(text: &str) -> Result<Vec<f64>> {
    read_values(text, |token, line_no| {
        token
            .parse::<f64>()
            .map_err(|_| Error::parse(line_no, format!("bad value `{token}`")))
    })
}

/// Parses a `.vec` file as a vector over the given node set.
pub fn read_vec_for(set: &Arc<NodeSet>, text: &str) -> Result<NodeVector> {
    let values = read_vec(text)?;
    if values.len() != set.len() {
        return Err(Error::VectorSetMismatch {
            vector: format!("{} values", values.len()),
            expected: set.describe(),
        });
    }
    NodeVector::new(set.clone(), values)
}

/// Serializes a vector as a `.vec` file.
pub fn write_vec(vector: &NodeVector) -> String {
    let mut out = format!("*Vertices {}\n", vector.over().len());
    for value in vector.values() {
        out.push_str(&format!("{value}\n"));
    }
    out
}
