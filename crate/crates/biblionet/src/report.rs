//! Ranked summary tables over derived networks, as aligned text or CSV.
//!
//! Three standard views: the authors with the most distinct collaborators,
//! the frequency distribution of authors-per-work, and the authors ranked by
//! their self-contribution `cn_ii` alongside their work count and
//! collaborativeness. Output is deterministic: ties break on labels, and the
//! same input always renders byte-identical text.

use crate::derived::author_indices;
use crate::error::Result;
use crate::net::{Direction, SparseNetwork};

/// Output form of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Space-aligned columns for reading.
    Text,
    /// RFC-4180 CSV with a header row, full numeric precision.
    Csv,
}

enum Align {
    Left,
    Right,
}

/// Renders rows as aligned text (given per-column alignment) or CSV.
fn render(
    format: ReportFormat,
    header: &[&str],
    aligns: &[Align],
    rows: &[Vec<String>],
) -> String {
    match format {
        ReportFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(header).expect("in-memory write");
            for row in rows {
                writer.write_record(row).expect("in-memory write");
            }
            String::from_utf8(writer.into_inner().expect("in-memory flush"))
                .expect("csv output is UTF-8")
        }
        ReportFormat::Text => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in rows {
                for (idx, cell) in row.iter().enumerate() {
                    widths[idx] = widths[idx].max(cell.len());
                }
            }
            let mut out = String::new();
            let mut emit = |cells: Vec<&str>| {
                let mut line = String::new();
                for (idx, cell) in cells.iter().enumerate() {
                    if idx > 0 {
                        line.push_str("  ");
                    }
                    match aligns[idx] {
                        Align::Left => line.push_str(&format!("{cell:<width$}", width = widths[idx])),
                        Align::Right => {
                            line.push_str(&format!("{cell:>width$}", width = widths[idx]))
                        }
                    }
                }
                out.push_str(line.trim_end());
                out.push('\n');
            };
            emit(header.to_vec());
            for row in rows {
                emit(row.iter().map(String::as_str).collect());
            }
            out
        }
    }
}

/// Authors with the most distinct collaborators, from a collaboration
/// network: the count of a node's neighbors other than itself.
pub fn collaborators_report(co: &SparseNetwork, top: usize, format: ReportFormat) -> String {
    let authors = co.row_set();
    let mut counts: Vec<(usize, usize)> = (0..authors.len())
        .map(|i| (i, co.out_arcs(i).filter(|&(j, _)| j != i).count()))
        .collect();
    counts.sort_by(|a, b| {
        b.1.cmp(&a.1)
            .then_with(|| authors.label(a.0).cmp(authors.label(b.0)))
    });
    let rows: Vec<Vec<String>> = counts
        .into_iter()
        .take(top)
        .map(|(i, n)| vec![authors.label(i).to_string(), n.to_string()])
        .collect();
    render(
        format,
        &["author", "collaborators"],
        &[Align::Left, Align::Right],
        &rows,
    )
}

/// Frequency distribution of works by number of authors (the out-degrees of
/// `WA`), one row per occurring degree in ascending order.
pub fn out_degree_report(wa: &SparseNetwork, format: ReportFormat) -> String {
    let mut frequency: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for p in 0..wa.row_set().len() {
        *frequency.entry(wa.out_degree(p)).or_insert(0) += 1;
    }
    let rows: Vec<Vec<String>> = frequency
        .into_iter()
        .map(|(degree, count)| vec![degree.to_string(), count.to_string()])
        .collect();
    render(
        format,
        &["authors-per-work", "works"],
        &[Align::Right, Align::Right],
        &rows,
    )
}

/// Authors ranked by self-contribution `cn_ii`, with their work count and
/// collaborativeness `K_i = 1 − cn_ii / works`.
///
/// Text output rounds to the customary two (contribution) and three
/// (collaborativeness) decimals; CSV keeps full precision.
pub fn best_authors_report(
    cn: &SparseNetwork,
    wa: &SparseNetwork,
    top: usize,
    format: ReportFormat,
) -> Result<String> {
    let indices = author_indices(cn, wa)?;
    let authors = wa.col_set();
    let works_of = wa.degrees(Direction::In);
    let mut ranked: Vec<usize> = (0..authors.len()).collect();
    let own = |i: usize| cn.weight(i, i).unwrap_or(0.0);
    ranked.sort_by(|&a, &b| {
        own(b)
            .total_cmp(&own(a))
            .then_with(|| authors.label(a).cmp(authors.label(b)))
    });
    let rows: Vec<Vec<String>> = ranked
        .into_iter()
        .take(top)
        .map(|i| {
            let k = indices.collaborativeness.get(i);
            match format {
                ReportFormat::Text => vec![
                    authors.label(i).to_string(),
                    format!("{:.2}", own(i)),
                    format!("{}", works_of.get(i)),
                    format!("{k:.3}"),
                ],
                ReportFormat::Csv => vec![
                    authors.label(i).to_string(),
                    format!("{}", own(i)),
                    format!("{}", works_of.get(i)),
                    format!("{k}"),
                ],
            }
        })
        .collect();
    Ok(render(
        format,
        &["author", "contribution", "works", "collaborativeness"],
        &[Align::Left, Align::Right, Align::Right, Align::Right],
        &rows,
    ))
}
