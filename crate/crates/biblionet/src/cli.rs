//! The `biblionet` command-line pipeline.
//!
//! Every subcommand is a thin composition of library operations over Pajek
//! files: `ingest` turns a CSV table into networks and partitions, `multiply`
//! and `derive` produce product networks (guarded against non-sparse
//! results), `core` extracts dense groups, `sparsity` prints the product
//! profile, `extract`/`shrink` cut networks along partitions, and `report`
//! prints ranked tables. Identical inputs give byte-identical outputs.
//!
//! `derive` and `report` read a collection directory holding `WA.net` and
//! optionally `Ci.net`, `WK.net`, and `year.clu`.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or format error, 3 work-guard
//! refusal (the sparseness report goes to stdout, the error line to stderr).

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{binarize, multiply, row_normalize, transpose};
use crate::derived::{
    author_citations, author_co_citation, author_indices, author_keyword_use,
    bibliographic_coupling, bibliographic_coupling_normalized, cited_co_authorship, co_citation,
    co_citation_normalized, collaboration_counts, collaboration_fractional, collaboration_shares,
    drop_loops, BiblioCollection,
};
use crate::error::{Error, Result};
use crate::ingest::{extract, shrink, table_to_networks, DataTable, PropertyKind};
use crate::net::{Direction, NodeSet, SparseNetwork};
use crate::pajek::{read_clu_for, read_net, write_clu, write_net, write_vec};
use crate::report::{best_authors_report, collaborators_report, out_degree_report, ReportFormat};
use crate::sparsity::{analyze_product, drop_high_degree, guarded_multiply};

const DEFAULT_GUARD: u64 = 100_000_000;

#[derive(Parser)]
#[command(
    name = "biblionet",
    version,
    about = "Builds and analyzes networks derived from bibliographic data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Turn a CSV table into two-mode networks and partitions
    Ingest {
        /// CSV file with a header row
        table: PathBuf,
        /// Column holding the unique record keys
        #[arg(long)]
        key: String,
        /// Multi-valued property column (repeatable); becomes `<name>.net`
        #[arg(long = "multi")]
        multi: Vec<String>,
        /// Single-valued property column (repeatable); becomes `<name>.clu`
        #[arg(long = "single")]
        single: Vec<String>,
        /// Directory to write into
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Separator between values inside a multi-valued cell
        #[arg(long, default_value_t = ';')]
        separator: char,
    },
    /// Multiply two networks read from files
    Multiply {
        a: PathBuf,
        b: PathBuf,
        out: PathBuf,
        /// Refuse if the predicted accumulation count exceeds this
        #[arg(long)]
        guard: Option<u64>,
        /// Row-normalize A before any transposition
        #[arg(long)]
        normalize_left: bool,
        /// Row-normalize B before any transposition
        #[arg(long)]
        normalize_right: bool,
        /// Transpose A after any normalization
        #[arg(long)]
        transpose_a: bool,
        /// Transpose B after any normalization
        #[arg(long)]
        transpose_b: bool,
    },
    /// Derive a standard network from a collection directory
    Derive {
        what: DeriveTarget,
        /// Directory holding WA.net and optionally Ci.net, WK.net, year.clu
        dir: PathBuf,
        /// Output directory (defaults to the collection directory)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Refuse products predicted to take more accumulations than this
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: u64,
    },
    /// Extract a core and write its membership partition
    Core {
        kind: CoreKind,
        input: PathBuf,
        out: PathBuf,
        /// Minimum degree (k) or minimum member weight sum (ps)
        #[arg(long)]
        level: f64,
    },
    /// Print the sparseness profile of a planned product
    Sparsity { a: PathBuf, b: PathBuf },
    /// Keep only the nodes of selected partition classes
    Extract {
        input: PathBuf,
        partition: PathBuf,
        out: PathBuf,
        /// Comma-separated class numbers to keep
        #[arg(long, value_delimiter = ',', required = true)]
        classes: Vec<i64>,
    },
    /// Merge each partition class into a single node
    Shrink {
        input: PathBuf,
        partition: PathBuf,
        out: PathBuf,
    },
    /// Print a ranked table for a collection directory
    Report {
        what: ReportTarget,
        dir: PathBuf,
        /// How many rows to print
        #[arg(long, default_value_t = 20)]
        top: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Remove diagonal arcs from a one-mode network
    Droploops { input: PathBuf, out: PathBuf },
    /// Remove all arcs of nodes whose degree exceeds a threshold
    Drophigh {
        input: PathBuf,
        out: PathBuf,
        /// Largest degree allowed to keep its arcs
        #[arg(long)]
        threshold: usize,
        #[arg(long, value_enum, default_value_t = DegreeSide::Out)]
        direction: DegreeSide,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DeriveTarget {
    /// Collaboration counts Co
    #[value(name = "co")]
    Co,
    /// Collaboration shares Cn, plus S.vec and K.vec
    #[value(name = "cn")]
    Cn,
    /// Fractional collaboration Ct, plus ac.vec
    #[value(name = "ct")]
    Ct,
    /// Bibliographic coupling biCo
    #[value(name = "bico")]
    BiCo,
    /// Normalized coupling biCon
    #[value(name = "bicon")]
    BiCon,
    /// Co-citation coCi
    #[value(name = "coci")]
    CoCi,
    /// Normalized co-citation coCin
    #[value(name = "cocin")]
    CoCin,
    /// Author citations ACi
    #[value(name = "aci")]
    ACi,
    /// Author co-citation ACo
    #[value(name = "aco")]
    ACo,
    /// Author keyword use AK
    #[value(name = "ak")]
    Ak,
    /// Citation-weighted co-authorship Qua
    #[value(name = "qua")]
    Qua,
    /// Normalized citation-weighted co-authorship Cc
    #[value(name = "cc")]
    Cc,
    /// Author-to-author citation flow Ca
    #[value(name = "ca")]
    Ca,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoreKind {
    /// Minimum neighbor count inside the core
    K,
    /// Minimum arc weight sum inside the core
    Ps,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportTarget {
    /// Authors with the most distinct collaborators
    Collaborators,
    /// Distribution of works by author count
    Outdeg,
    /// Authors ranked by self-contribution
    Best,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum DegreeSide {
    Out,
    In,
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Lib(err)
    }
}

/// Parses the process arguments, runs the command, and returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            1
        }
        Err(CliError::Lib(err @ Error::WorkLimitExceeded(_))) => {
            if let Error::WorkLimitExceeded(refusal) = &err {
                print!("{}", refusal.report.render());
                for (label, work) in &refusal.worst {
                    println!("remove first: {label} (work {work})");
                }
            }
            eprintln!("error: {err}");
            3
        }
        Err(CliError::Lib(err)) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn in_file(path: &Path, err: Error) -> Error {
    match err {
        err @ Error::Io(_) => err,
        err => Error::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("{}: {err}", path.display()),
        )),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|err| {
        Error::Io(std::io::Error::new(
            err.kind(),
            format!("{}: {err}", path.display()),
        ))
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|err| {
        Error::Io(std::io::Error::new(
            err.kind(),
            format!("{}: {err}", path.display()),
        ))
    })?;
    println!("wrote {}", path.display());
    Ok(())
}

fn load_net(path: &Path) -> Result<SparseNetwork> {
    read_net(&read_text(path)?).map_err(|err| in_file(path, err))
}

fn load_clu(path: &Path, over: &Arc<NodeSet>) -> Result<crate::net::Partition> {
    read_clu_for(over, &read_text(path)?).map_err(|err| in_file(path, err))
}

fn load_collection(dir: &Path) -> Result<BiblioCollection> {
    let mut collection = BiblioCollection::new(load_net(&dir.join("WA.net"))?);
    let citations = dir.join("Ci.net");
    if citations.exists() {
        collection = collection.with_citations(load_net(&citations)?)?;
    }
    let keywords = dir.join("WK.net");
    if keywords.exists() {
        collection = collection.with_keywords(load_net(&keywords)?)?;
    }
    let years = dir.join("year.clu");
    if years.exists() {
        let works = collection.works().clone();
        collection = collection.with_years(load_clu(&years, &works)?)?;
    }
    Ok(collection)
}

/// Refuses a planned product whose predicted work exceeds the budget.
fn check_guard(a: &SparseNetwork, b: &SparseNetwork, guard: u64) -> Result<()> {
    let report = analyze_product(a, b)?;
    if report.exact_work > guard {
        return Err(Error::WorkLimitExceeded(Box::new(report.into_refusal(guard))));
    }
    Ok(())
}

fn dispatch(command: Command) -> std::result::Result<(), CliError> {
    match command {
        Command::Ingest {
            table,
            key,
            multi,
            single,
            out,
            separator,
        } => {
            if multi.is_empty() && single.is_empty() {
                return Err(CliError::Usage(
                    "request at least one --multi or --single property".into(),
                ));
            }
            let parsed = DataTable::from_csv_text(&read_text(&table)?, &key)
                .map_err(|err| in_file(&table, err))?
                .with_separator(separator);
            let mut properties: Vec<(&str, PropertyKind)> = Vec::new();
            for name in &multi {
                properties.push((name, PropertyKind::MultiValued));
            }
            for name in &single {
                properties.push((name, PropertyKind::SingleValued));
            }
            let result = table_to_networks(&parsed, &properties)?;
            std::fs::create_dir_all(&out).map_err(Error::Io)?;
            for (name, net) in &result.networks {
                write_text(&out.join(format!("{name}.net")), &write_net(net))?;
            }
            for (name, partition) in &result.partitions {
                write_text(&out.join(format!("{name}.clu")), &write_clu(partition))?;
            }
            Ok(())
        }

        Command::Multiply {
            a,
            b,
            out,
            guard,
            normalize_left,
            normalize_right,
            transpose_a,
            transpose_b,
        } => {
            let mut left = load_net(&a)?;
            let mut right = load_net(&b)?;
            if normalize_left {
                left = row_normalize(&left)?;
            }
            if transpose_a {
                left = transpose(&left);
            }
            if normalize_right {
                right = row_normalize(&right)?;
            }
            if transpose_b {
                right = transpose(&right);
            }
            let product = match guard {
                Some(limit) => guarded_multiply(&left, &right, limit)?,
                None => multiply(&left, &right)?,
            };
            write_text(&out, &write_net(&product))?;
            Ok(())
        }

        Command::Derive {
            what,
            dir,
            out,
            guard,
        } => {
            let out_dir = out.unwrap_or_else(|| dir.clone());
            std::fs::create_dir_all(&out_dir).map_err(Error::Io)?;
            let collection = load_collection(&dir)?;
            run_derive(what, &collection, &out_dir, guard)?;
            Ok(())
        }

        Command::Core {
            kind,
            input,
            out,
            level,
        } => {
            let net = load_net(&input)?;
            let result = match kind {
                CoreKind::K => {
                    if level < 0.0 || level.fract() != 0.0 {
                        return Err(CliError::Usage(
                            "--level must be a nonnegative integer for k-cores".into(),
                        ));
                    }
                    crate::cores::k_core(&net, level as usize)?
                }
                CoreKind::Ps => crate::cores::weight_core(&net, level)?,
            };
            println!(
                "core at level {}: {} of {} nodes, {} arcs inside",
                result.level,
                result.members.len(),
                net.row_set().len(),
                result.induced_arcs
            );
            write_text(&out, &write_clu(&result.to_partition()))?;
            Ok(())
        }

        Command::Sparsity { a, b } => {
            let left = load_net(&a)?;
            let right = load_net(&b)?;
            print!("{}", analyze_product(&left, &right)?.render());
            Ok(())
        }

        Command::Extract {
            input,
            partition,
            out,
            classes,
        } => {
            let net = load_net(&input)?;
            let groups = load_clu(&partition, net.row_set())?;
            write_text(&out, &write_net(&extract(&net, &groups, &classes)?))?;
            Ok(())
        }

        Command::Shrink {
            input,
            partition,
            out,
        } => {
            let net = load_net(&input)?;
            let groups = load_clu(&partition, net.row_set())?;
            write_text(&out, &write_net(&shrink(&net, &groups)?))?;
            Ok(())
        }

        Command::Report {
            what,
            dir,
            top,
            format,
        } => {
            let format = match format {
                OutputFormat::Text => ReportFormat::Text,
                OutputFormat::Csv => ReportFormat::Csv,
            };
            let collection = load_collection(&dir)?;
            let wa = collection.works_authors();
            let table = match what {
                ReportTarget::Collaborators => {
                    collaborators_report(&collaboration_counts(wa)?, top, format)
                }
                ReportTarget::Outdeg => out_degree_report(wa, format),
                ReportTarget::Best => {
                    best_authors_report(&collaboration_shares(wa)?, wa, top, format)?
                }
            };
            print!("{table}");
            Ok(())
        }

        Command::Droploops { input, out } => {
            let net = load_net(&input)?;
            write_text(&out, &write_net(&drop_loops(&net)?))?;
            Ok(())
        }

        Command::Drophigh {
            input,
            out,
            threshold,
            direction,
        } => {
            let net = load_net(&input)?;
            let direction = match direction {
                DegreeSide::Out => Direction::Out,
                DegreeSide::In => Direction::In,
            };
            let (kept, removed) = drop_high_degree(&net, direction, threshold);
            for label in &removed {
                println!("removed {label}");
            }
            write_text(&out, &write_net(&kept))?;
            Ok(())
        }
    }
}

fn run_derive(
    what: DeriveTarget,
    collection: &BiblioCollection,
    out_dir: &Path,
    guard: u64,
) -> Result<()> {
    let wa = collection.works_authors();
    match what {
        DeriveTarget::Co => {
            check_guard(&transpose(wa), wa, guard)?;
            write_text(&out_dir.join("Co.net"), &write_net(&collaboration_counts(wa)?))
        }
        DeriveTarget::Cn => {
            check_guard(&transpose(wa), wa, guard)?;
            let cn = collaboration_shares(wa)?;
            let indices = author_indices(&cn, wa)?;
            write_text(&out_dir.join("Cn.net"), &write_net(&cn))?;
            write_text(&out_dir.join("S.vec"), &write_vec(&indices.self_share))?;
            write_text(&out_dir.join("K.vec"), &write_vec(&indices.collaborativeness))
        }
        DeriveTarget::Ct => {
            check_guard(&transpose(wa), wa, guard)?;
            let ct = collaboration_fractional(wa)?;
            let indices = author_indices(&collaboration_shares(wa)?, wa)?;
            write_text(&out_dir.join("Ct.net"), &write_net(&ct))?;
            write_text(&out_dir.join("ac.vec"), &write_vec(&indices.normalized_output))
        }
        DeriveTarget::BiCo => {
            let ci = collection.citations()?;
            check_guard(ci, &transpose(ci), guard)?;
            write_text(&out_dir.join("biCo.net"), &write_net(&bibliographic_coupling(ci)?))
        }
        DeriveTarget::BiCon => {
            let ci = collection.citations()?;
            check_guard(ci, &transpose(ci), guard)?;
            write_text(
                &out_dir.join("biCon.net"),
                &write_net(&bibliographic_coupling_normalized(ci)?),
            )
        }
        DeriveTarget::CoCi => {
            let ci = collection.citations()?;
            check_guard(&transpose(ci), ci, guard)?;
            write_text(&out_dir.join("coCi.net"), &write_net(&co_citation(ci)?))
        }
        DeriveTarget::CoCin => {
            let ci = collection.citations()?;
            check_guard(&transpose(ci), ci, guard)?;
            write_text(
                &out_dir.join("coCin.net"),
                &write_net(&co_citation_normalized(ci)?),
            )
        }
        DeriveTarget::ACi => {
            let ci = collection.citations()?;
            check_guard(&transpose(wa), ci, guard)?;
            write_text(&out_dir.join("ACi.net"), &write_net(&author_citations(wa, ci)?))
        }
        DeriveTarget::ACo => {
            let ci = collection.citations()?;
            check_guard(&transpose(wa), ci, guard)?;
            let aci = author_citations(wa, ci)?;
            let binary = binarize(&aci);
            check_guard(&binary, &transpose(&binary), guard)?;
            write_text(&out_dir.join("ACo.net"), &write_net(&author_co_citation(&aci)?))
        }
        DeriveTarget::Ak => {
            let wk = collection.works_keywords()?;
            check_guard(&transpose(wa), wk, guard)?;
            write_text(&out_dir.join("AK.net"), &write_net(&author_keyword_use(wa, wk)?))
        }
        DeriveTarget::Qua => {
            let ci = collection.citations()?;
            check_guard(&transpose(wa), wa, guard)?;
            write_text(
                &out_dir.join("Qua.net"),
                &write_net(&cited_co_authorship(wa, ci, false)?),
            )
        }
        DeriveTarget::Cc => {
            let ci = collection.citations()?;
            check_guard(&transpose(wa), wa, guard)?;
            write_text(
                &out_dir.join("Cc.net"),
                &write_net(&cited_co_authorship(wa, ci, true)?),
            )
        }
        DeriveTarget::Ca => {
            let ci = collection.citations()?;
            check_guard(&transpose(wa), ci, guard)?;
            let aci = author_citations(wa, ci)?;
            check_guard(&aci, wa, guard)?;
            write_text(&out_dir.join("Ca.net"), &write_net(&multiply(&aci, wa)?))
        }
    }
}
