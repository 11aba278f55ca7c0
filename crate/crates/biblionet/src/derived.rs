//! Networks derived from a bibliographic collection.
//!
//! Starting from the two-mode authorship network `WA` (works × authors), the
//! citation network `Ci` (works × works, an arc meaning "cites"), and the
//! keyword network `WK` (works × keywords), products of these networks and
//! their transposes and normalizations yield one-mode networks whose weights
//! have exact counting interpretations: joint works, shared references,
//! contribution fractions, citation flows. Each derivation here states and
//! preserves that interpretation, which is what distinguishes it from an
//! arbitrary matrix product.
//!
//! Naming follows the conventional short labels used for the output files:
//! `Co`, `Cn`, `Ct` for the collaboration family, `biCo`/`biCon` for
//! coupling, `coCi`/`coCin` for co-citation, `ACi`/`ACo`/`AK`/`Qua`/`Cc`/`Ca`
//! for the author-level networks.

use crate::algebra::{add_scaled, diag_scale, multiply, row_normalize, transpose, Side};
use crate::error::{Error, Result};
use crate::net::{same_node_set, Direction, NodeVector, Partition, SparseNetwork};

/// The input networks of one bibliography, all sharing the works node set.
///
/// Only the authorship network is mandatory; citation and keyword networks
/// and a per-work year partition are attached when available. Construction
/// verifies that every attached piece really is over the same works set, so
/// downstream derivations can assume compatibility.
#[derive(Debug, Clone)]
pub struct BiblioCollection {
    works_authors: SparseNetwork,
    citations: Option<SparseNetwork>,
    works_keywords: Option<SparseNetwork>,
    years: Option<Partition>,
}

impl BiblioCollection {
    /// Wraps an authorship network (works × authors).
    pub fn new(works_authors: SparseNetwork) -> Self {
        BiblioCollection {
            works_authors,
            citations: None,
            works_keywords: None,
            years: None,
        }
    }

    /// Attaches a citation network; must be one-mode over the same works.
    pub fn with_citations(mut self, citations: SparseNetwork) -> Result<Self> {
        if !citations.is_one_mode() {
            return Err(Error::NotOneMode {
                rows: citations.row_set().describe(),
                cols: citations.col_set().describe(),
            });
        }
        if !same_node_set(citations.row_set(), self.works()) {
            return Err(Error::IncompatibleSets {
                left: citations.row_set().describe(),
                right: self.works().describe(),
            });
        }
        self.citations = Some(citations);
        Ok(self)
    }

    /// Attaches a keyword network over the same works.
    pub fn with_keywords(mut self, works_keywords: SparseNetwork) -> Result<Self> {
        if !same_node_set(works_keywords.row_set(), self.works()) {
            return Err(Error::IncompatibleSets {
                left: works_keywords.row_set().describe(),
                right: self.works().describe(),
            });
        }
        self.works_keywords = Some(works_keywords);
        Ok(self)
    }

    /// Attaches a publication-year partition over the works.
    pub fn with_years(mut self, years: Partition) -> Result<Self> {
        if !same_node_set(years.over(), self.works()) {
            return Err(Error::PartitionSetMismatch {
                partition: years.over().describe(),
                expected: self.works().describe(),
            });
        }
        self.years = Some(years);
        Ok(self)
    }

    /// The works node set shared by every member network.
    pub fn works(&self) -> &std::sync::Arc<crate::net::NodeSet> {
        self.works_authors.row_set()
    }

    /// The authorship network `WA`.
    pub fn works_authors(&self) -> &SparseNetwork {
        &self.works_authors
    }

    /// The citation network `Ci`, if attached.
    pub fn citations(&self) -> Result<&SparseNetwork> {
        self.citations
            .as_ref()
            .ok_or(Error::MissingInput("citation network"))
    }

    /// The keyword network `WK`, if attached.
    pub fn works_keywords(&self) -> Result<&SparseNetwork> {
        self.works_keywords
            .as_ref()
            .ok_or(Error::MissingInput("keyword network"))
    }

    /// The year partition, if attached.
    pub fn years(&self) -> Result<&Partition> {
        self.years.as_ref().ok_or(Error::MissingInput("year partition"))
    }
}

/// Number of works with no recorded author — the rows of `WA` without arcs.
///
/// The clean sum identities (total contribution equals the number of works,
/// average author output equals 1) hold over works *with* authors; this count
/// is the correction term when a collection mixes in description-less works
/// that appear only as citation targets.
pub fn authorless_work_count(wa: &SparseNetwork) -> usize {
    (0..wa.row_set().len())
        .filter(|&p| wa.out_degree(p) == 0)
        .count()
}

/// Collaboration counts `Co = WAᵀ · WA` (authors × authors).
///
/// `co_ij` is the number of works written by both `i` and `j`; the diagonal
/// `co_ii` counts the works of `i`. Symmetric, undirected.
pub fn collaboration_counts(wa: &SparseNetwork) -> Result<SparseNetwork> {
    wa.require_binary()?;
    let co = multiply(&transpose(wa), wa)?;
    Ok(co
        .into_undirected()
        .expect("a product of a network with its own transpose is symmetric"))
}

/// Collaboration shares `Cn = WAᵀ · n(WA)` (authors × authors).
///
/// With each work's unit of credit split equally among its authors,
/// `cn_ij` is the part of `j`'s credit earned on works shared with `i`.
/// Row `i` sums to the number of works `i` co-authored, and the whole
/// network sums to the arc count of `WA`. Under this equal split the
/// network is symmetric.
pub fn collaboration_shares(wa: &SparseNetwork) -> Result<SparseNetwork> {
    wa.require_binary()?;
    let cn = multiply(&transpose(wa), &row_normalize(wa)?)?;
    Ok(cn
        .into_undirected()
        .expect("equal-share normalization keeps the product symmetric"))
}

/// Fractional collaboration `Ct = n(WA)ᵀ · n(WA)` (authors × authors).
///
/// Both sides carry equal shares, so each work distributes a total weight of
/// exactly 1 over its author-pair clique and the whole network sums to the
/// number of works with at least one author. `ct_ij` is the joint
/// contribution of the pair `(i, j)`.
pub fn collaboration_fractional(wa: &SparseNetwork) -> Result<SparseNetwork> {
    wa.require_binary()?;
    let n = row_normalize(wa)?;
    let ct = multiply(&transpose(&n), &n)?;
    Ok(ct
        .into_undirected()
        .expect("a product of a network with its own transpose is symmetric"))
}

/// Per-author summary measures computed from `Cn` and `WA`.
#[derive(Debug, Clone)]
pub struct AuthorIndices {
    /// `S_i = cn_ii / (number of works of i)` — the share of their own works'
    /// credit an author keeps; 1 for an author who always writes alone
    /// (and, by convention, for an author with no works).
    pub self_share: NodeVector,
    /// `K_i = 1 − S_i` — the share given away to co-authors; 0 means solo.
    pub collaborativeness: NodeVector,
    /// Fractional output scaled by `|authors| / |works|`, so it averages 1
    /// over collections where every work has authors.
    pub normalized_output: NodeVector,
}

/// Computes [`AuthorIndices`] from a collaboration-share network and the
/// authorship network it came from.
pub fn author_indices(cn: &SparseNetwork, wa: &SparseNetwork) -> Result<AuthorIndices> {
    let authors = wa.col_set();
    if !same_node_set(cn.row_set(), authors) || !cn.is_one_mode() {
        return Err(Error::IncompatibleSets {
            left: format!("{} x {}", cn.row_set().describe(), cn.col_set().describe()),
            right: format!("{0} x {0}", authors.describe()),
        });
    }
    let works_of = wa.degrees(Direction::In);
    let n = row_normalize(wa)?;
    let fractional = n.weight_sums(Direction::In);
    let scale = authors.len() as f64 / (wa.row_set().len() as f64).max(1.0);

    let mut s = Vec::with_capacity(authors.len());
    let mut k = Vec::with_capacity(authors.len());
    let mut ac = Vec::with_capacity(authors.len());
    for i in 0..authors.len() {
        let own = works_of.get(i);
        let si = if own > 0.0 {
            cn.weight(i, i).unwrap_or(0.0) / own
        } else {
            1.0
        };
        s.push(si);
        k.push(1.0 - si);
        ac.push(scale * fractional.get(i));
    }
    Ok(AuthorIndices {
        self_share: NodeVector::new(authors.clone(), s)?,
        collaborativeness: NodeVector::new(authors.clone(), k)?,
        normalized_output: NodeVector::new(authors.clone(), ac)?,
    })
}

fn require_citation_net(ci: &SparseNetwork) -> Result<()> {
    if !ci.is_one_mode() {
        return Err(Error::NotOneMode {
            rows: ci.row_set().describe(),
            cols: ci.col_set().describe(),
        });
    }
    ci.require_binary()
}

/// Divides every arc of row `p` by `divisors[p]`, one rounding per arc.
///
/// Rows whose divisor is zero carry no arcs in the products this serves
/// (an empty row in the factor leaves the product row empty), so the
/// division is always by a positive count.
fn divide_rows(net: &SparseNetwork, divisors: &NodeVector) -> Result<SparseNetwork> {
    let values = divisors.values();
    let arcs = net
        .arcs()
        .map(|(p, q, w)| (p, q, w / values[p]))
        .collect();
    SparseNetwork::from_arcs(
        net.row_set().clone(),
        net.col_set().clone(),
        arcs,
        net.is_directed(),
    )
}

/// Bibliographic coupling `biCo = Ci · Ciᵀ` (works × works).
///
/// `bico_pq` counts the works cited by both `p` and `q`; the diagonal holds
/// reference-list sizes. Symmetric.
pub fn bibliographic_coupling(ci: &SparseNetwork) -> Result<SparseNetwork> {
    require_citation_net(ci)?;
    let bico = multiply(ci, &transpose(ci))?;
    Ok(bico
        .into_undirected()
        .expect("a product of a network with its own transpose is symmetric"))
}

/// Normalized coupling `biCon = ½ (n(Ci) · Ciᵀ + Ci · n(Ci)ᵀ)`.
///
/// Writing `cC = n(Ci) · Ciᵀ` — the fraction of `p`'s references shared with
/// `q` — the result averages the two one-sided fractions:
/// `bicon_pq = ½ (cC_pq + cC_qp)`. Values lie in `[0, 1]`, reaching 1 exactly
/// when two works have identical nonempty reference lists.
///
/// Each fraction is evaluated as `(Ci · Ciᵀ)_pq / |refs(p)|` — an exact
/// integer count divided once — rather than by accumulating pre-divided
/// terms, so the boundary values 0 and 1 come out exact.
pub fn bibliographic_coupling_normalized(ci: &SparseNetwork) -> Result<SparseNetwork> {
    require_citation_net(ci)?;
    let shared = multiply(ci, &transpose(ci))?;
    let shared_fraction = divide_rows(&shared, &ci.weight_sums(Direction::Out))?;
    let bicon = add_scaled(&shared_fraction, 0.5, &transpose(&shared_fraction), 0.5)?;
    Ok(bicon
        .into_undirected()
        .expect("averaging a network with its transpose is symmetric"))
}

/// Co-citation `coCi = Ciᵀ · Ci` (works × works).
///
/// `coci_pq` counts the works whose reference lists contain both `p` and
/// `q` — coupling's mirror image: `coCi(N) = biCo(Nᵀ)`.
pub fn co_citation(ci: &SparseNetwork) -> Result<SparseNetwork> {
    require_citation_net(ci)?;
    let coci = multiply(&transpose(ci), ci)?;
    Ok(coci
        .into_undirected()
        .expect("a product of a transpose with the network itself is symmetric"))
}

/// Normalized co-citation, mirroring [`bibliographic_coupling_normalized`]
/// on the reversed network: the averaged fractions of shared *citers*,
/// each evaluated as an exact shared-citer count divided once by a citer
/// count, so identical nonempty citer sets give exactly 1.
pub fn co_citation_normalized(ci: &SparseNetwork) -> Result<SparseNetwork> {
    require_citation_net(ci)?;
    let cited_by = transpose(ci);
    let shared = multiply(&cited_by, &transpose(&cited_by))?;
    let shared_fraction = divide_rows(&shared, &cited_by.weight_sums(Direction::Out))?;
    let cocin = add_scaled(&shared_fraction, 0.5, &transpose(&shared_fraction), 0.5)?;
    Ok(cocin
        .into_undirected()
        .expect("averaging a network with its transpose is symmetric"))
}

/// Author citations `ACi = WAᵀ · Ci` (authors × works).
///
/// `aci_ip` counts how many of `i`'s works cite the work `p`.
pub fn author_citations(wa: &SparseNetwork, ci: &SparseNetwork) -> Result<SparseNetwork> {
    wa.require_binary()?;
    require_citation_net(ci)?;
    multiply(&transpose(wa), ci)
}

/// Author co-citation `ACo = b(ACi) · b(ACi)ᵀ` (authors × authors).
///
/// `aco_ij` counts the distinct works cited by both authors; binarizing
/// first makes repeat citations of the same work count once.
pub fn author_co_citation(aci: &SparseNetwork) -> Result<SparseNetwork> {
    let b = crate::algebra::binarize(aci);
    let aco = multiply(&b, &transpose(&b))?;
    Ok(aco
        .into_undirected()
        .expect("a product of a network with its own transpose is symmetric"))
}

/// Author–keyword use `AK = WAᵀ · WK` (authors × keywords).
///
/// `ak_ik` counts the works in which author `i` and keyword `k` co-occur.
pub fn author_keyword_use(wa: &SparseNetwork, wk: &SparseNetwork) -> Result<SparseNetwork> {
    wa.require_binary()?;
    wk.require_binary()?;
    multiply(&transpose(wa), wk)
}

/// Cited co-authorship (authors × authors): collaboration weighted by how
/// often the joint works are cited.
///
/// The raw form `Qua = WAᵀ · diag(indeg_Ci) · WA` gives
/// `qua_ij = Σ_p citations(p)` over the works `p` shared by `i` and `j`.
/// The normalized form `Cc` divides each work's citation count by the
/// squared size of its author list, so a work's whole author-pair clique
/// receives exactly `citations(p)` in total and the network sums to the
/// number of citations pointing at works with authors.
pub fn cited_co_authorship(
    wa: &SparseNetwork,
    ci: &SparseNetwork,
    normalized: bool,
) -> Result<SparseNetwork> {
    wa.require_binary()?;
    require_citation_net(ci)?;
    if !same_node_set(wa.row_set(), ci.row_set()) {
        return Err(Error::IncompatibleSets {
            left: wa.row_set().describe(),
            right: ci.row_set().describe(),
        });
    }
    let citations_into = ci.degrees(Direction::In);
    let factors = if normalized {
        let authors_per_work = wa.degrees(Direction::Out);
        let values = (0..wa.row_set().len())
            .map(|p| {
                let d = authors_per_work.get(p).max(1.0);
                citations_into.get(p) / (d * d)
            })
            .collect();
        NodeVector::new(wa.row_set().clone(), values)?
    } else {
        citations_into
    };
    let weighted = diag_scale(wa, &factors, Side::Left)?;
    let result = multiply(&transpose(wa), &weighted)?;
    Ok(result
        .into_undirected()
        .expect("a symmetric per-work weighting keeps the product symmetric"))
}

/// Author-level citation flow `Ca = WAᵀ · Ci · WA` (authors × authors).
///
/// `ca_ij` counts the (citing work, cited work) pairs with `i` among the
/// citing authors and `j` among the cited ones. Directed: flow from citer
/// to cited.
pub fn citation_flow(wa: &SparseNetwork, ci: &SparseNetwork) -> Result<SparseNetwork> {
    wa.require_binary()?;
    require_citation_net(ci)?;
    multiply(&multiply(&transpose(wa), ci)?, wa)
}

/// Removes diagonal arcs from a one-mode network, keeping everything else.
///
/// Derived collaboration and coupling networks carry meaningful diagonals
/// (own work counts, reference-list sizes), but group-detection and display
/// workflows usually want them gone.
pub fn drop_loops(net: &SparseNetwork) -> Result<SparseNetwork> {
    if !net.is_one_mode() {
        return Err(Error::NotOneMode {
            rows: net.row_set().describe(),
            cols: net.col_set().describe(),
        });
    }
    let arcs = net.arcs().filter(|&(i, j, _)| i != j).collect();
    Ok(
        SparseNetwork::from_arcs(net.row_set().clone(), net.col_set().clone(), arcs, true)
            .expect("filtered arcs are valid")
            .with_directed_flag(net.is_directed()),
    )
}
