//! Brute-force enumerators for the combinatorial structures behind each
//! encoding. They are the ground truth for certificate tests, so they are
//! written as plainly as possible and refuse inputs above a size guard.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Hard caps on the instances the enumerators accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_vertices: 20,
            max_edges: 20,
        }
    }
}

impl OracleLimits {
    fn check_vertices(&self, g: &Graph) -> Result<()> {
        if g.n() > self.max_vertices {
            return Err(Error::GuardExceeded {
                what: "vertex set",
                size: g.n(),
                limit: self.max_vertices,
            });
        }
        Ok(())
    }

    fn check_edges(&self, g: &Graph) -> Result<()> {
        self.check_vertices(g)?;
        if g.edge_count() > self.max_edges {
            return Err(Error::GuardExceeded {
                what: "edge set",
                size: g.edge_count(),
                limit: self.max_edges,
            });
        }
        Ok(())
    }
}

/// Which structures a family collects, with their parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureKind {
    IndependentSet,
    Matching,
    KColorableSubgraph {
        k: usize,
    },
    /// Edge subsets admitting a proper edge coloring with `k` colors.
    EdgeColorableSubgraph {
        k: usize,
    },
    HomomorphicSubgraph {
        target: Graph,
    },
    RegularSpanningSubgraph,
    KRegularSubgraph {
        k: usize,
    },
    VertexCover,
    EdgeCover,
    CageFreeSubgraph,
}

impl StructureKind {
    /// Whether members are edge subsets (otherwise vertex subsets).
    pub fn over_edges(&self) -> bool {
        !matches!(self, Self::IndependentSet | Self::VertexCover)
    }
}

/// A set of subsets of `0..ground`, each stored as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFamily {
    ground: usize,
    members: BTreeSet<u64>,
}

/// Outcome of [`is_subset_closed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetClosure {
    Closed,
    /// The empty set is not a member (covers the empty family).
    MissingEmpty,
    /// `member` is in the family but its subset `missing` is not.
    NotClosed {
        member: u64,
        missing: u64,
    },
}

impl SubsetClosure {
    pub fn is_closed(&self) -> bool {
        matches!(self, Self::Closed)
    }
}

impl StructureFamily {
    pub fn new(ground: usize, members: impl IntoIterator<Item = u64>) -> Self {
        Self {
            ground,
            members: members.into_iter().collect(),
        }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, member: u64) -> bool {
        self.members.contains(&member)
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    /// Members ordered like their squarefree monomials: by size, then by the
    /// first differing element (smaller element first).
    pub fn members_canonical(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.members.iter().copied().collect();
        v.sort_by_key(|&m| (m.count_ones(), elements(m)));
        v
    }

    pub fn has_member_of_size(&self, size: usize) -> bool {
        self.members.iter().any(|m| m.count_ones() as usize == size)
    }

    /// Renders one member as `{a, b}` using `names[i]` for element `i`.
    pub fn format_member(member: u64, names: &[String]) -> String {
        let parts: Vec<&str> = elements(member)
            .into_iter()
            .map(|i| names[i].as_str())
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Indices of the set bits, ascending.
pub fn elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn collect(ground: usize, pred: impl Fn(u64) -> bool) -> StructureFamily {
    StructureFamily::new(ground, (0..1u64 << ground).filter(|&m| pred(m)))
}

fn degrees(g: &Graph, mask: u64) -> Vec<usize> {
    let mut deg = vec![0; g.n()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
    }
    deg
}

pub fn enum_independent_sets(g: &Graph, limits: &OracleLimits) -> Result<StructureFamily> {
    limits.check_vertices(g)?;
    Ok(collect(g.n(), |m| {
        g.edges()
            .iter()
            .all(|&(u, v)| !(m >> (u - 1) & 1 == 1 && m >> (v - 1) & 1 == 1))
    }))
}

pub fn enum_matchings(g: &Graph, limits: &OracleLimits) -> Result<StructureFamily> {
    limits.check_edges(g)?;
    Ok(collect(g.edge_count(), |m| {
        degrees(g, m).iter().all(|&d| d <= 1)
    }))
}

/// Whether the edge set `mask` admits a vertex map into `target` sending
/// every chosen edge onto an edge of `target`. Only vertices touched by the
/// chosen edges are mapped.
fn maps_into(g: &Graph, mask: u64, target: &Graph) -> bool {
    let chosen: Vec<(usize, usize)> = elements(mask).into_iter().map(|i| g.edges()[i]).collect();
    let touched: Vec<usize> = chosen
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut image = vec![0usize; g.n() + 1];

    fn rec(
        idx: usize,
        touched: &[usize],
        chosen: &[(usize, usize)],
        image: &mut [usize],
        target: &Graph,
    ) -> bool {
        let Some(&v) = touched.get(idx) else {
            return true;
        };
        for h in target.vertices() {
            image[v] = h;
            let ok = chosen.iter().all(|&(a, b)| {
                let (ia, ib) = (image[a], image[b]);
                // Unassigned endpoints are checked once both are mapped.
                ia == 0 || ib == 0 || target.has_edge(ia, ib)
            });
            if ok && rec(idx + 1, touched, chosen, image, target) {
                return true;
            }
        }
        image[v] = 0;
        false
    }
    rec(0, &touched, &chosen, &mut image, target)
}

pub fn enum_k_colorable_subgraphs(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<StructureFamily> {
    enum_homomorphic_subgraphs(g, &Graph::complete(k), limits)
}

pub fn enum_homomorphic_subgraphs(
    g: &Graph,
    target: &Graph,
    limits: &OracleLimits,
) -> Result<StructureFamily> {
    limits.check_edges(g)?;
    limits.check_vertices(target)?;
    Ok(collect(g.edge_count(), |m| maps_into(g, m, target)))
}

/// Edge subsets whose edges can be colored with `k` colors so that edges
/// sharing a vertex differ.
pub fn enum_edge_colorable_subgraphs(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<StructureFamily> {
    limits.check_edges(g)?;
    let colorable = |mask: u64| {
        let chosen: Vec<(usize, usize)> =
            elements(mask).into_iter().map(|i| g.edges()[i]).collect();
        fn rec(idx: usize, chosen: &[(usize, usize)], colors: &mut Vec<usize>, k: usize) -> bool {
            let Some(&(u, v)) = chosen.get(idx) else {
                return true;
            };
            for c in 0..k {
                let clash = chosen[..idx]
                    .iter()
                    .zip(colors.iter())
                    .any(|(&(a, b), &cc)| cc == c && (a == u || a == v || b == u || b == v));
                if !clash {
                    colors.push(c);
                    if rec(idx + 1, chosen, colors, k) {
                        return true;
                    }
                    colors.pop();
                }
            }
            false
        }
        rec(0, &chosen, &mut Vec::new(), k)
    };
    Ok(collect(g.edge_count(), colorable))
}

pub fn enum_regular_subgraphs(g: &Graph, limits: &OracleLimits) -> Result<StructureFamily> {
    limits.check_edges(g)?;
    Ok(collect(g.edge_count(), |m| {
        let d = degrees(g, m);
        d.windows(2).all(|w| w[0] == w[1])
    }))
}

pub fn enum_k_regular_subgraphs(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<StructureFamily> {
    limits.check_edges(g)?;
    Ok(collect(g.edge_count(), |m| {
        degrees(g, m).iter().all(|&d| d == 0 || d == k)
    }))
}

pub fn enum_vertex_covers(g: &Graph, limits: &OracleLimits) -> Result<StructureFamily> {
    limits.check_vertices(g)?;
    Ok(collect(g.n(), |m| {
        g.edges()
            .iter()
            .all(|&(u, v)| m >> (u - 1) & 1 == 1 || m >> (v - 1) & 1 == 1)
    }))
}

pub fn enum_edge_covers(g: &Graph, limits: &OracleLimits) -> Result<StructureFamily> {
    limits.check_edges(g)?;
    Ok(collect(g.edge_count(), |m| {
        degrees(g, m).iter().all(|&d| d >= 1)
    }))
}

/// Edge subsets that contain no vertex's full neighborhood of edges. A
/// graph with an isolated vertex has none, since that vertex is caged by
/// every subgraph.
pub fn enum_cagefree_subgraphs(g: &Graph, limits: &OracleLimits) -> Result<StructureFamily> {
    limits.check_edges(g)?;
    let full: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    Ok(collect(g.edge_count(), |m| {
        degrees(g, m).iter().zip(&full).all(|(d, f)| d < f)
    }))
}

/// Dispatches on `kind`.
pub fn enumerate(
    kind: &StructureKind,
    g: &Graph,
    limits: &OracleLimits,
) -> Result<StructureFamily> {
    match kind {
        StructureKind::IndependentSet => enum_independent_sets(g, limits),
        StructureKind::Matching => enum_matchings(g, limits),
        StructureKind::KColorableSubgraph { k } => enum_k_colorable_subgraphs(g, *k, limits),
        StructureKind::EdgeColorableSubgraph { k } => enum_edge_colorable_subgraphs(g, *k, limits),
        StructureKind::HomomorphicSubgraph { target } => {
            enum_homomorphic_subgraphs(g, target, limits)
        }
        StructureKind::RegularSpanningSubgraph => enum_regular_subgraphs(g, limits),
        StructureKind::KRegularSubgraph { k } => enum_k_regular_subgraphs(g, *k, limits),
        StructureKind::VertexCover => enum_vertex_covers(g, limits),
        StructureKind::EdgeCover => enum_edge_covers(g, limits),
        StructureKind::CageFreeSubgraph => enum_cagefree_subgraphs(g, limits),
    }
}

/// Checks that the family contains the empty set and is closed under
/// removing an element, which gives closure under all subsets.
pub fn is_subset_closed(f: &StructureFamily) -> SubsetClosure {
    if !f.contains(0) {
        return SubsetClosure::MissingEmpty;
    }
    for member in f.members_canonical() {
        for i in elements(member) {
            let sub = member & !(1 << i);
            if !f.contains(sub) {
                return SubsetClosure::NotClosed {
                    member,
                    missing: sub,
                };
            }
        }
    }
    SubsetClosure::Closed
}

pub fn max_structure_size(f: &StructureFamily) -> Result<usize> {
    f.members()
        .map(|m| m.count_ones() as usize)
        .max()
        .ok_or(Error::EmptyFamily)
}
