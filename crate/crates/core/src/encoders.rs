//! Polynomial systems whose common zeros are the combinatorial structures of
//! a graph problem.
//!
//! Every encoder fixes its equation order (certificates index their
//! coefficient polynomials by position):
//!
//! | problem | order |
//! |---|---|
//! | independent set | `x_i^2 - x_i`, `x_i x_j` per edge, cardinality |
//! | vertex cover | same layout as independent set, cardinality last |
//! | k-colorable, edge-chromatic, homomorphism, regular, k-regular, edge cover | cardinality first, then the rest |
//! | perfect matching (linear form) | vertex equations, then vertex-local pair products |
//! | perfect matching (line-graph form) | `x_e^2 - x_e`, pair products, cardinality |
//!
//! Cardinality forms are always written `-m + Σ y`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::oracles::{StructureFamily, StructureKind};
use crate::poly::{int, Monomial, Polynomial, Rational, VarId, VarRole, VariableTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverForm {
    /// Indicators mark what is left out; the family is subset closed.
    Subset,
    /// Indicators mark the cover itself.
    Original,
}

/// The graph problem a system encodes, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum Problem {
    IndependentSet,
    KColorable { k: usize },
    EdgeChromatic,
    Homomorphism { target: Graph },
    RegularSpanning { all_pairs: bool },
    KRegular { k: usize },
    VertexCover { form: CoverForm },
    EdgeCover { form: CoverForm },
    PerfectMatchingV1,
    PerfectMatchingV2,
}

impl Problem {
    /// Family of indicator patterns that extend to solutions of every
    /// equation except the cardinality form.
    pub fn structure_kind(&self, g: &Graph) -> StructureKind {
        match self {
            Problem::IndependentSet => StructureKind::IndependentSet,
            Problem::KColorable { k } => StructureKind::KColorableSubgraph { k: *k },
            Problem::EdgeChromatic => StructureKind::EdgeColorableSubgraph { k: g.max_degree() },
            Problem::Homomorphism { target } => StructureKind::HomomorphicSubgraph {
                target: target.clone(),
            },
            Problem::RegularSpanning { .. } => StructureKind::RegularSpanningSubgraph,
            Problem::KRegular { k } => StructureKind::KRegularSubgraph { k: *k },
            Problem::VertexCover {
                form: CoverForm::Subset,
            } => StructureKind::IndependentSet,
            Problem::VertexCover {
                form: CoverForm::Original,
            } => StructureKind::VertexCover,
            Problem::EdgeCover {
                form: CoverForm::Subset,
            } => StructureKind::CageFreeSubgraph,
            Problem::EdgeCover {
                form: CoverForm::Original,
            } => StructureKind::EdgeCover,
            Problem::PerfectMatchingV1 | Problem::PerfectMatchingV2 => StructureKind::Matching,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Problem::IndependentSet => "indset",
            Problem::KColorable { .. } => "kcolor",
            Problem::EdgeChromatic => "edge-chromatic",
            Problem::Homomorphism { .. } => "hom",
            Problem::RegularSpanning { .. } => "regular",
            Problem::KRegular { .. } => "kregular",
            Problem::VertexCover { .. } => "vertex-cover",
            Problem::EdgeCover { .. } => "edge-cover",
            Problem::PerfectMatchingV1 => "matching-v1",
            Problem::PerfectMatchingV2 => "matching-v2",
        }
    }

    /// Whether the system takes a size parameter `m`.
    pub fn takes_m(&self) -> bool {
        !matches!(
            self,
            Problem::PerfectMatchingV1 | Problem::PerfectMatchingV2
        )
    }
}

/// An ordered list of polynomials `f_1..f_s` with the metadata needed to
/// interpret it.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    pub table: VariableTable,
    pub polys: Vec<Polynomial>,
    /// Position of the cardinality form `-c + Σ indicators`, if any.
    pub cardinality_index: Option<usize>,
    /// The user-facing size parameter (for cover problems in subset form the
    /// cardinality constant is the complement of it).
    pub m: Option<usize>,
    pub problem: Problem,
    pub graph: Graph,
    pub indicator_ids: Vec<VarId>,
}

impl PolySystem {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn num_vars(&self) -> usize {
        self.table.len()
    }

    pub fn structure_kind(&self) -> StructureKind {
        self.problem.structure_kind(&self.graph)
    }

    pub fn max_poly_degree(&self) -> u32 {
        self.polys
            .iter()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn cardinality(&self) -> Option<&Polynomial> {
        self.cardinality_index.map(|i| &self.polys[i])
    }

    /// Number of indicator variables that must equal one in a solution, or
    /// `None` when no integer count works (odd order for perfect matching).
    pub fn required_size(&self) -> Option<usize> {
        let n = self.graph.n();
        let e = self.graph.edge_count();
        match (&self.problem, self.m) {
            (Problem::PerfectMatchingV1 | Problem::PerfectMatchingV2, _) => {
                (n % 2 == 0).then_some(n / 2)
            }
            (
                Problem::VertexCover {
                    form: CoverForm::Subset,
                },
                Some(m),
            ) => Some(n - m),
            (
                Problem::EdgeCover {
                    form: CoverForm::Subset,
                },
                Some(m),
            ) => Some(e - m),
            (_, m) => m,
        }
    }

    /// Feasibility as decided by a structure family of the right kind.
    pub fn feasible_in(&self, family: &StructureFamily) -> bool {
        self.required_size()
            .is_some_and(|s| family.has_member_of_size(s))
    }

    /// The constant `c` of the cardinality form `-c + Σ y`.
    pub fn cardinality_constant(&self) -> Option<Rational> {
        self.cardinality().map(|p| -p.constant_term())
    }

    /// Checks the metadata invariants: indicator roles, the exact shape of
    /// the cardinality form, and that every polynomial stays in the table.
    pub fn check(&self) -> Result<()> {
        for p in &self.polys {
            self.table.check(p.variables())?;
        }
        self.table.check(self.indicator_ids.iter().copied())?;
        for &v in &self.indicator_ids {
            if self.table.role(v) != VarRole::Indicator {
                return Err(Error::Structural(format!(
                    "{} is listed as an indicator but has role auxiliary",
                    self.table.name(v)
                )));
            }
        }
        if let Some(i) = self.cardinality_index {
            let p = self
                .polys
                .get(i)
                .ok_or_else(|| Error::Structural("cardinality index out of range".into()))?;
            let c = self.required_size().ok_or_else(|| {
                Error::Structural("cardinality form without an integer target".into())
            })?;
            let want = &Polynomial::sum_of(self.indicator_ids.iter().copied())
                - &Polynomial::constant(int(c as i64));
            if *p != want {
                return Err(Error::Structural(
                    "cardinality form is not -m + Σ indicators".into(),
                ));
            }
        }
        Ok(())
    }

    /// Whether every polynomial vanishes at `point`.
    pub fn vanishes_at(&self, point: &HashMap<VarId, Rational>) -> Result<bool> {
        for p in &self.polys {
            if !num_traits::Zero::is_zero(&p.evaluate(point)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct Builder {
    table: VariableTable,
    polys: Vec<Polynomial>,
    cardinality_index: Option<usize>,
    indicators: Vec<VarId>,
}

impl Builder {
    fn new() -> Self {
        Self {
            table: VariableTable::new(),
            polys: Vec::new(),
            cardinality_index: None,
            indicators: Vec::new(),
        }
    }

    fn indicator(&mut self, name: String) -> VarId {
        let v = self
            .table
            .push(name, VarRole::Indicator)
            .expect("fresh name");
        self.indicators.push(v);
        v
    }

    fn aux(&mut self, name: String) -> VarId {
        self.table
            .push(name, VarRole::Auxiliary)
            .expect("fresh name")
    }

    fn edge_indicators(&mut self, g: &Graph, letter: char) -> Vec<VarId> {
        g.edges()
            .iter()
            .map(|&(u, v)| self.indicator(format!("{letter}{u}_{v}")))
            .collect()
    }

    fn cardinality(&mut self, c: usize) {
        self.cardinality_index = Some(self.polys.len());
        let p = &Polynomial::sum_of(self.indicators.clone()) - &Polynomial::constant(int(c as i64));
        self.polys.push(p);
    }

    fn booleans(&mut self, vars: &[VarId]) {
        for &v in vars {
            self.polys.push(&x(v).pow(2) - &x(v));
        }
    }

    fn finish(self, problem: Problem, g: &Graph, m: Option<usize>) -> PolySystem {
        PolySystem {
            table: self.table,
            polys: self.polys,
            cardinality_index: self.cardinality_index,
            m,
            problem,
            graph: g.clone(),
            indicator_ids: self.indicators,
        }
    }
}

fn x(v: VarId) -> Polynomial {
    Polynomial::var(v)
}

fn one() -> Polynomial {
    Polynomial::one()
}

/// Sum of the edge variables at vertex `i`.
fn incident_sum(g: &Graph, edge_vars: &[VarId], i: usize) -> Polynomial {
    Polynomial::sum_of(g.incident_edges(i).into_iter().map(|e| edge_vars[e]))
}

/// `x_i^2 - x_i`, `x_i x_j` per edge, then `-m + Σ x_i`.
pub fn encode_independent_set(g: &Graph, m: usize) -> PolySystem {
    let mut b = Builder::new();
    let xs: Vec<VarId> = g.vertices().map(|i| b.indicator(format!("x{i}"))).collect();
    b.booleans(&xs);
    for &(u, v) in g.edges() {
        b.polys.push(&x(xs[u - 1]) * &x(xs[v - 1]));
    }
    b.cardinality(m);
    b.finish(Problem::IndependentSet, g, Some(m))
}

/// Cardinality, `y^2 - y` per edge, `x_i^k - 1` per vertex, and
/// `y_ij (x_i^{k-1} + x_i^{k-2} x_j + ... + x_j^{k-1})` per edge.
pub fn encode_k_colorable_subgraph(g: &Graph, k: usize, m: usize) -> Result<PolySystem> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut b = Builder::new();
    let ys = b.edge_indicators(g, 'y');
    let xs: Vec<VarId> = g.vertices().map(|i| b.aux(format!("x{i}"))).collect();
    b.cardinality(m);
    b.booleans(&ys);
    let k32 = k as u32;
    for &xi in &xs {
        b.polys.push(&x(xi).pow(k32) - &one());
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (xu, xv) = (xs[u - 1], xs[v - 1]);
        let sym = Polynomial::from_terms((0..k32).map(|a| {
            (
                Monomial::from_exponents([(xu, k32 - 1 - a), (xv, a)]),
                int(1),
            )
        }));
        b.polys.push(&x(ys[e]) * &sym);
    }
    Ok(b.finish(Problem::KColorable { k }, g, Some(m)))
}

/// Cardinality, `y^2 - y`, `y_ij (x_ij^Δ - 1)` per edge, and
/// `s_i Π_{j<k in N(i)} (x_ij - x_ik) - 1` for every vertex of degree at
/// least two (the product is empty below that, and the constraint is
/// dropped).
pub fn encode_edge_chromatic(g: &Graph, m: usize) -> PolySystem {
    let delta = g.max_degree() as u32;
    let mut b = Builder::new();
    let ys = b.edge_indicators(g, 'y');
    let xs: Vec<VarId> = g
        .edges()
        .iter()
        .map(|&(u, v)| b.aux(format!("x{u}_{v}")))
        .collect();
    let inverse_vertices: Vec<usize> = g.vertices().filter(|&i| g.degree(i) >= 2).collect();
    let ss: Vec<VarId> = inverse_vertices
        .iter()
        .map(|i| b.aux(format!("s{i}")))
        .collect();
    b.cardinality(m);
    b.booleans(&ys);
    for (e, &y) in ys.iter().enumerate() {
        b.polys.push(&x(y) * &(&x(xs[e]).pow(delta) - &one()));
    }
    for (&i, &s) in inverse_vertices.iter().zip(&ss) {
        let inc = g.incident_edges(i);
        let mut prod = one();
        for (a, &ea) in inc.iter().enumerate() {
            for &eb in &inc[a + 1..] {
                prod = &prod * &(&x(xs[ea]) - &x(xs[eb]));
            }
        }
        b.polys.push(&(&x(s) * &prod) - &one());
    }
    b.finish(Problem::EdgeChromatic, g, Some(m))
}

/// Cardinality, `y^2 - y`, vertex equations
/// `(Σ_{j in N(i)} y_ij) Π_{v in V(H)} (z_i - x_v)`, edge equations
/// `y_ij Π_{vw in E(H)} (z_i + z_j - x_v - x_w)`, and finally one equation
/// `x_v - 2^(v-1)` per target vertex. Pinning the target variables to
/// powers of two keeps them distinct and makes pair sums identify pairs;
/// with free target variables every subgraph maps onto a single collapsed
/// point.
pub fn encode_graph_homomorphism(g: &Graph, h: &Graph, m: usize) -> Result<PolySystem> {
    if h.n() == 0 {
        return Err(Error::InvalidParameter(
            "target graph has no vertices".into(),
        ));
    }
    if h.n() > 62 {
        return Err(Error::InvalidParameter("target graph too large".into()));
    }
    let mut b = Builder::new();
    let ys = b.edge_indicators(g, 'y');
    let zs: Vec<VarId> = g.vertices().map(|i| b.aux(format!("z{i}"))).collect();
    let xs: Vec<VarId> = h.vertices().map(|v| b.aux(format!("x{v}"))).collect();
    b.cardinality(m);
    b.booleans(&ys);
    for i in g.vertices() {
        let prod = Polynomial::product_of(xs.iter().map(|&xv| &x(zs[i - 1]) - &x(xv)));
        b.polys.push(&incident_sum(g, &ys, i) * &prod);
    }
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        let prod =
            Polynomial::product_of(h.edges().iter().map(|&(v, w)| {
                &(&x(zs[i - 1]) + &x(zs[j - 1])) - &(&x(xs[v - 1]) + &x(xs[w - 1]))
            }));
        b.polys.push(&x(ys[e]) * &prod);
    }
    for (v, &xv) in xs.iter().enumerate() {
        b.polys.push(&x(xv) - &Polynomial::constant(int(1i64 << v)));
    }
    Ok(b.finish(Problem::Homomorphism { target: h.clone() }, g, Some(m)))
}

/// Cardinality, `y^2 - y`, and degree equalities `deg(i) - deg(l)`: for
/// consecutive vertices `(i, i+1)` by default, for every pair `i < l` with
/// `all_pairs`.
pub fn encode_regular_spanning_subgraph(g: &Graph, m: usize, all_pairs: bool) -> PolySystem {
    let mut b = Builder::new();
    let ys = b.edge_indicators(g, 'y');
    b.cardinality(m);
    b.booleans(&ys);
    let n = g.n();
    for i in 1..n {
        let partners: Vec<usize> = if all_pairs {
            (i + 1..=n).collect()
        } else {
            vec![i + 1]
        };
        for l in partners {
            b.polys
                .push(&incident_sum(g, &ys, i) - &incident_sum(g, &ys, l));
        }
    }
    b.finish(Problem::RegularSpanning { all_pairs }, g, Some(m))
}

/// Cardinality, `y^2 - y`, and `(Σ_{N(i)} y)(Σ_{N(i)} y - k)` per vertex.
pub fn encode_k_regular_subgraph(g: &Graph, k: usize, m: usize) -> Result<PolySystem> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut b = Builder::new();
    let ys = b.edge_indicators(g, 'y');
    b.cardinality(m);
    b.booleans(&ys);
    for i in g.vertices() {
        let s = incident_sum(g, &ys, i);
        b.polys
            .push(&s * &(&s - &Polynomial::constant(int(k as i64))));
    }
    Ok(b.finish(Problem::KRegular { k }, g, Some(m)))
}

/// Subset form: `y^2 - y`, `y_i y_j`, `-(n - m) + Σ y` (the independent set
/// system for `n - m`). Original form: `x^2 - x`, `(x_i - 1)(x_j - 1)`,
/// `-m + Σ x`.
pub fn encode_vertex_cover(g: &Graph, m: usize, form: CoverForm) -> Result<PolySystem> {
    if m > g.n() {
        return Err(Error::InvalidParameter(format!(
            "cover size {m} exceeds the {} vertices",
            g.n()
        )));
    }
    let mut b = Builder::new();
    let letter = match form {
        CoverForm::Subset => 'y',
        CoverForm::Original => 'x',
    };
    let vs: Vec<VarId> = g
        .vertices()
        .map(|i| b.indicator(format!("{letter}{i}")))
        .collect();
    b.booleans(&vs);
    for &(u, v) in g.edges() {
        let (a, c) = (x(vs[u - 1]), x(vs[v - 1]));
        b.polys.push(match form {
            CoverForm::Subset => &a * &c,
            CoverForm::Original => &(&a - &one()) * &(&c - &one()),
        });
    }
    b.cardinality(match form {
        CoverForm::Subset => g.n() - m,
        CoverForm::Original => m,
    });
    Ok(b.finish(Problem::VertexCover { form }, g, Some(m)))
}

/// Subset form: `-(e - m) + Σ y`, `y^2 - y`, `Π_{j in N(i)} y_ij` per vertex.
/// Original form: `-m + Σ x`, `x^2 - x`, `Π_{j in N(i)} (x_ij - 1)`. An
/// isolated vertex contributes the empty product, i.e. the equation `1 = 0`.
pub fn encode_edge_cover(g: &Graph, m: usize, form: CoverForm) -> Result<PolySystem> {
    let e = g.edge_count();
    if m > e {
        return Err(Error::InvalidParameter(format!(
            "cover size {m} exceeds the {e} edges"
        )));
    }
    let mut b = Builder::new();
    let (letter, c) = match form {
        CoverForm::Subset => ('y', e - m),
        CoverForm::Original => ('x', m),
    };
    let vs = b.edge_indicators(g, letter);
    b.cardinality(c);
    b.booleans(&vs);
    for i in g.vertices() {
        let factors = g.incident_edges(i).into_iter().map(|ei| match form {
            CoverForm::Subset => x(vs[ei]),
            CoverForm::Original => &x(vs[ei]) - &one(),
        });
        b.polys.push(Polynomial::product_of(factors));
    }
    Ok(b.finish(Problem::EdgeCover { form }, g, Some(m)))
}

/// `Σ_{j in N(i)} x_ij - 1` for every vertex, then for every vertex `i` and
/// every pair `j < k` of its neighbors, `x_ij x_ik`. No cardinality form.
pub fn encode_perfect_matching_v1(g: &Graph) -> PolySystem {
    let mut b = Builder::new();
    let xs = b.edge_indicators(g, 'x');
    for i in g.vertices() {
        b.polys.push(&incident_sum(g, &xs, i) - &one());
    }
    for i in g.vertices() {
        let inc = g.incident_edges(i);
        for (a, &ea) in inc.iter().enumerate() {
            for &eb in &inc[a + 1..] {
                b.polys.push(&x(xs[ea]) * &x(xs[eb]));
            }
        }
    }
    b.finish(Problem::PerfectMatchingV1, g, None)
}

/// `x_e^2 - x_e`, `x_e x_f` for every pair of edges sharing an endpoint (in
/// line-graph edge order), then `-|V|/2 + Σ x_e`. Refuses odd orders.
pub fn encode_perfect_matching_v2(g: &Graph) -> Result<PolySystem> {
    if g.n() % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "{} vertices: the line-graph matching system needs an even order",
            g.n()
        )));
    }
    let mut b = Builder::new();
    let xs = b.edge_indicators(g, 'x');
    b.booleans(&xs);
    for &(e, f) in g.line_graph().graph.edges() {
        b.polys.push(&x(xs[e - 1]) * &x(xs[f - 1]));
    }
    b.cardinality(g.n() / 2);
    Ok(b.finish(Problem::PerfectMatchingV2, g, Some(g.n() / 2)))
}

/// Dispatches on `problem`; `m` is ignored for the perfect matching systems.
pub fn encode(problem: &Problem, g: &Graph, m: usize) -> Result<PolySystem> {
    match problem {
        Problem::IndependentSet => Ok(encode_independent_set(g, m)),
        Problem::KColorable { k } => encode_k_colorable_subgraph(g, *k, m),
        Problem::EdgeChromatic => Ok(encode_edge_chromatic(g, m)),
        Problem::Homomorphism { target } => encode_graph_homomorphism(g, target, m),
        Problem::RegularSpanning { all_pairs } => {
            Ok(encode_regular_spanning_subgraph(g, m, *all_pairs))
        }
        Problem::KRegular { k } => encode_k_regular_subgraph(g, *k, m),
        Problem::VertexCover { form } => encode_vertex_cover(g, m, *form),
        Problem::EdgeCover { form } => encode_edge_cover(g, m, *form),
        Problem::PerfectMatchingV1 => Ok(encode_perfect_matching_v1(g)),
        Problem::PerfectMatchingV2 => encode_perfect_matching_v2(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_set_shape() {
        let s = encode_independent_set(&Graph::complete(3), 2);
        assert_eq!((s.len(), s.num_vars()), (7, 3));
        assert_eq!(s.cardinality_index, Some(6));
        s.check().unwrap();
        let pt: HashMap<VarId, Rational> = [(VarId(0), int(1)), (VarId(1), int(0))].into();
        assert!(encode_independent_set(&Graph::complete(2), 1)
            .vanishes_at(&pt)
            .unwrap());
    }

    #[test]
    fn k_colorable_shape() {
        let s = encode_k_colorable_subgraph(&Graph::complete(3), 2, 3).unwrap();
        assert_eq!((s.len(), s.num_vars()), (10, 6));
        s.check().unwrap();
        // y1_2 (x1 + x2)
        let y12 = s.table.lookup("y1_2").unwrap();
        let (x1, x2) = (s.table.lookup("x1").unwrap(), s.table.lookup("x2").unwrap());
        assert_eq!(s.polys[7], &x(y12) * &(&x(x1) + &x(x2)));
        assert!(encode_k_colorable_subgraph(&Graph::complete(3), 0, 1).is_err());
    }

    #[test]
    fn edge_chromatic_shape() {
        let s = encode_edge_chromatic(&Graph::path(3), 1);
        assert_eq!(s.len(), 6);
        assert!(s.table.lookup("s2").is_some());
        assert!(s.table.lookup("s1").is_none() && s.table.lookup("s3").is_none());
        s.check().unwrap();
    }

    #[test]
    fn homomorphism_shape() {
        let s = encode_graph_homomorphism(&Graph::complete(3), &Graph::complete(2), 3).unwrap();
        assert_eq!(s.num_vars(), 3 + 3 + 2);
        assert_eq!(s.len(), 1 + 3 + 3 + 3 + 2);
        s.check().unwrap();
        assert!(encode_graph_homomorphism(&Graph::complete(2), &Graph::empty(0), 1).is_err());
    }

    #[test]
    fn regular_shapes() {
        let s = encode_regular_spanning_subgraph(&Graph::complete(4), 2, false);
        assert_eq!(s.len(), 1 + 6 + 3);
        let full = encode_regular_spanning_subgraph(&Graph::complete(4), 2, true);
        assert_eq!(full.len(), 1 + 6 + 6);
        let k = encode_k_regular_subgraph(&Graph::complete(4), 1, 2).unwrap();
        assert_eq!(k.len(), 1 + 6 + 4);
        k.check().unwrap();
    }

    #[test]
    fn vertex_cover_subset_is_independent_set_of_complement_size() {
        let g = Graph::cycle(5);
        for m in 0..=5 {
            let vc = encode_vertex_cover(&g, m, CoverForm::Subset).unwrap();
            let ind = encode_independent_set(&g, 5 - m);
            assert_eq!(vc.polys, ind.polys);
            vc.check().unwrap();
        }
        assert!(encode_vertex_cover(&g, 6, CoverForm::Subset).is_err());
        let orig = encode_vertex_cover(&Graph::complete(2), 1, CoverForm::Original).unwrap();
        let pt: HashMap<VarId, Rational> = [(VarId(0), int(1)), (VarId(1), int(0))].into();
        assert!(orig.vanishes_at(&pt).unwrap());
    }

    #[test]
    fn edge_cover_isolated_vertex_gives_one() {
        let g = Graph::new(3, [(1, 2)]).unwrap();
        let s = encode_edge_cover(&g, 1, CoverForm::Subset).unwrap();
        assert!(s.polys.iter().any(Polynomial::is_one));
        assert!(encode_edge_cover(&g, 2, CoverForm::Original).is_err());
    }

    #[test]
    fn matching_shapes() {
        let k3 = encode_perfect_matching_v1(&Graph::complete(3));
        assert_eq!((k3.len(), k3.num_vars()), (6, 3));
        assert_eq!(encode_perfect_matching_v1(&Graph::path(3)).len(), 4);
        assert_eq!(encode_perfect_matching_v1(&Graph::complete(4)).len(), 16);
        assert!(k3.cardinality_index.is_none());
        assert_eq!(k3.indicator_ids.len(), 3);

        let v2 = encode_perfect_matching_v2(&Graph::complete(4)).unwrap();
        assert_eq!(v2.len(), 6 + 12 + 1);
        assert_eq!(v2.m, Some(2));
        v2.check().unwrap();
        assert!(encode_perfect_matching_v2(&Graph::complete(3)).is_err());
    }

    #[test]
    fn matching_v2_is_independent_set_of_line_graph() {
        for g in [Graph::complete(4), Graph::cycle(6), Graph::star(3)] {
            let v2 = encode_perfect_matching_v2(&g).unwrap();
            let ind = encode_independent_set(&g.line_graph().graph, g.n() / 2);
            assert_eq!(v2.polys, ind.polys);
        }
    }
}
