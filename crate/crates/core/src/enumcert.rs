//! Certificates built from the structure family instead of a blind degree
//! search: invert the cardinality form over the squarefree monomials of the
//! family, complete the inverse to a full certificate, translate
//! line-graph matching certificates to the linear matching system, and the
//! closed-form degree-zero certificate for bipartite graphs.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::encoders::{
    encode_perfect_matching_v1, encode_perfect_matching_v2, PolySystem, Problem,
};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::linsolve::{solve_particular, SparseRationalMatrix};
use crate::nulla::{
    default_degree_bound, nulla_solve_with, verify_certificate, verify_polys, Certificate,
    NullaOptions, NullaOutcome,
};
use crate::oracles::{
    self, elements, is_subset_closed, OracleLimits, StructureFamily, SubsetClosure,
};
use crate::poly::{format_rational, int, Monomial, Polynomial, Rational, VarId};

/// A structure family together with its squarefree indicator monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureBasis {
    pub family: StructureFamily,
    /// Members in canonical order; `monomials[i]` belongs to `members[i]`.
    pub members: Vec<u64>,
    pub monomials: Vec<Monomial>,
}

impl StructureBasis {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn structure_monomial_basis(s: &PolySystem, limits: &OracleLimits) -> Result<StructureBasis> {
    let family = oracles::enumerate(&s.structure_kind(), &s.graph, limits)?;
    if family.ground() != s.indicator_ids.len() {
        return Err(Error::Structural(format!(
            "family over {} elements for {} indicators",
            family.ground(),
            s.indicator_ids.len()
        )));
    }
    let members = family.members_canonical();
    let monomials = members
        .iter()
        .map(|&b| Monomial::product_of(elements(b).into_iter().map(|j| s.indicator_ids[j])))
        .collect();
    Ok(StructureBasis {
        family,
        members,
        monomials,
    })
}

fn member_names(s: &PolySystem, member: u64) -> String {
    let names: Vec<String> = s
        .indicator_ids
        .iter()
        .map(|&v| s.table.name(v).to_string())
        .collect();
    StructureFamily::format_member(member, &names)
}

/// The inverse `beta_1` of the cardinality form in the quotient ring,
/// written over the basis monomials. With `f_1 = -m + Σ y_i`, the
/// coefficient of `y_b` in `f_1 beta_1` is
/// `(|b| - m) c_b + Σ_{i in b} c_{b \ i}`, so the coefficients follow by
/// increasing size from `c_∅ = -1/m`.
pub fn invert_cardinality_form(s: &PolySystem, basis: &StructureBasis) -> Result<Polynomial> {
    match is_subset_closed(&basis.family) {
        SubsetClosure::Closed => {}
        SubsetClosure::MissingEmpty => {
            return Err(Error::NotSubsetClosed(
                "the empty set is not a member".into(),
            ))
        }
        SubsetClosure::NotClosed { member, missing } => {
            return Err(Error::NotSubsetClosed(format!(
                "{} is a member but its subset {} is not",
                member_names(s, member),
                member_names(s, missing)
            )))
        }
    }
    if s.cardinality_index.is_none() {
        return Err(Error::InvalidParameter(
            "system has no cardinality equation".into(),
        ));
    }
    let m = s
        .required_size()
        .ok_or_else(|| Error::InvalidParameter("no integer structure size".into()))?;
    if basis.family.members().any(|b| b.count_ones() as usize >= m) {
        return Err(Error::Feasible { size: m });
    }
    let m = int(m as i64);
    let mut coeff: HashMap<u64, Rational> = HashMap::new();
    let mut terms = Vec::with_capacity(basis.len());
    for (&b, mono) in basis.members.iter().zip(&basis.monomials) {
        let c = if b == 0 {
            -m.recip()
        } else {
            let sum = elements(b)
                .into_iter()
                .fold(Rational::zero(), |acc, i| acc + &coeff[&(b & !(1 << i))]);
            sum / (&m - int(b.count_ones() as i64))
        };
        terms.push((mono.clone(), c.clone()));
        coeff.insert(b, c);
    }
    Ok(Polynomial::from_terms(terms))
}

/// Reduces `p` under `y_i y_b -> y_{b ∪ i}` (zero outside the family) and
/// `y_i^2 -> y_i`, the multiplication of the quotient ring on the basis.
pub fn reduce_in_basis(s: &PolySystem, basis: &StructureBasis, p: &Polynomial) -> Polynomial {
    let index: HashMap<VarId, usize> = s
        .indicator_ids
        .iter()
        .enumerate()
        .map(|(j, v)| (*v, j))
        .collect();
    Polynomial::from_terms(p.terms().filter_map(|(m, c)| {
        let mut mask = 0u64;
        for v in m.vars() {
            mask |= 1 << index.get(&v)?;
        }
        basis.family.contains(mask).then(|| {
            (
                Monomial::product_of(elements(mask).into_iter().map(|j| s.indicator_ids[j])),
                c.clone(),
            )
        })
    }))
}

/// A univariate equation `lc * (v^deg + tail)` used as a rewrite rule.
struct Reducer {
    eq: usize,
    deg: u32,
    lc: Rational,
    monic: Polynomial,
    /// `v^deg ≡ -tail`.
    tail: Polynomial,
}

/// Normal forms modulo a set of univariate equations in distinct variables
/// (their leading monomials are coprime, so they form a Gröbner basis).
struct NormalForm {
    reducers: Vec<Reducer>,
    by_var: HashMap<VarId, usize>,
    cache: RefCell<HashMap<Monomial, Polynomial>>,
}

impl NormalForm {
    fn new(s: &PolySystem, skip: usize) -> Self {
        let mut reducers: Vec<Reducer> = Vec::new();
        let mut by_var = HashMap::new();
        for (i, f) in s.polys.iter().enumerate() {
            let vars = f.variables();
            if i == skip || vars.len() != 1 {
                continue;
            }
            let v = *vars.iter().next().expect("one variable");
            if by_var.contains_key(&v) {
                continue;
            }
            let deg = f.degree().expect("nonzero");
            let lead = Monomial::from_exponents([(v, deg)]);
            let lc = f.coefficient(&lead);
            let monic = f.scale(&lc.recip());
            let tail = &monic - &Polynomial::term(Rational::one(), lead);
            by_var.insert(v, reducers.len());
            reducers.push(Reducer {
                eq: i,
                deg,
                lc,
                monic,
                tail,
            });
        }
        Self {
            reducers,
            by_var,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn is_reducer(&self, eq: usize) -> bool {
        self.reducers.iter().any(|r| r.eq == eq)
    }

    /// First variable whose exponent reaches its reducer's degree.
    fn reducible(&self, m: &Monomial) -> Option<(usize, Monomial)> {
        m.iter().find_map(|(v, e)| {
            let &j = self.by_var.get(&v)?;
            let r = &self.reducers[j];
            (e >= r.deg).then(|| {
                let q = Monomial::from_exponents([(v, r.deg)])
                    .quotient_of(m)
                    .expect("divides");
                (j, q)
            })
        })
    }

    fn monomial(&self, m: &Monomial) -> Polynomial {
        if let Some(p) = self.cache.borrow().get(m) {
            return p.clone();
        }
        let out = match self.reducible(m) {
            None => Polynomial::term(Rational::one(), m.clone()),
            Some((j, q)) => {
                let mut acc = Polynomial::zero();
                for (t, c) in self.reducers[j].tail.terms() {
                    acc = &acc - &self.monomial(&q.mul(t)).scale(c);
                }
                acc
            }
        };
        self.cache.borrow_mut().insert(m.clone(), out.clone());
        out
    }

    fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in p.terms() {
            acc = &acc + &self.monomial(m).scale(c);
        }
        acc
    }

    /// `p = Σ q_j * monic_j + remainder`.
    fn divide(&self, p: &Polynomial) -> (Vec<Polynomial>, Polynomial) {
        let mut quotients = vec![Polynomial::zero(); self.reducers.len()];
        let mut rem = Vec::new();
        let mut work = p.clone();
        loop {
            let last = work
                .terms()
                .next_back()
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = last else { break };
            match self.reducible(&m) {
                Some((j, q)) => {
                    let step = Polynomial::term(c, q);
                    work = &work - &(&step * &self.reducers[j].monic);
                    quotients[j] = &quotients[j] + &step;
                }
                None => {
                    work = &work - &Polynomial::term(c.clone(), m.clone());
                    rem.push((m, c));
                }
            }
        }
        (quotients, Polynomial::from_terms(rem))
    }

    /// Degree of `m` in the variables without a rewrite rule.
    fn free_degree(&self, m: &Monomial) -> u32 {
        m.iter()
            .filter(|(v, _)| !self.by_var.contains_key(v))
            .map(|(_, e)| e)
            .sum()
    }

    /// Monomials in normal form of degree at most `d` and at most
    /// `free_cap` in the variables without a rule, canonical order.
    fn standard_monomials(&self, vars: &[VarId], d: u32, free_cap: u32) -> Vec<Monomial> {
        fn rec(
            nf: &NormalForm,
            vars: &[VarId],
            left: u32,
            prefix: &mut Vec<(VarId, u32)>,
            out: &mut Vec<Monomial>,
        ) {
            let Some((&v, rest)) = vars.split_first() else {
                out.push(Monomial::from_exponents(prefix.iter().copied()));
                return;
            };
            let cap = nf
                .by_var
                .get(&v)
                .map_or(left, |&j| left.min(nf.reducers[j].deg - 1));
            for e in 0..=cap {
                prefix.push((v, e));
                rec(nf, rest, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, vars, d, &mut Vec::new(), &mut out);
        out.retain(|m| self.free_degree(m) <= free_cap);
        out.sort();
        out
    }
}

/// Degree bound used by [`complete_certificate`] callers that have none:
/// enough room for `1 - beta_1 f_1` plus one per variable.
pub fn default_completion_bound(s: &PolySystem, beta1: &Polynomial) -> u32 {
    beta1.degree().unwrap_or(0) + 1 + s.num_vars() as u32
}

/// Finds `beta_i` for the remaining equations with
/// `Σ_{i != card} beta_i f_i = 1 - beta_1 f_card`.
///
/// Univariate equations (`y^2 - y`, `x^k - 1`, pins) act as rewrite rules:
/// the other multipliers are searched over monomials in normal form and
/// matched modulo the rules, then the multipliers of the rules come from
/// dividing out what is left. Variables without a rule (the image
/// coordinates of a homomorphism) are unbounded in the quotient, so the
/// search raises their degree in an outer loop and the total degree, up to
/// `degree_bound`, in the inner one.
pub fn complete_certificate(
    s: &PolySystem,
    beta1: &Polynomial,
    degree_bound: u32,
    opts: &NullaOptions,
) -> Result<Certificate> {
    let card = s
        .cardinality_index
        .ok_or_else(|| Error::InvalidParameter("system has no cardinality equation".into()))?;
    let target = &Polynomial::one() - &(beta1 * &s.polys[card]);
    let nf = NormalForm::new(s, card);
    let others: Vec<usize> = (0..s.len())
        .filter(|&i| i != card && !nf.is_reducer(i))
        .collect();
    let reduced: Vec<Polynomial> = others.iter().map(|&i| nf.reduce(&s.polys[i])).collect();
    let target_nf = nf.reduce(&target);
    let max_deg = reduced
        .iter()
        .filter_map(Polynomial::degree)
        .max()
        .unwrap_or(0);
    let start = target_nf.degree().unwrap_or(0).saturating_sub(max_deg);
    let top = degree_bound.max(start);
    let vars: Vec<VarId> = s.table.ids().collect();
    let has_free = vars.iter().any(|v| !nf.by_var.contains_key(v));
    let mut refused = None;

    for free_cap in 0..=if has_free { top } else { 0 } {
        // smaller degrees were already tried under the previous cap
        let mut previous = None;
        for d in start.max(free_cap)..=top {
            let multipliers = if others.is_empty() {
                Vec::new()
            } else {
                nf.standard_monomials(&vars, d, free_cap)
            };
            if previous == Some(multipliers.len()) {
                // no new monomials at this degree, hence none above it
                break;
            }
            previous = Some(multipliers.len());
            let n_cols = others.len() * multipliers.len();
            if n_cols > opts.column_cap {
                refused.get_or_insert(Error::ColumnCap {
                    degree: d,
                    columns: n_cols,
                    cap: opts.column_cap,
                });
                break;
            }
            let Some(x) = solve_completion(&nf, &reduced, &multipliers, &target_nf)? else {
                continue;
            };
            let mut betas = vec![Polynomial::zero(); s.len()];
            betas[card] = beta1.clone();
            let mut terms: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); others.len()];
            for (col, v) in x.iter().enumerate() {
                if !v.is_zero() {
                    let m = &multipliers[col % multipliers.len()];
                    terms[col / multipliers.len()].push((m.clone(), v.clone()));
                }
            }
            let mut left = target.clone();
            for (k, t) in terms.into_iter().enumerate() {
                let b = Polynomial::from_terms(t);
                left = &left - &(&b * &s.polys[others[k]]);
                betas[others[k]] = b;
            }
            let (quotients, rem) = nf.divide(&left);
            if !rem.is_zero() {
                return Err(Error::Internal(
                    "completion left a remainder outside the rewrite ideal".into(),
                ));
            }
            for (r, q) in nf.reducers.iter().zip(quotients) {
                betas[r.eq] = q.scale(&r.lc.recip());
            }
            let c = Certificate::new(betas);
            if !verify_certificate(s, &c)?.ok {
                return Err(Error::Internal(
                    "completed certificate does not verify".into(),
                ));
            }
            return Ok(c);
        }
    }
    Err(refused.unwrap_or(Error::NoCompletion {
        bound: degree_bound,
    }))
}

/// Solves `Σ_k Σ_m c_{k,m} NF(m f_k) = target` with columns equation-major.
fn solve_completion(
    nf: &NormalForm,
    reduced: &[Polynomial],
    multipliers: &[Monomial],
    target: &Polynomial,
) -> Result<Option<Vec<Rational>>> {
    let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut triplets = Vec::new();
    let mut col = 0;
    for f in reduced {
        for m in multipliers {
            let prod = nf.reduce(&f.mul_term(&Rational::one(), m));
            for (t, c) in prod.terms() {
                let next = row_of.len();
                let r = *row_of.entry(t.clone()).or_insert(next);
                triplets.push((r, col, c.clone()));
            }
            col += 1;
        }
    }
    for t in target.monomials() {
        let next = row_of.len();
        row_of.entry(t.clone()).or_insert(next);
    }
    let mut rhs = vec![Rational::zero(); row_of.len()];
    for (t, c) in target.terms() {
        rhs[row_of[t]] = c.clone();
    }
    let matrix = SparseRationalMatrix::from_triplets(row_of.len(), col, triplets, rhs)?;
    Ok(solve_particular(&matrix).solution)
}

/// Basis, inverse of the cardinality form, and its completion.
pub fn enumerative_certificate(
    s: &PolySystem,
    limits: &OracleLimits,
    opts: &NullaOptions,
) -> Result<(StructureBasis, Polynomial, Certificate)> {
    let basis = structure_monomial_basis(s, limits)?;
    let beta1 = invert_cardinality_form(s, &basis)?;
    let bound = default_completion_bound(s, &beta1);
    let cert = complete_certificate(s, &beta1, bound, opts)?;
    Ok((basis, beta1, cert))
}

/// Pieces of a line-graph matching certificate. Equation order is that of
/// the line-graph system: `x_e^2 - x_e` for every edge, the pair products,
/// then the cardinality form.
fn v2_roles(g: &Graph) -> (usize, usize) {
    let e = g.edge_count();
    let pairs = g.line_graph().graph.edge_count();
    (e, pairs)
}

/// Translates a certificate `A f_A + Σ P_e (x_e^2 - x_e) + Σ Q_ef x_e x_f = 1`
/// of the line-graph system into one of the linear system.
///
/// Uses `f_A = ½ Σ_i g_i` with `g_i = Σ_{j in N(i)} x_ij - 1` and, for
/// `e = uv` and any `w_u + w_v = 1`,
/// `x_e^2 - x_e = Σ_{c in {u, v}} w_c (x_e g_c - Σ_{f ∋ c, f ≠ e} x_e x_f)`,
/// giving `Δ_i = ½ A + Σ_{e ∋ i} w_{e,i} P_e x_e` on vertex `i` and
/// `Θ_ef = Q_ef - w_{e,c} P_e - w_{f,c} P_f` on the pair product of `e` and
/// `f` meeting at `c`. The split of each edge is chosen so that no monomial
/// of `A` cancels in any `Δ_i`.
pub fn matching_transform(c2: &Certificate, g: &Graph) -> Result<Certificate> {
    let v2 = encode_perfect_matching_v2(g)?;
    if c2.betas.len() != v2.len() {
        return Err(Error::Structural(format!(
            "certificate has {} coefficients for {} equations",
            c2.betas.len(),
            v2.len()
        )));
    }
    let v1 = encode_perfect_matching_v1(g);
    let (e, pairs) = v2_roles(g);
    let half = Rational::new(1.into(), 2.into());
    let a = &c2.betas[e + pairs];
    let p = &c2.betas[..e];
    let xs = &v1.indicator_ids;
    let w = split_weights(g, a, p, xs);
    let weight = |ei: usize, c: usize| {
        if g.edges()[ei].0 == c {
            w[ei].clone()
        } else {
            Rational::one() - &w[ei]
        }
    };

    let mut betas = vec![Polynomial::zero(); v1.len()];
    for i in g.vertices() {
        let mut delta = a.scale(&half);
        for ei in g.incident_edges(i) {
            delta = &delta + &(&p[ei] * &Polynomial::var(xs[ei])).scale(&weight(ei, i));
        }
        betas[i - 1] = delta;
    }
    let mut pair_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut next = g.n();
    for i in g.vertices() {
        let inc = g.incident_edges(i);
        for (k, &ea) in inc.iter().enumerate() {
            for &eb in &inc[k + 1..] {
                pair_index.insert((ea.min(eb), ea.max(eb)), next);
                next += 1;
            }
        }
    }
    for (t, &(le, lf)) in g.line_graph().graph.edges().iter().enumerate() {
        let (ea, eb) = (le - 1, lf - 1);
        let (x, y) = (g.edges()[ea], g.edges()[eb]);
        let c = if x.0 == y.0 || x.0 == y.1 { x.0 } else { x.1 };
        let q = &c2.betas[e + t];
        let theta = q - &(&p[ea].scale(&weight(ea, c)) + &p[eb].scale(&weight(eb, c)));
        betas[pair_index[&(ea, eb)]] = theta;
    }
    let c = Certificate::new(betas);
    if !verify_polys(&v1.polys, &c.betas)?.ok {
        return Err(Error::Internal(
            "transformed matching certificate does not verify".into(),
        ));
    }
    Ok(c)
}

/// Share `w_e` of `P_e x_e` given to the lower endpoint of each edge (the
/// other endpoint gets `1 - w_e`). Edges are settled in order, each taking
/// the first of `½, 1/3, 2/3, 1/4, ...` that keeps every monomial of `A`
/// divisible by `x_e` nonzero at both endpoints.
fn split_weights(g: &Graph, a: &Polynomial, p: &[Polynomial], xs: &[VarId]) -> Vec<Rational> {
    let half = Rational::new(1.into(), 2.into());
    let mut candidates = vec![half.clone()];
    for d in 3..=12i64 {
        candidates.extend((1..d).map(|k| Rational::new(k.into(), d.into())));
    }
    candidates.extend([Rational::zero(), Rational::one()]);
    // running coefficient of each monomial of A in each Δ_i
    let mut coef: Vec<HashMap<Monomial, Rational>> = (0..=g.n())
        .map(|_| a.terms().map(|(m, c)| (m.clone(), c * &half)).collect())
        .collect();
    let mut out = Vec::with_capacity(g.edge_count());
    for (ei, &(u, v)) in g.edges().iter().enumerate() {
        let x = Monomial::var(xs[ei]);
        let hits: Vec<(Monomial, Rational)> = a
            .monomials()
            .filter_map(|m| {
                let rest = x.quotient_of(m)?;
                Some((m.clone(), p[ei].coefficient(&rest)))
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let ok = |w: &Rational| {
            let wv = Rational::one() - w;
            hits.iter().all(|(m, c)| {
                !(&coef[u][m] + w * c).is_zero() && !(&coef[v][m] + &wv * c).is_zero()
            })
        };
        let w = candidates.iter().find(|w| ok(w)).unwrap_or(&half).clone();
        let wv = Rational::one() - &w;
        for (m, c) in &hits {
            *coef[u].get_mut(m).expect("monomial of A") += &w * c;
            *coef[v].get_mut(m).expect("monomial of A") += &wv * c;
        }
        out.push(w);
    }
    out
}

/// Components of `g`, each as a sorted vertex list.
fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n() + 1];
    let mut out = Vec::new();
    for root in g.vertices() {
        if comp[root] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![root];
        let mut members = Vec::new();
        comp[root] = id;
        while let Some(u) = stack.pop() {
            members.push(u);
            for &w in g.neighbors(u).expect("vertex in range") {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// The constant certificate of the linear matching system when `g` is
/// bipartite with unequal classes: `-1/(|A|-|B|)` on the vertex equations of
/// the larger class `A` and `+1/(|A|-|B|)` on the others. Each component is
/// oriented with its larger side in `A`.
pub fn bipartite_degree_zero(g: &Graph) -> Option<Certificate> {
    let bip = g.bipartition()?;
    let mut larger = vec![false; g.n() + 1];
    let mut diff = 0usize;
    for comp in components(g) {
        let in_a = comp.iter().filter(|v| bip.class_a.contains(v)).count();
        let in_b = comp.len() - in_a;
        let a_side = in_a >= in_b;
        diff += in_a.abs_diff(in_b);
        for v in comp {
            larger[v] = bip.class_a.contains(&v) == a_side;
        }
    }
    if diff == 0 {
        return None;
    }
    let v1 = encode_perfect_matching_v1(g);
    let c = Rational::new(1.into(), (diff as i64).into());
    let mut betas = vec![Polynomial::zero(); v1.len()];
    for v in g.vertices() {
        let sign = if larger[v] { -c.clone() } else { c.clone() };
        betas[v - 1] = Polynomial::constant(sign);
    }
    Some(Certificate::new(betas))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommonSign {
    Positive,
    Negative,
    Mixed,
}

impl CommonSign {
    pub fn of(p: &Polynomial) -> Self {
        let pos = p.terms().filter(|(_, c)| c.is_positive()).count();
        if pos == p.len() {
            CommonSign::Positive
        } else if pos == 0 {
            CommonSign::Negative
        } else {
            CommonSign::Mixed
        }
    }
}

impl fmt::Display for CommonSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommonSign::Positive => "positive",
            CommonSign::Negative => "negative",
            CommonSign::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisRow {
    pub structure: String,
    pub monomial: String,
    pub coefficient: Rational,
}

/// Comparison of the enumerative certificate against the oracle family and
/// the degree-ascent search.
#[derive(Clone, Debug, PartialEq)]
pub struct Analysis {
    pub problem: String,
    pub family_size: usize,
    pub subset_closure: SubsetClosure,
    pub closure_witness: Option<String>,
    pub rows: Vec<AnalysisRow>,
    pub support_size: Option<usize>,
    pub support_equal: Option<bool>,
    pub common_sign: Option<CommonSign>,
    pub completion_degree: Option<u32>,
    pub nulla_degree: Option<u32>,
    pub nulla_status: String,
    /// Why the enumerative part was skipped.
    pub downgraded: Option<String>,
    /// For k-regular systems: whether some edge of a largest member has
    /// both endpoints on edges that lie in no member.
    pub edge_condition: Option<bool>,
    pub bipartite_fast_path: Option<Certificate>,
    pub claims: Vec<(String, bool)>,
}

fn edge_condition(g: &Graph, family: &StructureFamily) -> bool {
    let used = family.members().fold(0u64, |acc, m| acc | m);
    let touches_unused = |v: usize| g.incident_edges(v).iter().any(|&e| used >> e & 1 == 0);
    let Ok(max) = oracles::max_structure_size(family) else {
        return false;
    };
    family
        .members()
        .filter(|m| m.count_ones() as usize == max)
        .any(|m| {
            elements(m).into_iter().any(|e| {
                let (u, v) = g.edges()[e];
                touches_unused(u) && touches_unused(v)
            })
        })
}

pub fn analyze(s: &PolySystem, limits: &OracleLimits, opts: &NullaOptions) -> Result<Analysis> {
    let basis = structure_monomial_basis(s, limits)?;
    let closure = is_subset_closed(&basis.family);
    let closure_witness = match &closure {
        SubsetClosure::Closed => None,
        SubsetClosure::MissingEmpty => Some("the empty set is not a member".to_string()),
        SubsetClosure::NotClosed { member, missing } => Some(format!(
            "{} is a member but {} is not",
            member_names(s, *member),
            member_names(s, *missing)
        )),
    };
    let bound = default_degree_bound(s, limits);
    let run = nulla_solve_with(s, bound, opts)?;
    let (nulla_degree, nulla_status) = match &run.outcome {
        NullaOutcome::Certified(c) => (Some(c.degree), format!("certified at degree {}", c.degree)),
        NullaOutcome::NoCertificateUpToBound { bound } => {
            (None, format!("no certificate up to degree {bound}"))
        }
        NullaOutcome::Refused {
            degree, columns, ..
        } => (
            None,
            format!("refused at degree {degree} ({columns} columns)"),
        ),
    };
    let mut a = Analysis {
        problem: s.problem.name().to_string(),
        family_size: basis.len(),
        subset_closure: closure.clone(),
        closure_witness,
        rows: Vec::new(),
        support_size: None,
        support_equal: None,
        common_sign: None,
        completion_degree: None,
        nulla_degree,
        nulla_status,
        downgraded: None,
        edge_condition: None,
        bipartite_fast_path: None,
        claims: Vec::new(),
    };
    if let Problem::KRegular { .. } = s.problem {
        a.edge_condition = Some(edge_condition(&s.graph, &basis.family));
    }
    if s.problem == Problem::PerfectMatchingV1 {
        a.bipartite_fast_path = bipartite_degree_zero(&s.graph);
        if let Some(c) = &a.bipartite_fast_path {
            a.claims.push((
                "degree-zero certificate agrees with the degree search".into(),
                a.nulla_degree == Some(c.degree),
            ));
        }
        a.downgraded = Some("no cardinality equation; degree search only".into());
        return Ok(a);
    }
    if !closure.is_closed() {
        a.downgraded = Some("structure family is not subset closed; degree search only".into());
        return Ok(a);
    }
    let beta1 = match invert_cardinality_form(s, &basis) {
        Ok(b) => b,
        Err(Error::Feasible { size }) => {
            a.downgraded = Some(format!("feasible: a structure of size {size} exists"));
            return Ok(a);
        }
        Err(e) => return Err(e),
    };
    for (&b, m) in basis.members.iter().zip(&basis.monomials) {
        a.rows.push(AnalysisRow {
            structure: member_names(s, b),
            monomial: Polynomial::term(Rational::one(), m.clone())
                .display(&s.table)
                .to_string()
                .trim_start_matches("1*")
                .to_string(),
            coefficient: beta1.coefficient(m),
        });
    }
    let support: Vec<&Monomial> = beta1.monomials().collect();
    a.support_size = Some(support.len());
    let equal = support.len() == basis.len()
        && basis
            .monomials
            .iter()
            .all(|m| !beta1.coefficient(m).is_zero());
    a.support_equal = Some(equal);
    let sign = CommonSign::of(&beta1);
    a.common_sign = Some(sign);
    let completion = complete_certificate(s, &beta1, default_completion_bound(s, &beta1), opts)?;
    a.completion_degree = Some(completion.degree);
    a.claims
        .push(("support equals the structure family".into(), equal));
    a.claims.push((
        "coefficients share one sign".into(),
        sign != CommonSign::Mixed,
    ));
    a.claims.push((
        "completion degree equals the minimal degree".into(),
        a.nulla_degree == Some(completion.degree),
    ));
    Ok(a)
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem: {}", self.problem)?;
        writeln!(f, "family size: {}", self.family_size)?;
        match &self.closure_witness {
            None => writeln!(f, "subset closed: yes")?,
            Some(w) => writeln!(f, "subset closed: no ({w})")?,
        }
        if let Some(reason) = &self.downgraded {
            writeln!(f, "enumerative certificate: skipped, {reason}")?;
        }
        if !self.rows.is_empty() {
            let w0 = self
                .rows
                .iter()
                .map(|r| r.structure.len())
                .max()
                .unwrap_or(0)
                .max(9);
            let w1 = self
                .rows
                .iter()
                .map(|r| r.monomial.len())
                .max()
                .unwrap_or(0)
                .max(8);
            writeln!(f, "{:<w0$}  {:<w1$}  coefficient", "structure", "monomial")?;
            for r in &self.rows {
                writeln!(
                    f,
                    "{:<w0$}  {:<w1$}  {}",
                    r.structure,
                    r.monomial,
                    format_rational(&r.coefficient)
                )?;
            }
        }
        if let (Some(n), Some(eq)) = (self.support_size, self.support_equal) {
            writeln!(
                f,
                "support: {n} of {} family members (equal: {})",
                self.family_size,
                if eq { "yes" } else { "no" }
            )?;
        }
        if let Some(s) = self.common_sign {
            writeln!(f, "sign: {s}")?;
        }
        if let Some(d) = self.completion_degree {
            writeln!(f, "completion degree: {d}")?;
        }
        writeln!(f, "degree search: {}", self.nulla_status)?;
        if let Some(c) = &self.bipartite_fast_path {
            writeln!(f, "bipartite fast path: degree {} certificate", c.degree)?;
        }
        if let Some(e) = self.edge_condition {
            writeln!(
                f,
                "edge condition: {}",
                if e { "holds" } else { "does not hold" }
            )?;
        }
        for (claim, ok) in &self.claims {
            writeln!(f, "{} {claim}", if *ok { "PASS" } else { "FAIL" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoders::*;
    use crate::nulla::nulla_solve;
    use crate::poly::rational;

    fn lim() -> OracleLimits {
        OracleLimits::default()
    }

    #[test]
    fn bases() {
        let s = encode_independent_set(&Graph::complete(3), 2);
        let b = structure_monomial_basis(&s, &lim()).unwrap();
        let names: Vec<String> = b
            .monomials
            .iter()
            .map(|m| {
                Polynomial::term(Rational::one(), m.clone())
                    .display(&s.table)
                    .to_string()
            })
            .collect();
        assert_eq!(names, ["1", "1*x1", "1*x2", "1*x3"]);

        let ec = encode_edge_cover(&Graph::complete(3), 0, CoverForm::Subset).unwrap();
        assert_eq!(structure_monomial_basis(&ec, &lim()).unwrap().len(), 4);
    }

    #[test]
    fn invert_small() {
        let x = |v| Polynomial::var(VarId(v));
        let k2 = encode_independent_set(&Graph::complete(2), 2);
        let b = structure_monomial_basis(&k2, &lim()).unwrap();
        let beta = invert_cardinality_form(&k2, &b).unwrap();
        let want = (&(&x(0) + &x(1)) + &Polynomial::one()).scale(&rational(-1, 2));
        assert_eq!(beta, want);
        let prod = &beta * &k2.polys[k2.cardinality_index.unwrap()];
        assert!(reduce_in_basis(&k2, &b, &prod).is_one());

        let k1 = encode_independent_set(&Graph::empty(1), 2);
        let b = structure_monomial_basis(&k1, &lim()).unwrap();
        let want = (&x(0) + &Polynomial::one()).scale(&rational(-1, 2));
        assert_eq!(invert_cardinality_form(&k1, &b).unwrap(), want);

        let feasible = encode_independent_set(&Graph::complete(2), 1);
        let b = structure_monomial_basis(&feasible, &lim()).unwrap();
        assert!(matches!(
            invert_cardinality_form(&feasible, &b),
            Err(Error::Feasible { size: 1 })
        ));
    }

    #[test]
    fn closed_form_coefficients() {
        // c_b = -|b|! / (m (m-1) ... (m-|b|)) for subset-closed families
        let s = encode_independent_set(&Graph::empty(3), 4);
        let b = structure_monomial_basis(&s, &lim()).unwrap();
        let beta = invert_cardinality_form(&s, &b).unwrap();
        for (&mask, m) in b.members.iter().zip(&b.monomials) {
            let k = mask.count_ones() as i64;
            let fact: i64 = (1..=k).product();
            let falling: i64 = (0..=k).map(|i| 4 - i).product();
            assert_eq!(beta.coefficient(m), rational(-fact, falling));
        }
    }

    #[test]
    fn non_subset_closed_refused() {
        let s = encode_regular_spanning_subgraph(&Graph::complete(3), 2, false);
        let b = structure_monomial_basis(&s, &lim()).unwrap();
        assert!(matches!(
            invert_cardinality_form(&s, &b),
            Err(Error::NotSubsetClosed(_))
        ));
    }

    #[test]
    fn completions_verify() {
        for s in [
            encode_independent_set(&Graph::complete(2), 2),
            encode_independent_set(&Graph::complete(3), 2),
            encode_regular_spanning_subgraph(&Graph::path(3), 1, false),
            encode_k_colorable_subgraph(&Graph::complete(3), 2, 3).unwrap(),
            encode_graph_homomorphism(&Graph::complete(3), &Graph::complete(2), 3).unwrap(),
            encode_edge_cover(&Graph::path(3), 0, CoverForm::Subset).unwrap(),
        ] {
            let (_, _, c) = enumerative_certificate(&s, &lim(), &NullaOptions::default()).unwrap();
            assert!(verify_certificate(&s, &c).unwrap().ok);
        }
        let k3 = encode_independent_set(&Graph::complete(3), 2);
        let (_, _, c) = enumerative_certificate(&k3, &lim(), &NullaOptions::default()).unwrap();
        assert_eq!(c.degree, 1);
    }

    #[test]
    fn bipartite_examples() {
        let c = bipartite_degree_zero(&Graph::path(3)).unwrap();
        let consts: Vec<Rational> = c.betas[..3].iter().map(Polynomial::constant_term).collect();
        assert_eq!(consts, vec![int(-1), int(1), int(-1)]);
        let star = bipartite_degree_zero(&Graph::star(3)).unwrap();
        assert_eq!(star.betas[0].constant_term(), rational(1, 2));
        assert_eq!(star.betas[1].constant_term(), rational(-1, 2));
        assert!(bipartite_degree_zero(&Graph::complete(3)).is_none());
        assert!(bipartite_degree_zero(&Graph::cycle(4)).is_none());
        for g in [Graph::path(3), Graph::star(3), Graph::path(5)] {
            let c = bipartite_degree_zero(&g).unwrap();
            assert!(
                verify_certificate(&encode_perfect_matching_v1(&g), &c)
                    .unwrap()
                    .ok
            );
        }
    }

    #[test]
    fn transform_on_star() {
        let g = Graph::star(3);
        let v2 = encode_perfect_matching_v2(&g).unwrap();
        let (_, a, c2) = enumerative_certificate(&v2, &lim(), &NullaOptions::default()).unwrap();
        let c1 = matching_transform(&c2, &g).unwrap();
        let v1 = encode_perfect_matching_v1(&g);
        assert!(verify_certificate(&v1, &c1).unwrap().ok);
        assert_eq!(a.degree(), Some(1));
        let direct = nulla_solve(&v2, 2).unwrap();
        let c = direct.outcome.certificate().unwrap();
        assert!(
            verify_certificate(&v1, &matching_transform(c, &g).unwrap())
                .unwrap()
                .ok
        );
    }

    #[test]
    fn analysis_report() {
        let s = encode_independent_set(&Graph::complete(3), 2);
        let a = analyze(&s, &lim(), &NullaOptions::default()).unwrap();
        assert!(a.claims.iter().all(|(_, ok)| *ok));
        let text = a.to_string();
        assert!(text.contains("PASS support"));

        let kr = encode_k_regular_subgraph(&Graph::complete(3), 2, 2).unwrap();
        let a = analyze(&kr, &lim(), &NullaOptions::default()).unwrap();
        assert!(a.downgraded.is_some() && a.edge_condition.is_some());

        let p3 = encode_perfect_matching_v1(&Graph::path(3));
        let a = analyze(&p3, &lim(), &NullaOptions::default()).unwrap();
        assert_eq!(a.bipartite_fast_path.unwrap().degree, 0);
        assert_eq!(a.nulla_degree, Some(0));
    }
}
