//! Degree-ascending search for Nullstellensatz certificates, exact
//! verification, and affine changes of variables.
//!
//! At degree `d` the unknowns are the coefficients of every monomial of
//! degree at most `d` in every `beta_i`; the columns are ordered by equation
//! and then by canonical monomial order. Each monomial of `Σ beta_i f_i`
//! gives one linear equation, with right-hand side one on the constant
//! monomial.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::encoders::{PolySystem, Problem};
use crate::error::{Error, Result};
use crate::linsolve::{rref, solve_particular, SparseRationalMatrix};
use crate::oracles::{self, OracleLimits, StructureKind};
use crate::poly::{binomial, monomials_up_to, Monomial, Polynomial, Rational, VarId};

/// Coefficient polynomials `beta_i`, aligned with the system's equations.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub betas: Vec<Polynomial>,
    /// Maximum total degree over the nonzero `beta_i`.
    pub degree: u32,
}

impl Certificate {
    pub fn new(betas: Vec<Polynomial>) -> Self {
        let degree = betas
            .iter()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0);
        Self { betas, degree }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeStatus {
    Solved,
    Infeasible,
    Refused,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRecord {
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    pub nonzeros: usize,
    pub status: DegreeStatus,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveReport {
    /// One record per degree tried, ascending from zero.
    pub records: Vec<DegreeRecord>,
}

impl SolveReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,rows,cols,nonzeros,status,micros\n");
        for r in &self.records {
            let status = match r.status {
                DegreeStatus::Solved => "solved",
                DegreeStatus::Infeasible => "infeasible",
                DegreeStatus::Refused => "refused",
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{status},{}",
                r.degree,
                r.rows,
                r.cols,
                r.nonzeros,
                r.elapsed.as_micros()
            );
        }
        out
    }

    pub fn total_time(&self) -> Duration {
        self.records.iter().map(|r| r.elapsed).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NullaOptions {
    /// Refuse any degree whose linear system would have more columns.
    pub column_cap: usize,
}

impl Default for NullaOptions {
    fn default() -> Self {
        Self {
            column_cap: 500_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NullaOutcome {
    Certified(Certificate),
    /// No certificate of degree at most `bound`; the system may be feasible
    /// or the bound too low.
    NoCertificateUpToBound {
        bound: u32,
    },
    /// The linear system at `degree` exceeded the column cap.
    Refused {
        degree: u32,
        columns: usize,
        cap: usize,
    },
}

impl NullaOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            NullaOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            NullaOutcome::Certified(_) => "certified",
            NullaOutcome::NoCertificateUpToBound { .. } => "no_certificate",
            NullaOutcome::Refused { .. } => "refused",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NullaRun {
    pub outcome: NullaOutcome,
    pub report: SolveReport,
}

/// The degree-`d` linear system with its column and row labels.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub matrix: SparseRationalMatrix,
    /// `(equation index, monomial)` per column.
    pub columns: Vec<(usize, Monomial)>,
    pub rows: Vec<Monomial>,
}

impl LinearSystem {
    /// Reassembles the `beta_i` from a solution vector.
    pub fn betas(&self, s: usize, solution: &[Rational]) -> Vec<Polynomial> {
        let mut terms: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); s];
        for ((i, m), v) in self.columns.iter().zip(solution) {
            if !v.is_zero() {
                terms[*i].push((m.clone(), v.clone()));
            }
        }
        terms.into_iter().map(Polynomial::from_terms).collect()
    }
}

pub fn column_count(s: &PolySystem, d: u32) -> usize {
    s.len()
        .saturating_mul(binomial(s.num_vars() + d as usize, d as usize))
}

/// Rows are the monomials that occur in some `M f_i` plus the constant
/// monomial, in canonical order.
pub fn build_linear_system(s: &PolySystem, d: u32) -> LinearSystem {
    let multipliers = monomials_up_to(s.num_vars(), d);
    let mut columns = Vec::with_capacity(s.len() * multipliers.len());
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    row_of.insert(Monomial::one(), 0);
    let mut triplets = Vec::new();
    for (i, f) in s.polys.iter().enumerate() {
        for m in &multipliers {
            let col = columns.len();
            columns.push((i, m.clone()));
            for (t, c) in f.terms() {
                let prod = m.mul(t);
                let next = row_of.len();
                let r = *row_of.entry(prod).or_insert(next);
                triplets.push((r, col, c.clone()));
            }
        }
    }
    let mut rows: Vec<(Monomial, usize)> = row_of.into_iter().collect();
    rows.sort();
    let mut remap = vec![0; rows.len()];
    for (new, (_, old)) in rows.iter().enumerate() {
        remap[*old] = new;
    }
    let n_rows = rows.len();
    let mut rhs = vec![Rational::zero(); n_rows];
    rhs[remap[0]] = Rational::from_integer(1.into());
    let matrix = SparseRationalMatrix::from_triplets(
        n_rows,
        columns.len(),
        triplets.into_iter().map(|(r, c, v)| (remap[r], c, v)),
        rhs,
    )
    .expect("indices in range by construction");
    LinearSystem {
        matrix,
        columns,
        rows: rows.into_iter().map(|(m, _)| m).collect(),
    }
}

/// Solves at exactly degree `d`: a certificate with every `deg beta_i <= d`
/// or `None`.
pub fn solve_at_degree(s: &PolySystem, d: u32) -> Result<Option<Certificate>> {
    let ls = build_linear_system(s, d);
    let res = solve_particular(&ls.matrix);
    match res.solution {
        None => Ok(None),
        Some(x) => {
            let c = Certificate::new(ls.betas(s.len(), &x));
            ensure_verified(s, &c)?;
            Ok(Some(c))
        }
    }
}

pub fn nulla_solve(s: &PolySystem, degree_bound: u32) -> Result<NullaRun> {
    nulla_solve_with(s, degree_bound, &NullaOptions::default())
}

/// Tries degrees `0..=degree_bound` in turn; the first solvable degree is
/// the minimal certificate degree.
pub fn nulla_solve_with(
    s: &PolySystem,
    degree_bound: u32,
    opts: &NullaOptions,
) -> Result<NullaRun> {
    let mut report = SolveReport::default();
    for d in 0..=degree_bound {
        let columns = column_count(s, d);
        if columns > opts.column_cap {
            report.records.push(DegreeRecord {
                degree: d,
                rows: 0,
                cols: columns,
                nonzeros: 0,
                status: DegreeStatus::Refused,
                elapsed: Duration::ZERO,
            });
            return Ok(NullaRun {
                outcome: NullaOutcome::Refused {
                    degree: d,
                    columns,
                    cap: opts.column_cap,
                },
                report,
            });
        }
        let start = Instant::now();
        let ls = build_linear_system(s, d);
        let res = solve_particular(&ls.matrix);
        let mut record = DegreeRecord {
            degree: d,
            rows: ls.matrix.n_rows(),
            cols: ls.matrix.n_cols(),
            nonzeros: ls.matrix.nnz(),
            status: DegreeStatus::Infeasible,
            elapsed: Duration::ZERO,
        };
        if let Some(x) = res.solution {
            let c = Certificate::new(ls.betas(s.len(), &x));
            ensure_verified(s, &c)?;
            record.status = DegreeStatus::Solved;
            record.elapsed = start.elapsed();
            report.records.push(record);
            return Ok(NullaRun {
                outcome: NullaOutcome::Certified(c),
                report,
            });
        }
        record.elapsed = start.elapsed();
        report.records.push(record);
    }
    Ok(NullaRun {
        outcome: NullaOutcome::NoCertificateUpToBound {
            bound: degree_bound,
        },
        report,
    })
}

fn ensure_verified(s: &PolySystem, c: &Certificate) -> Result<()> {
    let v = verify_certificate(s, c)?;
    if !v.ok {
        return Err(Error::Internal(format!(
            "solver produced a certificate with nonzero residual ({} terms)",
            v.residual.len()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub ok: bool,
    /// `Σ beta_i f_i - 1`; zero exactly when `ok`.
    pub residual: Polynomial,
}

pub fn verify_certificate(s: &PolySystem, c: &Certificate) -> Result<Verification> {
    verify_polys(&s.polys, &c.betas)
}

pub fn verify_polys(polys: &[Polynomial], betas: &[Polynomial]) -> Result<Verification> {
    if polys.len() != betas.len() {
        return Err(Error::Structural(format!(
            "certificate has {} coefficients for {} equations",
            betas.len(),
            polys.len()
        )));
    }
    let mut sum = -&Polynomial::one();
    for (b, f) in betas.iter().zip(polys) {
        if !b.is_zero() {
            sum = &sum + &(b * f);
        }
    }
    Ok(Verification {
        ok: sum.is_zero(),
        residual: sum,
    })
}

/// Variable to affine expression; unmapped variables are fixed.
pub type AffineMap = BTreeMap<VarId, Polynomial>;

/// Checks that every image is affine and that the linear part is invertible
/// on the variables involved.
pub fn check_invertible(map: &AffineMap) -> Result<()> {
    let mut vars: BTreeSet<VarId> = map.keys().copied().collect();
    for image in map.values() {
        if image.degree().unwrap_or(0) > 1 {
            return Err(Error::NonInvertible);
        }
        vars.extend(image.variables());
    }
    let index: HashMap<VarId, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut triplets = Vec::new();
    for (&v, &r) in &index {
        match map.get(&v) {
            Some(image) => {
                for (m, c) in image.terms() {
                    if let Some(w) = m.vars().next() {
                        triplets.push((r, index[&w], c.clone()));
                    }
                }
            }
            None => triplets.push((r, r, Rational::from_integer(1.into()))),
        }
    }
    let n = vars.len();
    let m = SparseRationalMatrix::from_triplets(n, n, triplets, vec![Rational::zero(); n])?;
    if rref(&m).rank != n {
        return Err(Error::NonInvertible);
    }
    Ok(())
}

pub fn transform_polys(polys: &[Polynomial], map: &AffineMap) -> Vec<Polynomial> {
    polys.iter().map(|p| p.substitute(map)).collect()
}

/// Substitutes `map` into every `beta_i`. The result certifies the system
/// `transform_polys(polys, map)`; an invertible affine map keeps degrees.
pub fn change_of_variables(c: &Certificate, map: &AffineMap) -> Result<Certificate> {
    check_invertible(map)?;
    Ok(Certificate::new(transform_polys(&c.betas, map)))
}

/// Rewrites a certificate of `transformed` (equation `i` a nonzero multiple
/// `k_i t_i` of the target's equation `t_i`) into one for `target` by
/// scaling `beta_i` by `k_i`.
pub fn align_to_system(
    c: &Certificate,
    transformed: &[Polynomial],
    target: &PolySystem,
) -> Result<Certificate> {
    if transformed.len() != target.len() || c.betas.len() != target.len() {
        return Err(Error::Structural("equation counts differ".into()));
    }
    let mut betas = Vec::with_capacity(target.len());
    for ((g, t), b) in transformed.iter().zip(&target.polys).zip(&c.betas) {
        let k = match (g.terms().next_back(), t.terms().next_back()) {
            (None, None) => Rational::zero(),
            (Some((_, gc)), Some((_, tc))) => gc / tc,
            _ => {
                return Err(Error::Structural(
                    "equation is zero on one side only".into(),
                ))
            }
        };
        if *g != t.scale(&k) {
            return Err(Error::Structural(
                "transformed equation is not a multiple of the target".into(),
            ));
        }
        betas.push(b.scale(&k));
    }
    Ok(Certificate::new(betas))
}

/// Degree bound used when none is given: the independence number for
/// independent-set and vertex-cover systems, one more than the largest
/// structure for the rest, or the number of indicators when the oracle
/// refuses.
pub fn default_degree_bound(s: &PolySystem, limits: &OracleLimits) -> u32 {
    let fallback = s.indicator_ids.len() as u32;
    let (kind, plus_one) = match s.problem {
        Problem::IndependentSet | Problem::VertexCover { .. } => {
            (StructureKind::IndependentSet, false)
        }
        Problem::EdgeCover { .. } => (StructureKind::CageFreeSubgraph, true),
        _ => (s.structure_kind(), true),
    };
    match oracles::enumerate(&kind, &s.graph, limits).and_then(|f| oracles::max_structure_size(&f))
    {
        Ok(size) => size as u32 + plus_one as u32,
        Err(_) => fallback,
    }
}
