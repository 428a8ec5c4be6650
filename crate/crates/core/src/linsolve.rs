//! Exact sparse linear algebra over the rationals.
//!
//! Elimination runs on primitive integer rows: every row is scaled to
//! coprime integers, a row is reduced against a pivot by the cross multiple
//! `a*r - b*p`, and the result is divided by its content again. Rows are
//! bucketed by leading column and columns are processed left to right; the
//! pivot for a column is the shortest row in its bucket. The reduced row
//! echelon form of a matrix is unique, so the pivot choice only affects
//! speed, and the particular solution (free variables zero) is determined by
//! the input alone.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_rational, parse_rational, Rational};

/// `A x = b` with `A` stored row-wise; no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
    rhs: Vec<Rational>,
}

impl SparseRationalMatrix {
    /// The zero matrix with zero right-hand side.
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            rows: vec![Vec::new(); n_rows],
            rhs: vec![Rational::zero(); n_rows],
        }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are
    /// summed and zeros dropped.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
        rhs: Vec<Rational>,
    ) -> Result<Self> {
        if rhs.len() != n_rows {
            return Err(Error::Structural(format!(
                "rhs has {} entries for {n_rows} rows",
                rhs.len()
            )));
        }
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n_rows];
        for (r, c, v) in triplets {
            if r >= n_rows || c >= n_cols {
                return Err(Error::Structural(format!(
                    "entry ({r}, {c}) outside a {n_rows}x{n_cols} matrix"
                )));
            }
            *acc[r].entry(c).or_insert_with(Rational::zero) += v;
        }
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(Self {
            n_rows,
            n_cols,
            rows,
            rhs,
        })
    }

    pub fn from_dense(a: &[Vec<Rational>], b: &[Rational]) -> Result<Self> {
        let n_cols = a.first().map_or(0, Vec::len);
        if a.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Structural("ragged dense matrix".into()));
        }
        let trip = a
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(a.len(), n_cols, trip, b.to_vec())
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.rows[r]
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.rows[r]
            .binary_search_by_key(&c, |(j, _)| *j)
            .map_or_else(|_| Rational::zero(), |k| self.rows[r][k].1.clone())
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.n_rows && c < self.n_cols, "index out of range");
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (c, v)),
        }
    }

    pub fn set_rhs(&mut self, r: usize, v: Rational) {
        self.rhs[r] = v;
    }

    /// `A x - b`.
    pub fn residual(&self, x: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| row.iter().fold(-b.clone(), |acc, (c, v)| acc + v * &x[*c]))
            .collect()
    }

    /// Coordinate text: a header `rows cols nnz`, then `row col p/q` per
    /// entry and `row rhs p/q` per nonzero right-hand side.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n_rows, self.n_cols, self.nnz());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let _ = writeln!(out, "{r} {c} {}", format_rational(v));
            }
        }
        for (r, b) in self.rhs.iter().enumerate() {
            if !b.is_zero() {
                let _ = writeln!(out, "{r} rhs {}", format_rational(b));
            }
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let bad = |line: usize, message: &str| Error::Parse {
            line: line + 1,
            message: message.to_string(),
        };
        let (hl, header) = lines.next().ok_or_else(|| bad(0, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(hl, "malformed header"))?;
        let [n_rows, n_cols, _nnz] = dims[..] else {
            return Err(bad(hl, "header needs rows, cols and nnz"));
        };
        let mut trip = Vec::new();
        let mut rhs = vec![Rational::zero(); n_rows];
        for (i, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts[..] else {
                return Err(bad(i, "expected `row col value`"));
            };
            let r: usize = r.parse().map_err(|_| bad(i, "bad row index"))?;
            if r >= n_rows {
                return Err(bad(i, "row index out of range"));
            }
            let v = parse_rational(v).map_err(|_| bad(i, "bad value"))?;
            if c == "rhs" {
                rhs[r] = v;
            } else {
                let c: usize = c.parse().map_err(|_| bad(i, "bad column index"))?;
                trip.push((r, c, v));
            }
        }
        Self::from_triplets(n_rows, n_cols, trip, rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Solved,
    /// Row `row` of the input reduces to `0 = c` with `c != 0`.
    Infeasible {
        row: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// The solution with every free variable set to zero.
    pub solution: Option<Vec<Rational>>,
    /// Rank of the coefficient matrix (of the rows eliminated before an
    /// inconsistency stopped the run, when infeasible).
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl SolveResult {
    pub fn is_solved(&self) -> bool {
        self.status == SolveStatus::Solved
    }
}

/// Reduced row echelon form of `[A | b]` restricted to the coefficient
/// pivots. Rows are normalized so every pivot entry is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: SparseRationalMatrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
    /// An input row that reduces to `0 = c`, `c != 0`.
    pub inconsistent_row: Option<usize>,
}

/// Integer coefficients for the elimination. `i64` runs first and reports
/// overflow; `BigInt` never fails.
trait Coeff: Clone + Eq + std::hash::Hash + Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn into_big(self) -> BigInt;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_gcd(&self, other: &Self) -> Option<Self>;
    fn abs(&self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// `a*x - b*y`.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn div_exact(&self, d: &Self) -> Self;
}

impl Coeff for i64 {
    fn from_big(v: &BigInt) -> Option<Self> {
        i64::try_from(v).ok()
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_gcd(&self, other: &Self) -> Option<Self> {
        let g = (*self as i128).gcd(&(*other as i128));
        i64::try_from(g).ok()
    }
    fn abs(&self) -> Option<Self> {
        self.checked_abs()
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        let v = (*a as i128) * (*x as i128) - (*b as i128) * (*y as i128);
        i64::try_from(v).ok()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl Coeff for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn into_big(self) -> BigInt {
        self
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        One::is_one(self)
    }
    fn is_negative(&self) -> bool {
        self.sign() == Sign::Minus
    }
    fn abs_gcd(&self, other: &Self) -> Option<Self> {
        Some(self.gcd(other))
    }
    fn abs(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

#[derive(Clone, Debug)]
struct IntRow<T> {
    entries: Vec<(usize, T)>,
    rhs: T,
    origin: usize,
}

impl IntRow<BigInt> {
    fn from_rational(entries: &[(usize, Rational)], rhs: &Rational, origin: usize) -> Self {
        let mut l = rhs.denom().clone();
        for (_, v) in entries {
            l = l.lcm(v.denom());
        }
        let scale = |v: &Rational| v.numer() * (&l / v.denom());
        let mut row = IntRow {
            entries: entries.iter().map(|(c, v)| (*c, scale(v))).collect(),
            rhs: scale(rhs),
            origin,
        };
        row.normalize()
            .expect("bigint arithmetic does not overflow");
        row
    }
}

impl<T: Coeff> IntRow<T> {
    fn convert<U: Coeff>(&self) -> Option<IntRow<U>> {
        let entries = self
            .entries
            .iter()
            .map(|(c, v)| U::from_big(&v.clone().into_big()).map(|v| (*c, v)))
            .collect::<Option<_>>()?;
        Some(IntRow {
            entries,
            rhs: U::from_big(&self.rhs.clone().into_big())?,
            origin: self.origin,
        })
    }

    fn lead(&self) -> Option<usize> {
        self.entries.first().map(|(c, _)| *c)
    }

    /// Divides out the content and makes the leading entry positive.
    fn normalize(&mut self) -> Option<()> {
        let mut g = self.rhs.abs()?;
        for (_, v) in &self.entries {
            if g.is_unit() {
                break;
            }
            g = g.abs_gcd(v)?;
        }
        if g.is_nil() {
            return Some(());
        }
        let negate = self.entries.first().is_some_and(|(_, v)| v.is_negative());
        let g = if negate { g.neg()? } else { g };
        if !g.is_unit() {
            for (_, v) in &mut self.entries {
                *v = v.div_exact(&g);
            }
            self.rhs = self.rhs.div_exact(&g);
        }
        Some(())
    }

    /// `a*self - b*p` cancelling the shared leading column; `None` on
    /// overflow.
    fn eliminate(&self, p: &IntRow<T>) -> Option<IntRow<T>> {
        let pa = &p.entries[0].1;
        let rb = &self.entries[0].1;
        let g = pa.abs_gcd(rb)?;
        let a = pa.div_exact(&g);
        let b = rb.div_exact(&g);
        let mut out = Vec::with_capacity(self.entries.len() + p.entries.len());
        let (mut i, mut j) = (1, 1);
        let (r, q) = (&self.entries, &p.entries);
        while i < r.len() || j < q.len() {
            let take_r = j >= q.len() || (i < r.len() && r[i].0 < q[j].0);
            let take_q = i >= r.len() || (j < q.len() && q[j].0 < r[i].0);
            if take_r {
                out.push((r[i].0, a.mul(&r[i].1)?));
                i += 1;
            } else if take_q {
                out.push((q[j].0, b.mul(&q[j].1)?.neg()?));
                j += 1;
            } else {
                let v = T::cross(&a, &r[i].1, &b, &q[j].1)?;
                if !v.is_nil() {
                    out.push((r[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        let mut row = IntRow {
            entries: out,
            rhs: T::cross(&a, &self.rhs, &b, &p.rhs)?,
            origin: self.origin,
        };
        row.normalize()?;
        Some(row)
    }
}

struct Echelon {
    /// Pivot rows in increasing leading column.
    pivots: Vec<IntRow<BigInt>>,
    inconsistent_row: Option<usize>,
}

/// Row echelon form by leading-column buckets. Tries machine integers
/// first and redoes the work with big integers if anything overflows.
fn echelon(m: &SparseRationalMatrix, stop_on_inconsistent: bool) -> Echelon {
    let mut rows = Vec::new();
    let mut seen: HashSet<(Vec<(usize, BigInt)>, BigInt)> = HashSet::new();
    let mut inconsistent_row = None;
    for (r, row) in m.rows.iter().enumerate() {
        let ir = IntRow::from_rational(row, &m.rhs[r], r);
        match ir.lead() {
            None if !Zero::is_zero(&ir.rhs) => {
                inconsistent_row.get_or_insert(r);
                if stop_on_inconsistent {
                    return Echelon {
                        pivots: Vec::new(),
                        inconsistent_row,
                    };
                }
            }
            None => {}
            Some(_) => {
                if seen.insert((ir.entries.clone(), ir.rhs.clone())) {
                    rows.push(ir);
                }
            }
        }
    }
    drop(seen);
    let small: Option<Vec<IntRow<i64>>> = rows.iter().map(IntRow::convert).collect();
    if let Some(small) = small {
        if let Some(e) = echelon_in(m.n_cols, small, inconsistent_row, stop_on_inconsistent) {
            return e;
        }
    }
    echelon_in(m.n_cols, rows, inconsistent_row, stop_on_inconsistent)
        .expect("bigint arithmetic does not overflow")
}

fn echelon_in<T: Coeff>(
    n_cols: usize,
    rows: Vec<IntRow<T>>,
    mut inconsistent_row: Option<usize>,
    stop_on_inconsistent: bool,
) -> Option<Echelon> {
    let mut buckets: Vec<Vec<IntRow<T>>> = vec![Vec::new(); n_cols];
    for r in rows {
        let c = r.lead().expect("zero rows filtered");
        buckets[c].push(r);
    }
    let mut pivots: Vec<IntRow<T>> = Vec::new();
    let finish = |pivots: Vec<IntRow<T>>, inconsistent_row| {
        let pivots = pivots
            .iter()
            .map(|p| p.convert().expect("conversion to bigint"))
            .collect();
        Some(Echelon {
            pivots,
            inconsistent_row,
        })
    };
    for c in 0..n_cols {
        let mut bucket = std::mem::take(&mut buckets[c]);
        if bucket.is_empty() {
            continue;
        }
        let k = (0..bucket.len())
            .min_by_key(|&k| (bucket[k].entries.len(), bucket[k].origin))
            .expect("nonempty bucket");
        let p = bucket.swap_remove(k);
        for r in bucket {
            let red = r.eliminate(&p)?;
            match red.lead() {
                Some(lc) => buckets[lc].push(red),
                None if red.rhs.is_nil() => {}
                None => {
                    inconsistent_row =
                        Some(inconsistent_row.map_or(red.origin, |o: usize| o.min(red.origin)));
                    if stop_on_inconsistent {
                        return finish(pivots, inconsistent_row);
                    }
                }
            }
        }
        pivots.push(p);
    }
    finish(pivots, inconsistent_row)
}

/// The particular solution with free variables zero, or the first
/// inconsistency found.
pub fn solve_particular(m: &SparseRationalMatrix) -> SolveResult {
    let e = echelon(m, true);
    let pivot_columns: Vec<usize> = e.pivots.iter().filter_map(IntRow::lead).collect();
    let rank = pivot_columns.len();
    if let Some(row) = e.inconsistent_row {
        return SolveResult {
            status: SolveStatus::Infeasible { row },
            solution: None,
            rank,
            pivot_columns,
        };
    }
    let mut x = vec![Rational::zero(); m.n_cols];
    for p in e.pivots.iter().rev() {
        let (c, lead) = &p.entries[0];
        let mut acc = Rational::from_integer(p.rhs.clone());
        for (j, v) in &p.entries[1..] {
            if !x[*j].is_zero() {
                acc -= &x[*j] * Rational::from_integer(v.clone());
            }
        }
        x[*c] = acc / Rational::from_integer(lead.clone());
    }
    SolveResult {
        status: SolveStatus::Solved,
        solution: Some(x),
        rank,
        pivot_columns,
    }
}

/// Exact reduced row echelon form. Zero rows are dropped, so the returned
/// matrix has `rank` rows.
pub fn rref(m: &SparseRationalMatrix) -> Rref {
    let e = echelon(m, false);
    let mut rows: Vec<(BTreeMap<usize, Rational>, Rational)> = e
        .pivots
        .iter()
        .map(|p| {
            let lead = Rational::from_integer(p.entries[0].1.clone());
            let row = p
                .entries
                .iter()
                .map(|(c, v)| (*c, Rational::from_integer(v.clone()) / &lead))
                .collect();
            (row, Rational::from_integer(p.rhs.clone()) / &lead)
        })
        .collect();
    let pivot_columns: Vec<usize> = e.pivots.iter().filter_map(IntRow::lead).collect();
    for j in (0..rows.len()).rev() {
        let c = pivot_columns[j];
        let (pivot_row, pivot_rhs) = rows[j].clone();
        for row in rows.iter_mut().take(j) {
            let Some(f) = row.0.remove(&c) else { continue };
            for (k, v) in &pivot_row {
                if *k == c {
                    continue;
                }
                let e = row.0.entry(*k).or_insert_with(Rational::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.0.remove(k);
                }
            }
            row.1 -= &f * &pivot_rhs;
        }
    }
    let rank = rows.len();
    let trip = rows
        .iter()
        .enumerate()
        .flat_map(|(i, (row, _))| row.iter().map(move |(c, v)| (i, *c, v.clone())));
    let rhs = rows.iter().map(|(_, b)| b.clone()).collect();
    let matrix = SparseRationalMatrix::from_triplets(rank, m.n_cols, trip, rhs)
        .expect("rref rows stay in range");
    Rref {
        matrix,
        pivot_columns,
        rank,
        inconsistent_row: e.inconsistent_row,
    }
}

/// A basis of `{x : A x = 0}`, one vector per free column in increasing
/// order.
pub fn nullspace_basis(m: &SparseRationalMatrix) -> Vec<Vec<Rational>> {
    let mut homogeneous = m.clone();
    homogeneous.rhs = vec![Rational::zero(); m.n_rows];
    let r = rref(&homogeneous);
    let pivots: HashSet<usize> = r.pivot_columns.iter().copied().collect();
    (0..m.n_cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); m.n_cols];
            v[f] = Rational::one();
            for (i, &pc) in r.pivot_columns.iter().enumerate() {
                v[pc] = -r.matrix.get(i, f);
            }
            v
        })
        .collect()
}
