use std::cmp::Ordering;

use super::table::VarId;

/// A power product, stored as `(variable, exponent)` pairs sorted by variable
/// with every exponent positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        Self { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables multiply and
    /// zero exponents vanish.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut exps: Vec<(VarId, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => merged.push((v, e)),
            }
        }
        Self { exps: merged }
    }

    /// Squarefree product of the given variables.
    pub fn product_of(vars: impl IntoIterator<Item = VarId>) -> Self {
        Self::from_exponents(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e == 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.iter().all(|(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::from_exponents(
            other.iter().map(|(v, e)| (v, e - self.exponent(v))),
        ))
    }

    /// Replaces every positive exponent on a variable accepted by `is_boolean`
    /// with one.
    pub fn boolean_reduce(&self, is_boolean: impl Fn(VarId) -> bool) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|&(v, e)| if is_boolean(v) { (v, 1) } else { (v, e) })
                .collect(),
        }
    }

    /// Applies a variable renaming; the map must be injective on this monomial.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> Monomial {
        Monomial::from_exponents(self.iter().map(|(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (&(va, ea), &(vb, eb)) in self.exps.iter().zip(&other.exps) {
                if va != vb {
                    // The side carrying the smaller variable has the larger
                    // exponent there, so it sorts first.
                    return va.cmp(&vb);
                }
                if ea != eb {
                    return eb.cmp(&ea);
                }
            }
            self.exps.len().cmp(&other.exps.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree exactly `d` in `vars` (sorted ascending), in
/// canonical order.
pub fn monomials_of_degree(vars: &[VarId], d: u32) -> Vec<Monomial> {
    fn rec(vars: &[VarId], d: u32, prefix: &mut Vec<(VarId, u32)>, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if d == 0 {
                    out.push(Monomial::from_exponents(prefix.iter().copied()));
                }
            }
            Some((&v, rest)) => {
                for e in (0..=d).rev() {
                    prefix.push((v, e));
                    rec(rest, d - e, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, d, &mut Vec::new(), &mut out);
    out
}

/// All monomials of total degree at most `d` in the given (ascending)
/// variables, in canonical order.
pub fn monomials_up_to_in(vars: &[VarId], d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(vars, k)).collect()
}

/// All monomials of total degree at most `d` in variables `0..n`; there are
/// `C(n + d, d)` of them.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let vars: Vec<VarId> = (0..n as u32).map(VarId).collect();
    monomials_up_to_in(&vars, d)
}
