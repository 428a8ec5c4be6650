use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::table::{VarId, VariableTable};
use super::{format_rational, Rational};
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored and terms iterate in canonical monomial order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// Sums the given terms; repeated monomials accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `Σ vars`.
    pub fn sum_of(vars: impl IntoIterator<Item = VarId>) -> Self {
        Self::from_terms(
            vars.into_iter()
                .map(|v| (Monomial::var(v), Rational::one())),
        )
    }

    /// `Π vars`, which is 1 for an empty iterator.
    pub fn product_of(factors: impl IntoIterator<Item = Polynomial>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| &acc * &f)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Rational, mono: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        // Multiplying by a monomial is injective on monomials, so no
        // collisions can occur.
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Replaces every positive power of a variable in `vars` by the variable
    /// itself, i.e. reduces modulo `v^2 - v` for each `v` in `vars`.
    pub fn boolean_reduce(&self, vars: &BTreeSet<VarId>) -> Polynomial {
        if vars.is_empty() {
            return self.clone();
        }
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.boolean_reduce(|v| vars.contains(&v)), c.clone())),
        )
    }

    pub fn evaluate(&self, point: &HashMap<VarId, Rational>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = point
                    .get(&v)
                    .ok_or_else(|| Error::Structural(format!("no value assigned to {v}")))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Simultaneous substitution; variables missing from `map` stay put.
    pub fn substitute(&self, map: &BTreeMap<VarId, Polynomial>) -> Polynomial {
        let mut power_cache: HashMap<(VarId, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            let mut kept = Vec::new();
            for (v, e) in m.iter() {
                match map.get(&v) {
                    Some(image) => {
                        let pw = power_cache
                            .entry((v, e))
                            .or_insert_with(|| image.pow(e))
                            .clone();
                        t = &t * &pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            if !kept.is_empty() {
                t = t.mul_term(&Rational::one(), &Monomial::from_exponents(kept));
            }
            out = &out + &t;
        }
        out
    }

    /// Renames variables through an injective map.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> Polynomial {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }

    pub fn display<'a>(&'a self, table: &'a VariableTable) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, table }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in small.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Text form `c + c*x1 + c*x1*x2^2`, terms in canonical order, coefficients
/// as `p/q`.
pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    table: &'a VariableTable,
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&format_rational(c))?;
            for (v, e) in m.iter() {
                let name = if self.table.contains(v) {
                    self.table.name(v).to_string()
                } else {
                    v.to_string()
                };
                if e == 1 {
                    write!(f, "*{name}")?;
                } else {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rational, VarRole};

    fn x(i: u32) -> Polynomial {
        Polynomial::var(VarId(i))
    }

    fn c(n: i64, d: i64) -> Polynomial {
        Polynomial::constant(rational(n, d))
    }

    #[test]
    fn addition_examples() {
        assert_eq!(&(&x(0) + &c(1, 1)) + &(-&x(0)), Polynomial::one());
        assert_eq!(&x(1) + &Polynomial::zero(), x(1));
        assert_eq!(
            &x(0).scale(&rational(1, 2)) + &x(0).scale(&rational(1, 2)),
            x(0)
        );
    }

    #[test]
    fn multiplication_examples() {
        let lhs = &(&x(0) + &x(1)) * &(&x(0) - &c(1, 1));
        let want = Polynomial::from_terms([
            (Monomial::from_exponents([(VarId(0), 2)]), int(1)),
            (Monomial::product_of([VarId(0), VarId(1)]), int(1)),
            (Monomial::var(VarId(0)), int(-1)),
            (Monomial::var(VarId(1)), int(-1)),
        ]);
        assert_eq!(lhs, want);
        assert_eq!(&want * &Polynomial::one(), want);
    }

    #[test]
    fn two_vertex_inverse_expands_to_one_after_boolean_reduction() {
        // (x1 + x2 - 2)(-1/2 - 1/2 x1 - 1/2 x2), then x_i^2 -> x_i and x1*x2 -> 0.
        let f = &(&x(0) + &x(1)) - &c(2, 1);
        let beta = &Polynomial::sum_of([VarId(0), VarId(1)]).scale(&rational(-1, 2)) + &c(-1, 2);
        let prod = &f * &beta;
        let vars: BTreeSet<VarId> = [VarId(0), VarId(1)].into();
        let reduced = prod.boolean_reduce(&vars);
        let edge = Monomial::product_of([VarId(0), VarId(1)]);
        let without_edge = &reduced - &Polynomial::term(reduced.coefficient(&edge), edge);
        assert_eq!(without_edge, Polynomial::one());

        let single = &(&x(0) - &c(2, 1)) * &(&c(-1, 2) + &x(0).scale(&rational(-1, 2)));
        assert_eq!(single.boolean_reduce(&[VarId(0)].into()), Polynomial::one());
    }

    #[test]
    fn boolean_reduce_examples() {
        let vars: BTreeSet<VarId> = [VarId(0)].into();
        assert!((&x(0).pow(2) - &x(0)).boolean_reduce(&vars).is_zero());
        let m = &x(0).pow(3) * &x(1);
        assert_eq!(m.boolean_reduce(&vars), &x(0) * &x(1));
        assert_eq!(m.boolean_reduce(&BTreeSet::new()), m);
    }

    #[test]
    fn evaluate_examples() {
        let pt: HashMap<VarId, Rational> = [(VarId(0), int(1)), (VarId(1), int(0))].into();
        assert_eq!((&x(0) * &x(1)).evaluate(&pt).unwrap(), int(0));
        let pt11: HashMap<VarId, Rational> = [(VarId(0), int(1)), (VarId(1), int(1))].into();
        assert_eq!(
            (&(&x(0) + &x(1)) - &c(2, 1)).evaluate(&pt11).unwrap(),
            int(0)
        );
        assert_eq!((&x(0).pow(2) - &x(0)).evaluate(&pt11).unwrap(), int(0));
        assert!(x(5).evaluate(&pt).is_err());
    }

    #[test]
    fn substitute_examples() {
        let flip = |i: u32| (VarId(i), &c(1, 1) - &x(i + 10));
        let map: BTreeMap<VarId, Polynomial> = [flip(0), flip(1)].into();
        assert_eq!(x(0).substitute(&map), &c(1, 1) - &x(10));
        let prod = &(&x(0) - &c(1, 1)) * &(&x(1) - &c(1, 1));
        assert_eq!(prod.substitute(&map), &x(10) * &x(11));
        let boolean = &x(0).pow(2) - &x(0);
        assert_eq!(boolean.substitute(&map), &x(10).pow(2) - &x(10));
    }

    #[test]
    fn text_form() {
        let mut t = VariableTable::new();
        t.push("x1", VarRole::Indicator).unwrap();
        t.push("x2", VarRole::Indicator).unwrap();
        let p = &c(-1, 2) + &Polynomial::sum_of([VarId(0), VarId(1)]).scale(&rational(-1, 2));
        assert_eq!(p.display(&t).to_string(), "-1/2 + -1/2*x1 + -1/2*x2");
        let q = &(&x(0).pow(2) * &x(1)) + &c(3, 1);
        assert_eq!(q.display(&t).to_string(), "3 + 1*x1^2*x2");
        assert_eq!(Polynomial::zero().display(&t).to_string(), "0");
    }
}
