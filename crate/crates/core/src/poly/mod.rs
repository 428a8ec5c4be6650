//! Sparse multivariate polynomials over exact rationals.
//!
//! Polynomials are plain values indexed by [`VarId`]; the names and roles of
//! the variables live in a [`VariableTable`] owned by whoever builds the
//! system. Terms iterate in graded lexicographic order: total degree first,
//! then the larger exponent on the smaller variable id comes first, so the
//! degree-2 monomials in two variables run `x1^2, x1*x2, x2^2`.

mod monomial;
mod polynomial;
mod table;

pub use monomial::{monomials_of_degree, monomials_up_to, monomials_up_to_in, Monomial};
pub use polynomial::{Polynomial, PolynomialDisplay};
pub use table::{VarId, VarRole, Variable, VariableTable};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Structural(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(
            s.parse::<BigInt>().map_err(|_| bad())?,
        )),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Binomial coefficient, saturating at `usize::MAX`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}
