//! Sparse bivariate polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::params::GroupParams;

/// `Σ C_{rs} x^r y^s` with no stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseExactPolynomial {
    terms: BTreeMap<(u64, u64), BigInt>,
}

impl SparseExactPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u64, u64), C)>,
        C: Into<BigInt>,
    {
        let mut poly = Self::new();
        for (key, c) in terms {
            poly.add_term(key.0, key.1, &c.into());
        }
        poly
    }

    pub fn add_term(&mut self, r: u64, s: u64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((r, s)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(r, s));
        }
    }

    pub fn coeff(&self, r: u64, s: u64) -> BigInt {
        self.terms.get(&(r, s)).cloned().unwrap_or_default()
    }

    /// Terms in `(r, s)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64, &BigInt)> {
        self.terms.iter().map(|(&(r, s), c)| (r, s, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|&(r, s)| r + s).max()
    }

    /// Substitutes `y -> -y`.
    pub fn negate_y(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(r, s), c)| ((r, s), if s % 2 == 1 { -c } else { c.clone() }))
            .collect();
        SparseExactPolynomial { terms }
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Self {
        let mut out = SparseExactPolynomial {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        };
        out.add_term(0, 0, &BigInt::one());
        out
    }

    /// Terms sorted by `(weight, r)` for the given group; terms whose weight is
    /// not an integer are placed last.
    pub fn terms_by_weight(&self, params: &GroupParams) -> Vec<(u64, u64, Option<u64>, &BigInt)> {
        let mut out: Vec<_> = self.terms().map(|(r, s, c)| (r, s, params.weight(r, s), c)).collect();
        out.sort_by_key(|&(r, _, l, _)| (l.is_none(), l, r));
        out
    }

    /// Exact evaluation at rational `(x, y)`.
    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(r, s), c) in &self.terms {
            let term = Rational::from_integer(c.clone())
                * num_traits::pow(x.clone(), r as usize)
                * num_traits::pow(y.clone(), s as usize);
            acc += term;
        }
        acc
    }

    pub fn evaluate_f64(&self, x: f64, y: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(&(r, s), c)| c.to_f64().unwrap_or(f64::NAN) * x.powi(r as i32) * y.powi(s as i32))
            .sum()
    }
}

impl fmt::Display for SparseExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(r, s), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = match (r, s) {
                (0, 0) => String::new(),
                (r, 0) => pow_str("x", r),
                (0, s) => pow_str("y", s),
                (r, s) => format!("{}*{}", pow_str("x", r), pow_str("y", s)),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn pow_str(var: &str, e: u64) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}
