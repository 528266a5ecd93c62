//! Root-of-unity arithmetic.
//!
//! Powers of ω are tracked symbolically in `Z[x, y][t] / (t^p - 1)`; the
//! integer image is recovered at the end by reducing modulo the p-th
//! cyclotomic polynomial, the minimal polynomial of ω.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::divisors;
use crate::poly::SparseExactPolynomial;

/// Dense univariate integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (UniPoly::default(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs[..d].iter().enumerate() {
                rem[i - d + j] -= &c * dc;
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem_monic(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem_monic(divisor).1
    }
}

/// The p-th cyclotomic polynomial: `t^p - 1` divided by `Φ_d` for every
/// proper divisor `d` of `p`.
pub fn cyclotomic_polynomial(p: u64) -> UniPoly {
    assert!(p >= 1, "cyclotomic polynomial needs p >= 1");
    let mut cache: Vec<(u64, UniPoly)> = Vec::new();
    for d in divisors(p) {
        let mut poly = t_pow_minus_one(d);
        for (e, phi_e) in &cache {
            if d % e == 0 {
                let (q, r) = poly.div_rem_monic(phi_e);
                debug_assert!(r.is_zero());
                poly = q;
            }
        }
        cache.push((d, poly));
    }
    cache.pop().expect("divisors include p").1
}

fn t_pow_minus_one(n: u64) -> UniPoly {
    let mut c = vec![BigInt::zero(); n as usize + 1];
    c[0] = BigInt::from(-1);
    c[n as usize] = BigInt::one();
    UniPoly::new(c)
}

/// `Σ_k c_k(x, y) t^k` with `t^p = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicElement {
    coeffs: Vec<SparseExactPolynomial>,
}

impl CyclotomicElement {
    pub fn one(p: u64) -> Self {
        let mut coeffs = vec![SparseExactPolynomial::new(); p as usize];
        coeffs[0].add_term(0, 0, &BigInt::one());
        CyclotomicElement { coeffs }
    }

    pub fn order(&self) -> u64 {
        self.coeffs.len() as u64
    }

    pub fn slot(&self, k: u64) -> &SparseExactPolynomial {
        &self.coeffs[(k % self.order()) as usize]
    }

    /// Multiplies in place by `1 - t^u x - t^v y`, or by `1 - t^u x + t^v y`
    /// when `plus_y` is set.
    pub fn mul_linear_factor(&mut self, u: u64, v: u64, plus_y: bool) {
        let p = self.coeffs.len();
        let (u, v) = ((u % p as u64) as usize, (v % p as u64) as usize);
        let mut next = self.coeffs.clone();
        for (k, poly) in self.coeffs.iter().enumerate() {
            let kx = (k + u) % p;
            let ky = (k + v) % p;
            for (r, s, c) in poly.terms() {
                next[kx].add_term(r + 1, s, &-c);
                if plus_y {
                    next[ky].add_term(r, s + 1, c);
                } else {
                    next[ky].add_term(r, s + 1, &-c);
                }
            }
        }
        self.coeffs = next;
    }

    /// Reduces every monomial's `t`-polynomial modulo `cyclotomic`. Returns
    /// the constant parts, or the first monomial whose residue is not
    /// constant.
    pub fn reduce(&self, cyclotomic: &UniPoly) -> Result<SparseExactPolynomial, (u64, u64)> {
        let p = self.coeffs.len();
        let mut by_monomial: std::collections::BTreeMap<(u64, u64), Vec<BigInt>> = Default::default();
        for (k, poly) in self.coeffs.iter().enumerate() {
            for (r, s, c) in poly.terms() {
                by_monomial.entry((r, s)).or_insert_with(|| vec![BigInt::zero(); p])[k] = c.clone();
            }
        }
        let mut out = SparseExactPolynomial::new();
        for ((r, s), vec) in by_monomial {
            let residue = UniPoly::new(vec).rem_monic(cyclotomic);
            match residue.degree() {
                None => {}
                Some(0) => out.add_term(r, s, &residue.coeffs()[0]),
                Some(_) => return Err((r, s)),
            }
        }
        Ok(out)
    }
}

/// Exact `Π_{j=0}^{p-1} (1 - ω^{j q1} x ∓ ω^{j q2} y)` evaluated at rational
/// `(x, y)`: the product is formed in `Q[t]/(t^p - 1)` after substitution and
/// reduced once at the end. Returns `None` if the residue is not rational.
pub fn product_at_point(
    p: u64,
    q1: u64,
    q2: u64,
    plus_y: bool,
    x: &crate::arith::Rational,
    y: &crate::arith::Rational,
) -> Option<crate::arith::Rational> {
    use crate::arith::Rational;
    let n = p as usize;
    let mut acc = vec![Rational::zero(); n];
    acc[0] = Rational::one();
    let y_coef = if plus_y { y.clone() } else { -y.clone() };
    for j in 0..p {
        let u = ((j * q1) % p) as usize;
        let v = ((j * q2) % p) as usize;
        let mut next = acc.clone();
        for (k, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            next[(k + u) % n] -= a * x;
            next[(k + v) % n] += a * &y_coef;
        }
        acc = next;
    }
    // clear denominators, reduce over Z, then divide back
    let lcm = acc.iter().fold(BigInt::one(), |l, c| num_integer::Integer::lcm(&l, c.denom()));
    let ints: Vec<BigInt> = acc.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let residue = UniPoly::new(ints).rem_monic(&cyclotomic_polynomial(p));
    match residue.degree() {
        None => Some(Rational::zero()),
        Some(0) => Some(Rational::new(residue.coeffs()[0].clone(), lcm)),
        Some(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), UniPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), UniPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(6), UniPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), UniPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), UniPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn divisor_product_is_t_pow_minus_one() {
        for n in 1..=30u64 {
            let prod = divisors(n)
                .into_iter()
                .fold(UniPoly::from_i64(&[1]), |acc, d| acc.mul(&cyclotomic_polynomial(d)));
            assert_eq!(prod, t_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn degree_is_totient() {
        let phi = |n: u64| (1..=n).filter(|&k| crate::arith::gcd(k, n) == 1).count();
        for n in 1..=40u64 {
            assert_eq!(cyclotomic_polynomial(n).degree(), Some(phi(n)), "n = {n}");
        }
    }

    #[test]
    fn remainder_by_monic() {
        // t^3 + 2 = (t + 1)(t^2 - t + 1) + 1
        let a = UniPoly::from_i64(&[2, 0, 0, 1]);
        let (q, r) = a.div_rem_monic(&UniPoly::from_i64(&[1, 1]));
        assert_eq!(q, UniPoly::from_i64(&[1, -1, 1]));
        assert_eq!(r, UniPoly::from_i64(&[1]));
    }

    #[test]
    fn element_wraps_exponents() {
        let mut e = CyclotomicElement::one(3);
        e.mul_linear_factor(2, 5, false);
        assert_eq!(e.slot(2).coeff(1, 0), BigInt::from(-1));
        assert_eq!(e.slot(2).coeff(0, 1), BigInt::from(-1));
        assert_eq!(e.slot(0).coeff(0, 0), BigInt::one());
    }
}
