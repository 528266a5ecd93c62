//! Exact expansion of the invariant polynomial and the induced CR map.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::cyclotomic::{cyclotomic_polynomial, CyclotomicElement};
use crate::error::{Error, Result};
use crate::params::{Form, GroupParams};
use crate::poly::SparseExactPolynomial;

/// `Φ(x, y) = 1 - Π_{j=0}^{p-1} (1 - ω^{j q1} x - ω^{j q2} y)`, with `y -> -y`
/// applied afterwards for the indefinite form.
///
/// Reference backend: the product is formed symbolically in ω and reduced
/// modulo the cyclotomic polynomial once. Cost grows like `p^4`; use the
/// modular backend or the counting path in `signature` for larger groups.
pub fn expand(params: &GroupParams) -> Result<SparseExactPolynomial> {
    let (p, q1, q2) = (params.p(), params.q1(), params.q2());
    let mut product = CyclotomicElement::one(p);
    for j in 0..p {
        product.mul_linear_factor((j * q1) % p, (j * q2) % p, false);
    }
    let constant = product
        .reduce(&cyclotomic_polynomial(p))
        .map_err(|(r, s)| Error::NonConstantResidue { r, s })?;
    let phi = constant.one_minus();
    Ok(match params.form() {
        Form::Definite => phi,
        Form::Indefinite => phi.negate_y(),
    })
}

/// One holomorphic component `magnitude * z1^r * z2^s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrComponent {
    pub magnitude: f64,
    pub r: u64,
    pub s: u64,
}

impl CrComponent {
    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        z1.powu(self.r as u32) * z2.powu(self.s as u32) * self.magnitude
    }
}

/// `F ⊕ G` with `‖F‖² - ‖G‖² = Φ(|z1|², |z2|²)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrMap {
    pub f_terms: Vec<CrComponent>,
    pub g_terms: Vec<CrComponent>,
}

impl CrMap {
    pub fn from_polynomial(poly: &SparseExactPolynomial) -> Self {
        let mut f_terms = Vec::new();
        let mut g_terms = Vec::new();
        for (r, s, c) in poly.terms() {
            let magnitude = c.abs().to_f64().unwrap_or(f64::INFINITY).sqrt();
            let comp = CrComponent { magnitude, r, s };
            if c.is_positive() {
                f_terms.push(comp);
            } else {
                g_terms.push(comp);
            }
        }
        CrMap { f_terms, g_terms }
    }

    /// `(‖F(z)‖², ‖G(z)‖²)`.
    pub fn norms_sq(&self, z1: Complex64, z2: Complex64) -> (f64, f64) {
        let norm = |terms: &[CrComponent]| terms.iter().map(|c| c.eval(z1, z2).norm_sqr()).sum::<f64>();
        (norm(&self.f_terms), norm(&self.g_terms))
    }
}

pub fn cr_map(params: &GroupParams) -> Result<CrMap> {
    Ok(CrMap::from_polynomial(&expand(params)?))
}

/// `1 - Π_j (1 - ω^{j q1} x ∓ ω^{j q2} y)` in double-precision complex
/// arithmetic with `ω = exp(2πi/p)`. Independent of the exact backends.
pub fn phi_float(params: &GroupParams, x: f64, y: f64) -> f64 {
    let p = params.p();
    let y_sign = match params.form() {
        Form::Definite => -1.0,
        Form::Indefinite => 1.0,
    };
    let root = |k: u64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k % p) as f64 / p as f64);
    let mut prod = Complex64::new(1.0, 0.0);
    for j in 0..p {
        let factor = Complex64::new(1.0, 0.0) - root(j * params.q1()) * x + root(j * params.q2()) * (y_sign * y);
        prod *= factor;
    }
    1.0 - prod.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(terms: &[((u64, u64), i64)]) -> SparseExactPolynomial {
        SparseExactPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn phi_six_two_three() {
        let got = expand(&GroupParams::definite(6, 2, 3).unwrap()).unwrap();
        let want = poly(&[((3, 0), 2), ((6, 0), -1), ((0, 2), 3), ((3, 2), 6), ((0, 4), -3), ((0, 6), 1)]);
        assert_eq!(got, want);
    }

    #[test]
    fn phi_two_one_one_indefinite() {
        let got = expand(&GroupParams::indefinite(2, 1, 1).unwrap()).unwrap();
        assert_eq!(got, poly(&[((2, 0), 1), ((1, 1), -2), ((0, 2), 1)]));
    }

    #[test]
    fn trivial_group() {
        let got = expand(&GroupParams::definite(1, 0, 0).unwrap()).unwrap();
        assert_eq!(got, poly(&[((1, 0), 1), ((0, 1), 1)]));
    }

    #[test]
    fn q1_zero_closed_form() {
        // 1 - (1 - x)^p + y^p
        let p = 5u64;
        let got = expand(&GroupParams::definite(p, 0, 2).unwrap()).unwrap();
        let binom = [1i64, 5, 10, 10, 5, 1];
        for r in 1..=p {
            let sign = if r % 2 == 1 { 1 } else { -1 };
            assert_eq!(got.coeff(r, 0), BigInt::from(sign * binom[r as usize]));
        }
        assert_eq!(got.coeff(0, p), BigInt::from(1));
        assert_eq!(got.len(), 6);
    }

    #[test]
    fn cr_map_examples() {
        let m = cr_map(&GroupParams::indefinite(2, 1, 1).unwrap()).unwrap();
        let f: Vec<_> = m.f_terms.iter().map(|c| (c.r, c.s, c.magnitude)).collect();
        assert_eq!(f, vec![(0, 2, 1.0), (2, 0, 1.0)]);
        assert_eq!(m.g_terms.len(), 1);
        assert_eq!((m.g_terms[0].r, m.g_terms[0].s), (1, 1));
        assert!((m.g_terms[0].magnitude - 2f64.sqrt()).abs() < 1e-15);

        let m = cr_map(&GroupParams::definite(1, 0, 0).unwrap()).unwrap();
        assert_eq!(m.f_terms.len(), 2);
        assert!(m.g_terms.is_empty());

        let m = cr_map(&GroupParams::definite(6, 2, 3).unwrap()).unwrap();
        assert_eq!((m.f_terms.len(), m.g_terms.len()), (4, 2));
        let mut mags: Vec<f64> = m.f_terms.iter().chain(&m.g_terms).map(|c| c.magnitude * c.magnitude).collect();
        mags.sort_by(f64::total_cmp);
        let want = [1.0, 1.0, 2.0, 3.0, 3.0, 6.0];
        for (a, b) in mags.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn float_product_matches_at_a_point() {
        let params = GroupParams::definite(6, 2, 3).unwrap();
        let exact = expand(&params).unwrap();
        let (x, y) = (0.3, 0.7);
        assert!((exact.evaluate_f64(x, y) - phi_float(&params, x, y)).abs() < 1e-12);
    }
}
