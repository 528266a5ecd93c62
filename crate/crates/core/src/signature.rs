//! Monomial support, the coefficient sign law, and signature pairs.
//!
//! For a diagonal cyclic group the coefficient matrix of the invariant
//! polynomial is diagonal in the monomial basis `x^r y^s` (with `x = |z1|^2`,
//! `y = |z2|^2`), so the signature pair is read off from coefficient signs.
//! Nothing in this module expands the polynomial: the support is the set of
//! lattice points with `p | r*q1 + s*q2` and `0 < r + s <= p`, and each sign is
//! decided by the parity of `gcd(r, s, l)` where `l = (r*q1 + s*q2)/p`.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, gcd3, mod_inverse, ratio, Rational};
use crate::error::{Error, Result};
use crate::params::{Form, GroupParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_positive(positive: bool) -> Self {
        if positive {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportEntry {
    pub r: u64,
    pub s: u64,
    /// Weight `(r*q1 + s*q2) / p`.
    pub l: u64,
    pub sign: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SignaturePair {
    pub n_plus: u64,
    pub n_minus: u64,
}

impl SignaturePair {
    pub fn new(n_plus: u64, n_minus: u64) -> Self {
        SignaturePair { n_plus, n_minus }
    }

    pub fn total(&self) -> u64 {
        self.n_plus + self.n_minus
    }

    pub fn ratio(&self) -> Option<Rational> {
        (self.total() > 0).then(|| ratio(self.n_plus, self.total()))
    }
}

/// Sign rule for a support monomial with weight `l`.
///
/// Definite: positive iff `gcd(r, s, l)` is odd. Indefinite: the substitution
/// `y -> -y` multiplies by `(-1)^s`, so positive iff `s + gcd(r, s, l)` is odd.
pub fn sign_rule(form: Form, r: u64, s: u64, l: u64) -> Sign {
    let g = gcd3(r, s, l);
    match form {
        Form::Definite => Sign::from_positive(g % 2 == 1),
        Form::Indefinite => Sign::from_positive((s + g) % 2 == 1),
    }
}

/// The sign predicate exactly as printed in the statement of the coefficient
/// theorem, `gcd(q1, q2, l)` odd. Kept only so verification can report how
/// often it disagrees with the working rule.
pub fn printed_statement_positive(params: &GroupParams, l: u64) -> bool {
    gcd3(params.q1(), params.q2(), l) % 2 == 1
}

/// Calls `visit(r, s, l)` for every support point, in order of increasing
/// weight and, within a weight, increasing `r`. Linear in `p`.
pub fn for_each_support<F: FnMut(u64, u64, u64)>(params: &GroupParams, mut visit: F) {
    let (p, q1, q2) = (params.p(), params.q1(), params.q2());
    if q1 == 0 && q2 == 0 {
        // only p = 1 is faithful here
        visit(0, 1, 0);
        visit(1, 0, 0);
        return;
    }
    let max_weight = q1.max(q2);
    let mut line = Vec::new();
    for l in 0..=max_weight {
        line.clear();
        weight_line(q1, q2, l * p, p, &mut line);
        for &(r, s) in &line {
            visit(r, s, l);
        }
    }
}

/// Non-negative solutions of `r*q1 + s*q2 = target` with `0 < r + s <= p`,
/// sorted by increasing `r`.
fn weight_line(q1: u64, q2: u64, target: u64, p: u64, out: &mut Vec<(u64, u64)>) {
    if q1 == 0 {
        if target % q2 != 0 {
            return;
        }
        let s = target / q2;
        if s > p {
            return;
        }
        let r_start = u64::from(s == 0);
        out.extend((r_start..=p - s).map(|r| (r, s)));
        return;
    }
    if q2 == 0 {
        if target % q1 != 0 {
            return;
        }
        let r = target / q1;
        if r > p {
            return;
        }
        let s_start = u64::from(r == 0);
        out.extend((s_start..=p - r).map(|s| (r, s)));
        return;
    }
    let g = gcd(q1, q2);
    if target % g != 0 {
        return;
    }
    let (a, b, t) = (q1 / g, q2 / g, target / g);
    // a*r + b*s = t  =>  s ≡ t * b^{-1} (mod a); consecutive solutions differ by (-b, +a)
    let inv_b = mod_inverse(b % a, a).expect("coprime after dividing by gcd");
    let s0 = ((t % a) as u128 * inv_b as u128 % a as u128) as u64;
    // r + s <= p  <=>  (b - a) s >= t - a p, which clips the range of s
    let (ap, t_wide) = (a as u128 * p as u128, t as u128);
    let mut s_hi = t / b;
    let mut s_lo = 0u64;
    if b > a {
        if t_wide > ap {
            s_lo = ((t_wide - ap).div_ceil((b - a) as u128)) as u64;
        }
    } else if t_wide > ap {
        return;
    } else if a > b {
        s_hi = s_hi.min(((ap - t_wide) / (a - b) as u128) as u64);
    }
    let mut s = if s_lo > s0 { s0 + (s_lo - s0).div_ceil(a) * a } else { s0 };
    let start = out.len();
    while s <= s_hi {
        let r = (t - b * s) / a;
        if r + s > 0 {
            debug_assert!(r + s <= p);
            out.push((r, s));
        }
        s += a;
    }
    out[start..].reverse();
}

/// The full support, sorted by `(l, r)`.
pub fn support(params: &GroupParams) -> Vec<SupportEntry> {
    let form = params.form();
    let mut out = Vec::new();
    for_each_support(params, |r, s, l| {
        out.push(SupportEntry { r, s, l, sign: sign_rule(form, r, s, l) })
    });
    out
}

pub fn in_support(params: &GroupParams, r: u64, s: u64) -> Option<u64> {
    let sum = r.checked_add(s)?;
    if sum == 0 || sum > params.p() {
        return None;
    }
    params.weight(r, s)
}

pub fn classify_sign(params: &GroupParams, r: u64, s: u64) -> Result<Sign> {
    let l = in_support(params, r, s).ok_or(Error::NotInSupport { r, s })?;
    Ok(sign_rule(params.form(), r, s, l))
}

pub fn signature(params: &GroupParams) -> SignaturePair {
    let form = params.form();
    let mut pair = SignaturePair::default();
    for_each_support(params, |r, s, l| match sign_rule(form, r, s, l) {
        Sign::Plus => pair.n_plus += 1,
        Sign::Minus => pair.n_minus += 1,
    });
    pair
}

/// Closed form for the order-`p` subgroup of `SU(1,1)`.
pub fn su11_signature(p: u64) -> Result<SignaturePair> {
    if p < 2 {
        return Err(Error::InvalidParams(format!("SU(1,1) closed form needs p >= 2, got {p}")));
    }
    Ok(if p % 2 == 0 { SignaturePair::new(2, p / 2) } else { SignaturePair::new(1, (p + 1) / 2) })
}

pub fn positivity_ratio(params: &GroupParams) -> Result<Rational> {
    signature(params)
        .ratio()
        .ok_or_else(|| Error::InvalidParams("empty support".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(entries: &[SupportEntry]) -> Vec<(u64, u64, u64)> {
        entries.iter().map(|e| (e.r, e.s, e.l)).collect()
    }

    /// Quadratic enumeration of the support; independent of the line walk.
    fn brute_support(params: &GroupParams) -> Vec<(u64, u64, u64)> {
        let p = params.p();
        let mut out = vec![];
        for r in 0..=p {
            for s in 0..=(p - r) {
                if r + s == 0 {
                    continue;
                }
                if let Some(l) = params.weight(r, s) {
                    out.push((r, s, l));
                }
            }
        }
        out.sort_by_key(|&(r, _, l)| (l, r));
        out
    }

    #[test]
    fn support_six_two_three() {
        let params = GroupParams::definite(6, 2, 3).unwrap();
        assert_eq!(
            rs(&support(&params)),
            vec![(0, 2, 1), (3, 0, 1), (0, 4, 2), (3, 2, 2), (6, 0, 2), (0, 6, 3)]
        );
    }

    #[test]
    fn support_trivial_group() {
        let params = GroupParams::definite(1, 0, 0).unwrap();
        assert_eq!(rs(&support(&params)), vec![(0, 1, 0), (1, 0, 0)]);
        assert_eq!(signature(&params), SignaturePair::new(2, 0));
        assert_eq!(positivity_ratio(&params).unwrap(), ratio(1, 1));
    }

    #[test]
    fn support_two_one_one() {
        let params = GroupParams::indefinite(2, 1, 1).unwrap();
        assert_eq!(rs(&support(&params)), vec![(0, 2, 1), (1, 1, 1), (2, 0, 1)]);
    }

    #[test]
    fn line_walk_matches_brute_force() {
        for p in 1..=40u64 {
            for q1 in 0..p {
                for q2 in 0..p {
                    let Ok(params) = GroupParams::definite(p, q1, q2) else { continue };
                    assert_eq!(rs(&support(&params)), brute_support(&params), "{params}");
                }
            }
        }
    }

    #[test]
    fn sign_examples() {
        let d = GroupParams::definite(6, 2, 3).unwrap();
        assert_eq!(classify_sign(&d, 6, 0).unwrap(), Sign::Minus);
        assert_eq!(classify_sign(&d, 3, 2).unwrap(), Sign::Plus);
        let i = GroupParams::indefinite(2, 1, 1).unwrap();
        assert_eq!(classify_sign(&i, 1, 1).unwrap(), Sign::Minus);
        assert_eq!(classify_sign(&d, 1, 1), Err(Error::NotInSupport { r: 1, s: 1 }));
        assert_eq!(classify_sign(&d, 0, 0), Err(Error::NotInSupport { r: 0, s: 0 }));
    }

    #[test]
    fn q1_zero_matches_binomial_signs() {
        // 1 - (1 - x)^p + y^p: x^r has sign (-1)^(r+1), y^p positive
        let params = GroupParams::definite(7, 0, 3).unwrap();
        let entries = support(&params);
        assert_eq!(entries.len(), 8);
        for e in entries {
            if e.s == 0 {
                assert_eq!(e.sign, Sign::from_positive(e.r % 2 == 1));
            } else {
                assert_eq!((e.r, e.s, e.sign), (0, 7, Sign::Plus));
            }
        }
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&GroupParams::indefinite(2, 1, 1).unwrap()), SignaturePair::new(2, 1));
        assert_eq!(signature(&GroupParams::definite(6, 2, 3).unwrap()), SignaturePair::new(4, 2));
        assert_eq!(signature(&GroupParams::indefinite(5, 1, 4).unwrap()), SignaturePair::new(1, 3));
        assert_eq!(positivity_ratio(&GroupParams::indefinite(2, 1, 1).unwrap()).unwrap(), ratio(2, 3));
        assert_eq!(positivity_ratio(&GroupParams::definite(6, 2, 3).unwrap()).unwrap(), ratio(2, 3));
    }

    #[test]
    fn su11_closed_form() {
        assert_eq!(su11_signature(2).unwrap(), SignaturePair::new(2, 1));
        assert_eq!(su11_signature(7).unwrap(), SignaturePair::new(1, 4));
        assert_eq!(su11_signature(8).unwrap(), SignaturePair::new(2, 4));
        assert!(su11_signature(1).is_err());
        for p in 2..=48 {
            let params = crate::params::canonicalize(p, 1, p - 1, Form::Indefinite).unwrap();
            assert_eq!(signature(&params), su11_signature(p).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn definite_signature_swap_invariant() {
        for p in 2..=30u64 {
            for q1 in 0..p {
                for q2 in q1..p {
                    let Ok(a) = GroupParams::definite(p, q1, q2) else { continue };
                    let b = GroupParams::definite(p, q2, q1).unwrap();
                    assert_eq!(signature(&a), signature(&b));
                }
            }
        }
    }

    #[test]
    fn large_p_signature_is_linear() {
        let params = GroupParams::definite(1_000_000, 3, 7).unwrap();
        let sig = signature(&params);
        assert!(sig.total().abs_diff(500_000) <= 7);
    }
}
