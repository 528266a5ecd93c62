//! Parameters of the cyclic group generated by `diag(ω^q1, ω^q2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, gcd3};
use crate::error::{Error, Result};

/// Which Hermitian form the group preserves.
///
/// `Definite` is `U(2)` acting on the unit sphere; `Indefinite` is `U(1,1)`
/// acting on the hyperquadric `|z1|^2 - |z2|^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Form {
    #[serde(rename = "u2")]
    Definite,
    #[serde(rename = "u11")]
    Indefinite,
}

impl Form {
    pub fn as_str(self) -> &'static str {
        match self {
            Form::Definite => "u2",
            Form::Indefinite => "u11",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u2" | "definite" => Ok(Form::Definite),
            "u11" | "u1,1" | "indefinite" => Ok(Form::Indefinite),
            other => Err(Error::InvalidParams(format!("unknown form `{other}` (expected u2 or u11)"))),
        }
    }
}

/// A validated triple `(p, q1, q2)` plus the form flag.
///
/// Invariants: `p >= 1`, `q1, q2 < p`, `gcd(p, q1, q2) = 1`. The ordering
/// `q1 <= q2` is not enforced because the canonical representative of an
/// indefinite group may have `q1 > q2` (the coordinate swap is not a symmetry
/// of `U(1,1)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    p: u64,
    q1: u64,
    q2: u64,
    form: Form,
}

impl GroupParams {
    pub fn new(p: u64, q1: u64, q2: u64, form: Form) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParams("group order p must be at least 1".into()));
        }
        if q1 >= p || q2 >= p {
            return Err(Error::InvalidParams(format!(
                "exponents must satisfy 0 <= q1, q2 < p (got p={p}, q1={q1}, q2={q2})"
            )));
        }
        let g = gcd3(p, q1, q2);
        if g != 1 {
            return Err(Error::NotFaithful { p, q1, q2, gcd: g });
        }
        Ok(GroupParams { p, q1, q2, form })
    }

    pub fn definite(p: u64, q1: u64, q2: u64) -> Result<Self> {
        Self::new(p, q1, q2, Form::Definite)
    }

    pub fn indefinite(p: u64, q1: u64, q2: u64) -> Result<Self> {
        Self::new(p, q1, q2, Form::Indefinite)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q1(&self) -> u64 {
        self.q1
    }

    pub fn q2(&self) -> u64 {
        self.q2
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn with_form(self, form: Form) -> Self {
        GroupParams { form, ..self }
    }

    /// `true` when `q1` and `q2` share no factor, i.e. the exponents are
    /// minimal in the sense the weight-count estimates assume.
    pub fn is_coprime_pair(&self) -> bool {
        gcd(self.q1, self.q2) == 1
    }

    /// Weight `(r*q1 + s*q2)/p` if it is an integer.
    pub fn weight(&self, r: u64, s: u64) -> Option<u64> {
        let total = r * self.q1 + s * self.q2;
        (total % self.p == 0).then(|| total / self.p)
    }

    pub fn canonicalize(self) -> Self {
        canonicalize(self.p, self.q1, self.q2, self.form).expect("valid params canonicalize")
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{},{}; {})", self.p, self.q1, self.q2, self.form)
    }
}

/// Lexicographically minimal `(q1', q2')` over all generators `s^k` with
/// `gcd(k, p) = 1`; for the definite form the swapped pair is also admitted.
pub fn canonicalize(p: u64, q1: u64, q2: u64, form: Form) -> Result<GroupParams> {
    let params = GroupParams::new(p, q1, q2, form)?;
    let mut best = (q1, q2);
    for k in 1..=p {
        if gcd(k, p) != 1 {
            continue;
        }
        let a = (k * q1) % p;
        let b = (k * q2) % p;
        let cand = match form {
            Form::Definite => (a.min(b), a.max(b)),
            Form::Indefinite => (a, b),
        };
        if cand < best {
            best = cand;
        }
    }
    Ok(GroupParams { q1: best.0, q2: best.1, ..params })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_examples() {
        let c = canonicalize(7, 2, 4, Form::Definite).unwrap();
        assert_eq!((c.q1(), c.q2()), (1, 2));
        let c = canonicalize(5, 1, 2, Form::Definite).unwrap();
        assert_eq!((c.q1(), c.q2()), (1, 2));
        let c = canonicalize(6, 2, 3, Form::Definite).unwrap();
        assert_eq!((c.q1(), c.q2()), (2, 3));
    }

    #[test]
    fn six_two_three_brute_force() {
        // multipliers coprime to 6 are 1 and 5; list every admitted pair
        let mut cands = vec![];
        for k in [1u64, 5] {
            let (a, b) = ((2 * k) % 6, (3 * k) % 6);
            cands.push((a, b));
            cands.push((b, a));
        }
        assert_eq!(cands.iter().min(), Some(&(2, 3)));
    }

    #[test]
    fn indefinite_keeps_orientation() {
        // (5; 2, 0) in U(1,1): the swap (0, 1) is not admitted
        let c = canonicalize(5, 2, 0, Form::Indefinite).unwrap();
        assert_eq!((c.q1(), c.q2()), (1, 0));
        let c = canonicalize(5, 2, 0, Form::Definite).unwrap();
        assert_eq!((c.q1(), c.q2()), (0, 1));
    }

    #[test]
    fn rejects_unfaithful() {
        assert!(matches!(
            canonicalize(6, 2, 4, Form::Definite),
            Err(Error::NotFaithful { gcd: 2, .. })
        ));
        assert!(GroupParams::new(0, 0, 0, Form::Definite).is_err());
        assert!(GroupParams::new(5, 1, 5, Form::Definite).is_err());
    }

    #[test]
    fn idempotent_small() {
        for p in 1..=30u64 {
            for q1 in 0..p {
                for q2 in 0..p {
                    for form in [Form::Definite, Form::Indefinite] {
                        let Ok(c) = canonicalize(p, q1, q2, form) else { continue };
                        assert_eq!(c, c.canonicalize());
                        if form == Form::Definite {
                            assert!(c.q1() <= c.q2());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn form_parsing() {
        assert_eq!("u2".parse::<Form>().unwrap(), Form::Definite);
        assert_eq!("U11".parse::<Form>().unwrap(), Form::Indefinite);
        assert!("sl2".parse::<Form>().is_err());
    }
}
