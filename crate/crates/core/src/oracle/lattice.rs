//! Staircase lattice paths and the explicit element of `T(r, s)` built from them.

use serde::Serialize;

use super::stepped::{SteppedPermutation, StepLabel};
use crate::arith::gcd3;
use crate::error::{Error, Result};
use crate::params::GroupParams;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticePath {
    pub r: u64,
    pub s: u64,
    pub vertices: Vec<(u64, u64)>,
    /// x-steps read as q1-steps, y-steps as q2-steps.
    pub word: Vec<StepLabel>,
}

impl LatticePath {
    /// Largest `|(x_j - x_i) s - (y_j - y_i) r|` over all vertex pairs.
    pub fn max_deviation(&self) -> u64 {
        let dev: Vec<i128> = self
            .vertices
            .iter()
            .map(|&(x, y)| x as i128 * self.s as i128 - y as i128 * self.r as i128)
            .collect();
        let hi = dev.iter().max().copied().unwrap_or(0);
        let lo = dev.iter().min().copied().unwrap_or(0);
        (hi - lo) as u64
    }

    /// Whether every pair of vertices stays within `r + s - 1` of the line `s·x = r·y`.
    pub fn within_bound(&self) -> bool {
        self.max_deviation() + 1 <= (self.r + self.s).max(1)
    }
}

/// Greedy path from `(0, 0)` to `(r, s)` hugging the line `s·x = r·y`:
/// take an x-step when `s·x ≤ r·y` (ties included), otherwise a y-step;
/// once a coordinate is exhausted only the other step remains.
pub fn lattice_path(r: u64, s: u64) -> LatticePath {
    let mut vertices = vec![(0, 0)];
    let mut word = Vec::with_capacity((r + s) as usize);
    let (mut x, mut y) = (0u64, 0u64);
    while x < r || y < s {
        let x_step = if x == r {
            false
        } else if y == s {
            true
        } else {
            s as u128 * x as u128 <= r as u128 * y as u128
        };
        if x_step {
            x += 1;
            word.push(StepLabel::Q1);
        } else {
            y += 1;
            word.push(StepLabel::Q2);
        }
        vertices.push((x, y));
    }
    LatticePath { r, s, vertices, word }
}

/// The element `C_1 ⋯ C_k` of `T(r, s)`, `k = gcd(r, s, l)`, where `C_j` walks
/// the staircase word of `(r/k, s/k)` from `1 + (j - 1)(q2 - q1)`.
pub fn canonical_element(params: &GroupParams, r: u64, s: u64) -> Result<SteppedPermutation> {
    super::circulant::require_distinct_steps(params)?;
    let (p, q1, q2) = (params.p(), params.q1(), params.q2());
    let total = r * q1 + s * q2;
    if r + s == 0 || r + s > p || total % p != 0 {
        return Err(Error::NotInSupport { r, s });
    }
    let l = total / p;
    let k = gcd3(r, s, l);
    let word = lattice_path(r / k, s / k).word;

    let mut images: Vec<u64> = (1..=p).collect();
    let mut assigned = vec![false; p as usize];
    for j in 0..k {
        let mut x = (j * (q2 - q1)) % p + 1;
        for &step in &word {
            let m = if step == StepLabel::Q1 { q1 } else { q2 };
            let next = (x - 1 + m) % p + 1;
            if std::mem::replace(&mut assigned[(x - 1) as usize], true) {
                return Err(Error::LemmaViolation(format!("cycle {} revisits {x}", j + 1)));
            }
            images[(x - 1) as usize] = next;
            x = next;
        }
        if x != (j * (q2 - q1)) % p + 1 {
            return Err(Error::LemmaViolation(format!("cycle {} does not close", j + 1)));
        }
    }
    let sigma = SteppedPermutation::from_images(params, images)?;
    if (sigma.r(), sigma.s()) != (r, s) {
        return Err(Error::LemmaViolation(format!(
            "constructed element lies in T({}, {}) instead of T({r}, {s})",
            sigma.r(),
            sigma.s()
        )));
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::stepped::enumerate_t;
    use StepLabel::*;

    #[test]
    fn path_examples() {
        assert_eq!(lattice_path(3, 0).word, vec![Q1, Q1, Q1]);
        let p = lattice_path(1, 1);
        assert_eq!(p.vertices, vec![(0, 0), (1, 0), (1, 1)]);
        assert_eq!(p.word, vec![Q1, Q2]);
        let p = lattice_path(2, 3);
        assert!(p.vertices.iter().all(|&(x, y)| (x as i64 * 3 - y as i64 * 2).abs() <= 4));
        assert!(p.within_bound());
        assert_eq!(lattice_path(0, 2).word, vec![Q2, Q2]);
    }

    #[test]
    fn paths_respect_the_bound() {
        for r in 0..=30 {
            for s in 0..=30 {
                if r + s == 0 {
                    continue;
                }
                let path = lattice_path(r, s);
                assert_eq!(path.vertices.last(), Some(&(r, s)));
                assert!(path.within_bound(), "({r}, {s}) deviates by {}", path.max_deviation());
            }
        }
    }

    #[test]
    fn witness_examples() {
        let params = GroupParams::definite(6, 2, 3).unwrap();
        let sigma = canonical_element(&params, 3, 2).unwrap();
        assert!(enumerate_t(&params, 3, 2).unwrap().contains(&sigma));
        assert_eq!(canonical_element(&params, 6, 0).unwrap().cycle_notation(), "(1 3 5)(2 4 6)");
        assert!(matches!(canonical_element(&params, 1, 1), Err(Error::NotInSupport { r: 1, s: 1 })));
    }
}
