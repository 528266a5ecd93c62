//! Traversal geometry of a single cycle: where its q2-steps land, which
//! q1-runs connect them, and which fixed points each gap skips over.

use serde::Serialize;

use super::stepped::{Cycle, StepLabel};
use crate::arith::{gcd, lcm, mod_inverse};
use crate::error::{Error, Result};
use crate::params::GroupParams;

/// `x` advanced by `m` within `[p] = {1, ..., p}`.
fn advance(x: u64, m: u64, p: u64) -> u64 {
    (x - 1 + m) % p + 1
}

/// Whether `points` sit, in order, on the orbit of `points[0]` under `+m`
/// inside `[p]`. A final point equal to the first counts as one full orbit.
pub fn is_m_ordered(points: &[u64], m: u64, p: u64) -> Result<bool> {
    if m == 0 || p == 0 {
        return Err(Error::OutOfRange(format!("need m, p >= 1 (got m={m}, p={p})")));
    }
    let orbit = lcm(m, p) / m;
    if points.len() < 3 || points.len() as u64 > orbit {
        return Err(Error::OutOfRange(format!(
            "m-ordered sequences have length between 3 and {orbit}, got {}",
            points.len()
        )));
    }
    if let Some(&bad) = points.iter().find(|&&x| x == 0 || x > p) {
        return Err(Error::OutOfRange(format!("point {bad} outside [1, {p}]")));
    }
    let g = gcd(p, m);
    let x1 = points[0];
    if points.iter().any(|&x| x % g != x1 % g) {
        return Ok(false);
    }
    // t*m ≡ x - x1 (mod p)  <=>  t ≡ ((x - x1)/g) * (m/g)^{-1} (mod p/g)
    let modulus = p / g;
    let inv = mod_inverse((m / g) % modulus, modulus).expect("m/g is a unit mod p/g");
    let position = |x: u64| ((x + p - x1) % p / g) as u128 * inv as u128 % modulus as u128;
    let mut last = 0u64;
    for (i, &x) in points.iter().enumerate().skip(1) {
        let mut t = position(x) as u64;
        if t == 0 {
            if i + 1 != points.len() {
                return Ok(false);
            }
            t = orbit;
        }
        if t <= last {
            return Ok(false);
        }
        last = t;
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleGeometry {
    /// Images of the q2-steps, `d_1` being the start.
    pub d_points: Vec<u64>,
    /// `e_i`: end of the q1-run that begins at `d_i`.
    pub e_points: Vec<u64>,
    /// `matching[j] = i` (1-based) when traversing `+q1` from `e_{j+1}` first
    /// meets `d_i`.
    pub matching: Vec<usize>,
    /// Points passed strictly between `e_j` and the matched d-point.
    pub v_sets: Vec<Vec<u64>>,
    /// The q1-run `d_{j+1}, ..., e_{j+1}` (indices taken cyclically).
    pub w_sets: Vec<Vec<u64>>,
}

/// Geometry of a cycle with at least one q2-step. When the cycle's start is
/// not the image of a q2-step, the traversal is rotated forward to the first
/// point that is.
pub fn cycle_geometry(cycle: &Cycle, params: &GroupParams) -> Result<CycleGeometry> {
    let n = cycle.len();
    let first_q2 = cycle.word.iter().position(|&w| w == StepLabel::Q2).ok_or(Error::NoQ2Step)?;
    // points[i] --word[i]--> points[i+1]
    let start_idx = if cycle.word[n - 1] == StepLabel::Q2 {
        0
    } else {
        (first_q2 + 1) % n
    };
    let start = cycle.points[start_idx];
    let c = cycle.rotated_to(start).expect("start lies on the cycle");

    let mut d_points = Vec::new();
    let mut e_points = Vec::new();
    let mut runs: Vec<Vec<u64>> = Vec::new();
    let mut i = 0;
    while i < n {
        d_points.push(c.points[i]);
        let mut run = vec![c.points[i]];
        while c.word[i] == StepLabel::Q1 {
            i += 1;
            run.push(c.points[i]);
        }
        e_points.push(c.points[i]);
        runs.push(run);
        i += 1;
    }

    let p = params.p();
    let s_k = d_points.len();
    let mut matching = Vec::with_capacity(s_k);
    let mut v_sets = Vec::with_capacity(s_k);
    for &e in &e_points {
        let mut v = Vec::new();
        let mut x = advance(e, params.q1(), p);
        let hit = loop {
            if let Some(idx) = d_points.iter().position(|&d| d == x) {
                break idx;
            }
            v.push(x);
            x = advance(x, params.q1(), p);
        };
        matching.push(hit + 1);
        v_sets.push(v);
    }
    let w_sets = (0..s_k).map(|j| runs[(j + 1) % s_k].clone()).collect();
    Ok(CycleGeometry { d_points, e_points, matching, v_sets, w_sets })
}
