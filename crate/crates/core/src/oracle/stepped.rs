//! Permutations of `[p] = {1, ..., p}` whose every step `σ(j) - j` is
//! `0`, `q1` or `q2` modulo `p`, and the classes `T(r, s)` they form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::circulant::{circulant_spec, CirculantEntry, CirculantSpec};
use crate::arith::{gcd3, gcd};
use crate::error::{Error, Result};
use crate::params::{Form, GroupParams};
use crate::poly::SparseExactPolynomial;

/// Default size guard for the brute-force oracles.
pub const DEFAULT_ORACLE_MAX_P: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StepLabel {
    Fixed,
    Q1,
    Q2,
}

/// One nontrivial cycle `(x; w)`: start point and step word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    /// Points in traversal order, starting at the start point.
    pub points: Vec<u64>,
    pub word: Vec<StepLabel>,
    pub r: u64,
    pub s: u64,
    /// `(r*q1 + s*q2) / p` for this cycle alone.
    pub l: u64,
}

impl Cycle {
    pub fn start(&self) -> u64 {
        self.points[0]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same cycle traversed from `start`.
    pub fn rotated_to(&self, start: u64) -> Option<Cycle> {
        let at = self.points.iter().position(|&x| x == start)?;
        let mut points = self.points.clone();
        let mut word = self.word.clone();
        points.rotate_left(at);
        word.rotate_left(at);
        Some(Cycle { points, word, ..*self })
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        write!(f, "({})", pts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteppedPermutation {
    params: GroupParams,
    /// `images[j - 1] = σ(j)`, 1-based values.
    images: Vec<u64>,
    labels: Vec<StepLabel>,
}

impl SteppedPermutation {
    /// Validates bijectivity and step labels. `images` is one-line notation
    /// over `[p]`.
    pub fn from_images(params: &GroupParams, images: Vec<u64>) -> Result<Self> {
        super::circulant::require_distinct_steps(params)?;
        let p = params.p();
        if images.len() as u64 != p {
            return Err(Error::InvalidPermutation(format!("expected {p} images, got {}", images.len())));
        }
        let mut seen = vec![false; p as usize];
        let mut labels = Vec::with_capacity(images.len());
        for (idx, &img) in images.iter().enumerate() {
            if img == 0 || img > p {
                return Err(Error::InvalidPermutation(format!("image {img} outside [1, {p}]")));
            }
            if std::mem::replace(&mut seen[(img - 1) as usize], true) {
                return Err(Error::InvalidPermutation(format!("{img} is hit twice")));
            }
            let j = idx as u64 + 1;
            let step = (img + p - j) % p;
            let label = if step == 0 {
                StepLabel::Fixed
            } else if step == params.q1() {
                StepLabel::Q1
            } else if step == params.q2() {
                StepLabel::Q2
            } else {
                return Err(Error::InvalidPermutation(format!("{j} -> {img} is a step of {step}, not 0, q1 or q2")));
            };
            labels.push(label);
        }
        Ok(SteppedPermutation { params: *params, images, labels })
    }

    /// Builds from disjoint cycles in 1-based cycle notation; unlisted
    /// points are fixed.
    pub fn from_cycles(params: &GroupParams, cycles: &[Vec<u64>]) -> Result<Self> {
        let p = params.p();
        let mut images: Vec<u64> = (1..=p).collect();
        let mut touched = vec![false; p as usize];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > p {
                    return Err(Error::InvalidPermutation(format!("point {x} outside [1, {p}]")));
                }
                if std::mem::replace(&mut touched[(x - 1) as usize], true) {
                    return Err(Error::InvalidPermutation(format!("point {x} appears twice")));
                }
                images[(x - 1) as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(params, images)
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn images(&self) -> &[u64] {
        &self.images
    }

    pub fn labels(&self) -> &[StepLabel] {
        &self.labels
    }

    pub fn image(&self, j: u64) -> u64 {
        self.images[(j - 1) as usize]
    }

    pub fn r(&self) -> u64 {
        self.labels.iter().filter(|&&l| l == StepLabel::Q1).count() as u64
    }

    pub fn s(&self) -> u64 {
        self.labels.iter().filter(|&&l| l == StepLabel::Q2).count() as u64
    }

    pub fn fixed_points(&self) -> Vec<u64> {
        (1..=self.params.p()).filter(|&j| self.image(j) == j).collect()
    }

    /// Nontrivial cycles, each started at its smallest point, ordered by start.
    pub fn cycles(&self) -> Vec<Cycle> {
        let p = self.params.p();
        let mut seen = vec![false; p as usize];
        let mut out = Vec::new();
        for start in 1..=p {
            if seen[(start - 1) as usize] || self.image(start) == start {
                continue;
            }
            let mut points = Vec::new();
            let mut word = Vec::new();
            let mut x = start;
            while !seen[(x - 1) as usize] {
                seen[(x - 1) as usize] = true;
                points.push(x);
                word.push(self.labels[(x - 1) as usize]);
                x = self.image(x);
            }
            let r = word.iter().filter(|&&w| w == StepLabel::Q1).count() as u64;
            let s = word.len() as u64 - r;
            // each cycle closes, so r*q1 + s*q2 is a multiple of p
            let l = (r * self.params.q1() + s * self.params.q2()) / p;
            out.push(Cycle { points, word, r, s, l });
        }
        out
    }

    /// `+1` or `-1`, from `(-1)^(p - #cycles)` counting fixed points.
    pub fn sign(&self) -> i8 {
        let nontrivial = self.cycles();
        let moved: usize = nontrivial.iter().map(Cycle::len).sum();
        if (moved - nontrivial.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles.iter().map(ToString::to_string).collect()
    }

    /// Multiset of `(r_i, s_i)` over nontrivial cycles, sorted.
    pub fn cycle_type(&self) -> Vec<(u64, u64)> {
        let mut t: Vec<_> = self.cycles().iter().map(|c| (c.r, c.s)).collect();
        t.sort_unstable();
        t
    }
}

impl fmt::Display for SteppedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

fn guard(params: &GroupParams, max_p: u64) -> Result<()> {
    if params.p() > max_p {
        return Err(Error::SizeGuard { what: "permutation oracle", p: params.p(), max: max_p });
    }
    Ok(())
}

/// Depth-first walk over the nonzero entries of the circulant, one row at a
/// time, with a column bitmask for bijectivity. `budget` optionally caps the
/// number of `(fixed, q1, q2)` labels. Leaves arrive in lexicographic order
/// of label sequences (fixed < q1 < q2).
fn walk<F: FnMut(&[u64], &[StepLabel])>(spec: &CirculantSpec, budget: Option<[u64; 3]>, visit: &mut F) {
    struct State<'a, F> {
        spec: &'a CirculantSpec,
        images: Vec<u64>,
        labels: Vec<StepLabel>,
        used: u64,
        left: [u64; 3],
        visit: &'a mut F,
    }
    fn rec<F: FnMut(&[u64], &[StepLabel])>(st: &mut State<'_, F>, row: usize) {
        let p = st.spec.size();
        if row == p {
            (st.visit)(&st.images, &st.labels);
            return;
        }
        let params = *st.spec.params();
        for (slot, label, step) in [(0, StepLabel::Fixed, 0), (1, StepLabel::Q1, params.q1()), (2, StepLabel::Q2, params.q2())] {
            let col = (row + step as usize) % p;
            debug_assert_ne!(st.spec.entry(row, col), CirculantEntry::Zero);
            if st.used & (1 << col) != 0 || st.left[slot] == 0 {
                continue;
            }
            st.used |= 1 << col;
            st.left[slot] -= 1;
            st.images[row] = col as u64 + 1;
            st.labels[row] = label;
            rec(st, row + 1);
            st.left[slot] += 1;
            st.used &= !(1 << col);
        }
    }
    let p = spec.size();
    let mut st = State {
        spec,
        images: vec![0; p],
        labels: vec![StepLabel::Fixed; p],
        used: 0,
        left: budget.unwrap_or([u64::MAX; 3]),
        visit,
    };
    rec(&mut st, 0);
}

/// All permutations in `T(r, s)`: `p - r - s` fixed points, `r` q1-steps and
/// `s` q2-steps.
pub fn enumerate_t(params: &GroupParams, r: u64, s: u64) -> Result<Vec<SteppedPermutation>> {
    enumerate_t_bounded(params, r, s, DEFAULT_ORACLE_MAX_P)
}

pub fn enumerate_t_bounded(params: &GroupParams, r: u64, s: u64, max_p: u64) -> Result<Vec<SteppedPermutation>> {
    let spec = circulant_spec(params)?;
    guard(params, max_p)?;
    let p = params.p();
    if r + s > p {
        return Err(Error::OutOfRange(format!("r + s = {} exceeds p = {p}", r + s)));
    }
    let mut out = Vec::new();
    walk(&spec, Some([p - r - s, r, s]), &mut |images, labels| {
        out.push(SteppedPermutation { params: *params, images: images.to_vec(), labels: labels.to_vec() })
    });
    Ok(out)
}

/// Every nonempty class `T(r, s)`, keyed by `(r, s)`, including the identity
/// at `(0, 0)`.
pub fn all_classes(params: &GroupParams, max_p: u64) -> Result<BTreeMap<(u64, u64), Vec<SteppedPermutation>>> {
    let spec = circulant_spec(params)?;
    guard(params, max_p)?;
    let mut out: BTreeMap<(u64, u64), Vec<SteppedPermutation>> = BTreeMap::new();
    walk(&spec, None, &mut |images, labels| {
        let sigma = SteppedPermutation { params: *params, images: images.to_vec(), labels: labels.to_vec() };
        out.entry((sigma.r(), sigma.s())).or_default().push(sigma);
    });
    Ok(out)
}

/// `1 - det(C)` from the signed permutation expansion, restricted to the
/// permutations that pick nonzero circulant entries; `y -> -y` afterwards
/// for the indefinite form.
pub fn det_via_permutations(params: &GroupParams) -> Result<SparseExactPolynomial> {
    det_via_permutations_bounded(params, DEFAULT_ORACLE_MAX_P)
}

pub fn det_via_permutations_bounded(params: &GroupParams, max_p: u64) -> Result<SparseExactPolynomial> {
    let spec = circulant_spec(params)?;
    guard(params, max_p)?;
    let mut det: BTreeMap<(u64, u64), i64> = BTreeMap::new();
    walk(&spec, None, &mut |images, labels| {
        let sigma = SteppedPermutation { params: *params, images: images.to_vec(), labels: labels.to_vec() };
        // Π a_{j,σ(j)} = (-x)^r (-y)^s
        let (r, s) = (sigma.r(), sigma.s());
        let entry_sign = if (r + s) % 2 == 0 { 1 } else { -1 };
        *det.entry((r, s)).or_default() += i64::from(sigma.sign()) * entry_sign;
    });
    let det = SparseExactPolynomial::from_terms(det.into_iter().map(|(k, c)| (k, BigInt::from(c))));
    let phi = det.one_minus();
    Ok(match params.form() {
        Form::Definite => phi,
        Form::Indefinite => phi.negate_y(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleStat {
    pub r: u64,
    pub s: u64,
    pub l: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub r: u64,
    pub s: u64,
    pub l: u64,
    /// Number of nontrivial cycles.
    pub k: u64,
    pub cycles: Vec<CycleStat>,
    /// Sign of the permutation.
    pub sign: i8,
}

/// Per-cycle statistics, checked against the cycle-structure lemmas:
/// `k = gcd(r, s, l)`, `(r_i, s_i, l_i) = (r, s, l)/k`,
/// `gcd(r_i, s_i, l_i) = 1` and `sgn σ = (-1)^(r + s + gcd(r, s, l))`.
pub fn cycle_stats(sigma: &SteppedPermutation) -> Result<CycleReport> {
    let params = sigma.params();
    let (r, s) = (sigma.r(), sigma.s());
    let total = r * params.q1() + s * params.q2();
    if total % params.p() != 0 {
        return Err(Error::LemmaViolation(format!("p does not divide r*q1 + s*q2 for (r, s) = ({r}, {s})")));
    }
    let l = total / params.p();
    let cycles = sigma.cycles();
    let k = cycles.len() as u64;
    let stats: Vec<CycleStat> = cycles.iter().map(|c| CycleStat { r: c.r, s: c.s, l: c.l }).collect();
    let sign = sigma.sign();
    let report = CycleReport { r, s, l, k, cycles: stats, sign };
    if r + s == 0 {
        return Ok(report);
    }

    let g = gcd3(r, s, l);
    let violation = |msg: String| Err(Error::LemmaViolation(format!("{sigma} in T({r},{s}): {msg}")));
    for c in &cycles {
        if (c.r * params.q1() + c.s * params.q2()) % params.p() != 0 {
            return violation(format!("cycle {c} has non-integral weight"));
        }
        if gcd3(c.r, c.s, c.l) != 1 {
            return violation(format!("cycle {c} has gcd(r_i, s_i, l_i) = {}", gcd3(c.r, c.s, c.l)));
        }
        if c.r * k != r || c.s * k != s || c.l * k != l {
            return violation(format!("cycle {c} has (r_i, s_i, l_i) = ({}, {}, {}) with k = {k}", c.r, c.s, c.l));
        }
    }
    if k != g {
        return violation(format!("k = {k} but gcd(r, s, l) = {g}"));
    }
    let predicted = if (r + s + g) % 2 == 0 { 1 } else { -1 };
    if sign != predicted {
        return violation(format!("sign {sign} but (-1)^(r+s+gcd) = {predicted}"));
    }
    Ok(report)
}

/// Definite-form coefficient of `x^r y^s` predicted by its permutation class:
/// `(-1)^(gcd(r,s,l)+1) |T(r,s)|`.
pub fn class_coefficient(r: u64, s: u64, l: u64, class_size: usize) -> BigInt {
    let g = gcd(gcd(r, s), l);
    let sign = if g % 2 == 1 { 1 } else { -1 };
    BigInt::from(sign) * BigInt::from(class_size)
}
