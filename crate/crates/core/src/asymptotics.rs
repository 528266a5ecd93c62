//! Weight counts and positivity ratios as `p` grows.

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{gcd, gcd3, ratio, Rational};
use crate::error::{Error, Result};
use crate::params::{Form, GroupParams};
use crate::signature::{for_each_support, sign_rule, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Number of support monomials of each weight `1..=q2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProfile {
    pub p: u64,
    pub q1: u64,
    pub q2: u64,
    /// `counts[l]` is `N_l`; index 0 is unused.
    pub counts: Vec<u64>,
    pub n: u64,
    pub n_even: u64,
    pub n_odd: u64,
}

impl WeightProfile {
    pub fn n_l(&self, l: u64) -> u64 {
        self.counts.get(l as usize).copied().unwrap_or(0)
    }

    /// Predicted `N_l`: `l p / (q1 q2)` up to `q1`, then `(q2 - l) p / (q2 (q2 - q1))`.
    pub fn predicted(&self, l: u64) -> Rational {
        if l <= self.q1 {
            ratio(l * self.p, self.q1 * self.q2)
        } else {
            ratio((self.q2 - l) * self.p, self.q2 * (self.q2 - self.q1))
        }
    }

    /// Exact `|N - p/2|`.
    pub fn half_deviation(&self) -> Rational {
        (Rational::from_integer(self.n.into()) - ratio(self.p, 2)).abs()
    }

    /// Checks `|N_l - predicted(l)| <= 1` for every `1 <= l <= q2`, exactly,
    /// by cross-multiplying with the predicted value's denominator.
    pub fn check_weight_bounds(&self) -> Result<()> {
        let (p, q1, q2) = (self.p as i128, self.q1 as i128, self.q2 as i128);
        for l in 1..=self.q2 {
            let li = l as i128;
            let (num, den) = if l <= self.q1 { (li * p, q1 * q2) } else { ((q2 - li) * p, q2 * (q2 - q1)) };
            if (self.n_l(l) as i128 * den - num).abs() > den {
                return Err(Error::BoundViolated(format!(
                    "({};{},{}): N_{l} = {} but predicted {}",
                    self.p,
                    self.q1,
                    self.q2,
                    self.n_l(l),
                    self.predicted(l)
                )));
            }
        }
        Ok(())
    }

    /// Checks `|N - p/2| <= q2`. Only meaningful for `q1 < q2`.
    pub fn check_half_bound(&self) -> Result<()> {
        if self.half_deviation() > Rational::from_integer(self.q2.into()) {
            return Err(Error::BoundViolated(format!(
                "({};{},{}): N = {} is farther than q2 from p/2",
                self.p, self.q1, self.q2, self.n
            )));
        }
        Ok(())
    }
}

fn require_reduced_pair(q1: u64, q2: u64) -> Result<()> {
    if q1 == 0 || q1 > q2 {
        return Err(Error::InvalidParams(format!("need 1 <= q1 <= q2 (got q1={q1}, q2={q2})")));
    }
    if gcd(q1, q2) != 1 {
        return Err(Error::InvalidParams(format!("need gcd(q1, q2) = 1 (got q1={q1}, q2={q2})")));
    }
    Ok(())
}

/// Weight counts in `O(p)`, without checking any bound.
pub fn weight_counts(params: &GroupParams) -> Result<WeightProfile> {
    let (p, q1, q2) = (params.p(), params.q1(), params.q2());
    require_reduced_pair(q1, q2)?;
    let mut counts = vec![0u64; q2 as usize + 1];
    let mut n = 0;
    let mut n_even = 0;
    for_each_support(params, |_, _, l| {
        counts[l as usize] += 1;
        n += 1;
        if l % 2 == 0 {
            n_even += 1;
        }
    });
    Ok(WeightProfile { p, q1, q2, counts, n, n_even, n_odd: n - n_even })
}

/// Weight counts with the per-weight bounds checked, and `|N - p/2| <= q2`
/// checked when `q1 < q2`.
pub fn weight_profile(params: &GroupParams) -> Result<WeightProfile> {
    let profile = weight_counts(params)?;
    profile.check_weight_bounds()?;
    if profile.q1 < profile.q2 {
        profile.check_half_bound()?;
    }
    Ok(profile)
}

/// Limit of `N+ / N` along `p` of the given parity, for a reduced pair
/// `1 <= q1 < q2` (or `q1 = q2 = 1`).
pub fn limit_ratio(q1: u64, q2: u64, form: Form, p_parity: Parity) -> Result<Rational> {
    require_reduced_pair(q1, q2)?;
    let frac = |num: u64, den: u64| ratio(num, den);
    let (a, b) = (q1 % 2 == 1, q2 % 2 == 1);
    let d = q2 - q1;
    Ok(match (form, a, b) {
        (_, false, false) => unreachable!("coprime pair has an odd member"),
        (Form::Indefinite, true, true) => frac(q1 * q2 + 1, 4 * q1 * q2),
        (Form::Indefinite, true, false) => frac(q1 * d + 1, 4 * q1 * d),
        (Form::Indefinite, false, true) => match p_parity {
            Parity::Odd => frac(q2 * d + 1, 4 * q2 * d),
            Parity::Even => frac(3 * q2 * d - 1, 4 * q2 * d),
        },
        (Form::Definite, true, true) => frac(3 * q1 * q2 + 1, 4 * q1 * q2),
        (Form::Definite, true, false) => frac(3 * q1 * d + 1, 4 * q1 * d),
        (Form::Definite, false, true) => frac(3 * q2 * d - 1, 4 * q2 * d),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub p: u64,
    pub parity: Parity,
    pub n_plus: u64,
    pub n: u64,
    pub empirical: Rational,
    pub limit: Rational,
    pub abs_err: Rational,
    /// `|N - p/2|`.
    pub half_deviation: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub q1: u64,
    pub q2: u64,
    pub form: Form,
    /// Sorted by `p`.
    pub rows: Vec<RatioRow>,
    /// `(p, reason)` for values that were not processed.
    pub skipped: Vec<(u64, String)>,
}

fn ratio_row(q1: u64, q2: u64, form: Form, p: u64) -> Result<RatioRow> {
    if q2 >= p {
        return Err(Error::InvalidParams(format!("need q2 < p (q2={q2})")));
    }
    if gcd3(p, q1, q2) != 1 {
        return Err(Error::NotFaithful { p, q1, q2, gcd: gcd3(p, q1, q2) });
    }
    let params = GroupParams::new(p, q1, q2, form)?;
    let mut n_plus = 0u64;
    let mut n = 0u64;
    for_each_support(&params, |r, s, l| {
        n += 1;
        if sign_rule(form, r, s, l) == Sign::Plus {
            n_plus += 1;
        }
    });
    if n == 0 {
        return Err(Error::InvalidParams("empty support".into()));
    }
    let parity = Parity::of(p);
    let empirical = ratio(n_plus, n);
    let limit = limit_ratio(q1, q2, form, parity)?;
    let abs_err = (&empirical - &limit).abs();
    let half_deviation = (Rational::from_integer(n.into()) - ratio(p, 2)).abs();
    Ok(RatioRow { p, parity, n_plus, n, empirical, limit, abs_err, half_deviation })
}

/// Empirical positivity ratios against their limits, one row per `p`, each
/// computed by the `O(p)` support walk. Values of `p` with `gcd(p, q1, q2) > 1`
/// (or `p <= q2`) are skipped and listed in `skipped`.
pub fn convergence_table(q1: u64, q2: u64, form: Form, p_list: &[u64]) -> Result<RatioReport> {
    require_reduced_pair(q1, q2)?;
    let results: Vec<(u64, Result<RatioRow>)> =
        p_list.par_iter().map(|&p| (p, ratio_row(q1, q2, form, p))).collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (p, res) in results {
        match res {
            Ok(row) => rows.push(row),
            Err(e) => skipped.push((p, e.to_string())),
        }
    }
    rows.sort_by_key(|r| r.p);
    rows.dedup_by_key(|r| r.p);
    skipped.sort();
    Ok(RatioReport { q1, q2, form, rows, skipped })
}

impl RatioRow {
    /// `|empirical - limit| * p`, the constant in an `O(1/p)` bound.
    pub fn scaled_error(&self) -> Rational {
        &self.abs_err * Rational::from_integer(self.p.into())
    }

    pub fn is_exact(&self) -> bool {
        self.abs_err.is_zero()
    }
}
