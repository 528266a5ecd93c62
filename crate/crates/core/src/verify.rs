//! Cross-checks of every backend and structural claim up to a given order.
//!
//! Each check is an independent oracle pairing; a report lists case counts,
//! failure counts and the first few failing cases. Notes carry comparisons
//! that are informative but are not expected to agree.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::Signed;
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde::Serialize;

use crate::arith::{gcd, gcd3};
use crate::asymptotics::{convergence_table, weight_profile};
use crate::expand::{cr_map, expand, phi_float};
use crate::modular::expand_modular;
use crate::oracle::{
    all_classes, canonical_element, cycle_geometry, cycle_stats, det_via_permutations_bounded, lattice_path,
    class_coefficient, DEFAULT_ORACLE_MAX_P,
};
use crate::params::{Form, GroupParams};
use crate::signature::{printed_statement_positive, sign_rule, support, Sign};

const MAX_RECORDED_FAILURES: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub examples: Vec<String>,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Note {
    pub name: &'static str,
    pub agree: u64,
    pub disagree: u64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub p_max: u64,
    pub oracle_p_max: u64,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<Note>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status} {:<36} cases={:<7} failures={:<4} {:>8.3}s",
                c.name,
                c.cases,
                c.failures,
                c.elapsed.as_secs_f64()
            )?;
            for e in &c.examples {
                writeln!(f, "     {e}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "NOTE {:<36} agree={:<7} disagree={:<7} {}", n.name, n.agree, n.disagree, n.detail)?;
        }
        let verdict = if self.passed() { "all checks passed" } else { "verification FAILED" };
        write!(f, "{verdict} (p <= {}, oracle p <= {})", self.p_max, self.oracle_p_max)
    }
}

struct Tally {
    name: &'static str,
    cases: u64,
    failures: u64,
    examples: Vec<String>,
    started: Instant,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, failures: 0, examples: Vec::new(), started: Instant::now() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_RECORDED_FAILURES {
                self.examples.push(describe());
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            examples: self.examples,
            elapsed: self.started.elapsed(),
        }
    }
}

/// Every faithful `(p, q1, q2)` with `p <= p_max` and `0 <= q1, q2 < p`.
pub fn faithful_triples(p_max: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for p in 1..=p_max {
        for q1 in 0..p {
            for q2 in 0..p {
                if gcd3(p, q1, q2) == 1 {
                    out.push((p, q1, q2));
                }
            }
        }
    }
    out
}

/// Faithful triples with `1 <= q1 < q2 < p`, the oracle's domain.
pub fn oracle_triples(p_max: u64) -> Vec<(u64, u64, u64)> {
    faithful_triples(p_max).into_iter().filter(|&(_, q1, q2)| 1 <= q1 && q1 < q2).collect()
}

fn both_forms(p: u64, q1: u64, q2: u64) -> [GroupParams; 2] {
    let d = GroupParams::definite(p, q1, q2).expect("faithful triple");
    [d, d.with_form(Form::Indefinite)]
}

fn check_backends(p_max: u64) -> CheckResult {
    let mut t = Tally::new("expand = expand_modular");
    for (p, q1, q2) in faithful_triples(p_max) {
        for params in both_forms(p, q1, q2) {
            let ok = match (expand(&params), expand_modular(&params)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            };
            t.record(ok, || format!("{params}"));
        }
    }
    t.finish()
}

fn check_determinant(oracle_max: u64) -> CheckResult {
    let mut t = Tally::new("expand = det_via_permutations");
    for (p, q1, q2) in oracle_triples(oracle_max) {
        for params in both_forms(p, q1, q2) {
            let ok = match (expand(&params), det_via_permutations_bounded(&params, oracle_max)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            };
            t.record(ok, || format!("{params}"));
        }
    }
    t.finish()
}

/// Class sizes against coefficients, cycle-structure lemmas, fixed-point
/// partition by V-sets, and witness membership, from one enumeration per triple.
fn check_classes(oracle_max: u64) -> [CheckResult; 4] {
    let mut sizes = Tally::new("|T(r,s)| = |coefficient|");
    let mut lemmas = Tally::new("cycle-structure lemmas");
    let mut vsets = Tally::new("V-sets partition fixed points");
    let mut witness = Tally::new("witness in T(r,s)");
    for (p, q1, q2) in oracle_triples(oracle_max) {
        let [definite, indefinite] = both_forms(p, q1, q2);
        let (Ok(phi), Ok(phi_u11), Ok(classes)) =
            (expand(&definite), expand(&indefinite), all_classes(&definite, oracle_max))
        else {
            sizes.record(false, || format!("{definite}: backend error"));
            continue;
        };

        let nonempty: BTreeSet<(u64, u64)> = classes.keys().copied().filter(|&(r, s)| r + s > 0).collect();
        let nonzero: BTreeSet<(u64, u64)> = phi.terms().map(|(r, s, _)| (r, s)).collect();
        sizes.record(nonempty == nonzero, || format!("{definite}: nonempty classes differ from nonzero terms"));

        for (&(r, s), members) in &classes {
            if r + s == 0 {
                continue;
            }
            let l = (r * q1 + s * q2) / p;
            let want = class_coefficient(r, s, l, members.len());
            let flipped = if s % 2 == 0 { want.clone() } else { -want.clone() };
            sizes.record(phi.coeff(r, s) == want && phi_u11.coeff(r, s) == flipped, || {
                format!("{definite} ({r},{s}): |T| = {}, coefficient {}", members.len(), phi.coeff(r, s))
            });

            let types: BTreeSet<_> = members.iter().map(|m| m.cycle_type()).collect();
            lemmas.record(types.len() == 1, || format!("{definite} T({r},{s}) has {} cycle types", types.len()));
            for sigma in members {
                let res = cycle_stats(sigma);
                lemmas.record(res.is_ok(), || res.unwrap_err().to_string());
                for cycle in sigma.cycles() {
                    let Ok(geom) = cycle_geometry(&cycle, &definite) else { continue };
                    let mut covered = geom.v_sets.concat();
                    covered.sort_unstable();
                    let outside: Vec<u64> = (1..=p).filter(|x| !cycle.points.contains(x)).collect();
                    vsets.record(covered == outside, || format!("{definite} {sigma}: cycle {cycle}"));
                }
            }

            let ok = canonical_element(&definite, r, s).is_ok_and(|w| members.contains(&w));
            witness.record(ok, || format!("{definite} ({r},{s})"));
        }
    }
    [sizes.finish(), lemmas.finish(), vsets.finish(), witness.finish()]
}

/// Support and sign rule against the expansion, plus the degree and
/// integrality of every expanded monomial. Also tallies the printed
/// predicates for the report notes.
fn check_sign_law(p_max: u64, notes: &mut Vec<Note>) -> [CheckResult; 2] {
    let mut law = Tally::new("support & sign rule");
    let mut degree = Tally::new("degree r+s <= p, p | weight");
    let (mut printed_agree, mut printed_disagree) = (0, 0);
    let (mut prose_agree, mut prose_disagree) = (0, 0);
    for (p, q1, q2) in faithful_triples(p_max) {
        for params in both_forms(p, q1, q2) {
            let Ok(phi) = expand(&params) else {
                law.record(false, || format!("{params}: expansion failed"));
                continue;
            };
            let predicted: BTreeSet<(u64, u64, Sign)> = support(&params).iter().map(|e| (e.r, e.s, e.sign)).collect();
            let actual: BTreeSet<(u64, u64, Sign)> =
                phi.terms().map(|(r, s, c)| (r, s, Sign::from_positive(c.is_positive()))).collect();
            law.record(predicted == actual, || {
                let diff: Vec<_> = predicted.symmetric_difference(&actual).take(3).collect();
                format!("{params}: {diff:?}")
            });
            for (r, s, _) in phi.terms() {
                degree.record(r + s <= p && params.weight(r, s).is_some(), || format!("{params}: x^{r} y^{s}"));
            }

            for e in support(&params) {
                match params.form() {
                    Form::Definite => {
                        if printed_statement_positive(&params, e.l) == (e.sign == Sign::Plus) {
                            printed_agree += 1;
                        } else {
                            printed_disagree += 1;
                        }
                    }
                    Form::Indefinite if q1 % 2 == 1 && q2 % 2 == 1 && e.l % 2 == 1 => {
                        let prose_positive = e.s % 2 == 1;
                        if prose_positive == (sign_rule(Form::Indefinite, e.r, e.s, e.l) == Sign::Plus) {
                            prose_agree += 1;
                        } else {
                            prose_disagree += 1;
                        }
                    }
                    Form::Indefinite => {}
                }
            }
        }
    }
    notes.push(Note {
        name: "printed gcd(q1,q2,l) rule",
        agree: printed_agree,
        disagree: printed_disagree,
        detail: "definite terms; working rule is gcd(r,s,l) odd".into(),
    });
    notes.push(Note {
        name: "odd-weight odd-s prose",
        agree: prose_agree,
        disagree: prose_disagree,
        detail: "indefinite, q1 and q2 odd, odd weight; working rule is s + gcd(r,s,l) odd".into(),
    });
    [law.finish(), degree.finish()]
}

fn check_lattice_gap(p_max: u64) -> CheckResult {
    let mut t = Tally::new("support line separation");
    for (p, q1, q2) in faithful_triples(p_max.max(2)) {
        if gcd(q1, q2) != 1 {
            continue;
        }
        let params = GroupParams::definite(p, q1, q2).expect("faithful");
        let pts: Vec<(i64, i64)> = support(&params).iter().map(|e| (e.r as i64, e.s as i64)).collect();
        for &(a, b) in &pts {
            for &(r, s) in &pts {
                let d = s * a - r * b;
                t.record(d == 0 || d.unsigned_abs() >= p, || format!("{params}: ({a},{b}) vs ({r},{s})"));
            }
        }
    }
    for r in 0..=p_max {
        for s in 0..=p_max {
            if r + s > 0 {
                let path = lattice_path(r, s);
                t.record(path.within_bound() && path.vertices.last() == Some(&(r, s)), || {
                    format!("lattice path ({r},{s}) deviates by {}", path.max_deviation())
                });
            }
        }
    }
    t.finish()
}

fn check_weight_bounds(p_max: u64) -> CheckResult {
    let mut t = Tally::new("weight-count bounds");
    for (p, q1, q2) in faithful_triples(p_max) {
        if q1 == 0 || q1 > q2 || gcd(q1, q2) != 1 {
            continue;
        }
        let res = weight_profile(&GroupParams::definite(p, q1, q2).expect("faithful"));
        t.record(res.is_ok(), || res.unwrap_err().to_string());
    }
    t.finish()
}

fn check_cr_identity(p_max: u64, seed: u64) -> CheckResult {
    let mut t = Tally::new("CR map |F|^2 - |G|^2 = Phi");
    let mut rng = StdRng::seed_from_u64(seed);
    for (p, q1, q2) in faithful_triples(p_max.min(20)) {
        for params in both_forms(p, q1, q2) {
            let Ok(map) = cr_map(&params) else {
                t.record(false, || format!("{params}: expansion failed"));
                continue;
            };
            for _ in 0..4 {
                let mut c = || Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
                let (z1, z2) = (c(), c());
                let (f, g) = map.norms_sq(z1, z2);
                let phi = phi_float(&params, z1.norm_sqr(), z2.norm_sqr());
                let rel = ((f - g) - phi).abs() / (f + g).max(1.0);
                t.record(rel <= 1e-9, || format!("{params} at ({z1}, {z2}): relative error {rel:e}"));
            }
        }
    }
    t.finish()
}

fn check_limits() -> CheckResult {
    let mut t = Tally::new("limit ratios, error <= 5q2^2/p");
    let ps: Vec<u64> = (0..8).flat_map(|i| [10_000 + 1_237 * i, 10_001 + 1_237 * i]).collect();
    for (q1, q2) in [(1, 2), (1, 3), (2, 3), (3, 4), (2, 5)] {
        for form in [Form::Definite, Form::Indefinite] {
            let Ok(rep) = convergence_table(q1, q2, form, &ps) else {
                t.record(false, || format!("({q1},{q2}) {form}: table failed"));
                continue;
            };
            for row in &rep.rows {
                let scaled = crate::arith::rational_to_f64(&row.scaled_error());
                t.record(scaled <= (5 * q2 * q2) as f64, || {
                    format!("({q1},{q2}) {form} p={}: |ratio - limit| * p = {scaled:.3}", row.p)
                });
            }
        }
    }
    t.finish()
}

/// Runs every check for groups of order up to `p_max`; permutation-oracle
/// checks are capped at `oracle_max_p`.
pub fn verify_with(p_max: u64, oracle_max_p: u64, seed: u64) -> VerifyReport {
    let oracle_p = p_max.min(oracle_max_p);
    let mut notes = Vec::new();
    let mut checks = vec![check_backends(p_max), check_determinant(oracle_p)];
    checks.extend(check_classes(oracle_p));
    checks.extend(check_sign_law(p_max, &mut notes));
    checks.push(check_lattice_gap(p_max));
    checks.push(check_weight_bounds(p_max));
    checks.push(check_cr_identity(p_max, seed));
    checks.push(check_limits());
    VerifyReport { p_max, oracle_p_max: oracle_p, checks, notes }
}

pub fn verify(p_max: u64) -> VerifyReport {
    verify_with(p_max, DEFAULT_ORACLE_MAX_P, 0x9e37_79b9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let report = verify(7);
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.len(), 12);
        let printed = &report.notes[0];
        assert!(printed.agree + printed.disagree > 0);
    }

    #[test]
    fn triple_lists() {
        assert_eq!(faithful_triples(1), vec![(1, 0, 0)]);
        assert!(oracle_triples(6).contains(&(6, 2, 3)));
        assert!(!oracle_triples(6).contains(&(6, 2, 4)));
    }
}
