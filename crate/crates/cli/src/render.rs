//! Serializable views of library results.

use num_traits::Signed;
use quadrisig::arith::rational_to_string;
use quadrisig::asymptotics::RatioReport;
use quadrisig::oracle::{CycleGeometry, CycleStat, SteppedPermutation};
use quadrisig::{CrMap, Error, Form, GroupParams, Result, SignaturePair, SparseExactPolynomial};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct TermOut {
    pub r: u64,
    pub s: u64,
    pub l: u64,
    pub coeff: String,
    pub sign: i8,
}

#[derive(Debug, Serialize)]
pub struct ExpansionOut {
    pub p: u64,
    pub q1: u64,
    pub q2: u64,
    pub form: Form,
    pub polynomial: String,
    pub terms: Vec<TermOut>,
}

pub fn expansion(params: &GroupParams, poly: &SparseExactPolynomial) -> Result<ExpansionOut> {
    let mut terms = Vec::with_capacity(poly.len());
    for (r, s, l, c) in poly.terms_by_weight(params) {
        let l = l.ok_or_else(|| Error::LemmaViolation(format!("x^{r} y^{s} has non-integral weight")))?;
        terms.push(TermOut { r, s, l, coeff: c.to_string(), sign: if c.is_positive() { 1 } else { -1 } });
    }
    Ok(ExpansionOut {
        p: params.p(),
        q1: params.q1(),
        q2: params.q2(),
        form: params.form(),
        polynomial: poly.to_string(),
        terms,
    })
}

#[derive(Debug, Serialize)]
pub struct SignatureOut {
    pub n_plus: u64,
    pub n_minus: u64,
    pub ratio: String,
}

pub fn signature(pair: SignaturePair) -> SignatureOut {
    let ratio = pair.ratio().map_or_else(|| "undefined".to_string(), |q| rational_to_string(&q));
    SignatureOut { n_plus: pair.n_plus, n_minus: pair.n_minus, ratio }
}

#[derive(Debug, Serialize)]
pub struct ComponentOut {
    pub r: u64,
    pub s: u64,
    /// Square of the component's coefficient, exact.
    pub coeff_sq: String,
    pub magnitude: f64,
}

#[derive(Debug, Serialize)]
pub struct CrMapOut {
    pub f: Vec<ComponentOut>,
    pub g: Vec<ComponentOut>,
}

pub fn cr_map(map: &CrMap, poly: &SparseExactPolynomial) -> CrMapOut {
    let comp = |c: &quadrisig::CrComponent| ComponentOut {
        r: c.r,
        s: c.s,
        coeff_sq: poly.coeff(c.r, c.s).abs().to_string(),
        magnitude: c.magnitude,
    };
    CrMapOut { f: map.f_terms.iter().map(comp).collect(), g: map.g_terms.iter().map(comp).collect() }
}

#[derive(Debug, Serialize)]
pub struct WitnessOut {
    pub p: u64,
    pub q1: u64,
    pub q2: u64,
    pub r: u64,
    pub s: u64,
    pub l: u64,
    pub k: u64,
    pub sign: i8,
    pub one_line: Vec<u64>,
    pub cycles: String,
    pub fixed_points: Vec<u64>,
    pub cycle_stats: Vec<CycleStat>,
}

pub fn witness(sigma: &SteppedPermutation) -> Result<WitnessOut> {
    let report = quadrisig::oracle::cycle_stats(sigma)?;
    let params = sigma.params();
    Ok(WitnessOut {
        p: params.p(),
        q1: params.q1(),
        q2: params.q2(),
        r: report.r,
        s: report.s,
        l: report.l,
        k: report.k,
        sign: report.sign,
        one_line: sigma.images().to_vec(),
        cycles: sigma.cycle_notation(),
        fixed_points: sigma.fixed_points(),
        cycle_stats: report.cycles,
    })
}

pub fn witness_text(w: &WitnessOut) -> String {
    let one_line: Vec<String> = w.one_line.iter().map(ToString::to_string).collect();
    let mut out = format!(
        "T({},{}) for ({};{},{}): l={} k={} sign={:+}\none-line: {}\ncycles: {}\n",
        w.r,
        w.s,
        w.p,
        w.q1,
        w.q2,
        w.l,
        w.k,
        w.sign,
        one_line.join(" "),
        w.cycles
    );
    for c in &w.cycle_stats {
        out.push_str(&format!("cycle: r={} s={} l={}\n", c.r, c.s, c.l));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct GeometryOut<'a> {
    pub cycle: String,
    #[serde(flatten)]
    pub geometry: &'a CycleGeometry,
}

pub const CSV_HEADER: &str = "p,q1,q2,form,n_plus,n_minus,ratio,limit,abs_err,ratio_float";

pub fn sweep_csv(report: &RatioReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{:.12}\n",
            row.p,
            report.q1,
            report.q2,
            report.form,
            row.n_plus,
            row.n - row.n_plus,
            rational_to_string(&row.empirical),
            rational_to_string(&row.limit),
            rational_to_string(&row.abs_err),
            quadrisig::arith::rational_to_f64(&row.empirical)
        ));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct SweepRowOut {
    pub p: u64,
    pub n_plus: u64,
    pub n_minus: u64,
    pub ratio: String,
    pub limit: String,
    pub abs_err: String,
    pub ratio_float: f64,
    pub half_deviation: String,
}

#[derive(Debug, Serialize)]
pub struct SkippedOut {
    pub p: u64,
    pub reason: String,
}

#[derive(Debug, Serialize)]
pub struct SweepOut {
    pub q1: u64,
    pub q2: u64,
    pub form: Form,
    pub rows: Vec<SweepRowOut>,
    pub skipped: Vec<SkippedOut>,
}

pub fn sweep_json(report: &RatioReport) -> SweepOut {
    SweepOut {
        q1: report.q1,
        q2: report.q2,
        form: report.form,
        rows: report
            .rows
            .iter()
            .map(|row| SweepRowOut {
                p: row.p,
                n_plus: row.n_plus,
                n_minus: row.n - row.n_plus,
                ratio: rational_to_string(&row.empirical),
                limit: rational_to_string(&row.limit),
                abs_err: rational_to_string(&row.abs_err),
                ratio_float: quadrisig::arith::rational_to_f64(&row.empirical),
                half_deviation: rational_to_string(&row.half_deviation),
            })
            .collect(),
        skipped: report.skipped.iter().map(|(p, reason)| SkippedOut { p: *p, reason: reason.clone() }).collect(),
    }
}
