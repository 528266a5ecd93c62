mod args;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use quadrisig::asymptotics::{convergence_table, weight_counts};
use quadrisig::oracle::{canonical_element, cycle_geometry, cycle_stats, SteppedPermutation, DEFAULT_ORACLE_MAX_P};
use quadrisig::{cr_map, expand, expand_modular, signature, GroupParams};
use serde::Serialize;

use args::{Backend, Cli, Command, ExampleName, ReportFormat, TableFormat, EXPAND_MAX_P, SWEEP_MAX_P};

/// A failure with its exit status.
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, kind: "usage".into(), message: message.into() }
    }
}

impl From<quadrisig::Error> for Failure {
    fn from(e: quadrisig::Error) -> Self {
        Failure { code: 2, kind: e.kind().into(), message: e.to_string() }
    }
}

#[derive(Serialize)]
struct ErrorLine<'a> {
    error: &'a str,
    message: &'a str,
}

fn emit_error(kind: &str, message: &str) {
    let line = serde_json::to_string(&ErrorLine { error: kind, message: message.trim() }).expect("plain strings serialize");
    eprintln!("{line}");
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialize");
    s.push('\n');
    s
}

fn json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn guard(force: bool, what: &'static str, p: u64, max: u64) -> Result<(), Failure> {
    if p > max && !force {
        return Err(quadrisig::Error::SizeGuard { what, p, max }.into());
    }
    Ok(())
}

/// The worked examples, regenerated from the library.
fn example(name: ExampleName) -> Result<String, Failure> {
    #[derive(Serialize)]
    struct ExpansionExample {
        expansion: render::ExpansionOut,
        signature: render::SignatureOut,
        weight_counts: Vec<u64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        cr_map: Option<render::CrMapOut>,
    }
    #[derive(Serialize)]
    struct PermutationExample<'a> {
        member: render::WitnessOut,
        geometry: Vec<render::GeometryOut<'a>>,
    }

    match name {
        ExampleName::Phi623 | ExampleName::Phi211 => {
            let params = if name == ExampleName::Phi623 {
                GroupParams::definite(6, 2, 3)?
            } else {
                GroupParams::indefinite(2, 1, 1)?
            };
            let poly = expand(&params)?;
            let counts = weight_counts(&params)?.counts[1..].to_vec();
            let cr = if name == ExampleName::Phi211 { Some(render::cr_map(&cr_map(&params)?, &poly)) } else { None };
            Ok(json_pretty(&ExpansionExample {
                expansion: render::expansion(&params, &poly)?,
                signature: render::signature(signature(&params)),
                weight_counts: counts,
                cr_map: cr,
            }))
        }
        ExampleName::T24 => {
            let params = GroupParams::definite(24, 3, 16)?;
            let sigma = SteppedPermutation::from_cycles(
                &params,
                &[vec![20, 23, 2, 18, 21, 24, 3, 19, 22, 1, 4], vec![7, 10, 13, 5, 8, 11, 14, 6, 9, 12, 15]],
            )?;
            let cycles = sigma.cycles();
            let geoms: Vec<_> = cycles.iter().map(|c| cycle_geometry(c, &params)).collect::<Result<_, _>>()?;
            let geometry = cycles
                .iter()
                .zip(&geoms)
                .map(|(c, g)| render::GeometryOut { cycle: c.to_string(), geometry: g })
                .collect();
            Ok(json_pretty(&PermutationExample { member: render::witness(&sigma)?, geometry }))
        }
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let force = cli.force;
    match &cli.command {
        Command::Expand { triple, backend } => {
            let params = GroupParams::new(triple.p, triple.q1, triple.q2, triple.form)?;
            guard(force, "expand", params.p(), EXPAND_MAX_P)?;
            let use_modular = match backend {
                Backend::Auto => params.p() > 32,
                Backend::Reference => false,
                Backend::Modular => true,
            };
            let poly = if use_modular { expand_modular(&params)? } else { expand(&params)? };
            Ok((json_line(&render::expansion(&params, &poly)?), 0))
        }
        Command::Signature { triple } => {
            let params = GroupParams::new(triple.p, triple.q1, triple.q2, triple.form)?;
            Ok((json_line(&render::signature(signature(&params))), 0))
        }
        Command::Sweep { q1, q2, form, p_min, p_max, p_step, format } => {
            if p_min > p_max || *p_step == 0 {
                return Err(Failure::usage("sweep needs p-min <= p-max and p-step >= 1"));
            }
            guard(force, "sweep", *p_max, SWEEP_MAX_P)?;
            let ps: Vec<u64> = (*p_min..=*p_max).step_by(*p_step as usize).collect();
            let report = convergence_table(*q1, *q2, *form, &ps)?;
            for (p, reason) in &report.skipped {
                let line = serde_json::json!({ "notice": "skipped", "p": p, "reason": reason });
                eprintln!("{line}");
            }
            let body = match format {
                TableFormat::Csv => render::sweep_csv(&report),
                TableFormat::Json => json_line(&render::sweep_json(&report)),
            };
            Ok((body, 0))
        }
        Command::Verify { p_max, format } => {
            guard(force, "verify", *p_max, EXPAND_MAX_P)?;
            let oracle_max = if force { *p_max } else { DEFAULT_ORACLE_MAX_P };
            let report = quadrisig::verify::verify_with(*p_max, oracle_max, 0x9e37_79b9);
            let body = match format {
                ReportFormat::Text => format!("{report}\n"),
                ReportFormat::Json => json_line(&report),
            };
            Ok((body, if report.passed() { 0 } else { 1 }))
        }
        Command::Witness { p, q1, q2, r, s, format } => {
            let params = GroupParams::definite(*p, *q1, *q2)?;
            let sigma = canonical_element(&params, *r, *s)?;
            cycle_stats(&sigma)?;
            let w = render::witness(&sigma)?;
            let body = match format {
                ReportFormat::Json => json_line(&w),
                ReportFormat::Text => render::witness_text(&w),
            };
            Ok((body, 0))
        }
        Command::Example { name } => Ok((example(*name)?, 0)),
    }
}

fn write_output(cli: &Cli, body: &str) -> Result<(), Failure> {
    let io_fail = |e: std::io::Error| Failure { code: 2, kind: "io".into(), message: e.to_string() };
    match &cli.output {
        Some(path) => std::fs::write(path, body).map_err(io_fail),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|()| out.flush()).map_err(io_fail)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            emit_error("usage", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };

    if let Some(n) = cli.threads {
        if n == 0 {
            emit_error("usage", "--threads must be at least 1");
            return ExitCode::from(2);
        }
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }

    let result = run(&cli).and_then(|(body, code)| write_output(&cli, &body).map(|()| code));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            emit_error(&f.kind, &f.message);
            ExitCode::from(f.code)
        }
    }
}
