use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use knotspace::closed::{closed_component_homology, ClosedHomology, ClosedSpace, Coefficients};
use knotspace::engine::{component_model, component_series, field_series};
use knotspace::graded::{FieldSpec, PoincarePoly};
use knotspace::integral::{
    h1_integral, reconstruct_low_degrees, torsion_witnesses, LOW_DEGREE_LIMIT,
};
use knotspace::knot::{parse, validate, KnotExpr};
use knotspace::oracle::{model_cell_count, oracle_homology};
use knotspace::scan::{scan, ScanConfig};
use knotspace::Error;

const SCHEMA: u32 = 1;
const CACHE_ENV: &str = "KNOTSPACE_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "knotspace",
    version,
    about = "Homology of spaces of knots from companionship trees"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check admissibility and print the canonical form.
    Validate { expr: String },
    /// Poincaré polynomial of the long-knot component.
    Homology {
        expr: String,
        #[arg(long, default_value = "q")]
        coeff: FieldSpec,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// First integral homology with the inversion action.
    H1 { expr: String },
    /// Certified prime-power torsion summands.
    Witnesses {
        expr: String,
        #[arg(short, long)]
        p: u64,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
    },
    /// Integral homology in degrees up to 3.
    Low { expr: String },
    /// Homology of the closed-knot component.
    Closed {
        expr: String,
        #[arg(long, default_value = "s3")]
        space: ClosedSpace,
        #[arg(long, default_value = "z")]
        coeff: Coefficients,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Low-degree torsion check over all small trees.
    Scan {
        #[arg(long, value_delimiter = ',', default_value = "3,5")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        max_nodes: usize,
    },
    /// Compares the series engine with the cell oracle.
    OracleCheck {
        expr: String,
        #[arg(long, default_value_t = 2000)]
        max_cells: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. }
            | Error::UnknownAtom(_)
            | Error::Invalid(_)
            | Error::NotPrime(_) => 2,
            Error::UnsupportedClass(_)
            | Error::UnsupportedSymmetry(_)
            | Error::MissingSymmetryData(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(Value, String), Failure>;

fn expression(text: &str) -> Result<KnotExpr, Failure> {
    let e = parse(text)?;
    let violations = validate(&e);
    if violations.is_empty() {
        Ok(e)
    } else {
        Err(Error::Invalid(violations).into())
    }
}

fn cache_path(key: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let digest = Sha256::digest(key.as_bytes());
    let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    Some(PathBuf::from(dir).join(format!("{name}.json")))
}

/// Series from the disk cache when one is configured.
fn cached_series(e: &KnotExpr, field: FieldSpec, cutoff: usize) -> Result<PoincarePoly, Failure> {
    let key = format!("series|{}|{field}|{cutoff}", e.canonicalize());
    let path = cache_path(&key);
    if let Some(p) = &path {
        if let Ok(text) = fs::read_to_string(p) {
            if let Ok(series) = serde_json::from_str::<PoincarePoly>(&text) {
                return Ok(series);
            }
        }
    }
    let series = component_series(e, field, cutoff)?;
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            let _ = fs::create_dir_all(dir);
        }
        if let Ok(text) = serde_json::to_string(&series) {
            let _ = fs::write(p, text);
        }
    }
    Ok(series)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { expr } => {
            let e = parse(&expr)?;
            let violations = validate(&e);
            if !violations.is_empty() {
                return Err(Error::Invalid(violations).into());
            }
            let canon = e.canonicalize();
            let text = format!("ok {canon}");
            Ok((
                json!({ "canonical": canon.to_string(), "violations": [] }),
                text,
            ))
        }
        Command::Homology {
            expr,
            coeff,
            max_degree,
        } => {
            let e = expression(&expr)?;
            let series = cached_series(&e, coeff, max_degree)?;
            let value = json!({
                "expr": e.canonicalize().to_string(),
                "coeff": coeff,
                "max_degree": max_degree,
                "series": series,
            });
            Ok((value, series.to_string()))
        }
        Command::H1 { expr } => {
            let e = expression(&expr)?;
            let h = h1_integral(&e)?;
            let value =
                json!({ "expr": e.canonicalize().to_string(), "h1": h, "group": h.to_string() });
            Ok((value, h.to_string()))
        }
        Command::Witnesses {
            expr,
            p,
            max_degree,
        } => {
            let e = expression(&expr)?;
            let ws = torsion_witnesses(&e, p, max_degree)?;
            let text = ws
                .iter()
                .map(|w| {
                    let rules: Vec<String> =
                        w.provenance.iter().map(|d| d.rule.to_string()).collect();
                    format!("({}, Z/{}) {}", w.degree, w.order.order(), rules.join(","))
                })
                .collect::<Vec<_>>()
                .join("\n");
            let value =
                json!({ "expr": e.canonicalize().to_string(), "prime": p, "witnesses": ws });
            Ok((value, text))
        }
        Command::Low { expr } => {
            let e = expression(&expr)?;
            let h = reconstruct_low_degrees(&e, LOW_DEGREE_LIMIT)?;
            let value = json!({ "expr": e.canonicalize().to_string(), "homology": h });
            Ok((value, h.to_string().trim_end().to_string()))
        }
        Command::Closed {
            expr,
            space,
            coeff,
            max_degree,
        } => {
            let e = expression(&expr)?;
            let r = closed_component_homology(&e, space, coeff, max_degree)?;
            let mut text = format!("{}\n", r.factors.join(" x "));
            match &r.homology {
                ClosedHomology::Integral(h) => text.push_str(h.to_string().trim_end()),
                ClosedHomology::Field(p) => text.push_str(&p.to_string()),
            }
            for c in &r.engine_constants {
                text.push_str(&format!("\nengine constant: {c}"));
            }
            let value = json!({ "expr": e.canonicalize().to_string(), "report": r });
            Ok((value, text))
        }
        Command::Scan { primes, max_nodes } => {
            for &p in &primes {
                if p == 2 || !knotspace::graded::is_prime(p) {
                    return Err(Error::NotPrime(p).into());
                }
            }
            let report = scan(&ScanConfig::standard(primes, max_nodes));
            let mut lines = vec![format!(
                "{} expressions, {} checks, {} violations, {} unsupported, {} errors",
                report.expressions,
                report.checks,
                report.violations.len(),
                report.unsupported.len(),
                report.errors.len()
            )];
            for f in report.violations.iter().chain(&report.errors) {
                lines.push(format!("{} p={}: {}", f.expr, f.prime, f.detail));
            }
            let clean = report.clean();
            let value = json!({ "report": report, "clean": clean });
            if clean {
                Ok((value, lines.join("\n")))
            } else {
                Err(Failure {
                    code: 1,
                    message: lines.join("\n"),
                })
            }
        }
        Command::OracleCheck {
            expr,
            max_cells,
            max_degree,
        } => {
            let e = expression(&expr)?;
            let model = component_model(&e.canonicalize());
            let cells = model_cell_count(&model);
            let h = oracle_homology(&model, max_cells)?;
            let mut rows = Vec::new();
            let mut agree = true;
            let mut lines = vec![format!("model {model}, {} cells", cells.unwrap_or(0))];
            for field in [FieldSpec::Rational, FieldSpec::Prime(2)] {
                let engine = component_series(&e, field, max_degree)?;
                let oracle = field_series(&h, field, max_degree)?;
                let same = engine == oracle;
                agree &= same;
                lines.push(format!(
                    "{field}: engine {engine} | oracle {oracle} | {}",
                    if same { "agree" } else { "DIFFER" }
                ));
                rows.push(
                    json!({ "field": field, "engine": engine, "oracle": oracle, "agree": same }),
                );
            }
            let value = json!({
                "expr": e.canonicalize().to_string(),
                "model": model,
                "cells": cells,
                "integral": h,
                "fields": rows,
                "agree": agree,
            });
            if agree {
                Ok((value, lines.join("\n")))
            } else {
                Err(Failure {
                    code: 1,
                    message: lines.join("\n"),
                })
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Homology { .. } => "homology",
        Command::H1 { .. } => "h1",
        Command::Witnesses { .. } => "witnesses",
        Command::Low { .. } => "low",
        Command::Closed { .. } => "closed",
        Command::Scan { .. } => "scan",
        Command::OracleCheck { .. } => "oracle-check",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(cli.command) {
        Ok((mut value, text)) => {
            if cli.json {
                if let Value::Object(map) = &mut value {
                    map.insert("schema".into(), json!(SCHEMA));
                    map.insert("command".into(), json!(name));
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("json output")
                );
            } else {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if cli.json {
                let value = json!({ "schema": SCHEMA, "command": name, "error": f.message, "exit_code": f.code });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("json output")
                );
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
