use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use milnor::motivic::{self, ClassData, DEFAULT_MAX_D};
use milnor::simplicial::{build_dx, chain_complex, cohomology, homology, longexact, Group};
use milnor::skeleton::{phi_retract, tau_retract, AnalyticSample, ColouredPoint};
use milnor::{ComponentSet, StrataModel};
use serde_json::{json, Value};

/// Dual complexes, skeleton retractions and motivic nearby cycles of
/// strictly semi-stable degenerations.
#[derive(Parser, Debug)]
#[command(name = "milnor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a model file and summarize it.
    Validate { model: PathBuf },
    /// Cell counts of the dual complex.
    Complex {
        model: PathBuf,
        /// Print the 1-skeleton as a DOT graph.
        #[arg(long)]
        dot: bool,
        /// Print the validated model in canonical form.
        #[arg(long, conflicts_with = "dot")]
        emit_model: bool,
    },
    /// Integral homology of the dual complex.
    Homology {
        model: PathBuf,
        /// Report cohomology instead.
        #[arg(long)]
        cohomology: bool,
    },
    /// Long exact cohomology sequence of the pair (X, E).
    Les {
        model: PathBuf,
        /// Components making up E, comma separated.
        #[arg(long = "E", value_delimiter = ',', required = true)]
        e: Vec<String>,
    },
    /// Push an analytic point to the skeleton and retract it onto E.
    Retract { model: PathBuf, point: PathBuf },
    /// Motivic nearby cycles of a model with classes.
    Motivic {
        model: PathBuf,
        /// Relative dimension; adds the volume L^-d_rel times the class.
        #[arg(long)]
        d_rel: Option<u32>,
        #[arg(long, default_value_t = 1)]
        ramification: u32,
    },
    /// Evaluate a series expression, e.g. "lim((gen(1,1))[2])".
    Series { expr: String },
    /// Simple complex of a cocubical system, cover or chain map.
    Cocubical { input: PathBuf },
    /// Compare the nearby cycles of two models.
    CompareModels { first: PathBuf, second: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Parse(_) => 2,
        }
    }

    fn in_context(self, ctx: &str) -> Self {
        match self {
            Failure::Parse(m) => Failure::Parse(format!("{ctx}: {m}")),
            Failure::Domain(m) => Failure::Domain(format!("{ctx}: {m}")),
        }
    }
}

impl From<milnor::Error> for Failure {
    fn from(e: milnor::Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

enum Output {
    Json(Value),
    Text(String),
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<StrataModel, Failure> {
    let text = read(path)?;
    StrataModel::from_json(&text).map_err(|e| Failure::from(e).in_context(&path.display().to_string()))
}

fn load_json(path: &Path) -> Result<Value, Failure> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn max_d() -> Result<u32, Failure> {
    match std::env::var("MILNOR_MAX_D") {
        Err(_) => Ok(DEFAULT_MAX_D),
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(d) if d >= 1 => Ok(d),
            _ => Err(Failure::Parse(format!("MILNOR_MAX_D must be a positive integer, got `{v}`"))),
        },
    }
}

/// Rounds every float to 12 significant digits.
fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
            json!(rounded)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

fn groups(g: &[Group]) -> Value {
    Value::Array(g.iter().map(Group::to_json).collect())
}

fn complex_report(model: &StrataModel) -> Value {
    let dx = build_dx(model);
    let cells: Vec<usize> = (0..model.max_psi()).map(|n| dx.cells(n).len()).collect();
    let chains = chain_complex(&dx.sset);
    let mut by_dim = BTreeMap::new();
    for (n, _) in cells.iter().enumerate() {
        let ids: Vec<&str> = dx.cells(n).into_iter().map(|s| model.stratum(s).id.as_str()).collect();
        by_dim.insert(n.to_string(), json!(ids));
    }
    json!({
        "cells": cells,
        "strata": by_dim,
        "euler": chains.euler_characteristic(),
    })
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices are strata of single components, edges strata of pairs.
fn dot(model: &StrataModel) -> String {
    let mut out = String::from("graph dual {\n");
    for st in model.strata().iter().filter(|s| s.psi.len() == 1) {
        let _ = writeln!(out, "  {} [label={}];", quoted(&st.id), quoted(&st.id));
    }
    for (s, st) in model.strata().iter().enumerate().filter(|(_, s)| s.psi.len() == 2) {
        let ends: Vec<&str> = st
            .psi
            .iter()
            .map(|c| model.stratum(model.generization(s, ComponentSet::singleton(c))).id.as_str())
            .collect();
        let _ = writeln!(out, "  {} -- {} [label={}];", quoted(ends[0]), quoted(ends[1]), quoted(&st.id));
    }
    out.push_str("}\n");
    out
}

fn component_set(model: &StrataModel, names: &[String]) -> Result<ComponentSet, Failure> {
    model.component_set(names).map_err(domain)
}

fn retract(model: &StrataModel, point: &Value) -> Result<Value, Failure> {
    let parse = |m: &str| Failure::Parse(format!("point: {m}"));
    let stratum = point
        .get("stratum")
        .and_then(Value::as_str)
        .ok_or_else(|| parse("missing string `stratum`"))?;
    let values: BTreeMap<String, f64> = point
        .get("values")
        .cloned()
        .map(serde_json::from_value)
        .transpose()
        .map_err(|e| parse(&e.to_string()))?
        .ok_or_else(|| parse("missing `values`"))?;
    let names: Vec<String> = point
        .get("E")
        .cloned()
        .map(serde_json::from_value)
        .transpose()
        .map_err(|e| parse(&e.to_string()))?
        .ok_or_else(|| parse("missing `E`"))?;
    let number = |key: &str| -> Result<Option<f64>, Failure> {
        match point.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v.as_f64().map(Some).ok_or_else(|| parse(&format!("`{key}` must be a number"))),
        }
    };
    let r = number("r")?;
    let rho = number("rho")?.unwrap_or(1.0);
    let order: Option<Vec<String>> = point
        .get("order")
        .cloned()
        .map(serde_json::from_value)
        .transpose()
        .map_err(|e| parse(&e.to_string()))?;

    let e = component_set(model, &names)?;
    let order = order
        .map(|o| o.iter().map(|c| model.component_index(c)).collect::<Result<Vec<_>, _>>())
        .transpose()
        .map_err(domain)?;
    let z = AnalyticSample::from_named(model, stratum, &values, r).map_err(domain)?;
    let tau = tau_retract(model, &z).map_err(domain)?;
    let coloured = ColouredPoint::from_skeleton(&tau, 0.0).map_err(domain)?;
    let moved = phi_retract(model, e, &coloured, rho, order.as_deref()).map_err(domain)?;
    let out = moved.point.to_skeleton(model).map_err(domain)?;
    let at_r = ColouredPoint::from_skeleton(&out, z.r).map_err(domain)?;
    Ok(json!({
        "sample": z.to_json(model),
        "skeleton": tau.to_json(model),
        "rho": rho,
        "output": {
            "barycentric": out.to_json(model),
            "coloured": moved.point.to_json(model),
            "coloured_at_r": at_r.to_json(model),
        },
    }))
}

fn run(command: Command) -> Result<Output, Failure> {
    Ok(match command {
        Command::Validate { model } => {
            let m = load_model(&model)?;
            Output::Json(json!({
                "valid": true,
                "components": m.component_count(),
                "strata": m.strata().len(),
                "max_psi": m.max_psi(),
                "r": m.r(),
                "classes": m.classes().len() == m.strata().len(),
            }))
        }
        Command::Complex { model, dot: true, .. } => Output::Text(dot(&load_model(&model)?)),
        Command::Complex { model, emit_model: true, .. } => {
            let raw = load_model(&model)?.to_raw();
            Output::Json(serde_json::to_value(raw).map_err(|e| Failure::Domain(e.to_string()))?)
        }
        Command::Complex { model, .. } => Output::Json(complex_report(&load_model(&model)?)),
        Command::Homology { model, cohomology: false } => {
            Output::Json(json!({ "H": groups(&homology(&build_dx(&load_model(&model)?).sset)) }))
        }
        Command::Homology { model, cohomology: true } => {
            Output::Json(json!({ "cohomology": groups(&cohomology(&build_dx(&load_model(&model)?).sset)) }))
        }
        Command::Les { model, e } => {
            let m = load_model(&model)?;
            let e = component_set(&m, &e)?;
            Output::Json(longexact(&m, e)?.to_json())
        }
        Command::Retract { model, point } => {
            let m = load_model(&model)?;
            let p = load_json(&point)?;
            Output::Json(retract(&m, &p).map_err(|f| f.in_context(&point.display().to_string()))?)
        }
        Command::Motivic {
            model,
            d_rel,
            ramification,
        } => {
            let data = ClassData::new(load_model(&model)?, d_rel.unwrap_or(0), ramification).map_err(domain)?;
            let class = data.nearby_cycles();
            let mut out = json!({ "class": class.to_json(), "euler": class.euler() });
            if d_rel.is_some() {
                out["volume"] = data.volume().to_json();
            }
            Output::Json(out)
        }
        Command::Series { expr } => {
            let max_d = max_d()?;
            let parsed = motivic::parse(&expr)?;
            Output::Json(motivic::evaluate(&parsed, max_d)?.to_json())
        }
        Command::Cocubical { input } => {
            let doc = load_json(&input)?;
            Output::Json(
                milnor::cocubical::json::report(&doc)
                    .map_err(|e| Failure::from(e).in_context(&input.display().to_string()))?,
            )
        }
        Command::CompareModels { first, second } => {
            let (a, b) = (load_model(&first)?, load_model(&second)?);
            let ca = motivic::nearby_cycles(&a).map_err(|e| domain(e).in_context(&first.display().to_string()))?;
            let cb = motivic::nearby_cycles(&b).map_err(|e| domain(e).in_context(&second.display().to_string()))?;
            Output::Json(json!({
                "equal": ca == cb,
                "first": { "class": ca.to_json(), "euler": ca.euler() },
                "second": { "class": cb.to_json(), "euler": cb.euler() },
            }))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output::Json(v)) => {
            println!("{}", round_floats(v));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (Failure::Parse(m) | Failure::Domain(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
