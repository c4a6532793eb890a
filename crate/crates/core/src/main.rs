//! `euclid`: run and verify straightedge-and-compass construction files,
//! reproduce the golden-angle numbers, query the constructibility
//! oracle, and emit SVG renderings and JSON reports.
//!
//! Exit codes: 0 success, 1 assertion failure, 2 parse/runtime/usage
//! error.

use clap::{Parser, Subcommand};
use euclid_exact::lang::{self, format_diagnostics, InterpretedModel, Value};
use euclid_exact::measure::{
    attach_target, central_angle_evaluator, certified_chord_2pi_5, golden_angle_deg,
    golden_constants, Measurement,
};
use euclid_exact::oracle::{angle_constructible, golden_angle_verdict, ngon_constructible};
use euclid_exact::render::{render_golden, render_scene};
use euclid_exact::report::{build_report, evaluate_measures, AssertionEntry};
use euclid_exact::tower::FieldElement;
use std::path::PathBuf;
use std::process::ExitCode;

const PENTAGRAM_CORPUS: &str = include_str!("../corpus/pentagram_golden_angle.euclid");
const PENTAGRAM_NAME: &str = "builtin:pentagram_golden_angle.euclid";

#[derive(Parser)]
#[command(
    name = "euclid",
    about = "Exact straightedge-and-compass constructions",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Interpret a construction file and print its measurements.
    Run {
        path: PathBuf,
        /// Certified decimal digits for measurements.
        #[arg(long, default_value_t = 2)]
        digits: usize,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the golden-angle numbers from the built-in pentagram
    /// construction and check the exact pentagon facts.
    VerifyGolden {
        #[arg(long, default_value_t = 2)]
        digits: usize,
        #[arg(long)]
        json: bool,
    },
    /// Constructibility verdict for a regular n-gon, a rational multiple
    /// of pi ("p/q"), or the golden angle ("golden").
    Ngon { subject: String },
    /// Render a construction file (or the golden-angle figure) as SVG.
    Render {
        /// Path to a construction file, or "golden".
        subject: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Canvas size in pixels.
        #[arg(long, default_value_t = 600)]
        size: u32,
        #[arg(long, default_value_t = 2)]
        digits: usize,
    },
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Run { path, digits, json } => cmd_run(&path, digits, json),
        Cmd::VerifyGolden { digits, json } => cmd_verify_golden(digits, json),
        Cmd::Ngon { subject } => cmd_ngon(&subject),
        Cmd::Render {
            subject,
            out,
            size,
            digits,
        } => cmd_render(&subject, out.as_deref(), size, digits),
    }
}

/// Parses and interprets a source, reporting diagnostics under `name`.
fn load(name: &str, source: &str) -> Result<InterpretedModel, ExitCode> {
    let program = lang::parse(source).map_err(|diags| {
        eprint!("{}", format_diagnostics(name, &diags));
        ExitCode::from(2)
    })?;
    lang::interpret(&program).map_err(|e| {
        eprintln!("{name}:{e}");
        ExitCode::from(2)
    })
}

fn measure_all(model: &InterpretedModel, digits: usize) -> Result<Vec<Measurement>, ExitCode> {
    evaluate_measures(model, digits).map_err(|e| {
        eprintln!("measurement failed: {e}");
        ExitCode::from(2)
    })
}

fn print_measurement(m: &Measurement) {
    let unit = m.kind.unit();
    if unit.is_empty() {
        println!("{} = {}", m.name, m.decimal);
    } else {
        println!("{} = {} {}", m.name, m.decimal, unit);
    }
}

fn report_exit(name: &str, model: &InterpretedModel, measures: &[Measurement], json: bool) -> ExitCode {
    let report = build_report(name, model, measures);
    if json {
        print!("{}", report.to_json());
    } else {
        for m in measures {
            print_measurement(m);
        }
        let failed: Vec<_> = model.assertions.iter().filter(|a| !a.passed()).collect();
        for a in &failed {
            eprintln!(
                "{name}:{}:{}: assertion failed: sign of difference = {:+} in {}",
                a.line, a.col, a.sign, a.text
            );
        }
        println!(
            "assertions: {} passed, {} failed",
            model.assertions.len() - failed.len(),
            failed.len()
        );
    }
    ExitCode::from(report.status as u8)
}

fn cmd_run(path: &std::path::Path, digits: usize, json: bool) -> ExitCode {
    let name = path.display().to_string();
    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{name}: {e}");
            return ExitCode::from(2);
        }
    };
    let model = match load(&name, &source) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let measures = match measure_all(&model, digits) {
        Ok(ms) => ms,
        Err(code) => return code,
    };
    report_exit(&name, &model, &measures, json)
}

fn scalar<'a>(model: &'a InterpretedModel, name: &str) -> &'a FieldElement {
    match model.value(name) {
        Some(Value::Scalar(v)) => v,
        _ => unreachable!("built-in corpus defines scalar '{name}'"),
    }
}

fn cmd_verify_golden(digits: usize, json: bool) -> ExitCode {
    let model = match load(PENTAGRAM_NAME, PENTAGRAM_CORPUS) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let mut measures = match measure_all(&model, digits) {
        Ok(ms) => ms,
        Err(code) => return code,
    };
    let (phi, golden, _alpha) = match golden_constants(digits) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("golden constants failed: {e}");
            return ExitCode::from(2);
        }
    };

    // attach the golden-angle target to the measured arc
    let arc_idx = measures
        .iter()
        .position(|m| m.name == "arcBC")
        .expect("built-in corpus measures arcBC");
    let (b_pt, o_pt, c_pt) = match (
        model.value("B"),
        model.value("O"),
        model.value("C"),
    ) {
        (Some(Value::Point(b)), Some(Value::Point(o)), Some(Value::Point(c))) => {
            (b.clone(), o.clone(), c.clone())
        }
        _ => unreachable!("built-in corpus defines points B, O, C"),
    };
    let evaluator = central_angle_evaluator(&model.tower, &b_pt, &o_pt, &c_pt)
        .expect("rays are non-degenerate");
    if let Err(e) = attach_target(
        &mut measures[arc_idx],
        |ctx| golden_angle_deg(ctx),
        true,
        evaluator,
    ) {
        eprintln!("error certification failed: {e}");
        return ExitCode::from(2);
    }

    // the certified numeric fact: a is the chord of 2*pi/5
    let chord_ok = certified_chord_2pi_5(&model.tower, scalar(&model, "a"));

    let arc = &measures[arc_idx];
    if json {
        let mut report = build_report(PENTAGRAM_NAME, &model, &measures);
        report.measurements.insert(0, (&golden).into());
        report.measurements.insert(0, (&phi).into());
        report.assertions.push(AssertionEntry {
            location: "certified:a-chord(2pi/5)".to_string(),
            passed: chord_ok,
        });
        report.status = i32::from(report.status != 0 || !chord_ok);
        print!("{}", report.to_json());
        return ExitCode::from(report.status as u8);
    }

    println!("phi = {}", phi.decimal);
    println!("golden_angle = {} deg", golden.decimal);
    println!("arcBC = {} deg", arc.decimal);
    println!(
        "abs_error = {} deg",
        arc.abs_error_decimal.as_deref().unwrap_or("?")
    );
    println!(
        "rel_error = {}",
        arc.rel_error_percent.as_deref().unwrap_or("?")
    );
    let mut all_ok = chord_ok;
    for a in &model.assertions {
        if !a.passed() {
            eprintln!(
                "{PENTAGRAM_NAME}:{}:{}: assertion failed: sign of difference = {:+} in {}",
                a.line, a.col, a.sign, a.text
            );
            all_ok = false;
        }
    }
    println!(
        "exact pentagon assertions: {}",
        if model.assertions.iter().all(|a| a.passed()) {
            "pass"
        } else {
            "FAIL"
        }
    );
    println!(
        "certified |a - chord(2pi/5)| < 10^-30: {}",
        if chord_ok { "pass" } else { "FAIL" }
    );
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_ngon(subject: &str) -> ExitCode {
    let verdict = if subject == "golden" {
        Ok(golden_angle_verdict())
    } else if let Some((p, q)) = subject.split_once('/') {
        match (p.trim().parse::<i64>(), q.trim().parse::<u64>()) {
            (Ok(p), Ok(q)) => angle_constructible(p, q),
            _ => {
                eprintln!("malformed subject '{subject}': expected N, P/Q, or 'golden'");
                return ExitCode::from(2);
            }
        }
    } else {
        match subject.trim().parse::<u64>() {
            Ok(n) => ngon_constructible(n),
            Err(_) => {
                eprintln!("malformed subject '{subject}': expected N, P/Q, or 'golden'");
                return ExitCode::from(2);
            }
        }
    };
    match verdict {
        Ok(v) => {
            println!("{}", v.describe());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_render(
    subject: &str,
    out: Option<&std::path::Path>,
    size: u32,
    digits: usize,
) -> ExitCode {
    let svg = if subject == "golden" {
        render_golden(digits, size)
    } else {
        let name = subject.to_string();
        let source = match std::fs::read_to_string(subject) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{name}: {e}");
                return ExitCode::from(2);
            }
        };
        let model = match load(&name, &source) {
            Ok(m) => m,
            Err(code) => return code,
        };
        let measures = match measure_all(&model, digits) {
            Ok(ms) => ms,
            Err(code) => return code,
        };
        render_scene(&model, &measures, size)
    };
    let svg = match svg {
        Ok(s) => s,
        Err(e) => {
            eprintln!("render failed: {e}");
            return ExitCode::from(2);
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &svg) {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{svg}"),
    }
    ExitCode::SUCCESS
}
