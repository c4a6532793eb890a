//! Machine-readable run reports: a stable JSON surface for CI checks.
//! Key order is fixed by declaration order and preserved on re-parse, so
//! emitted reports round-trip byte-identically.

use crate::lang::{AssertionOutcome, InterpretedModel, MeasureKind};
use crate::measure::{central_angle, length, MeasureError, Measurement};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MeasurementEntry {
    pub name: String,
    pub kind: String,
    pub value_decimal: String,
    pub unit: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_decimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_error_decimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_error_percent: Option<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AssertionEntry {
    pub location: String,
    pub passed: bool,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunReport {
    pub program: String,
    pub measurements: Vec<MeasurementEntry>,
    pub assertions: Vec<AssertionEntry>,
    pub status: i32,
}

impl From<&Measurement> for MeasurementEntry {
    fn from(m: &Measurement) -> Self {
        MeasurementEntry {
            name: m.name.clone(),
            kind: m.kind.label().to_string(),
            value_decimal: m.decimal.clone(),
            unit: m.kind.unit().to_string(),
            target_decimal: m.target_decimal.clone(),
            abs_error_decimal: m.abs_error_decimal.clone(),
            rel_error_percent: m.rel_error_percent.clone(),
        }
    }
}

impl From<&AssertionOutcome> for AssertionEntry {
    fn from(a: &AssertionOutcome) -> Self {
        AssertionEntry {
            location: format!("{}:{}", a.line, a.col),
            passed: a.passed(),
        }
    }
}

/// Evaluates every measurement request of an interpreted model to
/// `digits` certified decimals.
pub fn evaluate_measures(
    model: &InterpretedModel,
    digits: usize,
) -> Result<Vec<Measurement>, MeasureError> {
    model
        .measures
        .iter()
        .map(|req| match &req.kind {
            MeasureKind::Angle { p, vertex, q } => {
                central_angle(&model.tower, p, vertex, q, digits, &req.name)
            }
            MeasureKind::Length { p, q } => length(&model.tower, p, q, digits, &req.name),
        })
        .collect()
}

/// Assembles a report; `status` follows the process exit contract
/// (0 = all assertions passed, 1 = some assertion failed).
pub fn build_report(program: &str, model: &InterpretedModel, measures: &[Measurement]) -> RunReport {
    let assertions: Vec<AssertionEntry> = model.assertions.iter().map(Into::into).collect();
    let status = i32::from(!assertions.iter().all(|a| a.passed));
    RunReport {
        program: program.to_string(),
        measurements: measures.iter().map(Into::into).collect(),
        assertions,
        status,
    }
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}
