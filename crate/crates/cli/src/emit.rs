//! Report emission: JSON (canonical), CSV (flat, no warnings) and text.
//! Floats are written in shortest round-trip form, so re-parsing JSON
//! recovers every value bit for bit.

use std::fmt::Write;

use qdeform_core::dsl::{RelationRecord, RelationStatus};
use qdeform_core::exotic::Evaluation;
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub nu: f64,
    pub sign: String,
    pub mu_omega: f64,
    pub lambda: usize,
    pub chi_re: f64,
    pub chi_im: f64,
    pub theta_re: f64,
    pub theta_im: f64,
    pub eta_re: f64,
    pub eta_im: f64,
    pub f_choice: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationJson {
    pub label: String,
    pub raw_norm: f64,
    pub masked_norm: f64,
    pub relative_norm: f64,
    pub mask_levels: usize,
    pub excluded_columns: usize,
    pub tolerance: f64,
    /// `null` for measured relations.
    pub pass: Option<bool>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema_version: u32,
    pub presentation: String,
    pub mode_dims: Vec<usize>,
    pub params: ParamsJson,
    pub relations: Vec<RelationJson>,
    pub warnings: Vec<String>,
    pub overall_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepJson {
    pub schema_version: u32,
    pub presentation: String,
    pub points: Vec<ReportJson>,
    pub overall_pass: bool,
}

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    nu: f64,
    relation_label: &'a str,
    raw_norm: f64,
    masked_norm: f64,
    pass: &'static str,
}

fn pass_text(r: &RelationRecord) -> &'static str {
    match r.status {
        RelationStatus::Pass => "true",
        RelationStatus::Fail => "false",
        RelationStatus::Measured => "measured",
        RelationStatus::Undefined => "undefined",
    }
}

pub fn report_json(e: &Evaluation) -> ReportJson {
    let p = &e.params;
    ReportJson {
        schema_version: SCHEMA_VERSION,
        presentation: e.report.presentation.clone(),
        mode_dims: e.report.mode_dims.clone(),
        params: ParamsJson {
            nu: p.nu,
            sign: p.sign.to_string(),
            mu_omega: p.mu_omega,
            lambda: p.lambda,
            chi_re: p.chi.re,
            chi_im: p.chi.im,
            theta_re: p.theta.re,
            theta_im: p.theta.im,
            eta_re: p.eta.re,
            eta_im: p.eta.im,
            f_choice: p.f_choice.to_string(),
        },
        relations: e
            .report
            .records
            .iter()
            .map(|r| RelationJson {
                label: r.label.clone(),
                raw_norm: r.raw_norm,
                masked_norm: r.masked_norm,
                relative_norm: r.relative_norm,
                mask_levels: r.mask_levels,
                excluded_columns: r.excluded_columns,
                tolerance: r.tolerance,
                pass: r.pass(),
                status: r.status.as_str().to_string(),
            })
            .collect(),
        warnings: e.warnings.clone(),
        overall_pass: e.report.overall_pass(),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Serialize(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// CSV rows ordered by ν, then relation label.
pub fn sweep_csv(points: &[(f64, Evaluation)]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut rows: Vec<(f64, &RelationRecord)> = points
        .iter()
        .flat_map(|(nu, e)| e.report.records.iter().map(move |r| (*nu, r)))
        .collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.label.cmp(&b.1.label)));
    if rows.is_empty() {
        w.write_record(["nu", "relation_label", "raw_norm", "masked_norm", "pass"])
            .map_err(|e| CliError::Serialize(e.to_string()))?;
    }
    for (nu, r) in rows {
        w.serialize(CsvRow {
            nu,
            relation_label: &r.label,
            raw_norm: r.raw_norm,
            masked_norm: r.masked_norm,
            pass: pass_text(r),
        })
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Serialize(e.to_string()))
}

pub fn text_report(e: &Evaluation) -> String {
    let p = &e.params;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}  dims {:?}  lambda {}  nu {}  sign {}  mu_omega {}  f {}",
        e.report.presentation, e.report.mode_dims, p.lambda, p.nu, p.sign, p.mu_omega, p.f_choice
    );
    let _ = writeln!(
        out,
        "chi {:.6}{:+.6}i  theta {:.6}{:+.6}i  eta {:.6}{:+.6}i",
        p.chi.re, p.chi.im, p.theta.re, p.theta.im, p.eta.re, p.eta.im
    );
    let width = e
        .report
        .records
        .iter()
        .map(|r| r.label.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let _ = writeln!(
        out,
        "{:<width$}  {:>12}  {:>12}  {:>4}  {:>9}  status",
        "label", "raw", "masked", "mask", "tol"
    );
    for r in &e.report.records {
        let _ = writeln!(
            out,
            "{:<width$}  {:>12.4e}  {:>12.4e}  {:>4}  {:>9.1e}  {}",
            r.label,
            r.raw_norm,
            r.masked_norm,
            r.mask_levels,
            r.tolerance,
            r.status.as_str()
        );
    }
    for w in &e.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(
        out,
        "overall: {}",
        if e.report.overall_pass() {
            "pass"
        } else {
            "fail"
        }
    );
    out
}

pub fn emit_check(e: &Evaluation, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(&report_json(e)),
        Format::Csv => sweep_csv(&[(e.params.nu, e.clone())]),
        Format::Text => Ok(text_report(e)),
    }
}

pub fn emit_sweep(points: &[(f64, Evaluation)], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let presentation = points
                .first()
                .map(|(_, e)| e.report.presentation.clone())
                .unwrap_or_default();
            to_json(&SweepJson {
                schema_version: SCHEMA_VERSION,
                presentation,
                points: points.iter().map(|(_, e)| report_json(e)).collect(),
                overall_pass: points.iter().all(|(_, e)| e.report.overall_pass()),
            })
        }
        Format::Csv => sweep_csv(points),
        Format::Text => Ok(points
            .iter()
            .map(|(_, e)| text_report(e))
            .collect::<Vec<_>>()
            .join("\n")),
    }
}
