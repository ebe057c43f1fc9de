//! Output formats and serialization shapes.
//!
//! Machine formats never contain floats: every rational is rendered through
//! `format_rational` as `"num"` or `"num/den"` in lowest terms, so each value
//! re-parses to the identical exact number. JSON field order is the struct
//! declaration order below and is part of the output contract — identical
//! requests must produce byte-identical output.

use clap::ValueEnum;
use serde::Serialize;

use crate::error::AppError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Environment variable consulted when `--format` is absent.
pub const FORMAT_ENV: &str = "TRINOM_FORMAT";

/// `--format` flag if given, else `$TRINOM_FORMAT`, else text.
pub fn resolve_format(flag: Option<Format>) -> Result<Format, AppError> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match std::env::var(FORMAT_ENV) {
        Ok(value) => <Format as ValueEnum>::from_str(&value, true).map_err(|_| {
            AppError::domain(
                "unsupported_format",
                format!("{FORMAT_ENV}={value:?} is not one of: text, json, csv"),
            )
        }),
        Err(_) => Ok(Format::Text),
    }
}

pub fn print_json<T: Serialize>(value: &T) -> Result<(), AppError> {
    let text = serde_json::to_string(value)
        .map_err(|e| AppError::internal(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

/// The fixed schema shared by every tabular subcommand; columns that do not
/// apply to a row stay empty.
pub const CSV_HEADER: &str = "case_id,class_lo,class_hi,td,s,c,ehk_base,verdict";

#[derive(Debug, Default)]
pub struct CsvRow {
    pub case_id: String,
    pub class_lo: String,
    pub class_hi: String,
    pub td: String,
    pub s: String,
    pub c: String,
    pub ehk_base: String,
    pub verdict: String,
}

pub fn csv_document(rows: &[CsvRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    for r in rows {
        out.push('\n');
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}",
            r.case_id, r.class_lo, r.class_hi, r.td, r.s, r.c, r.ehk_base, r.verdict
        ));
    }
    out.push('\n');
    out
}

/// `{"modulus":…,"rows":[…]}` wrapper shared by the per-class subcommands.
#[derive(Serialize)]
pub struct TableOut<R: Serialize> {
    pub modulus: u64,
    pub rows: Vec<R>,
}

/// One congruence class of the distance map: either strongly semistable or
/// the first solution's taxicab distance `td` and Frobenius level `s`.
#[derive(Serialize)]
pub struct DeltaRowOut {
    pub class: [u64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub td: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
}

/// Symbolic Hilbert-Kunz multiplicity for one congruence class:
/// `base + c²/(4d·p^(2s))`, rendered in `formula`.
#[derive(Serialize)]
pub struct EhkRowOut {
    pub class: [u64; 2],
    pub base: String,
    pub c: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    pub formula: String,
}

#[derive(Serialize)]
pub struct IrregularOut {
    /// whether the coordinate multiplicity sits exactly on the boundary
    /// `2r = d` (the only strongly semistable irregular case)
    pub boundary: bool,
    /// slope excess of the destabilizing line bundle, zero on the boundary
    pub gap: String,
}

#[derive(Serialize)]
pub struct ReportOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<[u64; 2]>,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hn_gap: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deg_l: Option<String>,
    pub preconditions_ok: bool,
    pub min_valid_p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irregular: Option<IrregularOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjectural: Option<bool>,
    /// CSV `c` column (`2 × hn_gap`, an integer for regular curves); not part
    /// of the JSON payload
    #[serde(skip)]
    pub csv_c: Option<String>,
}

#[derive(Serialize)]
pub struct ClassifyOut {
    pub classification: &'static str,
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<String>,
    /// input variable playing each normal-form role (x, y, z in that order)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variables: Option<[&'static str; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u32>,
}

#[derive(Serialize)]
pub struct InvariantsOut {
    pub degree: u32,
    pub alpha: u64,
    pub beta: u64,
    pub nu: u64,
    pub lambda: u64,
    pub a: u64,
    pub lambda_h: u64,
    pub n: u64,
    pub a_n: u64,
    pub lambda_h_n: u64,
}

#[derive(Serialize)]
pub struct CheckOut {
    pub case_id: String,
    pub expected: String,
    pub computed: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Serialize)]
pub struct VerifyOut {
    pub checks: Vec<CheckOut>,
}
