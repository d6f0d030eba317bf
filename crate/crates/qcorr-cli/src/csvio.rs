//! CSV and JSON emission for sweep tables.
//!
//! Values are rendered with 12 significant digits in plain positional
//! notation, so a round-trip through the file reproduces the table to better
//! than 1e-11, and identical runs produce byte-identical output.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use crate::sweep::{SweepRow, SweepTable};
use crate::UsageError;

/// Fixed column set; the `r` field is empty for the perfect family.
pub const CSV_HEADER: &str =
    "a,r,concurrence,discord,mutual_information,classical_correlation,theta_star,phi_star";

/// Significant digits carried by every emitted value.
pub const CSV_SIG_DIGITS: usize = 12;

/// Formats with `sig` significant digits, positional where reasonable
/// (`0.5`, not `5e-1`), trimming trailing zeros.
pub fn format_significant(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let formatted = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp_str) = formatted.split_once('e').expect("e-notation");
    let exp: i32 = exp_str.parse().expect("exponent is an integer");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let body = if !(-10..sig as i32 + 3).contains(&exp) {
        // First mantissa digit is nonzero for x != 0, so `trimmed` has at
        // least one character.
        let trimmed = digits.trim_end_matches('0');
        if trimmed.len() == 1 {
            format!("{trimmed}e{exp}")
        } else {
            format!("{}.{}e{exp}", &trimmed[..1], &trimmed[1..])
        }
    } else if exp >= 0 {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{digits}{}", "0".repeat(point - digits.len()))
        } else {
            let frac = digits[point..].trim_end_matches('0');
            if frac.is_empty() {
                digits[..point].to_string()
            } else {
                format!("{}.{frac}", &digits[..point])
            }
        }
    } else {
        let zeros = (-exp - 1) as usize;
        let with_zeros = format!("{}{digits}", "0".repeat(zeros));
        format!("0.{}", with_zeros.trim_end_matches('0'))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn fmt(x: f64) -> String {
    format_significant(x, CSV_SIG_DIGITS)
}

fn row_to_csv(row: &SweepRow) -> String {
    let r = row.r.map(fmt).unwrap_or_default();
    format!(
        "{},{r},{},{},{},{},{},{}",
        fmt(row.a),
        fmt(row.concurrence),
        fmt(row.discord),
        fmt(row.mutual_information),
        fmt(row.classical_correlation),
        fmt(row.theta_star),
        fmt(row.phi_star),
    )
}

/// Renders the table as UTF-8 CSV with LF line endings.
pub fn table_to_csv(table: &SweepTable) -> String {
    let mut out = String::with_capacity(64 * (table.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        out.push_str(&row_to_csv(row));
        out.push('\n');
    }
    out
}

/// Writes the CSV rendering to `path`.
pub fn emit_csv(table: &SweepTable, path: &Path) -> Result<()> {
    fs::write(path, table_to_csv(table))
        .with_context(|| format!("cannot write CSV to {}", path.display()))
}

/// One row as a flat JSON object keyed by the CSV column names;
/// `r` is `null` for the perfect family.
pub fn row_to_json(row: &SweepRow) -> String {
    let r = row.r.map(fmt).unwrap_or_else(|| "null".to_string());
    format!(
        "{{\"a\":{},\"r\":{r},\"concurrence\":{},\"discord\":{},\"mutual_information\":{},\"classical_correlation\":{},\"theta_star\":{},\"phi_star\":{}}}",
        fmt(row.a),
        fmt(row.concurrence),
        fmt(row.discord),
        fmt(row.mutual_information),
        fmt(row.classical_correlation),
        fmt(row.theta_star),
        fmt(row.phi_star),
    )
}

/// The whole table as a JSON array of row objects.
pub fn table_to_json(table: &SweepTable) -> String {
    let rows: Vec<String> = table.rows.iter().map(row_to_json).collect();
    format!("[\n  {}\n]\n", rows.join(",\n  "))
}

/// Parses a file previously produced by [`table_to_csv`].
pub fn parse_csv(text: &str) -> Result<SweepTable, UsageError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == CSV_HEADER => {}
        Some(other) => return Err(UsageError::new(format!("unexpected CSV header `{other}`"))),
        None => return Err(UsageError::new("empty CSV input")),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(UsageError::new(format!(
                "row {}: expected 8 fields, found {}",
                idx + 2,
                fields.len()
            )));
        }
        let num = |s: &str, name: &str| -> Result<f64, UsageError> {
            s.parse()
                .map_err(|_| UsageError::new(format!("row {}: bad {name} value `{s}`", idx + 2)))
        };
        let r = if fields[1].is_empty() {
            None
        } else {
            Some(num(fields[1], "r")?)
        };
        rows.push(SweepRow {
            a: num(fields[0], "a")?,
            r,
            concurrence: num(fields[2], "concurrence")?,
            discord: num(fields[3], "discord")?,
            mutual_information: num(fields[4], "mutual_information")?,
            classical_correlation: num(fields[5], "classical_correlation")?,
            theta_star: num(fields[6], "theta_star")?,
            phi_star: num(fields[7], "phi_star")?,
        });
    }
    if rows.is_empty() {
        return Err(UsageError::new("CSV contains no data rows"));
    }
    Ok(SweepTable { rows })
}
