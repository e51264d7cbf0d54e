//! Histogram file ingestion: JSON arrays and one-number-per-line CSV.

use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum WeightFormat {
    /// Pick by file extension (.json or .csv).
    Auto,
    Json,
    Csv,
}

/// Reads a raw weight vector. Errors are one-line messages without the
/// file name; the caller prefixes it.
pub fn read_weights(path: &Path, format: WeightFormat) -> Result<Vec<f64>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read file: {e}"))?;
    let format = match format {
        WeightFormat::Auto => match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => WeightFormat::Json,
            Some(ext) if ext.eq_ignore_ascii_case("csv") => WeightFormat::Csv,
            _ => {
                return Err(
                    "cannot infer format from extension; pass --input-format json|csv".to_string(),
                )
            }
        },
        other => other,
    };
    match format {
        WeightFormat::Json => parse_json(&text),
        WeightFormat::Csv => parse_csv(&text),
        WeightFormat::Auto => unreachable!("resolved above"),
    }
}

fn parse_json(text: &str) -> Result<Vec<f64>, String> {
    serde_json::from_str::<Vec<f64>>(text)
        .map_err(|e| format!("expected a JSON array of numbers: {e}"))
}

fn parse_csv(text: &str) -> Result<Vec<f64>, String> {
    let mut weights = Vec::new();
    let mut saw_content = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        // An optional leading "weight" header is allowed.
        if !saw_content && line.eq_ignore_ascii_case("weight") {
            saw_content = true;
            continue;
        }
        saw_content = true;
        let value: f64 = line
            .parse()
            .map_err(|_| format!("atom {}: cannot parse '{line}' as a number", weights.len()))?;
        weights.push(value);
    }
    Ok(weights)
}
