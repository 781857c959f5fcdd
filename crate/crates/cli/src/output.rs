use std::io::Write;

use serde::Serialize;

use crate::args::Format;

pub const SCHEMA_VERSION: &str = "1";

/// One evaluated formula.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub formula: String,
    pub x: String,
    /// `name=value` pairs joined by `;`.
    pub params: String,
    pub value: String,
    pub value_imag: Option<String>,
    pub error_estimate: String,
    pub oracle_value: Option<String>,
    pub abs_error: Option<String>,
    pub orders_used: usize,
    pub status: String,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantRecord {
    pub schema_version: &'static str,
    pub id: String,
    pub precision_bits: u32,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaRecord {
    pub schema_version: &'static str,
    pub formula: String,
    pub summand: String,
    pub method: String,
    /// `name:domain` pairs joined by `;`.
    pub parameters: String,
    pub constants: String,
    pub description: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub order: usize,
    pub partial_value: String,
    pub abs_error: String,
    pub term_magnitude: String,
}

/// Writes records as CSV with a header, or as one JSON object per line.
pub fn write_records<T: Serialize, W: Write>(out: W, format: Format, records: &[T]) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            for record in records {
                writer.serialize(record)?;
            }
            writer.flush()?;
        }
        Format::Json => {
            let mut out = out;
            for record in records {
                serde_json::to_writer(&mut out, record)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}
