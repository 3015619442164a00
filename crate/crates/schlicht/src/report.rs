//! Machine-readable report emission.
//!
//! Reports are rows plus a small meta header, emitted as CSV (UTF-8, comma
//! separated, header row, LF line endings) or JSON (one top-level object
//! `{meta, rows}`). Floats are serialized with nine significant digits and
//! lowercase `e` exponents in both formats, so identical invocations produce
//! byte-identical output.

use std::io::{self, Write};

use serde::Serialize;

/// Formats with nine significant digits: fixed notation for decimal exponents
/// in `[-4, 8]`, otherwise scientific with a lowercase `e`. Trailing zeros are
/// trimmed. Matches C's `%.9g` up to the exponent spelling (`1e9`, not
/// `1e+09`).
pub fn fmt_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-4..=8).contains(&exp) {
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        format!("{mant}e{exp}")
    } else {
        let prec = (8 - exp).max(0) as usize;
        let fixed = format!("{x:.prec$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    }
}

/// `fmt_g9` for optional fields; `None` prints as the empty string.
pub fn fmt_g9_opt(x: Option<f64>) -> String {
    x.map(fmt_g9).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// A report row that knows its CSV projection. The column list is fixed per
/// subcommand and documented in `--help`; JSON field names match it.
pub trait CsvRow {
    fn columns() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn write_csv<W: Write, R: CsvRow>(out: &mut W, rows: &[R]) -> io::Result<()> {
    out.write_all(R::columns().join(",").as_bytes())?;
    out.write_all(b"\n")?;
    for row in rows {
        let line: Vec<String> = row.fields().iter().map(|f| csv_escape(f)).collect();
        out.write_all(line.join(",").as_bytes())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// JSON formatter writing every float through [`fmt_g9`].
struct G9Formatter;

impl serde_json::ser::Formatter for G9Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(fmt_g9(value).as_bytes())
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(fmt_g9(value as f64).as_bytes())
    }
}

#[derive(Debug, Serialize)]
struct Document<'a, M: Serialize, R: Serialize> {
    meta: &'a M,
    rows: &'a [R],
}

fn write_json<W: Write, M: Serialize, R: Serialize>(
    out: &mut W,
    meta: &M,
    rows: &[R],
) -> io::Result<()> {
    let doc = Document { meta, rows };
    let mut ser = serde_json::Serializer::with_formatter(&mut *out, G9Formatter);
    doc.serialize(&mut ser)
        .map_err(|e| io::Error::new(io::ErrorKind::Other, e))?;
    out.write_all(b"\n")
}

/// Emits a report in the requested format.
pub fn write_report<W, M, R>(out: &mut W, format: Format, meta: &M, rows: &[R]) -> io::Result<()>
where
    W: Write,
    M: Serialize,
    R: CsvRow + Serialize,
{
    match format {
        Format::Csv => write_csv(out, rows),
        Format::Json => write_json(out, meta, rows),
    }
}
