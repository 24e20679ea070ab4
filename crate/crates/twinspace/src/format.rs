//! Record streams rendered as CSV or JSON.
//!
//! Every command emits a homogeneous sequence of records with a fixed column
//! order. CSV is a header line plus one line per record, each ending in `\n`.
//! JSON is an array of objects whose keys follow the same column order.

use std::io::{self, Write};

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(u64),
    /// Arbitrary-size decimal integer, a string in JSON.
    Big(String),
    Float(f64),
    Bool(bool),
    Text(&'static str),
    /// Empty CSV cell, JSON `null`.
    Missing,
}

/// Rounds to 10 significant digits, then prints the shortest decimal that
/// round-trips the rounded value.
pub fn render_float(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let rounded: f64 = format!("{v:.9e}").parse().expect("valid float literal");
    format!("{rounded}")
}

fn rounded(v: f64) -> f64 {
    render_float(v).parse().unwrap_or(v)
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Big(s) => s.clone(),
            Field::Float(v) => render_float(*v),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => (*s).to_string(),
            Field::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Int(v) => Value::from(*v),
            Field::Big(s) => Value::from(s.clone()),
            Field::Float(v) => serde_json::Number::from_f64(rounded(*v))
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Field::Bool(b) => Value::from(*b),
            Field::Text(s) => Value::from(*s),
            Field::Missing => Value::Null,
        }
    }
}

/// Streams records to `out` as they are produced.
pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
    header: Vec<&'static str>,
    rows: u64,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format, header: &[&'static str]) -> io::Result<Self> {
        let mut w = RecordWriter {
            out,
            format,
            header: header.to_vec(),
            rows: 0,
        };
        match format {
            Format::Csv => writeln!(w.out, "{}", header.join(","))?,
            Format::Json => w.out.write_all(b"[")?,
        }
        Ok(w)
    }

    pub fn write(&mut self, fields: &[Field]) -> io::Result<()> {
        assert_eq!(fields.len(), self.header.len(), "row width");
        match self.format {
            Format::Csv => {
                let cells: Vec<String> = fields.iter().map(Field::csv).collect();
                writeln!(self.out, "{}", cells.join(","))?;
            }
            Format::Json => {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(fields)
                    .map(|(k, f)| ((*k).to_string(), f.json()))
                    .collect();
                if self.rows > 0 {
                    self.out.write_all(b",")?;
                }
                self.out.write_all(b"\n")?;
                serde_json::to_writer(&mut self.out, &Value::Object(obj))?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn finish(mut self) -> io::Result<W> {
        if self.format == Format::Json {
            if self.rows > 0 {
                self.out.write_all(b"\n")?;
            }
            self.out.write_all(b"]\n")?;
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_capped_at_ten_digits() {
        assert_eq!(render_float(3.1), "3.1");
        assert_eq!(render_float(0.6), "0.6");
        assert_eq!(render_float(18.0 / 35.0), "0.5142857143");
        assert_eq!(render_float(461.135_743_820_388_26), "461.1357438");
        assert_eq!(render_float(2.0), "2");
        assert_eq!(render_float(1e-7), "0.0000001");
    }

    #[test]
    fn csv_layout() {
        let mut w = RecordWriter::new(Vec::new(), Format::Csv, &["k", "small", "large"]).unwrap();
        w.write(&[Field::Int(1), Field::Int(5), Field::Int(7)]).unwrap();
        w.write(&[Field::Int(2), Field::Int(11), Field::Int(13)]).unwrap();
        let out = String::from_utf8(w.finish().unwrap()).unwrap();
        assert_eq!(out, "k,small,large\n1,5,7\n2,11,13\n");
    }

    #[test]
    fn json_layout() {
        let mut w = RecordWriter::new(Vec::new(), Format::Json, &["n", "x", "ok"]).unwrap();
        w.write(&[Field::Int(1), Field::Float(0.25), Field::Missing]).unwrap();
        let out = String::from_utf8(w.finish().unwrap()).unwrap();
        assert_eq!(out, "[\n{\"n\":1,\"x\":0.25,\"ok\":null}\n]\n");
        let empty = RecordWriter::new(Vec::new(), Format::Json, &["n"]).unwrap();
        assert_eq!(empty.finish().unwrap(), b"[]\n");
    }
}
