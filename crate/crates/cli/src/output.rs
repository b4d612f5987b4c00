//! Machine-readable records shared by every subcommand.

use std::io::Write;

use serde::{Deserialize, Serialize};
use sl2ext::golden::{dim_string, read_rows_csv, write_rows_csv};
use sl2ext::h2::{H2Reason, H2Witness};
use sl2ext::{DimCount, LeafStatus, LeafTrace, TableRow, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Top-level JSON document. Big integers are always strings.
#[derive(Debug, Serialize, Deserialize)]
pub struct Envelope {
    pub p: u32,
    pub results: Vec<OutputRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OutputRecord {
    pub q: u32,
    pub weyl: String,
    pub simple: String,
    pub dim: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strings: Option<Vec<StringRecord>>,
}

impl OutputRecord {
    pub fn new(q: u32, weyl: &Weight, simple: &Weight, dim: &DimCount) -> Self {
        OutputRecord {
            q,
            weyl: weyl.to_string(),
            simple: simple.to_string(),
            dim: dim_string(dim),
            label: None,
            trace: None,
            witness: None,
            strings: None,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TraceRecord {
    pub a_string: Vec<u32>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf: Option<[String; 2]>,
}

impl From<&LeafTrace> for TraceRecord {
    fn from(t: &LeafTrace) -> Self {
        TraceRecord {
            a_string: t.choices.clone(),
            status: status_name(t.status).to_string(),
            leaf: t.leaf.as_ref().map(|(w, s)| [w.to_string(), s.to_string()]),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub reason: String,
    pub twist: u32,
}

impl From<&H2Witness> for WitnessRecord {
    fn from(w: &H2Witness) -> Self {
        WitnessRecord {
            reason: reason_name(w.reason),
            twist: w.twist,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StringRecord {
    pub b_string: Vec<u32>,
    pub a_string: Vec<u32>,
}

pub fn status_name(s: LeafStatus) -> &'static str {
    match s {
        LeafStatus::Failed => "failed",
        LeafStatus::TrivialLeaf => "trivial",
        LeafStatus::NontrivialLeaf => "nontrivial",
    }
}

pub fn reason_name(r: H2Reason) -> String {
    match r {
        H2Reason::TwoP => "2p".into(),
        H2Reason::TwoPSqMinus => "2p^2-2p-2".into(),
        H2Reason::TwoPMinus2Family(e) => format!("(2p-2)(1+p^{e})"),
        H2Reason::NotInList => "not-in-list".into(),
    }
}

pub fn join(entries: &[u32]) -> String {
    let parts: Vec<String> = entries.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn write_json<W: Write>(mut out: W, env: &Envelope) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, env)?;
    writeln!(out)
}

pub fn rows_to_envelope(rows: &[TableRow]) -> Envelope {
    Envelope {
        p: 2,
        results: rows
            .iter()
            .map(|r| OutputRecord::new(r.m, &Weight::zero(), &r.weight, &r.dim))
            .collect(),
    }
}

pub fn write_rows<W: Write>(mut out: W, rows: &[TableRow], format: Format) -> std::io::Result<()> {
    match format {
        Format::Text => {
            for r in rows {
                writeln!(out, "H^{}(G,L({})) = {}", r.m, r.weight, dim_string(&r.dim))?;
            }
            Ok(())
        }
        Format::Csv => write_rows_csv(out, rows).map_err(std::io::Error::other),
        Format::Json => write_json(out, &rows_to_envelope(rows)),
    }
}

/// Reads rows previously emitted as CSV or JSON.
pub fn parse_rows(content: &str) -> Result<Vec<TableRow>, sl2ext::Error> {
    if content.trim_start().starts_with('{') {
        let env: Envelope =
            serde_json::from_str(content).map_err(|e| sl2ext::Error::Table(e.to_string()))?;
        if env.p != 2 {
            return Err(sl2ext::Error::Table(format!("tables are for p = 2, got p = {}", env.p)));
        }
        env.results
            .into_iter()
            .map(|r| {
                let weyl: Weight = r.weyl.parse()?;
                if !weyl.is_zero() {
                    return Err(sl2ext::Error::Table(format!("table rows have weyl = 0, got {weyl}")));
                }
                let dim: Weight = r.dim.parse()?;
                Ok(TableRow {
                    m: r.q,
                    weight: r.simple.parse()?,
                    dim: dim.into_biguint(),
                })
            })
            .collect()
    } else {
        read_rows_csv(content.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_csv_parse_to_same_rows() {
        let rows = sl2ext::table_self_twist(12);
        let mut csv = Vec::new();
        write_rows(&mut csv, &rows, Format::Csv).unwrap();
        let mut json = Vec::new();
        write_rows(&mut json, &rows, Format::Json).unwrap();
        let a = parse_rows(std::str::from_utf8(&csv).unwrap()).unwrap();
        let b = parse_rows(std::str::from_utf8(&json).unwrap()).unwrap();
        assert_eq!(a, rows);
        assert_eq!(b, rows);
    }

    #[test]
    fn json_rejects_nonzero_weyl() {
        let doc = r#"{"p":2,"results":[{"q":1,"weyl":"2","simple":"2","dim":"1"}]}"#;
        assert!(parse_rows(doc).is_err());
    }

    #[test]
    fn dims_serialize_as_strings() {
        let r = OutputRecord::new(3, &Weight::zero(), &Weight::from(8u32), &DimCount::from(1u32));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["dim"], "1");
        assert!(v.get("trace").is_none());
    }
}
