//! Published dimension tables, embedded as CSV (`m,weight,dim`).

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::engine::{DimCount, TableRow};
use crate::error::{Error, Result};
use crate::weights::Weight;

const SELF_TWIST_CSV: &str = include_str!("../data/self_twist.csv");
const R3_TWIST_CSV: &str = include_str!("../data/r3_twist.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GoldenTableId {
    /// `H^m(SL2, L(2^m))`, `m = 4..=31`.
    SelfTwist,
    /// `H^m(SL2, L(3·2^{m-2}))`, `m = 3..=32`.
    R3Twist,
}

impl GoldenTableId {
    pub const ALL: [GoldenTableId; 2] = [GoldenTableId::SelfTwist, GoldenTableId::R3Twist];

    pub fn name(self) -> &'static str {
        match self {
            GoldenTableId::SelfTwist => "self-twist",
            GoldenTableId::R3Twist => "r3-twist",
        }
    }

    pub fn raw_csv(self) -> &'static str {
        match self {
            GoldenTableId::SelfTwist => SELF_TWIST_CSV,
            GoldenTableId::R3Twist => R3_TWIST_CSV,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GoldenTable {
    pub id: GoldenTableId,
    pub rows: Vec<TableRow>,
}

impl GoldenTable {
    pub fn load(id: GoldenTableId) -> Self {
        let rows = read_rows_csv(id.raw_csv().as_bytes()).expect("embedded golden data parses");
        GoldenTable { id, rows }
    }

    pub fn find(&self, m: u32, weight: &Weight) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.m == m && &r.weight == weight)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    m: u32,
    weight: String,
    dim: String,
}

pub fn read_rows_csv<R: Read>(reader: R) -> Result<Vec<TableRow>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers().map_err(|e| Error::Table(e.to_string()))?;
    if headers != vec!["m", "weight", "dim"] {
        return Err(Error::Table(format!("expected header m,weight,dim, got {headers:?}")));
    }
    rdr.deserialize::<CsvRow>()
        .map(|rec| {
            let rec = rec.map_err(|e| Error::Table(e.to_string()))?;
            let weight: Weight = rec.weight.parse()?;
            let dim: Weight = rec.dim.parse()?;
            Ok(TableRow {
                m: rec.m,
                weight,
                dim: dim.into_biguint(),
            })
        })
        .collect()
}

pub fn write_rows_csv<W: Write>(writer: W, rows: &[TableRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    for row in rows {
        wtr.serialize(CsvRow {
            m: row.m,
            weight: row.weight.to_string(),
            dim: dim_string(&row.dim),
        })
        .map_err(|e| Error::Table(e.to_string()))?;
    }
    wtr.flush().map_err(|e| Error::Table(e.to_string()))
}

pub fn dim_string(d: &DimCount) -> String {
    d.to_str_radix(10)
}
