//! Reference coefficient table for minimal-basis H2 on the grid R = 0.60..3.10 bohr.
//!
//! Columns: `R,g0,g1,g2,g3,g4,exact,simulated`, values kept as printed
//! (four decimals). The table also serves as a coefficient source.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::ReducedCoefficients;

pub const EMBEDDED_TABLE: &str = include_str!("../data/h2_sto6g_table.csv");

/// Grid points closer than this are treated as the same bond length.
pub const R_MATCH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "R")]
    pub r: f64,
    pub g0: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
    pub exact: f64,
    pub simulated: f64,
}

impl TableRow {
    pub fn coefficients(&self) -> ReducedCoefficients {
        ReducedCoefficients::new(self.g0, self.g1, self.g2, self.g3, self.g4).with_r(self.r)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    rows: Vec<TableRow>,
}

impl CoefficientTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for (i, rec) in reader.deserialize::<TableRow>().enumerate() {
            // header is line 1
            let row = rec.map_err(|e| Error::Parse(format!("table line {}: {e}", i + 2)))?;
            let values = [row.r, row.g0, row.g1, row.g2, row.g3, row.g4, row.exact, row.simulated];
            if values.iter().any(|v| !v.is_finite()) {
                return Err(Error::Parse(format!("table line {}: non-finite value", i + 2)));
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse("table has no rows".into()));
        }
        if rows.windows(2).any(|w| w[1].r <= w[0].r) {
            return Err(Error::Parse("table rows must be strictly increasing in R".into()));
        }
        Ok(Self { rows })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn embedded() -> Self {
        Self::parse(EMBEDDED_TABLE).expect("embedded table is valid")
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    pub fn row(&self, r: f64) -> Result<&TableRow> {
        self.rows
            .iter()
            .find(|row| (row.r - r).abs() <= R_MATCH_TOLERANCE)
            .ok_or(Error::NotFound(r))
    }

    /// The stored `g` row at `r`; no interpolation.
    pub fn coefficients(&self, r: f64) -> Result<ReducedCoefficients> {
        self.row(r).map(TableRow::coefficients)
    }
}

/// Embedded-table coefficients at bond length `r`.
pub fn table_provider(r: f64) -> Result<ReducedCoefficients> {
    CoefficientTable::embedded().coefficients(r)
}
