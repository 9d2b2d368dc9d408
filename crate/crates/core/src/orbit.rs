//! Time-indexed sequences of exact values and their CSV/JSON serialization.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numeric::DyadicRational;

/// Where the values of an [`OrbitSeries`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    QuantumClosedform,
    ClassicalTruncated,
    ClassicalExtended,
    Oracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::QuantumClosedform => "quantum-closedform",
            Provenance::ClassicalTruncated => "classical-truncated",
            Provenance::ClassicalExtended => "classical-extended",
            Provenance::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSeries {
    provenance: Provenance,
    values: Vec<DyadicRational>,
}

/// One row of the orbit CSV schema `n,value_exact,value_float,provenance`.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct OrbitRow {
    pub n: usize,
    pub value_exact: DyadicRational,
    pub value_float: f64,
    pub provenance: Provenance,
}

impl OrbitSeries {
    pub fn new(provenance: Provenance, values: Vec<DyadicRational>) -> Self {
        Self { provenance, values }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn values(&self) -> &[DyadicRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&DyadicRational> {
        self.values.get(n)
    }

    pub fn rows(&self) -> impl Iterator<Item = OrbitRow> + '_ {
        self.values.iter().enumerate().map(|(n, v)| OrbitRow {
            n,
            value_exact: v.clone(),
            value_float: v.to_f64(),
            provenance: self.provenance,
        })
    }

    /// Writes the CSV table. `header` lines are emitted first, each prefixed
    /// with `# `.
    pub fn write_csv<W: Write>(&self, mut out: W, header: &[String]) -> Result<()> {
        for line in header {
            writeln!(out, "# {line}")?;
        }
        let mut writer = csv::Writer::from_writer(out);
        for row in self.rows() {
            writer.serialize(row)?;
        }
        writer.flush()?;
        Ok(())
    }

    /// Reads a table written by [`OrbitSeries::write_csv`].
    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(input);
        let mut provenance = Provenance::Oracle;
        let mut values = Vec::new();
        for row in reader.deserialize::<OrbitRow>() {
            let row = row?;
            provenance = row.provenance;
            values.push(row.value_exact);
        }
        Ok(Self::new(provenance, values))
    }
}
