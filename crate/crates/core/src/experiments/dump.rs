use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracle::{
    baker_unitary, momentum_operator, partial_fourier, position_operator, qft, weyl_pair,
    DenseOperator,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Qft,
    PartialFourier,
    Baker,
    Position,
    Momentum,
    WeylU,
    WeylV,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 7] = [
        OperatorKind::Qft,
        OperatorKind::PartialFourier,
        OperatorKind::Baker,
        OperatorKind::Position,
        OperatorKind::Momentum,
        OperatorKind::WeylU,
        OperatorKind::WeylV,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorKind::Qft => "qft",
            OperatorKind::PartialFourier => "partial-fourier",
            OperatorKind::Baker => "baker",
            OperatorKind::Position => "position",
            OperatorKind::Momentum => "momentum",
            OperatorKind::WeylU => "weyl-u",
            OperatorKind::WeylV => "weyl-v",
        }
    }

    /// Builds the operator; `m` is only read by the partial Fourier transform.
    pub fn build(self, qubits: usize, m: usize) -> Result<DenseOperator> {
        match self {
            OperatorKind::Qft => qft(qubits),
            OperatorKind::PartialFourier => partial_fourier(m, qubits),
            OperatorKind::Baker => baker_unitary(qubits),
            OperatorKind::Position => position_operator(qubits),
            OperatorKind::Momentum => momentum_operator(qubits),
            OperatorKind::WeylU => Ok(weyl_pair(qubits)?.0),
            OperatorKind::WeylV => Ok(weyl_pair(qubits)?.1),
        }
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|k| k.as_str()).collect();
                Error::Config(format!(
                    "unknown operator {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Writes `operator_<name>_N<N>.csv` (with `_m<m>` for the partial transform)
/// as `row,col,re,im`.
pub fn oracle_dump(kind: OperatorKind, qubits: usize, m: usize, out_dir: &Path) -> Result<PathBuf> {
    let op = kind.build(qubits, m)?;
    fs::create_dir_all(out_dir)?;
    let suffix = match kind {
        OperatorKind::PartialFourier => format!("_m{m}"),
        _ => String::new(),
    };
    let path = out_dir.join(format!("operator_{}_N{qubits}{suffix}.csv", kind.as_str()));
    op.write_csv(std::io::BufWriter::new(fs::File::create(&path)?))?;
    Ok(path)
}
