//! JSON file formats for states, phase vectors, operators and minor reports.
//!
//! Complex numbers are `[re, im]` pairs; vectors are listed in basis-index
//! order. Floats are written in shortest round-trip form, so a value read
//! back is bit-identical to the one written.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::entangler::{EntanglerOperator, PhaseVector};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::qstate::{PureState, MAX_QUBITS};
use crate::scalar::C;
use crate::segre::GeneratorReport;

type C64 = C<f64>;

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(p: &[f64; 2]) -> C64 {
    C::new(p[0], p[1])
}

fn check_len(qubits: usize, len: usize, what: &str) -> Result<()> {
    if qubits == 0 || qubits > MAX_QUBITS {
        return Err(Error::Format(format!(
            "\"qubits\" must be between 1 and {MAX_QUBITS}, got {qubits}"
        )));
    }
    if len != 1 << qubits {
        return Err(Error::Format(format!(
            "\"{what}\" has {len} entries, expected 2^{qubits} = {}",
            1usize << qubits
        )));
    }
    Ok(())
}

/// `{"qubits": m, "amplitudes": [[re, im], …]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(s: &PureState<f64>) -> Self {
        Self {
            qubits: s.qubit_count(),
            amplitudes: s.amplitudes().iter().copied().map(pair).collect(),
        }
    }

    pub fn into_state(self) -> Result<PureState<f64>> {
        check_len(self.qubits, self.amplitudes.len(), "amplitudes")?;
        PureState::new(self.qubits, self.amplitudes.iter().map(unpair).collect())
    }
}

/// `{"qubits": m, "phases": [[re, im], …]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseFile {
    pub qubits: usize,
    pub phases: Vec<[f64; 2]>,
}

impl PhaseFile {
    pub fn from_phases(p: &PhaseVector<f64>) -> Self {
        Self {
            qubits: p.qubit_count(),
            phases: p.phases().iter().copied().map(pair).collect(),
        }
    }

    /// Raw grade; callers upgrade with [`PhaseVector::into_unitary`].
    pub fn into_phases(self) -> Result<PhaseVector<f64>> {
        check_len(self.qubits, self.phases.len(), "phases")?;
        PhaseVector::raw(self.qubits, self.phases.iter().map(unpair).collect())
    }
}

/// Sparse `{"qubits": m, "entries": [[row, col, re, im], …]}` sorted by row,
/// or dense `{"qubits": m, "matrix": [[[re, im], …], …]}` row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorFile {
    Sparse {
        qubits: usize,
        entries: Vec<(usize, usize, f64, f64)>,
    },
    Dense {
        qubits: usize,
        matrix: Vec<Vec<[f64; 2]>>,
    },
}

impl OperatorFile {
    pub fn sparse(r: &EntanglerOperator<f64>) -> Self {
        Self::Sparse {
            qubits: r.qubit_count(),
            entries: r.entries().map(|(i, j, v)| (i, j, v.re, v.im)).collect(),
        }
    }

    pub fn dense(r: &EntanglerOperator<f64>) -> Result<Self> {
        let m = r.to_dense()?;
        Ok(Self::Dense {
            qubits: r.qubit_count(),
            matrix: m
                .to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(pair).collect())
                .collect(),
        })
    }

    pub fn qubits(&self) -> usize {
        match self {
            Self::Sparse { qubits, .. } | Self::Dense { qubits, .. } => *qubits,
        }
    }

    pub fn into_matrix(self) -> Result<DenseMatrix<f64>> {
        let qubits = self.qubits();
        if qubits == 0 || qubits > 12 {
            return Err(Error::Format(format!(
                "operator files are read densely; {qubits} qubits is out of range 1..=12"
            )));
        }
        let n = 1usize << qubits;
        match self {
            Self::Sparse { entries, .. } => {
                let mut m = DenseMatrix::zeros(n, n);
                for (r, c, re, im) in entries {
                    if r >= n || c >= n {
                        return Err(Error::Format(format!(
                            "entry ({r}, {c}) outside a {n}x{n} operator"
                        )));
                    }
                    m[(r, c)] = C::new(re, im);
                }
                Ok(m)
            }
            Self::Dense { matrix, .. } => {
                if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
                    return Err(Error::Format(format!("dense matrix must be {n}x{n}")));
                }
                DenseMatrix::from_rows(
                    matrix
                        .iter()
                        .map(|row| row.iter().map(unpair).collect())
                        .collect(),
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinorRecord {
    pub cols: [usize; 2],
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub plus: [usize; 2],
    pub minus: [usize; 2],
    pub multiplicity: usize,
    pub re: f64,
    pub im: f64,
}

/// Export form of a [`GeneratorReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub qubits: usize,
    /// `minors[j−1]` holds the minors of flattening `j`.
    pub minors: Vec<Vec<MinorRecord>>,
    pub distinct: Vec<GeneratorRecord>,
    pub max_abs_minor: f64,
    pub measure: f64,
}

impl ReportFile {
    pub fn new(report: &GeneratorReport<f64>, measure: f64) -> Self {
        Self {
            qubits: report.qubits,
            minors: report
                .per_flattening
                .iter()
                .map(|ms| {
                    ms.iter()
                        .map(|m| MinorRecord {
                            cols: [m.cols.0, m.cols.1],
                            re: m.value.re,
                            im: m.value.im,
                        })
                        .collect()
                })
                .collect(),
            distinct: report
                .distinct
                .iter()
                .map(|g| GeneratorRecord {
                    plus: [g.plus.0, g.plus.1],
                    minus: [g.minus.0, g.minus.1],
                    multiplicity: g.multiplicity,
                    re: g.value.re,
                    im: g.value.im,
                })
                .collect(),
            max_abs_minor: report.max_abs_minor,
            measure,
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_state(path: &Path) -> Result<PureState<f64>> {
    read_json::<StateFile>(path)?.into_state()
}

pub fn write_state(path: &Path, s: &PureState<f64>) -> Result<()> {
    write_json(path, &StateFile::from_state(s))
}

pub fn read_phases(path: &Path) -> Result<PhaseVector<f64>> {
    read_json::<PhaseFile>(path)?.into_phases()
}

pub fn write_phases(path: &Path, p: &PhaseVector<f64>) -> Result<()> {
    write_json(path, &PhaseFile::from_phases(p))
}
