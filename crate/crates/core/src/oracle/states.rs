use ndarray::Array1;
use num_complex::Complex64;
use serde::Serialize;

use super::operators::{baker_unitary, position_values, weyl_power, DenseOperator};
use super::{check_qubits, MAX_DENSE_QUBITS, MAX_ORACLE_QUBITS, MAX_ORACLE_STEPS};
use crate::error::{Error, Result};
use crate::numeric::BitString;

/// `2^N` complex amplitudes in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amplitudes: Array1<Complex64>,
}

impl StateVector {
    pub fn new(qubits: usize, amplitudes: Array1<Complex64>) -> Self {
        assert_eq!(
            amplitudes.len(),
            1 << qubits,
            "amplitude count does not match 2^N"
        );
        Self { qubits, amplitudes }
    }

    pub fn basis(label: &BitString) -> Self {
        let mut amplitudes = Array1::zeros(1 << label.len());
        amplitudes[label.index()] = Complex64::new(1.0, 0.0);
        Self::new(label.len(), amplitudes)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        self.amplitudes.mapv_inplace(|z| z / norm);
        self
    }

    pub fn apply(&self, op: &DenseOperator) -> Self {
        Self::new(self.qubits, op.matrix().dot(&self.amplitudes))
    }

    /// `⟨ψ|q̂|ψ⟩ = Σ_j q_j |ψ_j|²`.
    pub fn mean_position(&self) -> f64 {
        position_values(self.qubits)
            .iter()
            .zip(self.amplitudes.iter())
            .map(|(q, z)| q * z.norm_sqr())
            .sum()
    }
}

/// `ψ₀(q_j) ∝ exp(−q_j²/2)`, normalized.
pub fn vacuum_state(qubits: usize) -> Result<StateVector> {
    check_qubits("vacuum state", qubits, MAX_DENSE_QUBITS)?;
    let amplitudes = position_values(qubits)
        .into_iter()
        .map(|q| Complex64::new((-q * q / 2.0).exp(), 0.0))
        .collect();
    Ok(StateVector::new(qubits, amplitudes).normalized())
}

/// A coherent state `|α⟩`, `α = x + iv`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoherentState {
    pub x: i64,
    pub v: i64,
    #[serde(skip)]
    pub state: StateVector,
}

/// `|α⟩ = C e^{2πiq̂v} e^{−2πip̂x} |ψ₀⟩`, normalized.
///
/// `e^{−2πip̂}` moves amplitude down one grid site (up to a global phase), so
/// `|⟨j|x, 0⟩| = |ψ₀((j + x) mod 2^N)|`.
pub fn coherent_state(x: i64, v: i64, qubits: usize) -> Result<CoherentState> {
    let vacuum = vacuum_state(qubits)?;
    let displaced = vacuum
        .apply(&weyl_power(qubits, v as f64, -(x as f64))?)
        .normalized();
    Ok(CoherentState {
        x,
        v,
        state: displaced,
    })
}

fn check_oracle(qubits: usize, n: u64) -> Result<()> {
    check_qubits("mean-position oracle", qubits, MAX_ORACLE_QUBITS)?;
    if n > MAX_ORACLE_STEPS {
        return Err(Error::StepCap {
            what: "mean-position oracle",
            got: n,
            max: MAX_ORACLE_STEPS,
        });
    }
    Ok(())
}

/// `r_n = Σ_j q_j |⟨ξ|Tⁿ|j⟩|²`, from the row `⟨ξ|Tⁿ` built one factor of `T`
/// at a time.
pub fn oracle_mean_position(xi: &BitString, n: u64) -> Result<f64> {
    Ok(oracle_orbit(xi, n)?[n as usize])
}

/// `r_0, …, r_{n_max}` from a single pass of row products.
pub fn oracle_orbit(xi: &BitString, n_max: u64) -> Result<Vec<f64>> {
    check_oracle(xi.len(), n_max)?;
    oracle_orbit_with(&baker_unitary(xi.len())?, xi, n_max)
}

/// [`oracle_orbit`] with a prebuilt `T`, for repeated calls on one qubit count.
pub fn oracle_orbit_with(t: &DenseOperator, xi: &BitString, n_max: u64) -> Result<Vec<f64>> {
    let qubits = xi.len();
    check_oracle(qubits, n_max)?;
    if t.qubits() != qubits {
        return Err(Error::LengthMismatch {
            left: t.qubits(),
            right: qubits,
        });
    }
    let q = position_values(qubits);
    let mut row = StateVector::basis(xi).amplitudes;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for step in 0..=n_max {
        if step > 0 {
            row = row.dot(t.matrix());
        }
        out.push(
            q.iter()
                .zip(row.iter())
                .map(|(q, z)| q * z.norm_sqr())
                .sum(),
        );
    }
    Ok(out)
}

/// `⟨α|Tⁿ q̂ T⁻ⁿ|α⟩` for the coherent state of [`coherent_state`].
pub fn oracle_coherent_mean(x: i64, v: i64, n: u64, qubits: usize) -> Result<f64> {
    check_qubits("coherent-state oracle", qubits, MAX_ORACLE_QUBITS)?;
    let back = baker_unitary(qubits)?.adjoint();
    let mut state = coherent_state(x, v, qubits)?.state;
    for _ in 0..n {
        state = state.apply(&back);
    }
    Ok(state.mean_position())
}
