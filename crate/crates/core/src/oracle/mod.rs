//! Brute-force dense matrices for small qubit counts: the Fourier transforms,
//! the baker unitary `T`, position and momentum, the Weyl pair, vacuum and
//! coherent states, and mean positions by direct multiplication.
//!
//! Everything here is `O(D²)` memory with `D = 2^N` and is meant as an
//! independent check of the closed forms, not as a simulator.

mod operators;
mod states;

pub use operators::{
    baker_unitary, momentum_operator, partial_fourier, partial_fourier_with, position_operator,
    position_values, qft, qft_with, weyl_pair, weyl_power, DenseOperator, FourierConvention,
};
pub use states::{
    coherent_state, oracle_coherent_mean, oracle_mean_position, oracle_orbit, oracle_orbit_with,
    vacuum_state, CoherentState, StateVector,
};

use crate::error::{Error, Result};

/// Largest qubit count for which dense operators are built.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Largest qubit count for the mean-position oracles.
pub const MAX_ORACLE_QUBITS: usize = 10;
/// Largest step count for [`oracle_mean_position`].
pub const MAX_ORACLE_STEPS: u64 = 64;

/// Unitarity, hermiticity and single-operator identities.
pub const STRUCTURAL_TOL: f64 = 1e-10;
/// Agreement between the oracle and an exact closed form.
pub const CROSS_MODULE_TOL: f64 = 1e-9;

pub(crate) fn check_qubits(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::QubitCap { what, got: n, max });
    }
    Ok(())
}
