//! Exact quantum and classical baker's map dynamics.
//!
//! The quantized baker's map on `N` qubits and its classical counterpart are
//! compared through the mean position `r_n = ⟨ξ|Tⁿ q̂ T⁻ⁿ|ξ⟩`, computed exactly
//! as a dyadic rational for any `N`, against the classical orbit `q_n` of the
//! same initial point. Their statistics are compared with the entropic chaos
//! degree. Small qubit counts are cross-checked against dense matrices.
//!
//! ```
//! use quantum_baker::{closedform::mean_position, numeric::BitString};
//!
//! let xi: BitString = "110".parse().unwrap();
//! assert_eq!(mean_position(&xi, 1).to_string(), "5/2^3");
//! assert_eq!(mean_position(&xi, 3).to_string(), "1/2^1");
//! ```

pub mod chaos;
pub mod classical;
pub mod closedform;
pub mod error;
pub mod experiments;
pub mod numeric;
pub mod oracle;
pub mod orbit;

pub use error::{Error, Result};
pub use numeric::{BitString, DyadicRational};
pub use orbit::{OrbitSeries, Provenance};
