//! Grover search, from closed-form analytics down to a compiled circuit.
//!
//! The crate is layered bottom-up:
//!
//! - [`qcore`]: complex state vectors, dense matrices, tensor, inner and outer products.
//! - [`gates`]: the standard gate set and in-place bitmask kernels that apply gates
//!   to a [`StateVector`] without building full matrices.
//! - [`circuit`]: a small circuit IR with a line-based text format, execution,
//!   dense-matrix extraction, equivalence checks and gate census.
//! - [`compile`]: builders for the oracle and diffusion circuits and the lowering
//!   passes down to `{CNOT, one-qubit gates}`.
//! - [`grover`]: the search engines (analytic, state vector, compiled), measurement
//!   sampling and probability sweeps.
//! - [`cli`]: the `grover` command-line frontend.
//!
//! Basis states are labelled in decimal with qubit 0 as the most significant bit,
//! so on three qubits `|101⟩ = |5⟩`.
//!
//! ```
//! use grover_sim::grover::{run_search, Engine, GroverConfig};
//!
//! let report = run_search(&GroverConfig::new(3, 5).engine(Engine::StateVector)).unwrap();
//! assert_eq!(report.k0, 2);
//! assert!((report.p_engine - 121.0 / 128.0).abs() < 1e-10);
//! ```

pub mod circuit;
pub mod cli;
pub mod compile;
mod error;
pub mod gates;
pub mod grover;
pub mod qcore;
pub mod verify;

pub use error::{Error, Result};
pub use qcore::{Amplitude, Matrix, StateVector};

/// Tolerance for norms and amplitudes.
pub const AMPLITUDE_EPS: f64 = 1e-12;
/// Tolerance for matrix equivalence and unitarity.
pub const MATRIX_EPS: f64 = 1e-10;
/// Largest qubit count for which dense matrices are built.
pub const MAX_DENSE_QUBITS: usize = 12;
