//! Dense-statevector variational eigensolvers over Pauli-string pools.

mod adapt;
mod ansatz;
mod exact;
mod operator;
mod optimize;
mod state;

use thiserror::Error;

use crate::pauli::PauliError;

pub use adapt::{run_adapt, run_niducc, AdaptConfig, NiDuccConfig, RunTrace, TraceRow};
pub use ansatz::{cnot_estimate, parse_reference, Ansatz, Layout};
pub use exact::{dense_ground_energy, dense_matrix, EXACT_MAX_QUBITS};
pub use operator::PauliSum;
pub use optimize::{minimize_bfgs, OptimizerConfig, OptimizerResult};
pub use state::Statevector;

/// Largest register the statevector code accepts.
pub const STATE_MAX_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VqeError {
    #[error("operator acts on {found} qubits, expected {expected}")]
    QubitMismatch { expected: usize, found: usize },
    #[error("{n} qubits exceeds the limit of {limit}")]
    TooManyQubits { n: usize, limit: usize },
    #[error("pool is empty")]
    EmptyPool,
    #[error("k_layers must be at least 1")]
    NoLayers,
    #[error("coefficient of {0} is not real")]
    NonHermitian(String),
    #[error("invalid reference state: {0}")]
    Reference(String),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

pub(crate) fn check_qubits(expected: usize, found: usize) -> Result<(), VqeError> {
    if expected == found {
        Ok(())
    } else {
        Err(VqeError::QubitMismatch { expected, found })
    }
}
