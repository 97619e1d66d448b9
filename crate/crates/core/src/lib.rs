//! Complete pools of Pauli-string generators.
//!
//! Pools are certified in polynomial time through the F2 rank of their
//! anti-commutation matrix and checked against an exact Lie-closure oracle at
//! small qubit counts. A dense-statevector VQE consumes the resulting pools.
//!
//! The F2 and Pauli layers are exact. The VQE layer is generic over
//! [`scalar::Real`]; the aliases below fix the usual precisions.

pub mod bits;
pub mod builder;
pub mod closure;
pub mod f2;
pub mod gamma;
pub mod io;
pub mod pauli;
pub mod scalar;
pub mod symmetry;
pub mod vqe;

pub use bits::BitVec;
pub use builder::{
    build_pool, reference_profile, reference_rank, verify_pool, BuildConfig, BuildError, BuildOutcome, CandidateSource,
    OraclePolicy, ReferenceProfile, VerificationReport, Verdict, VerifyOptions, BuildStats,
};
pub use closure::{
    bracket_closure, check_completeness, closure_contains, dla_dimension, is_bracket_independent, is_complete,
    AlgebraTarget, ClosureError, ClosureResult, Independence, IndependenceMode, OracleGuard,
};
pub use f2::{canonical_congruence, BitMatrix, CongruenceCertificate, F2Error};
pub use gamma::{build_gamma, congruent, contract, find_congruence, gamma_after_contraction, GammaMatrix, Origin, Pool, PoolError};
pub use pauli::{PauliError, PauliString, SymplecticVector};
pub use scalar::Real;
pub use symmetry::SymmetryConstraints;

pub type Statevector = vqe::Statevector<f64>;
pub type Statevector32 = vqe::Statevector<f32>;
pub type PauliSum = vqe::PauliSum<f64>;
pub type PauliSum32 = vqe::PauliSum<f32>;
pub type Ansatz = vqe::Ansatz<f64>;
pub type RunTrace = vqe::RunTrace<f64>;
