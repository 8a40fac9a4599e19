//! Two-spin NMR gate toolkit: compiles rotation/coupling pulse sequences into
//! 4×4 unitaries, audits a catalog of CNOT-class matrices, decides matrix
//! similarity, enumerates the sixteen-member CNOT family and selects sequences
//! an apparatus can realize.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the double-precision instantiation used by the CLI and the test-suite.

pub mod catalog;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod pulse;
pub mod scalar;
pub mod similarity;
pub mod synthesis;

pub use catalog::{audit_catalog, audit_entry, builtin_catalog, lookup, AuditRecord, CatalogEntry};
pub use dynamics::{
    apply_operator, coupling_delay, hamiltonian_unitary, CouplingDelay, HamiltonianParams, StateVector,
};
pub use error::{Error, Result};
pub use linalg::{
    eigen_decompose, equal_up_to_global_phase, exp_i_theta_pauli, pauli_string_matrix, tensor_product, EigenSystem,
    Mat2, MatrixDoc, Operator4, PauliAxis, PauliString,
};
pub use num_complex::Complex;
pub use pulse::{
    evaluate_sequence, parse_sequence, pulse_unitary, Angle, Pulse, PulseKind, PulseSequence, RotationAxis, Spin,
};
pub use scalar::{default_eigen_tol, default_eq_tol, Real};
pub use similarity::{
    check_similarity, check_similarity_with, find_conjugator, SimilarityOptions, SimilarityReport, Verdict,
};
pub use synthesis::{
    classify_cnot_like, enumerate_family, select_realizable, AxisConstraint, GateClassification, Polarity,
    SequenceTemplate,
};

pub type C64 = Complex<f64>;
pub type Op4 = Operator4<f64>;
pub type Op4F32 = Operator4<f32>;
pub type Eigen = EigenSystem<f64>;
pub type Report = SimilarityReport<f64>;
pub type Audit = AuditRecord<f64>;
pub type State = StateVector<f64>;
