//! Complex linear algebra for 2×2 and 4×4 operators, Pauli strings and their exponentials.

mod eigen;
mod json;
mod matrix;
mod pauli;

pub(crate) use eigen::vec_norm;
pub use eigen::{canonical_arg, canonical_order, eigen_decompose, match_spectra, normality_tolerance, EigenSystem};
pub(crate) use json::complex_pair;
pub use json::MatrixDoc;
pub use matrix::{equal_up_to_global_phase, format_complex, tensor_product, Mat2, Operator4};
pub use pauli::{exp_i_theta_pauli, pauli_string_matrix, PauliAxis, PauliString};
