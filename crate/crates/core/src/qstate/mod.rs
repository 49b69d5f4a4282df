//! Dense density-matrix algebra on up to four qubits.

mod bloch;
mod correlation;
mod density;
mod eigen;
mod json;
mod matrix;
pub mod pauli;

pub use bloch::BlochVector;
pub use correlation::CorrelationDecomposition;
#[allow(unused_imports)]
pub(crate) use density::{embed, reduce};
pub use density::{ppt, trace_distance, DensityMatrix, MeasurementBranch, Separability};
pub use eigen::{hermitian_eigenvalues, min_eigenvalue};
pub use json::StateJson;
pub use matrix::ComplexMatrix;
