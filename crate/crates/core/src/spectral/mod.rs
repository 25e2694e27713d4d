//! Laplacian eigenpairs of `(Γ, μ)` from the characteristic matrix `M(γ)`.

pub mod expansion;
pub mod matrix;
pub mod solve;

pub use expansion::{kernel_residual, mercer_partial_sum, partial_trace, rayleigh_quotient, scaled_eigenvalues};
pub use matrix::{
    assemble_characteristic_matrix, characteristic_det, particular_solution, CharacteristicMatrix,
    EdgeBasisSolution, RowKind,
};
pub use solve::{
    eigen_residuals, eigenfunctions_at, find_eigenvalues, EigenOptions, EigenReport, Eigenpair, ResidualReport,
    SpectralProblem,
};
