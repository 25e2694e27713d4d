//! Numerical kernels shared by the rest of the crate.

pub mod linalg;
pub mod piecewise;
pub mod poly;
pub mod quadrature;
pub mod roots;

pub use linalg::{nullspace_basis, solve_grounded, DEFAULT_RANK_TOL};
pub use piecewise::PiecewisePoly;
pub use poly::Poly;
pub use quadrature::{integrate_piecewise, QuadratureRule};
pub use roots::{scan_and_refine_roots, RootCandidate, RootKind, ScanOptions};
