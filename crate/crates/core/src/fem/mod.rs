//! Finite-element spaces, assembly and linear algebra.

pub mod assembly;
pub mod blockdiag;
pub mod field;
pub mod quadrature;
pub mod solver;
pub mod sparse;

pub use assembly::{
    assemble_convection, assemble_coupling_block, assemble_ew, assemble_mass_p1, assemble_p0_mass,
    assemble_p1p0_mass, assemble_potential_load, assemble_pressure_gradient, assemble_pressure_stabilization,
    assemble_stiffness_p1, assemble_stretch_load, elastic_velocity_correction, CouplingParams, CouplingTerm,
};
pub use blockdiag::{invert_blockdiag, BlockDiagMatrix};
pub use field::{P0VectorField, P1ScalarField, P1VectorField};
pub use quadrature::{quadrature_rule, QuadraturePoint};
pub use solver::{
    bicgstab, conjugate_gradient, sparse_solve_general, sparse_solve_spd, LinearOperator, SolveStats, SolverOptions,
};
pub use sparse::CsrMatrix;
