//! The time-splitting scheme: a coupled director/auxiliary step solved
//! through its Schur complement, a stabilized pressure projection, and a
//! linear convection-diffusion velocity step.

mod init;
mod run;
mod step;

pub use init::{build_preset_initial_data, init_director, init_velocity_pressure};
pub use run::{time_loop, RunOutput, RunStatus, Simulation};
pub use step::{DirectorUpdate, StepReport};

use crate::config::SimConfig;
use crate::fem::{
    assemble_mass_p1, assemble_p0_mass, assemble_p1p0_mass, assemble_pressure_gradient,
    assemble_pressure_stabilization, assemble_stiffness_p1, BlockDiagMatrix, CouplingParams, CsrMatrix,
    LinearOperator, P0VectorField, P1ScalarField, P1VectorField,
};
use crate::mesh::TriMesh;
use crate::potential::PotentialParams;

/// Everything carried from one time step to the next.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub u: P1VectorField,
    pub p: P1ScalarField,
    pub d: P1VectorField,
    /// Auxiliary variable of the last director step (zero initially).
    pub w: P0VectorField,
    pub t: f64,
    pub step: usize,
}

impl SimState {
    pub fn new(mesh: &TriMesh, u: P1VectorField, p: P1ScalarField, d: P1VectorField) -> Self {
        Self {
            u,
            p,
            d,
            w: P0VectorField::zeros(mesh, 2),
            t: 0.0,
            step: 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite()
            && self.d.is_finite()
            && self.p.values.iter().all(|v| v.is_finite())
            && self.w.values.iter().all(|v| v.is_finite())
    }
}

/// Time-independent matrices of the scheme.
#[derive(Debug, Clone)]
pub struct Operators {
    /// Scalar P1 mass.
    pub mass: CsrMatrix,
    /// Scalar P1 stiffness.
    pub stiffness: CsrMatrix,
    /// `M_d` on interleaved vector dofs.
    pub mass_vec: CsrMatrix,
    /// `L_d` on interleaved vector dofs.
    pub stiffness_vec: CsrMatrix,
    /// `M_{w,d}`: P0 vector rows, P1 vector columns.
    pub mwd: CsrMatrix,
    pub p0_mass: BlockDiagMatrix,
    /// `(grad p, v)`: P1 vector rows, P1 scalar columns.
    pub grad: CsrMatrix,
    /// Pressure operator `k L + j`.
    pub pressure: CsrMatrix,
    /// `M 1`, the load of the zero-mean constraint.
    pub mass_row_sums: Vec<f64>,
    /// `L_d + hf/(2 eps^2) M_d`, the director-only part of the Schur matrix.
    pub director_base: CsrMatrix,
    pub interior: Vec<usize>,
}

impl Operators {
    pub fn new(mesh: &TriMesh, cfg: &SimConfig) -> Self {
        let mass = assemble_mass_p1(mesh);
        let stiffness = assemble_stiffness_p1(mesh);
        let mass_vec = mass.expand_components(2);
        let stiffness_vec = stiffness.expand_components(2);
        let pressure = stiffness
            .scaled(cfg.dt)
            .add_scaled(1.0, &assemble_pressure_stabilization(mesh, cfg.s, cfg.nu));
        let mass_row_sums = mass.mul_vec(&vec![1.0; mesh.num_vertices()]);
        let stab = PotentialParams { eps: cfg.eps, hf: cfg.hf }.stabilization();
        let director_base = stiffness_vec.add_scaled(stab, &mass_vec);
        Self {
            mwd: assemble_p1p0_mass(mesh).expand_components(2),
            p0_mass: assemble_p0_mass(mesh),
            grad: assemble_pressure_gradient(mesh),
            interior: mesh.interior_nodes(),
            mass,
            stiffness,
            mass_vec,
            stiffness_vec,
            pressure,
            mass_row_sums,
            director_base,
        }
    }
}

/// Mesh, configuration and precomputed operators of one run.
#[derive(Debug, Clone)]
pub struct Scheme {
    cfg: SimConfig,
    mesh: TriMesh,
    ops: Operators,
}

impl Scheme {
    /// The configuration is assumed validated.
    pub fn new(cfg: SimConfig, mesh: TriMesh) -> Self {
        let ops = Operators::new(&mesh, &cfg);
        Self { cfg, mesh, ops }
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn mesh(&self) -> &TriMesh {
        &self.mesh
    }

    pub fn operators(&self) -> &Operators {
        &self.ops
    }

    pub fn coupling_params(&self) -> CouplingParams {
        CouplingParams {
            lambda: self.cfg.lambda,
            beta: self.cfg.beta,
            gamma: self.cfg.gamma,
            k: self.cfg.dt,
        }
    }

    pub fn potential_params(&self) -> PotentialParams {
        PotentialParams {
            eps: self.cfg.eps,
            hf: self.cfg.hf,
        }
    }
}

/// `A + c m m^T`: removes the constant kernel of a symmetric operator
/// while leaving its action on `m`-orthogonal vectors unchanged.
pub(crate) struct RankOneShift<'a, A: LinearOperator + ?Sized> {
    pub a: &'a A,
    pub m: &'a [f64],
    pub c: f64,
}

impl<'a, A: LinearOperator + ?Sized> RankOneShift<'a, A> {
    /// Chooses `c` so the shift is on the scale of the diagonal of `a`.
    pub fn balanced(a: &'a A, m: &'a [f64], diag: &[f64]) -> Self {
        let n = diag.len().max(1) as f64;
        let mm: f64 = m.iter().map(|x| x * x).sum();
        let c = diag.iter().sum::<f64>() / (n * mm);
        Self { a, m, c }
    }
}

impl<A: LinearOperator + ?Sized> LinearOperator for RankOneShift<'_, A> {
    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.a.apply(x, y);
        let mx: f64 = self.m.iter().zip(x).map(|(a, b)| a * b).sum();
        for (yi, mi) in y.iter_mut().zip(self.m) {
            *yi += self.c * mx * mi;
        }
    }

    fn diagonal(&self) -> Option<Vec<f64>> {
        let mut d = self.a.diagonal()?;
        for (di, mi) in d.iter_mut().zip(self.m) {
            *di += self.c * mi * mi;
        }
        Some(d)
    }
}

/// Solves `A p + mu m = b`, `m^T p = 0` for symmetric `A` with `A 1 = 0`.
///
/// Testing the first equation with the constant vector gives
/// `mu = 1^T b / 1^T m` in closed form, after which `p` solves the shifted
/// system `(A + c m m^T) p = b - mu m`.
pub(crate) fn solve_zero_mean<A: LinearOperator + ?Sized>(
    a: &A,
    diag: &[f64],
    m: &[f64],
    b: &[f64],
    x: &mut [f64],
    tol: f64,
) -> Result<crate::fem::SolveStats, crate::error::SolverError> {
    let total: f64 = m.iter().sum();
    let mu = b.iter().sum::<f64>() / total;
    let rhs: Vec<f64> = b.iter().zip(m).map(|(bi, mi)| bi - mu * mi).collect();
    let op = RankOneShift::balanced(a, m, diag);
    let stats = crate::fem::conjugate_gradient(&op, &rhs, x, crate::fem::SolverOptions::with_tol(tol))?;
    // exact projection; A is blind to constants so this only removes solver noise
    let mean = m.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<f64>() / total;
    for xi in x.iter_mut() {
        *xi -= mean;
    }
    Ok(stats)
}
