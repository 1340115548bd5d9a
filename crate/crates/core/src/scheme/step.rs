use crate::diagnostics::EnergyRecord;
use crate::error::{Error, Result};
use crate::fem::{
    assemble_convection, assemble_ew, assemble_potential_load, assemble_stretch_load, bicgstab, conjugate_gradient,
    elastic_velocity_correction, BlockDiagMatrix, CsrMatrix, P0VectorField, P1ScalarField, P1VectorField,
    SolveStats, SolverOptions,
};
use crate::mesh::TriMesh;

use super::{solve_zero_mean, Scheme, SimState};

/// Result of the director/auxiliary step.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectorUpdate {
    pub d: P1VectorField,
    pub w: P0VectorField,
    pub stats: SolveStats,
}

/// Solver statistics and energy bookkeeping of one time step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    /// Index of the state produced by this step.
    pub step: usize,
    pub director: SolveStats,
    pub pressure: SolveStats,
    pub velocity: [SolveStats; 2],
    pub energy_before: f64,
    pub energy_after: f64,
    /// `k nu ||grad u^{n+1}||^2`.
    pub viscous_dissipation: f64,
    /// `k lambda gamma ||w^{n+1}||^2`.
    pub relaxation_dissipation: f64,
    /// `energy_before - energy_after - dissipation`; non-negative when the
    /// discrete energy law holds.
    pub energy_margin: f64,
}

impl StepReport {
    pub(crate) fn new(step: usize, stats: [SolveStats; 4], before: &EnergyRecord, after: &EnergyRecord) -> Self {
        Self {
            step,
            director: stats[0],
            pressure: stats[1],
            velocity: [stats[2], stats[3]],
            energy_before: before.total,
            energy_after: after.total,
            viscous_dissipation: after.viscous_dissipation,
            relaxation_dissipation: after.relaxation_dissipation,
            energy_margin: before.total - after.total - after.viscous_dissipation - after.relaxation_dissipation,
        }
    }
}

/// `(1/k) M_{d,w} E^{-1} M_{w,d}`, assembled element by element.
fn schur_coupling(mesh: &TriMesh, einv: &BlockDiagMatrix, k: f64) -> CsrMatrix {
    let mut trip = Vec::with_capacity(36 * mesh.num_elements());
    for (e, tri) in mesh.triangles().iter().enumerate() {
        let third = mesh.area(e) / 3.0;
        let s = third * third / k;
        let blk = einv.block(e);
        for &a in tri {
            for &b in tri {
                for i in 0..2 {
                    for j in 0..2 {
                        trip.push((2 * a + i, 2 * b + j, s * blk[2 * i + j]));
                    }
                }
            }
        }
    }
    let n = 2 * mesh.num_vertices();
    CsrMatrix::from_triplets(n, n, &trip)
}

impl Scheme {
    fn solve_error(stage: &'static str) -> impl FnOnce(crate::error::SolverError) -> Error {
        move |source| Error::Solve { stage, source }
    }

    /// Schur matrix and right-hand side of the director step, together
    /// with the pieces needed to recover `w`.
    pub fn director_system(&self, state: &SimState) -> Result<(CsrMatrix, Vec<f64>, BlockDiagMatrix, Vec<f64>)> {
        let mesh = &self.mesh;
        let k = self.cfg.dt;
        let ew = assemble_ew(mesh, &state.d, self.coupling_params());
        let einv = ew.inverse()?;
        let fw = assemble_stretch_load(mesh, &state.u, &state.d, self.cfg.beta);
        let f = assemble_potential_load(mesh, &state.d, self.potential_params());

        let matrix = self.ops.director_base.add_scaled(1.0, &schur_coupling(mesh, &einv, k));
        let mut inner = self.ops.mwd.mul_vec(&state.d.values);
        for (v, g) in inner.iter_mut().zip(&fw) {
            *v = *v / k - g;
        }
        let mut rhs = self.ops.mwd.tr_mul_vec(&einv.mul_vec(&inner));
        for (r, fi) in rhs.iter_mut().zip(&f) {
            *r += fi;
        }
        Ok((matrix, rhs, einv, fw))
    }

    /// Coupled director/auxiliary step via the Schur complement with
    /// respect to `E_w`, then block-diagonal recovery of `w`.
    pub fn director_step(&self, state: &SimState) -> Result<DirectorUpdate> {
        let (matrix, rhs, einv, fw) = self.director_system(state)?;
        let mut d = state.d.clone();
        let stats = conjugate_gradient(&matrix, &rhs, &mut d.values, SolverOptions::with_tol(self.cfg.solver_tol))
            .map_err(Self::solve_error("director"))?;

        let k = self.cfg.dt;
        let diff: Vec<f64> = state.d.values.iter().zip(&d.values).map(|(a, b)| a - b).collect();
        let mut inner = self.ops.mwd.mul_vec(&diff);
        for (v, g) in inner.iter_mut().zip(&fw) {
            *v = *v / k - g;
        }
        let w = P0VectorField {
            dim: 2,
            values: einv.mul_vec(&inner),
        };
        Ok(DirectorUpdate { d, w, stats })
    }

    /// Elementwise correction `u~ - u^n` for the given auxiliary variable.
    pub fn velocity_correction(&self, state: &SimState, w: &P0VectorField) -> P0VectorField {
        elastic_velocity_correction(&self.mesh, &state.d, w, self.cfg.lambda, self.cfg.beta, self.cfg.dt)
    }

    /// Right-hand side `(u~, grad q)` of the pressure step.
    pub fn pressure_rhs(&self, state: &SimState, w: &P0VectorField) -> Vec<f64> {
        let mesh = &self.mesh;
        let corr = self.velocity_correction(state, w);
        let mut rhs = vec![0.0; mesh.num_vertices()];
        for (e, tri) in mesh.triangles().iter().enumerate() {
            let ubar = state.u.element_mean2(mesh, e);
            let c = corr.element2(e);
            let area = mesh.area(e);
            let ut = [area * (ubar[0] + c[0]), area * (ubar[1] + c[1])];
            let g = mesh.basis_gradients(e);
            for (a, &v) in tri.iter().enumerate() {
                rhs[v] += ut[0] * g[a][0] + ut[1] * g[a][1];
            }
        }
        rhs
    }

    /// Pressure projection `k (grad p, grad q) + j(p, q) = (u~, grad q)`
    /// with `int p = 0`. `w` is the auxiliary variable of the current step.
    pub fn pressure_step(&self, state: &SimState, w: &P0VectorField) -> Result<(P1ScalarField, SolveStats)> {
        let rhs = self.pressure_rhs(state, w);
        let mut p = state.p.clone();
        let diag = self.ops.pressure.diagonal();
        let stats = solve_zero_mean(
            &self.ops.pressure,
            &diag,
            &self.ops.mass_row_sums,
            &rhs,
            &mut p.values,
            self.cfg.solver_tol,
        )
        .map_err(Self::solve_error("pressure"))?;
        Ok((p, stats))
    }

    /// Scalar velocity operator `M/k + C(u^n) + nu L` on interior nodes.
    pub fn velocity_matrix(&self, u: &P1VectorField) -> CsrMatrix {
        let conv = assemble_convection(&self.mesh, u);
        let full = self
            .ops
            .mass
            .scaled(1.0 / self.cfg.dt)
            .add_scaled(1.0, &conv)
            .add_scaled(self.cfg.nu, &self.ops.stiffness);
        full.restrict(&self.ops.interior, &self.ops.interior)
    }

    /// Full-length right-hand sides (one per component) of the velocity step.
    pub fn velocity_rhs(&self, state: &SimState, w: &P0VectorField, p: &P1ScalarField) -> [Vec<f64>; 2] {
        let mesh = &self.mesh;
        let k = self.cfg.dt;
        let corr = self.velocity_correction(state, w);
        let gp = self.ops.grad.mul_vec(&p.values);
        let mut out = [vec![0.0; mesh.num_vertices()], vec![0.0; mesh.num_vertices()]];
        for (c, rhs) in out.iter_mut().enumerate() {
            let mu = self.ops.mass.mul_vec(&state.u.component(c));
            for v in 0..mesh.num_vertices() {
                rhs[v] = mu[v] / k - gp[2 * v + c];
            }
        }
        for (e, tri) in mesh.triangles().iter().enumerate() {
            let c = corr.element2(e);
            let s = mesh.area(e) / (3.0 * k);
            for &v in tri {
                out[0][v] += s * c[0];
                out[1][v] += s * c[1];
            }
        }
        out
    }

    /// Velocity step; both components share one matrix.
    pub fn velocity_step(
        &self,
        state: &SimState,
        w: &P0VectorField,
        p: &P1ScalarField,
    ) -> Result<(P1VectorField, [SolveStats; 2])> {
        let matrix = self.velocity_matrix(&state.u);
        let rhs = self.velocity_rhs(state, w, p);
        let interior = &self.ops.interior;
        let mut u = P1VectorField::zeros(&self.mesh, 2);
        let mut stats = [SolveStats::default(); 2];
        for c in 0..2 {
            let b: Vec<f64> = interior.iter().map(|&v| rhs[c][v]).collect();
            let prev = state.u.component(c);
            let mut x: Vec<f64> = interior.iter().map(|&v| prev[v]).collect();
            stats[c] = bicgstab(&matrix, &b, &mut x, SolverOptions::with_tol(self.cfg.solver_tol))
                .map_err(Self::solve_error("velocity"))?;
            let mut comp = vec![0.0; self.mesh.num_vertices()];
            for (&v, xi) in interior.iter().zip(x) {
                comp[v] = xi;
            }
            u.set_component(c, &comp);
        }
        Ok((u, stats))
    }

    /// One full time step. Energies are not evaluated here.
    pub fn advance(&self, state: &SimState) -> Result<(SimState, [SolveStats; 4])> {
        let dir = self.director_step(state)?;
        let (p, ps) = self.pressure_step(state, &dir.w)?;
        let (u, vs) = self.velocity_step(state, &dir.w, &p)?;
        let next = SimState {
            u,
            p,
            d: dir.d,
            w: dir.w,
            t: (state.step + 1) as f64 * self.cfg.dt,
            step: state.step + 1,
        };
        Ok((next, [dir.stats, ps, vs[0], vs[1]]))
    }
}
