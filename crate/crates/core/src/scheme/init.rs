use std::cell::RefCell;

use crate::config::{Preset, SimConfig};
use crate::error::{Error, Result, SolverError};
use crate::fem::{
    assemble_mass_p1, assemble_pressure_gradient, assemble_pressure_stabilization, conjugate_gradient, CsrMatrix,
    LinearOperator, P1ScalarField, P1VectorField, SolverOptions,
};
use crate::mesh::TriMesh;

use super::solve_zero_mean;

/// Nodal interpolant of `d0`.
pub fn init_director(d0: impl Fn([f64; 2]) -> [f64; 2], mesh: &TriMesh) -> P1VectorField {
    P1VectorField::interpolate(mesh, d0)
}

/// `p -> G^T M^{-1} G p + J p`, with the inner mass solve done by CG.
struct InitialPressureOperator<'a> {
    grad: &'a CsrMatrix,
    mass: &'a CsrMatrix,
    stab: &'a CsrMatrix,
    tol: f64,
    failure: RefCell<Option<SolverError>>,
}

impl InitialPressureOperator<'_> {
    fn mass_solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; b.len()];
        if let Err(e) = conjugate_gradient(self.mass, b, &mut x, SolverOptions::with_tol(self.tol)) {
            self.failure.borrow_mut().get_or_insert(e);
        }
        x
    }
}

impl LinearOperator for InitialPressureOperator<'_> {
    fn dim(&self) -> usize {
        self.stab.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let s = self.mass_solve(&self.grad.mul_vec(x));
        let gs = self.grad.tr_mul_vec(&s);
        self.stab.mul_vec_into(x, y);
        for (yi, g) in y.iter_mut().zip(gs) {
            *yi += g;
        }
    }

    fn diagonal(&self) -> Option<Vec<f64>> {
        let mut d = self.stab.diagonal();
        let md = self.mass.diagonal();
        for r in 0..self.grad.nrows() {
            let (cols, vals) = self.grad.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                d[c] += v * v / md[r];
            }
        }
        Some(d)
    }
}

/// Stabilized L2 projection of `u0` onto the discrete velocity space:
/// `(u, v) + (grad p, v) = (u0, v)`, `(div u, q) + j(p, q) = 0`, `int p = 0`.
pub fn init_velocity_pressure(
    u0: &P1VectorField,
    mesh: &TriMesh,
    cfg: &SimConfig,
) -> Result<(P1VectorField, P1ScalarField)> {
    let mut u = P1VectorField::zeros(mesh, 2);
    let mut p = P1ScalarField::zeros(mesh);
    if u0.values.iter().all(|&v| v == 0.0) {
        return Ok((u, p));
    }
    let interior: Vec<usize> = mesh.interior_nodes().iter().flat_map(|&v| [2 * v, 2 * v + 1]).collect();
    let all_p: Vec<usize> = (0..mesh.num_vertices()).collect();
    let mass = assemble_mass_p1(mesh);
    let mass_vec = mass.expand_components(2);
    let mii = mass_vec.restrict(&interior, &interior);
    let grad = assemble_pressure_gradient(mesh).restrict(&interior, &all_p);
    let stab = assemble_pressure_stabilization(mesh, cfg.s, cfg.nu);
    let load_full = mass_vec.mul_vec(&u0.values);
    let load: Vec<f64> = interior.iter().map(|&i| load_full[i]).collect();

    let op = InitialPressureOperator {
        grad: &grad,
        mass: &mii,
        stab: &stab,
        tol: 1e-13,
        failure: RefCell::new(None),
    };
    let rhs = grad.tr_mul_vec(&op.mass_solve(&load));
    let m = mass.mul_vec(&vec![1.0; mesh.num_vertices()]);
    let diag = op.diagonal().unwrap_or_default();
    let stage = "initial pressure";
    solve_zero_mean(&op, &diag, &m, &rhs, &mut p.values, (cfg.solver_tol * 10.0).max(1e-11))
        .map_err(|source| Error::Solve { stage, source })?;

    let gp = grad.mul_vec(&p.values);
    let r: Vec<f64> = load.iter().zip(&gp).map(|(a, b)| a - b).collect();
    let ui = op.mass_solve(&r);
    if let Some(source) = op.failure.into_inner() {
        return Err(Error::Solve { stage, source });
    }
    for (&i, v) in interior.iter().zip(ui) {
        u.values[i] = v;
    }
    Ok((u, p))
}

/// Initial `(d0h, u0h, p0h)` of a preset on `mesh`.
pub fn build_preset_initial_data(
    preset: Preset,
    cfg: &SimConfig,
    mesh: &TriMesh,
) -> Result<(P1VectorField, P1VectorField, P1ScalarField)> {
    let d = init_director(|x| preset.director(cfg.eps, x), mesh);
    let u0 = P1VectorField::interpolate(mesh, |x| preset.initial_velocity(x));
    let (u, p) = init_velocity_pressure(&u0, mesh, cfg)?;
    Ok((d, u, p))
}
