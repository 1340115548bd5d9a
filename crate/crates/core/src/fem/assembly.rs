//! Global matrices and load vectors of the fully discrete scheme.
//!
//! Index conventions: P1 vector dofs are `node * 2 + component`, P0 vector
//! dofs are `element * 2 + component`. Scalar matrices are `nodes x nodes`
//! and are expanded with [`CsrMatrix::expand_components`] when a vector
//! version is needed.
//!
//! Terms coupling the piecewise-constant auxiliary variable `w` with the
//! director use broken (elementwise) derivatives: on each element `w` is a
//! constant vector `a`, so
//!
//! * `(grad d) a = (a . grad) d` is the convective coupling,
//! * `div(a d^T) = (div d) a` is the stretching coupling,
//! * `div(d a^T) = (grad d) a` is the transposed-stretching coupling,
//!
//! where `(grad d)_{ij} = d_j d_i` and the divergence of a matrix is taken
//! row by row. With this convective map the convective and transposed
//! stretching couplings coincide, so at `beta = 0` the elastic force on the
//! fluid vanishes identically. No inter-element jump terms are added.

use crate::fem::blockdiag::BlockDiagMatrix;
use crate::fem::field::{P0VectorField, P1VectorField};
use crate::fem::quadrature::{bilinear_rule, potential_rule};
use crate::fem::sparse::CsrMatrix;
use crate::mesh::TriMesh;
use crate::potential::{truncated_penalty, PotentialParams};

pub type Mat2 = [[f64; 2]; 2];

/// The three ways the auxiliary variable couples to the flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingTerm {
    /// Director transport, tested as `(u, (grad d) w)`.
    Convective,
    /// `beta (grad u) d`, tested as `-(u, div(w d^T))`.
    Stretch,
    /// `(1 + beta) (grad u)^T d`, tested as `-(u, div(d w^T))`.
    TransposedStretch,
}

impl CouplingTerm {
    pub const ALL: [CouplingTerm; 3] = [Self::Convective, Self::Stretch, Self::TransposedStretch];

    /// Constant 2x2 map `a -> S a` on an element where `grad d = jac`.
    pub fn element_map(self, jac: &Mat2) -> Mat2 {
        let div = jac[0][0] + jac[1][1];
        match self {
            Self::Convective | Self::TransposedStretch => *jac,
            Self::Stretch => [[div, 0.0], [0.0, div]],
        }
    }

    /// Signed weight of the term in the intermediate velocity
    /// `u~ = u + lambda k sum(weight * S w)`.
    pub fn weight(self, beta: f64) -> f64 {
        match self {
            Self::Convective => 1.0,
            Self::Stretch => -beta,
            Self::TransposedStretch => -(1.0 + beta),
        }
    }
}

fn transpose(m: &Mat2) -> Mat2 {
    [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
}

fn mat_vec(m: &Mat2, v: [f64; 2]) -> [f64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// `S^T S`.
fn gram(s: &Mat2) -> Mat2 {
    let mut g = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            g[i][j] = s[0][i] * s[0][j] + s[1][i] * s[1][j];
        }
    }
    g
}

const LOCAL_MASS: [[f64; 3]; 3] = [[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]];

/// Scalar P1 mass matrix `(phi_j, phi_i)`.
pub fn assemble_mass_p1(mesh: &TriMesh) -> CsrMatrix {
    let mut trip = Vec::with_capacity(9 * mesh.num_elements());
    for (e, tri) in mesh.triangles().iter().enumerate() {
        let s = mesh.area(e) / 12.0;
        for a in 0..3 {
            for b in 0..3 {
                trip.push((tri[a], tri[b], s * LOCAL_MASS[a][b]));
            }
        }
    }
    CsrMatrix::from_triplets(mesh.num_vertices(), mesh.num_vertices(), &trip)
}

/// Scalar P1 stiffness matrix `(grad phi_j, grad phi_i)`.
pub fn assemble_stiffness_p1(mesh: &TriMesh) -> CsrMatrix {
    let mut trip = Vec::with_capacity(9 * mesh.num_elements());
    for (e, tri) in mesh.triangles().iter().enumerate() {
        let g = mesh.basis_gradients(e);
        let area = mesh.area(e);
        for a in 0..3 {
            for b in 0..3 {
                trip.push((tri[a], tri[b], area * (g[a][0] * g[b][0] + g[a][1] * g[b][1])));
            }
        }
    }
    CsrMatrix::from_triplets(mesh.num_vertices(), mesh.num_vertices(), &trip)
}

/// Mixed mass `(phi_node, chi_element)`: `elements x nodes`, entry `|K|/3`.
pub fn assemble_p1p0_mass(mesh: &TriMesh) -> CsrMatrix {
    let mut trip = Vec::with_capacity(3 * mesh.num_elements());
    for (e, tri) in mesh.triangles().iter().enumerate() {
        for &v in tri {
            trip.push((e, v, mesh.area(e) / 3.0));
        }
    }
    CsrMatrix::from_triplets(mesh.num_elements(), mesh.num_vertices(), &trip)
}

/// P0 vector mass matrix: block `|K| I` per element.
pub fn assemble_p0_mass(mesh: &TriMesh) -> BlockDiagMatrix {
    let mut m = BlockDiagMatrix::zeros(mesh.num_elements(), 2);
    for e in 0..mesh.num_elements() {
        let area = mesh.area(e);
        let b = m.block_mut(e);
        b[0] = area;
        b[3] = area;
    }
    m
}

/// One coupling contribution to `E_w`: block `coef |K| S^T S` per element.
pub fn assemble_coupling_block(mesh: &TriMesh, d: &P1VectorField, term: CouplingTerm, coef: f64) -> BlockDiagMatrix {
    let mut m = BlockDiagMatrix::zeros(mesh.num_elements(), 2);
    for e in 0..mesh.num_elements() {
        let s = term.element_map(&d.jacobian(mesh, e));
        let g = gram(&s);
        let scale = coef * mesh.area(e);
        let b = m.block_mut(e);
        b[0] = scale * g[0][0];
        b[1] = scale * g[0][1];
        b[2] = scale * g[1][0];
        b[3] = scale * g[1][1];
    }
    m
}

/// Parameters entering the director/auxiliary system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    pub lambda: f64,
    pub beta: f64,
    pub gamma: f64,
    pub k: f64,
}

impl CouplingParams {
    /// `3 lambda k * weight^2`: the coefficient of each coupling block.
    pub fn block_coefficient(&self, term: CouplingTerm) -> f64 {
        3.0 * self.lambda * self.k * term.weight(self.beta).powi(2)
    }
}

/// `E_w = B*_w + B**_w + B***_w + gamma M_w`.
pub fn assemble_ew(mesh: &TriMesh, d: &P1VectorField, params: CouplingParams) -> BlockDiagMatrix {
    let mut ew = BlockDiagMatrix::zeros(mesh.num_elements(), 2);
    for e in 0..mesh.num_elements() {
        let jac = d.jacobian(mesh, e);
        let area = mesh.area(e);
        let mut blk = [[params.gamma * area, 0.0], [0.0, params.gamma * area]];
        for term in CouplingTerm::ALL {
            let coef = params.block_coefficient(term);
            if coef == 0.0 {
                continue;
            }
            let g = gram(&term.element_map(&jac));
            for i in 0..2 {
                for j in 0..2 {
                    blk[i][j] += coef * area * g[i][j];
                }
            }
        }
        let b = ew.block_mut(e);
        b.copy_from_slice(&[blk[0][0], blk[0][1], blk[1][0], blk[1][1]]);
    }
    ew
}

/// Transport load `F_w`: per element `|K| sum(weight S^T) mean(u)`.
pub fn assemble_stretch_load(mesh: &TriMesh, u: &P1VectorField, d: &P1VectorField, beta: f64) -> Vec<f64> {
    let mut out = vec![0.0; 2 * mesh.num_elements()];
    for e in 0..mesh.num_elements() {
        let jac = d.jacobian(mesh, e);
        let ubar = u.element_mean2(mesh, e);
        let area = mesh.area(e);
        for term in CouplingTerm::ALL {
            let wgt = term.weight(beta);
            if wgt == 0.0 {
                continue;
            }
            let st = transpose(&term.element_map(&jac));
            let v = mat_vec(&st, ubar);
            out[2 * e] += area * wgt * v[0];
            out[2 * e + 1] += area * wgt * v[1];
        }
    }
    out
}

/// Piecewise-constant part of the intermediate velocity,
/// `u~ - u^n = lambda k ((grad d)^T w - beta div(w d^T) - (1+beta) div(d w^T))`.
pub fn elastic_velocity_correction(
    mesh: &TriMesh,
    d: &P1VectorField,
    w: &P0VectorField,
    lambda: f64,
    beta: f64,
    k: f64,
) -> P0VectorField {
    let mut out = P0VectorField::zeros(mesh, 2);
    for e in 0..mesh.num_elements() {
        let jac = d.jacobian(mesh, e);
        let we = w.element2(e);
        let mut c = [0.0; 2];
        for term in CouplingTerm::ALL {
            let wgt = term.weight(beta);
            if wgt == 0.0 {
                continue;
            }
            let v = mat_vec(&term.element_map(&jac), we);
            c[0] += wgt * v[0];
            c[1] += wgt * v[1];
        }
        out.values[2 * e] = lambda * k * c[0];
        out.values[2 * e + 1] = lambda * k * c[1];
    }
    out
}

/// Director load `F = ((hf / 2 eps^2) d - f~(eps, d), phi)`, degree-4 quadrature.
pub fn assemble_potential_load(mesh: &TriMesh, d: &P1VectorField, params: PotentialParams) -> Vec<f64> {
    let stab = params.stabilization();
    let mut out = vec![0.0; d.values.len()];
    for (e, tri) in mesh.triangles().iter().enumerate() {
        let area = mesh.area(e);
        for q in potential_rule() {
            let dq = d.eval2(mesh, e, q.bary);
            let f = truncated_penalty(params.eps, &dq);
            let g = [stab * dq[0] - f[0], stab * dq[1] - f[1]];
            for (a, &v) in tri.iter().enumerate() {
                let wphi = area * q.weight * q.bary[a];
                out[2 * v] += wphi * g[0];
                out[2 * v + 1] += wphi * g[1];
            }
        }
    }
    out
}

/// Scalar convection operator of the skew-symmetric trilinear form
/// `c(u, v, w) = ((u . grad) v, w) + 1/2 (div u, v . w)`, acting on one
/// velocity component: entry `(a, b) = c(u, phi_b, phi_a)`.
pub fn assemble_convection(mesh: &TriMesh, u: &P1VectorField) -> CsrMatrix {
    let mut trip = Vec::with_capacity(9 * mesh.num_elements());
    for (e, tri) in mesh.triangles().iter().enumerate() {
        let g = mesh.basis_gradients(e);
        let area = mesh.area(e);
        let jac = u.jacobian(mesh, e);
        let div = jac[0][0] + jac[1][1];
        let mut local = [[0.0; 3]; 3];
        for q in bilinear_rule() {
            let uq = u.eval2(mesh, e, q.bary);
            for a in 0..3 {
                for b in 0..3 {
                    let adv = uq[0] * g[b][0] + uq[1] * g[b][1];
                    local[a][b] += area * q.weight * q.bary[a] * (adv + 0.5 * div * q.bary[b]);
                }
            }
        }
        for a in 0..3 {
            for b in 0..3 {
                trip.push((tri[a], tri[b], local[a][b]));
            }
        }
    }
    CsrMatrix::from_triplets(mesh.num_vertices(), mesh.num_vertices(), &trip)
}

/// Pressure gradient `(grad p, v)`: rows are P1 vector dofs, columns P1
/// scalar dofs.
pub fn assemble_pressure_gradient(mesh: &TriMesh) -> CsrMatrix {
    let mut trip = Vec::with_capacity(18 * mesh.num_elements());
    for (e, tri) in mesh.triangles().iter().enumerate() {
        let g = mesh.basis_gradients(e);
        let third = mesh.area(e) / 3.0;
        for &a in tri {
            for (b, &vb) in tri.iter().enumerate() {
                trip.push((2 * a, vb, third * g[b][0]));
                trip.push((2 * a + 1, vb, third * g[b][1]));
            }
        }
    }
    CsrMatrix::from_triplets(2 * mesh.num_vertices(), mesh.num_vertices(), &trip)
}

/// Pressure stabilization `j(p, q) = (S/nu) (p - pi0 p, q - pi0 q)` with
/// `pi0` the L2 projection onto piecewise constants.
pub fn assemble_pressure_stabilization(mesh: &TriMesh, s: f64, nu: f64) -> CsrMatrix {
    let mut trip = Vec::with_capacity(9 * mesh.num_elements());
    let coef = s / nu;
    for (e, tri) in mesh.triangles().iter().enumerate() {
        let area = mesh.area(e);
        for a in 0..3 {
            for b in 0..3 {
                // local mass minus |K| (1/3)(1/3)
                let v = area * (LOCAL_MASS[a][b] / 12.0 - 1.0 / 9.0);
                trip.push((tri[a], tri[b], coef * v));
            }
        }
    }
    CsrMatrix::from_triplets(mesh.num_vertices(), mesh.num_vertices(), &trip)
}
