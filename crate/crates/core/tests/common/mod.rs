//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the crate's assembly or quadrature code: barycentric
//! coordinates come from a dense 3x3 inverse, integrals from a collapsed
//! Gauss-Legendre rule built by the Golub-Welsch eigenvalue method, and
//! every matrix is a dense `nalgebra` matrix filled from the integral
//! definitions of the forms.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, Matrix3, SymmetricEigen, Vector3};
use nematic::fem::{CsrMatrix, P1ScalarField, P1VectorField};
use nematic::mesh::{Diagonals, Rect, TriMesh};
use rand::Rng;

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut jacobi = DMatrix::zeros(n, n);
    for i in 1..n {
        let b = i as f64 / ((4 * i * i - 1) as f64).sqrt();
        jacobi[(i, i - 1)] = b;
        jacobi[(i - 1, i)] = b;
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut out: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (0.5 * (eig.eigenvalues[i] + 1.0), v0 * v0)
        })
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// Points `(x, y)` on the reference triangle `(0,0), (1,0), (0,1)` with
/// weights summing to one; exact for total degree `2n - 2`.
pub fn triangle_rule(n: usize) -> Vec<([f64; 2], f64)> {
    let gl = gauss_legendre(n);
    let mut pts = Vec::with_capacity(n * n);
    for &(s, ws) in &gl {
        for &(t, wt) in &gl {
            // Duffy map (s, t) -> (s, (1 - s) t), Jacobian (1 - s)
            pts.push(([s, (1.0 - s) * t], 2.0 * ws * wt * (1.0 - s)));
        }
    }
    pts
}

/// Geometry of one triangle, derived independently of `TriMesh`.
pub struct Element {
    pub nodes: [usize; 3],
    pub x: [[f64; 2]; 3],
    pub area: f64,
    /// Rows map `(x, y, 1)` to barycentric coordinates.
    inv: Matrix3<f64>,
}

impl Element {
    pub fn new(mesh: &TriMesh, e: usize) -> Self {
        let nodes = mesh.triangle(e);
        let x = nodes.map(|v| mesh.vertex(v));
        let m = Matrix3::new(x[0][0], x[1][0], x[2][0], x[0][1], x[1][1], x[2][1], 1.0, 1.0, 1.0);
        let area = 0.5 * m.determinant().abs();
        let inv = m.try_inverse().expect("degenerate element");
        Self { nodes, x, area, inv }
    }

    pub fn bary(&self, p: [f64; 2]) -> [f64; 3] {
        let l = self.inv * Vector3::new(p[0], p[1], 1.0);
        [l[0], l[1], l[2]]
    }

    /// Gradient of the basis function of local node `a`.
    pub fn grad(&self, a: usize) -> [f64; 2] {
        [self.inv[(a, 0)], self.inv[(a, 1)]]
    }

    /// Physical quadrature points and weights (weights sum to the area).
    pub fn quadrature(&self, n: usize) -> Vec<([f64; 2], f64)> {
        let [p0, p1, p2] = self.x;
        triangle_rule(n)
            .into_iter()
            .map(|([s, t], w)| {
                let p = [
                    p0[0] + s * (p1[0] - p0[0]) + t * (p2[0] - p0[0]),
                    p0[1] + s * (p1[1] - p0[1]) + t * (p2[1] - p0[1]),
                ];
                (p, w * self.area)
            })
            .collect()
    }

    /// Value of a P1 vector field at `p`.
    pub fn eval_vec(&self, f: &P1VectorField, p: [f64; 2]) -> [f64; 2] {
        let l = self.bary(p);
        let mut out = [0.0; 2];
        for a in 0..3 {
            out[0] += l[a] * f.values[2 * self.nodes[a]];
            out[1] += l[a] * f.values[2 * self.nodes[a] + 1];
        }
        out
    }

    pub fn eval_scalar(&self, f: &[f64], p: [f64; 2]) -> f64 {
        let l = self.bary(p);
        (0..3).map(|a| l[a] * f[self.nodes[a]]).sum()
    }

    /// `G[i][j] = d_j f_i` for a P1 vector field.
    pub fn jacobian(&self, f: &P1VectorField) -> [[f64; 2]; 2] {
        let mut g = [[0.0; 2]; 2];
        for a in 0..3 {
            let gr = self.grad(a);
            for i in 0..2 {
                for j in 0..2 {
                    g[i][j] += f.values[2 * self.nodes[a] + i] * gr[j];
                }
            }
        }
        g
    }
}

pub const Q: usize = 6;

pub fn elements(mesh: &TriMesh) -> Vec<Element> {
    (0..mesh.num_elements()).map(|e| Element::new(mesh, e)).collect()
}

pub fn dense(m: &CsrMatrix) -> DMatrix<f64> {
    let rows = m.to_dense();
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| rows[i][j])
}

pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    (a - b).abs().max()
}

/// Scalar forms `int f(phi_b, phi_a)` assembled densely, entry `(a, b)`.
pub fn scalar_form(mesh: &TriMesh, f: impl Fn(&Element, [f64; 2], usize, usize) -> f64) -> DMatrix<f64> {
    let n = mesh.num_vertices();
    let mut m = DMatrix::zeros(n, n);
    for el in elements(mesh) {
        for (p, w) in el.quadrature(Q) {
            for a in 0..3 {
                for b in 0..3 {
                    m[(el.nodes[a], el.nodes[b])] += w * f(&el, p, a, b);
                }
            }
        }
    }
    m
}

pub fn mass(mesh: &TriMesh) -> DMatrix<f64> {
    scalar_form(mesh, |el, p, a, b| {
        let l = el.bary(p);
        l[a] * l[b]
    })
}

pub fn stiffness(mesh: &TriMesh) -> DMatrix<f64> {
    scalar_form(mesh, |el, _, a, b| {
        let (ga, gb) = (el.grad(a), el.grad(b));
        ga[0] * gb[0] + ga[1] * gb[1]
    })
}

/// Interleaved two-component version of a scalar matrix.
pub fn expand(m: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(2 * m.nrows(), 2 * m.ncols(), |i, j| if i % 2 == j % 2 { m[(i / 2, j / 2)] } else { 0.0 })
}

/// `(phi_node, chi_element)`: elements x nodes.
pub fn p1p0_mass(mesh: &TriMesh) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(mesh.num_elements(), mesh.num_vertices());
    for (e, el) in elements(mesh).iter().enumerate() {
        for (p, w) in el.quadrature(Q) {
            let l = el.bary(p);
            for a in 0..3 {
                m[(e, el.nodes[a])] += w * l[a];
            }
        }
    }
    m
}

/// Dense `(2 ne) x (2 ne)` P0 vector mass.
pub fn p0_mass(mesh: &TriMesh) -> DMatrix<f64> {
    let ne = mesh.num_elements();
    let mut m = DMatrix::zeros(2 * ne, 2 * ne);
    for (e, el) in elements(mesh).iter().enumerate() {
        let area: f64 = el.quadrature(Q).iter().map(|(_, w)| w).sum();
        m[(2 * e, 2 * e)] = area;
        m[(2 * e + 1, 2 * e + 1)] = area;
    }
    m
}

/// The three couplings of a constant vector `a` with the director, from
/// their definitions with `(grad d)_{ij} = d_j d_i` and row-wise divergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    /// `(a . grad) d`.
    Convective,
    /// `div(a d^T)`, component `i`: `sum_j d_j (a_i d_j)`.
    Stretch,
    /// `div(d a^T)`, component `i`: `sum_j d_j (d_i a_j)`.
    TransposedStretch,
}

impl Coupling {
    pub const ALL: [Coupling; 3] = [Self::Convective, Self::Stretch, Self::TransposedStretch];

    pub fn apply(self, g: &[[f64; 2]; 2], a: [f64; 2]) -> [f64; 2] {
        let mut out = [0.0; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i] += match self {
                    Self::Convective => a[j] * g[i][j],
                    Self::Stretch => a[i] * g[j][j],
                    Self::TransposedStretch => g[i][j] * a[j],
                };
            }
        }
        out
    }

    pub fn weight(self, beta: f64) -> f64 {
        match self {
            Self::Convective => 1.0,
            Self::Stretch => -beta,
            Self::TransposedStretch => -(1.0 + beta),
        }
    }
}

/// Dense P0 block form `coef int (S e_j) . (S e_i)` for one coupling.
pub fn coupling_block(mesh: &TriMesh, d: &P1VectorField, term: Coupling, coef: f64) -> DMatrix<f64> {
    let ne = mesh.num_elements();
    let mut m = DMatrix::zeros(2 * ne, 2 * ne);
    for (e, el) in elements(mesh).iter().enumerate() {
        let g = el.jacobian(d);
        for (_, w) in el.quadrature(Q) {
            for i in 0..2 {
                for j in 0..2 {
                    let mut ei = [0.0; 2];
                    ei[i] = 1.0;
                    let mut ej = [0.0; 2];
                    ej[j] = 1.0;
                    let (si, sj) = (term.apply(&g, ei), term.apply(&g, ej));
                    m[(2 * e + i, 2 * e + j)] += coef * w * (si[0] * sj[0] + si[1] * sj[1]);
                }
            }
        }
    }
    m
}

/// `E_w = sum_t 3 lambda k weight_t^2 B_t + gamma M_w`.
pub fn ew(mesh: &TriMesh, d: &P1VectorField, lambda: f64, beta: f64, gamma: f64, k: f64) -> DMatrix<f64> {
    let mut m = p0_mass(mesh) * gamma;
    for t in Coupling::ALL {
        m += coupling_block(mesh, d, t, 3.0 * lambda * k * t.weight(beta).powi(2));
    }
    m
}

/// `F_w`: entry `(e, i) = int_K u . sum_t weight_t S_t e_i`.
pub fn stretch_load(mesh: &TriMesh, u: &P1VectorField, d: &P1VectorField, beta: f64) -> DVector<f64> {
    let mut out = DVector::zeros(2 * mesh.num_elements());
    for (e, el) in elements(mesh).iter().enumerate() {
        let g = el.jacobian(d);
        for (p, w) in el.quadrature(Q) {
            let up = el.eval_vec(u, p);
            for i in 0..2 {
                let mut ei = [0.0; 2];
                ei[i] = 1.0;
                for t in Coupling::ALL {
                    let s = t.apply(&g, ei);
                    out[2 * e + i] += w * t.weight(beta) * (up[0] * s[0] + up[1] * s[1]);
                }
            }
        }
    }
    out
}

/// Per-element `lambda k sum_t weight_t S_t w_K`.
pub fn velocity_correction(mesh: &TriMesh, d: &P1VectorField, w: &[f64], lambda: f64, beta: f64, k: f64) -> Vec<[f64; 2]> {
    elements(mesh)
        .iter()
        .enumerate()
        .map(|(e, el)| {
            let g = el.jacobian(d);
            let mut c = [0.0; 2];
            for t in Coupling::ALL {
                let s = t.apply(&g, [w[2 * e], w[2 * e + 1]]);
                c[0] += lambda * k * t.weight(beta) * s[0];
                c[1] += lambda * k * t.weight(beta) * s[1];
            }
            c
        })
        .collect()
}

/// `c(u, phi_b, phi_a) = ((u . grad) phi_b, phi_a) + 1/2 (div u, phi_b phi_a)`.
pub fn convection(mesh: &TriMesh, u: &P1VectorField) -> DMatrix<f64> {
    scalar_form(mesh, |el, p, a, b| {
        let up = el.eval_vec(u, p);
        let g = el.jacobian(u);
        let l = el.bary(p);
        let gb = el.grad(b);
        (up[0] * gb[0] + up[1] * gb[1]) * l[a] + 0.5 * (g[0][0] + g[1][1]) * l[b] * l[a]
    })
}

/// `(d_c phi_b, phi_a)` on interleaved vector rows.
pub fn pressure_gradient(mesh: &TriMesh) -> DMatrix<f64> {
    let n = mesh.num_vertices();
    let mut m = DMatrix::zeros(2 * n, n);
    for el in elements(mesh) {
        for (p, w) in el.quadrature(Q) {
            let l = el.bary(p);
            for a in 0..3 {
                for b in 0..3 {
                    let gb = el.grad(b);
                    for c in 0..2 {
                        m[(2 * el.nodes[a] + c, el.nodes[b])] += w * gb[c] * l[a];
                    }
                }
            }
        }
    }
    m
}

/// `j(p, q) = (S / nu) (p - pi0 p, q - pi0 q)` with `pi0` the elementwise
/// mean computed by quadrature.
pub fn pressure_stabilization(mesh: &TriMesh, s: f64, nu: f64) -> DMatrix<f64> {
    let n = mesh.num_vertices();
    let mut m = DMatrix::zeros(n, n);
    for el in elements(mesh) {
        let quad = el.quadrature(Q);
        let area: f64 = quad.iter().map(|(_, w)| w).sum();
        let mut mean = [0.0; 3];
        for (p, w) in &quad {
            let l = el.bary(*p);
            for a in 0..3 {
                mean[a] += w * l[a] / area;
            }
        }
        for (p, w) in &quad {
            let l = el.bary(*p);
            for a in 0..3 {
                for b in 0..3 {
                    m[(el.nodes[a], el.nodes[b])] += s / nu * w * (l[a] - mean[a]) * (l[b] - mean[b]);
                }
            }
        }
    }
    m
}

/// Meshes of at most eight elements: both structured layouts and a
/// distorted one with a displaced interior node.
pub fn small_meshes() -> Vec<(&'static str, TriMesh)> {
    let uniform = TriMesh::structured(Rect::symmetric_square(), 2, 2, Diagonals::Uniform);
    let radial = TriMesh::structured(Rect::symmetric_square(), 2, 2, Diagonals::Radial);
    let mut vertices = uniform.vertices().to_vec();
    vertices[4] = [0.23, -0.17];
    let boundary = (0..vertices.len()).map(|v| uniform.is_boundary(v)).collect();
    let distorted = TriMesh::from_parts(vertices, uniform.triangles().to_vec(), boundary);
    let rect = TriMesh::structured(Rect::new(0.0, 2.0, -0.5, 0.5), 2, 1, Diagonals::Uniform);
    vec![("uniform", uniform), ("radial", radial), ("distorted", distorted), ("rect", rect)]
}

pub fn random_vector_field(mesh: &TriMesh, rng: &mut impl Rng, scale: f64) -> P1VectorField {
    let mut f = P1VectorField::zeros(mesh, 2);
    for v in f.values.iter_mut() {
        *v = scale * rng.gen_range(-1.0..1.0);
    }
    f
}

/// Random velocity vanishing on boundary nodes.
pub fn random_velocity(mesh: &TriMesh, rng: &mut impl Rng, scale: f64) -> P1VectorField {
    let mut u = random_vector_field(mesh, rng, scale);
    for v in mesh.boundary_nodes() {
        u.values[2 * v] = 0.0;
        u.values[2 * v + 1] = 0.0;
    }
    u
}

pub fn random_scalar_field(mesh: &TriMesh, rng: &mut impl Rng) -> P1ScalarField {
    let mut p = P1ScalarField::zeros(mesh);
    for v in p.values.iter_mut() {
        *v = rng.gen_range(-1.0..1.0);
    }
    p
}

pub fn to_dvec(x: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(x)
}

/// Relative distance `|a - b| / max(|b|, tiny)`.
pub fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
    num / den.max(1e-300)
}

/// Result of one acceptance criterion.
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}
