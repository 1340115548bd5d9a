//! Coefficient vectors of finite-element functions.
//!
//! Vector-valued fields are stored interleaved: the coefficient of component
//! `c` at node (or element) `i` lives at `i * dim + c`.

use crate::mesh::TriMesh;

/// Continuous piecewise-linear scalar field (one value per vertex).
#[derive(Debug, Clone, PartialEq)]
pub struct P1ScalarField {
    pub values: Vec<f64>,
}

impl P1ScalarField {
    pub fn zeros(mesh: &TriMesh) -> Self {
        Self {
            values: vec![0.0; mesh.num_vertices()],
        }
    }

    pub fn from_fn(mesh: &TriMesh, f: impl Fn([f64; 2]) -> f64) -> Self {
        Self {
            values: mesh.vertices().iter().map(|&x| f(x)).collect(),
        }
    }

    /// Mean over element `e` (exact for P1).
    pub fn element_mean(&self, mesh: &TriMesh, e: usize) -> f64 {
        mesh.triangle(e).iter().map(|&v| self.values[v]).sum::<f64>() / 3.0
    }

    /// Constant gradient on element `e`.
    pub fn gradient(&self, mesh: &TriMesh, e: usize) -> [f64; 2] {
        let grads = mesh.basis_gradients(e);
        let mut g = [0.0; 2];
        for (k, &v) in mesh.triangle(e).iter().enumerate() {
            g[0] += self.values[v] * grads[k][0];
            g[1] += self.values[v] * grads[k][1];
        }
        g
    }

    /// `int_Omega p`.
    pub fn integral(&self, mesh: &TriMesh) -> f64 {
        (0..mesh.num_elements())
            .map(|e| mesh.area(e) * self.element_mean(mesh, e))
            .sum()
    }
}

/// Continuous piecewise-linear vector field with `dim` components.
#[derive(Debug, Clone, PartialEq)]
pub struct P1VectorField {
    pub dim: usize,
    pub values: Vec<f64>,
}

impl P1VectorField {
    pub fn zeros(mesh: &TriMesh, dim: usize) -> Self {
        Self {
            dim,
            values: vec![0.0; mesh.num_vertices() * dim],
        }
    }

    /// Nodal interpolation of a 2D vector function.
    pub fn interpolate(mesh: &TriMesh, f: impl Fn([f64; 2]) -> [f64; 2]) -> Self {
        let mut values = Vec::with_capacity(2 * mesh.num_vertices());
        for &x in mesh.vertices() {
            values.extend_from_slice(&f(x));
        }
        Self { dim: 2, values }
    }

    pub fn num_nodes(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn node(&self, v: usize) -> &[f64] {
        &self.values[v * self.dim..(v + 1) * self.dim]
    }

    pub fn node2(&self, v: usize) -> [f64; 2] {
        [self.values[2 * v], self.values[2 * v + 1]]
    }

    pub fn component(&self, c: usize) -> Vec<f64> {
        self.values.iter().skip(c).step_by(self.dim).copied().collect()
    }

    pub fn set_component(&mut self, c: usize, comp: &[f64]) {
        for (v, &x) in comp.iter().enumerate() {
            self.values[v * self.dim + c] = x;
        }
    }

    pub fn nodal_norms(&self) -> impl Iterator<Item = f64> + '_ {
        self.values
            .chunks_exact(self.dim)
            .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
    }

    /// Largest nodal Euclidean norm, `||.||_inf` for P1 functions.
    pub fn max_norm(&self) -> f64 {
        self.nodal_norms().fold(0.0, f64::max)
    }

    pub fn min_norm(&self) -> f64 {
        self.nodal_norms().fold(f64::INFINITY, f64::min)
    }

    /// Constant Jacobian on element `e`: `jac[i][j] = d(field_i)/dx_j`.
    pub fn jacobian(&self, mesh: &TriMesh, e: usize) -> [[f64; 2]; 2] {
        debug_assert_eq!(self.dim, 2);
        let grads = mesh.basis_gradients(e);
        let mut jac = [[0.0; 2]; 2];
        for (k, &v) in mesh.triangle(e).iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    jac[i][j] += self.values[2 * v + i] * grads[k][j];
                }
            }
        }
        jac
    }

    pub fn element_mean2(&self, mesh: &TriMesh, e: usize) -> [f64; 2] {
        let mut m = [0.0; 2];
        for &v in &mesh.triangle(e) {
            m[0] += self.values[2 * v];
            m[1] += self.values[2 * v + 1];
        }
        [m[0] / 3.0, m[1] / 3.0]
    }

    /// Value at barycentric point `bary` of element `e`.
    pub fn eval2(&self, mesh: &TriMesh, e: usize, bary: [f64; 3]) -> [f64; 2] {
        let mut d = [0.0; 2];
        for (l, &v) in bary.iter().zip(mesh.triangle(e).iter()) {
            d[0] += l * self.values[2 * v];
            d[1] += l * self.values[2 * v + 1];
        }
        d
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|x| x.is_finite())
    }
}

/// Piecewise-constant vector field, one `dim`-vector per element.
#[derive(Debug, Clone, PartialEq)]
pub struct P0VectorField {
    pub dim: usize,
    pub values: Vec<f64>,
}

impl P0VectorField {
    pub fn zeros(mesh: &TriMesh, dim: usize) -> Self {
        Self {
            dim,
            values: vec![0.0; mesh.num_elements() * dim],
        }
    }

    pub fn element(&self, e: usize) -> &[f64] {
        &self.values[e * self.dim..(e + 1) * self.dim]
    }

    pub fn element2(&self, e: usize) -> [f64; 2] {
        [self.values[2 * e], self.values[2 * e + 1]]
    }

    /// `||w||^2` in L2.
    pub fn norm_sq(&self, mesh: &TriMesh) -> f64 {
        self.values
            .chunks_exact(self.dim)
            .enumerate()
            .map(|(e, w)| mesh.area(e) * w.iter().map(|x| x * x).sum::<f64>())
            .sum()
    }
}
