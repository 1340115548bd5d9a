//! Structured triangulations of axis-aligned rectangles.
//!
//! Every grid cell is split into two triangles along one of its diagonals.
//! With [`Diagonals::Uniform`] all diagonals share one orientation; with
//! [`Diagonals::Radial`] each diagonal points away from the domain centre,
//! so the mesh is invariant under the reflections `x -> -x` and `y -> -y`
//! about the centre. Geometry needed by assembly (areas and the constant
//! gradients of the three barycentric basis functions) is computed once at
//! construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub const fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self { x0, x1, y0, y1 }
    }

    pub const fn unit_square() -> Self {
        Self::new(0.0, 1.0, 0.0, 1.0)
    }

    /// `[-1, 1]^2`, the domain of both annihilation experiments.
    pub const fn symmetric_square() -> Self {
        Self::new(-1.0, 1.0, -1.0, 1.0)
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }

    pub fn is_valid(&self) -> bool {
        self.x1 > self.x0 && self.y1 > self.y0 && self.area().is_finite()
    }
}

/// Orientation of the cell diagonals in a structured mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Diagonals {
    /// Lower-left to upper-right in every cell.
    Uniform,
    /// Pointing away from the domain centre, mirror symmetric about both
    /// centre lines. Symmetric initial data stays symmetric.
    #[default]
    Radial,
}

#[derive(Debug, Clone)]
pub struct TriMesh {
    vertices: Vec<[f64; 2]>,
    triangles: Vec<[usize; 3]>,
    boundary: Vec<bool>,
    areas: Vec<f64>,
    gradients: Vec<[[f64; 2]; 3]>,
}

impl TriMesh {
    /// Builds a mesh from raw vertices and counter-clockwise triangles.
    ///
    /// Boundary flags are supplied by the caller.
    pub fn from_parts(vertices: Vec<[f64; 2]>, triangles: Vec<[usize; 3]>, boundary: Vec<bool>) -> Self {
        assert_eq!(vertices.len(), boundary.len());
        let mut areas = Vec::with_capacity(triangles.len());
        let mut gradients = Vec::with_capacity(triangles.len());
        for tri in &triangles {
            let [p0, p1, p2] = tri.map(|v| vertices[v]);
            let twice_area = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
            assert!(twice_area > 0.0, "triangle {tri:?} is degenerate or clockwise");
            areas.push(0.5 * twice_area);
            gradients.push([
                [(p1[1] - p2[1]) / twice_area, (p2[0] - p1[0]) / twice_area],
                [(p2[1] - p0[1]) / twice_area, (p0[0] - p2[0]) / twice_area],
                [(p0[1] - p1[1]) / twice_area, (p1[0] - p0[0]) / twice_area],
            ]);
        }
        Self {
            vertices,
            triangles,
            boundary,
            areas,
            gradients,
        }
    }

    /// `(nx+1)(ny+1)` vertices and `2 nx ny` triangles, all diagonals
    /// oriented lower-left to upper-right.
    pub fn uniform(domain: Rect, nx: usize, ny: usize) -> Self {
        Self::structured(domain, nx, ny, Diagonals::Uniform)
    }

    /// `(nx+1)(ny+1)` vertices and `2 nx ny` triangles.
    pub fn structured(domain: Rect, nx: usize, ny: usize, diagonals: Diagonals) -> Self {
        assert!(nx >= 1 && ny >= 1, "need at least one cell per axis");
        assert!(domain.is_valid(), "degenerate domain {domain:?}");
        let dx = (domain.x1 - domain.x0) / nx as f64;
        let dy = (domain.y1 - domain.y0) / ny as f64;
        let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
        let mut boundary = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            // Snap the last row/column so boundary coordinates are exact.
            let y = if j == ny { domain.y1 } else { domain.y0 + j as f64 * dy };
            for i in 0..=nx {
                let x = if i == nx { domain.x1 } else { domain.x0 + i as f64 * dx };
                vertices.push([x, y]);
                boundary.push(i == 0 || i == nx || j == 0 || j == ny);
            }
        }
        let idx = |i: usize, j: usize| j * (nx + 1) + i;
        let mut triangles = Vec::with_capacity(2 * nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
                // signs of the cell centre relative to the domain centre, in
                // integer arithmetic so the centre row and column are exact
                let sx = (2 * i + 1).cmp(&nx) as i32;
                let sy = (2 * j + 1).cmp(&ny) as i32;
                let flip = diagonals == Diagonals::Radial && sx * sy < 0;
                if flip {
                    triangles.push([a, b, d]);
                    triangles.push([b, c, d]);
                } else {
                    triangles.push([a, b, c]);
                    triangles.push([a, c, d]);
                }
            }
        }
        Self::from_parts(vertices, triangles, boundary)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_elements(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> [f64; 2] {
        self.vertices[v]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle(&self, e: usize) -> [usize; 3] {
        self.triangles[e]
    }

    pub fn area(&self, e: usize) -> f64 {
        self.areas[e]
    }

    pub fn areas(&self) -> &[f64] {
        &self.areas
    }

    /// Constant gradients of the three local P1 basis functions on element `e`.
    pub fn basis_gradients(&self, e: usize) -> &[[f64; 2]; 3] {
        &self.gradients[e]
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary[v]
    }

    pub fn boundary_nodes(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.boundary[v]).collect()
    }

    pub fn interior_nodes(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| !self.boundary[v]).collect()
    }

    pub fn total_area(&self) -> f64 {
        self.areas.iter().sum()
    }

    /// Longest edge of element `e`.
    pub fn diameter(&self, e: usize) -> f64 {
        let [p0, p1, p2] = self.triangles[e].map(|v| self.vertices[v]);
        let len = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).hypot(a[1] - b[1]);
        len(p0, p1).max(len(p1, p2)).max(len(p2, p0))
    }

    /// Maps barycentric coordinates on element `e` to a physical point.
    pub fn point(&self, e: usize, bary: [f64; 3]) -> [f64; 2] {
        let tri = self.triangles[e];
        let mut x = [0.0; 2];
        for (l, &v) in bary.iter().zip(tri.iter()) {
            x[0] += l * self.vertices[v][0];
            x[1] += l * self.vertices[v][1];
        }
        x
    }
}

/// Mesh size `h`: the largest element diameter.
pub fn mesh_size(mesh: &TriMesh) -> Result<f64> {
    if mesh.num_elements() == 0 {
        return Err(Error::EmptyMesh);
    }
    Ok((0..mesh.num_elements()).map(|e| mesh.diameter(e)).fold(0.0, f64::max))
}
