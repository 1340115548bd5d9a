//! Topological defect counting for a planar director field.
//!
//! The degree of a triangle is the winding number of the nodal director
//! around its boundary, each edge contributing the angle increment wrapped
//! to `(-pi, pi]` along the edge's index orientation. Neighbouring
//! triangles with nonzero degree are merged into clusters and each cluster
//! counts with the absolute value of its net degree, so a defect sitting exactly on a node (where the angle is
//! undefined) is still counted once.

use std::f64::consts::PI;

use crate::fem::P1VectorField;
use crate::mesh::TriMesh;

fn wrap(mut a: f64) -> f64 {
    while a > PI {
        a -= 2.0 * PI;
    }
    while a <= -PI {
        a += 2.0 * PI;
    }
    a
}

/// Winding number of `d` around each (counter-clockwise) triangle.
pub fn triangle_degrees(mesh: &TriMesh, d: &P1VectorField) -> Vec<i32> {
    mesh.triangles()
        .iter()
        .map(|tri| {
            let angle = |v: usize| {
                let [a, b] = d.node2(v);
                b.atan2(a)
            };
            // orient each increment by vertex index so a shared edge cancels
            // exactly, including the tie at pi
            let step = |p: usize, q: usize| {
                if p < q {
                    wrap(angle(q) - angle(p))
                } else {
                    -wrap(angle(p) - angle(q))
                }
            };
            let total = step(tri[0], tri[1]) + step(tri[1], tri[2]) + step(tri[2], tri[0]);
            (total / (2.0 * PI)).round() as i32
        })
        .collect()
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Number of defects, counted with multiplicity `|degree|` per cluster.
pub fn count_defects(mesh: &TriMesh, d: &P1VectorField) -> usize {
    let deg = triangle_degrees(mesh, d);
    let ne = mesh.num_elements();
    let mut parent: Vec<usize> = (0..ne).collect();
    // any triangle touching a vertex links to the first flagged triangle there
    let mut owner = vec![usize::MAX; mesh.num_vertices()];
    for (e, tri) in mesh.triangles().iter().enumerate() {
        if deg[e] == 0 {
            continue;
        }
        for &v in tri {
            if owner[v] == usize::MAX {
                owner[v] = e;
            } else {
                let (a, b) = (find(&mut parent, owner[v]), find(&mut parent, e));
                parent[a] = b;
            }
        }
    }
    let mut net = vec![0i64; ne];
    for e in 0..ne {
        if deg[e] != 0 {
            let r = find(&mut parent, e);
            net[r] += deg[e] as i64;
        }
    }
    net.iter().map(|n| n.unsigned_abs() as usize).sum()
}
