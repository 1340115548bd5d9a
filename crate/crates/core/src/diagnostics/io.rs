use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::mesh::TriMesh;
use crate::scheme::SimState;

use super::EnergyRecord;

/// 17 significant digits: enough to round-trip any `f64`.
pub(crate) fn full_precision(x: f64) -> String {
    format!("{x:.16e}")
}

fn create_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => fs::create_dir_all(dir).map_err(|e| Error::io(dir, e)),
        _ => Ok(()),
    }
}

/// One row per record under a header row.
pub fn write_energy_csv(records: &[EnergyRecord], path: &Path) -> Result<()> {
    create_parent(path)?;
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(EnergyRecord::COLUMNS)?;
    for r in records {
        w.write_record(r.values().map(full_precision))?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

pub fn read_energy_csv(path: &Path) -> Result<Vec<EnergyRecord>> {
    let mut rd = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row?;
        let mut v = [0.0; 9];
        if row.len() != v.len() {
            return Err(Error::ConfigParse(format!("energy row has {} columns, expected 9", row.len())));
        }
        for (slot, field) in v.iter_mut().zip(row.iter()) {
            *slot = field
                .trim()
                .parse()
                .map_err(|_| Error::ConfigParse(format!("bad number `{field}` in {}", path.display())))?;
        }
        out.push(EnergyRecord::from_values(v));
    }
    Ok(out)
}

/// `{dir}/{prefix}_{step:06}.vtk`.
pub fn snapshot_path(dir: &Path, prefix: &str, step: usize) -> PathBuf {
    dir.join(format!("{prefix}_{step:06}.vtk"))
}

fn vtk_geometry(out: &mut String, mesh: &TriMesh, title: &str) {
    let _ = writeln!(out, "# vtk DataFile Version 3.0\n{title}\nASCII\nDATASET UNSTRUCTURED_GRID");
    let _ = writeln!(out, "POINTS {} double", mesh.num_vertices());
    for v in mesh.vertices() {
        let _ = writeln!(out, "{} {} 0", full_precision(v[0]), full_precision(v[1]));
    }
    let ne = mesh.num_elements();
    let _ = writeln!(out, "CELLS {ne} {}", 4 * ne);
    for t in mesh.triangles() {
        let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
    }
    let _ = writeln!(out, "CELL_TYPES {ne}");
    for _ in 0..ne {
        out.push_str("5\n");
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    create_parent(path)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_mesh_vtk(mesh: &TriMesh, path: &Path) -> Result<()> {
    let mut out = String::new();
    vtk_geometry(&mut out, mesh, "mesh");
    write_text(path, &out)
}

/// VTK legacy snapshot with velocity, director, `|d|` and pressure as point data.
pub fn write_field_snapshot(state: &SimState, mesh: &TriMesh, path: &Path) -> Result<()> {
    let mut out = String::new();
    vtk_geometry(&mut out, mesh, &format!("t = {}", state.t));
    let _ = writeln!(out, "POINT_DATA {}", mesh.num_vertices());
    for (name, field) in [("velocity", &state.u), ("director", &state.d)] {
        let _ = writeln!(out, "VECTORS {name} double");
        for v in 0..mesh.num_vertices() {
            let [a, b] = field.node2(v);
            let _ = writeln!(out, "{} {} 0", full_precision(a), full_precision(b));
        }
    }
    out.push_str("SCALARS director_norm double 1\nLOOKUP_TABLE default\n");
    for n in state.d.nodal_norms() {
        let _ = writeln!(out, "{}", full_precision(n));
    }
    out.push_str("SCALARS pressure double 1\nLOOKUP_TABLE default\n");
    for p in &state.p.values {
        let _ = writeln!(out, "{}", full_precision(*p));
    }
    write_text(path, &out)
}
