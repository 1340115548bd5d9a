//! Structured triangulations: size, `h/eps`, and a VTK file per layout.
//!
//! `cargo run --release --example mesh -- --nx 31 --ny 31`

use clap::Parser;
use nematic::config::CliArgs;
use nematic::diagnostics::write_mesh_vtk;
use nematic::{mesh_size, Diagonals, TriMesh};

fn main() -> nematic::Result<()> {
    let cfg = CliArgs::parse().resolve()?;
    for (name, layout) in [("uniform", Diagonals::Uniform), ("radial", Diagonals::Radial)] {
        let mesh = TriMesh::structured(cfg.domain, cfg.nx, cfg.ny, layout);
        let h = mesh_size(&mesh)?;
        let path = cfg.out_dir.join(format!("mesh_{name}.vtk"));
        write_mesh_vtk(&mesh, &path)?;
        println!(
            "{name}: {} nodes, {} triangles, h = {h:.7}, h/eps = {:.3}, written to {}",
            mesh.num_vertices(),
            mesh.num_elements(),
            h / cfg.eps,
            path.display()
        );
    }
    Ok(())
}
