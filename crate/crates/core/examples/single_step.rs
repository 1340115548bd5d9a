//! One time step split into its three stages: director and auxiliary
//! variable (Schur complement), pressure projection, velocity update.
//!
//! `cargo run --release --example single_step -- --preset four_singularities`

use clap::Parser;
use nematic::config::CliArgs;
use nematic::scheme::build_preset_initial_data;
use nematic::{Scheme, SimState};

fn main() -> nematic::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cfg = CliArgs::parse().resolve()?;
    let mesh = cfg.build_mesh();
    let (d, u, p) = build_preset_initial_data(cfg.preset, &cfg, &mesh)?;
    let state = SimState::new(&mesh, u, p, d);
    let scheme = Scheme::new(cfg.clone(), mesh.clone());

    let director = scheme.director_step(&state)?;
    println!(
        "director: {} CG iterations, residual {:.1e}, max|d| {:.6}, |w|_L2 {:.4e}",
        director.stats.iterations,
        director.stats.residual,
        director.d.max_norm(),
        director.w.norm_sq(&mesh).sqrt()
    );
    let (pressure, ps) = scheme.pressure_step(&state, &director.w)?;
    println!(
        "pressure: {} CG iterations, residual {:.1e}, mean {:.1e}",
        ps.iterations,
        ps.residual,
        pressure.integral(&mesh) / mesh.total_area()
    );
    let (velocity, vs) = scheme.velocity_step(&state, &director.w, &pressure)?;
    println!(
        "velocity: {}+{} BiCGStab iterations, max|u| {:.4e}",
        vs[0].iterations,
        vs[1].iterations,
        velocity.max_norm()
    );
    Ok(())
}
