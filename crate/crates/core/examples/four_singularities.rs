//! Annihilation of four defects, two of each degree, at the origin.
//!
//! Accepts the same flags as the `nematic` binary, e.g.
//! `cargo run --release --example four_singularities -- --nx 31 --beta -0.5`.

use clap::Parser;
use nematic::config::{CliArgs, Preset};

fn main() -> nematic::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let mut args = CliArgs::parse();
    args.preset.get_or_insert(Preset::FourSingularities);
    let cfg = args.resolve()?;
    let out = nematic::time_loop(&cfg)?;
    let s = out.summary();

    println!("h/eps = {:.3}, hf = {}, beta = {}", cfg.mesh_ratio(), cfg.hf, cfg.beta);
    println!("{:>8} {:>12} {:>12} {:>12} {:>8}", "t", "E_kin", "E_total", "min|d|", "defects");
    let stride = (out.records.len() / 20).max(1);
    for (i, (r, n)) in out.records.iter().zip(&out.defects).enumerate() {
        if i % stride == 0 || i + 1 == out.records.len() {
            println!("{:>8.3} {:>12.6} {:>12.6} {:>12.6} {:>8}", r.t, r.kinetic, r.total, r.min_norm, n);
        }
    }
    match (s.t_a, s.e_kin_max) {
        (Some(t), Some(e)) => println!("T_A = {t:.4}, E_kin_max = {e:.6}, annihilation: {:?}", s.annihilation),
        _ => println!("run unstable: {:?}", out.status),
    }
    Ok(())
}
