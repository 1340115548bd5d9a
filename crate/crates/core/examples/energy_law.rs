//! Discrete energy law: with `hf = sqrt(26)` the total energy plus the
//! dissipation never exceeds the previous energy.
//!
//! `cargo run --release --example energy_law -- --nx 31 --ny 31 --t-final 0.3`

use clap::Parser;
use nematic::config::CliArgs;
use nematic::diagnostics::write_energy_csv;
use nematic::theoretical_hf;

fn main() -> nematic::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let mut args = CliArgs::parse();
    args.hf.get_or_insert(theoretical_hf(2)?);
    args.t_final.get_or_insert(0.3);
    let cfg = args.resolve()?;
    let out = nematic::time_loop(&cfg)?;

    let e0 = out.records[0].total;
    let worst = out.reports.iter().min_by(|a, b| a.energy_margin.total_cmp(&b.energy_margin));
    let mut dissipated = 0.0;
    let mut global = 0.0f64;
    for r in &out.records[1..] {
        dissipated += r.dissipation();
        global = global.max(r.total + dissipated);
    }
    println!("hf = {:.4}, {} steps, E0 = {e0:.6}", cfg.hf, out.reports.len());
    if let Some(w) = worst {
        println!("smallest per-step margin {:.3e} at step {} (negative means the law is violated)", w.energy_margin, w.step);
    }
    println!("max of E^n + dissipation = {global:.9} ({:.3e} relative to E0)", global / e0 - 1.0);
    let csv = cfg.out_dir.join("energy_law.csv");
    write_energy_csv(&out.records, &csv)?;
    println!("energies written to {}", csv.display());
    Ok(())
}
