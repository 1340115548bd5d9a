use std::process::ExitCode;

use clap::Parser;
use nematic::config::CliArgs;
use nematic::diagnostics::{snapshot_path, write_energy_csv, write_field_snapshot};
use nematic::scheme::{RunStatus, Simulation};

fn run(args: &CliArgs) -> nematic::Result<()> {
    let cfg = args.resolve()?;
    let sim = Simulation::new(cfg.clone())?;
    let mesh = sim.scheme().mesh().clone();
    let every = cfg.snapshot_every;
    let prefix = cfg.preset.name();
    let out = sim.run_with(|state, rec| {
        log::debug!("t = {:.4}  E = {:.6e}  E_kin = {:.6e}", rec.t, rec.total, rec.kinetic);
        if every > 0 && state.step % every == 0 {
            write_field_snapshot(state, &mesh, &snapshot_path(&cfg.out_dir, prefix, state.step))?;
        }
        Ok(())
    })?;

    let csv = cfg.out_dir.join("energy.csv");
    write_energy_csv(&out.records, &csv)?;
    let s = out.summary();
    match out.status {
        RunStatus::Completed => println!("completed {} steps", out.state.step),
        RunStatus::Unstable { step, t } => println!("unstable at step {step} (t = {t:.4})"),
    }
    if let (Some(t_a), Some(e)) = (s.t_a, s.e_kin_max) {
        println!("T_A = {t_a:.4}  E_kin_max = {e:.6}  annihilation: {:?}", s.annihilation);
    }
    println!("energies written to {}", csv.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = CliArgs::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
