//! Stability tables: a grid of runs over `(eps, M)` or `(beta, M)`, where
//! `M` is the stabilization index (`hf = hf_from_index(M)`).
//!
//! `cargo run --release --example stability_table -- --rows eps --preset four_singularities`

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use nematic::config::{Preset, SimConfig};
use nematic::diagnostics::{run_table_harness, HarnessAxis, HarnessParam};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rows {
    Eps,
    Beta,
}

#[derive(Debug, Parser)]
struct Args {
    #[arg(long, value_enum, default_value = "eps")]
    rows: Rows,
    #[arg(long, value_enum, default_value = "two_singularities")]
    preset: Preset,
    #[arg(long, default_value_t = 31)]
    n: usize,
    #[arg(long = "t-final")]
    t_final: Option<f64>,
    /// Stabilization indices, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.5, 1.0, 1.5, 2.0])]
    m: Vec<f64>,
    #[arg(long, default_value = "output/stability.csv")]
    csv: PathBuf,
}

fn main() -> nematic::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let mut base = SimConfig::for_preset(args.preset);
    base.nx = args.n;
    base.ny = args.n;
    if let Some(t) = args.t_final {
        base.t_final = t;
    }
    let rows = match args.rows {
        Rows::Eps => HarnessAxis::new(HarnessParam::Eps, [0.1, 0.05, 0.01, 0.001]),
        Rows::Beta => HarnessAxis::new(HarnessParam::Beta, [0.0, -0.2, -0.5, -0.8, -1.0]),
    };
    let cols = HarnessAxis::new(HarnessParam::Index, args.m);
    let table = run_table_harness(&rows, &cols, &base);
    print!("{}", table.render());
    table.write_csv(&args.csv)?;
    println!("written to {}", args.csv.display());
    Ok(())
}
