//! Truncated potential: Hessian bound and the stabilized explicit step.
//!
//! Samples random director pairs and reports how often the explicit step
//! with stabilization `hf` gains potential energy. Only `hf >= H_F` is safe.
//!
//! `cargo run --release --example potential_bound -- --eps 0.05 --samples 100000`

use clap::Parser;
use nematic::potential::{hessian_frobenius_bound_check, stabilized_step_slack, PotentialParams};
use nematic::{hf_from_index, theoretical_hf};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Parser)]
struct Args {
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> nematic::Result<()> {
    let args = Args::parse();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut point = || [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
    let pairs: Vec<([f64; 2], [f64; 2])> = (0..args.samples).map(|_| (point(), point())).collect();

    let bound = theoretical_hf(2)?;
    let points: Vec<[f64; 2]> = pairs.iter().map(|p| p.0).collect();
    let (worst, ok) = hessian_frobenius_bound_check(args.eps, &points)?;
    println!("H_F = {bound:.4}; max |Hessian| = {worst:.2}, bound H_F/eps^2 = {:.2}, holds: {ok}", bound / args.eps.powi(2));

    println!("{:>6} {:>8} {:>12} {:>14}", "M", "hf", "violations", "worst slack");
    for m in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let params = PotentialParams::new(args.eps, hf_from_index(m))?;
        let slacks: Vec<f64> = pairs.iter().map(|(a, b)| stabilized_step_slack(params, a, b)).collect();
        let bad = slacks.iter().filter(|&&s| s < 0.0).count();
        let min = slacks.iter().copied().fold(f64::INFINITY, f64::min);
        println!("{m:>6} {:>8.4} {bad:>12} {min:>14.4e}", params.hf);
    }
    Ok(())
}
