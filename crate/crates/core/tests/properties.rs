//! Invariants checked on random inputs.

mod common;

use common::*;
use nalgebra::DMatrix;
use nematic::config::{ConfigOverrides, SimConfig};
use nematic::diagnostics::{count_defects, read_energy_csv, write_energy_csv, EnergyRecord};
use nematic::fem::{
    assemble_convection, assemble_ew, assemble_mass_p1, assemble_pressure_gradient, assemble_stiffness_p1,
    CouplingParams, P1VectorField,
};
use nematic::mesh::{Diagonals, Rect, TriMesh};
use nematic::potential::{
    hf_from_index, truncated_hessian, truncated_penalty, truncated_potential, stabilized_step_slack,
    PotentialParams,
};
use nematic::scheme::{Scheme, SimState, Simulation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mesh_strategy() -> impl Strategy<Value = TriMesh> {
    (2usize..6, 2usize..6, any::<bool>()).prop_map(|(nx, ny, radial)| {
        let diag = if radial { Diagonals::Radial } else { Diagonals::Uniform };
        TriMesh::structured(Rect::symmetric_square(), nx, ny, diag)
    })
}

fn point() -> impl Strategy<Value = [f64; 2]> {
    [-2.0..2.0f64, -2.0..2.0f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn convection_is_skew(mesh in mesh_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // skew symmetry needs u . n = 0 on the boundary
        let u = random_velocity(&mesh, &mut rng, 3.0);
        let c = dense(&assemble_convection(&mesh, &u));
        let v = to_dvec(&random_scalar_field(&mesh, &mut rng).values);
        prop_assert!(v.dot(&(&c * &v)).abs() < 1e-13 * (1.0 + v.norm_squared()));
        prop_assert!((&c + c.transpose()).amax() < 1e-13);
    }

    #[test]
    fn ew_blocks_are_spd(mesh in mesh_strategy(), seed in any::<u64>(), beta in -1.0..0.0f64, gamma in 0.01..10.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_vector_field(&mesh, &mut rng, 2.0);
        let e = assemble_ew(&mesh, &d, CouplingParams { lambda: 1.0, beta, gamma, k: 0.01 });
        for b in 0..e.num_blocks() {
            let blk = DMatrix::from_row_slice(2, 2, e.block(b));
            prop_assert!((blk[(0, 1)] - blk[(1, 0)]).abs() < 1e-14 * blk.amax());
            let eig = blk.symmetric_eigenvalues();
            prop_assert!(eig.min() > 0.0);
        }
        let inv = e.inverse().unwrap();
        let x: Vec<f64> = (0..2 * mesh.num_elements()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let back = e.mul_vec(&inv.mul_vec(&x));
        prop_assert!(rel_err(&back, &x) < 1e-12);
    }

    #[test]
    fn mass_and_stiffness_identities(mesh in mesh_strategy()) {
        let ones = vec![1.0; mesh.num_vertices()];
        let m = assemble_mass_p1(&mesh).mul_vec(&ones);
        prop_assert!((m.iter().sum::<f64>() - mesh.total_area()).abs() < 1e-13);
        let l = assemble_stiffness_p1(&mesh).mul_vec(&ones);
        prop_assert!(l.iter().all(|x| x.abs() < 1e-13));
    }

    #[test]
    fn gradient_annihilates_constants(mesh in mesh_strategy(), c in -5.0..5.0f64) {
        let g = assemble_pressure_gradient(&mesh).mul_vec(&vec![c; mesh.num_vertices()]);
        for v in mesh.interior_nodes() {
            prop_assert!(g[2 * v].abs() < 1e-13 && g[2 * v + 1].abs() < 1e-13);
        }
    }

    #[test]
    fn penalty_is_the_potential_gradient(d in point(), eps in 0.05..1.0f64) {
        let h = 1e-6;
        let f = truncated_penalty(eps, &d);
        let scale = 1.0 / (eps * eps);
        for i in 0..2 {
            let (mut a, mut b) = (d, d);
            a[i] += h;
            b[i] -= h;
            let fd = (truncated_potential(eps, &a) - truncated_potential(eps, &b)) / (2.0 * h);
            prop_assert!((fd - f[i]).abs() < 1e-6 * scale * (1.0 + d[0].abs() + d[1].abs()).powi(3));
        }
    }

    #[test]
    fn hessian_is_the_penalty_jacobian(d in point(), eps in 0.05..1.0f64) {
        let r = (d[0] * d[0] + d[1] * d[1]).sqrt();
        prop_assume!((r - 1.0).abs() > 1e-3);
        let h = 1e-6;
        let hess = truncated_hessian(eps, &d);
        for j in 0..2 {
            let (mut a, mut b) = (d, d);
            a[j] += h;
            b[j] -= h;
            let (fa, fb) = (truncated_penalty(eps, &a), truncated_penalty(eps, &b));
            for i in 0..2 {
                let fd = (fa[i] - fb[i]) / (2.0 * h);
                prop_assert!((fd - hess[i][j]).abs() < 1e-5 / (eps * eps) * (1.0 + r * r));
            }
        }
    }

    #[test]
    fn stabilized_step_never_gains_energy(d0 in point(), d1 in point(), eps in 0.01..1.0f64) {
        let params = PotentialParams::new(eps, hf_from_index(2.0)).unwrap();
        let slack = stabilized_step_slack(params, &d0, &d1);
        prop_assert!(slack >= -1e-10 * params.stabilization());
    }

    #[test]
    fn defect_count_is_rotation_invariant(seed in any::<u64>(), angle in 0.0..std::f64::consts::TAU) {
        let mesh = TriMesh::structured(Rect::symmetric_square(), 8, 8, Diagonals::Radial);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let centres: Vec<([f64; 2], f64)> = (0..3)
            .map(|_| ([rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8)], if rng.gen_bool(0.5) { 1.0 } else { -1.0 }))
            .collect();
        let field = |rot: f64| {
            P1VectorField::interpolate(&mesh, |x| {
                let theta: f64 = rot + centres.iter().map(|(c, s)| s * (x[1] - c[1]).atan2(x[0] - c[0])).sum::<f64>();
                [theta.cos(), theta.sin()]
            })
        };
        prop_assert_eq!(count_defects(&mesh, &field(0.0)), count_defects(&mesh, &field(angle)));
    }

    #[test]
    fn energy_csv_round_trip(values in prop::collection::vec(prop::array::uniform9(-1e6..1e6f64), 0..8)) {
        let records: Vec<EnergyRecord> = values.into_iter().map(EnergyRecord::from_values).collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("energy.csv");
        write_energy_csv(&records, &path).unwrap();
        prop_assert_eq!(read_energy_csv(&path).unwrap(), records);
    }

    #[test]
    fn config_toml_round_trip(beta in -1.0..0.0f64, eps in 0.001..1.0f64, hf in 0.0..6.0f64, nx in 2usize..80) {
        let mut cfg = SimConfig::default();
        cfg.beta = beta;
        cfg.eps = eps;
        cfg.hf = hf;
        cfg.nx = nx;
        let back = ConfigOverrides::from_toml(&cfg.to_toml()).unwrap().resolve().unwrap();
        prop_assert_eq!(back, cfg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pressure_has_zero_mean(seed in any::<u64>(), mesh in mesh_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let state = SimState::new(
            &mesh,
            random_velocity(&mesh, &mut rng, 1.0),
            random_scalar_field(&mesh, &mut rng),
            random_vector_field(&mesh, &mut rng, 1.0),
        );
        let scheme = Scheme::new(SimConfig::default(), mesh.clone());
        let w = scheme.director_step(&state).unwrap().w;
        let (p, _) = scheme.pressure_step(&state, &w).unwrap();
        prop_assert!(p.integral(&mesh).abs() < 1e-12);
    }

    #[test]
    fn one_step_obeys_the_energy_law(seed in any::<u64>(), beta in -1.0..0.0f64, eps in 0.02..0.5f64) {
        let mesh = TriMesh::structured(Rect::symmetric_square(), 6, 6, Diagonals::Radial);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cfg = SimConfig::default();
        cfg.beta = beta;
        cfg.eps = eps;
        cfg.hf = hf_from_index(2.0);
        cfg.solver_tol = 1e-12;
        let state = SimState::new(
            &mesh,
            random_velocity(&mesh, &mut rng, 1.0),
            nematic::fem::P1ScalarField::zeros(&mesh),
            random_vector_field(&mesh, &mut rng, 1.3),
        );
        let mut sim = Simulation::from_state(Scheme::new(cfg, mesh), state);
        let e0 = sim.initial_energy();
        let report = sim.step().unwrap().clone();
        prop_assert!(report.energy_margin >= -1e-8 * e0, "margin {} at E0 {}", report.energy_margin, e0);
    }
}
