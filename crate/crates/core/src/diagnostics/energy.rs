use serde::{Deserialize, Serialize};

use crate::config::SimConfig;
use crate::fem::{assemble_mass_p1, assemble_stiffness_p1, quadrature::potential_rule, CsrMatrix};
use crate::mesh::TriMesh;
use crate::potential::truncated_potential;
use crate::scheme::SimState;

/// Energies and dissipation of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyRecord {
    pub t: f64,
    /// `1/2 ||u||^2`.
    #[serde(rename = "E_kin")]
    pub kinetic: f64,
    /// `lambda/2 ||grad d||^2`.
    #[serde(rename = "E_elastic")]
    pub elastic: f64,
    /// `lambda int F~(eps, d)`.
    #[serde(rename = "E_penalty")]
    pub penalty: f64,
    #[serde(rename = "E_total")]
    pub total: f64,
    /// `k nu ||grad u||^2`.
    #[serde(rename = "diss_viscous")]
    pub viscous_dissipation: f64,
    /// `k lambda gamma ||w||^2`.
    #[serde(rename = "diss_relaxation")]
    pub relaxation_dissipation: f64,
    #[serde(rename = "min_abs_d")]
    pub min_norm: f64,
    #[serde(rename = "max_abs_d")]
    pub max_norm: f64,
}

impl EnergyRecord {
    pub const COLUMNS: [&'static str; 9] = [
        "t",
        "E_kin",
        "E_elastic",
        "E_penalty",
        "E_total",
        "diss_viscous",
        "diss_relaxation",
        "min_abs_d",
        "max_abs_d",
    ];

    pub fn values(&self) -> [f64; 9] {
        [
            self.t,
            self.kinetic,
            self.elastic,
            self.penalty,
            self.total,
            self.viscous_dissipation,
            self.relaxation_dissipation,
            self.min_norm,
            self.max_norm,
        ]
    }

    pub fn from_values(v: [f64; 9]) -> Self {
        Self {
            t: v[0],
            kinetic: v[1],
            elastic: v[2],
            penalty: v[3],
            total: v[4],
            viscous_dissipation: v[5],
            relaxation_dissipation: v[6],
            min_norm: v[7],
            max_norm: v[8],
        }
    }

    pub fn dissipation(&self) -> f64 {
        self.viscous_dissipation + self.relaxation_dissipation
    }

    pub fn is_finite(&self) -> bool {
        self.values().iter().all(|v| v.is_finite())
    }
}

fn quadratic_form(a: &CsrMatrix, x: &[f64]) -> f64 {
    a.mul_vec(x).iter().zip(x).map(|(y, x)| y * x).sum()
}

/// `int F~(eps, d)` with the degree-4 rule.
pub fn penalty_integral(mesh: &TriMesh, d: &crate::fem::P1VectorField, eps: f64) -> f64 {
    let mut total = 0.0;
    for e in 0..mesh.num_elements() {
        let mut local = 0.0;
        for q in potential_rule() {
            local += q.weight * truncated_potential(eps, &d.eval2(mesh, e, q.bary));
        }
        total += mesh.area(e) * local;
    }
    total
}

/// Energy evaluation with caller-supplied vector mass and stiffness matrices.
pub fn evaluate_energies(
    mesh: &TriMesh,
    mass_vec: &CsrMatrix,
    stiffness_vec: &CsrMatrix,
    cfg: &SimConfig,
    state: &SimState,
) -> EnergyRecord {
    let kinetic = 0.5 * quadratic_form(mass_vec, &state.u.values);
    let elastic = 0.5 * cfg.lambda * quadratic_form(stiffness_vec, &state.d.values);
    let penalty = cfg.lambda * penalty_integral(mesh, &state.d, cfg.eps);
    let grad_u = quadratic_form(stiffness_vec, &state.u.values);
    EnergyRecord {
        t: state.t,
        kinetic,
        elastic,
        penalty,
        total: kinetic + elastic + penalty,
        viscous_dissipation: cfg.dt * cfg.nu * grad_u,
        relaxation_dissipation: cfg.dt * cfg.lambda * cfg.gamma * state.w.norm_sq(mesh),
        min_norm: state.d.min_norm(),
        max_norm: state.d.max_norm(),
    }
}

/// Energies of `state`; assembles the matrices it needs.
pub fn compute_energies(state: &SimState, cfg: &SimConfig, mesh: &TriMesh) -> EnergyRecord {
    let mass = assemble_mass_p1(mesh).expand_components(2);
    let stiffness = assemble_stiffness_p1(mesh).expand_components(2);
    evaluate_energies(mesh, &mass, &stiffness, cfg, state)
}
