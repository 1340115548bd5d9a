use crate::config::SimConfig;
use crate::diagnostics::{count_defects, detect_annihilation, evaluate_energies, is_unstable, EnergyRecord, RunSummary};
use crate::error::{Error, Result};

use super::{build_preset_initial_data, Scheme, SimState, StepReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunStatus {
    Completed,
    /// Energy blew up (or a field became non-finite) at this step.
    Unstable { step: usize, t: f64 },
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub state: SimState,
    /// One record per state, starting with the initial one.
    pub records: Vec<EnergyRecord>,
    /// Defect count per record.
    pub defects: Vec<usize>,
    pub reports: Vec<StepReport>,
    pub status: RunStatus,
}

impl RunOutput {
    pub fn is_stable(&self) -> bool {
        self.status == RunStatus::Completed
    }

    pub fn summary(&self) -> RunSummary {
        let mut s = detect_annihilation(&self.records).with_defects(&self.records, &self.defects);
        if !self.is_stable() {
            s = detect_annihilation(&[]);
            s.final_record = self.records.last().copied();
        }
        s
    }
}

/// A run in progress: scheme, current state and history.
#[derive(Debug, Clone)]
pub struct Simulation {
    scheme: Scheme,
    state: SimState,
    records: Vec<EnergyRecord>,
    defects: Vec<usize>,
    reports: Vec<StepReport>,
}

impl Simulation {
    /// Validates `cfg`, builds the mesh and the preset initial data.
    pub fn new(cfg: SimConfig) -> Result<Self> {
        cfg.validate()?;
        cfg.report_mesh_ratio();
        let mesh = cfg.build_mesh();
        let (d, u, p) = build_preset_initial_data(cfg.preset, &cfg, &mesh)?;
        let state = SimState::new(&mesh, u, p, d);
        Ok(Self::from_state(Scheme::new(cfg, mesh), state))
    }

    pub fn from_state(scheme: Scheme, state: SimState) -> Self {
        let mut sim = Self {
            scheme,
            state,
            records: Vec::new(),
            defects: Vec::new(),
            reports: Vec::new(),
        };
        let r = sim.energies(&sim.state);
        sim.records.push(r);
        sim.defects.push(count_defects(sim.scheme.mesh(), &sim.state.d));
        sim
    }

    fn energies(&self, state: &SimState) -> EnergyRecord {
        let ops = self.scheme.operators();
        evaluate_energies(self.scheme.mesh(), &ops.mass_vec, &ops.stiffness_vec, self.scheme.config(), state)
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn state(&self) -> &SimState {
        &self.state
    }

    pub fn records(&self) -> &[EnergyRecord] {
        &self.records
    }

    pub fn initial_energy(&self) -> f64 {
        self.records[0].total
    }

    /// Advances one step; solver errors carry the index of the failed step.
    pub fn step(&mut self) -> Result<&StepReport> {
        let index = self.state.step + 1;
        let (next, stats) = self.scheme.advance(&self.state).map_err(|e| Error::Step {
            step: index,
            source: Box::new(e),
        })?;
        let after = self.energies(&next);
        let before = self.records.last().expect("initial record exists");
        self.reports.push(StepReport::new(index, stats, before, &after));
        self.records.push(after);
        self.defects.push(count_defects(self.scheme.mesh(), &next.d));
        self.state = next;
        Ok(self.reports.last().expect("just pushed"))
    }

    /// Runs to `t_final`, calling `on_step` for the initial and every new
    /// state. Stops early when the run becomes unstable.
    pub fn run_with(mut self, mut on_step: impl FnMut(&SimState, &EnergyRecord) -> Result<()>) -> Result<RunOutput> {
        on_step(&self.state, &self.records[0])?;
        let e0 = self.initial_energy();
        let mut status = RunStatus::Completed;
        for _ in 0..self.scheme.config().num_steps() {
            self.step()?;
            let last = *self.records.last().expect("record per step");
            on_step(&self.state, &last)?;
            if is_unstable(&last, e0) || !self.state.is_finite() {
                log::info!("unstable at step {} (t = {:.4})", self.state.step, self.state.t);
                status = RunStatus::Unstable {
                    step: self.state.step,
                    t: self.state.t,
                };
                break;
            }
        }
        Ok(RunOutput {
            state: self.state,
            records: self.records,
            defects: self.defects,
            reports: self.reports,
            status,
        })
    }

    pub fn run(self) -> Result<RunOutput> {
        self.run_with(|_, _| Ok(()))
    }
}

/// Runs the preset of `cfg` from `t = 0` to `cfg.t_final`.
pub fn time_loop(cfg: &SimConfig) -> Result<RunOutput> {
    Simulation::new(cfg.clone())?.run()
}
