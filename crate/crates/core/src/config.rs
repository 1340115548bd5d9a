//! Simulation configuration, experiment presets and command-line parsing.
//!
//! Settings come from three layers, later ones winning: built-in defaults
//! (the two-singularity annihilation run), an optional TOML file, and
//! command-line flags. File keys are the flag names without the leading
//! dashes, e.g. `t-final = 0.3` or `S = 1.0`.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{mesh_size, Diagonals, Rect, TriMesh};

/// Initial data of the annihilation experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Preset {
    /// Defects at `(+-0.5, 0)`.
    TwoSingularities,
    /// Defects at `(+-0.5, 0)` and `(0, +-0.25)`.
    FourSingularities,
}

impl Preset {
    /// Unnormalized director `d~(x, y)`; its zeros are the defects.
    pub fn raw_director(self, [x, y]: [f64; 2]) -> [f64; 2] {
        match self {
            Self::TwoSingularities => [x * x + y * y - 0.25, y],
            Self::FourSingularities => [x * x / 0.25 + y * y / 0.0625 - 1.0, -x * y],
        }
    }

    /// `d0 = d~ / sqrt(|d~|^2 + eps^2)`.
    pub fn director(self, eps: f64, x: [f64; 2]) -> [f64; 2] {
        let [a, b] = self.raw_director(x);
        let s = (a * a + b * b + eps * eps).sqrt();
        [a / s, b / s]
    }

    pub fn initial_velocity(self, _x: [f64; 2]) -> [f64; 2] {
        [0.0, 0.0]
    }

    /// Long enough to cover annihilation in the default parameter regime.
    /// Long enough for the kinetic-energy peak to occur even with the
    /// strongest stabilization of the tables.
    pub fn default_t_final(self) -> f64 {
        match self {
            Self::TwoSingularities => 0.8,
            Self::FourSingularities => 0.2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::TwoSingularities => "two_singularities",
            Self::FourSingularities => "four_singularities",
        }
    }
}

/// Fully resolved run configuration. Immutable once validated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SimConfig {
    pub preset: Preset,
    pub nu: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub beta: f64,
    pub eps: f64,
    /// Time-step size `k`.
    pub dt: f64,
    pub t_final: f64,
    /// Pressure-stabilization constant.
    #[serde(rename = "S")]
    pub s: f64,
    /// Coefficient used in place of `H_F` in the director step.
    pub hf: f64,
    pub domain: Rect,
    pub nx: usize,
    pub ny: usize,
    /// Orientation of the cell diagonals.
    pub diagonals: Diagonals,
    pub dim: usize,
    /// Relative residual for every linear solve.
    pub solver_tol: f64,
    pub out_dir: PathBuf,
    /// Write a VTK snapshot every this many steps; 0 disables snapshots.
    pub snapshot_every: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self::for_preset(Preset::TwoSingularities)
    }
}

impl SimConfig {
    /// Parameters of the annihilation experiments with the given initial data.
    pub fn for_preset(preset: Preset) -> Self {
        Self {
            preset,
            nu: 1.0,
            lambda: 1.0,
            gamma: 1.0,
            beta: -1.0,
            eps: 0.05,
            dt: 1e-3,
            t_final: preset.default_t_final(),
            s: 1.0,
            hf: 0.0,
            domain: Rect::symmetric_square(),
            // h = 2 sqrt(2) / 36 = 0.0786
            nx: 36,
            ny: 36,
            diagonals: Diagonals::Radial,
            dim: 2,
            solver_tol: 1e-10,
            out_dir: PathBuf::from("output"),
            snapshot_every: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(field: &str, v: f64) -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(field, format!("must be positive, got {v}")))
            }
        }
        if !(-1.0..=0.0).contains(&self.beta) {
            return Err(Error::config("beta", format!("beta out of range [-1,0]: {}", self.beta)));
        }
        positive("nu", self.nu)?;
        positive("lambda", self.lambda)?;
        positive("gamma", self.gamma)?;
        positive("eps", self.eps)?;
        positive("dt", self.dt)?;
        positive("S", self.s)?;
        positive("solver-tol", self.solver_tol)?;
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(Error::config("t-final", format!("must be non-negative, got {}", self.t_final)));
        }
        if !(self.hf >= 0.0 && self.hf.is_finite()) {
            return Err(Error::config("hf", format!("must be non-negative, got {}", self.hf)));
        }
        if self.nx == 0 {
            return Err(Error::config("nx", "need at least one subdivision"));
        }
        if self.ny == 0 {
            return Err(Error::config("ny", "need at least one subdivision"));
        }
        if !self.domain.is_valid() {
            return Err(Error::config("domain", "empty or non-finite rectangle"));
        }
        if self.dim != 2 {
            return Err(Error::config("dim", format!("only 2D runs are supported, got {}", self.dim)));
        }
        Ok(())
    }

    pub fn build_mesh(&self) -> TriMesh {
        TriMesh::structured(self.domain, self.nx, self.ny, self.diagonals)
    }

    /// Number of time steps, `round(t_final / dt)`.
    pub fn num_steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }

    /// Mesh-size to penalty ratio `h / eps`; initial energies stay bounded
    /// only while this ratio is bounded.
    pub fn mesh_ratio(&self) -> f64 {
        let h = mesh_size(&self.build_mesh()).unwrap_or(f64::NAN);
        h / self.eps
    }

    /// Logs `h / eps` and warns when it exceeds 2.
    pub fn report_mesh_ratio(&self) -> f64 {
        let ratio = self.mesh_ratio();
        if ratio > 2.0 {
            log::warn!("h/eps = {ratio:.3} > 2: the initial energy is not controlled uniformly in eps");
        } else {
            log::info!("h/eps = {ratio:.3}");
        }
        ratio
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    fn apply(&mut self, o: ConfigOverrides) {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = o.$f { self.$f = v; } )* };
        }
        set!(nu, lambda, gamma, beta, eps, dt, t_final, s, hf, domain, nx, ny, diagonals, dim, solver_tol, out_dir, snapshot_every);
    }
}

/// Partial configuration as read from a file or the command line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigOverrides {
    pub preset: Option<Preset>,
    pub nu: Option<f64>,
    pub lambda: Option<f64>,
    pub gamma: Option<f64>,
    pub beta: Option<f64>,
    pub eps: Option<f64>,
    pub dt: Option<f64>,
    pub t_final: Option<f64>,
    #[serde(rename = "S")]
    pub s: Option<f64>,
    pub hf: Option<f64>,
    pub domain: Option<Rect>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub diagonals: Option<Diagonals>,
    pub dim: Option<usize>,
    pub solver_tol: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub snapshot_every: Option<usize>,
}

impl ConfigOverrides {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    /// Fields set in `other` win.
    fn merge(self, other: Self) -> Self {
        macro_rules! pick {
            ($($f:ident),*) => { Self { $( $f: other.$f.or(self.$f), )* } };
        }
        pick!(preset, nu, lambda, gamma, beta, eps, dt, t_final, s, hf, domain, nx, ny, diagonals, dim, solver_tol, out_dir, snapshot_every)
    }

    /// Resolves against the preset defaults and validates.
    pub fn resolve(self) -> Result<SimConfig> {
        let mut cfg = SimConfig::for_preset(self.preset.unwrap_or(Preset::TwoSingularities));
        cfg.apply(self);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Command-line flags.
#[derive(Debug, Clone, Default, Parser)]
#[command(name = "nematic", about = "Nematic liquid-crystal flow solver", allow_negative_numbers = true)]
pub struct CliArgs {
    /// TOML file with the same keys as the flags; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    #[arg(long, value_enum)]
    pub diagonals: Option<Diagonals>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long = "t-final")]
    pub t_final: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub hf: Option<f64>,
    #[arg(long = "S")]
    pub s: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
    #[arg(long = "snapshot-every")]
    pub snapshot_every: Option<usize>,
}

impl CliArgs {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            preset: self.preset,
            nu: self.nu,
            lambda: self.lambda,
            gamma: self.gamma,
            beta: self.beta,
            eps: self.eps,
            dt: self.dt,
            t_final: self.t_final,
            s: self.s,
            hf: self.hf,
            nx: self.nx,
            ny: self.ny,
            diagonals: self.diagonals,
            out_dir: self.out_dir.clone(),
            snapshot_every: self.snapshot_every,
            ..Default::default()
        }
    }

    pub fn resolve(&self) -> Result<SimConfig> {
        let file = match &self.config {
            Some(path) => ConfigOverrides::from_file(path)?,
            None => ConfigOverrides::default(),
        };
        file.merge(self.overrides()).resolve()
    }
}

/// Parses command-line arguments (first item is the program name).
pub fn parse_config<I, T>(args: I) -> Result<SimConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = CliArgs::try_parse_from(args).map_err(|e| Error::ConfigParse(e.to_string()))?;
    cli.resolve()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<SimConfig> {
        parse_config(std::iter::once("nematic").chain(args.iter().copied()))
    }

    #[test]
    fn defaults_are_the_two_singularity_run() {
        let cfg = parse(&[]).unwrap();
        assert_eq!(cfg.preset, Preset::TwoSingularities);
        assert_eq!((cfg.nu, cfg.lambda, cfg.gamma, cfg.beta), (1.0, 1.0, 1.0, -1.0));
        assert_eq!((cfg.eps, cfg.dt, cfg.hf), (0.05, 0.001, 0.0));
        assert_eq!(cfg.domain, Rect::symmetric_square());
    }

    #[test]
    fn preset_flag() {
        let cfg = parse(&["--preset", "four_singularities"]).unwrap();
        assert_eq!(cfg.preset, Preset::FourSingularities);
        assert_eq!((cfg.nu, cfg.lambda, cfg.gamma, cfg.beta), (1.0, 1.0, 1.0, -1.0));
    }

    #[test]
    fn numeric_flags_map_directly() {
        let cfg = parse(&["--beta", "-0.5", "--hf", "1.0", "--S", "0.3", "--t-final", "0.1", "--nx", "8"]).unwrap();
        assert_eq!((cfg.beta, cfg.hf, cfg.s, cfg.t_final, cfg.nx), (-0.5, 1.0, 0.3, 0.1, 8));
    }

    #[test]
    fn out_of_range_beta() {
        let err = parse(&["--beta", "0.5"]).unwrap_err();
        assert!(err.to_string().contains("beta out of range [-1,0]"), "{err}");
        assert!(matches!(err, Error::Config { ref field, .. } if field == "beta"));
    }

    #[test]
    fn other_range_errors_name_the_field() {
        for (flag, val, field) in [("--eps", "0", "eps"), ("--dt", "-1", "dt"), ("--S", "0", "S"), ("--hf", "-0.1", "hf")] {
            match parse(&[flag, val]) {
                Err(Error::Config { field: f, .. }) => assert_eq!(f, field),
                other => panic!("{flag}: {other:?}"),
            }
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(parse(&["--bogus", "1"]).is_err());
        assert!(matches!(ConfigOverrides::from_toml("bogus = 1"), Err(Error::ConfigParse(_))));
    }

    #[test]
    fn file_then_cli_precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "preset = \"four_singularities\"\nbeta = -0.2\nhf = 2.0\nt-final = 0.05\nS = 0.5\n").unwrap();
        let cfg = parse(&["--config", path.to_str().unwrap(), "--hf", "1.5"]).unwrap();
        assert_eq!(cfg.preset, Preset::FourSingularities);
        assert_eq!((cfg.beta, cfg.hf, cfg.t_final, cfg.s), (-0.2, 1.5, 0.05, 0.5));
    }

    #[test]
    fn toml_round_trip() {
        let mut cfg = SimConfig::for_preset(Preset::FourSingularities);
        cfg.beta = -0.8;
        cfg.hf = 26f64.sqrt();
        cfg.snapshot_every = 10;
        let text = cfg.to_toml();
        let back: SimConfig = toml::from_str(&text).unwrap();
        assert_eq!(back, cfg);
        let via_overrides = ConfigOverrides::from_toml(&text).unwrap().resolve().unwrap();
        assert_eq!(via_overrides, cfg);
    }

    #[test]
    fn preset_zeros() {
        assert_eq!(Preset::TwoSingularities.director(0.05, [0.5, 0.0]), [0.0, 0.0]);
        assert_eq!(Preset::FourSingularities.director(0.05, [0.0, 0.25]), [0.0, 0.0]);
        let d = Preset::TwoSingularities.director(0.05, [1.0, 1.0]);
        let n = d[0].hypot(d[1]);
        // |d~| = |(1.75, 1)|
        let raw = 1.75f64.hypot(1.0);
        assert!((n - raw / (raw * raw + 0.0025).sqrt()).abs() < 1e-15);
        assert!((n - 0.99969).abs() < 1e-5);
    }

    #[test]
    fn mesh_ratio_warning_threshold() {
        let mut cfg = SimConfig::default();
        cfg.nx = 31;
        cfg.ny = 31;
        assert!(cfg.report_mesh_ratio() < 2.0);
        cfg.eps = 0.01;
        assert!(cfg.report_mesh_ratio() > 2.0);
    }
}
