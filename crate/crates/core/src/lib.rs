//! Finite-element solver for nematic liquid-crystal flow with stretching.
//!
//! The director equation is a penalized harmonic-map flow transported by
//! the fluid; the flow is incompressible Navier-Stokes driven by elastic
//! stresses. Each time step solves, in sequence,
//!
//! 1. a linear director/auxiliary-variable system (P1 director, P0
//!    auxiliary) eliminated through its Schur complement,
//! 2. a stabilized pressure projection with equal-order P1 pressure,
//! 3. a linear velocity step with skew-symmetric convection.
//!
//! With a large enough stabilization coefficient `hf` the discrete energy
//! decreases unconditionally.
//!
//! ```no_run
//! use nematic::config::{Preset, SimConfig};
//! use nematic::scheme::time_loop;
//!
//! let cfg = SimConfig::for_preset(Preset::TwoSingularities);
//! let out = time_loop(&cfg).unwrap();
//! let summary = out.summary();
//! println!("kinetic energy peaks at t = {:?}", summary.t_a);
//! ```

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod fem;
pub mod mesh;
pub mod potential;
pub mod scheme;

pub use config::{parse_config, Preset, SimConfig};
pub use error::{Error, Result, SolverError};
pub use mesh::{mesh_size, Diagonals, Rect, TriMesh};
pub use potential::{hf_from_index, theoretical_hf};
pub use scheme::{time_loop, Scheme, SimState, Simulation};
