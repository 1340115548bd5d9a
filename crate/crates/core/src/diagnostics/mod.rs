//! Energies, defect tracking, run summaries, the table harness and output files.

mod defects;
mod energy;
pub mod harness;
mod io;
mod summary;

pub use defects::{count_defects, triangle_degrees};
pub use energy::{compute_energies, evaluate_energies, penalty_integral, EnergyRecord};
pub use harness::{run_table_harness, HarnessAxis, HarnessCell, HarnessParam, HarnessTable};
pub use io::{read_energy_csv, snapshot_path, write_energy_csv, write_field_snapshot, write_mesh_vtk};
pub use summary::{
    detect_annihilation, is_unstable, Annihilation, RunSummary, FLAT_CURVE_THRESHOLD, INSTABILITY_FACTOR,
};
