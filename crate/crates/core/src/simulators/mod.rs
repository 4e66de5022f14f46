//! Spreading and cascading-failure simulators.

pub mod cascade;
pub mod epidemic;
pub mod sweep;

pub use cascade::{base_capacities, final_failure_fraction, run_cascade, CascadeConfig, CascadeState};
pub use epidemic::{
    effective_strength, run_sir, run_sis, EpidemicConfig, EpidemicModel, InitialInfection, SimulationTrace,
    SirConfig, SisConfig,
};
pub use sweep::{beta_for_strength, mean_by_value, sweep, CascadeParameter, SweepGrid, SweepModel, SweepRow};
