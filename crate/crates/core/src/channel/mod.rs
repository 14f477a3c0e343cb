//! Path-loss models, payload-size distributions and the loss-to-rate table
//! that connects geometry to the simulator.

mod pathloss;
mod payload;
mod rate;

pub use pathloss::{free_space_pl, indoor_pl, overall_indoor_pl, winner_pl, PathLossParams};
pub use payload::{mean_payload, Density, PayloadDistribution, TruncatedExponential};
pub use rate::{RateTable, DEFAULT_ANTENNA_EXPONENT};
