//! Deterministic simulation lab and analytical models for OFDMA Wi-Fi MAC
//! scheduling.
//!
//! The crate is organised bottom-up:
//!
//! * [`ru`]: resource-unit trees, split/merge validity, partitions.
//! * [`mac`]: frame type codec, inter-frame spaces, backoff arithmetic.
//! * [`channel`]: path loss, payload distributions, loss-to-rate mapping.
//! * [`sched`]: the HTFA, ERA and PRS schedulers.
//! * [`sim`]: the discrete-event engine and metric collection.
//! * [`analytics`]: closed-form throughput models and fairness indices.
//! * [`harness`]: configuration files, experiment sweeps, CSV output, CLI.

pub mod analytics;
pub mod channel;
pub mod error;
pub mod mac;
pub mod ru;
pub mod sched;
pub mod harness;
pub mod sim;

pub use error::{Error, Result};
