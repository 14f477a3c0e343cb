//! Discrete-event simulation of contended and scheduled uplink access.
//!
//! Time is an integer count of microseconds. Events are processed in
//! `(tick, sequence)` order, so a run is a pure function of its
//! configuration and seed.

mod config;
mod engine;
mod event;
mod metrics;
mod sa;

pub use config::{
    CohortPolicy, EraParams, Handshake, HtfaParams, PhyParams, Protocol, PrsDistribution,
    PrsParams, SimConfig,
};
pub use engine::{
    advance_subchannel, dcf_airtimes, full_channel_airtime, mpdu_bits, run, run_traced,
    subchannel_airtime, DcfAirtimes, SubchannelState, TxKind, TxRecord,
};
pub use event::{Event, EventQueue};
pub use metrics::{
    collect_metrics, SimMetrics, StationCounters, StationMetrics, ACK_OCTETS, CTS_OCTETS,
    MAC_OVERHEAD_OCTETS, RTS_OCTETS, TF_OCTETS,
};
pub use sa::{run_sa_cycle, tf_cycle_duration, Link, SaContext};

#[cfg(test)]
mod tests;
