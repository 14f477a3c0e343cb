use crate::analytics::{jain_index, max_min_fairness};
use crate::sched::StationId;

/// Octets of MAC header and trailer excluded from goodput.
pub const MAC_OVERHEAD_OCTETS: u64 = 34;
pub const ACK_OCTETS: u64 = 14;
pub const RTS_OCTETS: u64 = 20;
pub const CTS_OCTETS: u64 = 14;
pub const TF_OCTETS: u64 = 28;

/// Raw per-station counters accumulated by the engine.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StationCounters {
    pub id: StationId,
    /// Offered load used for max-min fairness.
    pub load: f64,
    pub offered_frames: u64,
    pub offered_bits: u64,
    pub delivered_frames: u64,
    pub delivered_bits: u64,
    /// Delivered bits net of MAC overhead.
    pub delivered_body_bits: u64,
    pub dropped_frames: u64,
    pub dropped_bits: u64,
    /// Frames offered but neither delivered nor dropped at the end.
    pub in_flight_frames: u64,
    pub in_flight_bits: u64,
    pub attempts: u64,
    pub collisions: u64,
    pub retransmissions: u64,
    /// Control-frame bits sent on this station's behalf.
    pub control_bits: u64,
}

impl StationCounters {
    pub fn new(id: StationId, load: f64) -> Self {
        StationCounters { id, load, ..Default::default() }
    }

    /// `offered = delivered + dropped + in flight`, in frames and bits.
    pub fn conserved(&self) -> bool {
        self.offered_frames == self.delivered_frames + self.dropped_frames + self.in_flight_frames
            && self.offered_bits == self.delivered_bits + self.dropped_bits + self.in_flight_bits
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationMetrics {
    pub id: StationId,
    pub throughput_mbps: f64,
    pub goodput_mbps: f64,
    pub attempts: u64,
    pub collisions: u64,
    pub retransmissions: u64,
}

/// Summary of one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimMetrics {
    pub duration_us: u64,
    pub throughput_mbps: f64,
    pub goodput_mbps: f64,
    /// Failed attempts over all attempts; zero when nothing was attempted.
    pub collision_prob: f64,
    pub attempts: u64,
    pub collisions: u64,
    pub retransmissions: u64,
    pub drops: u64,
    /// Jain index over per-station throughput.
    pub jain: f64,
    /// Max-min fairness of throughput against offered load; NaN when any
    /// station has zero load.
    pub maxmin_f: f64,
    pub per_station: Vec<StationMetrics>,
    pub counters: Vec<StationCounters>,
    pub events: u64,
}

/// Turns raw counters into rates over `duration_us`.
///
/// Throughput counts each delivered frame once, headers included. Goodput
/// drops the MAC overhead and subtracts control-frame bits, floored at zero.
pub fn collect_metrics(counters: &[StationCounters], duration_us: u64) -> SimMetrics {
    let d = duration_us.max(1) as f64;
    let per_station: Vec<StationMetrics> = counters
        .iter()
        .map(|c| StationMetrics {
            id: c.id.clone(),
            throughput_mbps: c.delivered_bits as f64 / d,
            goodput_mbps: c.delivered_body_bits.saturating_sub(c.control_bits) as f64 / d,
            attempts: c.attempts,
            collisions: c.collisions,
            retransmissions: c.retransmissions,
        })
        .collect();
    let sum = |f: fn(&StationCounters) -> u64| counters.iter().map(f).sum::<u64>();
    let attempts = sum(|c| c.attempts);
    let collisions = sum(|c| c.collisions);
    let t: Vec<f64> = per_station.iter().map(|s| s.throughput_mbps).collect();
    let loads: Vec<f64> = counters.iter().map(|c| c.load).collect();
    SimMetrics {
        duration_us,
        throughput_mbps: t.iter().sum(),
        goodput_mbps: per_station.iter().map(|s| s.goodput_mbps).sum(),
        collision_prob: if attempts == 0 { 0.0 } else { collisions as f64 / attempts as f64 },
        attempts,
        collisions,
        retransmissions: sum(|c| c.retransmissions),
        drops: sum(|c| c.dropped_frames),
        jain: jain_index(&t).unwrap_or(f64::NAN),
        maxmin_f: max_min_fairness(&t, &loads).unwrap_or(f64::NAN),
        per_station,
        counters: counters.to_vec(),
        events: 0,
    }
}
