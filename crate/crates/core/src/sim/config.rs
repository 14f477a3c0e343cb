use crate::channel::{PathLossParams, RateTable};
use crate::error::SimError;
use crate::mac::TimingParams;
use crate::ru::Bandwidth;
use crate::sched::{AccessMode, Station, StationId, TRounding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Protocol {
    LegacyDcf,
    Htfa,
    Era,
    Prs,
}

impl Protocol {
    pub fn name(self) -> &'static str {
        match self {
            Protocol::LegacyDcf => "dcf",
            Protocol::Htfa => "htfa",
            Protocol::Era => "era",
            Protocol::Prs => "prs",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dcf" | "legacy" | "legacydcf" | "legacy_dcf" => Some(Protocol::LegacyDcf),
            "htfa" => Some(Protocol::Htfa),
            "era" => Some(Protocol::Era),
            "prs" => Some(Protocol::Prs),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Handshake {
    /// DATA / ACK.
    TwoWay,
    /// RTS / CTS / DATA / ACK.
    FourWay,
    /// Four-way on channels with two or more contenders, two-way otherwise.
    Auto,
}

impl Handshake {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "two-way" | "twoway" | "two_way" | "basic" => Some(Handshake::TwoWay),
            "four-way" | "fourway" | "four_way" | "rts" => Some(Handshake::FourWay),
            "auto" => Some(Handshake::Auto),
            _ => None,
        }
    }
}

/// Physical-layer durations and frame sizing. Durations in microseconds.
#[derive(Debug, Clone, PartialEq)]
pub struct PhyParams {
    /// Fixed full-channel airtime of a data frame. When absent, the airtime
    /// is derived from the frame size and the channel rate.
    pub data_airtime_us: Option<u64>,
    /// Full-channel rate used when `data_airtime_us` is absent.
    pub channel_rate_mbps: f64,
    pub body_octets: usize,
    pub rts_us: u64,
    pub cts_us: u64,
    /// Propagation delay added to every frame.
    pub delta_us: u64,
    /// PHY preamble/header time.
    pub phy_header_us: u64,
    pub tf_us: u64,
    /// Uplink payload duration of one trigger-frame cycle.
    pub sa_payload_us: u64,
}

impl Default for PhyParams {
    fn default() -> Self {
        PhyParams {
            data_airtime_us: None,
            channel_rate_mbps: 54.0,
            body_octets: 1500,
            rts_us: 52,
            cts_us: 44,
            delta_us: 1,
            phy_header_us: 40,
            tf_us: 60,
            sa_payload_us: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HtfaParams {
    pub m: usize,
    /// Fraction of the channel lost per extra sub-channel boundary.
    pub guard_fraction: f64,
    /// Stations owning several sub-channels transmit on all at once when
    /// set; otherwise they rotate, one frame at a time.
    pub multi_channel_tx: bool,
}

impl Default for HtfaParams {
    fn default() -> Self {
        HtfaParams { m: 1, guard_fraction: 0.0, multi_channel_tx: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CohortPolicy {
    /// One schedule for all SA stations; zero-grant stations contend in the
    /// RA zone.
    Literal,
    /// Successive trigger frames serve the longest FCFS run of SA stations
    /// in which every station receives at least one SRU.
    #[default]
    Rotating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrsDistribution {
    Sa,
    Ra,
    /// First half scheduled, second half random access.
    Hybrid,
}

impl PrsDistribution {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sa" => Some(PrsDistribution::Sa),
            "ra" => Some(PrsDistribution::Ra),
            "hybrid" => Some(PrsDistribution::Hybrid),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PrsDistribution::Sa => "sa",
            PrsDistribution::Ra => "ra",
            PrsDistribution::Hybrid => "hybrid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PrsParams {
    pub rounding: TRounding,
    pub policy: CohortPolicy,
    /// Overrides the per-station access modes when set.
    pub distribution: Option<PrsDistribution>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EraParams {
    pub ll_threshold: f64,
}

impl Default for EraParams {
    fn default() -> Self {
        EraParams { ll_threshold: 2.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub protocol: Protocol,
    pub stations: Vec<Station>,
    pub bandwidth: Bandwidth,
    pub timing: TimingParams,
    pub phy: PhyParams,
    pub rates: RateTable,
    pub path_loss: PathLossParams,
    pub radius_m: f64,
    pub ap_antennas: u32,
    pub sim_duration_us: u64,
    pub seed: u64,
    pub handshake: Handshake,
    pub freeze_on_busy: bool,
    /// Station pairs that cannot sense each other.
    pub hidden_pairs: Vec<(StationId, StationId)>,
    pub htfa: HtfaParams,
    pub era: EraParams,
    pub prs: PrsParams,
}

impl SimConfig {
    /// A legacy DCF scenario with `n` stations named `S1..Sn` and
    /// otherwise default parameters.
    pub fn new(protocol: Protocol, n: usize, timing: TimingParams, seed: u64) -> Self {
        SimConfig {
            protocol,
            stations: (1..=n).map(|k| Station::new(format!("S{k}"), 1.0)).collect(),
            bandwidth: Bandwidth::Mhz40,
            timing,
            phy: PhyParams::default(),
            rates: RateTable::default(),
            path_loss: PathLossParams::default(),
            radius_m: 15.0,
            ap_antennas: 4,
            sim_duration_us: 1_000_000,
            seed,
            handshake: Handshake::Auto,
            freeze_on_busy: true,
            hidden_pairs: Vec::new(),
            htfa: HtfaParams::default(),
            era: EraParams::default(),
            prs: PrsParams::default(),
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::Config(m));
        if self.sim_duration_us == 0 {
            return bad("simulation duration must be positive".into());
        }
        self.timing.validate()?;
        if self.stations.is_empty() {
            return bad("at least one station is required".into());
        }
        let mut ids = std::collections::BTreeSet::new();
        for s in &self.stations {
            if !ids.insert(&s.id) {
                return bad(format!("duplicate station id {}", s.id));
            }
            if !(s.load >= 0.0) {
                return bad(format!("station {} has negative load", s.id));
            }
            if s.antennas == 0 {
                return bad(format!("station {} has no antennas", s.id));
            }
        }
        for (a, b) in &self.hidden_pairs {
            if !ids.contains(a) || !ids.contains(b) || a == b {
                return bad(format!("hidden pair {a}:{b} does not name two stations"));
            }
        }
        if self.phy.data_airtime_us == Some(0) {
            return bad("data airtime must be positive".into());
        }
        if self.phy.data_airtime_us.is_none() && !(self.phy.channel_rate_mbps > 0.0) {
            return bad("channel rate must be positive".into());
        }
        if self.phy.body_octets > crate::mac::MAX_BODY_OCTETS {
            return Err(crate::error::MacError::BodyTooLarge(self.phy.body_octets).into());
        }
        if !(self.radius_m > 0.0) {
            return bad("radius must be positive".into());
        }
        if self.ap_antennas == 0 {
            return bad("the AP needs at least one antenna".into());
        }
        self.path_loss.validate()?;
        if self.protocol == Protocol::Htfa {
            let h = &self.htfa;
            if h.m == 0 {
                return bad("HTFA needs at least one sub-channel".into());
            }
            if !(h.guard_fraction >= 0.0) || h.guard_fraction * (h.m as f64 - 1.0) >= 1.0 {
                return bad(format!("guard fraction {} leaves no usable spectrum", h.guard_fraction));
            }
        }
        if self.protocol == Protocol::Era && !(self.era.ll_threshold > 0.0) {
            return bad("ERA LL threshold must be positive".into());
        }
        if matches!(self.protocol, Protocol::Era | Protocol::Prs) && self.phy.sa_payload_us == 0 {
            return bad("trigger-frame payload duration must be positive".into());
        }
        Ok(())
    }

    /// Stations with access modes resolved for PRS distributions.
    pub fn resolved_stations(&self) -> Vec<Station> {
        let mut st = self.stations.clone();
        if let (Protocol::Prs, Some(d)) = (self.protocol, self.prs.distribution) {
            let half = st.len().div_ceil(2);
            for (k, s) in st.iter_mut().enumerate() {
                s.mode = match d {
                    PrsDistribution::Sa => AccessMode::Sa,
                    PrsDistribution::Ra => AccessMode::Ra,
                    PrsDistribution::Hybrid if k < half => AccessMode::Sa,
                    PrsDistribution::Hybrid => AccessMode::Ra,
                };
            }
        }
        st
    }
}
