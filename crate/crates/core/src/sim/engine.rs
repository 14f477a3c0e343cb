use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{CohortPolicy, Handshake, PhyParams, Protocol, SimConfig};
use super::event::EventQueue;
use super::metrics::{
    collect_metrics, SimMetrics, StationCounters, ACK_OCTETS, CTS_OCTETS, MAC_OVERHEAD_OCTETS,
    RTS_OCTETS, TF_OCTETS,
};
use super::sa::{run_sa_cycle, tf_cycle_duration, Link, SaContext};
use crate::channel::overall_indoor_pl;
use crate::error::SimError;
use crate::mac::{backoff_draw, next_stage, round_us, BackoffState, Outcome, TimingParams};
use crate::ru::{RuLayout, SRU_TONES};
use crate::sched::{
    era_assign, era_classify, htfa_distribute, prs_initial_with, prs_place, prs_revised,
    prs_schedule, AccessMode, EraQueues, LoadClass, ScheduleAssignment, Station, StationId,
};

/// Mixed into the seed so node placement and backoff draws use separate
/// streams.
const GEOMETRY_STREAM: u64 = 0x9E37_79B9_7F4A_7C15;
const MIN_DISTANCE_M: f64 = 1.0;

/// Channel occupancy of DCF exchanges, shared by the simulator and the
/// model comparisons so both use the same arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DcfAirtimes {
    pub data_us: u64,
    pub ack_us: u64,
    pub rts_us: u64,
    pub cts_us: u64,
    pub sifs_us: u64,
    pub difs_us: u64,
    pub eifs_us: u64,
    pub slot_us: u64,
    pub delta_us: u64,
}

impl DcfAirtimes {
    /// Success occupancy, ending with the DIFS that precedes the next
    /// backoff slot.
    pub fn t_success(&self, handshake: Handshake) -> u64 {
        let f = |x: u64| x + self.delta_us;
        let basic = f(self.data_us) + self.sifs_us + f(self.ack_us) + self.difs_us;
        match handshake {
            Handshake::TwoWay => basic,
            _ => f(self.rts_us) + self.sifs_us + f(self.cts_us) + self.sifs_us + basic,
        }
    }

    /// Collision occupancy: the longest colliding frame plus EIFS.
    pub fn t_collision(&self, handshake: Handshake) -> u64 {
        match handshake {
            Handshake::TwoWay => self.data_us + self.delta_us + self.eifs_us,
            _ => self.rts_us + self.delta_us + self.eifs_us,
        }
    }
}

pub fn dcf_airtimes(timing: &TimingParams, phy: &PhyParams, data_us: u64) -> DcfAirtimes {
    DcfAirtimes {
        data_us,
        ack_us: timing.ack_time_us,
        rts_us: phy.rts_us,
        cts_us: phy.cts_us,
        sifs_us: timing.sifs_us,
        difs_us: timing.difs(),
        eifs_us: timing.eifs(),
        slot_us: timing.slot_us,
        delta_us: phy.delta_us,
    }
}

/// MPDU size in bits: body plus MAC overhead.
pub fn mpdu_bits(phy: &PhyParams) -> u64 {
    (phy.body_octets as u64 + MAC_OVERHEAD_OCTETS) * 8
}

/// Full-channel data airtime for the configured frame.
pub fn full_channel_airtime(phy: &PhyParams) -> u64 {
    phy.data_airtime_us
        .unwrap_or_else(|| round_us(mpdu_bits(phy) as f64 / phy.channel_rate_mbps) + phy.phy_header_us)
}

/// Airtime of the same frame on one of `m` equal sub-channels, with
/// `guard` of the band lost per internal boundary.
pub fn subchannel_airtime(full_us: u64, m: usize, guard: f64) -> u64 {
    let usable = 1.0 - guard * (m as f64 - 1.0);
    round_us(full_us as f64 * m as f64 / usable)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TxKind {
    Rts,
    Cts,
    Data,
    Ack,
}

impl TxKind {
    pub fn name(self) -> &'static str {
        match self {
            TxKind::Rts => "RTS",
            TxKind::Cts => "CTS",
            TxKind::Data => "DATA",
            TxKind::Ack => "ACK",
        }
    }
}

/// A finished transmission on a contended sub-channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TxRecord {
    pub start: u64,
    pub end: u64,
    pub subchannel: usize,
    /// `None` for frames sent by the AP.
    pub station: Option<StationId>,
    pub kind: TxKind,
    /// False when the frame overlapped another one at the AP.
    pub ok: bool,
}

#[derive(Debug, Clone)]
struct Tx {
    id: u64,
    src: Option<usize>,
    kind: TxKind,
    target: usize,
    start: u64,
    corrupted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    /// Waiting for the medium to go idle.
    Idle,
    /// IFS and countdown in progress; `expiry` is armed.
    Waiting,
    Transmitting,
    AwaitCts,
    AwaitAck,
    /// Not contending (dedicated channel or scheduled only).
    Off,
}

#[derive(Debug, Clone)]
struct Dcf {
    backoff: BackoffState,
    phase: Phase,
    epoch: u64,
    audible: u32,
    nav_until: u64,
    garble: bool,
    use_eifs: bool,
    own_fail: bool,
    count_start: u64,
    expiry: u64,
    busy_since: u64,
}

impl Default for Dcf {
    fn default() -> Self {
        Dcf {
            backoff: BackoffState::default(),
            phase: Phase::Off,
            epoch: 0,
            audible: 0,
            nav_until: 0,
            garble: false,
            use_eifs: false,
            own_fail: false,
            count_start: 0,
            expiry: 0,
            busy_since: 0,
        }
    }
}

#[derive(Debug, Clone)]
struct Sta {
    c: StationCounters,
    outstanding: u64,
    outstanding_bits: u64,
    frame_bits: u64,
    body_bits: u64,
    chan: Option<usize>,
    data_us: u64,
    dcf: Dcf,
    owned: Vec<usize>,
    rot: usize,
    link: Link,
}

#[derive(Debug, Clone)]
struct Chan {
    label: String,
    members: Vec<usize>,
    handshake: Handshake,
    active: Vec<Tx>,
    ap_engaged: Option<usize>,
}

#[derive(Debug, Clone)]
enum Ev {
    Expiry { sta: usize, epoch: u64 },
    NavEnd { sta: usize },
    TxEnd { chan: usize, tx: u64 },
    ApTx { chan: usize, kind: TxKind, target: usize },
    StaData { sta: usize },
    DedStart { sta: usize, chan: usize },
    DedDone { sta: usize, chan: usize },
    TfStart,
    TfEnd,
}

#[derive(Debug, Clone)]
enum Cohorts {
    Fixed(ScheduleAssignment),
    Rotating {
        order: Vec<(StationId, f64)>,
        s: usize,
        next: usize,
        cache: HashMap<usize, (ScheduleAssignment, usize)>,
    },
}

#[derive(Debug, Clone)]
enum SaKind {
    Era { queues: EraQueues, classes: HashMap<StationId, LoadClass> },
    Prs(Cohorts),
}

#[derive(Debug, Clone)]
struct SaZone {
    kind: SaKind,
    layout: RuLayout,
    cycle_us: u64,
    links: BTreeMap<StationId, Link>,
    pending: Vec<(usize, u64)>,
}

/// The discrete-event engine. One instance runs one configuration.
pub(crate) struct Engine {
    cfg: SimConfig,
    now: u64,
    queue: EventQueue<Ev>,
    rng: ChaCha8Rng,
    sta: Vec<Sta>,
    index: HashMap<StationId, usize>,
    hidden: Vec<Vec<bool>>,
    chans: Vec<Chan>,
    sa: Option<SaZone>,
    next_tx: u64,
    scripted: Vec<VecDeque<u64>>,
    trace: Option<String>,
    log: Option<Vec<TxRecord>>,
    events: u64,
}

fn place_stations(cfg: &SimConfig) -> Result<Vec<f64>, SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ GEOMETRY_STREAM);
    cfg.stations
        .iter()
        .map(|_| {
            let u: f64 = rng.random();
            let d = (cfg.radius_m * u.sqrt()).max(MIN_DISTANCE_M.min(cfg.radius_m));
            Ok(overall_indoor_pl(d, &cfg.path_loss)?)
        })
        .collect()
}

fn resolve_handshake(h: Handshake, members: usize) -> Handshake {
    match h {
        Handshake::Auto if members >= 2 => Handshake::FourWay,
        Handshake::Auto => Handshake::TwoWay,
        other => other,
    }
}

impl Engine {
    pub(crate) fn new(cfg: &SimConfig, scripted: Vec<VecDeque<u64>>, trace: bool, log: bool) -> Result<Self, SimError> {
        cfg.validate()?;
        let stations = cfg.resolved_stations();
        let losses = place_stations(cfg)?;
        let frame_bits = mpdu_bits(&cfg.phy);
        let body_bits = cfg.phy.body_octets as u64 * 8;
        let sta: Vec<Sta> = stations
            .iter()
            .zip(&losses)
            .map(|(s, &loss_db)| Sta {
                c: StationCounters::new(s.id.clone(), s.load),
                outstanding: 0,
                outstanding_bits: 0,
                frame_bits,
                body_bits,
                chan: None,
                data_us: 0,
                dcf: Dcf::default(),
                owned: Vec::new(),
                rot: 0,
                link: Link { loss_db, antennas: s.antennas },
            })
            .collect();
        let index: HashMap<StationId, usize> =
            stations.iter().enumerate().map(|(k, s)| (s.id.clone(), k)).collect();
        let n = stations.len();
        let mut hidden = vec![vec![false; n]; n];
        for (a, b) in &cfg.hidden_pairs {
            let (i, j) = (index[a], index[b]);
            hidden[i][j] = true;
            hidden[j][i] = true;
        }
        let mut scripted = scripted;
        scripted.resize(n, VecDeque::new());
        let mut e = Engine {
            cfg: cfg.clone(),
            now: 0,
            queue: EventQueue::new(),
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            sta,
            index,
            hidden,
            chans: Vec::new(),
            sa: None,
            next_tx: 0,
            scripted,
            trace: trace.then(|| String::from("tick\tkind\tsubchannel\tstation\tdetail\n")),
            log: log.then(Vec::new),
            events: 0,
        };
        match cfg.protocol {
            Protocol::LegacyDcf => {
                let all: Vec<usize> = (0..n).collect();
                let d = full_channel_airtime(&cfg.phy);
                e.add_dcf_channel("0".into(), all, |_| d);
            }
            Protocol::Htfa => e.setup_htfa(&stations)?,
            Protocol::Era => e.setup_era(&stations)?,
            Protocol::Prs => e.setup_prs(&stations)?,
        }
        Ok(e)
    }

    fn add_dcf_channel(&mut self, label: String, members: Vec<usize>, airtime: impl Fn(&Sta) -> u64) {
        let c = self.chans.len();
        let handshake = resolve_handshake(self.cfg.handshake, members.len());
        for &i in &members {
            let d = airtime(&self.sta[i]);
            let s = &mut self.sta[i];
            s.chan = Some(c);
            s.data_us = d;
            s.dcf.phase = Phase::Idle;
        }
        self.chans.push(Chan { label, members: members.clone(), handshake, active: Vec::new(), ap_engaged: None });
        for i in members {
            self.offer(i);
            let k = self.draw(i);
            self.sta[i].dcf.backoff.counter = k;
            self.try_resume(i);
        }
    }

    fn setup_htfa(&mut self, stations: &[Station]) -> Result<(), SimError> {
        let h = self.cfg.htfa;
        let state = htfa_distribute(stations, h.m)?;
        let d = subchannel_airtime(full_channel_airtime(&self.cfg.phy), h.m, h.guard_fraction);
        for (c, members) in state.channels().iter().enumerate() {
            let idx: Vec<usize> = members.iter().map(|id| self.index[id]).collect();
            if idx.len() >= 2 {
                self.add_dcf_channel(c.to_string(), idx, |_| d);
            } else if let Some(&i) = idx.first() {
                self.sta[i].owned.push(c);
                self.sta[i].data_us = d;
            }
        }
        for i in 0..self.sta.len() {
            let owned = self.sta[i].owned.clone();
            if owned.is_empty() {
                continue;
            }
            let starts = if h.multi_channel_tx { owned } else { vec![owned[0]] };
            for c in starts {
                self.queue.schedule(0, Ev::DedStart { sta: i, chan: c });
            }
        }
        Ok(())
    }

    fn sa_zone(&self, kind: SaKind, layout: RuLayout, members: impl Iterator<Item = usize>) -> SaZone {
        let p = &self.cfg.phy;
        let t = &self.cfg.timing;
        SaZone {
            kind,
            layout,
            cycle_us: tf_cycle_duration(p.phy_header_us, p.tf_us, p.sa_payload_us, t.ack_time_us, t.sifs_us, p.delta_us),
            links: members.map(|i| (self.sta[i].c.id.clone(), self.sta[i].link)).collect(),
            pending: Vec::new(),
        }
    }

    fn setup_era(&mut self, stations: &[Station]) -> Result<(), SimError> {
        let classes = era_classify(stations, self.cfg.era.ll_threshold)?;
        let queues = EraQueues::from_classified(stations, &classes);
        let classes = stations.iter().map(|s| s.id.clone()).zip(classes).collect();
        let layout = RuLayout::binary(self.cfg.bandwidth);
        self.sa = Some(self.sa_zone(SaKind::Era { queues, classes }, layout, 0..stations.len()));
        self.queue.schedule(0, Ev::TfStart);
        Ok(())
    }

    fn setup_prs(&mut self, stations: &[Station]) -> Result<(), SimError> {
        let layout = RuLayout::standard(self.cfg.bandwidth);
        let m = layout.line_len();
        let sa: Vec<(StationId, f64)> =
            stations.iter().filter(|s| s.mode == AccessMode::Sa).map(|s| (s.id.clone(), s.load)).collect();
        let ra_loads: Vec<f64> = stations.iter().filter(|s| s.mode == AccessMode::Ra).map(|s| s.load).collect();
        let sa_loads: Vec<f64> = sa.iter().map(|x| x.1).collect();
        let (s, _t) = prs_initial_with(&sa_loads, &ra_loads, m, self.cfg.prs.rounding)?;
        let mut contenders: Vec<usize> = stations
            .iter()
            .enumerate()
            .filter(|(_, st)| st.mode == AccessMode::Ra)
            .map(|(k, _)| k)
            .collect();
        let (cohorts, v) = match self.cfg.prs.policy {
            CohortPolicy::Literal => {
                let plan = prs_schedule(stations, &layout, self.cfg.prs.rounding)?;
                contenders.extend(plan.revision.migrated.iter().map(|id| self.index[id]));
                let v = plan.revision.v;
                (Cohorts::Fixed(plan.assignment), v)
            }
            CohortPolicy::Rotating if s == 0 => {
                contenders.extend(sa.iter().map(|(id, _)| self.index[id]));
                (Cohorts::Fixed(ScheduleAssignment::default()), m)
            }
            CohortPolicy::Rotating => {
                let v = m - s.min(m - 1);
                (Cohorts::Rotating { order: sa.clone(), s: s.min(m - 1), next: 0, cache: HashMap::new() }, v)
            }
        };
        contenders.sort_unstable();
        let scheduled: Vec<usize> = sa.iter().map(|(id, _)| self.index[id]).collect();
        let has_grants = match &cohorts {
            Cohorts::Fixed(a) => !a.grants.is_empty(),
            Cohorts::Rotating { order, .. } => !order.is_empty(),
        };
        if has_grants {
            self.sa = Some(self.sa_zone(SaKind::Prs(cohorts), layout, scheduled.into_iter()));
            self.queue.schedule(0, Ev::TfStart);
        }
        // the RA zone acts as one contended channel of `v` SRUs
        let tones = (v as u32) * SRU_TONES;
        let (rates, ap, header) = (self.cfg.rates.clone(), self.cfg.ap_antennas, self.cfg.phy.phy_header_us);
        let reachable: Vec<usize> = contenders
            .into_iter()
            .filter(|&i| rates.ru_rate_mbps(self.sta[i].link.loss_db, tones, ap, self.sta[i].link.antennas) > 0.0)
            .collect();
        if !reachable.is_empty() {
            self.add_dcf_channel("ra".into(), reachable, |s| {
                let r = rates.ru_rate_mbps(s.link.loss_db, tones, ap, s.link.antennas);
                round_us(s.frame_bits as f64 / r) + header
            });
        }
        Ok(())
    }

    // ---- bookkeeping ----

    fn trace_line(&mut self, kind: &str, sub: &str, sta: Option<usize>, detail: impl FnOnce() -> String) {
        if self.trace.is_some() {
            let who = sta.map_or("AP".to_string(), |i| self.sta[i].c.id.to_string());
            let line = format!("{}\t{}\t{}\t{}\t{}\n", self.now, kind, sub, who, detail());
            if let Some(t) = self.trace.as_mut() {
                t.push_str(&line);
            }
        }
    }

    fn offer(&mut self, i: usize) {
        let s = &mut self.sta[i];
        s.c.offered_frames += 1;
        s.c.offered_bits += s.frame_bits;
        s.outstanding += 1;
        s.outstanding_bits += s.frame_bits;
    }

    fn deliver(&mut self, i: usize) {
        let s = &mut self.sta[i];
        s.c.delivered_frames += 1;
        s.c.delivered_bits += s.frame_bits;
        s.c.delivered_body_bits += s.body_bits;
        s.outstanding -= 1;
        s.outstanding_bits -= s.frame_bits;
    }

    fn draw(&mut self, i: usize) -> u64 {
        if let Some(k) = self.scripted[i].pop_front() {
            return k;
        }
        backoff_draw(&self.sta[i].dcf.backoff, &self.cfg.timing, &mut self.rng)
    }

    // ---- carrier sense ----

    fn hears(&self, listener: usize, src: Option<usize>) -> bool {
        match src {
            None => true,
            Some(j) => j != listener && !self.hidden[listener][j],
        }
    }

    fn medium_idle(&self, i: usize) -> bool {
        let d = &self.sta[i].dcf;
        d.audible == 0 && self.now >= d.nav_until
    }

    fn try_resume(&mut self, i: usize) {
        if self.sta[i].dcf.phase == Phase::Idle && self.medium_idle(i) {
            self.begin_wait(i);
        }
    }

    fn begin_wait(&mut self, i: usize) {
        let t = self.cfg.timing;
        let now = self.now;
        let d = &mut self.sta[i].dcf;
        let ifs = if d.use_eifs || d.own_fail { t.eifs() } else { t.difs() };
        d.own_fail = false;
        d.count_start = now + ifs;
        d.expiry = d.count_start + d.backoff.counter * t.slot_us;
        d.epoch += 1;
        d.phase = Phase::Waiting;
        let (expiry, epoch) = (d.expiry, d.epoch);
        self.queue.schedule(expiry, Ev::Expiry { sta: i, epoch });
    }

    fn busy_onset(&mut self, i: usize) {
        let now = self.now;
        let slot = self.cfg.timing.slot_us;
        let freeze = self.cfg.freeze_on_busy;
        let d = &mut self.sta[i].dcf;
        d.busy_since = now;
        // an expiry due this very tick still fires and collides
        if d.phase != Phase::Waiting || !freeze || now == d.expiry {
            return;
        }
        if now > d.count_start {
            let elapsed = (now - d.count_start) / slot;
            d.backoff.counter -= elapsed.min(d.backoff.counter);
        }
        d.epoch += 1;
        d.phase = Phase::Idle;
    }

    fn audible_inc(&mut self, i: usize) {
        let d = &mut self.sta[i].dcf;
        if d.audible > 0 {
            d.garble = true;
        }
        d.audible += 1;
        if d.audible == 1 {
            self.busy_onset(i);
        }
    }

    fn audible_dec(&mut self, i: usize) {
        let d = &mut self.sta[i].dcf;
        d.audible -= 1;
        if d.audible == 0 {
            d.use_eifs = d.garble;
            d.garble = false;
            self.try_resume(i);
        }
    }

    // ---- transmissions ----

    fn start_tx(&mut self, c: usize, src: Option<usize>, kind: TxKind, target: usize, dur: u64) {
        let id = self.next_tx;
        self.next_tx += 1;
        let now = self.now;
        let ch = &mut self.chans[c];
        // the AP hears every station and cannot receive while it sends
        let mut corrupted = false;
        for tx in ch.active.iter_mut() {
            if tx.src.is_some() {
                tx.corrupted = true;
            }
            if src.is_some() {
                corrupted = true;
            }
        }
        ch.active.push(Tx { id, src, kind, target, start: now, corrupted });
        self.queue.schedule(now + dur, Ev::TxEnd { chan: c, tx: id });
        let label = self.chans[c].label.clone();
        self.trace_line("tx_start", &label, src, || format!("{} dur={dur}", kind.name()));
        for k in 0..self.chans[c].members.len() {
            let i = self.chans[c].members[k];
            if self.hears(i, src) {
                self.audible_inc(i);
            }
        }
    }

    fn on_expiry(&mut self, i: usize, epoch: u64) {
        let d = &self.sta[i].dcf;
        if d.epoch != epoch || d.phase != Phase::Waiting {
            return;
        }
        let sensed_earlier = d.audible > 0 && d.busy_since < self.now;
        if !self.cfg.freeze_on_busy && (sensed_earlier || self.now < d.nav_until) {
            // without freezing the counter has run out during the busy
            // period; send as soon as the medium is idle again
            let d = &mut self.sta[i].dcf;
            d.backoff.counter = 0;
            d.phase = Phase::Idle;
            return;
        }
        let c = self.sta[i].chan.expect("contending station has a channel");
        let p = self.cfg.phy.clone();
        let s = &mut self.sta[i];
        s.dcf.backoff.counter = 0;
        s.dcf.phase = Phase::Transmitting;
        s.c.attempts += 1;
        let data = s.data_us;
        if self.chans[c].handshake == Handshake::FourWay {
            self.sta[i].c.control_bits += RTS_OCTETS * 8;
            self.start_tx(c, Some(i), TxKind::Rts, i, p.rts_us + p.delta_us);
        } else {
            self.start_tx(c, Some(i), TxKind::Data, i, data + p.delta_us);
        }
    }

    fn on_tx_end(&mut self, c: usize, id: u64) {
        let pos = self.chans[c].active.iter().position(|t| t.id == id).expect("active transmission");
        let tx = self.chans[c].active.remove(pos);
        let sifs = self.cfg.timing.sifs_us;
        let label = self.chans[c].label.clone();
        if let Some(log) = self.log.as_mut() {
            log.push(TxRecord {
                start: tx.start,
                end: self.now,
                subchannel: c,
                station: tx.src.map(|i| self.sta[i].c.id.clone()),
                kind: tx.kind,
                ok: !tx.corrupted,
            });
        }
        self.trace_line("tx_end", &label, tx.src, || {
            format!("{} {}", tx.kind.name(), if tx.corrupted { "garbled" } else { "ok" })
        });
        match (tx.src, tx.kind) {
            (Some(j), TxKind::Rts) => {
                if !tx.corrupted && self.chans[c].ap_engaged.is_none() {
                    self.chans[c].ap_engaged = Some(j);
                    self.sta[j].dcf.phase = Phase::AwaitCts;
                    self.queue.schedule(self.now + sifs, Ev::ApTx { chan: c, kind: TxKind::Cts, target: j });
                } else {
                    self.fail(j);
                }
            }
            (Some(j), TxKind::Data) => {
                let engaged = self.chans[c].ap_engaged;
                if !tx.corrupted && engaged.is_none_or(|e| e == j) {
                    self.chans[c].ap_engaged = Some(j);
                    self.sta[j].dcf.phase = Phase::AwaitAck;
                    self.queue.schedule(self.now + sifs, Ev::ApTx { chan: c, kind: TxKind::Ack, target: j });
                } else {
                    if engaged == Some(j) {
                        self.chans[c].ap_engaged = None;
                    }
                    self.fail(j);
                }
            }
            (None, TxKind::Cts) => {
                let j = tx.target;
                let p = &self.cfg.phy;
                let nav = self.now + sifs + self.sta[j].data_us + p.delta_us + sifs + self.cfg.timing.ack_time_us + p.delta_us;
                for k in 0..self.chans[c].members.len() {
                    let i = self.chans[c].members[k];
                    if i != j {
                        let d = &mut self.sta[i].dcf;
                        d.nav_until = d.nav_until.max(nav);
                        self.queue.schedule(nav, Ev::NavEnd { sta: i });
                    }
                }
                self.queue.schedule(self.now + sifs, Ev::StaData { sta: j });
            }
            (None, TxKind::Ack) => {
                self.chans[c].ap_engaged = None;
                self.succeed(tx.target);
            }
            (src, kind) => unreachable!("{src:?} sent {kind:?}"),
        }
        for k in 0..self.chans[c].members.len() {
            let i = self.chans[c].members[k];
            if self.hears(i, tx.src) {
                self.audible_dec(i);
            }
        }
    }

    fn fail(&mut self, j: usize) {
        let t = self.cfg.timing;
        let label = self.sta[j].chan.map_or(String::new(), |c| self.chans[c].label.clone());
        self.sta[j].c.collisions += 1;
        match next_stage(self.sta[j].dcf.backoff, Outcome::Collision, &t) {
            Ok(next) => {
                self.sta[j].dcf.backoff = next;
                self.sta[j].c.retransmissions += 1;
                self.trace_line("collision", &label, Some(j), || format!("stage={}", next.stage));
            }
            Err(_) => {
                let s = &mut self.sta[j];
                s.c.dropped_frames += 1;
                s.c.dropped_bits += s.frame_bits;
                s.outstanding -= 1;
                s.outstanding_bits -= s.frame_bits;
                s.dcf.backoff = BackoffState::default();
                self.trace_line("drop", &label, Some(j), || format!("retries>{}", t.retry_limit));
                self.offer(j);
            }
        }
        let k = self.draw(j);
        let d = &mut self.sta[j].dcf;
        d.backoff.counter = k;
        d.phase = Phase::Idle;
        d.own_fail = true;
        self.try_resume(j);
    }

    fn succeed(&mut self, j: usize) {
        let label = self.sta[j].chan.map_or(String::new(), |c| self.chans[c].label.clone());
        self.deliver(j);
        let bits = self.sta[j].frame_bits;
        self.trace_line("success", &label, Some(j), || format!("bits={bits}"));
        self.sta[j].dcf.backoff = BackoffState::default();
        self.offer(j);
        let k = self.draw(j);
        let d = &mut self.sta[j].dcf;
        d.backoff.counter = k;
        d.phase = Phase::Idle;
    }

    // ---- dedicated sub-channels ----

    fn on_ded_start(&mut self, i: usize, c: usize) {
        let t = self.cfg.timing;
        let delta = self.cfg.phy.delta_us;
        self.offer(i);
        let s = &mut self.sta[i];
        s.c.attempts += 1;
        let dur = s.data_us + delta + t.sifs_us + t.ack_time_us + delta;
        self.trace_line("tx_start", &c.to_string(), Some(i), || format!("DATA dedicated dur={dur}"));
        self.queue.schedule(self.now + dur, Ev::DedDone { sta: i, chan: c });
    }

    fn on_ded_done(&mut self, i: usize, c: usize) {
        self.deliver(i);
        self.sta[i].c.control_bits += ACK_OCTETS * 8;
        let bits = self.sta[i].frame_bits;
        self.trace_line("success", &c.to_string(), Some(i), || format!("bits={bits}"));
        let next = if self.cfg.htfa.multi_channel_tx {
            c
        } else {
            let s = &mut self.sta[i];
            s.rot = (s.rot + 1) % s.owned.len();
            s.owned[s.rot]
        };
        self.queue.schedule(self.now + self.cfg.timing.sifs_us, Ev::DedStart { sta: i, chan: next });
    }

    // ---- trigger-frame cycles ----

    fn next_assignment(&mut self) -> Result<ScheduleAssignment, SimError> {
        let sa = self.sa.as_mut().expect("scheduled zone");
        match &mut sa.kind {
            SaKind::Era { queues, classes } => {
                let a = era_assign(queues, &sa.layout)?;
                // served stations rejoin the back of their class queue
                let mut seen = Vec::new();
                for g in &a.grants {
                    if !seen.contains(&&g.station) {
                        seen.push(&g.station);
                        queues.push(g.station.clone(), classes[&g.station]);
                    }
                }
                Ok(a)
            }
            SaKind::Prs(Cohorts::Fixed(a)) => Ok(a.clone()),
            SaKind::Prs(Cohorts::Rotating { order, s, next, cache }) => {
                let m = sa.layout.line_len();
                if !cache.contains_key(next) {
                    let n = order.len();
                    let mut best: Option<Vec<(StationId, usize)>> = None;
                    for k in 1..=n {
                        let prefix: Vec<(StationId, f64)> = (0..k).map(|j| order[(*next + j) % n].clone()).collect();
                        let rev = prs_revised(&prefix, *s, m)?;
                        if rev.r.contains(&0) {
                            break;
                        }
                        best = Some(prefix.into_iter().map(|(id, _)| id).zip(rev.r).collect());
                    }
                    let served = best.as_ref().map_or(1, |b| b.len());
                    let a = prs_place(best.as_deref().unwrap_or(&[]), &sa.layout)?;
                    cache.insert(*next, (a, (*next + served) % n));
                }
                let (a, after) = cache[next].clone();
                *next = after;
                Ok(a)
            }
        }
    }

    fn on_tf_start(&mut self) -> Result<(), SimError> {
        let a = self.next_assignment()?;
        let sa = self.sa.as_ref().expect("scheduled zone");
        let ctx = SaContext {
            rates: &self.cfg.rates,
            ap_antennas: self.cfg.ap_antennas,
            payload_us: self.cfg.phy.sa_payload_us,
            links: &sa.links,
        };
        let bits = run_sa_cycle(&a, &ctx)?;
        let cycle = sa.cycle_us;
        let k = bits.len().max(1) as u64;
        let mut pending = Vec::with_capacity(bits.len());
        for (n, (id, b)) in bits.into_iter().enumerate() {
            let i = self.index[&id];
            let s = &mut self.sta[i];
            s.c.offered_frames += 1;
            s.c.offered_bits += b;
            s.outstanding += 1;
            s.outstanding_bits += b;
            s.c.attempts += 1;
            let tf_share = TF_OCTETS * 8 / k + if n == 0 { TF_OCTETS * 8 % k } else { 0 };
            s.c.control_bits += ACK_OCTETS * 8 + tf_share;
            pending.push((i, b));
        }
        self.trace_line("tf_start", "sa", None, || {
            let mut d = String::new();
            for g in &a.grants {
                let _ = write!(d, "{}:{} ", g.station, g.ru);
            }
            d.trim_end().to_string()
        });
        self.sa.as_mut().expect("scheduled zone").pending = pending;
        self.queue.schedule(self.now + cycle, Ev::TfEnd);
        Ok(())
    }

    fn on_tf_end(&mut self) {
        let pending = std::mem::take(&mut self.sa.as_mut().expect("scheduled zone").pending);
        let mut total = 0;
        for (i, b) in pending {
            let s = &mut self.sta[i];
            s.c.delivered_frames += 1;
            s.c.delivered_bits += b;
            s.c.delivered_body_bits += b.saturating_sub(MAC_OVERHEAD_OCTETS * 8);
            s.outstanding -= 1;
            s.outstanding_bits -= b;
            total += b;
        }
        self.trace_line("tf_end", "sa", None, || format!("bits={total}"));
        self.queue.schedule(self.now, Ev::TfStart);
    }

    // ---- driver ----

    pub(crate) fn now(&self) -> u64 {
        self.now
    }

    /// Processes every event scheduled at or before `limit`.
    pub(crate) fn run_until(&mut self, limit: u64) -> Result<(), SimError> {
        while let Some(t) = self.queue.peek_time() {
            if t > limit {
                break;
            }
            let ev = self.queue.pop().expect("peeked");
            self.now = ev.time;
            self.events += 1;
            match ev.kind {
                Ev::Expiry { sta, epoch } => self.on_expiry(sta, epoch),
                Ev::NavEnd { sta } => self.try_resume(sta),
                Ev::TxEnd { chan, tx } => self.on_tx_end(chan, tx),
                Ev::ApTx { chan, kind, target } => {
                    let p = &self.cfg.phy;
                    let (dur, octets) = match kind {
                        TxKind::Cts => (p.cts_us, CTS_OCTETS),
                        _ => (self.cfg.timing.ack_time_us, ACK_OCTETS),
                    };
                    let dur = dur + p.delta_us;
                    self.sta[target].c.control_bits += octets * 8;
                    self.start_tx(chan, None, kind, target, dur);
                }
                Ev::StaData { sta } => {
                    let c = self.sta[sta].chan.expect("contending station has a channel");
                    self.sta[sta].dcf.phase = Phase::Transmitting;
                    let dur = self.sta[sta].data_us + self.cfg.phy.delta_us;
                    self.start_tx(c, Some(sta), TxKind::Data, sta, dur);
                }
                Ev::DedStart { sta, chan } => self.on_ded_start(sta, chan),
                Ev::DedDone { sta, chan } => self.on_ded_done(sta, chan),
                Ev::TfStart => self.on_tf_start()?,
                Ev::TfEnd => self.on_tf_end(),
            }
        }
        self.now = self.now.max(limit);
        Ok(())
    }

    pub(crate) fn counters(&self) -> Vec<StationCounters> {
        self.sta
            .iter()
            .map(|s| {
                let mut c = s.c.clone();
                c.in_flight_frames = s.outstanding;
                c.in_flight_bits = s.outstanding_bits;
                c
            })
            .collect()
    }

    pub(crate) fn take_log(&mut self) -> Vec<TxRecord> {
        self.log.as_mut().map(std::mem::take).unwrap_or_default()
    }

    pub(crate) fn metrics(&self) -> SimMetrics {
        let mut m = collect_metrics(&self.counters(), self.cfg.sim_duration_us);
        m.events = self.events;
        m
    }

    pub(crate) fn take_trace(&mut self) -> Option<String> {
        self.trace.take()
    }
}

/// Runs a configuration to completion.
pub fn run(config: &SimConfig) -> Result<SimMetrics, SimError> {
    let mut e = Engine::new(config, Vec::new(), false, false)?;
    e.run_until(config.sim_duration_us)?;
    Ok(e.metrics())
}

/// Like [`run`], also returning a tab-separated event trace.
pub fn run_traced(config: &SimConfig) -> Result<(SimMetrics, String), SimError> {
    let mut e = Engine::new(config, Vec::new(), true, false)?;
    e.run_until(config.sim_duration_us)?;
    let trace = e.take_trace().unwrap_or_default();
    Ok((e.metrics(), trace))
}

/// A single contended sub-channel that can be stepped in time. Backoff
/// draws can be scripted per station; once a script runs out, draws come
/// from the seeded generator.
pub struct SubchannelState {
    engine: Engine,
}

impl SubchannelState {
    /// All stations of `config` share one DCF channel, whatever the
    /// configured protocol.
    pub fn new(config: &SimConfig, draws: Vec<Vec<u64>>) -> Result<Self, SimError> {
        let mut cfg = config.clone();
        cfg.protocol = Protocol::LegacyDcf;
        let scripted = draws.into_iter().map(VecDeque::from).collect();
        Ok(SubchannelState { engine: Engine::new(&cfg, scripted, false, true)? })
    }

    pub fn now(&self) -> u64 {
        self.engine.now()
    }

    pub fn counters(&self) -> Vec<StationCounters> {
        self.engine.counters()
    }
}

/// Advances the sub-channel by `ticks` microseconds and returns the frames
/// that ended in that window.
pub fn advance_subchannel(state: &mut SubchannelState, ticks: u64) -> Result<Vec<TxRecord>, SimError> {
    let limit = state.engine.now() + ticks;
    state.engine.run_until(limit)?;
    Ok(state.engine.take_log())
}
