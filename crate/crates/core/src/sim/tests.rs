use super::*;
use crate::mac::TimingParams;
use crate::sched::StationId;

fn timing() -> TimingParams {
    TimingParams::new(16, 9, 44, 16, 6).unwrap()
}

fn basic(n: usize, seed: u64) -> SimConfig {
    let mut c = SimConfig::new(Protocol::LegacyDcf, n, timing(), seed);
    c.phy.data_airtime_us = Some(200);
    c.phy.delta_us = 0;
    c.handshake = Handshake::TwoWay;
    c.sim_duration_us = 200_000;
    c
}

fn data_starts(log: &[TxRecord], who: &str) -> Vec<u64> {
    log.iter()
        .filter(|r| r.kind == TxKind::Data && r.station.as_ref().map(|s| s.as_str()) == Some(who))
        .map(|r| r.start)
        .collect()
}

#[test]
fn frozen_counter_resumes_after_exchange() {
    let mut st = SubchannelState::new(&basic(2, 1), vec![vec![5, 9], vec![7]]).unwrap();
    let log = advance_subchannel(&mut st, 1000).unwrap();
    let difs = 34;
    let a = data_starts(&log, "S1");
    let b = data_starts(&log, "S2");
    assert_eq!(a[0], difs + 5 * 9);
    let ack_end = a[0] + 200 + 16 + 44;
    // two slots were left on the second station's counter
    assert_eq!(b[0], ack_end + difs + 2 * 9);
    assert!(log.iter().all(|r| r.ok));
    assert_eq!(st.now(), 1000);
}

#[test]
fn equal_draws_collide_then_back_off() {
    let mut st = SubchannelState::new(&basic(2, 1), vec![vec![3, 0], vec![3, 5]]).unwrap();
    let log = advance_subchannel(&mut st, 620).unwrap();
    let first: Vec<&TxRecord> = log.iter().filter(|r| r.start == 34 + 27).collect();
    assert_eq!(first.len(), 2);
    assert!(first.iter().all(|r| !r.ok));
    // after EIFS the station that drew 0 goes first and succeeds
    let eifs = timing().eifs();
    let retry = data_starts(&log, "S1")[1];
    assert_eq!(retry, 34 + 27 + 200 + eifs);
    let c = st.counters();
    assert_eq!(c[0].collisions, 1);
    assert_eq!(c[1].collisions, 1);
    assert_eq!(c[0].retransmissions, 1);
}

#[test]
fn lone_station_never_collides() {
    let m = run(&basic(1, 7)).unwrap();
    assert_eq!(m.collisions, 0);
    assert!(m.attempts > 0);
    assert!(m.throughput_mbps > 0.0);
    // an exchange cannot be shorter than DIFS + DATA + SIFS + ACK
    let bits = mpdu_bits(&PhyParams::default()) as f64;
    assert!(m.throughput_mbps <= bits / (34.0 + 200.0 + 16.0 + 44.0) + 1e-9);
}

#[test]
fn runs_are_reproducible() {
    let a = run(&basic(5, 42)).unwrap();
    let b = run(&basic(5, 42)).unwrap();
    let c = run(&basic(5, 43)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.counters, c.counters);
}

#[test]
fn conservation_holds_for_every_protocol() {
    for protocol in [Protocol::LegacyDcf, Protocol::Htfa, Protocol::Era, Protocol::Prs] {
        let mut c = basic(6, 3);
        c.protocol = protocol;
        c.htfa.m = 3;
        c.handshake = Handshake::Auto;
        for (k, s) in c.stations.iter_mut().enumerate() {
            s.load = 1.0 + k as f64;
        }
        let m = run(&c).unwrap();
        assert!(m.counters.iter().all(|s| s.conserved()), "{protocol:?}");
        assert!(m.throughput_mbps > 0.0, "{protocol:?}");
        assert!(m.goodput_mbps <= m.throughput_mbps, "{protocol:?}");
    }
}

#[test]
fn dedicated_subchannels_are_collision_free() {
    for m in [4, 6, 9] {
        let mut c = basic(4, 5);
        c.protocol = Protocol::Htfa;
        c.htfa.m = m;
        let r = run(&c).unwrap();
        assert_eq!(r.collisions, 0);
        assert!(r.attempts > 0);
    }
}

#[test]
fn single_radio_rotation_caps_throughput() {
    let mut c = basic(2, 5);
    c.protocol = Protocol::Htfa;
    c.htfa.m = 2;
    let two = run(&c).unwrap().throughput_mbps;
    c.htfa.m = 4;
    let four = run(&c).unwrap().throughput_mbps;
    c.htfa.multi_channel_tx = true;
    let four_multi = run(&c).unwrap().throughput_mbps;
    assert!(four < two);
    assert!(four_multi > four);
}

#[test]
fn scheduled_access_has_no_retransmissions() {
    let mut c = basic(10, 9);
    c.protocol = Protocol::Prs;
    c.prs.distribution = Some(PrsDistribution::Sa);
    let m = run(&c).unwrap();
    assert_eq!(m.retransmissions, 0);
    assert_eq!(m.collisions, 0);
    assert!(m.per_station.iter().all(|s| s.throughput_mbps > 0.0));
}

#[test]
fn hidden_stations_collide_more() {
    let mut c = basic(4, 11);
    c.handshake = Handshake::TwoWay;
    c.sim_duration_us = 500_000;
    let open = run(&c).unwrap();
    c.hidden_pairs = vec![
        (StationId::new("S1"), StationId::new("S2")),
        (StationId::new("S3"), StationId::new("S4")),
        (StationId::new("S1"), StationId::new("S3")),
    ];
    let hidden = run(&c).unwrap();
    assert!(hidden.collision_prob > open.collision_prob);
}

#[test]
fn no_freeze_variant_runs() {
    let mut c = basic(5, 2);
    c.freeze_on_busy = false;
    let m = run(&c).unwrap();
    assert!(m.counters.iter().all(|s| s.conserved()));
    let frozen = run(&basic(5, 2)).unwrap();
    assert!(m.collision_prob > frozen.collision_prob);
}

#[test]
fn trace_has_five_columns() {
    let mut c = basic(3, 1);
    c.sim_duration_us = 5_000;
    let (_, trace) = run_traced(&c).unwrap();
    let mut lines = trace.lines();
    assert_eq!(lines.next(), Some("tick\tkind\tsubchannel\tstation\tdetail"));
    let mut last = 0;
    for l in lines {
        let cols: Vec<&str> = l.split('\t').collect();
        assert_eq!(cols.len(), 5, "{l}");
        let t: u64 = cols[0].parse().unwrap();
        assert!(t >= last);
        last = t;
    }
}

#[test]
fn airtime_helpers() {
    let t = timing();
    let a = dcf_airtimes(&t, &PhyParams { delta_us: 1, ..PhyParams::default() }, 200);
    assert_eq!(a.t_success(Handshake::TwoWay), 201 + 16 + 45 + 34);
    assert_eq!(a.t_collision(Handshake::TwoWay), 201 + t.eifs());
    assert_eq!(a.t_success(Handshake::FourWay), 53 + 16 + 45 + 16 + 201 + 16 + 45 + 34);
    assert_eq!(a.t_collision(Handshake::FourWay), 53 + t.eifs());
    assert_eq!(subchannel_airtime(2500, 1, 0.1), 2500);
    assert_eq!(subchannel_airtime(2500, 4, 0.0), 10_000);
    assert_eq!(subchannel_airtime(1000, 3, 0.25), 6000);
}

#[test]
fn invalid_configs_are_rejected() {
    let mut c = basic(2, 1);
    c.sim_duration_us = 0;
    assert!(run(&c).is_err());
    let mut c = basic(2, 1);
    c.hidden_pairs = vec![(StationId::new("S1"), StationId::new("S9"))];
    assert!(run(&c).is_err());
    let mut c = basic(2, 1);
    c.protocol = Protocol::Htfa;
    c.htfa.m = 3;
    c.htfa.guard_fraction = 0.5;
    assert!(run(&c).is_err());
}
