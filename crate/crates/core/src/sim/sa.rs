use std::collections::BTreeMap;

use crate::channel::RateTable;
use crate::error::SchedError;
use crate::sched::{ScheduleAssignment, StationId};

/// Length of one trigger-frame cycle: header, then trigger frame, uplink
/// payload and acknowledgement, each followed by SIFS and a propagation
/// delay.
pub fn tf_cycle_duration(t_h: u64, t_tf: u64, t_p: u64, t_ack: u64, sifs: u64, delta: u64) -> u64 {
    t_h + (t_tf + sifs + delta) + (t_p + sifs + delta) + (t_ack + sifs + delta)
}

/// Radio link of one station towards the AP.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub loss_db: f64,
    pub antennas: u32,
}

/// What a scheduled cycle needs to turn RUs into bits.
#[derive(Debug, Clone)]
pub struct SaContext<'a> {
    pub rates: &'a RateTable,
    pub ap_antennas: u32,
    pub payload_us: u64,
    pub links: &'a BTreeMap<StationId, Link>,
}

/// Bits each granted station delivers in one cycle, in first-grant order.
/// Scheduled transmissions never collide, so every bit is delivered.
pub fn run_sa_cycle(assignment: &ScheduleAssignment, ctx: &SaContext) -> Result<Vec<(StationId, u64)>, SchedError> {
    let mut out: Vec<(StationId, u64)> = Vec::new();
    for g in &assignment.grants {
        let link = ctx
            .links
            .get(&g.station)
            .ok_or_else(|| SchedError::UnknownStation(g.station.to_string()))?;
        let rate = ctx.rates.ru_rate_mbps(link.loss_db, g.ru.tones, ctx.ap_antennas, link.antennas);
        let bits = (rate * ctx.payload_us as f64).floor() as u64;
        match out.iter_mut().find(|(id, _)| id == &g.station) {
            Some((_, b)) => *b += bits,
            None => out.push((g.station.clone(), bits)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ru::{Bandwidth, RuLayout};
    use crate::sched::Grant;

    #[test]
    fn cycle_duration_example() {
        assert_eq!(tf_cycle_duration(20, 50, 500, 40, 16, 1), 661);
    }

    #[test]
    fn bits_follow_tones() {
        let layout = RuLayout::binary(Bandwidth::Mhz20);
        let a = ScheduleAssignment {
            grants: vec![
                Grant { station: "A".into(), ru: layout.node(1, 0).unwrap() },
                Grant { station: "B".into(), ru: layout.node(3, 6).unwrap() },
                Grant { station: "B".into(), ru: layout.node(3, 7).unwrap() },
            ],
            ..Default::default()
        };
        let mut links = BTreeMap::new();
        links.insert(StationId::new("A"), Link { loss_db: 50.0, antennas: 1 });
        links.insert(StationId::new("B"), Link { loss_db: 50.0, antennas: 1 });
        let rates = RateTable::flat(1.0);
        let ctx = SaContext { rates: &rates, ap_antennas: 1, payload_us: 1000, links: &links };
        let bits = run_sa_cycle(&a, &ctx).unwrap();
        let tones_a = layout.node(1, 0).unwrap().tones as u64;
        let tones_b = 2 * layout.node(3, 6).unwrap().tones as u64;
        assert_eq!(bits[0], (StationId::new("A"), tones_a * 1000 / 26));
        assert_eq!(bits[1], (StationId::new("B"), tones_b * 1000 / 26));

        let empty = BTreeMap::new();
        let ctx = SaContext { links: &empty, ..ctx };
        assert!(run_sa_cycle(&a, &ctx).is_err());
    }
}
