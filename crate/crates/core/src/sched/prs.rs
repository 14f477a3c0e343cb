use super::{AccessMode, Grant, ScheduleAssignment, Station, StationId};
use crate::error::SchedError;
use crate::ru::RuLayout;

/// Guards the floor/ceiling of ratios that are exact integers in decimal
/// but not in binary floating point.
const EPS: f64 = 1e-9;

/// Rounding applied to the RA-zone share in the initial split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TRounding {
    /// `T = ceil(L2/L3 * M)`, matching the worked example.
    #[default]
    Ceiling,
    /// `T = floor(L2/L3 * M)`, the literal pseudocode reading.
    Floor,
}

fn check_loads(loads: &[f64]) -> Result<f64, SchedError> {
    if let Some(&bad) = loads.iter().find(|&&l| !(l >= 0.0) || !l.is_finite()) {
        return Err(SchedError::InvalidLoad { id: "?".into(), load: bad });
    }
    Ok(loads.iter().sum())
}

/// Initial SRU split between the SA zone (`S`) and the RA zone (`T`).
pub fn prs_initial(sa_loads: &[f64], ra_loads: &[f64], m: usize) -> Result<(usize, usize), SchedError> {
    prs_initial_with(sa_loads, ra_loads, m, TRounding::Ceiling)
}

pub fn prs_initial_with(
    sa_loads: &[f64],
    ra_loads: &[f64],
    m: usize,
    rounding: TRounding,
) -> Result<(usize, usize), SchedError> {
    if m == 0 {
        return Err(SchedError::Config("M must be at least 1".into()));
    }
    let l1 = check_loads(sa_loads)?;
    let l2 = check_loads(ra_loads)?;
    let l3 = l1 + l2;
    if l3 <= 0.0 {
        return Err(SchedError::NoLoad);
    }
    let s = (l1 / l3 * m as f64 + EPS).floor() as usize;
    let t_raw = l2 / l3 * m as f64;
    let t = match rounding {
        TRounding::Ceiling => (t_raw - EPS).ceil().max(0.0) as usize,
        TRounding::Floor => (t_raw + EPS).floor() as usize,
    };
    Ok((s, t))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrsRevision {
    /// SRUs per SA station, in input order.
    pub r: Vec<usize>,
    pub u: usize,
    pub v: usize,
    pub migrated: Vec<StationId>,
}

/// Per-station SRU counts `r_i = floor(p_i / L1 * S)`.
///
/// Stations with `r_i = 0` migrate to the RA zone. At least one SRU always
/// stays in the RA zone: if the grants would fill the line, the last
/// station with a grant gives one back.
pub fn prs_revised(sa: &[(StationId, f64)], s: usize, m: usize) -> Result<PrsRevision, SchedError> {
    if s > m {
        return Err(SchedError::Config(format!("S = {s} exceeds M = {m}")));
    }
    if sa.is_empty() {
        return Ok(PrsRevision { r: Vec::new(), u: 0, v: m, migrated: Vec::new() });
    }
    for (id, l) in sa {
        if !(*l >= 0.0) || !l.is_finite() {
            return Err(SchedError::InvalidLoad { id: id.to_string(), load: *l });
        }
    }
    let l1: f64 = sa.iter().map(|x| x.1).sum();
    let mut r: Vec<usize> = if l1 > 0.0 {
        sa.iter().map(|(_, p)| (p / l1 * s as f64 + EPS).floor() as usize).collect()
    } else {
        vec![0; sa.len()]
    };
    let mut u: usize = r.iter().sum();
    if u >= m {
        if let Some(last) = r.iter().rposition(|&x| x > 0) {
            r[last] -= 1;
            u -= 1;
        }
    }
    let migrated = sa
        .iter()
        .zip(&r)
        .filter(|(_, &ri)| ri == 0)
        .map(|((id, _), _)| id.clone())
        .collect();
    Ok(PrsRevision { v: m - u, r, u, migrated })
}

/// Places SRU runs left to right in order, merging each run greedily into
/// the widest valid RUs. Everything right of the last run is the RA zone.
pub fn prs_place(r: &[(StationId, usize)], layout: &RuLayout) -> Result<ScheduleAssignment, SchedError> {
    let m = layout.line_len();
    let total: usize = r.iter().map(|x| x.1).sum();
    if total > m {
        return Err(SchedError::AssignmentOverflow { requested: total, available: m });
    }
    let mut grants = Vec::new();
    let mut pos = 0;
    for (id, count) in r {
        let end = pos + count;
        while pos < end {
            let node = (1..=end - pos)
                .rev()
                .find_map(|len| layout.find_span(pos, len))
                .expect("every single SRU is a node");
            grants.push(Grant { station: id.clone(), ru: node });
            pos += node.len;
        }
    }
    Ok(ScheduleAssignment {
        grants,
        sa_zone_srus: total,
        ra_zone_srus: m - total,
        migrated_to_ra: Vec::new(),
        waiting: Vec::new(),
    })
}

/// Everything the PRS pipeline produces for one scheduling round.
#[derive(Debug, Clone, PartialEq)]
pub struct PrsPlan {
    pub s: usize,
    pub t: usize,
    pub revision: PrsRevision,
    pub assignment: ScheduleAssignment,
}

/// Initial split, revision and placement in one call. SA stations are taken
/// in input order.
pub fn prs_schedule(stations: &[Station], layout: &RuLayout, rounding: TRounding) -> Result<PrsPlan, SchedError> {
    let m = layout.line_len();
    let sa: Vec<(StationId, f64)> = stations
        .iter()
        .filter(|s| s.mode == AccessMode::Sa)
        .map(|s| (s.id.clone(), s.load))
        .collect();
    let sa_loads: Vec<f64> = sa.iter().map(|x| x.1).collect();
    let ra_loads: Vec<f64> = stations
        .iter()
        .filter(|s| s.mode == AccessMode::Ra)
        .map(|s| s.load)
        .collect();
    let (s, t) = prs_initial_with(&sa_loads, &ra_loads, m, rounding)?;
    let revision = prs_revised(&sa, s, m)?;
    let counts: Vec<(StationId, usize)> = sa
        .iter()
        .zip(&revision.r)
        .filter(|(_, &ri)| ri > 0)
        .map(|((id, _), &ri)| (id.clone(), ri))
        .collect();
    let mut assignment = prs_place(&counts, layout)?;
    assignment.migrated_to_ra = revision.migrated.clone();
    Ok(PrsPlan { s, t, revision, assignment })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ru::Bandwidth;

    const SA: [f64; 5] = [3.1, 2.2, 2.9, 1.3, 0.7];
    const RA: [f64; 3] = [3.4, 1.2, 2.1];

    fn ids(names: &[&str]) -> Vec<StationId> {
        names.iter().map(|s| StationId::new(*s)).collect()
    }

    #[test]
    fn initial_split() {
        assert_eq!(prs_initial(&SA, &RA, 18).unwrap(), (10, 8));
        assert_eq!(prs_initial_with(&SA, &RA, 18, TRounding::Floor).unwrap(), (10, 7));
        assert_eq!(prs_initial(&[2.0, 3.0], &[1.0, 4.0], 18).unwrap(), (9, 9));
        assert_eq!(prs_initial(&[1.0], &[], 18).unwrap(), (18, 0));
        assert_eq!(prs_initial(&[0.0], &[0.0], 18), Err(SchedError::NoLoad));
        assert!(prs_initial(&[1.0], &[1.0], 0).is_err());
    }

    #[test]
    fn revision_worked_example() {
        let sa: Vec<(StationId, f64)> = ids(&["A", "B", "C", "D", "E"]).into_iter().zip(SA).collect();
        let rev = prs_revised(&sa, 10, 18).unwrap();
        assert_eq!(rev.r, vec![3, 2, 2, 1, 0]);
        assert_eq!((rev.u, rev.v), (8, 10));
        assert_eq!(rev.migrated, ids(&["E"]));
    }

    #[test]
    fn revision_edge_cases() {
        let one = vec![(StationId::new("A"), 5.0)];
        let rev = prs_revised(&one, 7, 18).unwrap();
        assert_eq!((rev.r.clone(), rev.u, rev.v), (vec![7], 7, 11));

        let four: Vec<(StationId, f64)> = ids(&["A", "B", "C", "D"]).into_iter().map(|i| (i, 2.5)).collect();
        assert_eq!(prs_revised(&four, 8, 18).unwrap().r, vec![2, 2, 2, 2]);

        // a full line keeps one SRU for the RA zone
        let rev = prs_revised(&one, 18, 18).unwrap();
        assert_eq!((rev.r.clone(), rev.u, rev.v), (vec![17], 17, 1));

        let empty = prs_revised(&[], 5, 18).unwrap();
        assert_eq!((empty.u, empty.v), (0, 18));
    }

    #[test]
    fn placement_worked_example() {
        let layout = RuLayout::standard(Bandwidth::Mhz40);
        let r: Vec<(StationId, usize)> = ids(&["A", "B", "C", "D"]).into_iter().zip([3, 2, 2, 1]).collect();
        let a = prs_place(&r, &layout).unwrap();
        assert_eq!(a.merges(), vec![(1, 2), (6, 7)]);
        let spans = |s: &str| -> Vec<(usize, usize)> {
            a.grants_for(&StationId::new(s)).map(|g| (g.ru.first_sru(), g.ru.last_sru())).collect()
        };
        assert_eq!(spans("A"), vec![(1, 2), (3, 3)]);
        assert_eq!(spans("B"), vec![(4, 4), (5, 5)]);
        assert_eq!(spans("C"), vec![(6, 7)]);
        assert_eq!(spans("D"), vec![(8, 8)]);
        assert_eq!((a.sa_zone_srus, a.ra_zone_srus, a.ra_zone_start()), (8, 10, 8));
        assert!(a.is_disjoint());
    }

    #[test]
    fn placement_whole_line_and_overflow() {
        let layout = RuLayout::standard(Bandwidth::Mhz20);
        let a = prs_place(&[(StationId::new("A"), 9)], &layout).unwrap();
        assert_eq!(a.grants.len(), 1);
        assert_eq!(a.grants[0].ru.tones, 242);
        assert_eq!(
            prs_place(&[(StationId::new("A"), 10)], &layout),
            Err(SchedError::AssignmentOverflow { requested: 10, available: 9 })
        );
    }

    #[test]
    fn full_pipeline() {
        let mut stations = Vec::new();
        for (n, l) in ["A", "B", "C", "D", "E"].iter().zip(SA) {
            stations.push(Station::new(*n, l));
        }
        for (n, l) in ["X", "Y", "Z"].iter().zip(RA) {
            stations.push(Station::new(*n, l).with_mode(AccessMode::Ra));
        }
        let plan = prs_schedule(&stations, &RuLayout::standard(Bandwidth::Mhz40), TRounding::Ceiling).unwrap();
        assert_eq!((plan.s, plan.t), (10, 8));
        assert_eq!(plan.assignment.ra_zone_srus, 10);
        assert_eq!(plan.assignment.migrated_to_ra, ids(&["E"]));
        assert_eq!(plan.assignment.merges(), vec![(1, 2), (6, 7)]);
    }
}
