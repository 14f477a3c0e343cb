//! Built-in PRS scheduling walkthrough: five scheduled stations and three
//! random-access stations on the 40 MHz standard layout.

use std::fmt::Write as _;

use crate::error::SchedError;
use crate::ru::{Bandwidth, RuLayout};
use crate::sched::{prs_schedule, AccessMode, PrsPlan, Station, StationId, TRounding};

pub const EXAMPLE_SA: [(&str, f64); 5] = [("A", 3.1), ("B", 2.2), ("C", 2.9), ("D", 1.3), ("E", 0.7)];
pub const EXAMPLE_RA: [(&str, f64); 3] = [("X", 3.4), ("Y", 1.2), ("Z", 2.1)];

#[derive(Debug, Clone, PartialEq)]
pub struct WorkedExample {
    pub stations: Vec<Station>,
    pub plan: PrsPlan,
    /// Every station that contends in the RA zone, migrated ones first.
    pub ra_zone_stations: Vec<StationId>,
}

pub fn example_stations() -> Vec<Station> {
    let sa = EXAMPLE_SA.iter().map(|(id, l)| Station::new(*id, *l));
    let ra = EXAMPLE_RA.iter().map(|(id, l)| Station::new(*id, *l).with_mode(AccessMode::Ra));
    sa.chain(ra).collect()
}

pub fn prs_worked_example() -> Result<WorkedExample, SchedError> {
    let stations = example_stations();
    let layout = RuLayout::standard(Bandwidth::Mhz40);
    let plan = prs_schedule(&stations, &layout, TRounding::Ceiling)?;
    let mut ra_zone_stations = plan.revision.migrated.clone();
    ra_zone_stations.extend(stations.iter().filter(|s| s.mode == AccessMode::Ra).map(|s| s.id.clone()));
    Ok(WorkedExample { stations, plan, ra_zone_stations })
}

impl WorkedExample {
    pub fn report(&self) -> String {
        let p = &self.plan;
        let list = |mode| {
            self.stations
                .iter()
                .filter(|s| s.mode == mode)
                .map(|s| format!("{}={}", s.id, s.load))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let ids = |v: &[StationId]| v.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ");
        let r: Vec<String> = p.revision.r.iter().map(|x| x.to_string()).collect();
        let merges: Vec<String> = p.assignment.merges().iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
        let mut out = String::new();
        let _ = writeln!(out, "SA stations: {}", list(AccessMode::Sa));
        let _ = writeln!(out, "RA stations: {}", list(AccessMode::Ra));
        let _ = writeln!(out, "S = {}", p.s);
        let _ = writeln!(out, "T = {}", p.t);
        let _ = writeln!(out, "r = [{}]", r.join(", "));
        let _ = writeln!(out, "U = {}", p.revision.u);
        let _ = writeln!(out, "V = {}", p.revision.v);
        let _ = writeln!(out, "SA-zone SRUs = {}", p.assignment.sa_zone_srus);
        let _ = writeln!(out, "RA-zone SRUs = {}", p.assignment.ra_zone_srus);
        let _ = writeln!(out, "migrated to RA: {}", ids(&p.revision.migrated));
        let _ = writeln!(out, "RA-zone stations: {}", ids(&self.ra_zone_stations));
        let _ = writeln!(out, "merges: {}", merges.join(" "));
        out.push('\n');
        out.push_str(&p.assignment.to_text());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_lines() {
        let ex = prs_worked_example().unwrap();
        let text = ex.report();
        for want in [
            "S = 10",
            "T = 8",
            "r = [3, 2, 2, 1, 0]",
            "U = 8",
            "V = 10",
            "SA-zone SRUs = 8",
            "RA-zone SRUs = 10",
            "RA-zone stations: E, X, Y, Z",
            "merges: {1,2} {6,7}",
        ] {
            assert!(text.lines().any(|l| l == want), "missing {want:?} in\n{text}");
        }
    }
}
