use std::fmt::Write as _;

use super::StationId;
use crate::ru::RuNode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zone {
    Sa,
    Ra,
}

impl Zone {
    pub fn name(self) -> &'static str {
        match self {
            Zone::Sa => "SA",
            Zone::Ra => "RA",
        }
    }
}

/// One RU granted to one station.
#[derive(Debug, Clone, PartialEq)]
pub struct Grant {
    pub station: StationId,
    pub ru: RuNode,
}

/// Result of one scheduling decision.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScheduleAssignment {
    /// Grants in placement order. A station may hold several RUs.
    pub grants: Vec<Grant>,
    /// Width of the scheduled zone, in SRU positions.
    pub sa_zone_srus: usize,
    /// Width of the random-access zone, in SRU positions.
    pub ra_zone_srus: usize,
    /// Stations moved from scheduled to random access.
    pub migrated_to_ra: Vec<StationId>,
    /// Stations left over for the next flow, in queue order.
    pub waiting: Vec<StationId>,
}

impl ScheduleAssignment {
    /// 0-based start of the random-access zone on the SRU line.
    pub fn ra_zone_start(&self) -> usize {
        self.sa_zone_srus
    }

    pub fn grants_for<'a>(&'a self, id: &'a StationId) -> impl Iterator<Item = &'a Grant> + 'a {
        self.grants.iter().filter(move |g| &g.station == id)
    }

    /// Total SRU positions granted to a station.
    pub fn srus_of(&self, id: &StationId) -> usize {
        self.grants_for(id).map(|g| g.ru.len).sum()
    }

    pub fn tones_of(&self, id: &StationId) -> u32 {
        self.grants_for(id).map(|g| g.ru.tones).sum()
    }

    /// Multi-SRU grants, as 1-based inclusive SRU ranges.
    pub fn merges(&self) -> Vec<(usize, usize)> {
        self.grants
            .iter()
            .filter(|g| g.ru.len > 1)
            .map(|g| (g.ru.first_sru(), g.ru.last_sru()))
            .collect()
    }

    /// True when no SRU position is covered by two grants.
    pub fn is_disjoint(&self) -> bool {
        let mut spans: Vec<(usize, usize)> =
            self.grants.iter().map(|g| (g.ru.start, g.ru.start + g.ru.len)).collect();
        spans.sort_unstable();
        spans.windows(2).all(|w| w[0].1 <= w[1].0)
    }

    /// CSV with header `station_id,zone,sru_start,sru_len,tones`. The RA
    /// zone, when present, is one row with station `*`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("station_id,zone,sru_start,sru_len,tones\n");
        for g in &self.grants {
            let _ = writeln!(
                out,
                "{},SA,{},{},{}",
                g.station,
                g.ru.first_sru(),
                g.ru.len,
                g.ru.tones
            );
        }
        if self.ra_zone_srus > 0 {
            let _ = writeln!(
                out,
                "*,RA,{},{},{}",
                self.ra_zone_start() + 1,
                self.ra_zone_srus,
                self.ra_zone_srus as u32 * crate::ru::SRU_TONES
            );
        }
        out
    }

    /// Human-readable aligned listing.
    pub fn to_text(&self) -> String {
        let width = self.grants.iter().map(|g| g.station.as_str().len()).max().unwrap_or(2).max(7);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$}  {:<9}  {:>5}  {:>5}", "station", "ru", "srus", "tones");
        for g in &self.grants {
            let span = if g.ru.len == 1 {
                format!("{}", g.ru.first_sru())
            } else {
                format!("{}-{}", g.ru.first_sru(), g.ru.last_sru())
            };
            let _ = writeln!(
                out,
                "{:<width$}  {:<9}  {:>5}  {:>5}",
                g.station.as_str(),
                g.ru.to_string(),
                span,
                g.ru.tones
            );
        }
        if self.ra_zone_srus > 0 {
            let _ = writeln!(
                out,
                "RA zone: SRUs {}-{} ({} SRUs)",
                self.ra_zone_start() + 1,
                self.ra_zone_start() + self.ra_zone_srus,
                self.ra_zone_srus
            );
        }
        if !self.migrated_to_ra.is_empty() {
            let ids: Vec<&str> = self.migrated_to_ra.iter().map(|s| s.as_str()).collect();
            let _ = writeln!(out, "migrated to RA: {}", ids.join(", "));
        }
        if !self.waiting.is_empty() {
            let ids: Vec<&str> = self.waiting.iter().map(|s| s.as_str()).collect();
            let _ = writeln!(out, "waiting: {}", ids.join(", "));
        }
        out
    }
}
