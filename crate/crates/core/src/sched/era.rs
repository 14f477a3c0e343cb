use std::collections::VecDeque;

use super::{Grant, ScheduleAssignment, Station, StationId};
use crate::error::SchedError;
use crate::ru::{LayoutKind, RuLayout};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LoadClass {
    Ll,
    Ml,
    Hl,
}

impl LoadClass {
    pub fn name(self) -> &'static str {
        match self {
            LoadClass::Ll => "LL",
            LoadClass::Ml => "ML",
            LoadClass::Hl => "HL",
        }
    }

    /// Nominal load of each class given the light-load threshold
    /// (`ML = 2 LL`, `HL = 4 LL`).
    pub fn nominal(self, ll: f64) -> f64 {
        match self {
            LoadClass::Ll => ll,
            LoadClass::Ml => 2.0 * ll,
            LoadClass::Hl => 4.0 * ll,
        }
    }
}

/// Classifies by midpoints between nominal class loads: LL up to `1.5 LL`,
/// ML up to `3 LL`, HL above. Boundaries belong to the lighter class.
pub fn era_classify(stations: &[Station], ll_threshold: f64) -> Result<Vec<LoadClass>, SchedError> {
    if !(ll_threshold > 0.0) {
        return Err(SchedError::Config(format!("LL threshold must be positive, got {ll_threshold}")));
    }
    let ll_ml = 0.5 * (LoadClass::Ll.nominal(ll_threshold) + LoadClass::Ml.nominal(ll_threshold));
    let ml_hl = 0.5 * (LoadClass::Ml.nominal(ll_threshold) + LoadClass::Hl.nominal(ll_threshold));
    stations
        .iter()
        .map(|s| {
            if !(s.load > 0.0) {
                Err(SchedError::InvalidLoad { id: s.id.to_string(), load: s.load })
            } else if s.load <= ll_ml {
                Ok(LoadClass::Ll)
            } else if s.load <= ml_hl {
                Ok(LoadClass::Ml)
            } else {
                Ok(LoadClass::Hl)
            }
        })
        .collect()
}

/// Three first-come first-served queues, one per load class.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EraQueues {
    pub hl: VecDeque<StationId>,
    pub ml: VecDeque<StationId>,
    pub ll: VecDeque<StationId>,
}

impl EraQueues {
    /// Queues stations in the given (arrival) order by their class.
    pub fn from_classified(stations: &[Station], classes: &[LoadClass]) -> Self {
        let mut q = EraQueues::default();
        for (s, c) in stations.iter().zip(classes) {
            q.push(s.id.clone(), *c);
        }
        q
    }

    pub fn push(&mut self, id: StationId, class: LoadClass) {
        match class {
            LoadClass::Hl => self.hl.push_back(id),
            LoadClass::Ml => self.ml.push_back(id),
            LoadClass::Ll => self.ll.push_back(id),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.hl.is_empty() && self.ml.is_empty() && self.ll.is_empty()
    }

    pub fn len(&self) -> usize {
        self.hl.len() + self.ml.len() + self.ll.len()
    }

    fn waiting(&self) -> Vec<StationId> {
        self.hl.iter().chain(&self.ml).chain(&self.ll).cloned().collect()
    }
}

/// One flow of the load-classified assignment on a Binary layout.
///
/// The right half always ends in two level-3 units for LL stations; the
/// remaining level-1/level-2 units go to an HL or ML station when one is
/// queued and are otherwise split into level-3 units for LL stations.
/// "Available" means the queue is non-empty at that step; a pair of LL
/// units is handed to as many LL stations as are queued. Granted stations
/// are removed from the queues; the rest wait for the next flow.
pub fn era_assign(queues: &mut EraQueues, layout: &RuLayout) -> Result<ScheduleAssignment, SchedError> {
    if layout.kind() != LayoutKind::Binary || layout.levels() < 4 {
        return Err(SchedError::Config("ERA needs a Binary layout with at least 4 levels".into()));
    }
    if queues.is_empty() {
        return Err(SchedError::EmptyFlow);
    }
    let mut grants = Vec::new();
    let mut give = |q: &mut VecDeque<StationId>, level: usize, index: usize| -> Result<(), SchedError> {
        if let Some(id) = q.pop_front() {
            grants.push(Grant { station: id, ru: layout.node(level, index)? });
        }
        Ok(())
    };

    if !queues.hl.is_empty() {
        give(&mut queues.hl, 1, 0)?;
    } else {
        give(&mut queues.ll, 3, 2)?;
        give(&mut queues.ll, 3, 3)?;
        if !queues.ml.is_empty() {
            give(&mut queues.ml, 2, 0)?;
        } else {
            give(&mut queues.ll, 3, 0)?;
            give(&mut queues.ll, 3, 1)?;
        }
    }
    if !queues.ml.is_empty() {
        give(&mut queues.ml, 2, 2)?;
    } else {
        give(&mut queues.ll, 3, 4)?;
        give(&mut queues.ll, 3, 5)?;
    }
    give(&mut queues.ll, 3, 6)?;
    give(&mut queues.ll, 3, 7)?;

    Ok(ScheduleAssignment {
        grants,
        sa_zone_srus: layout.line_len(),
        ra_zone_srus: 0,
        migrated_to_ra: Vec::new(),
        waiting: queues.waiting(),
    })
}
