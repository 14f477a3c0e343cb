use std::collections::BTreeSet;

use super::{Station, StationId};
use crate::error::SchedError;

/// Station membership of the `m` sub-channels.
///
/// With at least as many stations as sub-channels every station sits on
/// exactly one sub-channel and occupancies differ by at most one. With
/// fewer stations every sub-channel has exactly one owner and per-station
/// channel counts differ by at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HtfaState {
    channels: Vec<BTreeSet<StationId>>,
}

impl HtfaState {
    pub fn empty(m: usize) -> Result<Self, SchedError> {
        if m == 0 {
            return Err(SchedError::Config("at least one sub-channel is required".into()));
        }
        Ok(HtfaState { channels: vec![BTreeSet::new(); m] })
    }

    pub fn m(&self) -> usize {
        self.channels.len()
    }

    pub fn channels(&self) -> &[BTreeSet<StationId>] {
        &self.channels
    }

    pub fn stations(&self) -> BTreeSet<StationId> {
        self.channels.iter().flatten().cloned().collect()
    }

    pub fn n(&self) -> usize {
        self.stations().len()
    }

    pub fn contains(&self, id: &StationId) -> bool {
        self.channels.iter().any(|c| c.contains(id))
    }

    /// Indices of the sub-channels a station is on, ascending.
    pub fn channels_of(&self, id: &StationId) -> Vec<usize> {
        (0..self.m()).filter(|&j| self.channels[j].contains(id)).collect()
    }

    pub fn occupancy(&self) -> Vec<usize> {
        self.channels.iter().map(BTreeSet::len).collect()
    }

    /// Sub-channel counts per station, in id order.
    pub fn holdings(&self) -> Vec<(StationId, usize)> {
        self.stations()
            .into_iter()
            .map(|s| {
                let k = self.channels_of(&s).len();
                (s, k)
            })
            .collect()
    }

    /// Checks the balance invariants; returns a description of the first
    /// violation.
    pub fn check(&self) -> Result<(), String> {
        let n = self.n();
        let m = self.m();
        if n == 0 {
            return if self.channels.iter().all(BTreeSet::is_empty) {
                Ok(())
            } else {
                Err("no stations but non-empty channel".into())
            };
        }
        let occ = self.occupancy();
        if n >= m {
            let (lo, hi) = (*occ.iter().min().unwrap(), *occ.iter().max().unwrap());
            if lo == 0 {
                return Err(format!("empty sub-channel with N={n} >= M={m}: {occ:?}"));
            }
            if hi - lo > 1 {
                return Err(format!("occupancy spread {occ:?}"));
            }
            if occ.iter().sum::<usize>() != n {
                return Err("a station sits on two sub-channels".into());
            }
        } else {
            if occ.iter().any(|&c| c != 1) {
                return Err(format!("sub-channel without a single owner: {occ:?}"));
            }
            let counts: Vec<usize> = self.holdings().into_iter().map(|(_, k)| k).collect();
            let (lo, hi) = (*counts.iter().min().unwrap(), *counts.iter().max().unwrap());
            if lo == 0 || hi - lo > 1 {
                return Err(format!("holding spread {counts:?}"));
            }
        }
        Ok(())
    }

    /// Moves channels between owners until holdings differ by at most one.
    /// The largest holder (lowest id on ties) hands its highest-index
    /// channel to the smallest holder (lowest id on ties).
    fn rebalance_owned(&mut self) {
        loop {
            let h = self.holdings();
            let Some(max) = h.iter().map(|x| x.1).max() else { return };
            let min = h.iter().map(|x| x.1).min().unwrap();
            if max - min <= 1 {
                return;
            }
            let donor = h.iter().find(|x| x.1 == max).unwrap().0.clone();
            let taker = h.iter().find(|x| x.1 == min).unwrap().0.clone();
            let j = *self.channels_of(&donor).last().unwrap();
            self.channels[j].clear();
            self.channels[j].insert(taker);
        }
    }

    /// Moves stations until no sub-channel is empty and occupancies differ
    /// by at most one: the lowest id on the fullest sub-channel (lowest
    /// index on ties) moves to the emptiest one (lowest index on ties).
    fn rebalance_shared(&mut self) {
        loop {
            let occ = self.occupancy();
            let max = *occ.iter().max().unwrap();
            let min = *occ.iter().min().unwrap();
            if max - min <= 1 {
                return;
            }
            let from = occ.iter().position(|&c| c == max).unwrap();
            let to = occ.iter().position(|&c| c == min).unwrap();
            let mover = self.channels[from].iter().next().unwrap().clone();
            self.channels[from].remove(&mover);
            self.channels[to].insert(mover);
        }
    }
}

/// Initial distribution in input order. With `N >= M`, station `k` goes to
/// sub-channel `k mod M`; otherwise sub-channel `j` goes to station `j mod N`.
pub fn htfa_distribute(stations: &[Station], m: usize) -> Result<HtfaState, SchedError> {
    let mut state = HtfaState::empty(m)?;
    let mut seen = BTreeSet::new();
    for s in stations {
        if !seen.insert(s.id.clone()) {
            return Err(SchedError::DuplicateStation(s.id.to_string()));
        }
    }
    let n = stations.len();
    if n == 0 {
        return Ok(state);
    }
    if n >= m {
        for (k, s) in stations.iter().enumerate() {
            state.channels[k % m].insert(s.id.clone());
        }
    } else {
        for j in 0..m {
            state.channels[j].insert(stations[j % n].id.clone());
        }
    }
    Ok(state)
}

/// Admits a station. With spare sub-channels it takes the highest-index
/// channel of the largest holder; otherwise it joins the least-populated
/// sub-channel.
pub fn htfa_join(state: &HtfaState, sta: &Station) -> Result<HtfaState, SchedError> {
    if state.contains(&sta.id) {
        return Err(SchedError::DuplicateStation(sta.id.to_string()));
    }
    let mut next = state.clone();
    let n = state.n();
    let m = state.m();
    if n == 0 {
        for c in &mut next.channels {
            c.insert(sta.id.clone());
        }
    } else if m > n {
        let h = state.holdings();
        let max = h.iter().map(|x| x.1).max().unwrap();
        let donor = &h.iter().find(|x| x.1 == max).unwrap().0;
        let j = *state.channels_of(donor).last().unwrap();
        next.channels[j].clear();
        next.channels[j].insert(sta.id.clone());
        next.rebalance_owned();
    } else {
        let occ = state.occupancy();
        let min = *occ.iter().min().unwrap();
        let j = occ.iter().position(|&c| c == min).unwrap();
        next.channels[j].insert(sta.id.clone());
    }
    Ok(next)
}

/// Removes a station and restores balance.
pub fn htfa_leave(state: &HtfaState, id: &StationId) -> Result<HtfaState, SchedError> {
    if !state.contains(id) {
        return Err(SchedError::UnknownStation(id.to_string()));
    }
    let mut next = state.clone();
    let mut freed = Vec::new();
    for (j, c) in next.channels.iter_mut().enumerate() {
        if c.remove(id) && c.is_empty() {
            freed.push(j);
        }
    }
    let n = next.n();
    if n == 0 {
        return Ok(next);
    }
    if n >= next.m() {
        next.rebalance_shared();
    } else {
        // Stations that shared a sub-channel now need one each; hand every
        // freed or doubly-occupied channel to the smallest holder.
        for j in 0..next.m() {
            while next.channels[j].len() > 1 {
                let mover = next.channels[j].iter().next().unwrap().clone();
                next.channels[j].remove(&mover);
                let target = next
                    .channels
                    .iter()
                    .position(BTreeSet::is_empty)
                    .expect("fewer stations than channels leaves one free");
                next.channels[target].insert(mover);
                freed.retain(|&f| f != target);
            }
        }
        for j in freed {
            if !next.channels[j].is_empty() {
                continue;
            }
            let h = next.holdings();
            let min = h.iter().map(|x| x.1).min().unwrap();
            let taker = h.iter().find(|x| x.1 == min).unwrap().0.clone();
            next.channels[j].insert(taker);
        }
        next.rebalance_owned();
    }
    Ok(next)
}
