//! OFDMA resource units: bandwidths, the two RU tree layouts, split/merge
//! rules and partition enumeration.
//!
//! Every layout is described over a 1-based *SRU line*: position `k` is the
//! k-th 26-tone unit from the left. A node covers a contiguous run of that
//! line. The Standard layout follows the 802.11ax tone plan (with its centre
//! orphan SRUs); the Binary layout is a perfect binary tree whose leaf count
//! is a power of two.

mod layout;
mod partition;

pub use layout::{split, RuLayout};
pub use partition::enumerate_valid_partitions;

use std::fmt;

use crate::error::RuError;

/// Tones in the smallest resource unit.
pub const SRU_TONES: u32 = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bandwidth {
    Mhz20,
    Mhz40,
    Mhz80,
    Mhz160,
}

impl Bandwidth {
    pub const ALL: [Bandwidth; 4] = [
        Bandwidth::Mhz20,
        Bandwidth::Mhz40,
        Bandwidth::Mhz80,
        Bandwidth::Mhz160,
    ];

    pub fn from_mhz(mhz: u32) -> Result<Self, RuError> {
        match mhz {
            20 => Ok(Bandwidth::Mhz20),
            40 => Ok(Bandwidth::Mhz40),
            80 => Ok(Bandwidth::Mhz80),
            160 => Ok(Bandwidth::Mhz160),
            other => Err(RuError::UnsupportedBandwidth(other)),
        }
    }

    pub fn mhz(self) -> u32 {
        match self {
            Bandwidth::Mhz20 => 20,
            Bandwidth::Mhz40 => 40,
            Bandwidth::Mhz80 => 80,
            Bandwidth::Mhz160 => 160,
        }
    }
}

impl fmt::Display for Bandwidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} MHz", self.mhz())
    }
}

/// Number of 26-tone units the bandwidth can carry.
pub fn sru_count(bw: Bandwidth) -> usize {
    match bw {
        Bandwidth::Mhz20 => 9,
        Bandwidth::Mhz40 => 18,
        Bandwidth::Mhz80 => 37,
        Bandwidth::Mhz160 => 74,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayoutKind {
    Standard,
    Binary,
}

impl LayoutKind {
    pub fn name(self) -> &'static str {
        match self {
            LayoutKind::Standard => "standard",
            LayoutKind::Binary => "binary",
        }
    }
}

/// Number of levels (rows) in the RU tree; level 0 is the whole channel.
///
/// Both layouts have the same depth: 4 rows at 20 MHz and one more per
/// doubling.
pub fn level_count(bw: Bandwidth, _kind: LayoutKind) -> usize {
    match bw {
        Bandwidth::Mhz20 => 4,
        Bandwidth::Mhz40 => 5,
        Bandwidth::Mhz80 => 6,
        Bandwidth::Mhz160 => 7,
    }
}

/// A resource unit `RU(level, index)` and the run of SRU positions it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuNode {
    pub level: usize,
    pub index: usize,
    pub tones: u32,
    /// 0-based offset on the SRU line.
    pub start: usize,
    /// Number of SRU positions covered.
    pub len: usize,
}

impl RuNode {
    /// First covered SRU, 1-based.
    pub fn first_sru(&self) -> usize {
        self.start + 1
    }

    /// Last covered SRU, 1-based.
    pub fn last_sru(&self) -> usize {
        self.start + self.len
    }

    pub fn srus(&self) -> std::ops::RangeInclusive<usize> {
        self.first_sru()..=self.last_sru()
    }

    pub fn contains_span(&self, start: usize, len: usize) -> bool {
        start >= self.start && start + len <= self.start + self.len
    }
}

impl fmt::Display for RuNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RU({},{})", self.level, self.index)
    }
}
