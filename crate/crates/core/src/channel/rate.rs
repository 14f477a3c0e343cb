use crate::error::ChannelError;
use crate::ru::SRU_TONES;

/// Spatial-stream scaling exponent: rate grows as `streams^0.85`.
pub const DEFAULT_ANTENNA_EXPONENT: f64 = 0.85;

/// Maps path loss (dB) to the bit rate of one 26-tone unit.
///
/// Entries are `(max_loss_db, mbps)` in increasing loss order; a loss above
/// the last threshold gets rate zero. The default table is an arbitrary
/// monotone staircase, not a calibrated MCS mapping; override it for any
/// quantitative use.
#[derive(Debug, Clone, PartialEq)]
pub struct RateTable {
    entries: Vec<(f64, f64)>,
    pub antenna_exponent: f64,
}

impl Default for RateTable {
    fn default() -> Self {
        RateTable {
            entries: vec![
                (60.0, 14.7),
                (70.0, 11.8),
                (80.0, 8.8),
                (90.0, 5.9),
                (100.0, 2.9),
                (110.0, 0.9),
            ],
            antenna_exponent: DEFAULT_ANTENNA_EXPONENT,
        }
    }
}

impl RateTable {
    pub fn new(entries: Vec<(f64, f64)>) -> Result<Self, ChannelError> {
        if entries.is_empty() {
            return Err(ChannelError::Domain("rate table is empty".into()));
        }
        for w in entries.windows(2) {
            if !(w[0].0 < w[1].0) {
                return Err(ChannelError::Domain("rate thresholds must increase".into()));
            }
        }
        if entries.iter().any(|&(l, r)| !l.is_finite() || !(r >= 0.0)) {
            return Err(ChannelError::Domain("rate table has invalid entries".into()));
        }
        Ok(RateTable { entries, antenna_exponent: DEFAULT_ANTENNA_EXPONENT })
    }

    /// Table with a single unconditional rate.
    pub fn flat(mbps: f64) -> Self {
        RateTable { entries: vec![(f64::MAX, mbps)], antenna_exponent: DEFAULT_ANTENNA_EXPONENT }
    }

    pub fn entries(&self) -> &[(f64, f64)] {
        &self.entries
    }

    pub fn per_sru_mbps(&self, loss_db: f64) -> f64 {
        self.entries
            .iter()
            .find(|&&(max, _)| loss_db <= max)
            .map(|&(_, r)| r)
            .unwrap_or(0.0)
    }

    pub fn stream_factor(&self, ap_antennas: u32, sta_antennas: u32) -> f64 {
        (ap_antennas.min(sta_antennas).max(1) as f64).powf(self.antenna_exponent)
    }

    /// Rate of an RU of `tones` sub-carriers at the given loss.
    pub fn ru_rate_mbps(&self, loss_db: f64, tones: u32, ap_antennas: u32, sta_antennas: u32) -> f64 {
        self.per_sru_mbps(loss_db) * tones as f64 / SRU_TONES as f64
            * self.stream_factor(ap_antennas, sta_antennas)
    }
}
