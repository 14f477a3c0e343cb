use std::fmt;

/// Station identifier. Ordering is lexical and drives every tie-break.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StationId(pub String);

impl StationId {
    pub fn new(s: impl Into<String>) -> Self {
        StationId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for StationId {
    fn from(s: &str) -> Self {
        StationId(s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AccessMode {
    /// Scheduled access through trigger frames.
    Sa,
    /// Random access (DCF contention).
    Ra,
}

impl AccessMode {
    pub fn name(self) -> &'static str {
        match self {
            AccessMode::Sa => "SA",
            AccessMode::Ra => "RA",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Station {
    pub id: StationId,
    /// Offered load; the unit is fixed per scenario.
    pub load: f64,
    pub mode: AccessMode,
    pub antennas: u32,
}

impl Station {
    pub fn new(id: impl Into<String>, load: f64) -> Self {
        Station { id: StationId::new(id), load, mode: AccessMode::Sa, antennas: 1 }
    }

    pub fn with_mode(mut self, mode: AccessMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_antennas(mut self, antennas: u32) -> Self {
        self.antennas = antennas;
        self
    }
}
