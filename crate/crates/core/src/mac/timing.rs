use rand::Rng;

use crate::error::MacError;

/// Timing and backoff parameters. Durations are integer microseconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimingParams {
    pub sifs_us: u64,
    pub slot_us: u64,
    pub ack_time_us: u64,
    pub w_min: u32,
    /// Number of window doublings before the window stops growing.
    pub alpha: u32,
    pub retry_limit: u32,
}

impl TimingParams {
    pub const DEFAULT_RETRY_LIMIT: u32 = 7;

    /// Validated constructor.
    pub fn new(
        sifs_us: u64,
        slot_us: u64,
        ack_time_us: u64,
        w_min: u32,
        alpha: u32,
    ) -> Result<Self, MacError> {
        let t = TimingParams {
            sifs_us,
            slot_us,
            ack_time_us,
            w_min,
            alpha,
            retry_limit: Self::DEFAULT_RETRY_LIMIT,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), MacError> {
        if self.w_min == 0 {
            return Err(MacError::InvalidTiming("w_min must be at least 1".into()));
        }
        if self.sifs_us == 0 || self.slot_us == 0 || self.ack_time_us == 0 {
            return Err(MacError::InvalidTiming("durations must be positive".into()));
        }
        if self.alpha > 20 {
            return Err(MacError::InvalidTiming(format!("alpha {} is too large", self.alpha)));
        }
        Ok(())
    }

    pub fn w_max(&self) -> u64 {
        (self.w_min as u64) << self.alpha
    }

    /// Contention window at a backoff stage; constant beyond `alpha`.
    pub fn window(&self, stage: u32) -> u64 {
        (self.w_min as u64) << stage.min(self.alpha)
    }

    pub fn pifs(&self) -> u64 {
        pifs(self)
    }

    pub fn difs(&self) -> u64 {
        difs(self)
    }

    pub fn eifs(&self) -> u64 {
        eifs(self)
    }
}

pub fn pifs(t: &TimingParams) -> u64 {
    t.sifs_us + t.slot_us
}

pub fn difs(t: &TimingParams) -> u64 {
    t.sifs_us + 2 * t.slot_us
}

pub fn eifs(t: &TimingParams) -> u64 {
    t.sifs_us + difs(t) + t.ack_time_us
}

/// Rounds a non-negative microsecond quantity half-up to an integer tick.
pub fn round_us(x: f64) -> u64 {
    (x + 0.5).floor().max(0.0) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BackoffState {
    pub stage: u32,
    pub counter: u64,
    /// Failed attempts for the head-of-line frame.
    pub retries: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Collision,
}

/// Uniform draw in `[0, window(stage) - 1]`.
pub fn backoff_draw<R: Rng + ?Sized>(state: &BackoffState, t: &TimingParams, rng: &mut R) -> u64 {
    let w = t.window(state.stage);
    if w <= 1 {
        0
    } else {
        rng.random_range(0..w)
    }
}

/// Stage after a transmission attempt. A collision that pushes the retry
/// count past `retry_limit` returns `FrameDropped`; the caller then discards
/// the frame and restarts from `BackoffState::default()`.
pub fn next_stage(
    state: BackoffState,
    outcome: Outcome,
    t: &TimingParams,
) -> Result<BackoffState, MacError> {
    match outcome {
        Outcome::Success => Ok(BackoffState::default()),
        Outcome::Collision => {
            let retries = state.retries + 1;
            if retries > t.retry_limit {
                return Err(MacError::FrameDropped { retries });
            }
            Ok(BackoffState {
                stage: (state.stage + 1).min(t.alpha),
                counter: 0,
                retries,
            })
        }
    }
}
