use super::check_prob;
use crate::error::AnalyticsError;

const DAMPING: f64 = 0.5;
const TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 100_000;

/// Inputs of the random-access saturation model. Durations in microseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RaModelInput {
    pub n: u32,
    pub w_min: u32,
    pub alpha: u32,
    /// Empty backoff slot.
    pub sigma_us: f64,
    /// Channel occupancy of a successful exchange.
    pub t_s_us: f64,
    /// Channel occupancy of a collision.
    pub t_c_us: f64,
    pub mean_payload_bits: f64,
}

impl RaModelInput {
    /// Input carrying only what the fixed point needs.
    pub fn for_tau(n: u32, w_min: u32, alpha: u32) -> Self {
        RaModelInput {
            n,
            w_min,
            alpha,
            sigma_us: 1.0,
            t_s_us: 1.0,
            t_c_us: 1.0,
            mean_payload_bits: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointResult {
    pub tau: f64,
    /// Conditional collision probability seen by a transmitting station.
    pub p: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Transmit probability of the backoff chain for a given collision
/// probability:
/// `2 / (1 + W + p W sum_{i<alpha} (2p)^i)`.
///
/// Algebraically the same as
/// `2(1-2p) / ((1-2p)(W+1) + pW(1-(2p)^alpha))`, but the geometric sum
/// has no removable singularity at `p = 1/2`.
pub fn tau_of_p(p: f64, w_min: u32, alpha: u32) -> f64 {
    let w = w_min as f64;
    let mut geo = 0.0;
    let mut term = 1.0;
    for _ in 0..alpha {
        geo += term;
        term *= 2.0 * p;
    }
    2.0 / (1.0 + w + p * w * geo)
}

fn collision_of_tau(tau: f64, n: u32) -> f64 {
    1.0 - (1.0 - tau).powi(n as i32 - 1)
}

/// Solves the coupled `tau(p)`, `p(tau)` system by damped fixed-point
/// iteration on `p`.
pub fn ra_markov_solve(input: &RaModelInput) -> Result<FixedPointResult, AnalyticsError> {
    if input.n == 0 {
        return Err(AnalyticsError::Domain("n must be at least 1".into()));
    }
    if input.w_min == 0 {
        return Err(AnalyticsError::Domain("w_min must be at least 1".into()));
    }
    let (n, w, a) = (input.n, input.w_min, input.alpha);
    let mut p = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let target = collision_of_tau(tau_of_p(p, w, a), n);
        residual = (target - p).abs();
        if residual < TOLERANCE {
            let tau = tau_of_p(p, w, a);
            return Ok(FixedPointResult { tau, p, iterations: it, residual });
        }
        p = (1.0 - DAMPING) * p + DAMPING * target;
    }
    Err(AnalyticsError::Solver { iterations: MAX_ITERATIONS, residual })
}

/// Saturation throughput in bits per microsecond:
/// `P_S E(P) / ((1-P_b) sigma + P_S T_S + (P_b - P_S) T_C)`.
pub fn ra_throughput(tau: f64, input: &RaModelInput) -> Result<f64, AnalyticsError> {
    check_prob("tau", tau)?;
    if !(input.sigma_us > 0.0 && input.t_s_us > 0.0 && input.t_c_us > 0.0) {
        return Err(AnalyticsError::Domain("durations must be positive".into()));
    }
    let n = input.n as i32;
    let pb = 1.0 - (1.0 - tau).powi(n);
    let ps = input.n as f64 * tau * (1.0 - tau).powi(n - 1);
    let denom = (1.0 - pb) * input.sigma_us + ps * input.t_s_us + (pb - ps) * input.t_c_us;
    Ok(ps * input.mean_payload_bits / denom)
}

/// Busy and success probabilities per slot, exposed for tests and tables.
pub fn slot_probabilities(tau: f64, n: u32) -> (f64, f64) {
    let pb = 1.0 - (1.0 - tau).powi(n as i32);
    let ps = n as f64 * tau * (1.0 - tau).powi(n as i32 - 1);
    (pb, ps)
}
