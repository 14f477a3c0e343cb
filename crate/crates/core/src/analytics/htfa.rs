use super::{check_prob, ra_markov_solve, RaModelInput};
use crate::error::AnalyticsError;

/// Upper limit of the expected-successes sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EsUpper {
    /// Sum over `i = 0..=m-1`, as the model is literally written. Gives zero
    /// for a single sub-channel.
    LiteralMMinus1,
    /// Sum over `i = 0..=m`, which equals `m * p1suc`.
    FullM,
}

/// Per-slot transmit probability: given, or derived from the backoff chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tau {
    Value(f64),
    Derive { w_min: u32, alpha: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HtfaModelInput {
    pub n: u32,
    pub m: u32,
    pub tau: Tau,
    pub mean_payload_bits: f64,
    pub t_total_us: f64,
    pub t_slot_us: f64,
}

/// Success probability on one sub-channel with a uniform slot distribution
/// over `r` slots. The `1/r` weights sum to one, leaving
/// `n * tau * (1 - tau)^(n-1)`.
pub fn htfa_p1suc(n: u32, tau: f64, r: u32) -> Result<f64, AnalyticsError> {
    check_prob("tau", tau)?;
    if r == 0 {
        return Err(AnalyticsError::Domain("r must be at least 1".into()));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let per_slot = n as f64 * tau * (1.0 - tau).powi(n as i32 - 1);
    let pk = 1.0 / r as f64;
    Ok((0..r).map(|_| pk * per_slot).sum())
}

pub fn htfa_pjcol(n: u32, tau: f64, r: u32) -> Result<f64, AnalyticsError> {
    Ok(1.0 - htfa_p1suc(n, tau, r)?)
}

/// Joint success on two sub-channels with the second conditioned on the
/// first (one fewer candidate station). Reference only; the model itself
/// uses the independent product `p1suc^2`.
pub fn htfa_pair_success(n: u32, tau: f64, r: u32) -> Result<f64, AnalyticsError> {
    let first = htfa_p1suc(n, tau, r)?;
    let second = htfa_p1suc(n.saturating_sub(1), tau, r)?;
    Ok(first * second)
}

fn binomial(m: u32, i: u32) -> f64 {
    let i = i.min(m - i);
    (0..i).fold(1.0, |acc, k| acc * (m - k) as f64 / (k + 1) as f64)
}

/// Probability that exactly `i` of `m` sub-channels succeed.
pub fn htfa_ps(i: u32, m: u32, p1suc: f64) -> Result<f64, AnalyticsError> {
    check_prob("p1suc", p1suc)?;
    if i > m {
        return Err(AnalyticsError::Domain(format!("i = {i} exceeds m = {m}")));
    }
    Ok(binomial(m, i) * p1suc.powi(i as i32) * (1.0 - p1suc).powi((m - i) as i32))
}

/// Expected number of successful sub-channels per slot.
pub fn htfa_es(m: u32, p1suc: f64, upper: EsUpper) -> Result<f64, AnalyticsError> {
    let top = match upper {
        EsUpper::LiteralMMinus1 => m.saturating_sub(1),
        EsUpper::FullM => m,
    };
    let mut sum = 0.0;
    for i in 0..=top {
        sum += i as f64 * htfa_ps(i, m, p1suc)?;
    }
    Ok(sum)
}

/// Saturation throughput `E[p] * E_s / T_slot` in bits per microsecond.
pub fn htfa_saturation(input: &HtfaModelInput, upper: EsUpper) -> Result<f64, AnalyticsError> {
    if !(input.t_slot_us > 0.0 && input.t_total_us >= input.t_slot_us) {
        return Err(AnalyticsError::Domain("need 0 < t_slot <= t_total".into()));
    }
    if !(input.mean_payload_bits >= 0.0) {
        return Err(AnalyticsError::Domain("negative payload".into()));
    }
    let r = (input.t_total_us / input.t_slot_us).floor() as u32;
    let tau = match input.tau {
        Tau::Value(t) => t,
        Tau::Derive { w_min, alpha } => {
            ra_markov_solve(&RaModelInput::for_tau(input.n.max(1), w_min, alpha))?.tau
        }
    };
    let p1 = htfa_p1suc(input.n, tau, r)?;
    let es = htfa_es(input.m, p1, upper)?;
    Ok(input.mean_payload_bits * es / input.t_slot_us)
}
