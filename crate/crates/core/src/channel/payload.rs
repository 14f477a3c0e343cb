use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::ChannelError;

const REL_TOL: f64 = 1e-9;
const MAX_DEPTH: u32 = 24;

/// Weight function averaged over the payload interval.
#[derive(Clone)]
pub enum Density {
    /// `f(x) = c`.
    Constant(f64),
    /// `f(x) = x`, which averages to the interval midpoint.
    Identity,
    /// `f(x) = (p_max - p_min) * x * g(x)` where `g` is the lognormal pdf
    /// truncated to the interval, so the average is the truncated mean.
    TruncatedLognormal { mu: f64, sigma: f64 },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::Constant(c) => write!(f, "Constant({c})"),
            Density::Identity => write!(f, "Identity"),
            Density::TruncatedLognormal { mu, sigma } => {
                write!(f, "TruncatedLognormal {{ mu: {mu}, sigma: {sigma} }}")
            }
            Density::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// Payload sizes in bits on `[p_min, p_max]` with a named weight function.
#[derive(Debug, Clone)]
pub struct PayloadDistribution {
    pub p_min: f64,
    pub p_max: f64,
    pub density: Density,
}

/// Lognormal shape used by the flow-size preset. Only the mean is pinned by
/// the preset, so the spread is a free choice.
pub const FLOW_SIGMA: f64 = 1.0;

impl PayloadDistribution {
    pub fn new(p_min: f64, p_max: f64, density: Density) -> Result<Self, ChannelError> {
        let d = PayloadDistribution { p_min, p_max, density };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        if !(self.p_min.is_finite() && self.p_max.is_finite() && self.p_min < self.p_max) {
            return Err(ChannelError::Domain(format!(
                "payload bounds [{}, {}] are not an interval",
                self.p_min, self.p_max
            )));
        }
        if let Density::TruncatedLognormal { sigma, .. } = self.density {
            if !(sigma > 0.0) || self.p_min <= 0.0 {
                return Err(ChannelError::Domain("lognormal needs sigma > 0 and p_min > 0".into()));
            }
        }
        Ok(())
    }

    /// Flow sizes: 1 KB minimum, 500 KB mean, 5 MB maximum (bits, decimal
    /// units), lognormal with `sigma = FLOW_SIGMA` and `mu` solved so the
    /// truncated mean hits 500 KB.
    pub fn flow_size_preset() -> Self {
        let (a, b, target) = (8.0e3, 4.0e7, 4.0e6);
        let mean_for = |mu: f64| truncated_lognormal_mean(a, b, mu, FLOW_SIGMA);
        let (mut lo, mut hi) = (a.ln() - 5.0, b.ln() + 5.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mean_for(mid).unwrap_or(f64::NAN) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        PayloadDistribution {
            p_min: a,
            p_max: b,
            density: Density::TruncatedLognormal { mu: 0.5 * (lo + hi), sigma: FLOW_SIGMA },
        }
    }

    /// Draws a payload size. Lognormal densities are sampled by rejection;
    /// other weight functions are treated as uniform over the interval.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.density {
            Density::TruncatedLognormal { mu, sigma } => {
                let ln = rand_distr::LogNormal::new(mu, sigma).expect("validated sigma");
                loop {
                    let x: f64 = rng.sample(ln);
                    if (self.p_min..=self.p_max).contains(&x) {
                        return x;
                    }
                }
            }
            _ => rng.random_range(self.p_min..=self.p_max),
        }
    }
}

/// Average of the weight function over the interval, by adaptive
/// double-exponential quadrature to a relative tolerance of 1e-9.
pub fn mean_payload(dist: &PayloadDistribution) -> Result<f64, ChannelError> {
    dist.validate()?;
    let (a, b) = (dist.p_min, dist.p_max);
    match &dist.density {
        Density::Constant(c) => Ok(*c),
        Density::Identity => integrate(&|x| x, a, b).map(|v| v / (b - a)),
        Density::TruncatedLognormal { mu, sigma } => truncated_lognormal_mean(a, b, *mu, *sigma),
        Density::Custom(f) => integrate(&|x| f(x), a, b).map(|v| v / (b - a)),
    }
}

fn truncated_lognormal_mean(a: f64, b: f64, mu: f64, sigma: f64) -> Result<f64, ChannelError> {
    // In log space the lognormal is a Gaussian, which integrates cleanly.
    let gauss = |y: f64| (-0.5 * ((y - mu) / sigma).powi(2)).exp();
    let mass = integrate(&gauss, a.ln(), b.ln())?;
    if mass <= 0.0 {
        return Err(ChannelError::Integration("truncated lognormal has no mass".into()));
    }
    let first = integrate(&|y: f64| y.exp() * gauss(y), a.ln(), b.ln())?;
    Ok(first / mass)
}

fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<f64, ChannelError> {
    for x in [a, 0.5 * (a + b), b] {
        if !f(x).is_finite() {
            return Err(ChannelError::Integration(format!("density is not finite at {x}")));
        }
    }
    let rough = quadrature::integrate(f, a, b, 1e-6).integral;
    if !rough.is_finite() {
        return Err(ChannelError::Integration(format!("non-finite integral on [{a}, {b}]")));
    }
    let abs_tol = (REL_TOL * rough.abs()).max(f64::MIN_POSITIVE);
    refine(f, a, b, abs_tol, 0)
}

fn refine(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> Result<f64, ChannelError> {
    let out = quadrature::integrate(f, a, b, tol * 0.1);
    if !out.integral.is_finite() {
        return Err(ChannelError::Integration(format!("non-finite integral on [{a}, {b}]")));
    }
    if out.error_estimate <= tol {
        return Ok(out.integral);
    }
    if depth >= MAX_DEPTH {
        return Err(ChannelError::Integration(format!(
            "tolerance not reached on [{a}, {b}] (error estimate {:e})",
            out.error_estimate
        )));
    }
    let m = 0.5 * (a + b);
    Ok(refine(f, a, m, tol * 0.5, depth + 1)? + refine(f, m, b, tol * 0.5, depth + 1)?)
}

/// Exponential distribution truncated to `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedExponential {
    pub min: f64,
    pub max: f64,
    pub rate: f64,
}

impl TruncatedExponential {
    pub fn mean(&self) -> f64 {
        let w = self.max - self.min;
        let e = (-self.rate * w).exp();
        self.min + 1.0 / self.rate - w * e / (1.0 - e)
    }

    /// Rate solved so the truncated mean equals `mean`, which must lie
    /// strictly between `min` and the interval midpoint.
    pub fn with_mean(min: f64, mean: f64, max: f64) -> Result<Self, ChannelError> {
        if !(min < mean && mean < 0.5 * (min + max)) {
            return Err(ChannelError::Domain(format!(
                "mean {mean} must lie in ({min}, {})",
                0.5 * (min + max)
            )));
        }
        let (mut lo, mut hi) = (1e-9_f64, 1e9_f64);
        for _ in 0..300 {
            let mid = (lo * hi).sqrt();
            if (TruncatedExponential { min, max, rate: mid }).mean() > mean {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(TruncatedExponential { min, max, rate: (lo * hi).sqrt() })
    }

    /// Inter-flow delay preset: 0.1 s minimum, 0.3 s mean, 0.6 s maximum.
    pub fn delay_preset() -> Self {
        Self::with_mean(0.1, 0.3, 0.6).expect("preset is consistent")
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        let w = self.max - self.min;
        self.min - (1.0 - u * (1.0 - (-self.rate * w).exp())).ln() / self.rate
    }
}
