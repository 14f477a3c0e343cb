//! Closed-form saturation models and fairness indices.
//!
//! Throughput figures are returned in bits per microsecond, which is
//! numerically Mbit/s.

mod fairness;
mod htfa;
mod ra;

pub use fairness::{jain_index, max_min_fairness, system_throughput};
pub use htfa::{
    htfa_es, htfa_p1suc, htfa_pair_success, htfa_pjcol, htfa_ps, htfa_saturation, EsUpper,
    HtfaModelInput, Tau,
};
pub use ra::{ra_markov_solve, ra_throughput, slot_probabilities, tau_of_p, FixedPointResult, RaModelInput};

use crate::error::AnalyticsError;

/// Scheduled-access throughput: `m` RUs each carrying `mean_payload_bits`
/// per trigger-frame cycle of `t_cycle_us`.
pub fn sa_saturation(m_rus: f64, mean_payload_bits: f64, t_cycle_us: f64) -> Result<f64, AnalyticsError> {
    if !(m_rus > 0.0 && mean_payload_bits > 0.0 && t_cycle_us > 0.0) {
        return Err(AnalyticsError::Domain(format!(
            "sa_saturation needs positive inputs, got m={m_rus}, E[P]={mean_payload_bits}, T={t_cycle_us}"
        )));
    }
    Ok(m_rus * mean_payload_bits / t_cycle_us)
}

pub(crate) fn check_prob(name: &str, p: f64) -> Result<(), AnalyticsError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(AnalyticsError::Domain(format!("{name} = {p} is not a probability")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sa_examples() {
        assert_eq!(sa_saturation(1.0, 400.0, 400.0).unwrap(), 1.0);
        assert_eq!(sa_saturation(8.0, 12000.0, 400.0).unwrap(), 240.0);
        let a = sa_saturation(3.0, 1000.0, 77.0).unwrap();
        let b = sa_saturation(6.0, 1000.0, 77.0).unwrap();
        assert_eq!(b, 2.0 * a);
        assert!(sa_saturation(0.0, 1.0, 1.0).is_err());
        assert!(sa_saturation(1.0, 1.0, -1.0).is_err());
    }
}
