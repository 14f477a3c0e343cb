use crate::error::AnalyticsError;

pub fn system_throughput(per_station: &[f64]) -> f64 {
    per_station.iter().sum()
}

/// Spread of normalised throughputs: `max(t_i/l_i) - min(t_i/l_i)`.
pub fn max_min_fairness(t: &[f64], l: &[f64]) -> Result<f64, AnalyticsError> {
    if t.len() != l.len() {
        return Err(AnalyticsError::Domain(format!(
            "{} throughputs but {} loads",
            t.len(),
            l.len()
        )));
    }
    if t.is_empty() {
        return Err(AnalyticsError::Domain("no stations".into()));
    }
    if let Some(i) = l.iter().position(|&x| !(x > 0.0)) {
        return Err(AnalyticsError::InvalidLoad(i));
    }
    let (lo, hi) = t
        .iter()
        .zip(l)
        .map(|(t, l)| t / l)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    Ok(hi - lo)
}

/// `(sum x)^2 / (n sum x^2)`.
pub fn jain_index(x: &[f64]) -> Result<f64, AnalyticsError> {
    if x.is_empty() {
        return Err(AnalyticsError::Domain("empty input".into()));
    }
    if x.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
        return Err(AnalyticsError::Domain("values must be finite and nonnegative".into()));
    }
    let s: f64 = x.iter().sum();
    let sq: f64 = x.iter().map(|v| v * v).sum();
    if sq == 0.0 {
        return Err(AnalyticsError::Domain("all values are zero".into()));
    }
    Ok(s * s / (x.len() as f64 * sq))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jain_examples() {
        assert!((jain_index(&[3.0, 1.0]).unwrap() - 0.8).abs() < 1e-15);
        assert!((jain_index(&[5.0; 7]).unwrap() - 1.0).abs() < 1e-15);
        assert!((jain_index(&[2.0, 2.0, 0.0, 0.0]).unwrap() - 0.5).abs() < 1e-15);
        assert!(jain_index(&[0.0, 0.0]).is_err());
        assert!(jain_index(&[]).is_err());
        assert!(jain_index(&[-1.0, 2.0]).is_err());
    }

    #[test]
    fn jain_scale_invariance() {
        let x = [0.3, 1.7, 2.2, 9.0, 0.01];
        let base = jain_index(&x).unwrap();
        for c in [0.001, 0.5, 3.0, 1e6] {
            let y: Vec<f64> = x.iter().map(|v| v * c).collect();
            assert!((jain_index(&y).unwrap() - base).abs() < 1e-12);
        }
    }

    #[test]
    fn max_min_examples() {
        assert_eq!(max_min_fairness(&[1.0, 2.0], &[2.0, 2.0]).unwrap(), 0.5);
        assert_eq!(max_min_fairness(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap(), 0.0);
        assert_eq!(max_min_fairness(&[1.0], &[0.0]), Err(AnalyticsError::InvalidLoad(0)));
        assert!(max_min_fairness(&[1.0], &[1.0, 2.0]).is_err());
        assert_eq!(system_throughput(&[1.5, 2.5, 3.0]), 7.0);
    }
}
