use crate::error::ChannelError;

/// Path-loss model parameters.
///
/// `a_coef`..`x_coef` belong to the WINNER-II style fit and have no
/// built-in values: they default to zero and must be supplied by the user
/// when [`winner_pl`] is used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossParams {
    pub a_coef: f64,
    pub b_coef: f64,
    pub c_coef: f64,
    pub x_coef: f64,
    pub carrier_ghz: f64,
    pub breakpoint_m: f64,
    pub floor_penetration_db: f64,
    pub wall_penetration_db: f64,
}

impl Default for PathLossParams {
    fn default() -> Self {
        PathLossParams {
            a_coef: 0.0,
            b_coef: 0.0,
            c_coef: 0.0,
            x_coef: 0.0,
            carrier_ghz: 5.0,
            breakpoint_m: 5.0,
            floor_penetration_db: 0.0,
            wall_penetration_db: 0.0,
        }
    }
}

impl PathLossParams {
    pub fn validate(&self) -> Result<(), ChannelError> {
        if !(self.carrier_ghz > 0.0) {
            return Err(ChannelError::Domain(format!("carrier {} GHz", self.carrier_ghz)));
        }
        if !(self.breakpoint_m > 0.0) {
            return Err(ChannelError::Domain(format!("breakpoint {} m", self.breakpoint_m)));
        }
        if !(self.floor_penetration_db >= 0.0) || !(self.wall_penetration_db >= 0.0) {
            return Err(ChannelError::Domain("penetration losses must be >= 0".into()));
        }
        Ok(())
    }
}

fn positive(name: &str, v: f64) -> Result<(), ChannelError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ChannelError::Domain(format!("{name} must be positive, got {v}")))
    }
}

/// Free-space loss in dB for distance in metres and frequency in Hz.
pub fn free_space_pl(d_m: f64, f_hz: f64) -> Result<f64, ChannelError> {
    positive("distance", d_m)?;
    positive("frequency", f_hz)?;
    Ok(20.0 * d_m.log10() + 20.0 * f_hz.log10() - 147.55)
}

/// Free space up to the breakpoint, then an extra 35 dB per decade.
pub fn indoor_pl(d_m: f64, p: &PathLossParams) -> Result<f64, ChannelError> {
    p.validate()?;
    let fs = free_space_pl(d_m, p.carrier_ghz * 1e9)?;
    if d_m > p.breakpoint_m {
        Ok(fs + 35.0 * (d_m / p.breakpoint_m).log10())
    } else {
        Ok(fs)
    }
}

pub fn overall_indoor_pl(d_m: f64, p: &PathLossParams) -> Result<f64, ChannelError> {
    Ok(indoor_pl(d_m, p)? + p.floor_penetration_db + p.wall_penetration_db)
}

/// `A log10(d) + B + C log10(fc / 5 GHz) + X`.
pub fn winner_pl(d_m: f64, p: &PathLossParams) -> Result<f64, ChannelError> {
    positive("distance", d_m)?;
    positive("carrier", p.carrier_ghz)?;
    Ok(p.a_coef * d_m.log10() + p.b_coef + p.c_coef * (p.carrier_ghz / 5.0).log10() + p.x_coef)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F5: f64 = 5e9;

    #[test]
    fn free_space_values() {
        // 20 log10(5e9) - 147.55 = 46.4294
        let at1 = free_space_pl(1.0, F5).unwrap();
        assert!((at1 - 46.43).abs() < 0.01, "{at1}");
        assert!((free_space_pl(10.0, F5).unwrap() - 66.43).abs() < 0.01);
        let step = free_space_pl(8.0, F5).unwrap() - free_space_pl(4.0, F5).unwrap();
        assert!((step - 20.0 * 2f64.log10()).abs() < 1e-12);
        assert!(free_space_pl(0.0, F5).is_err());
        assert!(free_space_pl(1.0, -1.0).is_err());
    }

    #[test]
    fn indoor_breakpoint() {
        let p = PathLossParams { breakpoint_m: 5.0, ..Default::default() };
        for d in [0.5, 1.0, 3.0, 5.0] {
            assert_eq!(indoor_pl(d, &p).unwrap(), free_space_pl(d, F5).unwrap());
        }
        let extra = indoor_pl(10.0, &p).unwrap() - free_space_pl(10.0, F5).unwrap();
        assert!((extra - 10.54).abs() < 0.01, "{extra}");
        let below = indoor_pl(5.0, &p).unwrap();
        let above = indoor_pl(5.0 + 1e-9, &p).unwrap();
        assert!((above - below).abs() < 1e-6);
    }

    #[test]
    fn indoor_slopes() {
        let p = PathLossParams { breakpoint_m: 5.0, ..Default::default() };
        let slope = |d: f64| {
            let h = 1e-4;
            let a = indoor_pl(d * 10f64.powf(-h), &p).unwrap();
            let b = indoor_pl(d * 10f64.powf(h), &p).unwrap();
            (b - a) / (2.0 * h)
        };
        assert!((slope(2.0) - 20.0).abs() < 0.1);
        assert!((slope(20.0) - 55.0).abs() < 0.1);
    }

    #[test]
    fn monotone_in_distance() {
        let p = PathLossParams::default();
        let mut prev = f64::NEG_INFINITY;
        for k in 1..500 {
            let v = overall_indoor_pl(k as f64 * 0.1, &p).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn penetration_is_additive() {
        let base = PathLossParams::default();
        let p = PathLossParams { floor_penetration_db: 10.0, wall_penetration_db: 5.0, ..base };
        for d in [1.0, 7.0, 30.0] {
            assert_eq!(overall_indoor_pl(d, &base).unwrap(), indoor_pl(d, &base).unwrap());
            let diff = overall_indoor_pl(d, &p).unwrap() - indoor_pl(d, &p).unwrap();
            assert!((diff - 15.0).abs() < 1e-12);
        }
        let bad = PathLossParams { wall_penetration_db: -1.0, ..base };
        assert!(overall_indoor_pl(1.0, &bad).is_err());
    }

    #[test]
    fn winner_form() {
        let p = PathLossParams { b_coef: 42.0, carrier_ghz: 2.4, ..Default::default() };
        for d in [1.0, 10.0, 100.0] {
            assert_eq!(winner_pl(d, &p).unwrap(), 42.0);
        }
        let p = PathLossParams { a_coef: 18.7, b_coef: 46.8, c_coef: 20.0, ..Default::default() };
        let at5 = winner_pl(10.0, &p).unwrap();
        assert!((at5 - (18.7 + 46.8)).abs() < 1e-12);
        let p = PathLossParams { a_coef: 20.0, b_coef: 46.4, c_coef: 20.0, ..Default::default() };
        assert!((winner_pl(10.0, &p).unwrap() - 66.4).abs() < 1e-9);
        assert!(winner_pl(-1.0, &p).is_err());
    }
}
