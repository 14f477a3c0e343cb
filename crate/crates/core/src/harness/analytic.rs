//! Closed-form models evaluated over parameter sweeps.

use std::collections::BTreeMap;

use crate::analytics::{
    htfa_saturation, ra_markov_solve, ra_throughput, sa_saturation, EsUpper, HtfaModelInput, RaModelInput, Tau,
};
use crate::error::{ConfigError, Error};
use crate::mac::TimingParams;
use crate::sim::{dcf_airtimes, Handshake, PhyParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Random-access backoff chain and saturation throughput.
    Ra,
    /// Multi-sub-channel contention.
    Htfa,
    /// Scheduled access over a trigger cycle.
    Sa,
}

impl Model {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ra" | "markov" | "dcf" => Some(Model::Ra),
            "htfa" => Some(Model::Htfa),
            "sa" => Some(Model::Sa),
            _ => None,
        }
    }

    /// Inputs and their defaults. RA and HTFA defaults reproduce the
    /// contention scenario of the `table61` preset.
    pub fn defaults(self) -> Vec<(&'static str, f64)> {
        let t = TimingParams::new(10, 50, 100, 32, 6).expect("valid preset timing");
        let phy = PhyParams { data_airtime_us: Some(2500), ..PhyParams::default() };
        let a = dcf_airtimes(&t, &phy, 2500);
        let payload = crate::sim::mpdu_bits(&phy) as f64;
        match self {
            Model::Ra => vec![
                ("n", 10.0),
                ("w_min", 32.0),
                ("alpha", 6.0),
                ("sigma_us", 50.0),
                ("t_s_us", a.t_success(Handshake::TwoWay) as f64),
                ("t_c_us", a.t_collision(Handshake::TwoWay) as f64),
                ("payload_bits", payload),
            ],
            Model::Htfa => vec![
                ("n", 10.0),
                ("m", 1.0),
                ("w_min", 32.0),
                ("alpha", 6.0),
                // a negative tau means: derive it from w_min and alpha
                ("tau", -1.0),
                ("payload_bits", payload),
                ("t_total_us", a.t_success(Handshake::TwoWay) as f64),
                ("t_slot_us", 50.0),
            ],
            Model::Sa => vec![("m_rus", 18.0), ("payload_bits", 12_272.0), ("t_cycle_us", 661.0)],
        }
    }
}

/// One output value of one evaluation, in long form.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticRow {
    pub parameter: String,
    pub value: String,
    pub output: &'static str,
    pub result: f64,
}

fn bad(key: &str, msg: impl Into<String>) -> Error {
    ConfigError::Invalid { section: "analytic".into(), key: key.into(), line: None, msg: msg.into() }.into()
}

fn count(p: &BTreeMap<&str, f64>, key: &str) -> Result<u32, Error> {
    let v = p[key];
    if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
        Ok(v as u32)
    } else {
        Err(bad(key, format!("expected a non-negative integer, got {v}")))
    }
}

fn evaluate(model: Model, p: &BTreeMap<&str, f64>) -> Result<Vec<(&'static str, f64)>, Error> {
    Ok(match model {
        Model::Ra => {
            let input = RaModelInput {
                n: count(p, "n")?,
                w_min: count(p, "w_min")?,
                alpha: count(p, "alpha")?,
                sigma_us: p["sigma_us"],
                t_s_us: p["t_s_us"],
                t_c_us: p["t_c_us"],
                mean_payload_bits: p["payload_bits"],
            };
            let fp = ra_markov_solve(&input)?;
            vec![
                ("tau", fp.tau),
                ("p", fp.p),
                ("throughput_mbps", ra_throughput(fp.tau, &input)?),
                ("iterations", fp.iterations as f64),
                ("residual", fp.residual),
            ]
        }
        Model::Htfa => {
            let tau = if p["tau"] < 0.0 {
                Tau::Derive { w_min: count(p, "w_min")?, alpha: count(p, "alpha")? }
            } else {
                Tau::Value(p["tau"])
            };
            let input = HtfaModelInput {
                n: count(p, "n")?,
                m: count(p, "m")?,
                tau,
                mean_payload_bits: p["payload_bits"],
                t_total_us: p["t_total_us"],
                t_slot_us: p["t_slot_us"],
            };
            vec![
                ("throughput_full_mbps", htfa_saturation(&input, EsUpper::FullM)?),
                ("throughput_literal_mbps", htfa_saturation(&input, EsUpper::LiteralMMinus1)?),
            ]
        }
        Model::Sa => vec![("throughput_mbps", sa_saturation(p["m_rus"], p["payload_bits"], p["t_cycle_us"])?)],
    })
}

/// Evaluates `model` with `set` overrides, once per value of `sweep`.
pub fn run_analytic(
    model: Model,
    set: &[(String, f64)],
    sweep: Option<(&str, &[f64])>,
) -> Result<Vec<AnalyticRow>, Error> {
    let defaults = model.defaults();
    let known = |k: &str| {
        defaults.iter().map(|d| d.0).find(|d| *d == k).ok_or_else(|| {
            let names: Vec<&str> = defaults.iter().map(|d| d.0).collect();
            bad(k, format!("unknown input; expected one of {}", names.join(", ")))
        })
    };
    let mut params: BTreeMap<&str, f64> = defaults.iter().copied().collect();
    for (k, v) in set {
        params.insert(known(k)?, *v);
    }
    let points: Vec<(String, String, BTreeMap<&str, f64>)> = match sweep {
        None => vec![(String::new(), String::new(), params)],
        Some((key, values)) => {
            let key = known(key)?;
            if values.is_empty() {
                return Err(bad(key, "sweep is empty"));
            }
            values
                .iter()
                .map(|v| {
                    let mut p = params.clone();
                    p.insert(key, *v);
                    (key.to_string(), super::experiment::fmt_g(*v), p)
                })
                .collect()
        }
    };
    let mut rows = Vec::new();
    for (parameter, value, p) in points {
        for (output, result) in evaluate(model, &p)? {
            rows.push(AnalyticRow { parameter: parameter.clone(), value: value.clone(), output, result });
        }
    }
    Ok(rows)
}

/// Long-form CSV with header `parameter,value,output,result`.
pub fn analytic_csv(rows: &[AnalyticRow]) -> String {
    let mut out = String::from("parameter,value,output,result\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.parameter, r.value, r.output, super::experiment::fmt_g(r.result)));
    }
    out
}
