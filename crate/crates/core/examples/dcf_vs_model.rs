//! Legacy DCF simulation against the backoff-chain model for a range of
//! station counts.

use wlan_mac_lab::analytics::{ra_markov_solve, ra_throughput, RaModelInput};
use wlan_mac_lab::harness::parse_config_with;
use wlan_mac_lab::sim::{dcf_airtimes, mpdu_bits, run, Handshake};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = "[scenario]\npreset = table61\nprotocol = dcf\nseed = 1\n";
    println!("{:>3} {:>9} {:>9} {:>10} {:>10}", "n", "p_sim", "p_model", "thr_sim", "thr_model");
    for n in [2, 5, 10, 20] {
        let n_s = n.to_string();
        let mut p = 0.0;
        let mut thr = 0.0;
        let seeds = 5;
        let mut cfg = None;
        for seed in 1..=seeds {
            let s = parse_config_with(base, "dcf", &[("scenario.stations", &n_s), ("scenario.seed", &seed.to_string())])?;
            let m = run(&s.sim)?;
            p += m.collision_prob / seeds as f64;
            thr += m.throughput_mbps / seeds as f64;
            cfg = Some(s.sim);
        }
        let c = cfg.unwrap();
        let air = dcf_airtimes(&c.timing, &c.phy, c.phy.data_airtime_us.unwrap_or(0));
        let input = RaModelInput {
            n,
            w_min: c.timing.w_min,
            alpha: c.timing.alpha,
            sigma_us: c.timing.slot_us as f64,
            t_s_us: air.t_success(Handshake::TwoWay) as f64,
            t_c_us: air.t_collision(Handshake::TwoWay) as f64,
            mean_payload_bits: mpdu_bits(&c.phy) as f64,
        };
        let fp = ra_markov_solve(&input)?;
        println!("{n:>3} {p:>9.4} {:>9.4} {thr:>10.3} {:>10.3}", fp.p, ra_throughput(fp.tau, &input)?);
    }
    Ok(())
}
