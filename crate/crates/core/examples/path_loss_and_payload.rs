//! Path loss against distance, the resulting RU rates, and the payload
//! presets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wlan_mac_lab::channel::{mean_payload, overall_indoor_pl, PathLossParams, PayloadDistribution, RateTable, TruncatedExponential};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pl = PathLossParams::default();
    let rates = RateTable::default();
    println!("{:>6} {:>9} {:>14} {:>14}", "d (m)", "loss dB", "26-tone Mbps", "242-tone Mbps");
    for d in [1.0, 2.0, 5.0, 10.0, 15.0, 30.0] {
        let loss = overall_indoor_pl(d, &pl)?;
        println!(
            "{d:>6} {loss:>9.2} {:>14.2} {:>14.2}",
            rates.ru_rate_mbps(loss, 26, 4, 1),
            rates.ru_rate_mbps(loss, 242, 4, 1)
        );
    }
    let flows = PayloadDistribution::flow_size_preset();
    println!("\nflow-size mean: {:.0} bits", mean_payload(&flows)?);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let draws: Vec<f64> = (0..5).map(|_| flows.sample(&mut rng)).collect();
    println!("five flow sizes: {draws:.0?}");
    let delay = TruncatedExponential::delay_preset();
    println!("inter-flow delay mean: {:.3} s", delay.mean());
    Ok(())
}
