//! Throughput and collision probability against the number of
//! sub-channels, single radio against one radio per sub-channel.

use wlan_mac_lab::harness::parse_config_with;
use wlan_mac_lab::sim::run;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = "[scenario]\npreset = table61\nseed = 1\nduration_s = 2\n";
    println!("{:>3} {:>12} {:>10} {:>14}", "M", "thr_single", "p_coll", "thr_multi");
    for m in 1..=12 {
        let m = m.to_string();
        let single = run(&parse_config_with(base, "htfa", &[("htfa.m", &m)])?.sim)?;
        let multi = run(&parse_config_with(base, "htfa", &[("htfa.m", &m), ("htfa.multi_channel_tx", "true")])?.sim)?;
        println!(
            "{m:>3} {:>12.3} {:>10.4} {:>14.3}",
            single.throughput_mbps, single.collision_prob, multi.throughput_mbps
        );
    }
    Ok(())
}
