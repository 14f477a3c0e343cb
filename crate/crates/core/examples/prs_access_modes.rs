//! All-scheduled, hybrid and all-random-access PRS cells with hidden
//! station pairs.

use wlan_mac_lab::harness::parse_config_with;
use wlan_mac_lab::sim::run;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = "[scenario]\npreset = table65\nseed = 1\nduration_s = 2\nhidden_pairs = adjacent\n";
    for d in ["sa", "hybrid", "ra"] {
        let m = run(&parse_config_with(base, "prs", &[("prs.distribution", d)])?.sim)?;
        println!(
            "{d:<7} throughput {:>8.2} Mbit/s  goodput {:>8.2}  retransmissions {:>6}  jain {:.3}",
            m.throughput_mbps, m.goodput_mbps, m.retransmissions, m.jain
        );
    }
    Ok(())
}
