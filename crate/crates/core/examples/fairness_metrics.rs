//! Jain index and the max-min spread of load-normalised throughput for a
//! few allocations. A spread of 0 means every station got the same share
//! of its offered load.

use wlan_mac_lab::analytics::{jain_index, max_min_fairness, system_throughput};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let loads = [12.0, 18.0, 24.0];
    let cases: [(&str, [f64; 3]); 3] = [
        ("equal shares", [18.0, 18.0, 18.0]),
        ("load-proportional", [12.0, 18.0, 24.0]),
        ("one starved", [27.0, 27.0, 0.0]),
    ];
    for (name, t) in cases {
        println!(
            "{name:<18} total {:>5.1}  jain {:.4}  maxmin F {:.4}",
            system_throughput(&t),
            jain_index(&t)?,
            max_min_fairness(&t, &loads)?
        );
    }
    Ok(())
}
