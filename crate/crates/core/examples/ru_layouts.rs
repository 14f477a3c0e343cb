//! RU trees for every bandwidth, and a few merge checks.

use wlan_mac_lab::ru::{enumerate_valid_partitions, Bandwidth, RuLayout};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for b in Bandwidth::ALL {
        println!("{}", RuLayout::standard(b).dump());
    }
    let l40 = RuLayout::standard(Bandwidth::Mhz40);
    for set in [[15, 16], [14, 15], [16, 17], [1, 2]] {
        println!("merge {set:?} on 40 MHz: {}", l40.can_merge(&set)?);
    }
    let l20 = RuLayout::standard(Bandwidth::Mhz20);
    println!("valid partitions of the 20 MHz line: {}", enumerate_valid_partitions(&l20, usize::MAX).len());
    Ok(())
}
