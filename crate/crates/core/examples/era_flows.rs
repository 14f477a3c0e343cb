//! Load classification and RU assignment over successive flows until every
//! queued station has been served once.

use wlan_mac_lab::ru::{Bandwidth, RuLayout};
use wlan_mac_lab::sched::{era_assign, era_classify, EraQueues, Station};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let stations: Vec<Station> = [("A", 4.0), ("B", 1.5), ("C", 2.7), ("D", 30.0), ("E", 3.0), ("F", 9.0), ("G", 1.0)]
        .iter()
        .map(|(id, load)| Station::new(*id, *load))
        .collect();
    let classes = era_classify(&stations, 2.0)?;
    for (s, c) in stations.iter().zip(&classes) {
        println!("{:<2} load {:>5} -> {}", s.id, s.load, c.name());
    }
    let layout = RuLayout::binary(Bandwidth::Mhz20);
    let mut queues = EraQueues::from_classified(&stations, &classes);
    let mut flow = 1;
    while !queues.is_empty() {
        println!("\nflow {flow}");
        print!("{}", era_assign(&mut queues, &layout)?.to_text());
        flow += 1;
    }
    Ok(())
}
