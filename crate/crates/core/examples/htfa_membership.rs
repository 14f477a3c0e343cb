//! Sub-channel membership as stations join and leave.

use wlan_mac_lab::sched::{htfa_distribute, htfa_join, htfa_leave, HtfaState, Station, StationId};

fn show(label: &str, s: &HtfaState) {
    let chans: Vec<String> = s
        .channels()
        .iter()
        .map(|c| c.iter().map(|id| id.as_str()).collect::<Vec<_>>().join(","))
        .collect();
    println!("{label:<14} [{}]", chans.join(" | "));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 4;
    let initial: Vec<Station> = ["S1", "S2"].iter().map(|id| Station::new(*id, 1.0)).collect();
    let mut state = htfa_distribute(&initial, m)?;
    show("start", &state);
    for id in ["S3", "S4", "S5", "S6"] {
        state = htfa_join(&state, &Station::new(id, 1.0))?;
        show(&format!("join {id}"), &state);
    }
    for id in ["S1", "S4", "S5", "S6"] {
        state = htfa_leave(&state, &StationId::new(id))?;
        show(&format!("leave {id}"), &state);
    }
    state.check()?;
    Ok(())
}
