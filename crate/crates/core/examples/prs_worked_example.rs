//! Proportional SA/RA zoning for five scheduled and three random-access
//! stations on a 40 MHz channel.

use wlan_mac_lab::harness::prs_worked_example;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ex = prs_worked_example()?;
    print!("{}", ex.report());
    println!("\nCSV:\n{}", ex.plan.assignment.to_csv());
    Ok(())
}
