//! The full certificate report the CLI prints, built through the library.

use quiverpoly::report::{certificate_report, ReportOptions};
use quiverpoly::Quiver;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = Quiver::bipartite(3, 5)?;
    let report = certificate_report(&q, "bipartite:3,5", Some((3, 5)), &ReportOptions::default())?;
    println!("{report}");
    println!("guarantees hold: {}", report.guarantees_hold());
    println!("{}", serde_json::to_string_pretty(&report.neighborliness)?);
    Ok(())
}
