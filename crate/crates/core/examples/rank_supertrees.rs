//! Enumerates every 3-uniform supertree with six edges and ranks them.
//!
//! `cargo run --example rank_supertrees -- json` prints the JSON report.

use supertree::ordering::{rank_spectra, Method, Settings};
use supertree::Result;

fn main() -> Result<()> {
    let report = rank_spectra(6, 3, Method::Power, &Settings::default())?;
    match std::env::args().nth(1).as_deref() {
        Some("json") => println!("{}", report.to_json()),
        Some("csv") => print!("{}", report.to_csv()),
        _ => print!("{}", report.to_table()),
    }
    Ok(())
}
