//! The end-to-end check from a config file, printing the JSON report.
//!
//! `cargo run --example verify_pipeline -- crates/core/data/example_187273.conf`

use std::path::PathBuf;

use eiscong::report::{verify_example, Config};

fn main() -> eiscong::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/example_163.conf")));
    let report = verify_example(&Config::load(&path)?)?;
    println!("{}", report.to_json());
    eprintln!("status: {:?}", report.status);
    Ok(())
}
