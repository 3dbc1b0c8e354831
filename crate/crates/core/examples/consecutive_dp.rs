//! Consecutive patterns through the transfer DP, far past brute-force range.
//!
//! cargo run --release --example consecutive_dp -- 132 60

use genpat::asympt::{estimate_growth, GrowthMethod};
use genpat::enumerate::count_consecutive_dp;
use genpat::GeneralizedPattern;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let pat: GeneralizedPattern = args.next().as_deref().unwrap_or("132").parse()?;
    let n: usize = args.next().as_deref().unwrap_or("60").parse()?;

    let seq = count_consecutive_dp(&pat, n)?;
    println!("alpha_{n}({pat}) = {}", seq.counts[n]);
    for method in [GrowthMethod::ConsecutiveRatio, GrowthMethod::NthRoot] {
        let report = estimate_growth(&seq, method, None)?;
        println!("{method:?}: {:.10}", report.growth_estimate);
    }
    Ok(())
}
