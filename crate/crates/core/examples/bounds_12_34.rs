//! e^S < A_{12-34} < e^{S + e^z + z - 1}, coefficient by coefficient.

use genpat::enumerate::Limits;
use genpat::expoly::{b_closed, c_closed};
use genpat::formulas::bounds_12_34;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("b_2 = {}", b_closed(2));
    println!("c_1 = {}", c_closed(1));

    let report = bounds_12_34(20, 9, Limits::default())?;
    let (lower, upper) = (report.lower.counts(), report.upper.counts());
    for v in &report.verdicts {
        println!(
            "n={:2}  {} <= {} <= {}  {:?}",
            v.n, lower[v.n], report.bruteforce.counts[v.n], upper[v.n], v.status
        );
    }
    Ok(())
}
