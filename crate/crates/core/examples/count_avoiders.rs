//! Count avoiders of any generalized pattern by pruned backtracking.
//!
//! cargo run --release --example count_avoiders -- 1-23-4 10

use genpat::enumerate::{count_sequence_with, Limits};
use genpat::GeneralizedPattern;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let pat: GeneralizedPattern = args.next().as_deref().unwrap_or("1-23-4").parse()?;
    let n: usize = args.next().as_deref().unwrap_or("10").parse()?;

    let seq = count_sequence_with(&pat, n, Limits::default())?;
    for (k, a) in seq.counts.iter().enumerate() {
        println!("alpha_{k}({pat}) = {a}");
    }
    Ok(())
}
