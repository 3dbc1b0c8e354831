//! A_{1-σ} = exp(∫ A_σ), checked against brute force on the pattern 1-σ'.
//!
//! cargo run --release --example one_dash_sigma -- 132

use genpat::enumerate::count_sequence;
use genpat::formulas::{a_consecutive_egf, a_one_dash_sigma, shared_radius_deviation};
use genpat::GeneralizedPattern;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma: GeneralizedPattern = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("132")
        .parse()?;
    let one_dash = GeneralizedPattern::one_dash(&sigma);

    let series = a_one_dash_sigma(&a_consecutive_egf(&sigma, 9)?)?;
    let brute = count_sequence(&one_dash, 9)?;
    let from_series = series.integer_counts().expect("integer counts");
    for (n, (s, b)) in from_series.iter().zip(&brute.counts).enumerate() {
        println!("n={n:2}  series {s:>8}  brute force {b:>8}");
    }

    let dev = shared_radius_deviation(&a_consecutive_egf(&sigma, 60)?, 60)?;
    println!("|root_60({one_dash}) / root_60({sigma}) - 1| = {dev:.4}");
    Ok(())
}
