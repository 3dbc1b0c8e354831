//! Parse a dashed pattern and list its occurrences in a permutation.
//!
//! cargo run --example occurrences -- 12-4-3 3542716

use genpat::pattern::{find_occurrences, GeneralizedPattern, Permutation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let pat: GeneralizedPattern = args.next().as_deref().unwrap_or("12-4-3").parse()?;
    let perm: Permutation = args.next().as_deref().unwrap_or("3542716").parse()?;

    let found = find_occurrences(&perm, &pat, None);
    println!("{perm} has {} occurrence(s) of {pat}", found.len());
    for occ in &found {
        println!("  positions {:?} values {:?}", occ.indices, occ.values(&perm));
    }
    println!("reverse {}  complement {}", pat.reverse(), pat.complement());
    Ok(())
}
