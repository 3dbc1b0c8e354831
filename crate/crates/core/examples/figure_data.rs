//! Write the three figure CSVs into a directory (default: current).
//!
//! cargo run --release --example figure_data -- /tmp/figs

use std::fs::File;
use std::path::PathBuf;

use genpat::cli::{figure, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let mut session = Session::plain(false);
    for which in 1..=3 {
        let path = dir.join(format!("figure{which}.csv"));
        figure(&mut session, which, File::create(&path)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
