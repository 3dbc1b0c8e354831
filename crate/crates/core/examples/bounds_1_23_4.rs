//! Bounds for 1-23-4 and their n-th roots, exact to order 40 then float.

use genpat::enumerate::Limits;
use genpat::formulas::{bounds_1_23_4, series_1_23_4_float};
use genpat::series::nth_root_of;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = bounds_1_23_4(40, 9, Limits::default())?;
    for v in &report.verdicts {
        println!("n={:2} {:?}", v.n, v.status);
    }
    let (_, upper) = series_1_23_4_float(90);
    for n in [10, 20, 40, 60, 90] {
        let exact = (n <= 40).then(|| nth_root_of(report.upper.coeff(n), n));
        println!("upper root n={n:3}: float {:.10} exact {exact:?}", upper.nth_root(n));
    }
    Ok(())
}
