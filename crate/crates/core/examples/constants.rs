//! Growth constants and the Bell asymptotic.

use genpat::asympt::{bell_asymptotic, bell_lambda, gamma2, rho1, rho2};
use genpat::formulas::bell_egf;
use num_traits::ToPrimitive;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("rho1   = {:.10}", rho1());
    println!("rho2   = {:.10}", rho2(1e-12)?);
    println!("gamma2 = {:.10}", gamma2());

    let bell = bell_egf(60).integer_counts().expect("integer counts");
    for n in [10, 30, 60] {
        let ratio = bell_asymptotic(n) / bell[n].to_f64().unwrap();
        println!("n={n:2} lambda={:.6} asymptotic/B_n={ratio:.6}", bell_lambda(n as f64));
    }
    Ok(())
}
