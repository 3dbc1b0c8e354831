//! Exact EGF arithmetic: the named series for 123 and 132 and their counts.

use genpat::formulas::{a123_egf, a132_egf, bell_egf, catalan_egf};
use genpat::series::{rat, EgfSeries, FloatSeries};

fn main() {
    let order = 12;
    for (name, s) in [
        ("Bell", bell_egf(order)),
        ("Catalan", catalan_egf(order)),
        ("A_123", a123_egf(order)),
        ("A_132", a132_egf(order)),
    ] {
        let counts: Vec<String> = s
            .integer_counts()
            .expect("integer counts")
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("{name:8} {}", counts.join(", "));
    }

    // 1/(1-z) composed with e^z - 1 gives the ordered set partitions
    let geometric = EgfSeries::one(8).sub(&EgfSeries::z(8)).reciprocal().unwrap();
    let e_minus_one = EgfSeries::exp_z(8).add_constant(&rat(-1, 1));
    let fubini = geometric.compose(&e_minus_one).unwrap();
    println!("Fubini   {fubini}");

    // the float mirror reaches orders where f64 coefficients would underflow
    let bell_200 = FloatSeries::exp_z(200).add_constant(-1.0).exp_series().unwrap();
    println!("log10 B_200 = {:.6}", bell_200.ln_abs_count(200) / std::f64::consts::LN_10);
}
