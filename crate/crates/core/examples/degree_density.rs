// Degrees with all prime factors above a floor, against Mertens' product.

use dynfactor::densities::{degree_condition_density, good_degree_count, mertens_asymptotic, mertens_product};

pub fn main() {
    let x = 1_000_000;
    for m in [2u64, 3, 5, 7, 11, 13] {
        let count = good_degree_count(x, m);
        println!(
            "M = {m:>2}: density {:.6}, c_M = {} ({:.6}), e^-gamma/ln M = {:.6}",
            count as f64 / x as f64,
            mertens_product(m),
            mertens_product(m).to_f64(),
            mertens_asymptotic(m).unwrap()
        );
    }
    for (c1, c2) in [(0.5, 2.0), (0.75, 5.0), (0.9, 11.0)] {
        let r = degree_condition_density(c1, c2, 100_000).unwrap();
        println!("phi(d) > {c1} d, spf(d) > {c2}: {} of {}", r.count, r.x_max);
    }
}
