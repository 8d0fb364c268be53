// Count irreducible factors of f^n(x) - α for a few unicritical maps.

use dynfactor::dynamics::stability_report;
use dynfactor::{Rational, StabilityProblem, UnicriticalMap};

pub fn main() {
    let cases = [(5u32, "-32", "0", 2u32), (2, "-16/9", "0", 4), (2, "1", "0", 3), (3, "2", "1", 3)];
    for (d, c, alpha, n) in cases {
        let map = UnicriticalMap::new(d, c.parse::<Rational>().unwrap()).unwrap();
        let problem = StabilityProblem::new(map.clone(), alpha.parse().unwrap()).unwrap();
        let report = stability_report(&problem, n, 0).unwrap();
        println!(
            "{} - ({alpha}): m = {}, tau(m) = {}",
            map.as_poly(),
            problem.radical.m,
            report.predicted
        );
        for row in &report.rows {
            println!(
                "  n={} factors={} degrees={:?} structural={}",
                row.n, row.distinct_factor_count, row.degrees, row.structural_match
            );
        }
    }
}
