// The radical decomposition c - α = -y^m and the factors g_a = y^φ(a) Φ_a(x^r / y).

use dynfactor::dynamics::structural_factors;
use dynfactor::qpoly::compose;
use dynfactor::{QPoly, Rational, StabilityProblem, UnicriticalMap};

pub fn main() {
    for (d, c, alpha) in [(5u32, "-32", "0"), (6, "-63", "1"), (4, "-1/16", "0"), (6, "5", "0")] {
        let map = UnicriticalMap::new(d, c.parse::<Rational>().unwrap()).unwrap();
        let problem = StabilityProblem::new(map.clone(), alpha.parse().unwrap()).unwrap();
        let rad = &problem.radical;
        println!("{} - ({alpha}): m = {}, y = {}, r = {}", map.as_poly(), rad.m, rad.y, rad.r);

        let g = structural_factors(&problem).unwrap();
        for (a, ga) in &g {
            println!("  g_{a} = {ga}");
        }
        // the product recovers f^2(x) - α after composing with f
        let f = map.as_poly();
        let product = g.iter().fold(QPoly::one(), |acc, (_, ga)| &acc * &compose(ga, &f));
        let target = &compose(&f, &f) - &QPoly::constant(problem.alpha.clone());
        assert_eq!(product, target);
    }
}
