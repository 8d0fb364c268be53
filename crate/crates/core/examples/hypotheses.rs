// Degree and height conditions for a few pairs (x^d + c, α).

use dynfactor::dynamics::{check_hypotheses, HypothesisConfig};
use dynfactor::{StabilityProblem, UnicriticalMap};

pub fn main() {
    let config = HypothesisConfig::new(0.75, 3.0).unwrap();
    for (d, c, alpha) in [(25u32, "2", "1"), (25, "3", "1"), (4, "3", "0"), (7, "-6", "2"), (11, "-1/3", "1/3")] {
        let map = UnicriticalMap::new(d, c.parse().unwrap()).unwrap();
        let problem = StabilityProblem::new(map.clone(), alpha.parse().unwrap()).unwrap();
        let r = check_hypotheses(&problem, &config);
        println!(
            "{} with alpha = {alpha}: phi={} spf={} not_fixed={} heights={} excluded={} tau(m)={}",
            map.as_poly(),
            r.cond_phi_ratio,
            r.cond_prime_floor,
            r.cond_not_fixed,
            r.cond_heights_positive,
            r.in_exclusion_set,
            r.predicted_factor_count
        );
    }
}
