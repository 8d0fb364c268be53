// Which primes divide some element of the critical orbit of x^p + c?

use dynfactor::densities::{is_permutation_poly, orbit_density_scan, orbit_hit_mod_q};
use dynfactor::{Rational, UnicriticalMap};

pub fn main() {
    let f = UnicriticalMap::new(3, Rational::one()).unwrap();
    for q in [3u64, 5, 7, 11, 13] {
        let hit = orbit_hit_mod_q(&f, &Rational::zero(), q).unwrap();
        let perm = is_permutation_poly(3, &f.c, q).unwrap();
        println!("q = {q}: first hit {hit:?}, permutation {perm}");
    }

    for (p, c) in [(3u64, "1"), (5, "2"), (7, "-2")] {
        let c: Rational = c.parse().unwrap();
        let rep = orbit_density_scan(p, &c, &Rational::zero(), 20_000).unwrap();
        println!("x^{p} + {c}, q <= {}:", rep.x_max);
        for row in &rep.rows {
            println!("  {}: {}/{}", row.class, row.members_of_p, row.primes_scanned);
        }
        if let Some(all) = &rep.overall_fraction {
            println!("  overall {} vs predicted {}", all.to_f64(), rep.predicted_density.to_f64());
        }
    }
}
