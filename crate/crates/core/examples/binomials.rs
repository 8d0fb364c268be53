// Capelli's criterion for x^d - a, and power witnesses.

use dynfactor::radicals::{capelli_obstructions, find_power_witness};
use dynfactor::{QPoly, Rational};

pub fn main() {
    for (d, a) in [(4u64, "-4"), (6, "2"), (2, "9/4"), (12, "-324"), (8, "16")] {
        let a: Rational = a.parse().unwrap();
        let obs = capelli_obstructions(d, &a).unwrap();
        let verdict = if obs.is_empty() { "irreducible" } else { "reducible" };
        let f = &QPoly::monomial(Rational::one(), d as usize) - &QPoly::constant(a.clone());
        println!("{f}: {verdict}");
        for o in obs {
            println!("  {}", o.reason());
        }
    }
    for (v, d) in [("-27", 3u64), ("-64", 4), ("5", 3)] {
        let v: Rational = v.parse().unwrap();
        let w = find_power_witness(&v, d).unwrap();
        println!("witnesses for {v} with d = {d}: {w:?}");
    }
}
