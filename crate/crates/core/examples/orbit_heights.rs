// Heights along critical orbits, and the periodicity test.

use dynfactor::dynamics::{critical_orbit, critical_orbit_prefix, height_arg, is_periodic_basepoint};
use dynfactor::qnum::weil_height;
use dynfactor::{Rational, UnicriticalMap};

pub fn main() {
    let f = UnicriticalMap::new(3, Rational::one()).unwrap();
    println!("x^3 + 1 orbit of 0: {:?}", critical_orbit(&f, 4).unwrap());

    let g = UnicriticalMap::new(5, "2/3".parse().unwrap()).unwrap();
    let (orbit, complete) = critical_orbit_prefix(&g, 8, 20_000);
    println!("x^5 + 2/3: h(c) = {:.4}", weil_height(&g.c).value);
    for (i, x) in orbit.iter().enumerate() {
        println!("  h(f^{}(0)) = {:.4}, {} bits", i + 1, weil_height(x).value, height_arg(x).bits());
    }
    if !complete {
        println!("  stopped at the bit cap");
    }

    for (d, c) in [(2u32, "-1"), (2, "1"), (2, "-2"), (3, "-1"), (2, "-3/4")] {
        let f = UnicriticalMap::new(d, c.parse().unwrap()).unwrap();
        println!("0 periodic under {}: {}", f.as_poly(), is_periodic_basepoint(&f, &Rational::zero()));
    }
}
