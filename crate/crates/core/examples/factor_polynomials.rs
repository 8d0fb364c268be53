// Factor a few polynomials over ℚ and inspect the modular machinery underneath.

use dynfactor::factorizer::{factor_mod_p, factor_over_q, hensel_lift, mignotte_bound};
use dynfactor::QPoly;

pub fn main() {
    for text in ["x^4 + 4", "x^2 - 16/9", "x^12 - 1", "2x^5 - 2x", "x^4 + 1"] {
        let f: QPoly = text.parse().unwrap();
        let fac = factor_over_q(&f, 0).expect("nonzero input");
        let parts: Vec<String> = fac
            .factors
            .iter()
            .map(|(g, m)| if *m > 1 { format!("({g})^{m}") } else { format!("({g})") })
            .collect();
        println!("{f} = {} * {}", fac.unit, parts.join(" * "));
        assert_eq!(fac.reassemble(), f);
    }

    // x^4 + 1 splits modulo every prime yet is irreducible over ℚ
    let f: QPoly = "x^4 + 1".parse().unwrap();
    for p in [3u64, 5, 7, 13, 17] {
        let m = factor_mod_p(&f, p, 0).unwrap();
        println!("x^4 + 1 mod {p}: factor degrees {:?}", m.degrees());
    }

    let g: QPoly = "x^2 - 7".parse().unwrap();
    let (_, z) = g.to_primitive_zpoly();
    let m = factor_mod_p(&g, 3, 0).unwrap();
    let lifted = hensel_lift(&z, &m, 4).unwrap();
    println!("x^2 - 7 mod 3^4: {}", lifted.iter().map(|h| format!("({h})")).collect::<String>());
    println!("coefficient bound for x^2 - 7: {}", mignotte_bound(&z));
}
