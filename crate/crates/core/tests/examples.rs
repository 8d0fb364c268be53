//! Runs every example so they stay in sync with the library.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::main();
        }
    };
}

example!(factor_polynomials);
example!(stability);
example!(structural_factors);
example!(binomials);
example!(hypotheses);
example!(orbit_density);
example!(degree_density);
example!(orbit_heights);
