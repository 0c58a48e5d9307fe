//! Every runnable example also runs as a test.

macro_rules! example {
    ($name:ident, $path:literal) => {
        #[path = $path]
        mod $name;

        #[test]
        fn $name() {
            $name::run_example().expect(concat!(stringify!($name), " example failed"));
        }
    };
}

example!(heights, "../examples/heights.rs");
example!(roots_and_mahler, "../examples/roots_and_mahler.rs");
example!(cyclotomic_orbits, "../examples/cyclotomic_orbits.rs");
example!(stabilizers, "../examples/stabilizers.rs");
example!(equilibrium_sampler, "../examples/equilibrium_sampler.rs");
example!(small_points, "../examples/small_points.rs");
example!(pinning, "../examples/pinning.rs");
example!(experiment_runner, "../examples/experiment_runner.rs");
