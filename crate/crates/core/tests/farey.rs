use primpow::farey::*;
use primpow::words::is_primitive;
use proptest::prelude::*;

#[test]
fn vertex_counts_and_euler_characteristic() {
    for (k, v) in [(2, 3), (3, 4), (4, 6), (5, 12)] {
        let c = quotient_complex(k, DEFAULT_RADIUS).unwrap();
        assert_eq!(c.vertex_count(), v, "k = {k}");
        assert!(c.is_closed());
        assert_eq!(c.euler_characteristic(), 2, "k = {k}");
        assert_eq!(normal_generators(k, DEFAULT_RADIUS).unwrap().len(), v, "k = {k}");
    }
}

#[test]
fn generators_are_primitive_powers_of_their_slope() {
    for k in 2..=6 {
        for g in normal_generators(k, 2).unwrap() {
            assert!(is_primitive(&g.base), "{}", g.base);
            let (x, y) = g.base.abelianize();
            let (p, q) = (g.slope.p(), g.slope.q());
            assert!((x, y) == (p, q) || (x, y) == (-p, -q), "{} at {}", g.base, g.slope);
            assert_eq!(g.power, k);
        }
    }
}

#[test]
fn k_six_generators_grow_with_radius() {
    let counts: Vec<usize> = (1..=3).map(|r| normal_generators(6, r).unwrap().len()).collect();
    assert!(counts.windows(2).all(|w| w[0] < w[1]), "{counts:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stern_brocot_matrix_sends_infinity_to_the_slope(p in -10_000i64..=10_000, q in -10_000i64..=10_000) {
        prop_assume!(num_integer::gcd(p, q) == 1);
        let s = Slope::new(p, q).unwrap();
        prop_assert_eq!(mobius(stern_brocot_matrix(&s), &Slope::INFINITY), s);
    }
}
