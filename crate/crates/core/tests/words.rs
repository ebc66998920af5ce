use primpow::words::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word_from(seed: u64, max_len: usize) -> Word {
    random_word(&mut ChaCha8Rng::seed_from_u64(seed), max_len)
}

fn named_automorphisms() -> Vec<(&'static str, Automorphism)> {
    vec![
        ("psi0", Automorphism::psi0()),
        ("psi1", Automorphism::psi1()),
        ("psi2", Automorphism::psi2()),
        ("psi_minus", Automorphism::psi_minus()),
        ("right_twist(3)", Automorphism::right_twist(3)),
        ("left_twist(-2)", Automorphism::left_twist(-2)),
        ("inner(abA)", Automorphism::inner(&"abA".parse().unwrap())),
    ]
}

fn apply_matrix(m: [[i64; 2]; 2], v: (i64, i64)) -> (i64, i64) {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

#[test]
fn psi0_cubed_and_psi1_fourth_are_the_identity() {
    assert!(Automorphism::psi0().pow(3).forward().is_identity());
    assert!(Automorphism::psi1().pow(4).forward().is_identity());
    assert!(!Automorphism::psi1().pow(2).forward().is_identity());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_is_idempotent(seed in any::<u64>()) {
        let w = word_from(seed, 30);
        let again = Word::from_letters(w.letters());
        prop_assert_eq!(&again, &w);
        prop_assert_eq!(w.mul(&w.inv()), Word::identity());
    }

    #[test]
    fn multiplication_is_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (x, y, z) = (word_from(s1, 20), word_from(s2, 20), word_from(s3, 20));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn automorphisms_invert(seed in any::<u64>(), pick in 0usize..7) {
        let (_, phi) = &named_automorphisms()[pick];
        let w = word_from(seed, 25);
        prop_assert_eq!(phi.apply_inverse(&phi.apply(&w)), w.clone());
        prop_assert_eq!(phi.inverse().apply(&phi.apply(&w)), w);
    }

    #[test]
    fn primitivity_is_a_conjugacy_and_inversion_invariant(seed in any::<u64>(), h in any::<u64>(), prim in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = if prim { random_primitive(&mut rng, 6) } else { random_word(&mut rng, 12) };
        let p = is_primitive(&w);
        if prim {
            prop_assert!(p);
        }
        let g = word_from(h, 8);
        prop_assert_eq!(is_primitive(&w.conjugate_by(&g)), p);
        prop_assert_eq!(is_primitive(&w.inv()), p);
    }

    #[test]
    fn abelianization_intertwines(seed in any::<u64>(), pick in 0usize..4) {
        let (name, phi) = &named_automorphisms()[pick];
        let w = word_from(seed, 30);
        let m = phi.forward().abelian_matrix();
        prop_assert_eq!(phi.apply(&w).abelianize(), apply_matrix(m, w.abelianize()), "{}", name);
    }
}
