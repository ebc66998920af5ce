use primpow::cyclotomic::{CycMatrix, CycNum};
use primpow::farey::Slope;
use primpow::reps::*;
use primpow::words::{self, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn every_builtin_passes_its_witness() {
    for b in Builtin::catalogue() {
        let check = check_characteristic(&b.rep(), &b.witness());
        assert!(check.passed(), "{b}: {:?}", check.failures);
    }
}

#[test]
fn printed_witnesses_use_identity_for_the_orientation_reversing_slot() {
    for b in Builtin::catalogue() {
        if matches!(b, Builtin::TildeRhoOdd(_)) {
            continue;
        }
        assert!(b.witness().m_minus.is_identity(), "{b}");
    }
}

#[test]
fn commutator_is_a_root_of_unity_scalar() {
    for k in [3u32, 5, 7] {
        let rep = Builtin::RhoOdd(k).rep();
        let c = rep.evaluate(&Word::commutator(&Word::a(), &Word::b()));
        let expect = CycMatrix::identity(k as usize, k).scale(&CycNum::zeta_pow(k, -1));
        assert!(c.same_value(&expect), "k = {k}");
    }
}

#[test]
fn rho2_of_ab() {
    let rep = Builtin::Rho2.rep();
    let expect = CycMatrix::from_int_rows(1, &[vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]);
    assert!(rep.evaluate(&w("ab")).same_value(&expect));
}

#[test]
fn ttrho4_of_commutator_squared() {
    let rep = Builtin::TildeTildeRho4.rep();
    let mut expect = CycMatrix::identity(9, 4);
    expect.set(0, 8, CycNum::gaussian(0, 2));
    expect.set(5, 8, CycNum::gaussian(0, 2));
    assert!(rep
        .evaluate(&Word::commutator(&Word::a(), &Word::b()).pow(2))
        .same_value(&expect));
}

#[test]
fn builtin_shapes() {
    let r4 = Builtin::Rho4.rep();
    assert!(r4.img_a().same_value(&parse_matrix(4, &["i 0", "0 -i"])));
    assert!(r4.img_b().same_value(&parse_matrix(4, &["0 1", "-1 0"])));
    let t5 = Builtin::TildeRhoOdd(5).rep();
    assert_eq!(t5.dim(), 6);
    let col: Vec<CycNum> = (0..5).map(|i| t5.img_b().get(i, 5).clone()).collect();
    let expect: Vec<CycNum> = [0, 1, 0, -1, 0].iter().map(|&x| CycNum::from_int(5, x)).collect();
    assert_eq!(col, expect);
    let tt = Builtin::TildeTildeRho4.rep();
    assert_eq!(tt.dim(), 9);
    assert!(tt.img_a().same_value(&parse_matrix(
        4,
        &[
            "1 0 0 0 0 0 0 0 0",
            "0 -1 0 0 0 0 0 0 0",
            "0 0 -i 0 0 0 0 0 0",
            "0 0 0 -i 0 0 0 0 0",
            "0 0 0 0 -1 0 0 0 0",
            "0 0 0 0 0 1 0 0 0",
            "0 0 0 0 0 0 i 0 0",
            "0 0 0 0 0 0 0 i 0",
            "0 0 0 0 0 0 0 0 1",
        ]
    )));
}

#[test]
fn rho6_is_the_printed_tensor_product() {
    let r6 = Builtin::Rho6.rep();
    let a = parse_matrix(
        3,
        &[
            "-1 0 0 0 0 0 0 0 0",
            "0 -w 0 0 0 0 0 0 0",
            "0 0 -w^2 0 0 0 0 0 0",
            "0 0 0 -1 0 0 0 0 0",
            "0 0 0 0 -w 0 0 0 0",
            "0 0 0 0 0 -w^2 0 0 0",
            "0 0 0 0 0 0 1 0 0",
            "0 0 0 0 0 0 0 w 0",
            "0 0 0 0 0 0 0 0 w^2",
        ],
    );
    let b = parse_matrix(
        3,
        &[
            "0 1 0 0 0 0 0 0 0",
            "0 0 1 0 0 0 0 0 0",
            "1 0 0 0 0 0 0 0 0",
            "0 0 0 0 -1 0 0 0 0",
            "0 0 0 0 0 -1 0 0 0",
            "0 0 0 -1 0 0 0 0 0",
            "0 0 0 0 0 0 0 -1 0",
            "0 0 0 0 0 0 0 0 -1",
            "0 0 0 0 0 0 -1 0 0",
        ],
    );
    assert!(r6.img_a().same_value(&a));
    assert!(r6.img_b().same_value(&b));
}

#[test]
fn conjugation_is_an_involution() {
    let r4 = Builtin::Rho4.rep();
    let back = conj_rep(&conj_rep(&r4));
    assert!(back.img_a().same_value(r4.img_a()) && back.img_b().same_value(r4.img_b()));
}

#[test]
fn conj_rho4_tensor_trho4_is_the_top_left_block_of_ttrho4() {
    let prod = tensor(&conj_rep(&Builtin::Rho4.rep()), &Builtin::TildeRho4.rep());
    let tt = Builtin::TildeTildeRho4.rep();
    assert!(prod.img_a().same_value(&tt.img_a().block(0, 8, 0, 8)));
    assert!(prod.img_b().same_value(&tt.img_b().block(0, 8, 0, 8)));
}

#[test]
fn tensor_and_conjugate_witnesses_combine() {
    let pairs = [
        (Builtin::Rho2, Builtin::RhoOdd(3)),
        (Builtin::Rho4, Builtin::TildeRho4),
        (Builtin::RhoOdd(3), Builtin::Rho4),
    ];
    for (x, y) in pairs {
        let rep = tensor(&x.rep(), &y.rep());
        let wit = x.witness().tensor(&y.witness());
        assert!(check_characteristic(&rep, &wit).passed(), "{x} ⊗ {y}");
        let c = conj_rep(&x.rep());
        assert!(check_characteristic(&c, &x.witness().conj()).passed(), "conj {x}");
    }
}

#[test]
fn solved_witnesses_pass() {
    for b in [
        Builtin::RhoOdd(3),
        Builtin::Rho4,
        Builtin::TildeRho4,
        Builtin::TildeRhoOdd(5),
        Builtin::TildeTildeRho4,
    ] {
        let rep = b.rep();
        let wit = solve_witness(&rep).unwrap_or_else(|| panic!("{b} has no witness"));
        assert!(check_characteristic(&rep, &wit).passed(), "{b}");
    }
}

#[test]
fn solved_rho3_witness_is_a_multiple_of_the_fourier_matrix() {
    let rep = Builtin::RhoOdd(3).rep();
    let wit = solve_witness(&rep).unwrap();
    let dft = Builtin::RhoOdd(3).witness().m1;
    let ratio = wit.m1.get(0, 0).div(dft.get(0, 0)).unwrap();
    assert!(wit.m1.same_value(&dft.scale(&ratio)));
}

#[test]
fn generic_rep_has_no_witness() {
    let a = parse_matrix(5, &["1 2", "0 w"]);
    let b = parse_matrix(5, &["3 0", "1 1"]);
    let rep = Rep::new("generic", a, b).unwrap();
    assert!(solve_witness(&rep).is_none());
}

#[test]
fn image_orders() {
    let order = |b: Builtin| image_closure(&b.rep(), DEFAULT_IMAGE_BOUND).unwrap().order();
    assert_eq!(order(Builtin::Rho2), 4);
    assert_eq!(order(Builtin::Rho4), 8);
    assert_eq!(order(Builtin::RhoOdd(3)), 27);
    assert_eq!(order(Builtin::Rho6), 108);
    assert!(matches!(
        image_closure(&Builtin::TildeRho4.rep(), 100),
        Err(RepError::Overflow { bound: 100 })
    ));
}

/// `C2 × C2 × H(Z/3)`: order 108, an element of order 6, none of order 4 or 9.
#[test]
fn rho6_image_element_orders() {
    let img = image_closure(&Builtin::Rho6.rep(), DEFAULT_IMAGE_BOUND).unwrap();
    let orders: Vec<u32> = img
        .elements
        .iter()
        .map(|m| (1..=12).find(|&e| m.pow(e).is_identity()).unwrap())
        .collect();
    assert!(orders.iter().all(|o| [1, 2, 3, 6].contains(o)));
    assert_eq!(orders.iter().filter(|&&o| o == 1).count(), 1);
    assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
}

#[test]
fn additive_span_ranks() {
    let rank = |b: Builtin| additive_span_rank(&b.rep(), DEFAULT_IMAGE_BOUND).unwrap();
    assert_eq!(rank(Builtin::RhoOdd(3)), 18);
    assert_eq!(rank(Builtin::Rho2), 3);
    assert_eq!(rank(Builtin::Rho4), 4);
}

#[test]
fn kernel_membership() {
    let check = |b: Builtin, k| kernel_contains_pk(&b.rep(), &b.witness(), k, 0).unwrap();
    assert!(check(Builtin::TildeRho4, 4));
    assert!(check(Builtin::TildeRho6, 6));
    assert!(check(Builtin::TildeTildeRho4, 4));
    assert!(!check(Builtin::Rho4, 3));
    let mut bad = Builtin::Rho4.witness();
    bad.m2 = CycMatrix::identity(2, 4);
    assert!(matches!(
        kernel_contains_pk(&Builtin::Rho4.rep(), &bad, 4, 0),
        Err(RepError::MissingWitness(_))
    ));
}

#[test]
fn multitwist_invariant() {
    let r3 = Builtin::RhoOdd(3).rep();
    assert!(multitwist_check(&r3, &Slope::INFINITY, 3, 50, 0).unwrap());
    let r4 = Builtin::Rho4.rep();
    assert!(multitwist_check(&r4, &Slope::integer(1), 4, 50, 0).unwrap());
    assert!(matches!(
        multitwist_check(&r4, &Slope::INFINITY, 2, 1, 0),
        Err(RepError::Precondition(_))
    ));
}

#[test]
fn generator_orders() {
    for k in [3u32, 5, 7] {
        let rep = Builtin::RhoOdd(k).rep();
        for g in ["a", "b"] {
            let m = rep.evaluate(&w(g));
            assert!(m.pow(k).is_identity());
            assert!((1..k).all(|e| !m.pow(e).is_identity()));
        }
    }
    let tt = Builtin::TildeTildeRho4.rep();
    assert!(tt.img_a().pow(4).is_identity());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>(), pick in 0usize..11) {
        let b = Builtin::catalogue()[pick];
        let rep = b.rep();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = words::random_word(&mut rng, 10);
        let v = words::random_word(&mut rng, 10);
        let lhs = rep.evaluate(&u.mul(&v));
        let rhs = rep.evaluate(&u).mul(&rep.evaluate(&v));
        prop_assert!(lhs.same_value(&rhs));
    }
}
