use num_bigint::BigInt;
use primpow::cyclotomic::CycMatrix;
use primpow::kernels::*;
use primpow::reps::{Builtin, DEFAULT_IMAGE_BOUND};
use primpow::words::Word;
use proptest::prelude::*;
use std::time::Instant;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

#[test]
fn lambda_prime_index_is_two_to_the_seven() {
    let lp = IntLattice::from_gaussian_pairs(&[
        ((-2, -2), (2, -2)),
        ((-2, 2), (2, 2)),
        ((4, 0), (0, 0)),
        ((0, 0), (0, 4)),
    ]);
    let s = lp.snf();
    assert_eq!(s.rank, 4);
    assert_eq!(s.index(), BigInt::from(128));
}

#[test]
fn lambda_has_index_two_and_is_the_join() {
    let l = printed_lambda();
    assert_eq!(l.index(), Some(BigInt::from(2)));
    let joined = printed_lambda1().join(&printed_lambda2());
    assert!(joined.contains_lattice(&l) && l.contains_lattice(&joined));
}

#[test]
fn orbit_lattices_match_the_printed_ones() {
    assert!(gamma_orbit_lattice(&[w("a^2b^2")], None)
        .unwrap()
        .same_lattice(&printed_lambda1()));
    assert!(gamma_orbit_lattice(&[w("aBab")], None)
        .unwrap()
        .same_lattice(&printed_lambda2()));
    let both = gamma_orbit_lattice(&[w("a^2b^2"), w("aBab")], None).unwrap();
    assert!(both.same_lattice(&printed_lambda()));
}

#[test]
fn gamma_values_of_the_quaternion_relators() {
    let t = Builtin::TildeRho4.rep();
    assert_eq!(
        gamma_decode(&t.evaluate(&w("a^2b^2"))).unwrap(),
        GammaCoord::new(g(-1, 0), g(1, 0))
    );
    assert_eq!(
        gamma_decode(&t.evaluate(&w("aBab"))).unwrap(),
        GammaCoord::new(g(0, 0), g(1, 1))
    );
    assert_eq!(gamma_decode(&CycMatrix::identity(4, 4)).unwrap(), GammaCoord::default());
}

#[test]
fn gamma_decode_rejects_other_shapes() {
    let t = Builtin::TildeRho4.rep();
    assert!(matches!(gamma_decode(t.img_b()), Err(KernelError::GammaShape(_))));
    let mut m = gamma(g(1, 0), g(0, 1));
    m.set(1, 3, primpow::cyclotomic::CycNum::gaussian(1, 1));
    assert!(matches!(gamma_decode(&m), Err(KernelError::GammaShape(_))));
    assert!(gamma_decode(&CycMatrix::identity(3, 4)).is_err());
}

#[test]
fn np_word_spellings() {
    let words = np_words();
    assert_eq!(words["A"], w("baBA"));
    assert_eq!(words["E"], w("BababA^3Ba"));
    for name in ["g0", "g1", "g2", "g3"] {
        assert_eq!(words[name].abelianize(), (0, 0), "{name}");
    }
}

#[test]
fn faithful_chain_passes() {
    let start = Instant::now();
    let report = verify_faithful_p4().unwrap();
    for s in &report.steps {
        assert!(
            s.pass,
            "step {} {}: computed {}, expected {}",
            s.step, s.claim, s.computed, s.expected
        );
    }
    assert_eq!(report.index_exponent, Some(12));
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn literal_g2_is_replaced_within_the_same_subgroup() {
    let words = np_words();
    let gens = np_generators();
    let t = Builtin::TildeRho4.rep();
    assert_eq!(gamma_decode(&t.evaluate(&words["g2"])).unwrap(), LITERAL_G2_GAMMA);
    assert_eq!(gamma_decode(&t.evaluate(&gens[2])).unwrap(), NP_GAMMA[2]);
    let back = gens[2].mul(&gens[1]).mul(&gens[0].inv()).mul(&gens[3].inv());
    assert_eq!(back, words["g2"]);
}

#[test]
fn trho4_prime_has_the_kernel_of_trho4() {
    let p = trho4_prime();
    let t = Builtin::TildeRho4.rep();
    for r in trho4_image_relators().unwrap() {
        assert!(p.evaluate(&r).is_identity());
    }
    for s in ["a^4", "abAB", "a^2", "aBab"] {
        assert_eq!(p.evaluate(&w(s)).is_identity(), t.evaluate(&w(s)).is_identity(), "{s}");
    }
}

#[test]
fn trho4_presentation_relators_are_in_the_kernel() {
    let rels = trho4_image_relators().unwrap();
    let t = Builtin::TildeRho4.rep();
    assert!(rels.iter().all(|r| t.evaluate(r).is_identity()));
    assert_eq!(rels.len(), 6 + 16 + 4);
}

#[test]
fn finite_image_presentations_have_the_image_order() {
    use primpow::enumerate::{group_order, Presentation, DEFAULT_COSET_LIMIT};
    for (b, order) in [
        (Builtin::Rho2, 4),
        (Builtin::Rho4, 8),
        (Builtin::Rho6, 108),
        (Builtin::RhoOdd(5), 125),
    ] {
        let p = Presentation::new(kernel_normal_generators(b).unwrap()).unwrap();
        assert_eq!(group_order(&p, DEFAULT_COSET_LIMIT).unwrap(), order, "{b}");
    }
}

#[test]
fn exact_sequences() {
    let start = Instant::now();
    let r = exact_sequence_report(
        &Builtin::Rho4.rep(),
        &Builtin::TildeRho4.rep(),
        &kernel_normal_generators(Builtin::Rho4).unwrap(),
        DEFAULT_IMAGE_BOUND,
    )
    .unwrap();
    assert_eq!((r.base_order, r.rank), (Some(8), 4));
    let r = exact_sequence_report(
        &Builtin::Rho6.rep(),
        &Builtin::TildeRho6.rep(),
        &kernel_normal_generators(Builtin::Rho6).unwrap(),
        DEFAULT_IMAGE_BOUND,
    )
    .unwrap();
    assert_eq!((r.base_order, r.rank), (Some(108), 18));
    let r = exact_sequence_report(
        &trho4_prime(),
        &Builtin::TildeTildeRho4.rep(),
        &trho4_image_relators().unwrap(),
        2_000,
    )
    .unwrap();
    assert_eq!((r.base_order, r.rank, r.method), (None, 1, OrbitMethod::Saturation));
    assert!(start.elapsed().as_secs() < 180);
}

#[test]
fn rank_eighteen_from_the_two_nested_commutators() {
    let c = Word::commutator(&Word::a(), &Word::b());
    let rels = [Word::commutator(&Word::a(), &c), Word::commutator(&Word::b(), &c)];
    let l = conjugate_orbit_lattice(
        &Builtin::Rho6.rep(),
        &Builtin::TildeRho6.rep(),
        &rels,
        DEFAULT_IMAGE_BOUND,
    )
    .unwrap();
    assert_eq!(l.rank(), 18);
}

#[test]
fn odd_rank_matches_the_formula() {
    assert_eq!(odd_rank_formula(5), 20);
    assert_eq!(odd_rank_formula(7), 84);
    let k = 5;
    let l = conjugate_orbit_lattice(
        &Builtin::RhoOdd(k).rep(),
        &Builtin::TildeRhoOdd(k).rep(),
        &[odd_kernel_word()],
        DEFAULT_IMAGE_BOUND,
    )
    .unwrap();
    assert_eq!(l.rank(), 20);
    let full = exact_sequence_report(
        &Builtin::RhoOdd(k).rep(),
        &Builtin::TildeRhoOdd(k).rep(),
        &kernel_normal_generators(Builtin::RhoOdd(k)).unwrap(),
        DEFAULT_IMAGE_BOUND,
    )
    .unwrap();
    assert_eq!((full.base_order, full.rank), (Some(125), 20));
}

#[test]
fn orbit_lattice_ignores_enumeration_order() {
    let base = Builtin::Rho6.rep();
    let ext = Builtin::TildeRho6.rep();
    let rels = kernel_normal_generators(Builtin::Rho6).unwrap();
    let x = conjugate_orbit_lattice_shuffled(&base, &ext, &rels, DEFAULT_IMAGE_BOUND, None).unwrap();
    let y = conjugate_orbit_lattice_shuffled(&base, &ext, &rels, DEFAULT_IMAGE_BOUND, Some(7)).unwrap();
    assert!(x.contains_lattice(&y) && y.contains_lattice(&x));
    let gx = gamma_orbit_lattice(&[w("a^2b^2"), w("aBab")], Some(1)).unwrap();
    assert!(gx.same_lattice(&printed_lambda()));
}

#[test]
fn saturation_agrees_with_enumeration_for_finite_images() {
    let base = Builtin::Rho4.rep();
    let ext = Builtin::TildeRho4.rep();
    let rels = kernel_normal_generators(Builtin::Rho4).unwrap();
    let x = conjugate_orbit_lattice(&base, &ext, &rels, DEFAULT_IMAGE_BOUND).unwrap();
    let y = saturated_orbit_lattice(&base, &ext, &rels, SATURATION_ROUNDS).unwrap();
    assert!(x.same_lattice(&y));
}

#[test]
fn relators_outside_the_kernel_are_rejected() {
    let err = conjugate_orbit_lattice(&Builtin::Rho4.rep(), &Builtin::TildeRho4.rep(), &[w("a")], 100).unwrap_err();
    assert!(matches!(err, KernelError::NotInKernel(_)));
    let err = conjugate_orbit_lattice(&Builtin::Rho4.rep(), &Builtin::RhoOdd(3).rep(), &[w("a^4")], 100).unwrap_err();
    assert!(matches!(err, KernelError::NotBlockExtension(_)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_round_trip(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
        let coord = GammaCoord::new(g(a, b), g(c, d));
        prop_assert_eq!(gamma_decode(&coord.encode()).unwrap(), coord);
    }

    #[test]
    fn gamma_is_additive(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9, e in -9i64..9, f in -9i64..9) {
        let x = GammaCoord::new(g(a, b), g(c, d));
        let y = GammaCoord::new(g(e, f), g(d, a));
        let sum = GammaCoord::new(g(a + e, b + f), g(c + d, d + a));
        prop_assert!(x.encode().mul(&y.encode()).same_value(&sum.encode()));
    }

    /// `U · diag · V` with unimodular `U`, `V`: the index equals `|det|`.
    #[test]
    fn snf_index_is_abs_det(d in proptest::collection::vec(1i64..6, 4), shears in proptest::collection::vec((0usize..4, 0usize..4, -3i64..4), 0..12)) {
        let mut m: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
        for (idx, &(i, j, c)) in shears.iter().enumerate() {
            if i == j {
                continue;
            }
            if idx % 2 == 0 {
                let src = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(src) {
                    *x += c * y;
                }
            } else {
                for row in m.iter_mut() {
                    row[i] += c * row[j];
                }
            }
        }
        let s = smith_normal_form(&m, 4);
        prop_assert_eq!(s.index(), abs_det(&m));
        prop_assert_eq!(s.index(), BigInt::from(d.iter().product::<i64>()));
    }
}
