//! Acceptance criteria 1–11. Each criterion prints one PASS/FAIL line with
//! its runtime against a pinned limit; the test fails if any line fails.

use std::time::{Duration, Instant};

use primpow::cyclotomic::{CycMatrix, CycNum};
use primpow::deform::{eigen_split, improve, kernel_probe_words, same_kernel_on};
use primpow::enumerate::{group_order, power_quotient, DEFAULT_COSET_LIMIT};
use primpow::farey::{normal_generators, reference_generators, Slope, DEFAULT_RADIUS};
use primpow::kernels::*;
use primpow::reps::{self, check_characteristic, image_closure, multitwist_check, Builtin, DEFAULT_IMAGE_BOUND};
use primpow::words::{conjugate_test, Word};

/// Outcome of one criterion: whether every claim held, and a short summary.
type Outcome = (bool, String);

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn c1_generator_tables() -> Outcome {
    let mut ok = true;
    let mut counts = Vec::new();
    for (k, expected) in [(2, 3), (3, 4), (4, 6), (5, 12)] {
        let gens = normal_generators(k, DEFAULT_RADIUS).expect("k >= 2");
        let table = reference_generators(k).expect("tabulated k");
        ok &= gens.len() == expected && table.len() == expected;
        for g in &gens {
            let hit = table.iter().find(|(s, _)| *s == g.slope);
            ok &= hit.is_some_and(|(_, w)| conjugate_test(&g.base, w) || conjugate_test(&g.base, &w.inv()));
        }
        counts.push(gens.len());
    }
    let p5_has_it = normal_generators(5, DEFAULT_RADIUS)
        .expect("k >= 2")
        .iter()
        .any(|g| conjugate_test(&g.base, &"a^3ba^2b".parse().expect("word")));
    ok &= p5_has_it;
    (ok, format!("counts {counts:?}, (a^3ba^2b)^5 present: {p5_has_it}"))
}

fn c2_finite_quotients() -> Outcome {
    let p2 = group_order(&power_quotient(2), DEFAULT_COSET_LIMIT).ok();
    let p3 = group_order(&power_quotient(3), DEFAULT_COSET_LIMIT).ok();
    let r2 = image_closure(&Builtin::Rho2.rep(), DEFAULT_IMAGE_BOUND)
        .ok()
        .map(|i| i.order());
    let r3 = image_closure(&Builtin::RhoOdd(3).rep(), DEFAULT_IMAGE_BOUND)
        .ok()
        .map(|i| i.order());
    let ok = p2 == Some(4) && p3 == Some(27) && r2 == Some(4) && r3 == Some(27);
    (ok, format!("P_2 {p2:?}, P_3 {p3:?}, rho2 {r2:?}, rho3 {r3:?}"))
}

fn c3_witnesses() -> Outcome {
    let eight = [
        Builtin::Rho2,
        Builtin::RhoOdd(3),
        Builtin::RhoOdd(5),
        Builtin::RhoOdd(7),
        Builtin::Rho4,
        Builtin::TildeRho6,
        Builtin::TildeRho4,
        Builtin::TildeTildeRho4,
    ];
    let failing: Vec<String> = eight
        .iter()
        .filter(|b| {
            let w = b.witness();
            !(check_characteristic(&b.rep(), &w).passed() && w.m_minus.is_identity())
        })
        .map(|b| b.to_string())
        .collect();
    (failing.is_empty(), format!("8 reps, failing {failing:?}"))
}

fn c4_commutator_scalar() -> Outcome {
    let c = Word::commutator(&Word::a(), &Word::b());
    let good: Vec<u32> = [3, 5, 7]
        .into_iter()
        .filter(|&k| {
            let scalar = CycMatrix::identity(k as usize, k).scale(&CycNum::zeta_pow(k, -1));
            Builtin::RhoOdd(k).rep().evaluate(&c).same_value(&scalar)
        })
        .collect();
    (good == [3, 5, 7], format!("w^-1 I for k in {good:?}"))
}

fn c5_eigen_analysis() -> Outcome {
    let mut ok = true;
    let mut dims = Vec::new();
    for k in [5, 7] {
        match eigen_split(k) {
            Ok(r) => {
                ok &= r.passed() && r.plus_dim == (k as usize - 3) / 2;
                dims.push((k, r.plus_dim, r.items.iter().filter(|i| i.pass).count(), r.items.len()));
            }
            Err(_) => ok = false,
        }
    }
    (ok, format!("(k, +k dim, items ok, items) {dims:?}"))
}

fn c6_improvement() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (b, target) in [
        (Builtin::RhoOdd(5), Builtin::TildeRhoOdd(5)),
        (Builtin::Rho4, Builtin::TildeRho4),
    ] {
        let k = b.power();
        let Ok(out) = improve(&b.rep(), &b.witness(), k, 6) else {
            notes.push(format!("{b}: improve failed"));
            ok = false;
            continue;
        };
        let probes = kernel_probe_words(k, 200, 0);
        let same = same_kernel_on(&out.rep, &target.rep(), &probes);
        let witness = check_characteristic(&out.rep, &out.witness).passed();
        ok &= same && witness && out.rep.dim() == target.rep().dim();
        notes.push(format!("{b} -> dim {} (same kernel on 200: {same})", out.rep.dim()));
    }
    (ok, notes.join(", "))
}

fn c7_rank_eighteen() -> Outcome {
    let c = Word::commutator(&Word::a(), &Word::b());
    let rels = [Word::commutator(&Word::a(), &c), Word::commutator(&Word::b(), &c)];
    match conjugate_orbit_lattice(
        &Builtin::Rho6.rep(),
        &Builtin::TildeRho6.rep(),
        &rels,
        DEFAULT_IMAGE_BOUND,
    ) {
        Ok(l) => (l.rank() == 18, format!("rank {}", l.rank())),
        Err(e) => (false, e.to_string()),
    }
}

fn c8_odd_rank() -> Outcome {
    let mut ranks = Vec::new();
    let mut ok = true;
    for k in [5, 7] {
        let r = conjugate_orbit_lattice(
            &Builtin::RhoOdd(k).rep(),
            &Builtin::TildeRhoOdd(k).rep(),
            &[odd_kernel_word()],
            DEFAULT_IMAGE_BOUND,
        )
        .map(|l| l.rank());
        ok &= r.as_ref().is_ok_and(|&r| r == odd_rank_formula(k))
            && odd_rank_formula(k) == [20, 84][(k as usize - 5) / 2];
        ranks.push((k, r.ok()));
    }
    (ok, format!("(k, rank) {ranks:?}"))
}

fn c9_faithful_chain() -> Outcome {
    match verify_faithful_p4() {
        Ok(r) => {
            let failed: Vec<String> = r
                .failures()
                .iter()
                .map(|s| format!("({}) {}", s.step, s.claim))
                .collect();
            (
                r.passed() && r.index_exponent == Some(12),
                format!(
                    "{} steps, exponent {:?}, failed {failed:?}",
                    r.steps.len(),
                    r.index_exponent
                ),
            )
        }
        Err(e) => (false, e.to_string()),
    }
}

fn c10_exact_sequences() -> Outcome {
    let finite = |base: Builtin, ext: Builtin| {
        exact_sequence_report(
            &base.rep(),
            &ext.rep(),
            &kernel_normal_generators(base).expect("finite image"),
            DEFAULT_IMAGE_BOUND,
        )
        .map(|s| (s.base_order, s.rank))
        .ok()
    };
    let q = finite(Builtin::Rho4, Builtin::TildeRho4);
    let six = finite(Builtin::Rho6, Builtin::TildeRho6);
    let d = trho4_image_relators()
        .and_then(|rels| exact_sequence_report(&trho4_prime(), &Builtin::TildeTildeRho4.rep(), &rels, 2_000))
        .map(|s| s.rank)
        .ok();
    let ok = q == Some((Some(8), 4)) && six == Some((Some(108), 18)) && d == Some(1);
    (ok, format!("rho4 {q:?}, rho6 {six:?}, ttrho4 d = {d:?}"))
}

fn c11_properties() -> Outcome {
    let r3 = multitwist_check(&Builtin::RhoOdd(3).rep(), &Slope::INFINITY, 3, 50, 0);
    let r4 = multitwist_check(&Builtin::Rho4.rep(), &Slope::integer(1), 4, 50, 0);
    let ok = matches!(r3, Ok(true)) && matches!(r4, Ok(true));
    let hom = Builtin::catalogue().iter().all(|b| {
        let rep = b.rep();
        kernel_probe_words(b.power(), 10, 1).windows(2).all(|p| {
            rep.evaluate(&p[0].mul(&p[1]))
                .same_value(&rep.evaluate(&p[0]).mul(&rep.evaluate(&p[1])))
        })
    });
    let pk = Builtin::catalogue()
        .iter()
        .all(|b| reps::kernel_contains_pk(&b.rep(), &b.witness(), b.power(), 0).unwrap_or(false));
    (
        ok && hom && pk,
        format!("multitwist rho3@inf {r3:?}, rho4@1 {r4:?}; homomorphism {hom}; P_k in kernels {pk}; proptest suites run as separate tests"),
    )
}

const CRITERIA: [Criterion; 11] = [
    Criterion {
        id: 1,
        title: "generator tables",
        limit: secs(1),
        run: c1_generator_tables,
    },
    Criterion {
        id: 2,
        title: "finite quotients",
        limit: secs(1),
        run: c2_finite_quotients,
    },
    Criterion {
        id: 3,
        title: "characteristic witnesses",
        limit: secs(10),
        run: c3_witnesses,
    },
    Criterion {
        id: 4,
        title: "commutator scalar",
        limit: secs(10),
        run: c4_commutator_scalar,
    },
    Criterion {
        id: 5,
        title: "eigen-analysis",
        limit: secs(30),
        run: c5_eigen_analysis,
    },
    Criterion {
        id: 6,
        title: "improvement pipeline",
        limit: secs(120),
        run: c6_improvement,
    },
    Criterion {
        id: 7,
        title: "rank 18",
        limit: secs(120),
        run: c7_rank_eighteen,
    },
    Criterion {
        id: 8,
        title: "odd-k rank formula",
        limit: secs(300),
        run: c8_odd_rank,
    },
    Criterion {
        id: 9,
        title: "faithfulness chain",
        limit: secs(60),
        run: c9_faithful_chain,
    },
    Criterion {
        id: 10,
        title: "exact sequences",
        limit: secs(180),
        run: c10_exact_sequences,
    },
    Criterion {
        id: 11,
        title: "property suites",
        limit: secs(120),
        run: c11_properties,
    },
];

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let (ok, detail) = (c.run)();
        let elapsed = start.elapsed();
        let pass = ok && elapsed <= c.limit;
        println!(
            "criterion {:>2} {:<26} {} ({:.2}s, limit {}s) {detail}",
            c.id,
            c.title,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        if !pass {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
