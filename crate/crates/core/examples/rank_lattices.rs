//! Ranks of `ext(ker base)` for block extensions, and the exact sequences
//! they give.

use primpow::kernels::*;
use primpow::reps::{Builtin, DEFAULT_IMAGE_BOUND};

fn main() {
    for (base, ext) in [(Builtin::Rho4, Builtin::TildeRho4), (Builtin::Rho6, Builtin::TildeRho6)] {
        let rels = kernel_normal_generators(base).expect("finite image");
        let s = exact_sequence_report(&base.rep(), &ext.rep(), &rels, DEFAULT_IMAGE_BOUND).expect("block extension");
        println!(
            "1 -> Z^{} -> F2/ker {ext} -> image of order {:?} -> 1",
            s.rank, s.base_order
        );
    }
    for k in [5, 7] {
        let l = conjugate_orbit_lattice(
            &Builtin::RhoOdd(k).rep(),
            &Builtin::TildeRhoOdd(k).rep(),
            &[odd_kernel_word()],
            DEFAULT_IMAGE_BOUND,
        )
        .expect("block extension");
        println!("k = {k}: rank {} (formula {})", l.rank(), odd_rank_formula(k));
    }
    let s = exact_sequence_report(
        &trho4_prime(),
        &Builtin::TildeTildeRho4.rep(),
        &trho4_image_relators().expect("valid relators"),
        2_000,
    )
    .expect("block extension");
    println!("ttrho4 over trho4: rank {} by {:?}", s.rank, s.method);
}
