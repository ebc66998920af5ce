//! The improvement pipeline: lifts of a rep that kill `P_k`, cut down to the
//! part invariant under the characteristic actions, glued on as a block
//! extension.

use primpow::deform::{improve, kernel_probe_words, same_kernel_on};
use primpow::reps::Builtin;

fn main() {
    for (b, target) in [
        (Builtin::RhoOdd(5), Some(Builtin::TildeRhoOdd(5))),
        (Builtin::Rho4, Some(Builtin::TildeRho4)),
        (Builtin::Rho2, None),
    ] {
        let k = b.power();
        let out = improve(&b.rep(), &b.witness(), k, 6).expect("witness passes");
        println!(
            "{b}: solution dims {:?}, translations {}, invariant dim {}, new dim {}",
            out.subspace.dims_by_round,
            out.subspace.translation_dim,
            out.invariant_basis.len(),
            out.rep.dim()
        );
        if let Some(t) = target {
            let probes = kernel_probe_words(k, 200, 0);
            println!(
                "  same kernel as {t} on 200 probes: {}",
                same_kernel_on(&out.rep, &t.rep(), &probes)
            );
        }
    }
}
