//! Every builtin representation against the characteristic criterion, with
//! its printed (or solved) witness.

use primpow::cyclotomic::{CycMatrix, CycNum};
use primpow::reps::{check_characteristic, kernel_contains_pk, Builtin};
use primpow::words::Word;

fn main() {
    for b in Builtin::catalogue() {
        let rep = b.rep();
        let w = b.witness();
        let check = check_characteristic(&rep, &w);
        let k = b.power();
        let pk = check.passed() && kernel_contains_pk(&rep, &w, k, 0).unwrap_or(false);
        println!(
            "{b:>12}: dim {:>2}, witness {}, M- = I: {}, P_{k} in kernel: {pk}",
            rep.dim(),
            if check.passed() { "ok" } else { "FAILS" },
            w.m_minus.is_identity(),
        );
    }
    for k in [3, 5, 7] {
        let c = Builtin::RhoOdd(k)
            .rep()
            .evaluate(&Word::commutator(&Word::a(), &Word::b()));
        let scalar = CycMatrix::identity(k as usize, k).scale(&CycNum::zeta_pow(k, -1));
        println!("rho_odd:{k}([a,b]) = w^-1 I: {}", c.same_value(&scalar));
    }
}
