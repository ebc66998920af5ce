//! Orders of `F_2/P_2` and `F_2/P_3` two ways: coset enumeration on the
//! normal generators and the image of the matching representation.

use primpow::enumerate::{group_order, power_quotient, signature, todd_coxeter, DEFAULT_COSET_LIMIT};
use primpow::reps::{image_closure, Builtin, DEFAULT_IMAGE_BOUND};

fn main() {
    for (k, rep) in [(2, Builtin::Rho2), (3, Builtin::RhoOdd(3))] {
        let p = power_quotient(k);
        let order = group_order(&p, DEFAULT_COSET_LIMIT).expect("finite quotient");
        let image = image_closure(&rep.rep(), DEFAULT_IMAGE_BOUND)
            .expect("finite image")
            .order();
        let sig = signature(&p, DEFAULT_COSET_LIMIT).expect("finite quotient");
        println!("F2/P_{k}: coset enumeration {order}, |{rep}(F2)| = {image}");
        println!(
            "  element orders {:?}, abelian invariants {:?}",
            sig.element_orders, sig.abelian_invariants
        );
    }
    match todd_coxeter(&power_quotient(4), 100_000) {
        Ok(t) => println!("F2/P_4: order {}", t.order()),
        Err(e) => println!("F2/P_4: {e} (expected; the quotient is infinite)"),
    }
}
