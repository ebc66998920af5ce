//! Normal generators of `P_k` for `k = 2..5`, read off a lifted spanning tree
//! of the closed quotient of the Farey complex.

use primpow::farey::{normal_generators, quotient_complex, DEFAULT_RADIUS};

fn main() {
    for k in 2..=5 {
        let complex = quotient_complex(k, DEFAULT_RADIUS).expect("k >= 2");
        println!(
            "P_{k}: {} vertices, Euler characteristic {}",
            complex.vertex_count(),
            complex.euler_characteristic()
        );
        for g in normal_generators(k, DEFAULT_RADIUS).expect("k >= 2") {
            println!("  {:>5}  ({})^{}", g.slope.to_string(), g.base, g.power);
        }
    }
    let patch = normal_generators(6, 2).expect("k >= 2");
    println!(
        "P_6 radius-2 patch: {} generators (the quotient is not closed)",
        patch.len()
    );
}
