//! The square of the `ψ1` action on lifts of `ρ_k` for odd `k`: its `±k`
//! eigenspaces, and the `+k` part that yields the extension.

use primpow::deform::eigen_split;

fn main() {
    for k in [5, 7] {
        let r = eigen_split(k).expect("odd k >= 5");
        println!(
            "k = {k}: +{k} dim {}, -{k} dim {}, passed {}",
            r.plus_dim,
            r.minus_dim,
            r.passed()
        );
        for item in &r.items {
            println!(
                "  [{}] {} (eigenvalue {})",
                if item.pass { "ok" } else { "FAIL" },
                item.label,
                item.expected_eigenvalue
            );
        }
    }
}
