//! The chain of checks bounding the index of the image of `N_p` in the
//! image of `F_2/P_4`.

use primpow::kernels::verify_faithful_p4;

fn main() {
    let report = verify_faithful_p4().expect("chain runs");
    for s in &report.steps {
        let mark = if s.pass { "ok" } else { "FAIL" };
        println!("[{mark}] ({}) {}: {}", s.step, s.claim, s.computed);
    }
    match report.index_exponent {
        Some(e) => println!("index at least 2^{e}"),
        None => println!("index bound undetermined"),
    }
}
