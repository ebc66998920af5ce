use num_rational::BigRational;
use primpow::cyclotomic::*;
use proptest::prelude::*;

const CONDUCTORS: [u32; 4] = [3, 4, 5, 12];

fn num(n: u32, coeffs: &[i64]) -> CycNum {
    let d = totient(n);
    CycNum::from_coeffs(
        n,
        coeffs
            .iter()
            .take(d)
            .map(|&c| BigRational::from_integer(c.into()))
            .collect(),
    )
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-5i64..=5, 4)
}

fn matrix(n: u32, size: usize, flat: &[i64]) -> CycMatrix {
    let d = totient(n).min(2);
    let rows = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| num(n, &flat[(i * size + j) * d..(i * size + j + 1) * d]))
                .collect()
        })
        .collect();
    CycMatrix::from_rows(n, rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(ni in 0usize..4, x in coeffs(), y in coeffs(), z in coeffs()) {
        let n = CONDUCTORS[ni];
        let (x, y, z) = (num(n, &x), num(n, &y), num(n, &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(x == y, (&x - &y).is_zero());
    }

    #[test]
    fn conjugation_is_multiplicative(ni in 0usize..4, x in coeffs(), y in coeffs()) {
        let n = CONDUCTORS[ni];
        let (x, y) = (num(n, &x), num(n, &y));
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
    }

    #[test]
    fn inverse_times_matrix_is_identity(ni in 0usize..4, flat in proptest::collection::vec(-3i64..=3, 18)) {
        let n = CONDUCTORS[ni];
        let m = matrix(n, 3, &flat);
        prop_assume!(!m.determinant().is_zero());
        prop_assert!(m.inverse().unwrap().mul(&m).is_identity());
    }

    #[test]
    fn kron_mixed_product(ni in 0usize..4, f in proptest::collection::vec(-3i64..=3, 32)) {
        let n = CONDUCTORS[ni];
        let (a, b, c, d) = (matrix(n, 2, &f[0..8]), matrix(n, 2, &f[8..16]), matrix(n, 2, &f[16..24]), matrix(n, 2, &f[24..32]));
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }
}
