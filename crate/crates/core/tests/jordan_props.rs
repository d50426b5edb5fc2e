use conelab::jordan::{eigh, eigvals_sym, l_ab, l_ab_inverse, verify_prop5, verify_prop5_exact, SymMat};
use conelab::exact::rat;
use proptest::prelude::*;

fn sym(max: usize) -> impl Strategy<Value = SymMat> {
    (1..=max).prop_flat_map(|m| {
        proptest::collection::vec(-10.0f64..10.0, m * m).prop_map(move |g| SymMat::symmetrize(m, &g))
    })
}

fn perm_of(m: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..m).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn eigenvalues_are_permutation_invariant(
        (x, p) in sym(6).prop_flat_map(|x| { let m = x.size(); (Just(x), perm_of(m)) })
    ) {
        let a = eigvals_sym(&x).unwrap().values;
        let b = eigvals_sym(&x.permuted(&p)).unwrap().values;
        for (u, v) in a.iter().zip(&b) {
            prop_assert!((u - v).abs() <= 1e-9 * (1.0 + x.frobenius()));
        }
    }

    #[test]
    fn eigenvalues_sum_to_trace(x in sym(6)) {
        let s: f64 = eigvals_sym(&x).unwrap().values.iter().sum();
        prop_assert!((s - x.trace()).abs() <= 1e-9 * (1.0 + x.frobenius()));
    }

    #[test]
    fn eigenvalues_are_sorted_decreasing(x in sym(6)) {
        let v = eigvals_sym(&x).unwrap().values;
        prop_assert!(v.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn reconstruction(x in sym(6)) {
        let r = eigh(&x).unwrap().reconstruct();
        prop_assert!(r.max_abs_diff(&x) <= 1e-8 * x.frobenius().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn agrees_with_nalgebra(x in sym(6)) {
        let m = x.size();
        let na = nalgebra::DMatrix::from_fn(m, m, |i, j| x.get(i, j));
        let mut want: Vec<f64> = na.symmetric_eigenvalues().iter().copied().collect();
        want.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let got = eigvals_sym(&x).unwrap().values;
        for (u, v) in got.iter().zip(&want) {
            prop_assert!((u - v).abs() <= 1e-9 * (1.0 + x.frobenius()));
        }
    }

    #[test]
    fn l_ab_inverse_round_trip(x in sym(5), a in 1.0f64..3.0, b in -0.4f64..0.4) {
        let y = l_ab(&x, a, b);
        prop_assert!(l_ab_inverse(&y, a, b).max_abs_diff(&x) <= 1e-9 * (1.0 + x.frobenius()));
    }
}

#[test]
fn spectral_checks_are_deterministic() {
    let a = verify_prop5(3, &rat(-1), &rat(1), 50, 11, 1e-9).unwrap();
    let b = verify_prop5(3, &rat(-1), &rat(1), 50, 11, 1e-9).unwrap();
    assert_eq!(a, b);
    assert!(a.all_pass());
    let e = verify_prop5_exact(4, &rat(-2), &rat(1), 50, 11).unwrap();
    assert!(e.all_pass());
}

#[test]
fn single_threaded_and_parallel_runs_agree() {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| verify_prop5(4, &rat(-2), &rat(1), 64, 5, 1e-9).unwrap());
    let parallel = verify_prop5(4, &rat(-2), &rat(1), 64, 5, 1e-9).unwrap();
    assert_eq!(serial, parallel);
}
