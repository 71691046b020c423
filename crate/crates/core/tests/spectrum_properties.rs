use fockent_core::spectrum::jacobi::hermitian_eigenvalues_raw;
use fockent_core::spectrum::{
    analytic_fock_spectrum, concurrence_from_k, exact_fock_k, reduced_spectrum,
};
use fockent_core::{
    analytic_fock_eigenvalues, concurrence, make_fock, make_superposition, single_photon_k,
    Complex64, ExactNonnegativeRational, ModeOccupation,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Pascal's triangle by repeated addition, independent of the library's
/// factorial code.
fn pascal(max: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::from(1u32)]];
    for n in 1..=max {
        let prev = &rows[n - 1];
        let mut row = vec![BigUint::from(1u32); n + 1];
        for k in 1..n {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

fn occ(h: usize, v: usize) -> ModeOccupation {
    ModeOccupation::new(h, v).unwrap()
}

#[test]
fn fock_eigenvalues_are_hypergeometric_probabilities() {
    let c = pascal(60);
    for n in 1..=60usize {
        for n_v in 0..=n {
            let n_h = n - n_v;
            // Every m for small n, a spread of m above.
            let ms: Vec<usize> = if n <= 24 {
                (1..=n).collect()
            } else {
                vec![1, 2, n / 4, n / 3, n / 2, n - 1, n].into_iter().filter(|&m| m >= 1).collect()
            };
            for m in ms {
                for (k, lambda) in analytic_fock_eigenvalues(occ(n_h, n_v), m).unwrap() {
                    let expected = ExactNonnegativeRational::new(
                        &c[n_v][k] * &c[n_h][m - k],
                        c[n][m].clone(),
                    );
                    assert_eq!(lambda, expected, "n_H={n_h} n_V={n_v} m={m} k={k}");
                }
            }
        }
    }
}

#[test]
fn fock_eigenvalues_sum_to_one_exactly() {
    for n in (1..=200usize).step_by(7) {
        for n_v in [0, n / 3, n / 2, n] {
            for m in [1, n / 4, n / 2, n] {
                if m == 0 {
                    continue;
                }
                let total: ExactNonnegativeRational = analytic_fock_eigenvalues(occ(n - n_v, n_v), m)
                    .unwrap()
                    .into_iter()
                    .map(|(_, x)| x)
                    .sum();
                assert!(total.is_one(), "n={n} n_V={n_v} m={m}");
            }
        }
    }
}

#[test]
fn eigenvalue_support_respects_occupation_limits() {
    let ev = analytic_fock_eigenvalues(occ(2, 5), 4).unwrap();
    let ks: Vec<usize> = ev.iter().map(|(k, _)| *k).collect();
    assert_eq!(ks, [2, 3, 4]);
}

#[test]
fn schmidt_symmetry_of_fock_states() {
    for (h, v) in [(3, 5), (6, 6), (10, 1), (0, 4)] {
        let n = h + v;
        for m in 1..n {
            let mut a: Vec<_> = analytic_fock_eigenvalues(occ(h, v), m)
                .unwrap()
                .into_iter()
                .map(|(_, x)| x)
                .collect();
            let mut b: Vec<_> = analytic_fock_eigenvalues(occ(h, v), n - m)
                .unwrap()
                .into_iter()
                .map(|(_, x)| x)
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "({h},{v}) m={m}");
        }
    }
}

#[test]
fn single_photon_k_peaks_at_balance() {
    for n in 1..=40usize {
        let values: Vec<f64> = (0..=n).map(|v| single_photon_k(occ(n - v, v)).to_f64()).collect();
        let best = values.iter().copied().fold(f64::MIN, f64::max);
        let argmax: Vec<usize> = (0..=n).filter(|&v| values[v] == best).collect();
        let mut expected = vec![n / 2, n.div_ceil(2)];
        expected.dedup();
        assert_eq!(argmax, expected, "n={n}");
    }
}

#[test]
fn split_k_peaks_at_half() {
    for n in [6usize, 8, 24] {
        let ks: Vec<f64> = (1..n)
            .map(|m| exact_fock_k(occ(n / 2, n / 2), m).unwrap().to_f64())
            .collect();
        let argmax = (1..n).max_by(|&a, &b| ks[a - 1].total_cmp(&ks[b - 1])).unwrap();
        assert_eq!(argmax, n / 2);
    }
}

#[test]
fn balanced_half_split_k_grows_from_four_photons() {
    let k = |n: usize| exact_fock_k(occ(n / 2, n / 2), n / 2).unwrap();
    // |1,1⟩ and |2,2⟩ both give K = 2; growth is strict from there on.
    assert_eq!(k(2), ExactNonnegativeRational::from_integer(2u32));
    assert_eq!(k(4), ExactNonnegativeRational::from_integer(2u32));
    for n in (4..40).step_by(2) {
        assert!(k(n + 2) > k(n), "n={n}");
    }
    assert_eq!(k(8), ExactNonnegativeRational::new(4900u32, 1810u32));
}

#[test]
fn numerical_spectrum_of_large_fock_reduction() {
    let state = make_fock(occ(60, 60)).unwrap();
    for m in [50usize, 30, 10] {
        let numeric = reduced_spectrum(&state, m).unwrap();
        let exact = analytic_fock_spectrum(occ(60, 60), m).unwrap();
        assert_eq!(numeric.eigenvalues.len(), m + 1);
        assert!((numeric.sum() - 1.0).abs() < 1e-10);
        for (a, b) in numeric.eigenvalues.iter().zip(&exact.eigenvalues) {
            assert!((a - b).abs() < 1e-10, "m={m}: {a} vs {b}");
        }
    }
}

/// Random unitary by Gram-Schmidt on a random complex matrix.
fn random_unitary(dim: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    let mut q = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            q[i * dim + j] = *x;
        }
    }
    q
}

#[test]
fn eigensolver_recovers_synthetic_spectra() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for dim in [1usize, 2, 3, 5, 8, 13, 21, 34, 64] {
        let q = random_unitary(dim, &mut rng);
        let mut spectrum: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if dim > 3 {
            spectrum[1] = spectrum[0];
        }
        let mut a = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                a[i * dim + j] = (0..dim).map(|k| q[i * dim + k] * spectrum[k] * q[j * dim + k].conj()).sum();
            }
        }
        // Make the input exactly Hermitian.
        for i in 0..dim {
            a[i * dim + i].im = 0.0;
            for j in (i + 1)..dim {
                a[j * dim + i] = a[i * dim + j].conj();
            }
        }
        let got = hermitian_eigenvalues_raw(&a, dim).unwrap();
        spectrum.sort_by(|x, y| y.total_cmp(x));
        for (x, y) in got.iter().zip(&spectrum) {
            assert!((x - y).abs() < 1e-11, "dim={dim}: {x} vs {y}");
        }
    }
}

#[test]
fn concurrence_matches_k_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..1000 {
        let raw: Vec<Complex64> = (0..3)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let q = make_superposition(2, &raw).unwrap();
        let c = concurrence(&q).unwrap();
        let k = reduced_spectrum(&q, 1).unwrap().k;
        assert!((c - concurrence_from_k(k)).abs() < 1e-10, "C={c} K={k}");
    }
}

proptest! {
    #[test]
    fn fock_spectra_are_swap_symmetric(h in 0usize..=40, v in 0usize..=40, m_frac in 0.0f64..1.0) {
        prop_assume!(h + v > 0);
        let n = h + v;
        let m = 1 + ((n - 1) as f64 * m_frac) as usize;
        let a = analytic_fock_eigenvalues(occ(h, v), m).unwrap();
        let b = analytic_fock_eigenvalues(occ(v, h), m).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (k, x) in &a {
            let mirrored = b.iter().find(|(k2, _)| *k2 == m - k).map(|(_, y)| y);
            prop_assert_eq!(Some(x), mirrored);
        }
    }

    #[test]
    fn spectrum_measure_bounds(h in 0usize..=30, v in 0usize..=30, m_frac in 0.0f64..1.0) {
        prop_assume!(h + v > 0);
        let n = h + v;
        let m = 1 + ((n - 1) as f64 * m_frac) as usize;
        let s = analytic_fock_spectrum(occ(h, v), m).unwrap();
        let rank = s.rank(0.0) as f64;
        prop_assert!((s.sum() - 1.0).abs() < 1e-12);
        prop_assert!(s.k >= 1.0 - 1e-12 && s.k <= rank + 1e-9);
        prop_assert!(s.s >= 0.0 && s.s <= rank.log2() + 1e-9);
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn numerical_k_matches_single_photon_formula(h in 0usize..=50, v in 0usize..=50) {
        prop_assume!(h + v > 0);
        let state = make_fock(occ(h, v)).unwrap();
        let k = reduced_spectrum(&state, 1).unwrap().k;
        prop_assert!((k - single_photon_k(occ(h, v)).to_f64()).abs() < 1e-12);
    }
}
