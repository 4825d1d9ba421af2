use std::f64::consts::PI;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use sts_core::data::{Dataset, RawSentence, SentencePair};
use sts_core::stats::{
    kde, paired_ttest_one_sided, pearson, significance_matrix, spearman, spearman_closed_form, split_sizes,
    student_t_sf, uniform_split,
};

fn naive_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Rank by counting smaller elements; valid only without ties.
fn brute_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|v| 1.0 + x.iter().filter(|w| *w < v).count() as f64)
        .collect()
}

fn tie_free(rng: &mut StdRng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|i| i as f64 + rng.gen::<f64>() * 0.5).collect();
    v.shuffle(rng);
    v
}

#[test]
fn spearman_matches_rank_oracle_on_1000_vectors() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..1000 {
        let n = rng.gen_range(3..60);
        let (x, y) = (tie_free(&mut rng, n), tie_free(&mut rng, n));
        let rho = spearman(&x, &y).unwrap();
        assert_eq!(rho, pearson(&brute_ranks(&x), &brute_ranks(&y)).unwrap());
        assert!((rho - spearman_closed_form(&x, &y).unwrap()).abs() < 1e-12);
        assert!((pearson(&x, &y).unwrap() - naive_pearson(&x, &y)).abs() < 1e-12);
    }
}

#[test]
fn spearman_with_ties_uses_average_ranks() {
    let x = [1.0, 2.0, 2.0, 3.0, 5.0, 5.0, 5.0];
    let y = [2.0, 1.0, 4.0, 4.0, 3.0, 9.0, 9.0];
    let rx = [1.0, 2.5, 2.5, 4.0, 6.0, 6.0, 6.0];
    let ry = [2.0, 1.0, 4.5, 4.5, 3.0, 6.5, 6.5];
    assert_eq!(spearman(&x, &y).unwrap(), naive_pearson(&rx, &ry));
}

fn sample() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (3usize..40).prop_flat_map(|n| {
        (
            proptest::collection::vec(-5.0f64..5.0, n),
            proptest::collection::vec(-5.0f64..5.0, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pearson_affine_invariant((x, y) in sample(), a in 0.1f64..10.0, b in -3.0f64..3.0) {
        let r = pearson(&x, &y).unwrap();
        let tx: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        prop_assert!((pearson(&tx, &y).unwrap() - r).abs() < 1e-10);
    }

    #[test]
    fn spearman_monotone_invariant((x, y) in sample()) {
        let rho = spearman(&x, &y).unwrap();
        let tx: Vec<f64> = x.iter().map(|v| v.powi(3) + v).collect();
        prop_assert_eq!(spearman(&tx, &y).unwrap(), rho);
    }

    #[test]
    fn split_concatenates_back(n in 1usize..400, k in 1usize..40) {
        prop_assume!(k <= n);
        let pairs: Vec<SentencePair> = (0..n)
            .map(|i| SentencePair {
                s1: RawSentence::new(format!("s{i}")),
                s2: RawSentence::new("t"),
                human_score: i as f64 / n as f64,
            })
            .collect();
        let d = Dataset::new("d", pairs.clone()).unwrap();
        let parts = uniform_split(&d, k).unwrap();
        prop_assert_eq!(parts.len(), k);
        let joined: Vec<SentencePair> = parts.iter().flat_map(|p| p.pairs().to_vec()).collect();
        prop_assert_eq!(joined, pairs);
        let sizes = split_sizes(n, k).unwrap();
        let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
        prop_assert!(hi - lo <= 1);
        prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn one_sided_pvalues_are_complementary((a, b) in sample()) {
        let ab = paired_ttest_one_sided(&a, &b).unwrap();
        let ba = paired_ttest_one_sided(&b, &a).unwrap();
        prop_assert!((ab.p + ba.p - 1.0).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab.p));
    }

    #[test]
    fn kde_symmetric_for_symmetric_samples(half in proptest::collection::vec(0.01f64..1.0, 2..30)) {
        let x: Vec<f64> = half.iter().copied().chain(half.iter().map(|v| -v)).collect();
        let k = kde(&x).unwrap();
        let n = k.density.len();
        for i in 0..n / 2 {
            prop_assert!((k.x[i] + k.x[n - 1 - i]).abs() < 1e-12);
            prop_assert!((k.density[i] - k.density[n - 1 - i]).abs() < 1e-9 * (1.0 + k.density[i]));
        }
    }
}

#[test]
fn kde_integrates_to_one_on_random_error_samples() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(2..300);
        let errors: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - rng.gen::<f64>()).collect();
        let integral = kde(&errors).unwrap().integral();
        assert!((integral - 1.0).abs() < 1e-3, "integral {integral}");
    }
}

/// `Γ(x)` for positive integers and half-integers by recurrence.
fn gamma_half(x2: u32) -> f64 {
    // x = x2 / 2
    let (mut g, mut v) = if x2.is_multiple_of(2) { (1.0, 2) } else { (PI.sqrt(), 1) };
    while v < x2 {
        g *= v as f64 / 2.0;
        v += 2;
    }
    g
}

/// Upper tail by composite Simpson integration of the density over `[0, |t|]`.
fn t_sf_oracle(t: f64, df: u32) -> f64 {
    let nu = df as f64;
    let c = gamma_half(df + 1) / ((nu * PI).sqrt() * gamma_half(df));
    let pdf = |x: f64| c * (1.0 + x * x / nu).powf(-(nu + 1.0) / 2.0);
    let m = 20_000;
    let h = t.abs() / m as f64;
    let mut acc = pdf(0.0) + pdf(t.abs());
    for i in 1..m {
        acc += pdf(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    let mass = acc * h / 3.0;
    if t >= 0.0 {
        0.5 - mass
    } else {
        0.5 + mass
    }
}

#[test]
fn t_tail_matches_numerical_integration() {
    for df in 1..=30 {
        for step in 0..=80 {
            let t = -10.0 + step as f64 * 0.25;
            let (got, want) = (student_t_sf(t, df as f64), t_sf_oracle(t, df));
            assert!((got - want).abs() < 1e-8, "df {df} t {t}: {got} vs {want}");
        }
    }
}

#[test]
fn t_tail_closed_forms() {
    // df = 2: P(T > t) = 1/2 - t / (2 sqrt(2 + t^2))
    for t in [-4.0, -1.0, 0.3, 3.464, 9.0] {
        let closed = 0.5 - t / (2.0 * (2.0f64 + t * t).sqrt());
        assert!((student_t_sf(t, 2.0) - closed).abs() < 1e-10);
    }
    // df = 1 is Cauchy
    for t in [-3.0, 0.5, 2.0] {
        let closed = 0.5 - f64::atan(t) / PI;
        assert!((student_t_sf(t, 1.0) - closed).abs() < 1e-10);
    }
    assert!((student_t_sf(1.6449, 1e6) - 0.05).abs() < 1e-3);
}

#[test]
fn matrix_antisymmetry_on_random_methods() {
    let mut rng = StdRng::seed_from_u64(9);
    let runs: Vec<(String, Vec<f64>)> = (0..5)
        .map(|m| (format!("m{m}"), (0..12).map(|_| rng.gen_range(0.4..0.9)).collect()))
        .collect();
    let mat = significance_matrix(&runs).unwrap();
    for i in 0..5 {
        assert!(mat.get(i, i).is_none());
        for j in 0..5 {
            if i != j {
                let (a, b) = (mat.get(i, j).unwrap(), mat.get(j, i).unwrap());
                assert!(!a.degenerate);
                assert!((a.p.unwrap() + b.p.unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }
}
