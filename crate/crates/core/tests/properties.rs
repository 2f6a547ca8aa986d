use std::f64::consts::PI;

use chirplab::cli::{curve_csv, parse_curve_csv};
use chirplab::experiments::{fit_log_exponent, CurvePoint, ExperimentConfig, GrowthSeries};
use chirplab::geometry::support_polytope;
use chirplab::integrate::closure;
use chirplab::osc1d::{cube_integral, sinc, sine_integral};
use chirplab::phase::oracle::expand_polynomial_oracle;
use chirplab::phase::{coefficient_row, enumerate_multi_indices, sample_generic_alphas};
use chirplab::quad::adaptive;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn si_is_odd_and_matches_quadrature(x in 0.0f64..80.0) {
        prop_assert_eq!(sine_integral(-x), -sine_integral(x));
        let breaks: Vec<f64> = (0..=(x / PI) as usize).map(|j| j as f64 * PI).chain([x]).collect();
        let direct = adaptive(sinc, &breaks, 1e-15, 10_000).unwrap().value;
        prop_assert!((direct - sine_integral(x)).abs() <= 1e-12);
    }

    #[test]
    fn closure_is_continuous_across_series_switch(p in 1e-4f64..1.0, a in -5.0f64..-0.1, b in 0.1f64..5.0) {
        // Either side of |P|·max(|a|,|b|) = 1e-2.
        let m = a.abs().max(b.abs());
        let edge = 1e-2 / m;
        let below = closure(edge * (1.0 - 1e-9), a, b);
        let above = closure(edge * (1.0 + 1e-9), a, b);
        prop_assert!((below - above).abs() < 1e-12 * (b - a));
        prop_assert!((closure(p, a, b) - closure(-p, a, b)).abs() < 1e-14 * (b - a));
    }

    #[test]
    fn coefficient_rows_match_expansion(seed in 0u64..1000, theta in prop::collection::vec(-3.0f64..3.0, 5)) {
        let a = sample_generic_alphas(2, 5, seed, 0.05).unwrap();
        let expanded = expand_polynomial_oracle(&theta, &a);
        for idx in enumerate_multi_indices(3, 2) {
            let row = coefficient_row(&idx, &a).unwrap().apply(&theta);
            let direct = expanded.get(&idx).copied().unwrap_or(0.0);
            prop_assert!((row - direct).abs() <= 1e-9 * (1.0 + direct.abs()), "{}: {} vs {}", idx, row, direct);
        }
    }

    #[test]
    fn scaled_polytope_contains_scaled_points(
        seed in 0u64..200,
        t in prop::collection::vec(-30.0f64..30.0, 2),
        lambda in 0.1f64..10.0,
    ) {
        let a = sample_generic_alphas(2, 5, seed, 0.05).unwrap();
        let p = support_polytope(0.0, &a, 100.0).unwrap();
        let q = p.scaled(lambda);
        let st: Vec<f64> = t.iter().map(|v| v * lambda).collect();
        // Skip points within rounding of a face.
        let near_face = p.strips.iter().any(|s| {
            let v = s.value(&t);
            (v - s.lower).abs() < 1e-9 * (1.0 + v.abs()) || (v - s.upper).abs() < 1e-9 * (1.0 + v.abs())
        });
        prop_assume!(!near_face);
        prop_assert_eq!(p.contains(&t), q.contains(&st));
    }

    #[test]
    fn slices_bound_membership(seed in 0u64..200, t1 in -40.0f64..40.0, frac in 0.0f64..1.0) {
        let a = sample_generic_alphas(2, 5, seed, 0.05).unwrap();
        let p = support_polytope(0.5, &a, 100.0).unwrap();
        match p.slice_interval(&[t1]) {
            Some((lo, hi)) => {
                let inside = lo + frac * (hi - lo);
                prop_assert!(p.contains(&[t1, inside]));
                let pad = 1e-6 * (1.0 + hi.abs().max(lo.abs()));
                prop_assert!(!p.contains(&[t1, hi + pad]));
                prop_assert!(!p.contains(&[t1, lo - pad]));
            }
            None => {
                let probe = -100.0 + 200.0 * frac;
                prop_assert!(!p.contains(&[t1, probe]));
            }
        }
    }

    #[test]
    fn fits_recover_power_laws(p in 0.0f64..3.5, c in 0.1f64..50.0) {
        let pairs: Vec<(f64, f64)> =
            [1e2, 3e2, 1e3, 3e3, 1e4].iter().map(|&n: &f64| (n, c * n.ln().powf(p))).collect();
        let f = fit_log_exponent(&GrowthSeries::from_pairs(&pairs).unwrap(), 100.0).unwrap();
        prop_assert!((f.exponent - p).abs() < 1e-9);
        prop_assert!((f.constant - c).abs() < 1e-9 * c);
        prop_assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cube_integral_is_monotone_beyond_one(n in 1.5f64..1e3, step in 1.01f64..3.0) {
        // Iterated averages of sinc are positive, so the k = 2 cube grows.
        prop_assert!(cube_integral(2, n * step).unwrap() > cube_integral(2, n).unwrap());
    }

    #[test]
    fn curve_files_round_trip(rows in prop::collection::vec((1.0f64..1e6, -1e3f64..1e3, -1e3f64..1e3), 0..8)) {
        let mut n = 0.0;
        let curve: Vec<CurvePoint> = rows
            .iter()
            .map(|&(dn, v, r)| {
                n += dn;
                CurvePoint::new(n, v, r)
            })
            .collect();
        prop_assert_eq!(parse_curve_csv(&curve_csv(&curve)).unwrap(), curve);
    }

    #[test]
    fn configs_round_trip(k in 1usize..4, seed in any::<u64>(), first in 10.0f64..1e3, tol in 1e-12f64..1e-6) {
        let c = ExperimentConfig {
            k,
            seed: Some(seed),
            n_list: Some(vec![first, first * 2.0, first * 7.5]),
            tol_phase: tol,
            ..Default::default()
        };
        prop_assert_eq!(ExperimentConfig::from_toml(&c.to_toml()).unwrap(), c);
    }
}
