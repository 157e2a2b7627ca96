//! Randomized invariants over the numeric kernel and the output encoding.

use jamnet::cli::{emit, parse_jsonl, OutputFormat, ResultRow, SweepValue};
use jamnet::specfun::{gamma, gauss_hermite, hyp1f1, hyp1f2, hyp2f1};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence(x in 0.1f64..10.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn hypergeometric_series_equal_one_at_zero(
        a in -0.99f64..3.0,
        b in 0.05f64..3.0,
    ) {
        prop_assert_eq!(hyp2f1(1.0, a, a + 2.0, 0.0).unwrap(), 1.0);
        prop_assert_eq!(hyp1f1(a, b, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn reduction_identity(
        a in -0.95f64..-0.05,
        b in 0.3f64..1.5,
        x in -8.0f64..0.0,
    ) {
        let lhs = hyp1f2(a, b, 1.0, x).unwrap();
        let rhs = hyp1f1(a, b, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
    }

    #[test]
    fn ghq_integrates_even_monomials(n in 2usize..30, k_frac in 0.0f64..1.0) {
        let rule = gauss_hermite(n).unwrap();
        let k = ((n - 1) as f64 * k_frac) as usize; // 2k <= 2n-2 < 2n-1
        let integral = rule.integrate(|x| x.powi(2 * k as i32));
        let exact = gamma(k as f64 + 0.5).unwrap();
        prop_assert!((integral - exact).abs() <= 1e-9 * exact);
    }

    #[test]
    fn jsonl_round_trip(
        sweep in prop_oneof![
            any::<f64>().prop_filter("finite", |v| v.is_finite()).prop_map(SweepValue::Num),
            "[a-z]{1,8}".prop_map(SweepValue::Label),
        ],
        analytic in proptest::option::of(0.0f64..1.0),
        mc in proptest::option::of(0.0f64..1.0),
        trials in proptest::option::of(1000u64..1_000_000),
        wall_ms in 0.0f64..1e6,
        flags in "[a-z0-9_;=]{0,20}",
    ) {
        let rows = vec![ResultRow {
            sweep,
            analytic,
            mc,
            mc_stderr: mc.map(|v| v / 10.0),
            trials,
            wall_ms,
            flags,
        }];
        let mut buf = Vec::new();
        emit(&rows, OutputFormat::JsonLines, &mut buf).unwrap();
        let parsed = parse_jsonl(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(parsed, rows);
    }

    #[test]
    fn pfaff_window_continuity(b in 0.2f64..0.9) {
        // direct series just inside the window vs transformed just outside
        let inside = hyp2f1(1.0, b, 1.0 + b, -0.8999).unwrap();
        let outside = hyp2f1(1.0, b, 1.0 + b, -0.9001).unwrap();
        prop_assert!((inside - outside).abs() < 1e-4 * inside.abs());
    }
}
