use proptest::prelude::*;
use smallball::asym::{lagrange, theorem1_log_prob};
use smallball::field::{AsymptoticConstants, FieldParams};
use smallball::laplace::{laplace_eval, LaplacePath};
use smallball::mc::wilson_interval;
use smallball::saddle::{solve_saddle, RESIDUAL_TOL};
use smallball::specfun::{digamma_real, ln_gamma_real, polygamma};
use smallball::{Complex, Field, Preset};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gamma_function_recurrences(x in 0.05f64..40.0) {
        let lg = ln_gamma_real(x + 1.0).unwrap() - ln_gamma_real(x).unwrap();
        prop_assert!((lg - x.ln()).abs() <= 1e-13 * x.ln().abs().max(1.0));
        let dg = digamma_real(x + 1.0).unwrap() - digamma_real(x).unwrap();
        prop_assert!((dg - 1.0 / x).abs() <= 1e-12 * (1.0 / x).max(1.0));
        let z = Complex::new(x, 0.7);
        let t = polygamma(1, z).unwrap() - polygamma(1, z + 1.0).unwrap();
        let expect = (z * z).inv();
        prop_assert!((t - expect).norm() <= 1e-12 * expect.norm().max(1.0));
    }

    #[test]
    fn sbar_offsets_agree(b in -0.95f64..3.0, delta in -0.95f64..3.0) {
        let k = AsymptoticConstants::new(b, delta);
        prop_assert!((k.sbar_offset - k.sbar_offset_via_b()).abs() < 1e-12);
        prop_assert!((k.c1 - k.big_c / 4.0).abs() < 1e-15);
        prop_assert!((k.c2 + (k.big_c + 2.0) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn laplace_shape(b in -0.9f64..1.5, delta in -0.9f64..1.5, log_h in -3.0f64..12.0) {
        let p = Field::new(b, delta).unwrap();
        let h = 10f64.powf(log_h);
        let e = laplace_eval(h, &p, LaplacePath::RowCollapsed).unwrap();
        let next = laplace_eval(h * 1.01, &p, LaplacePath::RowCollapsed).unwrap();
        prop_assert!(e.l < 0.0 && next.l < e.l);
        prop_assert!(e.dl < 0.0 && e.dl > -p.trace() && next.dl > e.dl);
        prop_assert!(e.d2l > 0.0);
    }

    #[test]
    fn saddle_residual_and_sign(b in -0.9f64..1.0, delta in -0.9f64..1.0, frac in -7.0f64..-0.05) {
        let p = Field::new(b, delta).unwrap();
        let r = p.trace() * 10f64.powf(frac);
        let sol = solve_saddle(r, &p).unwrap();
        prop_assert!(sol.residual <= RESIDUAL_TOL * r);
        prop_assert!(sol.h > 0.0 && sol.tau2 > 0.0);
    }

    #[test]
    fn lagrange_root(d in 0.2f64..5.0, log_eps in -12.0f64..-3.0) {
        let eps = 10f64.powf(log_eps);
        let sol = lagrange(d, eps, 8).unwrap();
        prop_assert!(sol.residual() <= 1e-13);
        prop_assert!(sol.y_numeric > std::f64::consts::E / d);
        prop_assert!(sol.relative_gap() < 1e-2);
    }

    #[test]
    fn wilson_brackets_estimate(n in 1usize..100_000, frac in 0.0f64..=1.0) {
        let hits = ((n as f64) * frac) as usize;
        let (lo, hi) = wilson_interval::<f64>(hits, n);
        let p = hits as f64 / n as f64;
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }
}

#[test]
fn single_precision_tracks_double() {
    for preset in Preset::ALL {
        let p64 = FieldParams::<f64>::preset(preset);
        let p32 = FieldParams::<f32>::preset(preset);
        let a = theorem1_log_prob(1e-3f64, &p64, 6).unwrap().log_p;
        let b = theorem1_log_prob(1e-3f32, &p32, 6).unwrap().log_p;
        assert!(((b as f64 - a) / a).abs() < 1e-5, "{preset}: {a} vs {b}");
        let s64 = solve_saddle(1e-2f64, &p64).unwrap();
        let s32 = solve_saddle(1e-2f32, &p32).unwrap();
        assert!(((s32.h as f64 - s64.h) / s64.h).abs() < 1e-3);
    }
}
