use proptest::prelude::*;

use ctqw_core::spectral::{h, k_branches, velocity_interval};
use ctqw_core::{amplitude_field, moment_limit_via_h, LimitLaw, Method, Regime, WalkParams};

fn coupling() -> impl Strategy<Value = f64> {
    (0.1f64..2.0, any::<bool>()).prop_map(|(m, neg)| if neg { -m } else { m })
}

fn generic_params() -> impl Strategy<Value = WalkParams> {
    (coupling(), coupling())
        .prop_filter("magnitudes must differ", |(a, b)| (a.abs() - b.abs()).abs() > 0.2)
        .prop_map(|(a, b)| WalkParams::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadrature_field_is_normalised(q in generic_params(), t in 0.0f64..15.0) {
        let r = q.light_cone_radius(t);
        let field = amplitude_field(&q, t, r, Method::FourierQuadrature).unwrap();
        prop_assert!((field.norm_sqr() - 1.0).abs() < 1e-9);
        for x in field.positions() {
            let v = field.get(x).unwrap();
            if x % 2 == 0 {
                prop_assert_eq!(v.im, 0.0);
                prop_assert_eq!(field.get(-x).unwrap(), v);
            } else {
                prop_assert_eq!(v.re, 0.0);
            }
        }
    }

    #[test]
    fn lattice_field_is_unitary(q in generic_params(), t in 0.0f64..15.0) {
        let r = q.light_cone_radius(t);
        let field = amplitude_field(&q, t, r, Method::LatticeOracle).unwrap();
        prop_assert!((field.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn equal_magnitude_methods_agree(g in coupling(), flip in any::<bool>(), t in 0.0f64..12.0) {
        let q = WalkParams::new(g, if flip { -g } else { g }).unwrap();
        prop_assert_eq!(q.regime(), Regime::EqualMagnitude);
        let r = q.light_cone_radius(t);
        let a = amplitude_field(&q, t, r, Method::FourierQuadrature).unwrap();
        let b = amplitude_field(&q, t, r, Method::Bessel).unwrap();
        for (u, v) in a.values().iter().zip(b.values()) {
            prop_assert!((u - v).norm() < 1e-8);
        }
    }

    #[test]
    fn moment_identity(q in generic_params(), r in 0u32..=8) {
        let law = LimitLaw::from_params(&q);
        let via_h = moment_limit_via_h(&q, r).unwrap();
        let scale = law.edge().powi(r as i32).max(1.0);
        prop_assert!((via_h - law.moment(r)).abs() < 1e-8 * scale);
    }

    #[test]
    fn law_determined_by_smaller_coupling(q in generic_params(), big in 2.5f64..50.0, y in -5.0f64..5.0) {
        let small = q.gamma_xi_abs();
        let other = WalkParams::new(small, big).unwrap();
        prop_assert_eq!(LimitLaw::from_params(&q).density(y), LimitLaw::from_params(&other).density(y));
    }

    #[test]
    fn limit_cdf_monotone(g in 0.05f64..3.0, a in -7.0f64..7.0, b in -7.0f64..7.0) {
        let law = LimitLaw::new(g).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(law.cdf(lo) <= law.cdf(hi));
        prop_assert!((0.0..=1.0).contains(&law.cdf(lo)));
    }

    #[test]
    fn branches_invert_h(q in generic_params(), u in 0.0f64..1.0) {
        let (lo, hi) = velocity_interval(&q);
        let x = lo + (hi - lo) * u;
        let kb = k_branches(&q, x).unwrap();
        prop_assert!(kb.k_plus <= kb.k_minus);
        prop_assert!((h(&q, kb.k_plus).unwrap() - x).abs() < 1e-9);
        prop_assert!((h(&q, kb.k_minus).unwrap() - x).abs() < 1e-9);
    }
}
