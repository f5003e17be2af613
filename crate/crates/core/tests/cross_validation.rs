use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use ctqw_core::bessel::bessel_j;
use ctqw_core::{amplitude_field, distribution, lattice, AmplitudeField, Method, WalkParams};

const G: f64 = 1.0 / (2.0 * SQRT_2);

fn p(a: f64, b: f64) -> WalkParams {
    WalkParams::new(a, b).unwrap()
}

fn max_diff(a: &AmplitudeField, b: &AmplitudeField) -> f64 {
    a.values().iter().zip(b.values()).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max)
}

#[test]
fn quadrature_matches_lattice() {
    for q in [p(G, FRAC_1_SQRT_2), p(1.0, -0.5), p(-0.3, 0.9), p(-1.0, -0.25)] {
        for t in [10.0, 20.0] {
            let r = q.light_cone_radius(t);
            let quad = amplitude_field(&q, t, r, Method::FourierQuadrature).unwrap();
            let lat = amplitude_field(&q, t, r, Method::LatticeOracle).unwrap();
            let d = max_diff(&quad, &lat);
            assert!(d < 1e-6, "{q:?} t={t}: {d:e}");
        }
    }
}

#[test]
fn lattice_example_window() {
    let q = p(G, FRAC_1_SQRT_2);
    let lat = lattice::evolve(&q, 10.0, 60).unwrap();
    let quad = amplitude_field(&q, 10.0, 60, Method::FourierQuadrature).unwrap();
    assert!(max_diff(&quad, &lat) < 1e-6);
}

#[test]
fn three_methods_agree_for_equal_magnitudes() {
    for q in [p(G, G), p(G, -G), p(-0.5, -0.5), p(1.3, 1.3)] {
        for t in [5.0, 20.0] {
            let r = q.light_cone_radius(t);
            let fields: Vec<_> = [Method::FourierQuadrature, Method::Bessel, Method::LatticeOracle]
                .into_iter()
                .map(|m| amplitude_field(&q, t, r, m).unwrap())
                .collect();
            for i in 0..3 {
                for j in i + 1..3 {
                    let d = max_diff(&fields[i], &fields[j]);
                    assert!(d < 1e-6, "{q:?} t={t} methods {i},{j}: {d:e}");
                }
            }
            let z = 2.0 * q.gamma0().abs() * t;
            for f in &fields {
                let dist = f.to_distribution();
                for x in dist.positions() {
                    let j = bessel_j(x.abs(), z);
                    assert!((dist.prob(x) - j * j).abs() < 1e-8);
                }
            }
        }
    }
}

#[test]
fn parity_structure() {
    let q = p(G, FRAC_1_SQRT_2);
    let t = 20.0;
    let r = q.light_cone_radius(t) as i64;
    let quad = amplitude_field(&q, t, r as usize, Method::FourierQuadrature).unwrap();
    let lat = amplitude_field(&q, t, r as usize, Method::LatticeOracle).unwrap();
    let mut asymmetry: f64 = 0.0;
    for n in 0..=r / 2 {
        assert_eq!(quad.get(-2 * n), quad.get(2 * n));
        assert!((lat.get(-2 * n).unwrap() - lat.get(2 * n).unwrap()).norm() < 1e-10);
        if 2 * n < r {
            let gap = quad.get(2 * n + 1).unwrap().norm() - quad.get(-2 * n - 1).unwrap().norm();
            asymmetry = asymmetry.max(gap.abs());
        }
    }
    assert!(asymmetry > 1e-4, "odd sites unexpectedly symmetric: {asymmetry:e}");
}

#[test]
fn normalisation_across_methods_and_times() {
    for t in [1.0, 5.0, 20.0, 100.0] {
        let generic = p(G, FRAC_1_SQRT_2);
        let equal = p(G, G);
        for (q, m) in [
            (generic, Method::FourierQuadrature),
            (generic, Method::LatticeOracle),
            (equal, Method::FourierQuadrature),
            (equal, Method::Bessel),
            (equal, Method::LatticeOracle),
        ] {
            let d = distribution(&q, t, q.light_cone_radius(t), m).unwrap();
            assert!((d.captured_mass - 1.0).abs() < 1e-8, "{m:?} t={t}: {}", d.captured_mass);
        }
    }
}

#[test]
fn lattice_energy_stays_zero() {
    let q = p(0.9, -0.4);
    let r = q.light_cone_radius(25.0);
    let h = lattice::build_hamiltonian(&q, r).unwrap();
    for t in [0.0, 1.0, 7.0, 25.0] {
        let psi = lattice::evolve_on_lattice(&q, t, r).unwrap();
        assert!(h.expectation(&psi).abs() < 1e-9);
    }
}

#[test]
fn generic_path_approaches_equal_magnitude_closed_form() {
    let t = 20.0;
    let equal = p(0.5, 0.5);
    let r = equal.light_cone_radius(t);
    let bessel = amplitude_field(&equal, t, r, Method::Bessel).unwrap();
    let mut previous = f64::INFINITY;
    for delta in [1e-2, 1e-4, 1e-6] {
        let near = p(0.5, 0.5 + delta);
        let quad = amplitude_field(&near, t, r, Method::FourierQuadrature).unwrap();
        let d = max_diff(&quad, &bessel);
        assert!(d < previous && d < 20.0 * t * delta, "delta={delta}: {d:e}");
        previous = d;
    }
}
