//! Bessel functions of the first kind, integer order.
//!
//! Small arguments use the power series. Otherwise Miller's downward recurrence
//! `J_{k-1} = (2k/x) J_k - J_{k+1}` is started well above both the order and the
//! turning point `k = x`, and normalised with `J_0 + 2 sum_k J_{2k} = 1`.

/// Below this argument the power series is used.
const SERIES_CUTOFF: f64 = 1.0;

/// Rescale the recurrence when values exceed this.
const RESCALE_ABOVE: f64 = 1e250;

/// `J_n(x)` for any integer order and real argument.
pub fn bessel_j(n: i64, x: f64) -> f64 {
    let order = n.unsigned_abs() as usize;
    let mut value = if x.abs() <= SERIES_CUTOFF {
        series(order, x.abs())
    } else {
        bessel_j_sequence(order, x.abs())[order]
    };
    // J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x).
    let odd = order % 2 == 1;
    if odd && (n < 0) != (x < 0.0) {
        value = -value;
    }
    value
}

/// `[J_0(x), J_1(x), ..., J_{n_max}(x)]` for `x >= 0`.
pub fn bessel_j_sequence(n_max: usize, x: f64) -> Vec<f64> {
    assert!(x >= 0.0 && x.is_finite(), "bessel_j_sequence needs a finite x >= 0, got {x}");
    if x <= SERIES_CUTOFF {
        return (0..=n_max).map(|n| series(n, x)).collect();
    }
    miller(n_max, x)
}

fn series(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * x;
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= half / k as f64;
        if lead == 0.0 {
            return 0.0;
        }
    }
    let q = half * half;
    let mut term = lead;
    let mut sum = lead;
    for m in 1..200 {
        term *= -q / (m as f64 * (m + n) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// First order at which to start the downward recurrence.
fn start_order(n_max: usize, x: f64) -> usize {
    // Past the turning point J_k(x) falls off like exp(-c (k - x)^{3/2} / sqrt(x)); a margin of
    // 16 x^{1/3} + 30 puts the starting ratio far below double precision.
    let base = (n_max as f64).max(x);
    let start = (base + 30.0 + 16.0 * x.cbrt()).ceil() as usize;
    start + start % 2
}

fn miller(n_max: usize, x: f64) -> Vec<f64> {
    let top = start_order(n_max, x);
    let mut out = vec![0.0; n_max + 1];
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-300; // J_k
    let mut norm = 0.0; // accumulates J_0 + 2 sum J_{2k}
    let two_over_x = 2.0 / x;
    for k in (1..=top).rev() {
        if k <= n_max {
            out[k] = cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        let prev = k as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            cur *= s;
            next *= s;
            norm *= s;
            for v in out.iter_mut().skip(k) {
                *v *= s;
            }
        }
    }
    out[0] = cur;
    norm += cur;
    let inv = 1.0 / norm;
    for v in &mut out {
        *v *= inv;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// `J_n(x) = (1/2pi) int_0^{2pi} cos(n tau - x sin tau) dtau`; the trapezoid rule on a
    /// periodic analytic integrand converges geometrically once the point count exceeds n + x.
    fn trapezoid_oracle(n: i64, x: f64) -> f64 {
        let m = 4 * ((n.unsigned_abs() as f64 + x.abs()) as usize + 64);
        let h = 2.0 * PI / m as f64;
        (0..m)
            .map(|j| {
                let tau = j as f64 * h;
                (n as f64 * tau - x * tau.sin()).cos()
            })
            .sum::<f64>()
            / m as f64
    }

    #[test]
    fn matches_integral_representation() {
        for &x in &[0.0, 1e-8, 0.3, 0.99, 1.01, 2.5, 7.0, 3.0 / std::f64::consts::SQRT_2, 40.0, 120.0, 353.55]
        {
            for &n in &[0i64, 1, 2, 3, 7, 20, 50, 200, 400] {
                let got = bessel_j(n, x);
                let want = trapezoid_oracle(n, x);
                assert!((got - want).abs() < 1e-12, "J_{n}({x}): got {got:e}, oracle {want:e}");
            }
        }
    }

    #[test]
    fn known_values() {
        // Abramowitz & Stegun table 9.1.
        assert!((bessel_j(0, 1.0) - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(1, 1.0) - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_j(0, 10.0) - (-0.245_935_764_451_348_3)).abs() < 1e-14);
        assert!((bessel_j(1, 10.0) - 0.043_472_746_168_861_44).abs() < 1e-14);
    }

    #[test]
    fn symmetry_relations() {
        for &x in &[0.5, 3.3, 17.0] {
            for n in 0..8i64 {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(bessel_j(-n, x), sign * bessel_j(n, x));
                assert_eq!(bessel_j(n, -x), sign * bessel_j(n, x));
            }
        }
    }

    #[test]
    fn sequence_sum_rule() {
        // sum_n J_n(x)^2 over all integers n equals 1.
        for &x in &[0.5, 4.0, 60.0, 353.55] {
            let seq = bessel_j_sequence((x as usize) + 200, x);
            let total = seq[0] * seq[0] + 2.0 * seq[1..].iter().map(|v| v * v).sum::<f64>();
            assert!((total - 1.0).abs() < 1e-13, "x={x}: {total}");
        }
    }

    #[test]
    fn deep_orders_underflow_gracefully() {
        assert_eq!(bessel_j(500, 0.5), 0.0);
        let v = bessel_j(500, 10.0);
        assert!((0.0..1e-300).contains(&v));
    }
}
