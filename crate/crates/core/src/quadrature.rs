//! Gauss–Legendre panels with global adaptive bisection.
//!
//! Each panel is integrated twice with the same `n`-point rule, once whole and
//! once as two halves; the difference is the panel's error estimate and the
//! halves' sum is kept as its value. The panel with the largest estimate is
//! bisected until the summed estimate meets the tolerance or the evaluation
//! budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from the Tricomi initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule on `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: f64 = self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(mid + half * x)).sum();
        half * sum
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { p0 } else { p1 };
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, dp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Number of equal panels the interval is cut into before refinement.
    pub initial_panels: usize,
    /// Gauss–Legendre nodes per panel.
    pub order: usize,
    /// Hard cap on integrand evaluations.
    pub max_evaluations: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, initial_panels: 4, order: 16, max_evaluations: 4_000_000 }
    }
}

impl AdaptiveOptions {
    /// Splits the interval so that roughly `nodes` Gauss points are used up front.
    pub fn with_initial_nodes(mut self, nodes: usize) -> Self {
        self.initial_panels = nodes.div_ceil(self.order).max(1);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn eval_panel<F: Fn(f64) -> f64>(rule: &GaussLegendre, f: &F, a: f64, b: f64) -> Panel {
    let m = 0.5 * (a + b);
    let coarse = rule.integrate(f, a, b);
    let fine = rule.integrate(f, a, m) + rule.integrate(f, m, b);
    Panel { a, b, value: fine, error: (fine - coarse).abs() }
}

/// Integrates `f` over `[a, b]` to `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &AdaptiveOptions) -> Result<QuadResult> {
    let rule = GaussLegendre::new(opts.order);
    integrate_with_rule(&rule, f, a, b, opts)
}

/// As [`integrate`], reusing a precomputed rule (its length overrides `opts.order`).
pub fn integrate_with_rule<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: F,
    a: f64,
    b: f64,
    opts: &AdaptiveOptions,
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult { value: 0.0, error_estimate: 0.0, evaluations: 0, panels: 0 });
    }
    let per_panel = 3 * rule.len();
    let n0 = opts.initial_panels.max(1);
    let width = (b - a) / n0 as f64;
    let mut heap = BinaryHeap::with_capacity(2 * n0);
    for i in 0..n0 {
        let lo = a + width * i as f64;
        let hi = if i + 1 == n0 { b } else { a + width * (i + 1) as f64 };
        heap.push(eval_panel(rule, &f, lo, hi));
    }
    let mut evaluations = n0 * per_panel;

    loop {
        // Re-summing keeps the running totals free of cancellation drift.
        let (value, error) = heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target {
            return Ok(QuadResult { value, error_estimate: error, evaluations, panels: heap.len() });
        }
        if evaluations + 2 * per_panel > opts.max_evaluations {
            return Err(Error::Quadrature { estimate: value, error, evaluations });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            return Err(Error::Quadrature { estimate: value, error, evaluations });
        }
        heap.push(eval_panel(rule, &f, worst.a, mid));
        heap.push(eval_panel(rule, &f, mid, worst.b));
        evaluations += 2 * per_panel;
    }
}
