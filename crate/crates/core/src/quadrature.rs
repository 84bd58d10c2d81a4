//! Composite Gauss–Legendre rules on geometrically graded panels.

use rayon::prelude::*;

use crate::summation::Neumaier;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss–Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { p0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// `count` panels covering `[a, b]` (`0 < a < b`) whose endpoints form a
/// geometric progression, so panels are shortest near `a`.
pub fn graded_panels(a: f64, b: f64, count: usize) -> Vec<(f64, f64)> {
    assert!(a > 0.0 && b > a && count > 0);
    let ratio = b / a;
    let edge = |i: usize| {
        if i == count {
            b
        } else {
            a * ratio.powf(i as f64 / count as f64)
        }
    };
    (0..count).map(|i| (edge(i), edge(i + 1))).collect()
}

/// Composite rule result.
#[derive(Debug, Clone, Copy)]
pub struct PanelSum {
    pub value: f64,
    pub min_integrand: f64,
    pub nodes: usize,
}

/// Applies `rule` on every panel. Integrand evaluations run in parallel; the
/// weighted sum is accumulated in node order.
pub fn integrate_panels<F>(f: F, panels: &[(f64, f64)], rule: &GaussLegendre) -> PanelSum
where
    F: Fn(f64) -> f64 + Sync,
{
    let points: Vec<(f64, f64)> = panels
        .iter()
        .flat_map(|&(lo, hi)| {
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            rule.nodes()
                .iter()
                .zip(rule.weights())
                .map(move |(&x, &w)| (mid + half * x, half * w))
        })
        .collect();
    let values: Vec<f64> = points.par_iter().map(|&(x, _)| f(x)).collect();
    let mut acc = Neumaier::new();
    let mut min = f64::INFINITY;
    for (&(_, w), &v) in points.iter().zip(&values) {
        acc.add(w * v);
        min = min.min(v);
    }
    PanelSum {
        value: acc.value(),
        min_integrand: min,
        nodes: points.len(),
    }
}
