//! Composite Gauss–Legendre quadrature.

use std::f64::consts::PI;

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on P_n, seeded with the usual
    /// Chebyshev-like guesses `cos(π(i − 1/4)/(n + 1/2))`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(order, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        if order % 2 == 1 {
            nodes[order / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
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

    /// Integrates `f` over `[a, b]` split into `panels` equal panels.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, panels: usize) -> f64 {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let lo = a + width * p as f64;
            let mid = lo + 0.5 * width;
            let half = 0.5 * width;
            let sum: f64 = self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&t, &w)| w * f(mid + half * t))
                .sum();
            total += half * sum;
        }
        total
    }
}

/// Returns `(P_n(x), P_n'(x))` via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for order in [1, 2, 5, 20, 33] {
            let gl = GaussLegendre::new(order);
            let s: f64 = gl.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "order {order}: {s}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let gl = GaussLegendre::new(20);
        for deg in 0..40 {
            let got = gl.integrate(|x| x.powi(deg), 0.0, 1.0, 1);
            let want = 1.0 / (deg as f64 + 1.0);
            assert!((got - want).abs() < 1e-14, "deg {deg}: {got} vs {want}");
        }
    }

    #[test]
    fn composite_integrates_smooth_function() {
        let gl = GaussLegendre::new(20);
        let got = gl.integrate(f64::exp, -1.0, 3.0, 8);
        assert!((got - (3f64.exp() - (-1f64).exp())).abs() < 1e-13);
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        let gl = GaussLegendre::new(20);
        let nodes = gl.nodes();
        for w in nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
        for i in 0..10 {
            assert_eq!(nodes[i], -nodes[19 - i]);
        }
    }
}
