//! Gauss–Legendre rules and the composite/adaptive integrators built on them.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Points per cell used by every composite rule in this crate.
pub const CELL_POINTS: usize = 16;

/// An n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are the roots of P_n found by Newton iteration from the
    /// Chebyshev-like initial guess; weights follow from P_n'.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a Gauss-Legendre rule needs at least one point");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
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

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
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
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// The shared 16-point rule.
pub fn gauss_legendre_16() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(CELL_POINTS))
}

/// Adaptive bisection with the 16-point rule: a cell is accepted when the
/// two-halves estimate agrees with the whole-cell estimate to `tol`
/// (absolute, shared across the recursion) or to rounding level.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let rule = gauss_legendre_16();
    let whole = rule.integrate(a, b, f);
    adaptive_step(rule, f, a, b, whole, tol, 0)
}

const MAX_DEPTH: u32 = 30;

fn adaptive_step<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(a, mid, f);
    let right = rule.integrate(mid, b, f);
    let refined = left + right;
    let rounding = 64.0 * f64::EPSILON * refined.abs();
    if (refined - whole).abs() <= tol.max(rounding) || depth >= MAX_DEPTH {
        return refined;
    }
    adaptive_step(rule, f, a, mid, left, 0.5 * tol, depth + 1)
        + adaptive_step(rule, f, mid, b, right, 0.5 * tol, depth + 1)
}

/// ∫_a^∞ f for integrands that decay fast: unit cells are integrated
/// adaptively until two consecutive cells contribute less than `tol`
/// relative to the running total.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: &F, a: f64, tol: f64) -> f64 {
    let mut total = 0.0;
    let mut quiet = 0;
    let mut lo = a;
    for _ in 0..10_000 {
        let part = adaptive(f, lo, lo + 1.0, tol * 1e-3);
        total += part;
        if part.abs() <= tol * total.abs().max(f64::MIN_POSITIVE) {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        lo += 1.0;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_point_rule_is_exact_for_degree_31() {
        let rule = gauss_legendre_16();
        assert_eq!(rule.len(), 16);
        let sum: f64 = rule.weights().iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
        for p in [0, 1, 2, 7, 30, 31] {
            let got = rule.integrate(0.0, 1.0, |x| x.powi(p));
            let want = 1.0 / (p as f64 + 1.0);
            assert!((got - want).abs() < 1e-14, "degree {p}: {got} vs {want}");
        }
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        for n in [1, 2, 5, 16, 17] {
            let rule = GaussLegendre::new(n);
            let x = rule.nodes();
            assert!(x.windows(2).all(|w| w[0] < w[1]));
            for i in 0..n {
                assert!((x[i] + x[n - 1 - i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn adaptive_handles_a_kink() {
        let got = adaptive(&|x: f64| (x - 0.3).abs(), 0.0, 1.0, 1e-13);
        let want = 0.5 * 0.3 * 0.3 + 0.5 * 0.7 * 0.7;
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn half_line_gaussian() {
        let got = integrate_to_infinity(&|x: f64| (-x * x).exp(), 0.0, 1e-15);
        assert!((got - 0.5 * PI.sqrt()).abs() < 1e-14);
    }
}
