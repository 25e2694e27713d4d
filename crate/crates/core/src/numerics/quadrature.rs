//! Gauss–Legendre quadrature applied piecewise.

use crate::error::{Error, Result};

/// Gauss–Legendre rule with `order` nodes on `[-1, 1]`. Exact for
/// polynomials of degree `2·order − 1` on each piece.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be at least 1");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        // Roots are symmetric; Newton from the Chebyshev-like initial guess.
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
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

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    /// Integrates over consecutive pieces `[b_k, b_{k+1}]` of a sorted
    /// breakpoint list.
    pub fn integrate_pieces(&self, mut f: impl FnMut(f64) -> f64, breaks: &[f64]) -> f64 {
        breaks
            .windows(2)
            .map(|w| self.integrate(&mut f, w[0], w[1]))
            .sum()
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::new(12)
    }
}

/// Value and derivative of the Legendre polynomial `P_n` at `x`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrates `f(edge, t)` over every edge, split at the given breakpoints.
/// `breaks[e]` must be sorted and include both edge endpoints.
pub fn integrate_piecewise(
    mut f: impl FnMut(usize, f64) -> f64,
    breaks: &[Vec<f64>],
    rule: &QuadratureRule,
) -> Result<f64> {
    let mut total = 0.0;
    for (e, b) in breaks.iter().enumerate() {
        if b.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Invalid(format!("breakpoints on edge {e} are not sorted")));
        }
        total += rule.integrate_pieces(|t| f(e, t), b);
    }
    if total.is_finite() {
        Ok(total)
    } else {
        Err(Error::NonFinite("piecewise quadrature"))
    }
}

/// Uniformly subdivides `[a, b]` into pieces no longer than `max_len`.
pub fn uniform_breaks(a: f64, b: f64, max_len: f64) -> Vec<f64> {
    let n = (((b - a) / max_len).ceil() as usize).max(1);
    (0..=n)
        .map(|k| if k == n { b } else { a + (b - a) * k as f64 / n as f64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn exact_for_low_degree() {
        let r = QuadratureRule::new(2);
        assert_abs_diff_eq!(r.integrate(|x| x * x, 0.0, 1.0), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn kink_with_breakpoint() {
        let r = QuadratureRule::new(2);
        let v = integrate_piecewise(|_, x| (x - 0.3f64).abs(), &[vec![0.0, 0.3, 1.0]], &r).unwrap();
        assert_abs_diff_eq!(v, 0.29, epsilon = 1e-15);
    }

    #[test]
    fn constant_over_split_circle() {
        let r = QuadratureRule::new(3);
        let v = integrate_piecewise(|_, _| 1.0, &[vec![0.0, 0.5], vec![0.0, 0.5]], &r).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn nan_is_reported() {
        let r = QuadratureRule::new(3);
        assert!(integrate_piecewise(|_, _| f64::NAN, &[vec![0.0, 1.0]], &r).is_err());
    }

    #[test]
    fn weights_sum_to_two() {
        for n in 1..40 {
            let r = QuadratureRule::new(n);
            assert_abs_diff_eq!(r.weights.iter().sum::<f64>(), 2.0, epsilon = 1e-13);
        }
    }

    proptest! {
        #[test]
        fn exact_on_random_polynomials(order in 1usize..16, seed in proptest::collection::vec(-1.0f64..1.0, 32)) {
            let deg = 2 * order - 1;
            let c = &seed[..=deg.min(31)];
            let p = crate::numerics::Poly::new(c.to_vec());
            let r = QuadratureRule::new(order);
            let exact = p.integral(-0.4, 1.3);
            let approx = r.integrate(|x| p.eval(x), -0.4, 1.3);
            let scale = c.iter().map(|v| v.abs()).sum::<f64>() * 1.3f64.powi(deg as i32 + 1) + 1.0;
            prop_assert!((exact - approx).abs() < 1e-12 * scale);
        }
    }
}
