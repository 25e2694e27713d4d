//! Piecewise polynomials on an interval `[0, L]`.

use super::Poly;

/// Polynomial pieces on consecutive intervals `[breaks[k], breaks[k+1]]`.
/// Each piece is expressed in the global coordinate, not shifted.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePoly {
    breaks: Vec<f64>,
    pieces: Vec<Poly>,
}

impl PiecewisePoly {
    /// Zero function on `[0, len]` split at the given interior breakpoints.
    pub fn zero(len: f64, interior: &[f64]) -> Self {
        let mut breaks = vec![0.0];
        let mut inner: Vec<f64> = interior
            .iter()
            .copied()
            .filter(|&t| t > 0.0 && t < len)
            .collect();
        inner.sort_by(f64::total_cmp);
        inner.dedup();
        breaks.extend(inner);
        breaks.push(len);
        let pieces = vec![Poly::zero(); breaks.len() - 1];
        Self { breaks, pieces }
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn len(&self) -> f64 {
        *self.breaks.last().expect("at least one piece")
    }

    /// Adds `p` on every piece.
    pub fn add_everywhere(&mut self, p: &Poly) {
        for q in &mut self.pieces {
            *q = &*q + p;
        }
    }

    /// Adds `left` on pieces ending at or before `at` and `right` on pieces
    /// starting at or after it. `at` must be a breakpoint.
    pub fn add_split(&mut self, at: f64, left: &Poly, right: &Poly) {
        for (k, q) in self.pieces.iter_mut().enumerate() {
            let mid = 0.5 * (self.breaks[k] + self.breaks[k + 1]);
            *q = if mid < at { &*q + left } else { &*q + right };
        }
    }

    fn piece_index(&self, t: f64) -> usize {
        let n = self.pieces.len();
        self.breaks[1..n].partition_point(|&b| b <= t).min(n - 1)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.pieces[self.piece_index(t)].eval(t)
    }

    /// `∫₀ᴸ p(t) dt`.
    pub fn integral(&self) -> f64 {
        self.pieces
            .iter()
            .enumerate()
            .map(|(k, p)| p.integral(self.breaks[k], self.breaks[k + 1]))
            .sum()
    }

    /// `∫₀ᴸ p(t) w(t) dt` for a polynomial weight.
    pub fn integral_against(&self, w: &Poly) -> f64 {
        self.pieces
            .iter()
            .enumerate()
            .map(|(k, p)| (p * w).integral(self.breaks[k], self.breaks[k + 1]))
            .sum()
    }

    /// Maximum over `[0, L]` as `(argmax, value)`.
    pub fn max(&self) -> (f64, f64) {
        self.pieces
            .iter()
            .enumerate()
            .map(|(k, p)| p.max_on(self.breaks[k], self.breaks[k + 1]))
            .fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
    }

    /// Same pieces with a constant added.
    pub fn plus_constant(&self, c: f64) -> Self {
        let k = Poly::constant(c);
        Self {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|p| p + &k).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kink_function() {
        // |t - 0.3| on [0, 1]
        let mut p = PiecewisePoly::zero(1.0, &[0.3]);
        p.add_split(0.3, &Poly::new(vec![0.3, -1.0]), &Poly::new(vec![-0.3, 1.0]));
        assert_abs_diff_eq!(p.eval(0.1), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(p.eval(0.8), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p.integral(), 0.29, epsilon = 1e-15);
        let (arg, v) = p.max();
        assert_eq!(arg, 1.0);
        assert_abs_diff_eq!(v, 0.7, epsilon = 1e-15);
    }
}
