//! Dense real polynomials in one variable, coefficients in ascending order.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Self::new(vec![0.0, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Poly {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(0.0);
        c.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &a)| a / (k as f64 + 1.0)),
        );
        Poly::new(c)
    }

    pub fn integral(&self, a: f64, b: f64) -> f64 {
        let p = self.antiderivative();
        p.eval(b) - p.eval(a)
    }

    pub fn scale(&self, k: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `t ↦ p(t + shift)`.
    pub fn shift(&self, shift: f64) -> Poly {
        // Horner in polynomial arithmetic: p(t + s) = (...(c_n (t+s) + c_{n-1})(t+s) ...).
        let base = Poly::new(vec![shift, 1.0]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| &(&acc * &base) + &Poly::constant(c))
    }

    /// `t ↦ p(k t)`.
    pub fn dilate(&self, k: f64) -> Poly {
        let mut f = 1.0;
        Poly::new(
            self.coeffs
                .iter()
                .map(|&c| {
                    let v = c * f;
                    f *= k;
                    v
                })
                .collect(),
        )
    }

    /// Largest coefficient magnitude, used as a scale for tolerances.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// All real roots in `[a, b]`, ascending. Roots of even multiplicity are
    /// found through the critical points of the polynomial.
    pub fn roots_in(&self, a: f64, b: f64) -> Vec<f64> {
        if self.is_zero() || a > b {
            return Vec::new();
        }
        if self.degree() == 0 {
            return Vec::new();
        }
        if self.degree() == 1 {
            let r = -self.coeffs[0] / self.coeffs[1];
            return if r >= a && r <= b { vec![r] } else { Vec::new() };
        }
        let mut knots = vec![a];
        knots.extend(self.derivative().roots_in(a, b));
        knots.push(b);
        let scale = self.norm_inf() * (1.0 + a.abs().max(b.abs())).powi(self.degree() as i32);
        let tiny = 1e-14 * scale;
        let mut roots: Vec<f64> = Vec::new();
        for w in knots.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (flo, fhi) = (self.eval(lo), self.eval(hi));
            if flo.abs() <= tiny {
                roots.push(lo);
            } else if flo.signum() != fhi.signum() && fhi.abs() > tiny {
                roots.push(bisect(|t| self.eval(t), lo, hi, flo));
            }
        }
        if self.eval(b).abs() <= tiny {
            roots.push(b);
        }
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * (1.0 + y.abs()));
        roots
    }

    /// Maximum of the polynomial over `[a, b]` as `(argmax, value)`.
    pub fn max_on(&self, a: f64, b: f64) -> (f64, f64) {
        let mut best = (a, self.eval(a));
        for t in self
            .derivative()
            .roots_in(a, b)
            .into_iter()
            .chain(std::iter::once(b))
        {
            let v = self.eval(t);
            if v > best.1 {
                best = (t, v);
            }
        }
        best
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&0.0) + rhs.coeffs.get(k).unwrap_or(&0.0))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
