//! Per-edge solutions of `f″ + γ²f = γ²·C·g` and the characteristic matrix
//! `M(γ)` whose null vectors are eigenfunctions.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, End, MetrizedGraph, Point, VertexId};
use crate::measure::Measure;
use crate::numerics::{Poly, QuadratureRule};

/// `h` with `h″ + γ²h = γ²g`, from `h = Σₖ (−1)ᵏ g⁽²ᵏ⁾ / γ²ᵏ`.
pub fn particular_solution(g: &Poly, gamma: f64) -> Poly {
    let mut h = Poly::zero();
    let mut term = g.clone();
    let mut sign = 1.0;
    let inv = 1.0 / (gamma * gamma);
    let mut factor = 1.0;
    while !term.is_zero() {
        h = &h + &term.scale(sign * factor);
        term = term.derivative().derivative();
        sign = -sign;
        factor *= inv;
    }
    h
}

/// `(∫₀ᴸ g(t) cos γt dt, ∫₀ᴸ g(t) sin γt dt)`.
pub fn trig_moments(g: &Poly, gamma: f64, len: f64) -> (f64, f64) {
    if g.is_zero() {
        return (0.0, 0.0);
    }
    if gamma * len < 1.0 {
        let rule = QuadratureRule::new(16);
        let c = rule.integrate(|t| g.eval(t) * (gamma * t).cos(), 0.0, len);
        let s = rule.integrate(|t| g.eval(t) * (gamma * t).sin(), 0.0, len);
        return (c, s);
    }
    // C_k = Lᵏ sin γL/γ − (k/γ) S_{k−1},  S_k = (δ_{k0} − Lᵏ cos γL)/γ + (k/γ) C_{k−1}
    let (sl, cl) = (gamma * len).sin_cos();
    let (mut ck, mut sk) = (sl / gamma, (1.0 - cl) / gamma);
    let mut lk = 1.0;
    let coeffs = g.coeffs();
    let (mut c, mut s) = (coeffs[0] * ck, coeffs[0] * sk);
    for (k, &a) in coeffs.iter().enumerate().skip(1) {
        let kf = k as f64;
        lk *= len;
        let (c_prev, s_prev) = (ck, sk);
        ck = lk * sl / gamma - kf / gamma * s_prev;
        sk = -lk * cl / gamma + kf / gamma * c_prev;
        c += a * ck;
        s += a * sk;
    }
    (c, s)
}

/// A function `f_e(t) = A_e cos γt + B_e sin γt + C·h_e(t)` on each edge.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBasisSolution {
    pub gamma: f64,
    /// `(A_e, B_e)` per edge.
    pub coeffs: Vec<[f64; 2]>,
    pub c: f64,
    /// Particular solution `h_e` per edge.
    pub particular: Vec<Poly>,
}

impl EdgeBasisSolution {
    pub fn eval(&self, e: EdgeId, t: f64) -> f64 {
        let [a, b] = self.coeffs[e.0];
        let (s, c) = (self.gamma * t).sin_cos();
        a * c + b * s + self.c * self.particular[e.0].eval(t)
    }

    pub fn derivative(&self, e: EdgeId, t: f64) -> f64 {
        let [a, b] = self.coeffs[e.0];
        let (s, c) = (self.gamma * t).sin_cos();
        self.gamma * (b * c - a * s) + self.c * self.particular[e.0].derivative().eval(t)
    }

    /// Second derivative.
    pub fn second_derivative(&self, e: EdgeId, t: f64) -> f64 {
        let [a, b] = self.coeffs[e.0];
        let (s, c) = (self.gamma * t).sin_cos();
        let g2 = self.gamma * self.gamma;
        -g2 * (a * c + b * s) + self.c * self.particular[e.0].derivative().derivative().eval(t)
    }

    pub fn at(&self, graph: &MetrizedGraph, p: &Point) -> f64 {
        let (e, t) = graph.locate(p);
        self.eval(e, t)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            gamma: self.gamma,
            coeffs: self.coeffs.iter().map(|&[a, b]| [k * a, k * b]).collect(),
            c: k * self.c,
            particular: self.particular.clone(),
        }
    }

    /// `self − k·other`; both must share `γ` and particular parts.
    pub fn minus_scaled(&self, k: f64, other: &Self) -> Self {
        Self {
            gamma: self.gamma,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&[a, b], &[c, d])| [a - k * c, b - k * d])
                .collect(),
            c: self.c - k * other.c,
            particular: self.particular.clone(),
        }
    }

    /// Unknown vector in column order `(A₁, B₁, …, A_m, B_m, C)`.
    pub fn to_vector(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.coeffs.iter().flat_map(|&[a, b]| [a, b]).collect();
        v.push(self.c);
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Continuity(VertexId),
    Derivative(VertexId),
    Integral,
}

/// Row-scaled `M(γ)`, columns `(A₁, B₁, …, A_m, B_m, C)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicMatrix {
    pub gamma: f64,
    pub matrix: DMatrix<f64>,
    pub rows: Vec<RowKind>,
}

impl CharacteristicMatrix {
    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.clone().lu().determinant()
    }

    /// Maps a null vector to the corresponding edge functions.
    pub fn solution(&self, particular: &[Poly], v: &[f64]) -> EdgeBasisSolution {
        let m = particular.len();
        EdgeBasisSolution {
            gamma: self.gamma,
            coeffs: (0..m).map(|k| [v[2 * k], v[2 * k + 1]]).collect(),
            c: v[2 * m],
            particular: particular.to_vec(),
        }
    }
}

/// Everything about one edge that enters `M(γ)`.
struct EdgeTerms {
    cos_l: f64,
    sin_l: f64,
    h0: f64,
    hl: f64,
    dh0: f64,
    dhl: f64,
    /// `∫ cos γt · g`, `∫ sin γt · g`, `∫ h · g`.
    moments: [f64; 3],
    /// Upper bound for `∫ |g|`.
    abs_mass: f64,
}

/// Particular solutions for every edge of `graph` under `μ`.
pub fn particular_parts(graph: &MetrizedGraph, mu: &Measure, gamma: f64) -> Vec<Poly> {
    graph
        .edge_ids()
        .map(|e| {
            mu.density_on(e)
                .map_or_else(Poly::zero, |g| particular_solution(g, gamma))
        })
        .collect()
}

/// Assembles `M(γ)`. All atoms of `μ` must sit on vertices.
pub fn assemble_characteristic_matrix(
    graph: &MetrizedGraph,
    mu: &Measure,
    gamma: f64,
) -> Result<CharacteristicMatrix> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::Invalid(format!("frequency must be positive, got {gamma}")));
    }
    if mu.atoms().iter().any(|(p, _)| p.as_vertex().is_none()) {
        return Err(Error::Invalid(
            "characteristic matrix needs every atom on a vertex; subdivide first".into(),
        ));
    }
    let m = graph.edge_count();
    let n = 2 * m + 1;
    let hs = particular_parts(graph, mu, gamma);
    let terms: Vec<EdgeTerms> = graph
        .edge_ids()
        .map(|e| {
            let l = graph.length(e);
            let h = &hs[e.0];
            let dh = h.derivative();
            let (sin_l, cos_l) = (gamma * l).sin_cos();
            let (moments, abs_mass) = match mu.density_on(e) {
                Some(g) => {
                    let (c, s) = trig_moments(g, gamma, l);
                    let bound: f64 = g
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(k, a)| a.abs() * l.powi(k as i32 + 1) / (k as f64 + 1.0))
                        .sum();
                    ([c, s, (h * g).integral(0.0, l)], bound)
                }
                None => ([0.0; 3], 0.0),
            };
            EdgeTerms {
                cos_l,
                sin_l,
                h0: h.eval(0.0),
                hl: h.eval(l),
                dh0: dh.eval(0.0),
                dhl: dh.eval(l),
                moments,
                abs_mass,
            }
        })
        .collect();

    // Each row carries an entrywise magnitude envelope alongside its values;
    // rows are scaled by the envelope maximum.
    let value = |row: &mut [f64], env: &mut [f64], e: EdgeId, end: End, sign: f64| {
        let t = &terms[e.0];
        let (a, b, c) = match end {
            End::Tail => (1.0, 0.0, t.h0),
            End::Head => (t.cos_l, t.sin_l, t.hl),
        };
        row[2 * e.0] += sign * a;
        row[2 * e.0 + 1] += sign * b;
        row[2 * m] += sign * c;
        env[2 * e.0] += sign.abs();
        env[2 * e.0 + 1] += sign.abs();
        env[2 * m] += (sign * c).abs();
    };

    let mut data: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut envs: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut kinds = Vec::with_capacity(n);
    for v in graph.vertex_ids() {
        let inc = graph.incidences(v);
        let first = inc[0];
        for other in &inc[1..] {
            let mut row = vec![0.0; n];
            let mut env = vec![0.0; n];
            value(&mut row, &mut env, first.edge, first.end, 1.0);
            value(&mut row, &mut env, other.edge, other.end, -1.0);
            data.push(row);
            envs.push(env);
            kinds.push(RowKind::Continuity(v));
        }
        let mut row = vec![0.0; n];
        let mut env = vec![0.0; n];
        for i in inc {
            let t = &terms[i.edge.0];
            let k = i.edge.0;
            match i.end {
                End::Tail => {
                    row[2 * k + 1] += gamma;
                    row[2 * m] += t.dh0;
                    env[2 * k + 1] += gamma;
                    env[2 * m] += t.dh0.abs();
                }
                End::Head => {
                    row[2 * k] += gamma * t.sin_l;
                    row[2 * k + 1] -= gamma * t.cos_l;
                    row[2 * m] -= t.dhl;
                    env[2 * k] += gamma;
                    env[2 * k + 1] += gamma;
                    env[2 * m] += t.dhl.abs();
                }
            }
        }
        let cp = mu.atom_at(&Point::Vertex(v));
        row[2 * m] -= gamma * gamma * cp;
        env[2 * m] += gamma * gamma * cp.abs();
        data.push(row);
        envs.push(env);
        kinds.push(RowKind::Derivative(v));
    }
    let mut row = vec![0.0; n];
    let mut env = vec![0.0; n];
    for e in graph.edge_ids() {
        let [c, s, h] = terms[e.0].moments;
        row[2 * e.0] += c;
        row[2 * e.0 + 1] += s;
        row[2 * m] += h;
        let bound = terms[e.0].abs_mass;
        env[2 * e.0] += bound;
        env[2 * e.0 + 1] += bound;
        env[2 * m] += h.abs();
    }
    for &(p, c) in mu.atoms() {
        let v = p.as_vertex().expect("checked above");
        let i = graph.incidences(v)[0];
        value(&mut row, &mut env, i.edge, i.end, c);
    }
    data.push(row);
    envs.push(env);
    kinds.push(RowKind::Integral);

    debug_assert_eq!(data.len(), n);
    let scales: Vec<f64> = envs
        .iter()
        .map(|env| {
            let s = env.iter().fold(0.0f64, |a, &b| a.max(b));
            if s > 0.0 { 1.0 / s } else { 1.0 }
        })
        .collect();
    let matrix = DMatrix::from_fn(n, n, |i, j| data[i][j] * scales[i]);
    Ok(CharacteristicMatrix {
        gamma,
        matrix,
        rows: kinds,
    })
}

/// `det M(γ)` of the equilibrated matrix.
pub fn characteristic_det(graph: &MetrizedGraph, mu: &Measure, gamma: f64) -> Result<f64> {
    Ok(assemble_characteristic_matrix(graph, mu, gamma)?.determinant())
}
