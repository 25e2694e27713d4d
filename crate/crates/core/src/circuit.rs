//! The graph as an electrical network: conductance Laplacian, j-functions,
//! effective resistance, and resistance potentials of measures.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MetrizedGraph, Point, VertexId};
use crate::measure::Measure;
use crate::numerics::linalg::grounded_inverse;
use crate::numerics::{solve_grounded, PiecewisePoly, Poly};

/// `Q = D − A` with conductance `1/L(e)` per edge; parallel edges add.
#[derive(Debug, Clone, PartialEq)]
pub struct ConductanceLaplacian {
    matrix: DMatrix<f64>,
}

impl ConductanceLaplacian {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }
}

pub fn laplacian_matrix(graph: &MetrizedGraph) -> ConductanceLaplacian {
    ConductanceLaplacian {
        matrix: laplacian_without(graph, None),
    }
}

fn laplacian_without(graph: &MetrizedGraph, skip: Option<EdgeId>) -> DMatrix<f64> {
    let n = graph.vertex_count();
    let mut q = DMatrix::zeros(n, n);
    for e in graph.edge_ids() {
        if Some(e) == skip {
            continue;
        }
        let edge = graph.edge(e);
        let (a, b, w) = (edge.tail.0, edge.head.0, 1.0 / edge.length);
        q[(a, a)] += w;
        q[(b, b)] += w;
        q[(a, b)] -= w;
        q[(b, a)] -= w;
    }
    q
}

/// `j_ζ(x, y)`: the voltage at `x` when unit current enters at `y` and leaves
/// at `ζ`, with `ζ` grounded.
pub fn j_function(graph: &MetrizedGraph, zeta: &Point, y: &Point, x: &Point) -> Result<f64> {
    let (g, ids, _) = graph.subdivide_all(&[*x, *y, *zeta]);
    let (vx, vy, vz) = (ids[0], ids[1], ids[2]);
    if vy == vz {
        return Ok(0.0);
    }
    let q = laplacian_matrix(&g);
    let mut b = DVector::zeros(g.vertex_count());
    b[vy.0] += 1.0;
    b[vz.0] -= 1.0;
    let v = solve_grounded(q.matrix(), &b, vz.0)?;
    Ok(v[vx.0])
}

/// `r(x, y) = j_x(y, y)`.
pub fn effective_resistance(graph: &MetrizedGraph, x: &Point, y: &Point) -> Result<f64> {
    j_function(graph, x, y, y)
}

/// Resistance between the endpoints of `e` in the graph with `e` removed;
/// infinite for a bridge.
pub fn removed_edge_resistance(graph: &MetrizedGraph, e: EdgeId) -> Result<f64> {
    let edge = graph.edge(e);
    if !connected_without(graph, e) {
        return Ok(f64::INFINITY);
    }
    let q = laplacian_without(graph, Some(e));
    let mut b = DVector::zeros(graph.vertex_count());
    b[edge.tail.0] = 1.0;
    b[edge.head.0] = -1.0;
    let v = solve_grounded(&q, &b, edge.head.0)?;
    Ok(v[edge.tail.0])
}

fn connected_without(graph: &MetrizedGraph, skip: EdgeId) -> bool {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([VertexId(0)]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for inc in graph.incidences(v) {
            if inc.edge == skip {
                continue;
            }
            let w = graph.other_end(inc.edge, v);
            if !seen[w.0] {
                seen[w.0] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == n
}

/// Closed-form effective resistance between arbitrary points, built from one
/// grounded inverse of the vertex Laplacian.
#[derive(Debug, Clone)]
pub struct ResistanceField {
    graph: MetrizedGraph,
    vertex: DMatrix<f64>,
    /// Per edge `1/(L + R(e))`, zero for bridges.
    kappa: Vec<f64>,
}

impl ResistanceField {
    pub fn new(graph: &MetrizedGraph) -> Result<Self> {
        let n = graph.vertex_count();
        let vertex = if n == 1 {
            DMatrix::zeros(1, 1)
        } else {
            let q = laplacian_matrix(graph);
            let ginv = grounded_inverse(q.matrix(), 0)?;
            DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    0.0
                } else {
                    (ginv[(i, i)] + ginv[(j, j)] - 2.0 * ginv[(i, j)]).max(0.0)
                }
            })
        };
        let kappa = graph
            .edge_ids()
            .map(|e| {
                let edge = graph.edge(e);
                let l = edge.length;
                let rab = vertex[(edge.tail.0, edge.head.0)];
                ((l - rab) / (l * l)).max(0.0)
            })
            .collect();
        Ok(Self {
            graph: graph.clone(),
            vertex,
            kappa,
        })
    }

    pub fn graph(&self) -> &MetrizedGraph {
        &self.graph
    }

    /// `1/(L(e) + R(e))`.
    pub fn kappa(&self, e: EdgeId) -> f64 {
        self.kappa[e.0]
    }

    /// `R(e)` recovered from the field: `1/κ − L`, infinite for bridges.
    pub fn removed_edge_resistance(&self, e: EdgeId) -> f64 {
        let k = self.kappa[e.0];
        if k <= 0.0 {
            f64::INFINITY
        } else {
            1.0 / k - self.graph.length(e)
        }
    }

    pub fn vertex_resistance(&self, u: VertexId, v: VertexId) -> f64 {
        self.vertex[(u.0, v.0)]
    }

    pub fn r(&self, x: &Point, y: &Point) -> f64 {
        match (*x, *y) {
            (Point::Vertex(u), Point::Vertex(v)) => self.vertex[(u.0, v.0)],
            (Point::Vertex(u), Point::Interior { edge, offset }) => {
                self.along(edge, offset, |w| self.vertex[(u.0, w.0)])
            }
            (Point::Interior { edge, offset }, Point::Vertex(v)) => {
                self.along(edge, offset, |w| self.vertex[(w.0, v.0)])
            }
            (Point::Interior { edge: e, offset: s }, Point::Interior { edge: f, offset: t }) => {
                if e == f {
                    let d = (s - t).abs();
                    d - self.kappa[e.0] * d * d
                } else {
                    self.along(f, t, |w| self.r(x, &Point::Vertex(w)))
                }
            }
        }
    }

    /// `(1 − t/L)·h(a) + (t/L)·h(b) + κ t(L − t)` along edge `(a, b)`.
    fn along(&self, e: EdgeId, t: f64, h: impl Fn(VertexId) -> f64) -> f64 {
        let edge = self.graph.edge(e);
        let l = edge.length;
        (1.0 - t / l) * h(edge.tail) + (t / l) * h(edge.head) + self.kappa[e.0] * t * (l - t)
    }

    /// `s ↦ r(x_s, q)` on edge `e` for `q` not interior to `e`.
    fn cross_poly(&self, e: EdgeId, q: &Point) -> Poly {
        let edge = self.graph.edge(e);
        let l = edge.length;
        let k = self.kappa[e.0];
        let ra = self.r(&Point::Vertex(edge.tail), q);
        let rb = self.r(&Point::Vertex(edge.head), q);
        Poly::new(vec![ra, (rb - ra) / l + k * l, -k])
    }

    /// `j_ζ(x, y) = ½(r(x,ζ) + r(y,ζ) − r(x,y))`.
    pub fn j(&self, zeta: &Point, y: &Point, x: &Point) -> f64 {
        0.5 * (self.r(x, zeta) + self.r(y, zeta) - self.r(x, y))
    }

    /// `x ↦ ∫ r(x, ζ) dω(ζ)` as exact piecewise polynomials on every edge.
    pub fn potential(&self, omega: &Measure) -> Potential {
        let g = &self.graph;
        let mut edges = Vec::with_capacity(g.edge_count());
        for e in g.edge_ids() {
            let l = g.length(e);
            let k = self.kappa[e.0];
            let kinks: Vec<f64> = omega
                .atoms()
                .iter()
                .filter_map(|(p, _)| match *p {
                    Point::Interior { edge, offset } if edge == e => Some(offset),
                    _ => None,
                })
                .collect();
            let mut pw = PiecewisePoly::zero(l, &kinks);
            for &(p, c) in omega.atoms() {
                match p {
                    Point::Interior { edge, offset: t } if edge == e => {
                        let sq = Poly::new(vec![t * t, -2.0 * t, 1.0]).scale(k);
                        let left = &Poly::new(vec![t, -1.0]) - &sq;
                        let right = &Poly::new(vec![-t, 1.0]) - &sq;
                        pw.add_split(t, &left.scale(c), &right.scale(c));
                    }
                    _ => pw.add_everywhere(&self.cross_poly(e, &p).scale(c)),
                }
            }
            for (&f, dens) in omega.densities() {
                let lf = g.length(f);
                let m0 = dens.integral(0.0, lf);
                let m1 = (dens * &Poly::t()).integral(0.0, lf);
                let m2 = (dens * &Poly::new(vec![0.0, 0.0, 1.0])).integral(0.0, lf);
                if f != e {
                    let edge_f = g.edge(f);
                    let kf = self.kappa[f.0];
                    let pc = self.cross_poly(e, &Point::Vertex(edge_f.tail));
                    let pd = self.cross_poly(e, &Point::Vertex(edge_f.head));
                    let sum = &(&pc.scale(m0 - m1 / lf) + &pd.scale(m1 / lf))
                        + &Poly::constant(kf * (lf * m1 - m2));
                    pw.add_everywhere(&sum);
                } else {
                    let big_g = dens.antiderivative();
                    let big_h = (dens * &Poly::t()).antiderivative();
                    let (gl, hl) = (big_g.eval(l), big_h.eval(l));
                    let abs_part = &(&(&Poly::t() * &big_g).scale(2.0) - &big_h.scale(2.0))
                        + &Poly::new(vec![hl, -gl]);
                    let sq = Poly::new(vec![m2, -2.0 * m1, m0]).scale(k);
                    pw.add_everywhere(&(&abs_part - &sq));
                }
            }
            edges.push(pw);
        }
        Potential::new(g, edges)
    }
}

/// Per-edge piecewise-polynomial function that is continuous on the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    edges: Vec<PiecewisePoly>,
    anchors: Vec<(EdgeId, f64)>,
}

impl Potential {
    pub fn new(graph: &MetrizedGraph, edges: Vec<PiecewisePoly>) -> Self {
        let anchors = graph
            .vertex_ids()
            .map(|v| graph.locate(&Point::Vertex(v)))
            .collect();
        Self { edges, anchors }
    }

    pub fn edge(&self, e: EdgeId) -> &PiecewisePoly {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[PiecewisePoly] {
        &self.edges
    }

    pub fn eval(&self, p: &Point) -> f64 {
        let (e, t) = match *p {
            Point::Vertex(v) => self.anchors[v.0],
            Point::Interior { edge, offset } => (edge, offset),
        };
        self.edges[e.0].eval(t)
    }

    /// `∫ self dν`, exact.
    pub fn integrate(&self, nu: &Measure) -> f64 {
        let atoms: f64 = nu.atoms().iter().map(|(p, c)| c * self.eval(p)).sum();
        let dens: f64 = nu
            .densities()
            .iter()
            .map(|(e, g)| self.edges[e.0].integral_against(g))
            .sum();
        atoms + dens
    }

    /// `∫ self dx`, exact.
    pub fn integral(&self) -> f64 {
        self.edges.iter().map(PiecewisePoly::integral).sum()
    }

    /// Same function plus a constant.
    pub fn plus_constant(&self, c: f64) -> Self {
        Self {
            edges: self.edges.iter().map(|p| p.plus_constant(c)).collect(),
            anchors: self.anchors.clone(),
        }
    }

    /// Maximum over the graph as `(point, value)`.
    pub fn max(&self, graph: &MetrizedGraph) -> Result<(Point, f64)> {
        let mut best: Option<(Point, f64)> = None;
        for (k, pw) in self.edges.iter().enumerate() {
            let (t, v) = pw.max();
            if best.as_ref().is_none_or(|b| v > b.1) {
                best = Some((graph.point_on_edge(EdgeId(k), t)?, v));
            }
        }
        best.ok_or(Error::EmptyGraph)
    }
}

/// Exact representation of `x ↦ r(x, y)` for a fixed target `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceProfile {
    target: Point,
    edges: Vec<PiecewisePoly>,
}

/// Builds the profile of `r(·, y)`: a quadratic fitted through offsets
/// `0, L/2, L` on edges not containing `y`, the kink formula on the edge that
/// does.
pub fn resistance_profile(field: &ResistanceField, y: &Point) -> Result<ResistanceProfile> {
    let g = field.graph();
    let mut edges = Vec::with_capacity(g.edge_count());
    for e in g.edge_ids() {
        let l = g.length(e);
        let pw = match *y {
            Point::Interior { edge, offset: t } if edge == e => {
                let k = field.kappa(e);
                let sq = Poly::new(vec![t * t, -2.0 * t, 1.0]).scale(k);
                let mut pw = PiecewisePoly::zero(l, &[t]);
                pw.add_split(t, &(&Poly::new(vec![t, -1.0]) - &sq), &(&Poly::new(vec![-t, 1.0]) - &sq));
                pw
            }
            _ => {
                let at = |s: f64| -> Result<f64> { Ok(field.r(&g.point_on_edge(e, s)?, y)) };
                let (f0, fm, f1) = (at(0.0)?, at(0.5 * l)?, at(l)?);
                // Lagrange form through (0, f0), (L/2, fm), (L, f1).
                let c2 = 2.0 * (f0 - 2.0 * fm + f1) / (l * l);
                let c1 = (f1 - f0) / l - c2 * l;
                let quad = Poly::new(vec![f0, c1, c2]);
                let probe = 0.25 * l;
                let expect = at(probe)?;
                let scale = 1.0 + f0.abs().max(f1.abs());
                if (quad.eval(probe) - expect).abs() > 1e-9 * scale {
                    return Err(Error::Numeric(format!(
                        "resistance profile on edge `{}` is not quadratic",
                        g.edge(e).name
                    )));
                }
                let mut pw = PiecewisePoly::zero(l, &[]);
                pw.add_everywhere(&quad);
                pw
            }
        };
        edges.push(pw);
    }
    Ok(ResistanceProfile { target: *y, edges })
}

impl ResistanceProfile {
    pub fn target(&self) -> &Point {
        &self.target
    }

    pub fn edge(&self, e: EdgeId) -> &PiecewisePoly {
        &self.edges[e.0]
    }

    pub fn eval(&self, graph: &MetrizedGraph, x: &Point) -> f64 {
        let (e, t) = graph.locate(x);
        self.edges[e.0].eval(t)
    }

    /// `∫ (∂r/∂x)² dx`, exact.
    pub fn derivative_energy(&self) -> f64 {
        self.edges
            .iter()
            .map(|pw| {
                pw.pieces()
                    .iter()
                    .enumerate()
                    .map(|(k, p)| {
                        let d = p.derivative();
                        (&d * &d).integral(pw.breaks()[k], pw.breaks()[k + 1])
                    })
                    .sum::<f64>()
            })
            .sum()
    }
}
