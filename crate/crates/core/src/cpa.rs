//! Continuous piecewise-affine functions on a metrized graph.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MetrizedGraph, Point, VertexId};

/// A continuous function that is affine between knots. Knots are the graph
/// vertices plus optional interior knots on each edge.
#[derive(Debug, Clone, PartialEq)]
pub struct CpaFunction {
    vertex_values: Vec<f64>,
    /// Per edge: sorted interior knots `(offset, value)`.
    interior: Vec<Vec<(f64, f64)>>,
}

impl CpaFunction {
    /// Affine on every edge, interpolating the given vertex values.
    pub fn from_vertex_values(graph: &MetrizedGraph, values: Vec<f64>) -> Result<Self> {
        if values.len() != graph.vertex_count() {
            return Err(Error::Invalid(format!(
                "expected {} vertex values, got {}",
                graph.vertex_count(),
                values.len()
            )));
        }
        Ok(Self {
            vertex_values: values,
            interior: vec![Vec::new(); graph.edge_count()],
        })
    }

    /// Samples `f` at every vertex and at `knots_per_edge` equally spaced
    /// interior points of each edge.
    pub fn interpolate(
        graph: &MetrizedGraph,
        knots_per_edge: usize,
        f: impl Fn(&Point) -> f64,
    ) -> Self {
        let vertex_values = graph.vertex_ids().map(|v| f(&Point::Vertex(v))).collect();
        let interior = graph
            .edge_ids()
            .map(|e| {
                let len = graph.length(e);
                (1..=knots_per_edge)
                    .map(|k| {
                        let t = len * k as f64 / (knots_per_edge + 1) as f64;
                        (t, f(&Point::Interior { edge: e, offset: t }))
                    })
                    .collect()
            })
            .collect();
        Self {
            vertex_values,
            interior,
        }
    }

    /// The hat function equal to 1 at `v` and 0 at every other vertex.
    pub fn hat(graph: &MetrizedGraph, v: VertexId) -> Self {
        let values = graph
            .vertex_ids()
            .map(|w| if w == v { 1.0 } else { 0.0 })
            .collect();
        Self::from_vertex_values(graph, values).expect("sized from the graph")
    }

    /// Adds an interior knot with the given value.
    pub fn with_knot(mut self, graph: &MetrizedGraph, e: EdgeId, offset: f64, value: f64) -> Result<Self> {
        match graph.point_on_edge(e, offset)? {
            Point::Interior { .. } => {
                let knots = &mut self.interior[e.0];
                knots.retain(|&(t, _)| t != offset);
                knots.push((offset, value));
                knots.sort_by(|a, b| a.0.total_cmp(&b.0));
                Ok(self)
            }
            Point::Vertex(v) => {
                self.vertex_values[v.0] = value;
                Ok(self)
            }
        }
    }

    /// Knots along edge `e` including both endpoints, as `(offset, value)`.
    pub fn edge_knots(&self, graph: &MetrizedGraph, e: EdgeId) -> Vec<(f64, f64)> {
        let edge = graph.edge(e);
        let mut k = Vec::with_capacity(self.interior[e.0].len() + 2);
        k.push((0.0, self.vertex_values[edge.tail.0]));
        k.extend_from_slice(&self.interior[e.0]);
        k.push((edge.length, self.vertex_values[edge.head.0]));
        k
    }

    /// Affine pieces on edge `e` as `(start, end, slope)`.
    pub fn pieces(&self, graph: &MetrizedGraph, e: EdgeId) -> Vec<(f64, f64, f64)> {
        self.edge_knots(graph, e)
            .windows(2)
            .map(|w| (w[0].0, w[1].0, (w[1].1 - w[0].1) / (w[1].0 - w[0].0)))
            .collect()
    }

    pub fn eval(&self, graph: &MetrizedGraph, p: &Point) -> f64 {
        match *p {
            Point::Vertex(v) => self.vertex_values[v.0],
            Point::Interior { edge, offset } => {
                let knots = self.edge_knots(graph, edge);
                let i = knots
                    .windows(2)
                    .position(|w| offset <= w[1].0)
                    .unwrap_or(knots.len() - 2);
                let (t0, v0) = knots[i];
                let (t1, v1) = knots[i + 1];
                v0 + (v1 - v0) * (offset - t0) / (t1 - t0)
            }
        }
    }

    /// Value at offset `t` of edge `e`.
    pub fn eval_on_edge(&self, graph: &MetrizedGraph, e: EdgeId, t: f64) -> f64 {
        match graph.point_on_edge(e, t) {
            Ok(p) => self.eval(graph, &p),
            Err(_) => f64::NAN,
        }
    }

    /// Same function plus a constant.
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            vertex_values: self.vertex_values.iter().map(|v| v + c).collect(),
            interior: self
                .interior
                .iter()
                .map(|k| k.iter().map(|&(t, v)| (t, v + c)).collect())
                .collect(),
        }
    }

    /// Dirichlet energy `∫ |f'|² dx`, exact.
    pub fn dirichlet_energy(&self, graph: &MetrizedGraph) -> f64 {
        graph
            .edge_ids()
            .flat_map(|e| self.pieces(graph, e))
            .map(|(a, b, s)| s * s * (b - a))
            .sum()
    }

    /// `∫ f² dx`, exact on each affine piece.
    pub fn l2_norm_squared(&self, graph: &MetrizedGraph) -> f64 {
        graph
            .edge_ids()
            .flat_map(|e| {
                self.edge_knots(graph, e)
                    .windows(2)
                    .map(|w| {
                        let (h, a, b) = (w[1].0 - w[0].0, w[0].1, w[1].1);
                        h * (a * a + a * b + b * b) / 3.0
                    })
                    .collect::<Vec<_>>()
            })
            .sum()
    }

    /// Breakpoints on edge `e` including its endpoints.
    pub fn breaks(&self, graph: &MetrizedGraph, e: EdgeId) -> Vec<f64> {
        self.edge_knots(graph, e).into_iter().map(|(t, _)| t).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.vertex_values.iter().all(|&v| v == 0.0)
            && self.interior.iter().flatten().all(|&(_, v)| v == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.vertex_values
            .iter()
            .copied()
            .chain(self.interior.iter().flatten().map(|&(_, v)| v))
            .fold(0.0, |m, v| m.max(v.abs()))
    }
}
