//! Metrized graphs: a finite connected multigraph whose edges carry positive
//! lengths, viewed as the metric space obtained by gluing segments.
//!
//! Every edge is parametrized by an offset running from its tail (offset 0) to
//! its head (offset `L`). Loops are split at their midpoint when the graph is
//! built, so each edge has two distinct endpoints. Points sitting exactly at an
//! edge endpoint are always represented by the vertex itself.
//!
//! User-facing edge names refer to *chains*: the original edge as it was
//! declared. Splitting a loop or subdividing an edge replaces one internal edge
//! by two, but the chain keeps its name and its offsets, so `"e1:0.25"` means
//! the same location before and after any subdivision.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Relative tolerance used to snap offsets onto edge endpoints.
const ENDPOINT_SNAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

/// Which end of an edge a vertex incidence refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    /// Offset 0.
    Tail,
    /// Offset `L`.
    Head,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub edge: EdgeId,
    pub end: End,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
    pub length: f64,
    chain: usize,
    chain_start: f64,
}

impl Edge {
    pub fn endpoint(&self, end: End) -> VertexId {
        match end {
            End::Tail => self.tail,
            End::Head => self.head,
        }
    }

    /// Offset of this edge's tail along its declared edge.
    pub fn chain_start(&self) -> f64 {
        self.chain_start
    }

    /// Offset of the given end in edge-local coordinates.
    pub fn offset_of(&self, end: End) -> f64 {
        match end {
            End::Tail => 0.0,
            End::Head => self.length,
        }
    }
}

/// Declaration of an edge, as read from a graph file.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub u: String,
    pub v: String,
    pub length: f64,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, u: impl Into<String>, v: impl Into<String>, length: f64) -> Self {
        Self {
            id: id.into(),
            u: u.into(),
            v: v.into(),
            length,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Chain {
    name: String,
    /// Internal edges in chain order, with their starting chain offset.
    pieces: Vec<(EdgeId, f64)>,
    length: f64,
}

/// A location on the graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Vertex(VertexId),
    /// Strictly inside an edge: `0 < offset < L(edge)`.
    Interior { edge: EdgeId, offset: f64 },
}

impl Point {
    pub fn as_vertex(&self) -> Option<VertexId> {
        match *self {
            Point::Vertex(v) => Some(v),
            Point::Interior { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetrizedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    incidences: Vec<Vec<Incidence>>,
    chains: Vec<Chain>,
}

impl MetrizedGraph {
    /// Builds a canonical metrized graph. Loops are split at their midpoint;
    /// parallel edges are kept.
    pub fn new(vertices: Vec<String>, edges: Vec<EdgeSpec>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut index = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let mut graph = MetrizedGraph {
            vertices,
            edges: Vec::with_capacity(edges.len()),
            incidences: Vec::new(),
            chains: Vec::with_capacity(edges.len()),
        };
        let mut seen = HashMap::new();
        for spec in &edges {
            if seen.insert(spec.id.clone(), ()).is_some() {
                return Err(Error::DuplicateName(spec.id.clone()));
            }
            if !(spec.length.is_finite() && spec.length > 0.0) {
                return Err(Error::InvalidLength {
                    edge: spec.id.clone(),
                    length: spec.length,
                });
            }
            let tail = *index
                .get(&spec.u)
                .ok_or_else(|| Error::UnknownVertex(spec.u.clone()))?;
            let head = *index
                .get(&spec.v)
                .ok_or_else(|| Error::UnknownVertex(spec.v.clone()))?;
            let chain = graph.chains.len();
            let id = EdgeId(graph.edges.len());
            graph.edges.push(Edge {
                name: spec.id.clone(),
                tail,
                head,
                length: spec.length,
                chain,
                chain_start: 0.0,
            });
            graph.chains.push(Chain {
                name: spec.id.clone(),
                pieces: vec![(id, 0.0)],
                length: spec.length,
            });
        }
        graph.rebuild_incidences();

        // Split loops at the midpoint.
        let loops: Vec<EdgeId> = graph
            .edge_ids()
            .filter(|&e| graph.edges[e.0].tail == graph.edges[e.0].head)
            .collect();
        for e in loops {
            let half = graph.edges[e.0].length / 2.0;
            graph.split_edge(e, half);
        }

        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    fn rebuild_incidences(&mut self) {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.tail.0].push(Incidence {
                edge: EdgeId(i),
                end: End::Tail,
            });
            inc[e.head.0].push(Incidence {
                edge: EdgeId(i),
                end: End::Head,
            });
        }
        self.incidences = inc;
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for inc in &self.incidences[v] {
                let w = self.other_end(inc.edge, VertexId(v)).0;
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn fresh_vertex_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 1;
        while self.vertices.iter().any(|v| v == &name) {
            name = format!("{base}~{k}");
            k += 1;
        }
        name
    }

    fn fresh_edge_name(&self, base: &str) -> String {
        let mut k = 1;
        loop {
            let name = format!("{base}#{k}");
            if !self.edges.iter().any(|e| e.name == name) {
                return name;
            }
            k += 1;
        }
    }

    /// Splits `e` at `offset` (strictly interior). The original edge keeps its
    /// id and becomes the tail part; the head part gets a new id.
    fn split_edge(&mut self, e: EdgeId, offset: f64) -> (VertexId, EdgeId) {
        let old = self.edges[e.0].clone();
        let chain = &self.chains[old.chain];
        let vname = self.fresh_vertex_name(&format!(
            "{}@{}",
            chain.name,
            format_offset(old.chain_start + offset)
        ));
        let v = VertexId(self.vertices.len());
        self.vertices.push(vname);
        let new_id = EdgeId(self.edges.len());
        let new_name = self.fresh_edge_name(&chain.name);
        self.edges.push(Edge {
            name: new_name,
            tail: v,
            head: old.head,
            length: old.length - offset,
            chain: old.chain,
            chain_start: old.chain_start + offset,
        });
        let first = &mut self.edges[e.0];
        first.head = v;
        first.length = offset;
        let chain = &mut self.chains[old.chain];
        let pos = chain
            .pieces
            .iter()
            .position(|&(id, _)| id == e)
            .expect("edge belongs to its chain");
        chain
            .pieces
            .insert(pos + 1, (new_id, old.chain_start + offset));
        self.rebuild_incidences();
        (v, new_id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn length(&self, e: EdgeId) -> f64 {
        self.edges[e.0].length
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    pub fn incidences(&self, v: VertexId) -> &[Incidence] {
        &self.incidences[v.0]
    }

    /// The endpoint of `e` opposite to `v` (edges are loop-free).
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let edge = &self.edges[e.0];
        if edge.tail == v {
            edge.head
        } else {
            edge.tail
        }
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.incidences[v.0].len()
    }

    /// Names of the edges as declared (before loop splitting or subdivision).
    pub fn chain_names(&self) -> impl Iterator<Item = &str> {
        self.chains.iter().map(|c| c.name.as_str())
    }

    /// Canonical point at `offset` along internal edge `e`.
    pub fn point_on_edge(&self, e: EdgeId, offset: f64) -> Result<Point> {
        let edge = self.edges.get(e.0).ok_or_else(|| Error::UnknownEdge(format!("#{}", e.0)))?;
        let len = edge.length;
        let snap = ENDPOINT_SNAP * len;
        if !offset.is_finite() || offset < -snap || offset > len + snap {
            return Err(Error::OffsetOutOfRange {
                edge: edge.name.clone(),
                offset,
                length: len,
            });
        }
        Ok(if offset <= snap {
            Point::Vertex(edge.tail)
        } else if offset >= len - snap {
            Point::Vertex(edge.head)
        } else {
            Point::Interior { edge: e, offset }
        })
    }

    /// Internal edges making up the declared edge `name`, with the offset at
    /// which each starts.
    pub fn chain_pieces(&self, name: &str) -> Result<Vec<(EdgeId, f64)>> {
        self.chains
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.pieces.clone())
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    /// Declared name of the edge that `e` is part of.
    pub fn chain_name(&self, e: EdgeId) -> &str {
        &self.chains[self.edges[e.0].chain].name
    }

    /// Point at `offset` along the declared edge `name`.
    pub fn point_on_chain(&self, name: &str, offset: f64) -> Result<Point> {
        let chain = self
            .chains
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))?;
        let snap = ENDPOINT_SNAP * chain.length;
        if !offset.is_finite() || offset < -snap || offset > chain.length + snap {
            return Err(Error::OffsetOutOfRange {
                edge: name.to_string(),
                offset,
                length: chain.length,
            });
        }
        let idx = chain
            .pieces
            .iter()
            .rposition(|&(_, start)| start <= offset)
            .unwrap_or(0);
        let (e, start) = chain.pieces[idx];
        let local = (offset - start).clamp(0.0, self.edges[e.0].length);
        self.point_on_edge(e, local)
    }

    /// Parses `"edge:offset"` or a vertex name.
    pub fn parse_point(&self, text: &str) -> Result<Point> {
        let text = text.trim();
        if let Some(v) = self.vertex_by_name(text) {
            return Ok(Point::Vertex(v));
        }
        let (name, off) = text
            .rsplit_once(':')
            .ok_or_else(|| Error::PointSyntax(text.to_string()))?;
        let offset: f64 = off
            .trim()
            .parse()
            .map_err(|_| Error::PointSyntax(text.to_string()))?;
        self.point_on_chain(name.trim(), offset)
    }

    /// Formats a point in the syntax accepted by [`parse_point`](Self::parse_point).
    pub fn format_point(&self, p: &Point) -> String {
        match *p {
            Point::Vertex(v) => self.vertices[v.0].clone(),
            Point::Interior { edge, offset } => {
                let e = &self.edges[edge.0];
                format!(
                    "{}:{}",
                    self.chains[e.chain].name,
                    format_offset(e.chain_start + offset)
                )
            }
        }
    }

    /// Edge-local coordinates `(edge, offset)` for a point; vertices are
    /// reported on their first incident edge.
    pub fn locate(&self, p: &Point) -> (EdgeId, f64) {
        match *p {
            Point::Interior { edge, offset } => (edge, offset),
            Point::Vertex(v) => {
                let inc = self.incidences[v.0][0];
                (inc.edge, self.edges[inc.edge.0].offset_of(inc.end))
            }
        }
    }

    /// Whether `p` lies on the closed edge `e`, and at which offset.
    pub fn offset_on(&self, p: &Point, e: EdgeId) -> Option<f64> {
        let edge = &self.edges[e.0];
        match *p {
            Point::Interior { edge: pe, offset } if pe == e => Some(offset),
            Point::Interior { .. } => None,
            Point::Vertex(v) if v == edge.tail => Some(0.0),
            Point::Vertex(v) if v == edge.head => Some(edge.length),
            Point::Vertex(_) => None,
        }
    }

    /// Subdivides the graph at `p`. Vertex input returns the graph unchanged
    /// together with the existing vertex.
    pub fn subdivide_at(&self, p: &Point) -> (MetrizedGraph, VertexId, Remap) {
        match *p {
            Point::Vertex(v) => (self.clone(), v, Remap::identity()),
            Point::Interior { edge, offset } => {
                let mut g = self.clone();
                let (v, new_edge) = g.split_edge(edge, offset);
                (
                    g,
                    v,
                    Remap {
                        step: Some(Cut {
                            edge,
                            at: offset,
                            new_edge,
                            new_vertex: v,
                        }),
                    },
                )
            }
        }
    }

    /// Subdivides at every interior point in `points`, returning the refined
    /// graph, the vertex for each input point, and the composed remap.
    pub fn subdivide_all(&self, points: &[Point]) -> (MetrizedGraph, Vec<VertexId>, Refinement) {
        let mut g = self.clone();
        let mut refinement = Refinement::default();
        for p in points {
            let q = refinement.apply(p);
            if let Point::Interior { .. } = q {
                let (next, _, remap) = g.subdivide_at(&q);
                g = next;
                refinement.steps.push(remap);
            }
        }
        let ids = points
            .iter()
            .map(|p| {
                refinement
                    .apply(p)
                    .as_vertex()
                    .expect("subdivided points are vertices")
            })
            .collect();
        (g, ids, refinement)
    }

    /// Same graph with every length multiplied by `beta`.
    pub fn scaled(&self, beta: f64) -> MetrizedGraph {
        assert!(beta.is_finite() && beta > 0.0, "scale factor must be positive");
        let mut g = self.clone();
        for e in &mut g.edges {
            e.length *= beta;
            e.chain_start *= beta;
        }
        for c in &mut g.chains {
            c.length *= beta;
            for piece in &mut c.pieces {
                piece.1 *= beta;
            }
        }
        g
    }

    /// Shortest-path distance between two points.
    pub fn path_distance(&self, p: &Point, q: &Point) -> f64 {
        let sources = self.anchors(p);
        let dist = self.dijkstra(&sources);
        let mut best = f64::INFINITY;
        for (v, dq) in self.anchors(q) {
            best = best.min(dist[v.0] + dq);
        }
        if let (Point::Interior { edge: e1, offset: s }, Point::Interior { edge: e2, offset: t }) =
            (*p, *q)
        {
            if e1 == e2 {
                best = best.min((s - t).abs());
            }
        }
        best
    }

    /// Vertices reachable directly from `p`, with the distance to each.
    fn anchors(&self, p: &Point) -> Vec<(VertexId, f64)> {
        match *p {
            Point::Vertex(v) => vec![(v, 0.0)],
            Point::Interior { edge, offset } => {
                let e = &self.edges[edge.0];
                vec![(e.tail, offset), (e.head, e.length - offset)]
            }
        }
    }

    fn dijkstra(&self, sources: &[(VertexId, f64)]) -> Vec<f64> {
        #[derive(PartialEq)]
        struct State(f64, usize);
        impl Eq for State {}
        impl Ord for State {
            fn cmp(&self, other: &Self) -> Ordering {
                other.0.total_cmp(&self.0).then(self.1.cmp(&other.1))
            }
        }
        impl PartialOrd for State {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        let mut dist = vec![f64::INFINITY; self.vertices.len()];
        let mut heap = BinaryHeap::new();
        for &(v, d) in sources {
            if d < dist[v.0] {
                dist[v.0] = d;
                heap.push(State(d, v.0));
            }
        }
        while let Some(State(d, v)) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for inc in &self.incidences[v] {
                let w = self.other_end(inc.edge, VertexId(v));
                let nd = d + self.edges[inc.edge.0].length;
                if nd < dist[w.0] {
                    dist[w.0] = nd;
                    heap.push(State(nd, w.0));
                }
            }
        }
        dist
    }
}

fn format_offset(x: f64) -> String {
    let rounded: f64 = format!("{x:.12e}").parse().unwrap_or(x);
    format!("{rounded}")
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Cut {
    edge: EdgeId,
    at: f64,
    new_edge: EdgeId,
    new_vertex: VertexId,
}

/// Maps points of a graph onto the graph produced by one subdivision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Remap {
    step: Option<Cut>,
}

impl Remap {
    pub fn identity() -> Self {
        Self { step: None }
    }

    pub fn apply(&self, p: &Point) -> Point {
        let Some(cut) = self.step else {
            return *p;
        };
        match *p {
            Point::Interior { edge, offset } if edge == cut.edge => match offset.partial_cmp(&cut.at) {
                Some(Ordering::Less) => *p,
                Some(Ordering::Greater) => Point::Interior {
                    edge: cut.new_edge,
                    offset: offset - cut.at,
                },
                _ => Point::Vertex(cut.new_vertex),
            },
            _ => *p,
        }
    }

    /// For a point on the parent edge, the child edge and local offset it
    /// lands on (endpoints included). Used to split per-edge data.
    pub fn split_info(&self) -> Option<(EdgeId, f64, EdgeId)> {
        self.step.map(|c| (c.edge, c.at, c.new_edge))
    }
}

/// A sequence of subdivisions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Refinement {
    steps: Vec<Remap>,
}

impl Refinement {
    pub fn apply(&self, p: &Point) -> Point {
        self.steps.iter().fold(*p, |q, r| r.apply(&q))
    }

    pub fn steps(&self) -> &[Remap] {
        &self.steps
    }
}

impl fmt::Display for MetrizedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "metrized graph: {} vertices, {} edges, total length {}",
            self.vertex_count(),
            self.edge_count(),
            self.total_length()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    fn segment() -> MetrizedGraph {
        MetrizedGraph::new(names(&["a", "b"]), vec![EdgeSpec::new("e1", "a", "b", 1.0)]).unwrap()
    }

    fn circle() -> MetrizedGraph {
        MetrizedGraph::new(names(&["o"]), vec![EdgeSpec::new("c", "o", "o", 1.0)]).unwrap()
    }

    fn banana(n: usize) -> MetrizedGraph {
        let edges = (0..n)
            .map(|i| EdgeSpec::new(format!("e{i}"), "a", "b", 1.0 / n as f64))
            .collect();
        MetrizedGraph::new(names(&["a", "b"]), edges).unwrap()
    }

    #[test]
    fn segment_basics() {
        let g = segment();
        assert_eq!(g.total_length(), 1.0);
        assert_eq!(g.valence(VertexId(0)), 1);
        assert_eq!(g.valence(VertexId(1)), 1);
    }

    #[test]
    fn loop_is_split_at_midpoint() {
        let g = circle();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.vertex_count(), 2);
        for e in g.edges() {
            assert_eq!(e.length, 0.5);
            assert_ne!(e.tail, e.head);
        }
        assert_eq!(g.valence(VertexId(0)), 2);
        // chain offsets survive the split
        let p = g.parse_point("c:0.75").unwrap();
        let (e, off) = g.locate(&p);
        assert_eq!(e, EdgeId(1));
        assert_abs_diff_eq!(off, 0.25);
        assert_eq!(g.parse_point("c:0.5").unwrap(), Point::Vertex(VertexId(1)));
    }

    #[test]
    fn banana_valences() {
        let g = banana(3);
        assert_abs_diff_eq!(g.total_length(), 1.0, epsilon = 1e-15);
        assert_eq!(g.valence(VertexId(0)), 3);
        assert_eq!(banana(5).valence(VertexId(1)), 5);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            MetrizedGraph::new(names(&["a", "b", "c"]), vec![EdgeSpec::new("e", "a", "b", 1.0)]),
            Err(Error::Disconnected)
        ));
        assert!(matches!(
            MetrizedGraph::new(names(&["a", "b"]), vec![EdgeSpec::new("e", "a", "b", 0.0)]),
            Err(Error::InvalidLength { .. })
        ));
        assert!(matches!(
            MetrizedGraph::new(names(&["a", "b"]), vec![EdgeSpec::new("e", "a", "x", 1.0)]),
            Err(Error::UnknownVertex(_))
        ));
        assert!(matches!(
            MetrizedGraph::new(names(&["a"]), vec![]),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn endpoint_offsets_canonicalize() {
        let g = segment();
        assert_eq!(g.parse_point("e1:0").unwrap(), Point::Vertex(VertexId(0)));
        assert_eq!(g.parse_point("e1:1.0").unwrap(), Point::Vertex(VertexId(1)));
        assert_eq!(g.parse_point("b").unwrap(), Point::Vertex(VertexId(1)));
        assert!(g.parse_point("e1:1.5").is_err());
        assert!(g.parse_point("nope").is_err());
    }

    #[test]
    fn subdivision_preserves_length() {
        let g = segment();
        let p = g.parse_point("e1:0.5").unwrap();
        let (h, v, remap) = g.subdivide_at(&p);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.total_length(), 1.0);
        assert_eq!(h.length(EdgeId(0)), 0.5);
        assert_eq!(h.length(EdgeId(1)), 0.5);
        assert_eq!(remap.apply(&p), Point::Vertex(v));
        let q = g.parse_point("e1:0.8").unwrap();
        assert_abs_diff_eq!(
            h.path_distance(&remap.apply(&q), &Point::Vertex(VertexId(0))),
            0.8,
            epsilon = 1e-15
        );
        // chain lookup on the refined graph agrees with the remap
        assert_eq!(h.parse_point("e1:0.8").unwrap(), remap.apply(&q));
    }

    #[test]
    fn subdividing_a_vertex_is_identity() {
        let g = segment();
        let p = g.parse_point("e1:0").unwrap();
        let (h, v, _) = g.subdivide_at(&p);
        assert_eq!(h, g);
        assert_eq!(v, VertexId(0));
    }

    #[test]
    fn distances() {
        let g = segment();
        let p = g.parse_point("e1:0.2").unwrap();
        let q = g.parse_point("e1:0.9").unwrap();
        assert_abs_diff_eq!(g.path_distance(&p, &q), 0.7, epsilon = 1e-15);
        assert_eq!(g.path_distance(&p, &p), 0.0);
        let c = circle();
        let p = c.parse_point("c:0.1").unwrap();
        let q = c.parse_point("c:0.9").unwrap();
        assert_abs_diff_eq!(c.path_distance(&p, &q), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn format_round_trips() {
        let c = circle();
        let p = c.parse_point("c:0.7").unwrap();
        assert_eq!(c.format_point(&p), "c:0.7");
        assert_eq!(c.parse_point(&c.format_point(&p)).unwrap(), p);
    }
}
