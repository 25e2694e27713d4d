//! Finite signed measures of the form `Σ cᵢ δ_{pᵢ} + Σ_e g_e(t) dt` with
//! polynomial edge densities.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::circuit::ResistanceField;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MetrizedGraph, Point, Refinement, Remap};
use crate::numerics::{Poly, QuadratureRule};

/// Tolerance on `|μ(Γ) − 1|` for reference measures.
pub const UNIT_MASS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Measure {
    atoms: Vec<(Point, f64)>,
    densities: BTreeMap<EdgeId, Poly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureSummary {
    pub total_mass: f64,
    pub total_variation: f64,
    pub atom_count: usize,
}

impl Measure {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a measure, merging atoms at equal points and dropping zero
    /// masses and zero densities.
    pub fn new(atoms: Vec<(Point, f64)>, densities: BTreeMap<EdgeId, Poly>) -> Self {
        let mut m = Self {
            atoms: Vec::new(),
            densities: BTreeMap::new(),
        };
        for (p, c) in atoms {
            m.push_atom(p, c);
        }
        for (e, g) in densities {
            m.push_density(e, g);
        }
        m.normalize();
        m
    }

    pub fn dirac(p: Point) -> Self {
        Self::new(vec![(p, 1.0)], BTreeMap::new())
    }

    /// Lebesgue measure `dx`, or `dx/ℓ(Γ)` when `normalize` is set.
    pub fn lebesgue(graph: &MetrizedGraph, normalize: bool) -> Self {
        let c = if normalize { 1.0 / graph.total_length() } else { 1.0 };
        let densities = graph.edge_ids().map(|e| (e, Poly::constant(c))).collect();
        Self::new(Vec::new(), densities)
    }

    /// Canonical measure: `(1 − v(p)/2) δ_p` at each vertex plus
    /// `dx / (L(e) + R(e))` on each edge.
    pub fn canonical(graph: &MetrizedGraph) -> Result<Self> {
        let field = ResistanceField::new(graph)?;
        Self::canonical_from(graph, &field)
    }

    pub fn canonical_from(graph: &MetrizedGraph, field: &ResistanceField) -> Result<Self> {
        let atoms = graph
            .vertex_ids()
            .map(|v| (Point::Vertex(v), 1.0 - 0.5 * graph.valence(v) as f64))
            .collect();
        let densities = graph
            .edge_ids()
            .map(|e| (e, Poly::constant(field.kappa(e))))
            .collect();
        let m = Self::new(atoms, densities);
        let mass = m.total_mass(graph);
        if (mass - 1.0).abs() > UNIT_MASS_TOL {
            return Err(Error::Numeric(format!("canonical measure has mass {mass}")));
        }
        Ok(m)
    }

    fn push_atom(&mut self, p: Point, c: f64) {
        match self.atoms.iter_mut().find(|(q, _)| *q == p) {
            Some(slot) => slot.1 += c,
            None => self.atoms.push((p, c)),
        }
    }

    fn push_density(&mut self, e: EdgeId, g: Poly) {
        let slot = self.densities.entry(e).or_default();
        *slot = &*slot + &g;
    }

    fn normalize(&mut self) {
        self.atoms.retain(|&(_, c)| c != 0.0);
        self.atoms.sort_by(|a, b| point_key(&a.0).partial_cmp(&point_key(&b.0)).expect("finite offsets"));
        self.densities.retain(|_, g| !g.is_zero());
    }

    pub fn atoms(&self) -> &[(Point, f64)] {
        &self.atoms
    }

    pub fn densities(&self) -> &BTreeMap<EdgeId, Poly> {
        &self.densities
    }

    pub fn density_on(&self, e: EdgeId) -> Option<&Poly> {
        self.densities.get(&e)
    }

    /// Atom mass at `p`, zero when absent.
    pub fn atom_at(&self, p: &Point) -> f64 {
        self.atoms
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0.0, |&(_, c)| c)
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.densities.is_empty()
    }

    pub fn total_mass(&self, graph: &MetrizedGraph) -> f64 {
        let atoms: f64 = self.atoms.iter().map(|(_, c)| c).sum();
        let dens: f64 = self
            .densities
            .iter()
            .map(|(&e, g)| g.integral(0.0, graph.length(e)))
            .sum();
        atoms + dens
    }

    /// `|μ|(Γ)`, splitting each density at its real roots.
    pub fn total_variation(&self, graph: &MetrizedGraph) -> f64 {
        let atoms: f64 = self.atoms.iter().map(|(_, c)| c.abs()).sum();
        let dens: f64 = self
            .densities
            .iter()
            .map(|(&e, g)| {
                let l = graph.length(e);
                let mut knots = vec![0.0];
                knots.extend(g.roots_in(0.0, l));
                knots.push(l);
                knots.windows(2).map(|w| g.integral(w[0], w[1]).abs()).sum::<f64>()
            })
            .sum();
        atoms + dens
    }

    pub fn summary(&self, graph: &MetrizedGraph) -> MeasureSummary {
        MeasureSummary {
            total_mass: self.total_mass(graph),
            total_variation: self.total_variation(graph),
            atom_count: self.atoms.len(),
        }
    }

    /// Checks that the measure can serve as a reference measure.
    pub fn check_reference(&self, graph: &MetrizedGraph) -> Result<()> {
        let mass = self.total_mass(graph);
        if !mass.is_finite() {
            return Err(Error::NonFinite("measure mass"));
        }
        if (mass - 1.0).abs() > UNIT_MASS_TOL {
            return Err(Error::NotUnitMass(mass));
        }
        Ok(())
    }

    /// Largest density degree.
    pub fn max_density_degree(&self) -> usize {
        self.densities.values().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(
            self.atoms.iter().map(|&(p, c)| (p, k * c)).collect(),
            self.densities.iter().map(|(&e, g)| (e, g.scale(k))).collect(),
        )
    }

    pub fn plus(&self, other: &Measure) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        let mut densities = self.densities.clone();
        for (&e, g) in &other.densities {
            let slot = densities.entry(e).or_default();
            *slot = &*slot + g;
        }
        Self::new(atoms, densities)
    }

    pub fn minus(&self, other: &Measure) -> Self {
        self.plus(&other.scale(-1.0))
    }

    /// `∫ f dμ`. Densities are integrated piecewise between `breaks(e)`
    /// (interior breakpoints of `f` on edge `e`) with the given rule.
    pub fn integrate<T, F, B>(&self, graph: &MetrizedGraph, f: F, breaks: B, rule: &QuadratureRule) -> T
    where
        T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
        F: Fn(&Point) -> T,
        B: Fn(EdgeId) -> Vec<f64>,
    {
        let mut total = T::default();
        for (p, c) in &self.atoms {
            total = total + f(p) * *c;
        }
        for (&e, g) in &self.densities {
            let l = graph.length(e);
            let mut knots = vec![0.0];
            knots.extend(breaks(e).into_iter().filter(|&t| t > 0.0 && t < l));
            knots.push(l);
            knots.sort_by(f64::total_cmp);
            for w in knots.windows(2) {
                let (a, b) = (w[0], w[1]);
                if b <= a {
                    continue;
                }
                let half = 0.5 * (b - a);
                let mid = 0.5 * (a + b);
                for (x, wt) in rule.nodes().iter().zip(rule.weights()) {
                    let t = mid + half * x;
                    let p = Point::Interior { edge: e, offset: t };
                    total = total + f(&p) * (wt * half * g.eval(t));
                }
            }
        }
        total
    }

    /// Transports the measure through one subdivision.
    pub fn remap(&self, remap: &Remap, graph_before: &MetrizedGraph) -> Self {
        let atoms = self.atoms.iter().map(|&(p, c)| (remap.apply(&p), c)).collect();
        let mut densities = BTreeMap::new();
        for (&e, g) in &self.densities {
            match remap.split_info() {
                Some((cut, at, child)) if cut == e => {
                    debug_assert!(at < graph_before.length(e));
                    densities.insert(e, g.clone());
                    densities.insert(child, g.shift(at));
                }
                _ => {
                    densities.insert(e, g.clone());
                }
            }
        }
        Self::new(atoms, densities)
    }

    /// Transports the measure through a sequence of subdivisions.
    pub fn refine(&self, refinement: &Refinement, graph_before: &MetrizedGraph) -> Self {
        let mut m = self.clone();
        let mut g = graph_before.clone();
        for step in refinement.steps() {
            m = m.remap(step, &g);
            if let Some((e, at, _)) = step.split_info() {
                g = g.subdivide_at(&Point::Interior { edge: e, offset: at }).0;
            }
        }
        m
    }

    /// Pushforward under `t ↦ βt` on every edge, so that densities become
    /// `g(t/β)/β` and atom masses are unchanged.
    pub fn scaled(&self, beta: f64) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|&(p, c)| match p {
                Point::Interior { edge, offset } => (
                    Point::Interior {
                        edge,
                        offset: offset * beta,
                    },
                    c,
                ),
                v => (v, c),
            })
            .collect();
        let densities = self
            .densities
            .iter()
            .map(|(&e, g)| (e, g.dilate(1.0 / beta).scale(1.0 / beta)))
            .collect();
        Self::new(atoms, densities)
    }

    /// Subdivides the graph at every interior atom so that all atoms sit on
    /// vertices, returning the refined graph and transported measure.
    pub fn atoms_to_vertices(&self, graph: &MetrizedGraph) -> (MetrizedGraph, Measure, Refinement) {
        let points: Vec<Point> = self.atoms.iter().map(|(p, _)| *p).collect();
        let (g, _, refinement) = graph.subdivide_all(&points);
        let m = self.refine(&refinement, graph);
        (g, m, refinement)
    }

    /// Parses a measure from its JSON form.
    pub fn from_json(graph: &MetrizedGraph, text: &str) -> Result<Self> {
        let file: MeasureFile = serde_json::from_str(text)?;
        file.resolve(graph)
    }

    pub fn to_json(&self, graph: &MetrizedGraph) -> MeasureFile {
        MeasureFile {
            atoms: self
                .atoms
                .iter()
                .map(|(p, c)| AtomEntry {
                    point: graph.format_point(p),
                    mass: *c,
                })
                .collect(),
            densities: self
                .densities
                .iter()
                .map(|(&e, g)| {
                    let edge = graph.edge(e);
                    let start = edge.chain_start();
                    DensityEntry {
                        edge: graph.chain_name(e).to_string(),
                        poly: g.shift(-start).coeffs().to_vec(),
                        range: Some([start, start + edge.length]),
                    }
                })
                .collect(),
        }
    }
}

fn point_key(p: &Point) -> (usize, usize, f64) {
    match *p {
        Point::Vertex(v) => (0, v.0, 0.0),
        Point::Interior { edge, offset } => (1, edge.0, offset),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomEntry {
    pub point: String,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEntry {
    pub edge: String,
    /// Coefficients in the offset along the named edge.
    pub poly: Vec<f64>,
    /// Optional sub-range of the named edge carrying the density.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[f64; 2]>,
}

/// Serialized measure: atoms at named points and polynomial densities on
/// named edges, with coefficients in ascending order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MeasureFile {
    #[serde(default)]
    pub atoms: Vec<AtomEntry>,
    #[serde(default)]
    pub densities: Vec<DensityEntry>,
}

impl MeasureFile {
    pub fn resolve(&self, graph: &MetrizedGraph) -> Result<Measure> {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            if !a.mass.is_finite() {
                return Err(Error::NonFinite("atom mass"));
            }
            atoms.push((graph.parse_point(&a.point)?, a.mass));
        }
        let mut densities: BTreeMap<EdgeId, Poly> = BTreeMap::new();
        for d in &self.densities {
            if d.poly.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite("density coefficient"));
            }
            let poly = Poly::new(d.poly.clone());
            let pieces = graph.chain_pieces(&d.edge)?;
            for (e, start) in pieces {
                if let Some([lo, hi]) = d.range {
                    let mid = start + 0.5 * graph.length(e);
                    if mid < lo || mid > hi {
                        continue;
                    }
                }
                let slot = densities.entry(e).or_default();
                *slot = &*slot + &poly.shift(start);
            }
        }
        Ok(Measure::new(atoms, densities))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSpec;
    use approx::assert_abs_diff_eq;

    fn interval() -> MetrizedGraph {
        MetrizedGraph::new(vec!["a".into(), "b".into()], vec![EdgeSpec::new("e1", "a", "b", 1.0)]).unwrap()
    }

    #[test]
    fn summaries() {
        let g = interval();
        let s = Measure::lebesgue(&g, false).summary(&g);
        assert_eq!((s.total_mass, s.total_variation, s.atom_count), (1.0, 1.0, 0));
        let a = g.parse_point("a").unwrap();
        let b = g.parse_point("b").unwrap();
        let m = Measure::new(vec![(a, 0.5), (b, 0.5)], BTreeMap::new());
        let s = m.summary(&g);
        assert_eq!((s.total_mass, s.total_variation, s.atom_count), (1.0, 1.0, 2));
        let m = Measure::new(vec![(a, 1.0), (b, 1.0)], BTreeMap::new()).minus(&Measure::lebesgue(&g, false));
        let s = m.summary(&g);
        assert_abs_diff_eq!(s.total_mass, 1.0);
        assert_abs_diff_eq!(s.total_variation, 3.0);
    }

    #[test]
    fn endpoint_atoms_merge() {
        let g = interval();
        let p = g.parse_point("e1:0").unwrap();
        let m = Measure::new(vec![(p, 0.25), (g.parse_point("a").unwrap(), 0.25)], BTreeMap::new());
        assert_eq!(m.atoms().len(), 1);
        assert_eq!(m.atoms()[0].1, 0.5);
    }

    #[test]
    fn variation_splits_sign_changes() {
        let g = interval();
        // 2t − 1 has mass 0 and variation 1/2
        let m = Measure::new(Vec::new(), BTreeMap::from([(EdgeId(0), Poly::new(vec![-1.0, 2.0]))]));
        assert_abs_diff_eq!(m.total_mass(&g), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.total_variation(&g), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn integrate_examples() {
        let g = interval();
        let rule = QuadratureRule::new(8);
        let dx = Measure::lebesgue(&g, false);
        let x = |p: &Point| g.locate(p).1;
        assert_abs_diff_eq!(dx.integrate(&g, x, |_| Vec::new(), &rule), 0.5, epsilon = 1e-15);
        let c = |p: &Point| (std::f64::consts::PI * g.locate(p).1).cos();
        assert_abs_diff_eq!(dx.integrate(&g, c, |_| Vec::new(), &rule), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn tetrahedron_canonical() {
        let names: Vec<String> = (0..4).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push(EdgeSpec::new(format!("e{}", edges.len() + 1), format!("v{i}"), format!("v{j}"), 1.0 / 6.0));
            }
        }
        let g = MetrizedGraph::new(names, edges).unwrap();
        let m = Measure::canonical(&g).unwrap();
        for (_, c) in m.atoms() {
            assert_abs_diff_eq!(*c, -0.5, epsilon = 1e-14);
        }
        for p in m.densities().values() {
            assert_abs_diff_eq!(p.eval(0.0), 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let g = interval();
        let text = r#"{"atoms":[{"point":"a","mass":0.5}],"densities":[{"edge":"e1","poly":[0.5]}]}"#;
        let m = Measure::from_json(&g, text).unwrap();
        assert_abs_diff_eq!(m.total_mass(&g), 1.0);
        let back = m.to_json(&g).resolve(&g).unwrap();
        assert_eq!(back, m);
    }
}
