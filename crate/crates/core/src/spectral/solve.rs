//! Eigenvalue search along `γ`, eigenspace extraction, and residual checks.

use std::f64::consts::PI;

use serde::Serialize;

use super::matrix::{
    assemble_characteristic_matrix, particular_parts, CharacteristicMatrix, EdgeBasisSolution, RowKind,
};
use crate::error::{Error, Result};
use crate::graph::{End, MetrizedGraph, Point, Refinement};
use crate::green::GreenFunction;
use crate::measure::Measure;
use crate::numerics::linalg::{nullspace_basis, singular_values};
use crate::numerics::quadrature::uniform_breaks;
use crate::numerics::roots::{golden_min, scan, RootKind, ScanOptions};
use crate::numerics::{QuadratureRule, DEFAULT_RANK_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct EigenOptions {
    /// Smallest `γ` scanned; `λ = 0` is never reported.
    pub gamma_floor: f64,
    /// Scan step in `γ`; defaults to `π/(8ℓ)`.
    pub step: Option<f64>,
    pub tol: f64,
    pub rank_tol: f64,
    pub dip_factor: f64,
    pub window: usize,
    /// Relative distance in `λ` below which roots merge.
    pub merge_rel: f64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            gamma_floor: 1e-6,
            step: None,
            tol: 1e-12,
            rank_tol: DEFAULT_RANK_TOL,
            dip_factor: 1e-6,
            window: 16,
            merge_rel: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub lambda: f64,
    pub gamma: f64,
    pub multiplicity: usize,
    /// L²-orthonormal basis of the eigenspace; empty when only the value was
    /// requested.
    pub eigenfunctions: Vec<EdgeBasisSolution>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EigenReport {
    pub pairs: Vec<Eigenpair>,
    pub warnings: Vec<String>,
}

impl EigenReport {
    /// Eigenvalues repeated by multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.pairs
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.lambda, p.multiplicity))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ResidualReport {
    pub continuity: f64,
    pub derivative: f64,
    pub integral: f64,
    pub operator: f64,
}

impl ResidualReport {
    fn max_with(&mut self, o: &ResidualReport) {
        self.continuity = self.continuity.max(o.continuity);
        self.derivative = self.derivative.max(o.derivative);
        self.integral = self.integral.max(o.integral);
        self.operator = self.operator.max(o.operator);
    }
}

/// The eigenproblem for `(Γ, μ)`, with `Γ` subdivided so that every atom of
/// `μ` is a vertex.
#[derive(Debug, Clone)]
pub struct SpectralProblem {
    original: MetrizedGraph,
    graph: MetrizedGraph,
    measure: Measure,
    refinement: Refinement,
}

impl SpectralProblem {
    pub fn new(graph: &MetrizedGraph, mu: &Measure) -> Result<Self> {
        mu.check_reference(graph)?;
        let (g, m, refinement) = mu.atoms_to_vertices(graph);
        Ok(Self {
            original: graph.clone(),
            graph: g,
            measure: m,
            refinement,
        })
    }

    /// The working graph (atoms subdivided onto vertices).
    pub fn graph(&self) -> &MetrizedGraph {
        &self.graph
    }

    pub fn original_graph(&self) -> &MetrizedGraph {
        &self.original
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    /// Maps a point of the original graph onto the working graph.
    pub fn to_working(&self, p: &Point) -> Point {
        self.refinement.apply(p)
    }

    pub fn default_step(&self) -> f64 {
        PI / (8.0 * self.graph.total_length())
    }

    pub fn matrix(&self, gamma: f64) -> Result<CharacteristicMatrix> {
        assemble_characteristic_matrix(&self.graph, &self.measure, gamma)
    }

    pub fn det(&self, gamma: f64) -> f64 {
        self.matrix(gamma).map_or(f64::NAN, |m| m.determinant())
    }

    fn conditioning(&self, gamma: f64) -> f64 {
        match self.matrix(gamma) {
            Ok(m) => {
                let s = singular_values(&m.matrix);
                let max = s[0];
                if max > 0.0 {
                    s[s.len() - 1] / max
                } else {
                    0.0
                }
            }
            Err(_) => f64::INFINITY,
        }
    }

    /// All eigenvalues with `γ ∈ (γ_floor, γ_max]`, multiplicities filled.
    pub fn find_eigenvalues(&self, gamma_max: f64, opts: &EigenOptions) -> Result<EigenReport> {
        if !(gamma_max.is_finite() && gamma_max > opts.gamma_floor) {
            return Err(Error::Invalid(format!(
                "gamma_max must exceed {}, got {gamma_max}",
                opts.gamma_floor
            )));
        }
        let step = opts.step.unwrap_or_else(|| self.default_step());
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::Invalid(format!("scan step must be positive, got {step}")));
        }
        let scan_opts = ScanOptions {
            step,
            tol: opts.tol,
            dip_factor: opts.dip_factor,
            window: opts.window,
        };
        let report = scan(|g| self.det(g), opts.gamma_floor, gamma_max, &scan_opts);
        let cands = report.roots;
        let mut warnings = report.warnings;

        let mut polished: Vec<(f64, RootKind)> = Vec::with_capacity(cands.len());
        for (i, c) in cands.iter().enumerate() {
            let mut w = 0.25 * step;
            if i > 0 {
                w = w.min(0.5 * (c.root - cands[i - 1].root));
            }
            if i + 1 < cands.len() {
                w = w.min(0.5 * (cands[i + 1].root - c.root));
            }
            let lo = (c.root - w).max(opts.gamma_floor);
            let hi = c.root + w;
            let g = if hi > lo {
                golden_min(|x| self.conditioning(x), lo, hi, opts.tol)
            } else {
                c.root
            };
            let g = if self.conditioning(g) <= self.conditioning(c.root) { g } else { c.root };
            polished.push((g, c.kind));
        }

        let mut pairs: Vec<Eigenpair> = Vec::new();
        for (gamma, kind) in polished {
            if gamma > gamma_max || gamma <= opts.gamma_floor {
                continue;
            }
            let m = self.matrix(gamma)?;
            let mult = nullspace_basis(&m.matrix, opts.rank_tol).len();
            if mult == 0 {
                continue;
            }
            let lambda = gamma * gamma;
            if let Some(prev) = pairs.last_mut() {
                if (lambda - prev.lambda).abs() <= opts.merge_rel * lambda {
                    if self.conditioning(gamma) < self.conditioning(prev.gamma) {
                        prev.gamma = gamma;
                        prev.lambda = lambda;
                        prev.multiplicity = mult;
                    }
                    continue;
                }
            }
            let mut diagnostics = Vec::new();
            let odd = mult % 2 == 1;
            if (kind == RootKind::SignChange) != odd {
                diagnostics.push(format!(
                    "determinant root order parity ({}) disagrees with nullspace dimension {mult}",
                    if kind == RootKind::SignChange { "odd" } else { "even" }
                ));
            }
            pairs.push(Eigenpair {
                lambda,
                gamma,
                multiplicity: mult,
                eigenfunctions: Vec::new(),
                diagnostics,
            });
        }
        for p in &pairs {
            for d in &p.diagnostics {
                warnings.push(format!("lambda {:.10}: {d}", p.lambda));
            }
        }
        Ok(EigenReport { pairs, warnings })
    }

    /// First `count` eigenvalues (by multiplicity), widening the search until
    /// enough are found.
    pub fn first_eigenvalues(&self, count: usize, opts: &EigenOptions) -> Result<EigenReport> {
        let mut gamma_max = 4.0 * PI / self.graph.total_length();
        loop {
            let r = self.find_eigenvalues(gamma_max, opts)?;
            let total: usize = r.pairs.iter().map(|p| p.multiplicity).sum();
            if total >= count {
                return Ok(r);
            }
            if gamma_max > 1e6 {
                return Err(Error::Numeric(format!(
                    "found only {total} eigenvalues below gamma {gamma_max}"
                )));
            }
            gamma_max *= 2.0;
        }
    }

    /// Orthonormal eigenfunctions at a root `γ`.
    pub fn eigenpair_at(&self, gamma: f64, opts: &EigenOptions) -> Result<Eigenpair> {
        let m = self.matrix(gamma)?;
        let null = nullspace_basis(&m.matrix, opts.rank_tol);
        if null.is_empty() {
            return Err(Error::Numeric(format!("no null vector at gamma {gamma}")));
        }
        let hs = particular_parts(&self.graph, &self.measure, gamma);
        let mut basis: Vec<EdgeBasisSolution> = Vec::with_capacity(null.len());
        for v in &null {
            let mut f = m.solution(&hs, v.as_slice());
            for _ in 0..2 {
                for b in &basis {
                    let k = self.l2_inner(&f, b);
                    f = f.minus_scaled(k, b);
                }
            }
            let norm = self.l2_inner(&f, &f).sqrt();
            if !(norm.is_finite() && norm > 0.0) {
                return Err(Error::Numeric(format!("degenerate eigenfunction at gamma {gamma}")));
            }
            basis.push(f.scaled(1.0 / norm));
        }
        let basis = basis.into_iter().map(|f| self.fix_sign(f)).collect();
        Ok(Eigenpair {
            lambda: gamma * gamma,
            gamma,
            multiplicity: null.len(),
            eigenfunctions: basis,
            diagnostics: Vec::new(),
        })
    }

    /// Eigenpairs with eigenfunctions for every root up to `γ_max`.
    pub fn eigenpairs(&self, gamma_max: f64, opts: &EigenOptions) -> Result<EigenReport> {
        let mut r = self.find_eigenvalues(gamma_max, opts)?;
        for p in &mut r.pairs {
            let full = self.eigenpair_at(p.gamma, opts)?;
            p.eigenfunctions = full.eigenfunctions;
            p.multiplicity = full.multiplicity;
        }
        Ok(r)
    }

    /// Deterministic sign: the first sample with a clearly nonzero value is
    /// made positive.
    fn fix_sign(&self, f: EdgeBasisSolution) -> EdgeBasisSolution {
        let samples = self.sample_values(&f, 8);
        let max = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        match samples.iter().find(|v| v.abs() > 1e-3 * max) {
            Some(&v) if v < 0.0 => f.scaled(-1.0),
            _ => f,
        }
    }

    fn sample_values(&self, f: &EdgeBasisSolution, per_edge: usize) -> Vec<f64> {
        let g = &self.graph;
        g.edge_ids()
            .flat_map(|e| {
                let l = g.length(e);
                (0..per_edge).map(move |k| (e, l * (k as f64 + 0.5) / per_edge as f64))
            })
            .map(|(e, t)| f.eval(e, t))
            .collect()
    }

    /// Breakpoints fine enough that Gauss–Legendre of order 12 resolves
    /// products of two eigenfunctions at frequency `γ`.
    fn quadrature_breaks(&self, gamma: f64) -> Vec<Vec<f64>> {
        let g = &self.graph;
        let max_len = 1.0 / gamma.max(1e-12);
        g.edge_ids()
            .map(|e| uniform_breaks(0.0, g.length(e), max_len))
            .collect()
    }

    /// `∫ f g dx` by piecewise quadrature.
    pub fn l2_inner(&self, f: &EdgeBasisSolution, h: &EdgeBasisSolution) -> f64 {
        let rule = QuadratureRule::default();
        let gamma = f.gamma.max(h.gamma);
        self.quadrature_breaks(gamma)
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let e = crate::graph::EdgeId(k);
                rule.integrate_pieces(|t| f.eval(e, t) * h.eval(e, t), b)
            })
            .sum()
    }

    /// `∫ f′ g′ dx` by piecewise quadrature.
    pub fn dirichlet_inner(&self, f: &EdgeBasisSolution, h: &EdgeBasisSolution) -> f64 {
        let rule = QuadratureRule::default();
        let gamma = f.gamma.max(h.gamma);
        self.quadrature_breaks(gamma)
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let e = crate::graph::EdgeId(k);
                rule.integrate_pieces(|t| f.derivative(e, t) * h.derivative(e, t), b)
            })
            .sum()
    }

    /// `∫ f dμ`.
    pub fn measure_integral(&self, f: &EdgeBasisSolution) -> f64 {
        let rule = QuadratureRule::default();
        let breaks = self.quadrature_breaks(f.gamma);
        self.measure.integrate(
            &self.graph,
            |p| f.at(&self.graph, p),
            |e| breaks[e.0].clone(),
            &rule,
        )
    }

    /// `sup |f|` sampled on a grid.
    pub fn sup_norm(&self, f: &EdgeBasisSolution) -> f64 {
        let per_edge = ((f.gamma * self.graph.total_length()) as usize + 8).min(4000);
        let g = &self.graph;
        let mut m = 0.0f64;
        for e in g.edge_ids() {
            let l = g.length(e);
            for k in 0..=per_edge {
                m = m.max(f.eval(e, l * k as f64 / per_edge as f64).abs());
            }
        }
        m
    }

    /// Sample points used by the operator residual: vertices plus
    /// `per_edge` interior points per edge.
    pub fn grid(&self, per_edge: usize) -> Vec<Point> {
        let g = &self.graph;
        let mut pts: Vec<Point> = g.vertex_ids().map(Point::Vertex).collect();
        for e in g.edge_ids() {
            let l = g.length(e);
            for k in 1..=per_edge {
                pts.push(Point::Interior {
                    edge: e,
                    offset: l * k as f64 / (per_edge + 1) as f64,
                });
            }
        }
        pts
    }

    /// Residuals of one candidate eigenfunction. `green` must be built on
    /// [`graph`](Self::graph) with [`measure`](Self::measure).
    pub fn function_residuals(
        &self,
        f: &EdgeBasisSolution,
        lambda: f64,
        green: &GreenFunction,
        grid_per_edge: usize,
    ) -> ResidualReport {
        let g = &self.graph;
        let mut rep = ResidualReport::default();
        for v in g.vertex_ids() {
            let inc = g.incidences(v);
            let val = |i: &crate::graph::Incidence| f.eval(i.edge, g.edge(i.edge).offset_of(i.end));
            let v0 = val(&inc[0]);
            for i in &inc[1..] {
                rep.continuity = rep.continuity.max((val(i) - v0).abs());
            }
            let flux: f64 = inc
                .iter()
                .map(|i| {
                    let d = f.derivative(i.edge, g.edge(i.edge).offset_of(i.end));
                    match i.end {
                        End::Tail => d,
                        End::Head => -d,
                    }
                })
                .sum();
            let cp = self.measure.atom_at(&Point::Vertex(v));
            rep.derivative = rep.derivative.max((flux - lambda * cp * f.c).abs());
        }
        rep.integral = self.measure_integral(f).abs();
        let rule = QuadratureRule::default();
        let breaks = self.quadrature_breaks(f.gamma);
        for x in self.grid(grid_per_edge) {
            let phi = green.apply(&x, |e, t| f.eval(e, t), |e| breaks[e.0].clone(), &rule);
            rep.operator = rep.operator.max((phi - f.at(g, &x) / lambda).abs());
        }
        rep
    }

    /// Worst residuals over an eigenspace.
    pub fn residuals(&self, pair: &Eigenpair, green: &GreenFunction) -> ResidualReport {
        let mut rep = ResidualReport::default();
        for f in &pair.eigenfunctions {
            rep.max_with(&self.function_residuals(f, pair.lambda, green, 9));
        }
        rep
    }

    /// Green's function of the working measure on the working graph.
    pub fn green(&self) -> Result<GreenFunction> {
        crate::green::build_green(&self.graph, &self.measure)
    }

    /// Row provenance of `M(γ)`, for reports.
    pub fn row_kinds(&self, gamma: f64) -> Result<Vec<RowKind>> {
        Ok(self.matrix(gamma)?.rows)
    }
}

/// Eigenvalues of `(Γ, μ)` with `γ ≤ γ_max`.
pub fn find_eigenvalues(
    graph: &MetrizedGraph,
    mu: &Measure,
    gamma_max: f64,
    opts: &EigenOptions,
) -> Result<EigenReport> {
    SpectralProblem::new(graph, mu)?.find_eigenvalues(gamma_max, opts)
}

/// Orthonormal eigenfunctions of `(Γ, μ)` at the root `γ`.
pub fn eigenfunctions_at(graph: &MetrizedGraph, mu: &Measure, gamma: f64) -> Result<Eigenpair> {
    SpectralProblem::new(graph, mu)?.eigenpair_at(gamma, &EigenOptions::default())
}

/// Residuals of an eigenpair computed on the same `(Γ, μ)`.
pub fn eigen_residuals(graph: &MetrizedGraph, mu: &Measure, pair: &Eigenpair) -> Result<ResidualReport> {
    let p = SpectralProblem::new(graph, mu)?;
    let green = p.green()?;
    Ok(p.residuals(pair, &green))
}
