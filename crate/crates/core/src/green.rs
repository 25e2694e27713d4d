//! Green's functions `g_μ(x, y)` of a reference measure and the quantities
//! built from them.

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::{resistance_profile, Potential, ResistanceField};
use crate::cpa::CpaFunction;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MetrizedGraph, Point};
use crate::measure::Measure;
use crate::numerics::QuadratureRule;

/// `g_μ(x,y) = ½(ρ_μ(x) + ρ_μ(y) − r(x,y)) − c_μ`, with `ρ_μ = ∫ r(·,ζ) dμ(ζ)`
/// stored exactly and `c_μ = ½ ∬ r dμ dμ`.
#[derive(Debug, Clone)]
pub struct GreenFunction {
    field: ResistanceField,
    measure: Measure,
    rho: Potential,
    c_mu: f64,
}

pub fn build_green(graph: &MetrizedGraph, mu: &Measure) -> Result<GreenFunction> {
    let field = ResistanceField::new(graph)?;
    GreenFunction::with_field(field, mu)
}

impl GreenFunction {
    pub fn with_field(field: ResistanceField, mu: &Measure) -> Result<Self> {
        mu.check_reference(field.graph())?;
        let rho = field.potential(mu);
        let c_mu = 0.5 * rho.integrate(mu);
        if !c_mu.is_finite() {
            return Err(Error::NonFinite("c_mu"));
        }
        Ok(Self {
            field,
            measure: mu.clone(),
            rho,
            c_mu,
        })
    }

    pub fn graph(&self) -> &MetrizedGraph {
        self.field.graph()
    }

    pub fn field(&self) -> &ResistanceField {
        &self.field
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    /// `c_μ(Γ)`.
    pub fn constant(&self) -> f64 {
        self.c_mu
    }

    /// `ρ_μ`.
    pub fn potential(&self) -> &Potential {
        &self.rho
    }

    pub fn r(&self, x: &Point, y: &Point) -> f64 {
        self.field.r(x, y)
    }

    /// `j_μ(x,y) = ∫ j_ζ(x,y) dμ(ζ)`.
    pub fn j_mu(&self, x: &Point, y: &Point) -> f64 {
        0.5 * (self.rho.eval(x) + self.rho.eval(y) - self.field.r(x, y))
    }

    pub fn eval(&self, x: &Point, y: &Point) -> f64 {
        self.j_mu(x, y) - self.c_mu
    }

    /// `g_μ(x,x) = ρ_μ(x) − c_μ`.
    pub fn diagonal(&self, x: &Point) -> f64 {
        self.rho.eval(x) - self.c_mu
    }

    /// Diagonal `x ↦ g_μ(x,x)` as a piecewise polynomial.
    pub fn diagonal_function(&self) -> Potential {
        self.rho.plus_constant(-self.c_mu)
    }

    /// `sup_x g_μ(x,x)` and a maximizer, computed exactly per edge.
    pub fn sup_diagonal(&self) -> Result<(Point, f64)> {
        self.diagonal_function().max(self.graph())
    }

    /// `Tr(φ_μ) = ∫ g_μ(x,x) dx`.
    pub fn trace(&self) -> f64 {
        self.diagonal_function().integral()
    }

    /// `|∫ ∂ₓg_μ(x,y) φ′(x) dx − (φ(y) − ∫ φ dμ)|` for a CPA test function.
    /// The left integral is evaluated exactly, piece by piece, as
    /// `Σ slope·(g(end) − g(start))`.
    pub fn weak_laplacian_residual(&self, y: &Point, phi: &CpaFunction) -> Result<f64> {
        let g = self.graph();
        let mut lhs = 0.0;
        for e in g.edge_ids() {
            for (a, b, slope) in phi.pieces(g, e) {
                let pa = g.point_on_edge(e, a)?;
                let pb = g.point_on_edge(e, b)?;
                lhs += slope * (self.eval(&pb, y) - self.eval(&pa, y));
            }
        }
        let order = self.measure.max_density_degree() / 2 + 2;
        let rule = QuadratureRule::new(order);
        let mean = self
            .measure
            .integrate(g, |p| phi.eval(g, p), |e| phi.breaks(g, e), &rule);
        Ok((lhs - (phi.eval(g, y) - mean)).abs())
    }

    /// `⟨ν, ω⟩_μ = ∬ g_μ(x,y) dν(x) dω(y)` for real measures, exact.
    pub fn energy_pairing(&self, nu: &Measure, omega: &Measure) -> f64 {
        let g = self.graph();
        let (mn, mo) = (nu.total_mass(g), omega.total_mass(g));
        let rho_omega = self.field.potential(omega);
        let rr = rho_omega.integrate(nu);
        0.5 * (mo * self.rho.integrate(nu) + mn * self.rho.integrate(omega) - rr) - self.c_mu * mn * mo
    }

    /// Sesquilinear extension `∬ g_μ dν dω̄` to complex measures.
    pub fn energy_pairing_complex(&self, nu: &ComplexMeasure, omega: &ComplexMeasure) -> Complex64 {
        let rr = self.energy_pairing(&nu.re, &omega.re);
        let ii = self.energy_pairing(&nu.im, &omega.im);
        let ir = self.energy_pairing(&nu.im, &omega.re);
        let ri = self.energy_pairing(&nu.re, &omega.im);
        Complex64::new(rr + ii, ir - ri)
    }

    /// Average off-diagonal sum of `g_μ` over the points and its lower bound.
    pub fn discriminant_sum(&self, points: &[Point]) -> Result<DiscriminantSum> {
        let n = points.len();
        if n < 2 {
            return Err(Error::Invalid("discriminant sum needs at least two points".into()));
        }
        let mut s = 0.0;
        for (i, x) in points.iter().enumerate() {
            for (j, y) in points.iter().enumerate() {
                if i != j {
                    s += self.eval(x, y);
                }
            }
        }
        let average = s / (n * (n - 1)) as f64;
        let (_, sup) = self.sup_diagonal()?;
        let bound = -sup / (n - 1) as f64;
        if average < bound - 1e-9 {
            return Err(Error::Numeric(format!(
                "discriminant sum {average} below its bound {bound}"
            )));
        }
        Ok(DiscriminantSum {
            average,
            bound,
            sup_diagonal: sup,
            constant: 2.0 * sup,
            points: n,
        })
    }

    /// `(φ_μ f)(x) = ∫ g_μ(x,y) f(y) dy` by piecewise quadrature. `breaks(e)`
    /// lists smoothness breakpoints of `f` on edge `e`.
    pub fn apply(
        &self,
        x: &Point,
        f: impl Fn(EdgeId, f64) -> f64,
        breaks: impl Fn(EdgeId) -> Vec<f64>,
        rule: &QuadratureRule,
    ) -> f64 {
        let g = self.graph();
        let mut total = 0.0;
        for e in g.edge_ids() {
            let l = g.length(e);
            let mut knots = vec![0.0, l];
            knots.extend(breaks(e).into_iter().filter(|&t| t > 0.0 && t < l));
            knots.extend(self.rho.edge(e).breaks().iter().copied());
            if let Some(t) = g.offset_on(x, e) {
                knots.push(t);
            }
            knots.sort_by(f64::total_cmp);
            knots.dedup();
            total += rule.integrate_pieces(
                |t| {
                    let y = Point::Interior { edge: e, offset: t };
                    self.eval(x, &y) * f(e, t)
                },
                &knots,
            );
        }
        total
    }
}

/// Complex measure as a pair of real measures.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexMeasure {
    pub re: Measure,
    pub im: Measure,
}

impl ComplexMeasure {
    pub fn real(re: Measure) -> Self {
        Self {
            re,
            im: Measure::zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscriminantSum {
    /// `(1/(N(N−1))) Σ_{i≠j} g_μ(xᵢ, xⱼ)`.
    pub average: f64,
    /// `−M/(N−1)` with `M = sup g_μ(x,x)`.
    pub bound: f64,
    pub sup_diagonal: f64,
    /// `C = 2M`, so that `average ≥ −C/N`.
    pub constant: f64,
    pub points: usize,
}

/// `τ(Γ) = ¼ ∫ (∂r(x,y)/∂x)² dx`, evaluated for two choices of `y` which
/// must agree to 1e−10.
pub fn tau_constant(graph: &MetrizedGraph) -> Result<f64> {
    let field = ResistanceField::new(graph)?;
    tau_from_field(&field)
}

pub fn tau_from_field(field: &ResistanceField) -> Result<f64> {
    let g = field.graph();
    let y1 = Point::Vertex(g.edge(EdgeId(0)).tail);
    let y2 = g.point_on_edge(EdgeId(0), 0.5 * g.length(EdgeId(0)))?;
    let t1 = 0.25 * resistance_profile(field, &y1)?.derivative_energy();
    let t2 = 0.25 * resistance_profile(field, &y2)?.derivative_energy();
    if (t1 - t2).abs() > 1e-10 * t1.abs().max(1.0) {
        return Err(Error::Numeric(format!(
            "tau depends on the base point: {t1} vs {t2}"
        )));
    }
    Ok(t1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceComparison {
    /// `Tr(φ_{μ₁})`.
    pub lhs: f64,
    /// `Tr(φ_{μ₂}) − ⟨dx,dx⟩_{μ₂} + ⟨dx−μ₁, dx−μ₁⟩_{μ₂}`.
    pub rhs: f64,
    pub trace_mu2: f64,
    pub dx_energy: f64,
    pub defect_energy: f64,
}

/// Compares `Tr(φ_{μ₁})` with its expression through `μ₂`. Both measures
/// must have mass 1 and the graph must have total length 1.
pub fn trace_comparison(graph: &MetrizedGraph, mu1: &Measure, mu2: &Measure) -> Result<TraceComparison> {
    let ell = graph.total_length();
    if (ell - 1.0).abs() > 1e-12 {
        return Err(Error::Invalid(format!(
            "trace comparison needs total length 1, graph has {ell}"
        )));
    }
    let field = ResistanceField::new(graph)?;
    let g1 = GreenFunction::with_field(field.clone(), mu1)?;
    let g2 = GreenFunction::with_field(field, mu2)?;
    let dx = Measure::lebesgue(graph, false);
    let defect = dx.minus(mu1);
    let trace_mu2 = g2.trace();
    let dx_energy = g2.energy_pairing(&dx, &dx);
    let defect_energy = g2.energy_pairing(&defect, &defect);
    let lhs = g1.trace();
    let rhs = trace_mu2 - dx_energy + defect_energy;
    if (lhs - rhs).abs() > 1e-7 {
        return Err(Error::Numeric(format!(
            "trace comparison mismatch: {lhs} vs {rhs}"
        )));
    }
    Ok(TraceComparison {
        lhs,
        rhs,
        trace_mu2,
        dx_energy,
        defect_energy,
    })
}
