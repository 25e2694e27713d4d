//! Expansions and variational checks built on computed eigenpairs.

use crate::cpa::CpaFunction;
use crate::error::{Error, Result};
use crate::graph::{MetrizedGraph, Point};
use crate::green::GreenFunction;
use crate::measure::Measure;
use crate::numerics::QuadratureRule;

use super::solve::{EigenOptions, EigenReport, Eigenpair, SpectralProblem};

/// `Σ f_n(x) f_n(y) / λ_n` over the given eigenpairs; points are on the
/// problem's original graph.
pub fn mercer_partial_sum(problem: &SpectralProblem, pairs: &[Eigenpair], x: &Point, y: &Point) -> f64 {
    let g = problem.graph();
    let (px, py) = (problem.to_working(x), problem.to_working(y));
    pairs
        .iter()
        .map(|p| {
            p.eigenfunctions
                .iter()
                .map(|f| f.at(g, &px) * f.at(g, &py))
                .sum::<f64>()
                / p.lambda
        })
        .sum()
}

/// `Σ 1/λ_n` counted with multiplicity.
pub fn partial_trace(pairs: &[Eigenpair]) -> f64 {
    pairs.iter().map(|p| p.multiplicity as f64 / p.lambda).sum()
}

/// `⟨f,f⟩_Dir / ⟨f,f⟩` for the trial function with its `μ`-mean removed.
pub fn rayleigh_quotient(graph: &MetrizedGraph, mu: &Measure, trial: &CpaFunction) -> Result<f64> {
    let order = mu.max_density_degree() / 2 + 2;
    let rule = QuadratureRule::new(order);
    let mean = mu.integrate(graph, |p| trial.eval(graph, p), |e| trial.breaks(graph, e), &rule);
    let f = trial.shifted(-mean);
    let scale = trial.max_abs().max(f64::MIN_POSITIVE);
    if f.max_abs() <= 1e-14 * scale || f.is_zero() {
        return Err(Error::Invalid("trial function vanishes after removing its mean".into()));
    }
    let den = f.l2_norm_squared(graph);
    if den <= 0.0 {
        return Err(Error::Invalid("trial function has zero norm".into()));
    }
    Ok(f.dirichlet_energy(graph) / den)
}

/// `sup |φ_μ(g)|` over the sample points, where `g` is the density of `μ`
/// on each edge.
pub fn kernel_residual(green: &GreenFunction, points: &[Point]) -> f64 {
    let mu = green.measure();
    let rule = QuadratureRule::default();
    points
        .iter()
        .map(|x| {
            green
                .apply(
                    x,
                    |e, t| mu.density_on(e).map_or(0.0, |g| g.eval(t)),
                    |_| Vec::new(),
                    &rule,
                )
                .abs()
        })
        .fold(0.0, f64::max)
}

/// Eigenvalues of the graph scaled by `β` with the pushed-forward measure.
pub fn scaled_eigenvalues(
    graph: &MetrizedGraph,
    mu: &Measure,
    beta: f64,
    gamma_max: f64,
    opts: &EigenOptions,
) -> Result<EigenReport> {
    let g = graph.scaled(beta);
    let m = mu.scaled(beta);
    let opts = EigenOptions {
        step: opts.step.map(|s| s / beta),
        ..opts.clone()
    };
    SpectralProblem::new(&g, &m)?.find_eigenvalues(gamma_max / beta, &opts)
}
