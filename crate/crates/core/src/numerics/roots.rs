//! Root scanning for real functions of one variable: a uniform sample grid,
//! bisection on sign changes, and golden-section minimization of `|f|` for
//! roots of even multiplicity, which do not change sign.
//!
//! A dip is a local minimum of the sampled `|f|` that is not adjacent to a
//! sign change. It is accepted as a root when the refined `|f|` falls below
//! `dip_factor` times the median of `|f|` over the surrounding window. Dips
//! whose refined minimum sits above the threshold are missed; so are roots
//! packed more densely than the grid can resolve beyond the odd-parity
//! recovery below.

use rayon::prelude::*;

/// Golden-section ratio `(√5 − 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    SignChange,
    Dip,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCandidate {
    pub bracket: (f64, f64),
    pub kind: RootKind,
    pub root: f64,
    /// `|f(root)|`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOptions {
    pub step: f64,
    pub tol: f64,
    /// Dip acceptance threshold relative to the windowed median of `|f|`.
    pub dip_factor: f64,
    /// Half-width, in samples, of the median window.
    pub window: usize,
}

impl ScanOptions {
    pub fn with_step(step: f64) -> Self {
        Self {
            step,
            tol: 1e-12,
            dip_factor: 1e-6,
            window: 16,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScanReport {
    pub roots: Vec<RootCandidate>,
    pub warnings: Vec<String>,
}

/// Scans `[lo, hi]` with the given step and refines every root candidate to
/// `tol`. Results are sorted and deduplicated within `tol`.
pub fn scan_and_refine_roots<F>(f: F, lo: f64, hi: f64, step: f64, tol: f64) -> Vec<RootCandidate>
where
    F: Fn(f64) -> f64 + Sync,
{
    let opts = ScanOptions {
        tol,
        ..ScanOptions::with_step(step)
    };
    scan(f, lo, hi, &opts).roots
}

pub fn scan<F>(f: F, lo: f64, hi: f64, opts: &ScanOptions) -> ScanReport
where
    F: Fn(f64) -> f64 + Sync,
{
    assert!(opts.step > 0.0, "scan step must be positive");
    assert!(hi > lo, "empty scan interval");
    let n = ((hi - lo) / opts.step).ceil().max(1.0) as usize;
    let xs: Vec<f64> = (0..=n)
        .map(|k| if k == n { hi } else { lo + k as f64 * opts.step })
        .collect();
    let fs: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect();

    let mut roots = Vec::new();
    let mut sign_change = vec![false; n];
    for k in 0..n {
        let (a, b) = (fs[k], fs[k + 1]);
        if a == 0.0 {
            roots.push(exact_root(xs[k], &fs, k));
        } else if a.signum() != b.signum() && b != 0.0 {
            sign_change[k] = true;
            let r = bisect(&f, xs[k], xs[k + 1], a, opts.tol);
            roots.push(RootCandidate {
                bracket: (xs[k], xs[k + 1]),
                kind: RootKind::SignChange,
                root: r,
                residual: f(r).abs(),
            });
        }
    }
    if fs[n] == 0.0 {
        roots.push(exact_root(xs[n], &fs, n));
    }

    let abs: Vec<f64> = fs.iter().map(|v| v.abs()).collect();
    for k in 1..n {
        let is_min = abs[k] > 0.0 && abs[k] <= abs[k - 1] && abs[k] <= abs[k + 1];
        if !is_min || sign_change[k - 1] || sign_change[k] {
            continue;
        }
        let (a, b) = (xs[k - 1], xs[k + 1]);
        let r = golden_min(|x| f(x).abs(), a, b, opts.tol);
        let fr = f(r);
        let w0 = k.saturating_sub(opts.window);
        let w1 = (k + opts.window).min(n);
        let threshold = opts.dip_factor * median(&abs[w0..=w1]);
        if fr.abs() > threshold {
            continue;
        }
        roots.push(RootCandidate {
            bracket: (a, b),
            kind: RootKind::Dip,
            root: r,
            residual: fr.abs(),
        });
        // A dip that is actually an odd root means another odd root shares
        // the bracket (the ends have equal signs); recover it by bisection.
        let delta = (1e3 * opts.tol).max(1e-9 * (1.0 + r.abs()));
        let (left, right) = (r - delta, r + delta);
        if left <= a || right >= b {
            continue;
        }
        let (fl, fr_) = (f(left), f(right));
        if fl.signum() == fr_.signum() {
            continue;
        }
        if let Some(last) = roots.last_mut() {
            last.kind = RootKind::SignChange;
        }
        let fa = fs[k - 1];
        let fb = fs[k + 1];
        if fa.signum() != fl.signum() {
            let q = bisect(&f, a, left, fa, opts.tol);
            roots.push(RootCandidate {
                bracket: (a, left),
                kind: RootKind::SignChange,
                root: q,
                residual: f(q).abs(),
            });
        }
        if fb.signum() != fr_.signum() {
            let q = bisect(&f, right, b, fr_, opts.tol);
            roots.push(RootCandidate {
                bracket: (right, b),
                kind: RootKind::SignChange,
                root: q,
                residual: f(q).abs(),
            });
        }
    }

    roots.sort_by(|a, b| a.root.total_cmp(&b.root));
    let mut merged: Vec<RootCandidate> = Vec::with_capacity(roots.len());
    for r in roots {
        match merged.last_mut() {
            Some(prev) if (r.root - prev.root).abs() <= opts.tol.max(1e-14 * r.root.abs()) => {
                if r.residual < prev.residual {
                    let kind = if prev.kind == RootKind::SignChange {
                        RootKind::SignChange
                    } else {
                        r.kind
                    };
                    *prev = RootCandidate { kind, ..r };
                }
            }
            _ => merged.push(r),
        }
    }

    let warnings = merged
        .windows(2)
        .filter(|w| w[1].root - w[0].root < opts.step)
        .map(|w| {
            format!(
                "roots {:.12} and {:.12} are closer than the scan step {}",
                w[0].root, w[1].root, opts.step
            )
        })
        .collect();
    ScanReport {
        roots: merged,
        warnings,
    }
}

fn exact_root(x: f64, fs: &[f64], k: usize) -> RootCandidate {
    let before = if k > 0 { fs[k - 1] } else { 0.0 };
    let after = fs.get(k + 1).copied().unwrap_or(0.0);
    let kind = if before.signum() != after.signum() {
        RootKind::SignChange
    } else {
        RootKind::Dip
    };
    RootCandidate {
        bracket: (x, x),
        kind,
        root: x,
        residual: 0.0,
    }
}

/// Bisection on `[a, b]` where `f(a) = fa` and `f(b)` have opposite signs.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, tol: f64) -> f64 {
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Golden-section search for a local minimum of `f` on `[a, b]`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iters = 0;
    while b - a > tol && iters < 400 {
        iters += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if c >= d {
            break;
        }
    }
    let m = 0.5 * (a + b);
    // Keep the best point actually evaluated.
    let fm = f(m);
    if fm <= fc && fm <= fd {
        m
    } else if fc <= fd {
        c
    } else {
        d
    }
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn sine_root() {
        let r = scan_and_refine_roots(f64::sin, 3.0, 4.0, 0.1, 1e-12);
        assert_eq!(r.len(), 1);
        assert_abs_diff_eq!(r[0].root, PI, epsilon = 1e-10);
        assert_eq!(r[0].kind, RootKind::SignChange);
    }

    #[test]
    fn double_root_is_a_dip() {
        let r = scan_and_refine_roots(|x| (x - 2.0) * (x - 2.0), 1.0, 3.0, 0.07, 1e-12);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].kind, RootKind::Dip);
        assert_abs_diff_eq!(r[0].root, 2.0, epsilon = 1e-7);
    }

    #[test]
    fn close_simple_pair_inside_one_step_is_recovered() {
        // Roots at 1.0 and 1.02, both inside a single 0.1 step.
        let f = |x: f64| (x - 1.0) * (x - 1.02) * (1.0 + x * x);
        let r = scan_and_refine_roots(f, 0.53, 2.0, 0.1, 1e-12);
        assert_eq!(r.len(), 2, "{r:?}");
        assert_abs_diff_eq!(r[0].root, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(r[1].root, 1.02, epsilon = 1e-10);
    }

    #[test]
    fn refined_roots_improve_on_bracket_ends() {
        let f = |x: f64| x.cos() * (0.3 * x).sin() + 0.1;
        for c in scan_and_refine_roots(f, 0.1, 30.0, 0.05, 1e-12) {
            assert!(c.root >= c.bracket.0 && c.root <= c.bracket.1);
            assert!(c.residual <= f(c.bracket.0).abs() + 1e-15);
            assert!(c.residual <= f(c.bracket.1).abs() + 1e-15);
        }
    }

    #[test]
    fn deterministic_output() {
        let f = |x: f64| (3.0 * x).sin() * x.cos();
        let a = scan_and_refine_roots(f, 0.1, 20.0, 0.05, 1e-12);
        let b = scan_and_refine_roots(f, 0.1, 20.0, 0.05, 1e-12);
        assert_eq!(a, b);
    }
}
