//! Small dense linear algebra on top of nalgebra.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Default relative rank tolerance for nullspace extraction.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Solves `Q v = b` for a connected-graph Laplacian `Q` with `v[ground] = 0`.
pub fn solve_grounded(q: &DMatrix<f64>, b: &DVector<f64>, ground: usize) -> Result<DVector<f64>> {
    let n = q.nrows();
    if q.ncols() != n || b.len() != n || ground >= n {
        return Err(Error::Invalid("grounded solve: dimension mismatch".into()));
    }
    if n == 1 {
        return Ok(DVector::zeros(1));
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != ground).collect();
    let reduced = DMatrix::from_fn(n - 1, n - 1, |i, j| q[(keep[i], keep[j])]);
    let rhs = DVector::from_fn(n - 1, |i, _| b[keep[i]]);
    let sol = match reduced.clone().cholesky() {
        Some(ch) => ch.solve(&rhs),
        None => reduced
            .lu()
            .solve(&rhs)
            .ok_or(Error::SingularSystem { residual: f64::INFINITY })?,
    };
    let mut v = DVector::zeros(n);
    for (i, &k) in keep.iter().enumerate() {
        v[k] = sol[i];
    }
    let residual = (q * &v - b).amax();
    let scale = b.amax().max(f64::MIN_POSITIVE);
    if !residual.is_finite() || residual > 1e-9 * scale.max(q.amax() * v.amax()) {
        return Err(Error::SingularSystem { residual });
    }
    Ok(v)
}

/// Inverse of the Laplacian restricted to all vertices but `ground`, padded
/// with a zero row and column at `ground`.
pub fn grounded_inverse(q: &DMatrix<f64>, ground: usize) -> Result<DMatrix<f64>> {
    let n = q.nrows();
    let keep: Vec<usize> = (0..n).filter(|&i| i != ground).collect();
    let reduced = DMatrix::from_fn(n - 1, n - 1, |i, j| q[(keep[i], keep[j])]);
    let inv = reduced
        .cholesky()
        .map(|c| c.inverse())
        .ok_or(Error::SingularSystem { residual: f64::INFINITY })?;
    let mut out = DMatrix::zeros(n, n);
    for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate() {
            out[(a, b)] = inv[(i, j)];
        }
    }
    Ok(out)
}

/// Scales each row by the reciprocal of its largest absolute entry.
pub fn equilibrate_rows(m: &mut DMatrix<f64>) {
    for mut row in m.row_iter_mut() {
        let s = row.amax();
        if s > 0.0 {
            row /= s;
        }
    }
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Smallest singular value relative to the largest.
pub fn relative_min_singular_value(m: &DMatrix<f64>) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&max), Some(&min)) if max > 0.0 => min / max,
        _ => 0.0,
    }
}

/// Orthonormal basis of the numerical nullspace: right singular vectors whose
/// singular value is below `rank_tol · σ_max`.
pub fn nullspace_basis(m: &DMatrix<f64>, rank_tol: f64) -> Vec<DVector<f64>> {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Vec::new();
    }
    // Pad to at least square so the SVD yields a full set of right vectors.
    let a = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let sigma = &svd.singular_values;
    let smax = sigma.iter().fold(0.0f64, |a, &b| a.max(b));
    let threshold = rank_tol * smax;
    let mut picked: Vec<(f64, DVector<f64>)> = sigma
        .iter()
        .enumerate()
        .filter(|(_, &s)| smax == 0.0 || s < threshold)
        .map(|(i, &s)| (s, v_t.row(i).transpose()))
        .collect();
    picked.sort_by(|a, b| a.0.total_cmp(&b.0));
    picked.into_iter().map(|(_, v)| v).collect()
}
