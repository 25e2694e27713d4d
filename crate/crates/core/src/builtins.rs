//! Built-in graphs, each with total length 1 and equal edge lengths.

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, MetrizedGraph};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "interval",
    "circle",
    "banana(n)",
    "k5",
    "k33",
    "petersen",
    "tetrahedron",
    "cube",
    "octahedron",
    "dodecahedron",
    "icosahedron",
];

/// The eight graphs of the standard comparison table, in table order.
pub const TABLE_GRAPHS: &[&str] = &[
    "k33",
    "k5",
    "petersen",
    "tetrahedron",
    "cube",
    "octahedron",
    "dodecahedron",
    "icosahedron",
];

pub fn builtin(name: &str) -> Result<MetrizedGraph> {
    let key = name.trim().to_ascii_lowercase();
    let pairs: Vec<(usize, usize)> = match key.as_str() {
        "interval" | "segment" => vec![(0, 1)],
        "circle" => vec![(0, 0)],
        "k5" => complete(5),
        "k33" | "k3,3" | "k3_3" => (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect(),
        "petersen" => petersen(),
        "tetrahedron" | "k4" => complete(4),
        "cube" => cube(),
        "octahedron" => octahedron(),
        "dodecahedron" => nearest_pairs(&dodecahedron_points()),
        "icosahedron" => nearest_pairs(&icosahedron_points()),
        _ => match parse_banana(&key) {
            Some(n) => vec![(0, 1); n],
            None => return Err(Error::Invalid(format!("unknown built-in graph `{name}`"))),
        },
    };
    from_pairs(&pairs)
}

fn parse_banana(key: &str) -> Option<usize> {
    let rest = key.strip_prefix("banana")?;
    let digits = rest.trim_matches(|c: char| matches!(c, '(' | ')' | ':' | '-' | '_' | ' '));
    let n: usize = digits.parse().ok()?;
    (n >= 1).then_some(n)
}

fn from_pairs(pairs: &[(usize, usize)]) -> Result<MetrizedGraph> {
    let n = pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) + 1;
    let len = 1.0 / pairs.len() as f64;
    let vertices = (0..n).map(|i| format!("v{i}")).collect();
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| EdgeSpec::new(format!("e{}", k + 1), format!("v{a}"), format!("v{b}"), len))
        .collect();
    MetrizedGraph::new(vertices, edges)
}

fn complete(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn petersen() -> Vec<(usize, usize)> {
    let mut e = Vec::with_capacity(15);
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    e
}

fn cube() -> Vec<(usize, usize)> {
    let mut e = Vec::with_capacity(12);
    for i in 0..8usize {
        for bit in [1, 2, 4] {
            let j = i ^ bit;
            if i < j {
                e.push((i, j));
            }
        }
    }
    e
}

fn octahedron() -> Vec<(usize, usize)> {
    complete(6).into_iter().filter(|&(i, j)| j != (i ^ 1)).collect()
}

const PHI: f64 = 1.618_033_988_749_895;

fn dodecahedron_points() -> Vec<[f64; 3]> {
    let mut p = Vec::with_capacity(20);
    for x in [-1.0, 1.0] {
        for y in [-1.0, 1.0] {
            for z in [-1.0, 1.0] {
                p.push([x, y, z]);
            }
        }
    }
    let a = 1.0 / PHI;
    for s in [-1.0, 1.0] {
        for t in [-1.0, 1.0] {
            p.push([0.0, s * a, t * PHI]);
            p.push([s * a, t * PHI, 0.0]);
            p.push([s * PHI, 0.0, t * a]);
        }
    }
    p
}

fn icosahedron_points() -> Vec<[f64; 3]> {
    let mut p = Vec::with_capacity(12);
    for s in [-1.0, 1.0] {
        for t in [-1.0, 1.0] {
            p.push([0.0, s, t * PHI]);
            p.push([s, t * PHI, 0.0]);
            p.push([s * PHI, 0.0, t]);
        }
    }
    p
}

/// Vertex pairs at the minimum pairwise distance.
fn nearest_pairs(points: &[[f64; 3]]) -> Vec<(usize, usize)> {
    let d = |a: &[f64; 3], b: &[f64; 3]| {
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    };
    let n = points.len();
    let min = complete(n)
        .iter()
        .map(|&(i, j)| d(&points[i], &points[j]))
        .fold(f64::INFINITY, f64::min);
    complete(n)
        .into_iter()
        .filter(|&(i, j)| d(&points[i], &points[j]) < min * (1.0 + 1e-9))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sizes_and_lengths() {
        for (name, v, e, val) in [
            ("k5", 5, 10, 4),
            ("k33", 6, 9, 3),
            ("petersen", 10, 15, 3),
            ("tetrahedron", 4, 6, 3),
            ("cube", 8, 12, 3),
            ("octahedron", 6, 12, 4),
            ("dodecahedron", 20, 30, 3),
            ("icosahedron", 12, 30, 5),
            ("banana(5)", 2, 5, 5),
        ] {
            let g = builtin(name).unwrap();
            assert_eq!(g.vertex_count(), v, "{name}");
            assert_eq!(g.edge_count(), e, "{name}");
            assert_abs_diff_eq!(g.total_length(), 1.0, epsilon = 1e-14);
            for x in g.vertex_ids() {
                assert_eq!(g.valence(x), val, "{name}");
            }
        }
    }

    #[test]
    fn circle_is_split() {
        let g = builtin("circle").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_abs_diff_eq!(g.total_length(), 1.0);
    }

    #[test]
    fn unknown_name() {
        assert!(builtin("hypercube").is_err());
    }
}
