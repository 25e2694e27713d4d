//! Graph and measure loading.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::builtins::builtin;
use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, MetrizedGraph};
use crate::measure::Measure;

/// `{"vertices": [...], "edges": [{"id", "u", "v", "length"}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

impl GraphFile {
    pub fn build(self) -> Result<MetrizedGraph> {
        MetrizedGraph::new(self.vertices, self.edges)
    }
}

pub fn parse_graph(text: &str) -> Result<MetrizedGraph> {
    let file: GraphFile = serde_json::from_str(text)?;
    file.build()
}

/// Loads `builtin:<name>` or a JSON graph file.
pub fn load_graph(source: &str) -> Result<MetrizedGraph> {
    match source.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => parse_graph(&std::fs::read_to_string(Path::new(source))?),
    }
}

/// Resolves `dx`, `dx-normalized`, `canonical`, or a JSON measure file.
pub fn load_measure(graph: &MetrizedGraph, spec: &str) -> Result<Measure> {
    match spec {
        "dx" => Ok(Measure::lebesgue(graph, false)),
        "dx-normalized" => Ok(Measure::lebesgue(graph, true)),
        "canonical" => Measure::canonical(graph),
        path => {
            let text = std::fs::read_to_string(Path::new(path)).map_err(|e| {
                Error::Invalid(format!("cannot read measure `{path}`: {e}"))
            })?;
            Measure::from_json(graph, &text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triangle() {
        let text = r#"{"vertices":["a","b","c"],"edges":[
            {"id":"e1","u":"a","v":"b","length":1.0},
            {"id":"e2","u":"b","v":"c","length":1.0},
            {"id":"e3","u":"c","v":"a","length":1.0}]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn rejects_bad_json() {
        assert!(matches!(parse_graph("{"), Err(Error::Json(_))));
    }
}
