//! Edge-list and JSON graph formats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, MarkedGraph, VSet, V};

/// The JSON form of a (marked) graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<V>,
    pub edges: Vec<[V; 2]>,
    #[serde(default)]
    pub marked: Vec<V>,
}

impl GraphDoc {
    pub fn of(g: &MarkedGraph) -> GraphDoc {
        GraphDoc {
            vertices: g.graph.vertices().collect(),
            edges: g.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            marked: g.marked.iter().copied().collect(),
        }
    }

    pub fn to_marked(&self) -> Result<(MarkedGraph, Vec<String>)> {
        let mut warnings = Vec::new();
        let mut g = Graph::with_vertices(self.vertices.iter().copied());
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            if u == v {
                return Err(Error::Parse { line: 0, msg: format!("edge {i} is a loop at {u}") });
            }
            if !g.add_edge(u, v) {
                warnings.push(format!("duplicate edge {u}-{v} collapsed"));
            }
        }
        let marked: VSet = self.marked.iter().copied().collect();
        Ok((MarkedGraph::new(g, marked)?, warnings))
    }
}

/// A parsed input together with non-fatal warnings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub graph: MarkedGraph,
    pub warnings: Vec<String>,
}

fn parse_vertex(tok: &str, line: usize) -> Result<V> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad vertex id {tok:?}") })
}

/// Edge-list text: `u v` per line, `M u` marks a vertex, a lone `u` adds an
/// isolated vertex, `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Parsed> {
    let mut g = Graph::new();
    let mut marked = VSet::new();
    let mut warnings = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["M", rest @ ..] if !rest.is_empty() => {
                for t in rest {
                    let v = parse_vertex(t, line)?;
                    g.add_vertex(v);
                    marked.insert(v);
                }
            }
            [u] => g.add_vertex(parse_vertex(u, line)?),
            [u, v] => {
                let (u, v) = (parse_vertex(u, line)?, parse_vertex(v, line)?);
                if u == v {
                    return Err(Error::Parse { line, msg: format!("loop at vertex {u}") });
                }
                if !g.add_edge(u, v) {
                    warnings.push(format!("line {line}: duplicate edge {u}-{v} collapsed"));
                }
            }
            _ => return Err(Error::Parse { line, msg: format!("expected \"u v\" or \"M u\", got {body:?}") }),
        }
    }
    Ok(Parsed { graph: MarkedGraph { graph: g, marked }, warnings })
}

/// JSON when the first non-space character is `{`, edge list otherwise.
pub fn parse_graph(text: &str) -> Result<Parsed> {
    if text.trim_start().starts_with('{') {
        let doc: GraphDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let (graph, warnings) = doc.to_marked()?;
        return Ok(Parsed { graph, warnings });
    }
    parse_edge_list(text)
}

pub fn read_graph(path: &std::path::Path) -> Result<Parsed> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

/// Edge list with isolated vertices on their own lines and marks last.
pub fn to_edge_list(g: &MarkedGraph) -> String {
    let mut out = String::new();
    for v in g.graph.vertices().filter(|&v| g.graph.degree(v) == 0) {
        out.push_str(&format!("{v}\n"));
    }
    for (u, v) in g.graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    for v in &g.marked {
        out.push_str(&format!("M {v}\n"));
    }
    out
}

pub fn to_json(g: &MarkedGraph) -> String {
    serde_json::to_string(&GraphDoc::of(g)).expect("graph documents serialize")
}

pub fn edges_json(edges: &[Edge]) -> Vec<[V; 2]> {
    edges.iter().map(|&(u, v)| [u, v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list() {
        let p = parse_graph("1 2\n2 3\nM 1\n").unwrap();
        assert_eq!(p.graph.graph, Graph::from_edges(&[(1, 2), (2, 3)]));
        assert_eq!(p.graph.marked, VSet::from([1]));
        assert!(p.warnings.is_empty());
        let e = parse_graph("# loop\n0 1\n1 1\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, msg: "loop at vertex 1".into() });
        assert!(matches!(parse_graph("0 x"), Err(Error::Parse { line: 1, .. })));
        let d = parse_graph("0 1\n1 0 # again\n7\n").unwrap();
        assert_eq!(d.warnings.len(), 1);
        assert!(d.graph.graph.has_vertex(7));
    }

    #[test]
    fn round_trips() {
        let src = r#"{"vertices":[3,0,1],"edges":[[1,0],[0,3]],"marked":[3]}"#;
        let g = parse_graph(src).unwrap().graph;
        let norm = to_json(&g);
        assert_eq!(norm, r#"{"vertices":[0,1,3],"edges":[[0,1],[0,3]],"marked":[3]}"#);
        assert_eq!(to_json(&parse_graph(&norm).unwrap().graph), norm);
        assert_eq!(parse_graph(&to_edge_list(&g)).unwrap().graph, g);
    }
}
