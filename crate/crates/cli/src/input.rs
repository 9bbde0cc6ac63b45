//! Graph and coloring arguments: a built-in name or a file path.

use std::fs;
use std::path::Path;

use ramsey_core::graph::io::{from_graph6, parse_coloring, parse_edge_list};
use ramsey_core::graph::named::{named_coloring, named_graph};
use ramsey_core::graph::{Graph, GraphError, TwoColoring, VertexSet};

/// Files ending in `.g6` are graph6, anything else an edge list.
pub fn load_graph(arg: &str) -> Result<Graph, String> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        let parsed = if path.extension().is_some_and(|e| e == "g6") {
            from_graph6(&text)
        } else {
            parse_edge_list(&text)
        };
        return parsed.map_err(|e| format!("{arg}: {e}"));
    }
    named_graph(arg).map_err(|e| not_found(arg, e))
}

pub fn load_coloring(arg: &str) -> Result<TwoColoring, String> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        return parse_coloring(&text).map_err(|e| format!("{arg}: {e}"));
    }
    named_coloring(arg).map_err(|e| not_found(arg, e))
}

fn not_found(arg: &str, e: GraphError) -> String {
    format!("{e} (and no file named {arg:?})")
}

/// Comma-separated vertex list such as `0,3,4`; `all` for every vertex.
pub fn parse_set(arg: Option<&str>, n: usize) -> Result<VertexSet, String> {
    let Some(arg) = arg else {
        return Ok(VertexSet::full(n));
    };
    if arg.trim() == "all" {
        return Ok(VertexSet::full(n));
    }
    let mut s = VertexSet::new(n);
    for part in arg.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: usize = part.parse().map_err(|_| format!("bad vertex {part:?} in {arg:?}"))?;
        if v >= n {
            return Err(format!("vertex {v} out of range for {n} vertices"));
        }
        s.insert(v);
    }
    Ok(s)
}
