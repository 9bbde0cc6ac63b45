//! Built-in graphs and colorings addressed by short names.

use super::{random_coloring, Color, Graph, GraphError, TwoColoring};

fn bad(name: &str) -> GraphError {
    GraphError::Argument(format!("unknown graph name {name:?}"))
}

fn size(name: &str, digits: &str) -> Result<usize, GraphError> {
    digits.parse().map_err(|_| bad(name))
}

/// `kN` complete, `pN` path on `N` vertices, `cN` cycle, `eN` edgeless,
/// `star-Q` for `K_{1,Q}`, and joins `A+B` (left to right).
pub fn named_graph(name: &str) -> Result<Graph, GraphError> {
    let name = name.trim();
    if name.contains('+') {
        let mut parts = name.split('+');
        let first = named_graph(parts.next().unwrap_or(""))?;
        return parts.try_fold(first, |g, p| Ok(g.join(&named_graph(p)?)));
    }
    let lower = name.to_ascii_lowercase();
    if let Some(q) = lower.strip_prefix("star-") {
        return Ok(Graph::star(size(name, q)?));
    }
    let (kind, digits) = lower.split_at(lower.find(|c: char| c.is_ascii_digit()).ok_or_else(|| bad(name))?);
    let n = size(name, digits)?;
    match kind {
        "k" => Ok(Graph::complete(n)),
        "p" => Ok(Graph::path(n)),
        "c" if n >= 3 => Ok(Graph::cycle(n)),
        "e" => Ok(Graph::empty(n)),
        _ => Err(bad(name)),
    }
}

/// `red:N`, `blue:N`, `pentagon`, or `random:N:P:SEED` with blue probability `P`.
pub fn named_coloring(name: &str) -> Result<TwoColoring, GraphError> {
    let err = || GraphError::Argument(format!("unknown coloring name {name:?}"));
    let parts: Vec<&str> = name.trim().split(':').collect();
    match parts.as_slice() {
        ["pentagon"] => Ok(TwoColoring::pentagon()),
        ["red", n] => Ok(TwoColoring::uniform(n.parse().map_err(|_| err())?, Color::Red)),
        ["blue", n] => Ok(TwoColoring::uniform(n.parse().map_err(|_| err())?, Color::Blue)),
        ["random", n, p, seed] => {
            let p: f64 = p.parse().map_err(|_| err())?;
            if !(0.0..=1.0).contains(&p) {
                return Err(err());
            }
            Ok(random_coloring(
                n.parse().map_err(|_| err())?,
                p,
                seed.parse().map_err(|_| err())?,
            ))
        }
        _ => Err(err()),
    }
}
