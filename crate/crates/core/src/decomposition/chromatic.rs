//! Proper colorings with the degree profile used by the bounded-degree
//! Ramsey bound: class 0 holds a maximum-degree vertex and `r` is the largest
//! degree outside it.

use serde::Serialize;

use crate::graph::Graph;

/// Graphs up to this order get an exact chromatic number.
pub const EXACT_CHROMATIC_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub k: usize,
    /// `false` when `k` is only a greedy upper bound.
    pub exact: bool,
    pub classes: Vec<Vec<usize>>,
    /// Class index per vertex.
    pub colors: Vec<usize>,
    /// Maximum degree over vertices outside class 0.
    pub r: usize,
}

fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    order
}

/// Largest-degree-first greedy coloring.
fn greedy(g: &Graph) -> Vec<usize> {
    let mut colors = vec![usize::MAX; g.n()];
    for v in degree_order(g) {
        let mut c = 0;
        while g.neighbors(v).ones().any(|w| colors[w] == c) {
            c += 1;
        }
        colors[v] = c;
    }
    colors
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    colors: Vec<usize>,
    k: usize,
}

impl Search<'_> {
    /// Colors `order[i..]` with at most `k` colors, using color `used` only
    /// after colors `0..used` to break the color symmetry.
    fn extend(&mut self, i: usize, used: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        for c in 0..self.k.min(used + 1) {
            if self.g.neighbors(v).ones().any(|w| self.colors[w] == c) {
                continue;
            }
            self.colors[v] = c;
            if self.extend(i + 1, used.max(c + 1)) {
                return true;
            }
        }
        self.colors[v] = usize::MAX;
        false
    }
}

fn exact(g: &Graph, upper: usize) -> Vec<usize> {
    let lower = usize::from(g.n() > 0) + usize::from(g.edge_count() > 0);
    for k in lower..upper {
        let mut s = Search {
            g,
            order: degree_order(g),
            colors: vec![usize::MAX; g.n()],
            k,
        };
        if s.extend(0, 0) {
            return s.colors;
        }
    }
    greedy(g)
}

/// Relabels classes so that class 0 holds the lowest-index maximum-degree
/// vertex and the rest follow by smallest member.
fn normalize(g: &Graph, colors: &[usize], exact: bool) -> DegreeProfile {
    let n = g.n();
    let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..n {
        classes[colors[v]].push(v);
    }
    classes.retain(|c| !c.is_empty());
    classes.sort_by_key(|c| c[0]);
    let top = (0..n).max_by(|&a, &b| g.degree(a).cmp(&g.degree(b)).then(b.cmp(&a)));
    if let Some(top) = top {
        let i = classes.iter().position(|c| c.contains(&top)).expect("colored");
        let first = classes.remove(i);
        classes.insert(0, first);
    }
    let mut colors = vec![0; n];
    for (i, class) in classes.iter().enumerate() {
        for &v in class {
            colors[v] = i;
        }
    }
    let r = (0..n).filter(|&v| colors[v] != 0).map(|v| g.degree(v)).max().unwrap_or(0);
    DegreeProfile {
        k: classes.len(),
        exact,
        classes,
        colors,
        r,
    }
}

/// Exact chromatic number by backtracking for `n <= 20`, greedy beyond.
pub fn degree_profile_coloring(g: &Graph) -> DegreeProfile {
    let upper = greedy(g);
    if g.n() > EXACT_CHROMATIC_LIMIT {
        return normalize(g, &upper, false);
    }
    let ku = upper.iter().map(|&c| c + 1).max().unwrap_or(0);
    normalize(g, &exact(g, ku), true)
}

/// Smallest `k` admitting a proper coloring, by enumerating all `k^n`
/// assignments. Only for tiny graphs.
pub fn brute_force_chromatic(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for k in 1..=n {
        let total = k.pow(n as u32);
        let proper = (0..total).any(|code| {
            let mut colors = vec![0; n];
            let mut x = code;
            for c in colors.iter_mut() {
                *c = x % k;
                x /= k;
            }
            edges.iter().all(|&(u, v)| colors[u] != colors[v])
        });
        if proper {
            return k;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_proper(g: &Graph, p: &DegreeProfile) -> bool {
        g.edges().all(|(u, v)| p.colors[u] != p.colors[v])
    }

    #[test]
    fn small_examples() {
        let k4 = degree_profile_coloring(&Graph::complete(4));
        assert_eq!((k4.k, k4.exact), (4, true));
        let c5 = degree_profile_coloring(&Graph::cycle(5));
        assert_eq!(c5.k, 3);
        assert!(is_proper(&Graph::cycle(5), &c5));
        let e = degree_profile_coloring(&Graph::empty(4));
        assert_eq!((e.k, e.r), (1, 0));
        assert_eq!(degree_profile_coloring(&Graph::empty(0)).k, 0);
    }

    #[test]
    fn star_profile_puts_center_first() {
        let p = degree_profile_coloring(&Graph::star(6));
        assert_eq!(p.k, 2);
        assert_eq!(p.classes[0], vec![0]);
        assert_eq!(p.r, 1);
    }

    #[test]
    fn large_graphs_fall_back_to_greedy() {
        let g = Graph::cycle(30);
        let p = degree_profile_coloring(&g);
        assert!(!p.exact);
        assert!(p.k >= 2);
        assert!(is_proper(&g, &p));
    }

    #[test]
    fn brute_force_agrees_on_named_graphs() {
        for g in [Graph::complete(4), Graph::cycle(5), Graph::path(4), Graph::star(3), Graph::empty(3)] {
            assert_eq!(degree_profile_coloring(&g).k, brute_force_chromatic(&g));
        }
    }
}
