//! Simple undirected graphs with string labels, standard generators and the
//! edge-list text format.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::binseq::Side;
use crate::error::{invalid_param, Error, Result};

/// A simple undirected graph. Vertices are `0..n` in insertion order and
/// edges keep the orientation they were added with.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut g = Self::new();
        for l in labels {
            g.add_vertex(l)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(Error::InvalidInput(format!("invalid vertex label {label:?}")));
        }
        if self.index.contains_key(&label) {
            return Err(Error::InvalidInput(format!("duplicate vertex label {label}")));
        }
        let id = self.labels.len();
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        self.adj.push(Vec::new());
        Ok(id)
    }

    fn vertex_or_insert(&mut self, label: &str) -> Result<usize> {
        match self.index.get(label) {
            Some(&v) => Ok(v),
            None => self.add_vertex(label),
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!("edge ({u}, {v}) references a missing vertex")));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at {}", self.labels[u])));
        }
        if self.edge_index.contains_key(&key(u, v)) {
            return Err(Error::InvalidInput(format!(
                "duplicate edge {} {}",
                self.labels[u], self.labels[v]
            )));
        }
        let id = self.edges.len();
        self.edges.push((u, v));
        self.edge_index.insert(key(u, v), id);
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(id)
    }

    pub fn add_edge_by_label(&mut self, a: &str, b: &str) -> Result<usize> {
        let u = self.vertex_or_insert(a)?;
        let v = self.vertex_or_insert(b)?;
        self.add_edge(u, v)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Looks up a vertex, failing with an input error naming the label.
    pub fn require_vertex(&self, label: &str) -> Result<usize> {
        self.vertex(label)
            .ok_or_else(|| Error::InvalidInput(format!("unknown vertex {label}")))
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    /// `"u-v"` in stored orientation.
    pub fn edge_label(&self, i: usize) -> String {
        let (u, v) = self.edges[i];
        format!("{}-{}", self.labels[u], self.labels[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index.contains_key(&key(u, v))
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&key(u, v)).copied()
    }

    pub fn non_isolated_count(&self) -> usize {
        self.adj.iter().filter(|a| !a.is_empty()).count()
    }

    /// BFS 2-colouring; `None` if the graph has an odd cycle. Each component's
    /// first vertex is put in `X`.
    pub fn two_coloring(&self) -> Option<Vec<Side>> {
        let n = self.vertex_count();
        let mut side: Vec<Option<Side>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(Side::X);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let other = match side[u] {
                    Some(Side::X) => Side::Y,
                    _ => Side::X,
                };
                for &v in &self.adj[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(other);
                            queue.push_back(v);
                        }
                        Some(c) if c != other => return None,
                        _ => {}
                    }
                }
            }
        }
        side.into_iter().collect()
    }

    /// Whether all vertices that carry at least one edge lie in one component.
    pub fn edges_connected(&self) -> bool {
        let Some(start) = (0..self.vertex_count()).find(|&v| self.degree(v) > 0) else {
            return true;
        };
        let mut seen = vec![false; self.vertex_count()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == self.non_isolated_count()
    }

    pub fn is_connected(&self) -> bool {
        self.edges_connected() && (self.vertex_count() <= 1 || self.adj.iter().all(|a| !a.is_empty()))
    }

    /// Some triangle `u < v < w`, if any.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for &(a, b) in &self.edges {
            let (u, v) = key(a, b);
            let (small, big) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
            let mut common: Vec<usize> = self.adj[small]
                .iter()
                .copied()
                .filter(|&w| w != big && self.has_edge(w, big))
                .collect();
            common.sort_unstable();
            if let Some(&w) = common.first() {
                let mut t = [u, v, w];
                t.sort_unstable();
                return Some(t);
            }
        }
        None
    }
}

/// `a, b, ..., z, aa, ab, ...`.
pub fn alpha_label(mut i: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

fn alpha_vertices(n: usize) -> Graph {
    Graph::with_vertices((0..n).map(alpha_label)).expect("distinct labels")
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid_param("complete graph needs n >= 1"));
    }
    let mut g = alpha_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// `K_{m,n}` with classes `x1..xm` and `y1..yn`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(invalid_param("complete bipartite graph needs m, n >= 1"));
    }
    let labels = (1..=m).map(|i| format!("x{i}")).chain((1..=n).map(|j| format!("y{j}")));
    let mut g = Graph::with_vertices(labels)?;
    for x in 0..m {
        for y in 0..n {
            g.add_edge(x, m + y)?;
        }
    }
    Ok(g)
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid_param("path needs n >= 1"));
    }
    let mut g = alpha_vertices(n);
    for v in 1..n {
        g.add_edge(v - 1, v)?;
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid_param("cycle needs n >= 3"));
    }
    let mut g = path(n)?;
    g.add_edge(n - 1, 0)?;
    Ok(g)
}

#[derive(Debug, Clone)]
pub struct Circulant {
    pub graph: Graph,
    /// Set when every pair is within distance `k` (`2k + 1 >= n`), i.e. the graph is `K_n`.
    pub complete: bool,
}

/// `C_n^k`: vertices `0..n`, joined when their cyclic distance is at most `k`.
pub fn circulant(n: usize, k: usize) -> Result<Circulant> {
    if n < 3 || k == 0 {
        return Err(invalid_param("circulant needs n >= 3 and k >= 1"));
    }
    let mut g = Graph::with_vertices((0..n).map(|i| i.to_string()))?;
    for u in 0..n {
        for v in u + 1..n {
            if (v - u).min(n - (v - u)) <= k {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(Circulant { graph: g, complete: 2 * k + 1 >= n })
}

/// Vertex `i` of the result is edge `i` of `g`, labelled `"u-v"`.
pub fn line_graph(g: &Graph) -> Graph {
    let mut lg = Graph::with_vertices((0..g.edge_count()).map(|i| g.edge_label(i)))
        .expect("edge labels are distinct");
    for v in 0..g.vertex_count() {
        let inc: Vec<usize> = g.neighbors(v).iter().map(|&w| g.edge_index(v, w).unwrap()).collect();
        for (a, &e) in inc.iter().enumerate() {
            for &f in &inc[a + 1..] {
                lg.add_edge(e.min(f), e.max(f)).expect("simple input has simple line graph");
            }
        }
    }
    lg
}

/// Adds `count` pendant neighbours `e_v^1..e_v^count` to every original vertex `v`.
/// Original vertex and edge indices are preserved.
pub fn attach_pendants(g: &Graph, count: usize) -> Result<Graph> {
    let mut out = g.clone();
    for v in 0..g.vertex_count() {
        for j in 1..=count {
            let p = out.add_vertex(format!("e_{}^{}", g.label(v), j))?;
            out.add_edge(v, p)?;
        }
    }
    Ok(out)
}

/// Parses a graph from edge-list text.
///
/// Each non-blank line is `u v` (an edge) or a lone `u` (a vertex). `#` starts a
/// comment. Vertices are numbered in order of first appearance.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut g = Graph::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_err = |message: String| Error::Parse { line: no + 1, message };
        match tokens.as_slice() {
            [] => {}
            [a] => {
                g.vertex_or_insert(a).map_err(|e| parse_err(e.to_string()))?;
            }
            [a, b] => {
                if a == b {
                    return Err(parse_err(format!("self-loop at {a}")));
                }
                g.add_edge_by_label(a, b).map_err(|e| parse_err(e.to_string()))?;
            }
            _ => return Err(parse_err(format!("expected `u v`, found {} tokens", tokens.len()))),
        }
    }
    Ok(g)
}

/// Inverse of [`parse_graph`]: edges in order, with lone vertex lines wherever
/// needed to keep every vertex at its index.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let mut emitted = vec![false; g.vertex_count()];
    // Lowest index not yet introduced.
    let mut next = 0;
    for &(u, v) in g.edges() {
        let fresh: Vec<usize> = [u, v].into_iter().filter(|&w| !emitted[w]).collect();
        let in_order = fresh.iter().enumerate().all(|(i, &w)| {
            (0..w).filter(|&x| !emitted[x]).count() == i && (i == 0 || fresh[0] < w)
        });
        if !in_order {
            let hi = *fresh.iter().max().unwrap();
            for x in next..=hi {
                if !emitted[x] {
                    writeln!(out, "{}", g.label(x)).unwrap();
                    emitted[x] = true;
                }
            }
        }
        writeln!(out, "{} {}", g.label(u), g.label(v)).unwrap();
        emitted[u] = true;
        emitted[v] = true;
        while next < emitted.len() && emitted[next] {
            next += 1;
        }
    }
    for x in next..emitted.len() {
        if !emitted[x] {
            writeln!(out, "{}", g.label(x)).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_sizes() {
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        let kb = complete_bipartite(3, 4).unwrap();
        assert_eq!((kb.vertex_count(), kb.edge_count()), (7, 12));
        assert_eq!(kb.label(0), "x1");
        assert_eq!(kb.label(3), "y1");
        let c = cycle(5).unwrap();
        assert_eq!(c.edge_count(), 5);
        assert!((0..5).all(|v| c.degree(v) == 2));
        assert_eq!(path(1).unwrap().edge_count(), 0);
        assert!(cycle(2).is_err());
        assert!(complete(0).is_err());
        assert_eq!(alpha_label(25), "z");
        assert_eq!(alpha_label(26), "aa");
        assert_eq!(alpha_label(27), "ab");
    }

    #[test]
    fn circulant_examples() {
        let c = circulant(5, 2).unwrap();
        assert!(c.complete);
        assert_eq!(c.graph.edge_count(), 10);
        let c = circulant(8, 2).unwrap();
        assert!(!c.complete);
        assert_eq!(c.graph.edge_count(), 16);
        assert!((0..8).all(|v| c.graph.degree(v) == 4));
        let c = circulant(6, 1).unwrap();
        assert_eq!(c.graph.edge_count(), 6);
        assert!((0..6).all(|v| c.graph.degree(v) == 2));
    }

    #[test]
    fn line_graph_examples() {
        let l = line_graph(&complete(3).unwrap());
        assert_eq!((l.vertex_count(), l.edge_count()), (3, 3));
        let l = line_graph(&path(4).unwrap());
        assert_eq!((l.vertex_count(), l.edge_count()), (3, 2));
        assert_eq!(l.label(0), "a-b");
        let l = line_graph(&complete_bipartite(3, 3).unwrap());
        assert_eq!((l.vertex_count(), l.edge_count()), (9, 18));
    }

    #[test]
    fn pendant_examples() {
        let g = attach_pendants(&complete(3).unwrap(), 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 6));
        assert_eq!(g.label(3), "e_a^1");
        let k3 = complete(3).unwrap();
        assert_eq!(attach_pendants(&k3, 0).unwrap(), k3);
        let g = attach_pendants(&complete_bipartite(3, 3).unwrap(), 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 15));
    }

    #[test]
    fn structure_queries() {
        let kb = complete_bipartite(2, 3).unwrap();
        let sides = kb.two_coloring().unwrap();
        assert_eq!(&sides[..2], &[Side::X, Side::X]);
        assert!(sides[2..].iter().all(|&s| s == Side::Y));
        assert!(kb.find_triangle().is_none());
        assert!(cycle(5).unwrap().two_coloring().is_none());
        assert_eq!(complete(4).unwrap().find_triangle(), Some([0, 1, 2]));
        let mut g = parse_graph("a b\nc d\n").unwrap();
        assert!(!g.edges_connected());
        g.add_edge_by_label("b", "c").unwrap();
        assert!(g.is_connected());
    }

    #[test]
    fn text_format() {
        let g = parse_graph("a b\nb c").unwrap();
        assert_eq!(g, path(3).unwrap());
        let err = parse_graph("a b\na a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(parse_graph("a b\nb a\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("a b c\n"), Err(Error::Parse { line: 1, .. })));
        let k4 = "a b\na c\na d\nb c\nb d\nc d\n";
        assert_eq!(serialize_graph(&parse_graph(k4).unwrap()), k4);
        let g = parse_graph("# comment\r\nz\r\na b # edge\r\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }
}
