//! Simple undirected graphs, the standard constructions, and the edge-list /
//! JSON file formats.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`, stored as a dense boolean
/// adjacency matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Named basic constructions accepted by [`build_basic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasicKind {
    Path,
    Cycle,
    Empty,
    Complete,
    CompleteBipartite,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Path `v0 - v1 - ... - v_{n-1}`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.insert(i - 1, i);
        }
        g
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSize(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut g = Graph::path(n);
        g.insert(n - 1, 0);
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.insert(i, j);
            }
        }
        g
    }

    /// `K_{a,b}` with the `a` side first.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for i in 0..a {
            for j in a..a + b {
                g.insert(i, j);
            }
        }
        g
    }

    /// Disjoint union of paths with the given vertex counts, in order.
    pub fn linear_forest(spec: &LinearForestSpec) -> Self {
        let mut g = Graph::empty(spec.total());
        let mut start = 0;
        for &len in &spec.parts {
            for i in start + 1..start + len {
                g.insert(i - 1, i);
            }
            start += len;
        }
        g
    }

    fn insert(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && !self.adj[u * self.n + v]);
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        self.m += 1;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u * self.n..(u + 1) * self.n]
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| b.then_some(v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Graph on the same vertex set with `(u, v)` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::InvalidGraph(format!("cannot add edge ({u}, {v})")));
        }
        let mut g = self.clone();
        if !g.has_edge(u, v) {
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Edge-list text: `"n m"` then one `"u v"` line per edge, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (lineno, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let (n, m) = parse_pair(header, lineno)?;
        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in lines {
            edges.push(parse_pair(line, lineno)?);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_json(&self) -> String {
        let repr = GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&repr).expect("graph JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: GraphJson = serde_json::from_str(text)?;
        let edges: Vec<_> = repr.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(repr.n, &edges)
    }

    /// Reads either format, choosing JSON when the text starts with `{`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Graph::from_json(text)
        } else {
            Graph::from_edge_list(text)
        }
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let bad = |msg: String| Error::Parse { line: lineno, msg };
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| bad("expected two integers".into()))?;
        tok.parse::<usize>()
            .map_err(|_| bad(format!("not a non-negative integer: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(bad("trailing tokens".into()));
    }
    Ok((a, b))
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Builds one of the named basic graphs. `sizes` holds one entry, except two
/// for `CompleteBipartite`.
pub fn build_basic(kind: BasicKind, sizes: &[i64]) -> Result<Graph> {
    let want = if kind == BasicKind::CompleteBipartite {
        2
    } else {
        1
    };
    if sizes.len() != want {
        return Err(Error::InvalidSize(format!(
            "{kind:?} takes {want} size(s), got {}",
            sizes.len()
        )));
    }
    let mut us = Vec::with_capacity(want);
    for &s in sizes {
        if s < 0 {
            return Err(Error::InvalidSize(format!("negative size {s}")));
        }
        us.push(s as usize);
    }
    let positive = |s: usize| {
        if s == 0 {
            Err(Error::InvalidSize(format!(
                "{kind:?} needs a positive size"
            )))
        } else {
            Ok(s)
        }
    };
    Ok(match kind {
        BasicKind::Path => Graph::path(positive(us[0])?),
        BasicKind::Cycle => Graph::cycle(us[0])?,
        BasicKind::Empty => Graph::empty(us[0]),
        BasicKind::Complete => Graph::complete(positive(us[0])?),
        BasicKind::CompleteBipartite => {
            Graph::complete_bipartite(positive(us[0])?, positive(us[1])?)
        }
    })
}

/// `G ∨ H`: disjoint union plus every edge between the two sides. `g`'s
/// vertices keep indices `0..|G|`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = disjoint_union(g, h);
    for u in 0..g.n {
        for v in 0..h.n {
            out.insert(u, g.n + v);
        }
    }
    out
}

/// `G ∪ H` with `h`'s vertices shifted by `|G|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let mut out = Graph::empty(g.n + h.n);
    for (u, v) in g.edges() {
        out.insert(u, v);
    }
    for (u, v) in h.edges() {
        out.insert(g.n + u, g.n + v);
    }
    out
}

/// Path lengths (in vertices) of a linear forest; isolated vertices are 1s.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForestSpec {
    pub parts: Vec<usize>,
}

impl LinearForestSpec {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidSize(
                "linear forest parts must be positive".into(),
            ));
        }
        Ok(LinearForestSpec { parts })
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        self.parts.iter().map(|p| p - 1).sum()
    }

    /// Number of parts with at least two vertices.
    pub fn nontrivial(&self) -> usize {
        self.parts.iter().filter(|&&p| p >= 2).count()
    }
}
