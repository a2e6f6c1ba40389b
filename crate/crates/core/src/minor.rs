//! Forbidden-minor tests for `K4`, `K5`, `K_{2,3}` and `K_{3,3}`, and the
//! planar / outerplanar classification built on them.
//!
//! The search branches over vertex deletions and edge contractions. Before
//! branching, each graph is reduced (vertices of degree < 2 dropped; degree-2
//! vertices suppressed when every pattern vertex has degree >= 3), relabelled
//! into a degree-refined normal form, and looked up in a memo table.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph accepted by [`has_minor`] and [`classify`].
pub const MINOR_SIZE_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternName {
    K4,
    K5,
    K23,
    K33,
}

#[derive(Debug, Clone)]
pub struct MinorPattern {
    pub name: PatternName,
    pub target: Graph,
}

impl MinorPattern {
    pub fn new(name: PatternName) -> Self {
        let target = match name {
            PatternName::K4 => Graph::complete(4),
            PatternName::K5 => Graph::complete(5),
            PatternName::K23 => Graph::complete_bipartite(2, 3),
            PatternName::K33 => Graph::complete_bipartite(3, 3),
        };
        MinorPattern { name, target }
    }

    /// Edge count above which every graph on `n` vertices contains this minor
    /// (K4-minor-free graphs have at most 2n-3 edges, K5-minor-free at most
    /// 3n-6).
    fn forced_above(&self, n: usize) -> Option<usize> {
        match self.name {
            PatternName::K4 if n >= 2 => Some(2 * n - 3),
            PatternName::K5 if n >= 3 => Some(3 * n - 6),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_planar: bool,
    pub is_outerplanar: bool,
}

/// True iff `pattern.target` is a minor of `g`.
pub fn has_minor(g: &Graph, pattern: &MinorPattern) -> Result<bool> {
    if g.n() > MINOR_SIZE_LIMIT {
        return Err(Error::TooLarge {
            what: "minor testing",
            n: g.n(),
            limit: MINOR_SIZE_LIMIT,
        });
    }
    let mut search = Search::new(pattern);
    Ok(search.run(Small::from_graph(g)))
}

/// Planarity via `K5`/`K_{3,3}`, outerplanarity via `K4`/`K_{2,3}`.
pub fn classify(g: &Graph) -> Result<Classification> {
    let has = |name| has_minor(g, &MinorPattern::new(name));
    let is_outerplanar = !has(PatternName::K4)? && !has(PatternName::K23)?;
    let is_planar = is_outerplanar || (!has(PatternName::K5)? && !has(PatternName::K33)?);
    Ok(Classification {
        is_planar,
        is_outerplanar,
    })
}

/// Bit-row adjacency for at most 16 vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Small {
    n: usize,
    rows: [u16; 16],
}

impl Small {
    fn from_graph(g: &Graph) -> Self {
        let mut rows = [0u16; 16];
        for (u, v) in g.edges() {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Small { n: g.n(), rows }
    }

    #[inline]
    fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    fn edge_count(&self) -> usize {
        self.rows[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    fn delete(&self, v: usize) -> Small {
        let low = (1u16 << v) - 1;
        let mut rows = [0u16; 16];
        let mut k = 0;
        for (i, &r) in self.rows[..self.n].iter().enumerate() {
            if i == v {
                continue;
            }
            rows[k] = (r & low) | ((r >> 1) & !low);
            k += 1;
        }
        Small {
            n: self.n - 1,
            rows,
        }
    }

    /// Merges `v` into `u`.
    fn contract(&self, u: usize, v: usize) -> Small {
        let mut g = *self;
        let nv = g.rows[v] & !(1 << u);
        g.rows[u] = (g.rows[u] | nv) & !(1 << v) & !(1 << u);
        for w in 0..g.n {
            if nv & (1 << w) != 0 {
                g.rows[w] |= 1 << u;
            }
        }
        g.delete(v)
    }

    fn min_degree_vertex(&self) -> Option<(usize, usize)> {
        (0..self.n).map(|v| (self.degree(v), v)).min()
    }

    /// Relabels vertices by (degree, sorted neighbour degrees).
    fn normal_form(&self) -> Small {
        let degs: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut keys: Vec<(usize, Vec<usize>, usize)> = (0..self.n)
            .map(|v| {
                let mut nd: Vec<usize> = (0..self.n)
                    .filter(|&w| self.rows[v] & (1 << w) != 0)
                    .map(|w| degs[w])
                    .collect();
                nd.sort_unstable();
                (degs[v], nd, v)
            })
            .collect();
        keys.sort();
        let mut pos = [0usize; 16];
        for (new, k) in keys.iter().enumerate() {
            pos[k.2] = new;
        }
        let mut rows = [0u16; 16];
        for v in 0..self.n {
            let mut r = 0u16;
            for w in 0..self.n {
                if self.rows[v] & (1 << w) != 0 {
                    r |= 1 << pos[w];
                }
            }
            rows[pos[v]] = r;
        }
        Small { n: self.n, rows }
    }
}

struct Search<'a> {
    pattern: &'a MinorPattern,
    h: Small,
    h_n: usize,
    h_m: usize,
    h_min_deg: usize,
    h_degs_desc: Vec<usize>,
    memo: HashMap<Small, bool>,
}

impl<'a> Search<'a> {
    fn new(pattern: &'a MinorPattern) -> Self {
        let h = Small::from_graph(&pattern.target);
        let mut h_degs_desc: Vec<usize> = (0..h.n).map(|v| h.degree(v)).collect();
        h_degs_desc.sort_unstable_by(|a, b| b.cmp(a));
        Search {
            pattern,
            h,
            h_n: h.n,
            h_m: h.edge_count(),
            h_min_deg: *h_degs_desc.last().unwrap_or(&0),
            h_degs_desc,
            memo: HashMap::new(),
        }
    }

    /// Drops vertices that no minor model of a pattern with minimum degree
    /// >= 2 can need, and suppresses degree-2 vertices when the pattern's
    /// > minimum degree is >= 3.
    fn reduce(&self, mut g: Small) -> Small {
        loop {
            let Some((d, v)) = g.min_degree_vertex() else {
                return g;
            };
            if d < 2 {
                g = g.delete(v);
            } else if d == 2 && self.h_min_deg >= 3 {
                let w = g.rows[v].trailing_zeros() as usize;
                g = g.contract(w, v);
            } else {
                return g;
            }
        }
    }

    fn run(&mut self, g: Small) -> bool {
        let g = self.reduce(g);
        let m = g.edge_count();
        if g.n < self.h_n || m < self.h_m {
            return false;
        }
        if let Some(limit) = self.pattern.forced_above(g.n) {
            if m > limit {
                return true;
            }
        }
        if g.n == self.h_n {
            return self.contains_spanning(&g);
        }
        let g = g.normal_form();
        if let Some(&hit) = self.memo.get(&g) {
            return hit;
        }
        let mut found = false;
        'outer: for u in 0..g.n {
            for v in u + 1..g.n {
                if g.rows[u] & (1 << v) != 0 && self.run(g.contract(u, v)) {
                    found = true;
                    break 'outer;
                }
            }
        }
        if !found {
            found = (0..g.n).any(|v| self.run(g.delete(v)));
        }
        self.memo.insert(g, found);
        found
    }

    /// Same vertex count: minor reduces to subgraph containment.
    fn contains_spanning(&self, g: &Small) -> bool {
        let mut degs: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        if degs.iter().zip(&self.h_degs_desc).any(|(a, b)| a < b) {
            return false;
        }
        let mut map = vec![usize::MAX; self.h_n];
        let mut used = 0u16;
        self.embed(g, 0, &mut map, &mut used)
    }

    fn embed(&self, g: &Small, i: usize, map: &mut [usize], used: &mut u16) -> bool {
        if i == self.h_n {
            return true;
        }
        for cand in 0..g.n {
            if *used & (1 << cand) != 0 || g.degree(cand) < self.h.degree(i) {
                continue;
            }
            let ok =
                (0..i).all(|j| self.h.rows[i] & (1 << j) == 0 || g.rows[cand] & (1 << map[j]) != 0);
            if ok {
                map[i] = cand;
                *used |= 1 << cand;
                if self.embed(g, i + 1, map, used) {
                    return true;
                }
                *used &= !(1 << cand);
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, join};

    fn pat(name: PatternName) -> MinorPattern {
        MinorPattern::new(name)
    }

    #[test]
    fn identity_minors() {
        assert!(has_minor(&Graph::complete(5), &pat(PatternName::K5)).unwrap());
        assert!(has_minor(&Graph::complete_bipartite(2, 3), &pat(PatternName::K23)).unwrap());
        assert!(has_minor(&Graph::complete_bipartite(3, 3), &pat(PatternName::K33)).unwrap());
        assert!(has_minor(&Graph::complete(4), &pat(PatternName::K4)).unwrap());
    }

    #[test]
    fn fan_has_no_k4() {
        let fan = join(&Graph::empty(1), &Graph::path(4));
        assert!(!has_minor(&fan, &pat(PatternName::K4)).unwrap());
    }

    #[test]
    fn classification_examples() {
        let k33 = classify(&Graph::complete_bipartite(3, 3)).unwrap();
        assert!(!k33.is_planar);
        let k23 = classify(&Graph::complete_bipartite(2, 3)).unwrap();
        assert!(k23.is_planar && !k23.is_outerplanar);
        let g = join(
            &Graph::empty(1),
            &disjoint_union(&Graph::path(5), &Graph::empty(2)),
        );
        assert!(classify(&g).unwrap().is_outerplanar);
        assert!(!classify(&Graph::complete(5)).unwrap().is_planar);
        assert!(classify(&Graph::complete(4)).unwrap().is_planar);
    }

    #[test]
    fn subdivisions_are_detected() {
        // K4 with every edge subdivided once.
        let mut edges = Vec::new();
        let mut next = 4;
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((u, next));
                edges.push((next, v));
                next += 1;
            }
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        assert!(has_minor(&g, &pat(PatternName::K4)).unwrap());
        assert!(!has_minor(&g, &pat(PatternName::K5)).unwrap());
        // Petersen graph contains K5 and K33 minors.
        let mut pe = Vec::new();
        for i in 0..5 {
            pe.push((i, (i + 1) % 5));
            pe.push((i, i + 5));
            pe.push((5 + i, 5 + (i + 2) % 5));
        }
        let petersen = Graph::from_edges(10, &pe).unwrap();
        assert!(has_minor(&petersen, &pat(PatternName::K5)).unwrap());
        assert!(has_minor(&petersen, &pat(PatternName::K33)).unwrap());
    }

    #[test]
    fn cycle_is_outerplanar_wheel_is_not() {
        let c = Graph::cycle(9).unwrap();
        assert!(classify(&c).unwrap().is_outerplanar);
        let wheel = join(&Graph::empty(1), &Graph::cycle(6).unwrap());
        let cls = classify(&wheel).unwrap();
        assert!(cls.is_planar && !cls.is_outerplanar);
    }

    #[test]
    fn size_guard() {
        let g = Graph::path(13);
        assert!(matches!(
            has_minor(&g, &pat(PatternName::K4)),
            Err(Error::TooLarge { .. })
        ));
        assert!(classify(&g).is_err());
    }
}
