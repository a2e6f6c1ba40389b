//! Brute-force maximum spread over every labelled graph on at most seven
//! vertices within the outerplanar or planar class.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{self, SymMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::minor::classify;
use crate::report::F17;

pub const EXHAUSTIVE_LIMIT: usize = 7;

/// Spreads within this distance of the maximum are ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Spreads within this distance share a witness.
const SAME_VALUE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Outerplanar,
    Planar,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Outerplanar => "outerplanar",
            GraphClass::Planar => "planar",
        }
    }

    /// Largest edge count of a class member on `n ≥ 3` vertices.
    fn max_edges(self, n: usize) -> usize {
        match (self, n) {
            (_, 0..=2) => n * n.saturating_sub(1) / 2,
            (GraphClass::Outerplanar, _) => 2 * n - 3,
            (GraphClass::Planar, _) => 3 * n - 6,
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "outerplanar" => Ok(GraphClass::Outerplanar),
            "planar" => Ok(GraphClass::Planar),
            _ => Err(Error::Precondition(format!("unknown graph class {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub spread: F17,
    /// Labelled graphs sharing this spread value.
    pub count: usize,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Witness {
    pub fn graph(&self) -> Result<Graph> {
        Graph::from_edges(self.n, &self.edges)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExhaustiveResult {
    pub n: usize,
    pub class: GraphClass,
    /// Adjacency masks enumerated.
    pub masks: u64,
    /// Masks that pass the class edge bound.
    pub candidates: u64,
    /// Isomorphism classes sent to the minor classifier.
    pub classified: usize,
    pub max_spread: F17,
    /// Labelled class members within the tie tolerance of the maximum.
    pub tie_count: usize,
    pub witnesses: Vec<Witness>,
}

impl ExhaustiveResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("exhaustive result serializes")
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn mask_spread(n: usize, pairs: &[(usize, usize)], mask: u32) -> Result<f64> {
    let mut a = SymMatrix::zeros(n);
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            a.set(i, j, 1.0);
        }
    }
    let v = eigen::eigenvalues(&a)?;
    Ok(v[0] - v[n - 1])
}

/// Smallest relabelled mask over all orderings compatible with a
/// degree-based vertex refinement; equal exactly for isomorphic graphs.
fn canonical_mask(n: usize, mask: u32) -> u32 {
    let mut adj = [0u8; 8];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> k & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    let deg = |v: usize| adj[v].count_ones();
    let label = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(deg).collect();
        nd.sort_unstable();
        (deg(v), nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    let labels: Vec<_> = (0..n).map(label).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if labels[c[0]] == labels[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }

    let encode = |perm: &[usize]| -> u32 {
        // perm[new] = old
        let mut out = 0u32;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[perm[i]] >> perm[j] & 1 == 1 {
                    out |= 1 << k;
                }
                k += 1;
            }
        }
        out
    };

    fn permute_cells(
        cells: &mut [Vec<usize>],
        idx: usize,
        prefix: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if idx == cells.len() {
            visit(prefix);
            return;
        }
        let len = cells[idx].len();
        heap_permute(cells, idx, len, prefix, visit);
    }

    fn heap_permute(
        cells: &mut [Vec<usize>],
        idx: usize,
        k: usize,
        prefix: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if k <= 1 {
            let base = prefix.len();
            prefix.extend_from_slice(&cells[idx]);
            permute_cells(cells, idx + 1, prefix, visit);
            prefix.truncate(base);
            return;
        }
        for i in 0..k {
            heap_permute(cells, idx, k - 1, prefix, visit);
            let swap = if k.is_multiple_of(2) { i } else { 0 };
            cells[idx].swap(swap, k - 1);
        }
    }

    let mut best = u32::MAX;
    let mut prefix = Vec::with_capacity(n);
    permute_cells(&mut cells, 0, &mut prefix, &mut |perm| {
        best = best.min(encode(perm));
    });
    best
}

fn mask_graph(n: usize, pairs: &[(usize, usize)], mask: u32) -> Result<Graph> {
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::from_edges(n, &edges)
}

/// Maximum spread over all `n`-vertex graphs in `class`, with every tie.
pub fn exhaustive_max_spread(n: usize, class: GraphClass) -> Result<ExhaustiveResult> {
    if n == 0 || n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            what: "exhaustive search",
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let pairs = pairs(n);
    let masks = 1u64 << pairs.len();
    let limit = class.max_edges(n) as u32;
    let mut scored = (0..masks as u32)
        .into_par_iter()
        .filter(|m| m.count_ones() <= limit)
        .map(|m| mask_spread(n, &pairs, m).map(|s| (s, m)))
        .collect::<Result<Vec<_>>>()?;
    let candidates = scored.len() as u64;
    scored.par_sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut cache: HashMap<u32, bool> = HashMap::new();
    let mut best: Option<f64> = None;
    let mut witnesses: Vec<(f64, usize, u32)> = Vec::new();
    let mut tie_count = 0;
    for &(s, mask) in &scored {
        if best.is_some_and(|b| s < b - TIE_TOLERANCE) {
            break;
        }
        let canon = canonical_mask(n, mask);
        let member = match cache.get(&canon) {
            Some(&m) => m,
            None => {
                let c = classify(&mask_graph(n, &pairs, mask)?)?;
                let m = match class {
                    GraphClass::Outerplanar => c.is_outerplanar,
                    GraphClass::Planar => c.is_planar,
                };
                cache.insert(canon, m);
                m
            }
        };
        if !member {
            continue;
        }
        best.get_or_insert(s);
        tie_count += 1;
        match witnesses.last_mut() {
            Some(w) if (w.0 - s).abs() <= SAME_VALUE => w.1 += 1,
            _ => witnesses.push((s, 1, mask)),
        }
    }
    let witnesses = witnesses
        .into_iter()
        .map(|(s, count, mask)| {
            Ok(Witness {
                spread: F17(s),
                count,
                n,
                edges: mask_graph(n, &pairs, mask)?.edges(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExhaustiveResult {
        n,
        class,
        masks,
        candidates,
        classified: cache.len(),
        max_spread: F17(best.unwrap_or(0.0)),
        tie_count,
        witnesses,
    })
}
