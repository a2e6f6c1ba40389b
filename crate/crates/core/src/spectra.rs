//! Adjacency spectra: full eigen-reports, spread, the join-of-regular-graphs
//! formula, eigenvector sign profiles and equitable-partition quotients.

use serde::{Deserialize, Serialize};

use crate::eigen::{self, SymMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::report::{f17s, F17};

/// Entries with absolute value at or below this are neither positive nor
/// negative for sign checks.
pub const SIGN_THRESHOLD: f64 = 1e-10;

pub fn adjacency_matrix(g: &Graph) -> SymMatrix {
    let mut a = SymMatrix::zeros(g.n());
    for (u, v) in g.edges() {
        a.set(u, v, 1.0);
    }
    a
}

/// Spectrum sorted descending together with verified extreme eigenpairs.
#[derive(Debug, Clone)]
pub struct EigenReport {
    pub values: Vec<f64>,
    /// Unit eigenvector for λ₁, signed so its entries sum to a non-negative
    /// number (all entries non-negative for connected graphs).
    pub vec_top: Vec<f64>,
    /// Unit eigenvector for λₙ, signed so its largest-magnitude entry is
    /// positive.
    pub vec_bottom: Vec<f64>,
    pub residual_top: f64,
    pub residual_bottom: f64,
}

impl EigenReport {
    pub fn lambda1(&self) -> f64 {
        self.values[0]
    }

    pub fn lambdan(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn spread(&self) -> f64 {
        self.lambda1() - self.lambdan()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Residuals {
            top: F17,
            bottom: F17,
        }
        #[derive(Serialize)]
        struct Out {
            values: Vec<F17>,
            lambda1: F17,
            lambdan: F17,
            spread: F17,
            residuals: Residuals,
        }
        let out = Out {
            values: f17s(&self.values),
            lambda1: F17(self.lambda1()),
            lambdan: F17(self.lambdan()),
            spread: F17(self.spread()),
            residuals: Residuals {
                top: F17(self.residual_top),
                bottom: F17(self.residual_bottom),
            },
        };
        serde_json::to_string(&out).expect("eigen report serializes")
    }
}

/// Eigenvalues and extreme eigenvectors of `A(G)`.
pub fn eigenvalues_sym(g: &Graph) -> Result<EigenReport> {
    if g.n() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    let pairs = eigen::extreme_pairs(&adjacency_matrix(g))?;
    let mut top = pairs.top;
    if top.iter().sum::<f64>() < 0.0 {
        top.iter_mut().for_each(|x| *x = -*x);
    }
    if g.is_connected() {
        // Perron vector: clear sign noise on entries that are numerically zero.
        top.iter_mut().for_each(|x| *x = x.max(0.0));
    }
    let mut bottom = pairs.bottom;
    let pivot = bottom
        .iter()
        .copied()
        .max_by(|a, b| a.abs().total_cmp(&b.abs()))
        .unwrap_or(0.0);
    if pivot < 0.0 {
        bottom.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(EigenReport {
        values: pairs.values,
        vec_top: top,
        vec_bottom: bottom,
        residual_top: pairs.residual_top,
        residual_bottom: pairs.residual_bottom,
    })
}

/// Spectrum only, sorted descending.
pub fn spectrum(g: &Graph) -> Result<Vec<f64>> {
    eigen::eigenvalues(&adjacency_matrix(g))
}

/// `λ₁ − λₙ`; zero for the empty and single-vertex graphs.
pub fn spread(g: &Graph) -> Result<f64> {
    let v = spectrum(g)?;
    Ok(match (v.first(), v.last()) {
        (Some(a), Some(b)) => a - b,
        _ => 0.0,
    })
}

/// Two regular graphs described by their degrees, orders and spectra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularJoinInput {
    pub k: f64,
    pub l_deg: f64,
    pub m: usize,
    pub n: usize,
    pub spec_g: Vec<f64>,
    pub spec_h: Vec<f64>,
}

impl RegularJoinInput {
    /// Builds the input from two graphs, checking regularity.
    pub fn from_graphs(g: &Graph, h: &Graph) -> Result<Self> {
        let deg = |x: &Graph| -> Result<f64> {
            let d = if x.n() == 0 { 0 } else { x.degree(0) };
            if (0..x.n()).any(|v| x.degree(v) != d) {
                return Err(Error::Precondition("graph is not regular".into()));
            }
            Ok(d as f64)
        };
        Ok(RegularJoinInput {
            k: deg(g)?,
            l_deg: deg(h)?,
            m: g.n(),
            n: h.n(),
            spec_g: spectrum(g)?,
            spec_h: spectrum(h)?,
        })
    }
}

/// Spectrum of `G ∨ H` for regular `G`, `H`: the non-principal eigenvalues
/// of both parts plus the two roots of `(x − k)(x − l) = mn`, descending.
pub fn join_regular_spectrum(input: &RegularJoinInput) -> Result<Vec<f64>> {
    let check = |spec: &[f64], deg: f64, len: usize, name: &str| -> Result<()> {
        if spec.len() != len || len == 0 {
            return Err(Error::Precondition(format!(
                "{name} spectrum has {} values, expected {len}",
                spec.len()
            )));
        }
        if (spec[0] - deg).abs() > 1e-9 {
            return Err(Error::Precondition(format!(
                "{name} spectrum starts at {} but the degree is {deg}; not regular",
                spec[0]
            )));
        }
        Ok(())
    };
    check(&input.spec_g, input.k, input.m, "G")?;
    check(&input.spec_h, input.l_deg, input.n, "H")?;
    let (k, l) = (input.k, input.l_deg);
    let disc = ((k - l) * (k - l) + 4.0 * (input.m * input.n) as f64).sqrt();
    let mut out: Vec<f64> = input.spec_g[1..]
        .iter()
        .chain(&input.spec_h[1..])
        .copied()
        .collect();
    out.push(0.5 * (k + l + disc));
    out.push(0.5 * (k + l - disc));
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extreme {
    Top,
    Bottom,
}

/// Extreme eigenvector rescaled so the centre entry (vertex 0) equals 1.
/// Requires `|λ| ≥ 2` for the selected eigenvalue.
pub fn extreme_sign_profile(g: &Graph, which: Extreme) -> Result<(f64, Vec<f64>)> {
    let center = 0;
    if g.n() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    let rep = eigenvalues_sym(g)?;
    let (lambda, raw) = match which {
        Extreme::Top => (rep.lambda1(), rep.vec_top),
        Extreme::Bottom => (rep.lambdan(), rep.vec_bottom),
    };
    if lambda.abs() < 2.0 {
        return Err(Error::Precondition(format!("|λ| = {} < 2", lambda.abs())));
    }
    let pivot = raw[center];
    if pivot.abs() <= 1e-8 {
        return Err(Error::Precondition(format!(
            "center entry {pivot:e} of the eigenvector is numerically zero"
        )));
    }
    Ok((lambda, raw.iter().map(|x| x / pivot).collect()))
}

/// Checks the sign structure of a centre-normalised extreme eigenvector:
/// all entries positive for `Top`; all but the centre negative for `Bottom`.
/// Entries inside `(−1e−10, 1e−10)` are an error, never coerced.
pub fn sign_pattern_holds(profile: &[f64], centers: &[usize], which: Extreme) -> Result<bool> {
    let mut ok = true;
    for (i, &x) in profile.iter().enumerate() {
        if x.abs() <= SIGN_THRESHOLD {
            return Err(Error::Precondition(format!(
                "entry {i} = {x:e} is inside the sign threshold"
            )));
        }
        let want_positive = which == Extreme::Top || centers.contains(&i);
        ok &= (x > 0.0) == want_positive;
    }
    Ok(ok)
}

/// Symmetrised quotient of `A(G)` over an equitable partition. Its
/// eigenvalues are a subset of the spectrum of `G`, including λ₁ when `G` is
/// connected.
pub fn equitable_quotient(g: &Graph, cells: &[Vec<usize>]) -> Result<SymMatrix> {
    let n = g.n();
    let mut cell_of = vec![usize::MAX; n];
    for (c, cell) in cells.iter().enumerate() {
        if cell.is_empty() {
            return Err(Error::Precondition("empty cell".into()));
        }
        for &v in cell {
            if v >= n || cell_of[v] != usize::MAX {
                return Err(Error::Precondition(format!(
                    "vertex {v} misplaced in partition"
                )));
            }
            cell_of[v] = c;
        }
    }
    if cell_of.contains(&usize::MAX) {
        return Err(Error::Precondition(
            "partition does not cover every vertex".into(),
        ));
    }
    let r = cells.len();
    let count = |v: usize| {
        let mut row = vec![0usize; r];
        for w in g.neighbors(v) {
            row[cell_of[w]] += 1;
        }
        row
    };
    let mut b = vec![vec![0usize; r]; r];
    for (c, cell) in cells.iter().enumerate() {
        b[c] = count(cell[0]);
        if let Some(&v) = cell[1..].iter().find(|&&v| count(v) != b[c]) {
            return Err(Error::Precondition(format!(
                "partition is not equitable at vertex {v}"
            )));
        }
    }
    let mut q = SymMatrix::zeros(r);
    for i in 0..r {
        for j in 0..=i {
            let s = (b[i][j] as f64 * b[j][i] as f64).sqrt();
            q.set(i, j, s);
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, join};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn small_spectra() {
        let v = spectrum(&Graph::path(2)).unwrap();
        assert!(close(v[0], 1.0, 1e-14) && close(v[1], -1.0, 1e-14));
        let c4 = spectrum(&Graph::cycle(4).unwrap()).unwrap();
        for (x, e) in c4.iter().zip([2.0, 0.0, 0.0, -2.0]) {
            assert!(close(*x, e, 1e-12));
        }
        let k24 = eigenvalues_sym(&Graph::complete_bipartite(2, 4)).unwrap();
        let r = 8f64.sqrt();
        assert!(close(k24.lambda1(), r, 1e-12) && close(k24.lambdan(), -r, 1e-12));
        assert_eq!(
            k24.values[1..5].iter().filter(|x| x.abs() < 1e-12).count(),
            4
        );
        assert!(k24.vec_top.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn spreads() {
        assert!(close(spread(&Graph::path(2)).unwrap(), 2.0, 1e-14));
        let wheel = join(&Graph::empty(2), &Graph::cycle(8).unwrap());
        assert!(close(spread(&wheel).unwrap(), 68f64.sqrt(), 1e-12));
        let k24 = Graph::complete_bipartite(2, 4);
        assert!(close(spread(&k24).unwrap(), 4.0 * 2f64.sqrt(), 1e-12));
        assert_eq!(spread(&Graph::empty(1)).unwrap(), 0.0);
    }

    #[test]
    fn report_trace_and_power_sum() {
        let g = join(
            &Graph::empty(1),
            &disjoint_union(&Graph::path(7), &Graph::empty(2)),
        );
        let rep = eigenvalues_sym(&g).unwrap();
        let n = g.n() as f64;
        let m = g.edge_count() as f64;
        assert!(rep.values.iter().sum::<f64>().abs() <= 1e-8 * n);
        assert!((rep.values.iter().map(|x| x * x).sum::<f64>() - 2.0 * m).abs() <= 1e-6 * m);
        assert!(rep.residual_top <= 1e-10 && rep.residual_bottom <= 1e-10);
        let json = rep.to_json();
        assert!(json.starts_with("{\"values\":["));
        assert!(json.contains("\"residuals\":{\"top\":"));
    }

    #[test]
    fn join_regular_examples() {
        let input =
            RegularJoinInput::from_graphs(&Graph::empty(2), &Graph::cycle(8).unwrap()).unwrap();
        let s = join_regular_spectrum(&input).unwrap();
        assert!(close(s[0], 1.0 + 17f64.sqrt(), 1e-12));
        assert!(close(s[9], 1.0 - 17f64.sqrt(), 1e-12));

        let k1 = RegularJoinInput::from_graphs(&Graph::empty(1), &Graph::empty(1)).unwrap();
        assert_eq!(join_regular_spectrum(&k1).unwrap(), vec![1.0, -1.0]);

        let k2c8 =
            RegularJoinInput::from_graphs(&Graph::complete(2), &Graph::cycle(8).unwrap()).unwrap();
        let s = join_regular_spectrum(&k2c8).unwrap();
        assert!(close(s[0], (3.0 + 65f64.sqrt()) / 2.0, 1e-12));
        assert!(close(s[9], (3.0 - 65f64.sqrt()) / 2.0, 1e-12));
    }

    #[test]
    fn join_regular_rejects_non_regular() {
        let mut bad =
            RegularJoinInput::from_graphs(&Graph::empty(2), &Graph::cycle(5).unwrap()).unwrap();
        bad.k = 1.0;
        assert!(join_regular_spectrum(&bad).is_err());
        assert!(RegularJoinInput::from_graphs(&Graph::path(3), &Graph::empty(1)).is_err());
    }

    #[test]
    fn sign_profiles() {
        let g = join(
            &Graph::empty(1),
            &disjoint_union(&Graph::path(7), &Graph::empty(2)),
        );
        let (_, top) = extreme_sign_profile(&g, Extreme::Top).unwrap();
        assert_eq!(top[0], 1.0);
        assert!(sign_pattern_holds(&top, &[0], Extreme::Top).unwrap());
        let (_, bottom) = extreme_sign_profile(&g, Extreme::Bottom).unwrap();
        assert!(sign_pattern_holds(&bottom, &[0], Extreme::Bottom).unwrap());
        assert!(!sign_pattern_holds(&bottom, &[0], Extreme::Top).unwrap());

        let star = Graph::complete_bipartite(1, 9);
        let (lambda, v) = extreme_sign_profile(&star, Extreme::Bottom).unwrap();
        assert!(close(lambda, -3.0, 1e-12));
        assert!(v[1..].iter().all(|&x| close(x, -1.0 / 3.0, 1e-12)));

        assert!(extreme_sign_profile(&Graph::path(2), Extreme::Top).is_err());
        assert!(sign_pattern_holds(&[1.0, 1e-12], &[0], Extreme::Top).is_err());
    }

    #[test]
    fn quotient_reproduces_extremes() {
        // Fan K1 ∨ (P5 ∪ 3K1): centre, path folded by reflection, isolated block.
        let g = join(
            &Graph::empty(1),
            &disjoint_union(&Graph::path(5), &Graph::empty(3)),
        );
        let cells = vec![vec![0], vec![1, 5], vec![2, 4], vec![3], vec![6, 7, 8]];
        let q = equitable_quotient(&g, &cells).unwrap();
        let qv = eigen::eigenvalues(&q).unwrap();
        let full = spectrum(&g).unwrap();
        assert!(close(qv[0], full[0], 1e-12));
        assert!(close(qv[qv.len() - 1], full[full.len() - 1], 1e-12));
        let bad = vec![vec![0, 1], (2..9).collect()];
        assert!(equitable_quotient(&g, &bad).is_err());
    }
}
