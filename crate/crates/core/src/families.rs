//! Candidate extremal families, the merge operation, argmax scans, planar
//! family comparisons and eigenvector series residuals.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen;
use crate::error::{Error, Result};
use crate::graph::{disjoint_union, join, Graph, LinearForestSpec};
use crate::report::F17;
use crate::series::{solve_lambda_series, spread_series_eval, RatPoly, SeriesFamily};
use crate::spectra::{self, Extreme};

/// Spreads within this distance of the maximum count as tied in a scan.
pub const SCAN_TIE_TOLERANCE: f64 = 1e-11;

/// Merge margins at or below this are inconclusive.
pub const MERGE_RESOLUTION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `K1 ∨ (P_ℓ ∪ (n−1−ℓ)K1)`
    OuterplanarLinear,
    /// `2K1 ∨ (P_ℓ ∪ (n−2−ℓ)K1)`
    PlanarFirstKind,
    /// `K2 ∨ (P_ℓ ∪ (n−2−ℓ)K1)`
    PlanarSecondKind,
    /// `2K1 ∨ C_{n−2}`
    DoubleWheel,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::OuterplanarLinear,
        FamilyKind::PlanarFirstKind,
        FamilyKind::PlanarSecondKind,
        FamilyKind::DoubleWheel,
    ];

    /// The three families parameterized by a linear forest.
    pub const LINEAR: [FamilyKind; 3] = [
        FamilyKind::OuterplanarLinear,
        FamilyKind::PlanarFirstKind,
        FamilyKind::PlanarSecondKind,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::OuterplanarLinear => "outerplanar-linear",
            FamilyKind::PlanarFirstKind => "planar-first-kind",
            FamilyKind::PlanarSecondKind => "planar-second-kind",
            FamilyKind::DoubleWheel => "double-wheel",
        }
    }

    pub fn centers(self) -> usize {
        match self {
            FamilyKind::OuterplanarLinear => 1,
            _ => 2,
        }
    }

    /// Adjacency between the two centres.
    fn centers_adjacent(self) -> bool {
        self == FamilyKind::PlanarSecondKind
    }

    pub fn has_ell(self) -> bool {
        self != FamilyKind::DoubleWheel
    }

    /// Largest legal ℓ: every non-centre vertex on the path.
    pub fn max_ell(self, n: usize) -> usize {
        n - self.centers()
    }

    pub fn series(self) -> Option<SeriesFamily> {
        match self {
            FamilyKind::OuterplanarLinear => Some(SeriesFamily::Outerplanar),
            FamilyKind::PlanarFirstKind => Some(SeriesFamily::PlanarFirst),
            FamilyKind::PlanarSecondKind => Some(SeriesFamily::PlanarSecond),
            FamilyKind::DoubleWheel => None,
        }
    }

    /// `⌈(2n−1)/3⌉` for the outerplanar family, `⌈(2n−2)/3⌉` for the
    /// first planar kind; no closed form is known for the others.
    pub fn predicted_ell0(self, n: usize) -> Option<usize> {
        match self {
            FamilyKind::OuterplanarLinear => Some((2 * n - 1).div_ceil(3)),
            FamilyKind::PlanarFirstKind => Some((2 * n - 2).div_ceil(3)),
            _ => None,
        }
    }

    fn center_graph(self) -> Graph {
        match self {
            FamilyKind::OuterplanarLinear => Graph::empty(1),
            FamilyKind::PlanarSecondKind => Graph::complete(2),
            _ => Graph::empty(2),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown family kind {s:?}")))
    }
}

/// A family member: kind, order and path length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub ell: Option<usize>,
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        build_family(self.kind, self.n, self.ell)
    }
}

/// Graph of the family with the centre vertices first, then the path
/// `v₁ … v_ℓ`, then the isolated vertices.
pub fn build_family(kind: FamilyKind, n: usize, ell: Option<usize>) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidSize(format!("families need n ≥ 4, got {n}")));
    }
    match (kind, ell) {
        (FamilyKind::DoubleWheel, None) => Ok(join(&Graph::empty(2), &Graph::cycle(n - 2)?)),
        (FamilyKind::DoubleWheel, Some(_)) => {
            Err(Error::Precondition("the double wheel takes no ℓ".into()))
        }
        (_, None) => Err(Error::Precondition(format!("{kind} needs ℓ"))),
        (_, Some(ell)) => {
            if ell < 1 || ell > kind.max_ell(n) {
                return Err(Error::Precondition(format!(
                    "ℓ = {ell} outside [1, {}] for {kind} with n = {n}",
                    kind.max_ell(n)
                )));
            }
            let rest = Graph::empty(kind.max_ell(n) - ell);
            Ok(join(
                &kind.center_graph(),
                &disjoint_union(&Graph::path(ell), &rest),
            ))
        }
    }
}

/// Linear graph of `kind` over an arbitrary linear forest.
pub fn build_linear(kind: FamilyKind, forest: &LinearForestSpec) -> Result<Graph> {
    if !kind.has_ell() {
        return Err(Error::Precondition(format!(
            "{kind} is not a linear family"
        )));
    }
    Ok(join(&kind.center_graph(), &Graph::linear_forest(forest)))
}

/// Equitable partition of a family graph: centres, path vertices paired
/// by the reflection `vⱼ ↔ v_{ℓ+1−j}`, and the isolated vertices.
pub fn family_cells(kind: FamilyKind, n: usize, ell: usize) -> Vec<Vec<usize>> {
    let c = kind.centers();
    let mut cells = vec![(0..c).collect::<Vec<_>>()];
    for j in 0..ell.div_ceil(2) {
        let mirror = ell - 1 - j;
        cells.push(if mirror == j {
            vec![c + j]
        } else {
            vec![c + j, c + mirror]
        });
    }
    if c + ell < n {
        cells.push((c + ell..n).collect());
    }
    cells
}

/// `1'(λI − A_ℓ)⁻¹1` for the path `P_ℓ` and `|λ| > 2`.
fn path_resolvent_sum(ell: usize, lambda: f64) -> f64 {
    // Thomas algorithm on the diagonally dominant matrix tridiag(−1, λ, −1).
    let mut c_prime = vec![0.0; ell];
    let mut d_prime = vec![0.0; ell];
    for i in 0..ell {
        let denom = lambda + if i > 0 { c_prime[i - 1] } else { 0.0 };
        c_prime[i] = -1.0 / denom;
        d_prime[i] = (1.0 + if i > 0 { d_prime[i - 1] } else { 0.0 }) / denom;
    }
    let mut sum = 0.0;
    let mut next = 0.0;
    for i in (0..ell).rev() {
        let y = d_prime[i] - c_prime[i] * next;
        sum += y;
        next = y;
    }
    sum
}

/// Centre equation `λ − κ − c·Σ_parts 1'(λ − A_{ℓᵢ})⁻¹1`, whose roots with
/// `|λ| > 2` are exactly the eigenvalues of the linear graph outside
/// `[−2, 2]`; it is strictly increasing on both sides of that interval.
fn center_equation(kind: FamilyKind, parts: &[(usize, usize)], lambda: f64) -> f64 {
    let c = kind.centers() as f64;
    let kappa = kind.centers_adjacent() as u8 as f64;
    let mut s = 0.0;
    for &(len, count) in parts {
        s += count as f64 * path_resolvent_sum(len, lambda);
    }
    lambda - kappa - c * s
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `λ₁` and `λₙ` of a linear graph from its centre equation, in time linear
/// in the number of vertices. Fails when either extreme lies in `[−2, 2]`.
pub fn linear_extremes(kind: FamilyKind, forest: &LinearForestSpec) -> Result<(f64, f64)> {
    if !kind.has_ell() {
        return Err(Error::Precondition(format!(
            "{kind} is not a linear family"
        )));
    }
    let mut sizes = forest.parts.clone();
    sizes.sort_unstable();
    let mut parts: Vec<(usize, usize)> = Vec::new();
    for s in sizes {
        match parts.last_mut() {
            Some((len, count)) if *len == s => *count += 1,
            _ => parts.push((s, 1)),
        }
    }
    let f = |x: f64| center_equation(kind, &parts, x);
    let bound = (forest.total() + kind.centers()) as f64 + 1.0;
    if !(f(2.0) < 0.0 && f(bound) > 0.0 && f(-bound) < 0.0 && f(-2.0) > 0.0) {
        return Err(Error::Precondition(
            "an extreme eigenvalue lies in [−2, 2]; use the dense solver".into(),
        ));
    }
    Ok((bisect(f, 2.0, bound), bisect(f, -bound, -2.0)))
}

/// `λ₁` and `λₙ` of a one-path family member. Small members whose extremes
/// reach into `[−2, 2]` go through [`family_extremes_dense`].
pub fn family_extremes(kind: FamilyKind, n: usize, ell: usize) -> Result<(f64, f64)> {
    if ell < 1 || ell > kind.max_ell(n) {
        return Err(Error::Precondition(format!(
            "ℓ = {ell} out of range for {kind}"
        )));
    }
    let mut parts = vec![ell];
    parts.extend(std::iter::repeat_n(1, kind.max_ell(n) - ell));
    match linear_extremes(kind, &LinearForestSpec::new(parts)?) {
        Err(Error::Precondition(_)) => family_extremes_dense(kind, n, ell),
        other => other,
    }
}

/// `λ₁` and `λₙ` from the dense eigensolver applied to the equitable
/// quotient of the family graph.
pub fn family_extremes_dense(kind: FamilyKind, n: usize, ell: usize) -> Result<(f64, f64)> {
    let g = build_family(kind, n, Some(ell))?;
    let q = spectra::equitable_quotient(&g, &family_cells(kind, n, ell))?;
    let v = eigen::eigenvalues(&q)?;
    Ok((v[0], v[v.len() - 1]))
}

/// Replaces the two largest non-trivial paths (ties: lower index first) by
/// one path on `ℓ₁ + ℓ₂ − 1` vertices at the lower index and a `P₁` at the
/// higher one.
pub fn merge(parts: &LinearForestSpec) -> Result<LinearForestSpec> {
    let mut idx: Vec<usize> = (0..parts.parts.len())
        .filter(|&i| parts.parts[i] >= 2)
        .collect();
    if idx.len() < 2 {
        return Err(Error::Precondition(
            "merge needs two non-trivial paths".into(),
        ));
    }
    idx.sort_by_key(|&i| (std::cmp::Reverse(parts.parts[i]), i));
    let (i, j) = (idx[0].min(idx[1]), idx[0].max(idx[1]));
    let mut out = parts.parts.clone();
    out[i] = parts.parts[i] + parts.parts[j] - 1;
    out[j] = 1;
    LinearForestSpec::new(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MergeStatus {
    Ok,
    Inconclusive,
    Violation,
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MergeTrial {
    pub parts: Vec<usize>,
    pub status: MergeStatus,
    /// `λ₁(G') − λ₁(G)`.
    pub margin_top: Option<F17>,
    /// `λₙ(G) − λₙ(G')`.
    pub margin_bottom: Option<F17>,
}

/// Compares the extremes before and after one merge, with dense solves.
pub fn merge_trial(kind: FamilyKind, forest: &LinearForestSpec) -> Result<MergeTrial> {
    if forest.nontrivial() < 2 {
        return Ok(MergeTrial {
            parts: forest.parts.clone(),
            status: MergeStatus::Skipped,
            margin_top: None,
            margin_bottom: None,
        });
    }
    let before = spectra::spectrum(&build_linear(kind, forest)?)?;
    let after = spectra::spectrum(&build_linear(kind, &merge(forest)?)?)?;
    let top = after[0] - before[0];
    let bottom = before[before.len() - 1] - after[after.len() - 1];
    let worst = top.min(bottom);
    let status = if worst > MERGE_RESOLUTION {
        MergeStatus::Ok
    } else if worst >= -MERGE_RESOLUTION {
        MergeStatus::Inconclusive
    } else {
        MergeStatus::Violation
    };
    Ok(MergeTrial {
        parts: forest.parts.clone(),
        status,
        margin_top: Some(F17(top)),
        margin_bottom: Some(F17(bottom)),
    })
}

/// Uniform random composition of `total` with at least two parts ≥ 2.
pub fn random_forest(rng: &mut impl Rng, total: usize) -> Result<LinearForestSpec> {
    if total < 4 {
        return Err(Error::Precondition(format!(
            "cannot hold two non-trivial paths in {total} vertices"
        )));
    }
    loop {
        let mut parts = Vec::new();
        let mut run = 1;
        for _ in 1..total {
            if rng.gen_bool(0.5) {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        let spec = LinearForestSpec::new(parts)?;
        if spec.nontrivial() >= 2 {
            return Ok(spec);
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MergeExperiment {
    pub kind: FamilyKind,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub violations: usize,
    pub inconclusive: usize,
    pub min_margin_top: F17,
    pub min_margin_bottom: F17,
}

/// Random merges on `n`-vertex linear graphs of `kind`, seeded by `seed`.
pub fn merge_monotonicity_experiment(
    kind: FamilyKind,
    trials: usize,
    n: usize,
    seed: u64,
) -> Result<MergeExperiment> {
    if n < 8 || trials == 0 || !kind.has_ell() {
        return Err(Error::Precondition(format!(
            "merge experiment needs a linear family, n ≥ 8 and trials ≥ 1 (got {kind}, n = {n}, trials = {trials})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forests = (0..trials)
        .map(|_| random_forest(&mut rng, kind.max_ell(n)))
        .collect::<Result<Vec<_>>>()?;
    let results = forests
        .par_iter()
        .map(|f| merge_trial(kind, f))
        .collect::<Result<Vec<_>>>()?;
    let count = |s: MergeStatus| results.iter().filter(|r| r.status == s).count();
    let min = |get: fn(&MergeTrial) -> Option<F17>| {
        results
            .iter()
            .filter_map(|r| get(r).map(|x| x.0))
            .fold(f64::INFINITY, f64::min)
    };
    Ok(MergeExperiment {
        kind,
        n,
        trials,
        seed,
        violations: count(MergeStatus::Violation),
        inconclusive: count(MergeStatus::Inconclusive),
        min_margin_top: F17(min(|r| r.margin_top)),
        min_margin_bottom: F17(min(|r| r.margin_bottom)),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesResidual {
    pub lambda: F17,
    pub residual: F17,
    /// `ℓ·(2/|λ|)^{K+1}`, the truncation tail in exact arithmetic; the
    /// computed residual also carries eigensolver rounding near 1e-15.
    pub bound: F17,
}

/// Max over path vertices of `|α(vⱼ) − c·Σ_{k≤K} λ^{−(k+1)} (A_ℓᵏ1)ⱼ|` with
/// `α` the extreme eigenvector scaled to 1 at the centres and `c` the
/// number of centres.
pub fn eigenvector_series_residual(
    kind: FamilyKind,
    n: usize,
    ell: usize,
    which: Extreme,
    k: usize,
) -> Result<SeriesResidual> {
    let g = build_family(kind, n, Some(ell))?;
    let (lambda, alpha) = spectra::extreme_sign_profile(&g, which)?;
    let c = kind.centers();
    let factor = c as f64;
    let mut walk = vec![1.0; ell];
    let mut series = vec![0.0; ell];
    let mut scale = 1.0 / lambda;
    for step in 0..=k {
        if step > 0 {
            walk = (0..ell)
                .map(|j| {
                    (if j > 0 { walk[j - 1] } else { 0.0 })
                        + (if j + 1 < ell { walk[j + 1] } else { 0.0 })
                })
                .collect();
            scale /= lambda;
        }
        for j in 0..ell {
            series[j] += factor * scale * walk[j];
        }
    }
    let residual = (0..ell)
        .map(|j| (alpha[c + j] - series[j]).abs())
        .fold(0.0, f64::max);
    let bound = ell as f64 * (2.0 / lambda.abs()).powi(k as i32 + 1);
    Ok(SeriesResidual {
        lambda: F17(lambda),
        residual: F17(residual),
        bound: F17(bound),
    })
}

/// Coefficients `c₁ … c₆` for a family, or `None` for the double wheel.
pub fn family_series_coefficients(kind: FamilyKind) -> Result<Option<Vec<RatPoly>>> {
    match kind.series() {
        None => Ok(None),
        Some(fam) => Ok(Some(solve_lambda_series(&fam.a_list(6)?, 6)?)),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanRow {
    pub ell: usize,
    pub lambda1: F17,
    pub lambdan: F17,
    pub spread: F17,
    pub series_spread: F17,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpreadScanReport {
    pub kind: FamilyKind,
    pub n: usize,
    pub rows: Vec<ScanRow>,
    /// Smallest ℓ attaining the maximum spread.
    pub argmax_ell: usize,
    /// Every ℓ within the tie tolerance of the maximum.
    pub ties: Vec<usize>,
    pub predicted_ell0: Option<usize>,
    /// Unique argmax equal to the prediction.
    pub onset: Option<bool>,
    /// Largest disagreement between the scan and dense quotient solves at
    /// the argmax and its neighbours.
    pub dense_check: F17,
}

impl SpreadScanReport {
    pub fn max_spread(&self) -> f64 {
        self.rows[self.argmax_ell - 1].spread.0
    }

    pub fn spread_at(&self, ell: usize) -> Option<f64> {
        self.rows.get(ell.checked_sub(1)?).map(|r| r.spread.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scan report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("ell,lambda1,lambdan,spread,series_spread\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.ell,
                crate::report::fmt17(r.lambda1.0),
                crate::report::fmt17(r.lambdan.0),
                crate::report::fmt17(r.spread.0),
                crate::report::fmt17(r.series_spread.0)
            ));
        }
        out
    }

    /// Number of sign changes of `f(ℓ+1) − f(ℓ)` over the scan, treating
    /// differences within the tie tolerance as zero.
    pub fn difference_sign_changes(&self) -> usize {
        let signs: Vec<i8> = self
            .rows
            .windows(2)
            .map(|w| w[1].spread.0 - w[0].spread.0)
            .filter(|d| d.abs() > SCAN_TIE_TOLERANCE)
            .map(|d| if d > 0.0 { 1 } else { -1 })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Spread of every legal ℓ for `kind` at order `n`.
pub fn scan_argmax(kind: FamilyKind, n: usize) -> Result<SpreadScanReport> {
    if !kind.has_ell() || n < 8 {
        return Err(Error::Precondition(format!(
            "scan needs a linear family and n ≥ 8 (got {kind}, n = {n})"
        )));
    }
    let coeffs = family_series_coefficients(kind)?.expect("linear family has a series");
    let fam = kind.series().expect("linear family has a series");
    let rows = (1..=kind.max_ell(n))
        .into_par_iter()
        .map(|ell| {
            let (l1, ln) = family_extremes(kind, n, ell)?;
            Ok(ScanRow {
                ell,
                lambda1: F17(l1),
                lambdan: F17(ln),
                spread: F17(l1 - ln),
                series_spread: F17(spread_series_eval(&coeffs, fam, n as u64, ell as u64)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max = rows
        .iter()
        .map(|r| r.spread.0)
        .fold(f64::NEG_INFINITY, f64::max);
    let ties: Vec<usize> = rows
        .iter()
        .filter(|r| max - r.spread.0 <= SCAN_TIE_TOLERANCE)
        .map(|r| r.ell)
        .collect();
    let argmax_ell = ties[0];
    let predicted = kind.predicted_ell0(n);
    let mut dense_check: f64 = 0.0;
    for ell in argmax_ell.saturating_sub(1).max(1)..=(argmax_ell + 1).min(kind.max_ell(n)) {
        let (l1, ln) = family_extremes_dense(kind, n, ell)?;
        let r = &rows[ell - 1];
        dense_check = dense_check
            .max((l1 - r.lambda1.0).abs())
            .max((ln - r.lambdan.0).abs());
    }
    Ok(SpreadScanReport {
        kind,
        n,
        onset: predicted.map(|p| ties == [p]),
        predicted_ell0: predicted,
        argmax_ell,
        ties,
        rows,
        dense_check: F17(dense_check),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanarRanking {
    pub n: usize,
    pub first_kind_ell: usize,
    pub first_kind: F17,
    pub first_kind_at_ell0: F17,
    pub second_kind_ell: usize,
    pub second_kind: F17,
    pub double_wheel: F17,
    /// `√(8n − 12)`.
    pub double_wheel_closed_form: F17,
    pub first_is_largest: bool,
    pub margin_vs_second: F17,
    pub margin_vs_wheel: F17,
    /// `(2/3 − 1/2)·2/√(2n−4)`, the leading-order gap to the second kind.
    pub predicted_margin: F17,
}

/// Exact spreads of the best first-kind, best second-kind and double-wheel
/// graphs on `n` vertices.
pub fn compare_planar_candidates(n: usize) -> Result<PlanarRanking> {
    if n < 10 {
        return Err(Error::Precondition(format!(
            "comparison needs n ≥ 10, got {n}"
        )));
    }
    let first = scan_argmax(FamilyKind::PlanarFirstKind, n)?;
    let second = scan_argmax(FamilyKind::PlanarSecondKind, n)?;
    let wheel = spectra::spread(&build_family(FamilyKind::DoubleWheel, n, None)?)?;
    let ell0 = FamilyKind::PlanarFirstKind
        .predicted_ell0(n)
        .expect("first kind has ℓ₀");
    let f0 = first.spread_at(ell0).expect("ℓ₀ is in range");
    let best_first = first.max_spread();
    let best_second = second.max_spread();
    Ok(PlanarRanking {
        n,
        first_kind_ell: first.argmax_ell,
        first_kind: F17(best_first),
        first_kind_at_ell0: F17(f0),
        second_kind_ell: second.argmax_ell,
        second_kind: F17(best_second),
        double_wheel: F17(wheel),
        double_wheel_closed_form: F17((8.0 * n as f64 - 12.0).sqrt()),
        first_is_largest: best_first > best_second && best_first > wheel,
        margin_vs_second: F17(best_first - best_second),
        margin_vs_wheel: F17(best_first - wheel),
        predicted_margin: F17((2.0 / 3.0 - 0.5) * 2.0 / (2.0 * n as f64 - 4.0).sqrt()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor::classify;

    #[test]
    fn family_edge_counts() {
        let g = build_family(FamilyKind::OuterplanarLinear, 10, Some(7)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 15));
        assert_eq!(
            build_family(FamilyKind::DoubleWheel, 10, None)
                .unwrap()
                .edge_count(),
            24
        );
        assert_eq!(
            build_family(FamilyKind::PlanarSecondKind, 10, Some(5))
                .unwrap()
                .edge_count(),
            21
        );
        assert_eq!(
            build_family(FamilyKind::PlanarFirstKind, 10, Some(5))
                .unwrap()
                .edge_count(),
            20
        );
        assert!(build_family(FamilyKind::OuterplanarLinear, 10, Some(10)).is_err());
        assert!(build_family(FamilyKind::PlanarFirstKind, 10, Some(0)).is_err());
        assert!(build_family(FamilyKind::DoubleWheel, 10, Some(3)).is_err());
        assert!(build_family(FamilyKind::PlanarFirstKind, 10, None).is_err());
    }

    #[test]
    fn families_have_their_class() {
        for n in 5..=9 {
            for ell in 1..=n - 1 {
                let g = build_family(FamilyKind::OuterplanarLinear, n, Some(ell)).unwrap();
                assert!(classify(&g).unwrap().is_outerplanar);
            }
            for kind in [FamilyKind::PlanarFirstKind, FamilyKind::PlanarSecondKind] {
                for ell in 1..=n - 2 {
                    let c = classify(&build_family(kind, n, Some(ell)).unwrap()).unwrap();
                    assert!(c.is_planar && !c.is_outerplanar, "{kind} n={n} ℓ={ell}");
                }
            }
            let c = classify(&build_family(FamilyKind::DoubleWheel, n, None).unwrap()).unwrap();
            assert!(c.is_planar && !c.is_outerplanar);
        }
    }

    #[test]
    fn merge_examples() {
        let m = |p: Vec<usize>| merge(&LinearForestSpec::new(p).unwrap()).map(|s| s.parts);
        assert_eq!(m(vec![3, 4]).unwrap(), vec![6, 1]);
        assert_eq!(m(vec![2, 2]).unwrap(), vec![3, 1]);
        assert_eq!(m(vec![1, 3, 5, 3]).unwrap(), vec![1, 7, 1, 3]);
        assert_eq!(m(vec![3, 1, 3, 3]).unwrap(), vec![5, 1, 1, 3]);
        assert!(m(vec![5, 1, 1]).is_err());
    }

    #[test]
    fn center_equation_matches_dense() {
        for kind in FamilyKind::LINEAR {
            for (n, ell) in [(12, 1), (12, 5), (30, 19), (30, 28), (61, 40)] {
                let ell = ell.min(kind.max_ell(n));
                let (a1, an) = family_extremes(kind, n, ell).unwrap();
                let full = spectra::spectrum(&build_family(kind, n, Some(ell)).unwrap()).unwrap();
                assert!((a1 - full[0]).abs() < 1e-12, "{kind} n={n} ℓ={ell}");
                assert!((an - full[n - 1]).abs() < 1e-12, "{kind} n={n} ℓ={ell}");
                let (q1, qn) = family_extremes_dense(kind, n, ell).unwrap();
                assert!((q1 - full[0]).abs() < 1e-12 && (qn - full[n - 1]).abs() < 1e-12);
            }
        }
        let forest = LinearForestSpec::new(vec![4, 1, 6, 2, 2]).unwrap();
        let (a1, an) = linear_extremes(FamilyKind::PlanarSecondKind, &forest).unwrap();
        let full = spectra::spectrum(&build_linear(FamilyKind::PlanarSecondKind, &forest).unwrap())
            .unwrap();
        assert!((a1 - full[0]).abs() < 1e-12 && (an - full[full.len() - 1]).abs() < 1e-12);
    }

    #[test]
    fn merge_trials() {
        let one = LinearForestSpec::new(vec![5, 1, 1, 1, 1]).unwrap();
        assert_eq!(
            merge_trial(FamilyKind::OuterplanarLinear, &one)
                .unwrap()
                .status,
            MergeStatus::Skipped
        );
        let two = LinearForestSpec::new(vec![3, 4, 1, 1]).unwrap();
        let t = merge_trial(FamilyKind::OuterplanarLinear, &two).unwrap();
        assert_eq!(t.status, MergeStatus::Ok);
        let e = merge_monotonicity_experiment(FamilyKind::PlanarFirstKind, 10, 12, 7).unwrap();
        assert_eq!(e.violations, 0);
        assert!(merge_monotonicity_experiment(FamilyKind::OuterplanarLinear, 10, 7, 7).is_err());
    }

    #[test]
    fn random_forests_are_reproducible() {
        let a = random_forest(&mut ChaCha8Rng::seed_from_u64(3), 29).unwrap();
        let b = random_forest(&mut ChaCha8Rng::seed_from_u64(3), 29).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total(), 29);
        assert!(a.nontrivial() >= 2);
    }

    #[test]
    fn series_residuals() {
        let r =
            eigenvector_series_residual(FamilyKind::OuterplanarLinear, 50, 33, Extreme::Top, 25)
                .unwrap();
        assert!(
            r.residual.0 < 1e-6 && r.residual.0 <= r.bound.0 + 1e-12,
            "{r:?}"
        );
        let r =
            eigenvector_series_residual(FamilyKind::PlanarFirstKind, 50, 32, Extreme::Bottom, 25)
                .unwrap();
        assert!(
            r.residual.0 < 1e-6 && r.residual.0 <= r.bound.0 + 1e-12,
            "{r:?}"
        );

        let g = build_family(FamilyKind::OuterplanarLinear, 20, Some(9)).unwrap();
        let (lambda, alpha) = spectra::extreme_sign_profile(&g, Extreme::Top).unwrap();
        let first = (1..10)
            .map(|j| (alpha[j] - 1.0 / lambda).abs())
            .fold(0.0, f64::max);
        let r0 = eigenvector_series_residual(FamilyKind::OuterplanarLinear, 20, 9, Extreme::Top, 0)
            .unwrap();
        assert!((r0.residual.0 - first).abs() < 1e-15);
    }

    #[test]
    fn small_scans() {
        let s = scan_argmax(FamilyKind::OuterplanarLinear, 40).unwrap();
        assert_eq!(s.rows.len(), 39);
        assert_eq!(s.predicted_ell0, Some(27));
        assert!(s.dense_check.0 < 1e-11);
        assert_eq!(s.ties.len(), 1);
        assert!(s
            .to_csv()
            .starts_with("ell,lambda1,lambdan,spread,series_spread\n1,"));
        assert_eq!(FamilyKind::PlanarFirstKind.predicted_ell0(100), Some(66));
        assert_eq!(FamilyKind::OuterplanarLinear.predicted_ell0(100), Some(67));
        assert!(scan_argmax(FamilyKind::DoubleWheel, 40).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in FamilyKind::ALL {
            assert_eq!(k.name().parse::<FamilyKind>().unwrap(), k);
            assert_eq!(
                serde_json::to_string(&k).unwrap(),
                format!("\"{}\"", k.name())
            );
        }
    }
}
