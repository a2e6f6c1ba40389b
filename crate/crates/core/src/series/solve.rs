use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::eps::EpsSeries;
use super::ratpoly::{rat, RatPoly};
use crate::error::{Error, Result};
use crate::walks::fit_linear_walk_coeffs;

/// Coefficients of `λ² = N + κλ + Σ aᵢ/λⁱ` with `aᵢ = pᵢ·m + qᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ACoeffList {
    pub n_label: String,
    pub m_label: String,
    /// κ, the coefficient of the linear `λ` term (0 unless the centres are
    /// adjacent).
    pub lambda_coeff: i64,
    /// `(pᵢ, qᵢ)` for `i = 1, 2, …`.
    pub entries: Vec<(i64, i64)>,
}

/// The three linear families whose extreme eigenvalues the engine expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesFamily {
    /// `K1 ∨ (P_ℓ ∪ (n−1−ℓ)K1)`: `N = n−1`, `m = ℓ−1`, `aᵢ = W_i(ℓ)`.
    Outerplanar,
    /// `2K1 ∨ (P_ℓ ∪ (n−2−ℓ)K1)`: `N = 2(n−2)`, `m = ℓ−2`, `aᵢ = 2W_i(ℓ)`.
    PlanarFirst,
    /// `K2 ∨ (P_ℓ ∪ (n−2−ℓ)K1)`: as the first kind plus the `λ` term.
    PlanarSecond,
}

impl std::str::FromStr for SeriesFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SeriesFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown series family {s:?}")))
    }
}

impl SeriesFamily {
    pub const ALL: [SeriesFamily; 3] = [
        SeriesFamily::Outerplanar,
        SeriesFamily::PlanarFirst,
        SeriesFamily::PlanarSecond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesFamily::Outerplanar => "outerplanar",
            SeriesFamily::PlanarFirst => "planar-first",
            SeriesFamily::PlanarSecond => "planar-second",
        }
    }

    pub fn centers(self) -> u64 {
        match self {
            SeriesFamily::Outerplanar => 1,
            _ => 2,
        }
    }

    /// `N` as a function of `n`.
    pub fn big_n(self, n: u64) -> u64 {
        match self {
            SeriesFamily::Outerplanar => n - 1,
            _ => 2 * (n - 2),
        }
    }

    /// The shifted path length `m` as a function of `ℓ`.
    pub fn shift(self) -> u64 {
        self.centers()
    }

    /// The engine variable `μ = m/N`.
    pub fn mu(self, n: u64, ell: u64) -> f64 {
        (ell as f64 - self.shift() as f64) / self.big_n(n) as f64
    }

    /// Factor `s` with printed variable = `s·μ`: `(ℓ−1)/(n−1)` is μ itself,
    /// `(ℓ−2)/(n−2)` is `2μ`.
    pub fn printed_scale(self) -> BigRational {
        rat(self.centers() as i64, 1)
    }

    /// Coefficient list through `aₖ`, built from exact walk fits.
    pub fn a_list(self, k: usize) -> Result<ACoeffList> {
        let c = self.centers() as i64;
        let entries = (1..=k as u32)
            .map(|i| {
                let w = fit_linear_walk_coeffs(i)?;
                // W_i(ℓ) = p·ℓ + q = p·m + (p·shift + q).
                Ok((c * w.p, c * (w.p * c + w.q)))
            })
            .collect::<Result<Vec<_>>>()?;
        let (n_label, m_label) = match self {
            SeriesFamily::Outerplanar => ("N = n-1", "m = l-1"),
            _ => ("N = 2n-4", "m = l-2"),
        };
        Ok(ACoeffList {
            n_label: n_label.into(),
            m_label: m_label.into(),
            lambda_coeff: (self == SeriesFamily::PlanarSecond) as i64,
            entries,
        })
    }
}

impl ACoeffList {
    pub fn new(entries: Vec<(i64, i64)>) -> Self {
        ACoeffList {
            n_label: "N".into(),
            m_label: "m".into(),
            lambda_coeff: 0,
            entries,
        }
    }

    /// `aᵢ·ε^{i+2}` as a series in ε: `pᵢ·μ·εⁱ + qᵢ·ε^{i+2}`.
    fn scaled_term(&self, i: usize, order: i32) -> EpsSeries {
        let (p, q) = self.entries[i - 1];
        let lead = RatPoly::mu().scale(&rat(p, 1));
        let tail = RatPoly::from_ints(&[q]);
        EpsSeries::monomial(i as i32, lead, order).add(&EpsSeries::monomial(
            i as i32 + 2,
            tail,
            order,
        ))
    }
}

fn check_supply(a: &ACoeffList, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Series("truncation order must be at least 1".into()));
    }
    if a.entries.len() < k {
        return Err(Error::Series(format!(
            "c_{k} needs a_1..a_{k}, but only {} coefficients were supplied",
            a.entries.len()
        )));
    }
    Ok(())
}

/// `L² − 1 − κεL − Σ (pᵢμ + qᵢε²) εⁱ L⁻ⁱ` through order `k`, where
/// `λ = ε⁻¹L`.
fn equation_residual(a: &ACoeffList, l: &EpsSeries, k: i32) -> Result<EpsSeries> {
    let l = l.truncate(k);
    let mut res = l.mul(&l).sub(&EpsSeries::one(k));
    if a.lambda_coeff != 0 {
        let kappa = RatPoly::from_ints(&[a.lambda_coeff]);
        res = res.sub(&l.shift(1).scale(&kappa).truncate(k));
    }
    let inv = l.reciprocal()?;
    let mut inv_pow = EpsSeries::one(k);
    for i in 1..=(k as usize).min(a.entries.len()) {
        inv_pow = inv_pow.mul(&inv).truncate(k);
        let term = a.scaled_term(i, k).mul(&inv_pow).truncate(k);
        res = res.sub(&term);
    }
    Ok(res.truncate(k))
}

/// Expansion `λ = √N + Σ cᵢ N^{−(i−1)/2}` near `+√N`, by matching powers of
/// ε after substituting `λ = ε⁻¹(1 + Σ cᵢ εⁱ)`. Returns `c₁ … cₖ`.
pub fn solve_lambda_series(a: &ACoeffList, k: usize) -> Result<Vec<RatPoly>> {
    check_supply(a, k)?;
    let ki = k as i32;
    let mut cs: Vec<RatPoly> = Vec::with_capacity(k);
    for j in 1..=ki {
        let mut terms = vec![RatPoly::one()];
        terms.extend(cs.iter().cloned());
        let l = EpsSeries::new(0, terms, j);
        // [ε^j] of the residual is 2c_j + (terms in c_1..c_{j−1}).
        let r = equation_residual(a, &l, j)?.coeff(j);
        cs.push(r.scale(&rat(-1, 2)));
    }
    let mut terms = vec![RatPoly::one()];
    terms.extend(cs.iter().cloned());
    let res = equation_residual(a, &EpsSeries::new(0, terms, ki), ki)?;
    if !res.vanishes() {
        return Err(Error::Series(
            "substituted expansion leaves a non-zero residual".into(),
        ));
    }
    for (i, c) in cs.iter().enumerate() {
        if c.degree().is_some_and(|d| d > i + 1) {
            return Err(Error::Series(format!(
                "c_{} has degree {} > {}",
                i + 1,
                c.degree().unwrap(),
                i + 1
            )));
        }
    }
    Ok(cs)
}

/// Re-substitutes `c` and returns the residual series; empty when exact.
pub fn lambda_series_residual(a: &ACoeffList, c: &[RatPoly]) -> Result<EpsSeries> {
    let mut terms = vec![RatPoly::one()];
    terms.extend(c.iter().cloned());
    let k = c.len() as i32;
    equation_residual(a, &EpsSeries::new(0, terms, k), k)
}

/// Coefficients of the expansion near `−√N`: `(−1)^{i−1} cᵢ`.
pub fn lambda_minus_series(c: &[RatPoly]) -> Vec<RatPoly> {
    c.iter()
        .enumerate()
        .map(|(i, ci)| if i % 2 == 0 { ci.clone() } else { -ci })
        .collect()
}

/// `±√N + Σ cᵢ(μ) N^{−(i−1)/2}` in floating point.
pub fn lambda_series_eval(c: &[RatPoly], big_n: f64, mu: f64, sign: f64) -> f64 {
    let eps = big_n.sqrt().recip();
    let mut sum = sign / eps;
    let mut pow = 1.0;
    for ci in c {
        sum += ci.eval_f64(mu) * pow;
        pow *= eps;
    }
    sum
}

/// `λ₁` and `λₙ` from one coefficient list.
pub fn extreme_series_eval(c: &[RatPoly], family: SeriesFamily, n: u64, ell: u64) -> (f64, f64) {
    let big_n = family.big_n(n) as f64;
    let mu = family.mu(n, ell);
    (
        lambda_series_eval(c, big_n, mu, 1.0),
        lambda_series_eval(&lambda_minus_series(c), big_n, mu, -1.0),
    )
}

/// `2√N + 2 Σ_{i even} cᵢ N^{−(i−1)/2}`; the odd coefficients cancel in
/// `λ₁ − λₙ`.
pub fn spread_series_eval(c: &[RatPoly], family: SeriesFamily, n: u64, ell: u64) -> Result<f64> {
    let hi = n.saturating_sub(family.centers());
    if n < 4 || ell < 1 || ell > hi {
        return Err(Error::Precondition(format!(
            "ℓ = {ell} outside [1, {hi}] for {} with n = {n}",
            family.name()
        )));
    }
    let big_n = family.big_n(n) as f64;
    let eps = big_n.sqrt().recip();
    let mu = family.mu(n, ell);
    let mut sum = 2.0 / eps;
    for (i, ci) in c.iter().enumerate() {
        let idx = i as i32 + 1;
        if idx % 2 == 0 {
            sum += 2.0 * ci.eval_f64(mu) * eps.powi(idx - 1);
        }
    }
    Ok(sum)
}
