//! Dense real-symmetric eigensolver: Householder reduction to tridiagonal
//! form, implicit-shift QL for the eigenvalues, and inverse iteration on the
//! tridiagonal matrix for selected eigenvectors.

use crate::error::{Error, Result};

/// Row-major dense symmetric matrix. Only the lower triangle is read by the
/// solver, but both triangles are kept consistent for matrix-vector products.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.n + j] = x;
        self.data[j * self.n + i] = x;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.data
            .chunks_exact(self.n.max(1))
            .take(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `‖A v − λ v‖∞`.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        self.mul_vec(v)
            .iter()
            .zip(v)
            .map(|(av, x)| (av - lambda * x).abs())
            .fold(0.0, f64::max)
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Orthogonal similarity `Qᵀ A Q = T` with `T` symmetric tridiagonal.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    /// `offdiag[i]` couples rows `i` and `i + 1`.
    pub offdiag: Vec<f64>,
    /// Householder reflectors `I − β v vᵀ` acting on indices `k+1..n`.
    reflectors: Vec<(Vec<f64>, f64)>,
}

/// Householder tridiagonalisation, `4n³/3` flops working on the lower triangle.
pub fn tridiagonalize(a: &SymMatrix) -> Tridiagonal {
    let n = a.n;
    let mut w = a.data.clone();
    let mut offdiag = vec![0.0; n.saturating_sub(1)];
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let mut p = vec![0.0; n];
    let scale: f64 = a.data.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let negligible = (f64::EPSILON * scale).powi(2);
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let off = k + 1;
        let mut v: Vec<f64> = (0..m).map(|i| w[(off + i) * n + k]).collect();
        let sigma: f64 = v[1..].iter().map(|x| x * x).sum();
        let x0 = v[0];
        if sigma <= negligible {
            offdiag[k] = x0;
            reflectors.push((Vec::new(), 0.0));
            continue;
        }
        let norm = (x0 * x0 + sigma).sqrt();
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        v[0] = x0 - alpha;
        let beta = 2.0 / (v[0] * v[0] + sigma);

        // p = β A₂₂ v using the lower triangle only.
        let p = &mut p[..m];
        p.fill(0.0);
        for i in 0..m {
            let row = &w[(off + i) * n + off..(off + i) * n + off + i];
            let vi = v[i];
            let mut acc = 0.0;
            for ((pj, &aij), &vj) in p[..i].iter_mut().zip(row).zip(&v[..i]) {
                acc += aij * vj;
                *pj += aij * vi;
            }
            p[i] += acc + w[(off + i) * n + off + i] * vi;
        }
        for x in p.iter_mut() {
            *x *= beta;
        }
        let kappa = 0.5 * beta * v.iter().zip(p.iter()).map(|(a, b)| a * b).sum::<f64>();
        for (pi, vi) in p.iter_mut().zip(&v) {
            *pi -= kappa * vi;
        }
        for i in 0..m {
            let (vi, pi) = (v[i], p[i]);
            let row = &mut w[(off + i) * n + off..(off + i) * n + off + i + 1];
            for ((aij, &vj), &pj) in row.iter_mut().zip(&v[..=i]).zip(&p[..=i]) {
                *aij -= vi * pj + pi * vj;
            }
        }
        offdiag[k] = alpha;
        reflectors.push((v, beta));
    }
    if n >= 2 {
        offdiag[n - 2] = w[(n - 1) * n + n - 2];
    }
    let diag = (0..n).map(|i| w[i * n + i]).collect();
    Tridiagonal {
        diag,
        offdiag,
        reflectors,
    }
}

impl Tridiagonal {
    /// Applies `Q` to a vector expressed in the tridiagonal basis.
    pub fn back_transform(&self, y: &mut [f64]) {
        for (k, (v, beta)) in self.reflectors.iter().enumerate().rev() {
            if v.is_empty() {
                continue;
            }
            let tail = &mut y[k + 1..];
            let dot: f64 = v.iter().zip(tail.iter()).map(|(a, b)| a * b).sum();
            let s = beta * dot;
            for (t, vi) in tail.iter_mut().zip(v) {
                *t -= s * vi;
            }
        }
    }

    /// All eigenvalues by implicit-shift QL, sorted descending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.diag.len();
        let mut d = self.diag.clone();
        let mut e = vec![0.0; n];
        e[..n.saturating_sub(1)].copy_from_slice(&self.offdiag);
        let cap = 100 * n.max(1);
        let mut total = 0usize;
        // Absolute floor so pairs of (near-)zero diagonals still deflate.
        let floor = f64::EPSILON * f64::EPSILON * self.norm_bound();
        for l in 0..n {
            loop {
                let mut m = l;
                while m + 1 < n {
                    let dd = d[m].abs() + d[m + 1].abs();
                    if e[m].abs() <= f64::EPSILON * dd + floor {
                        break;
                    }
                    m += 1;
                }
                if m == l {
                    break;
                }
                total += 1;
                if total > cap {
                    return Err(Error::NoConvergence(format!(
                        "QL exceeded {cap} iterations on a {n}x{n} tridiagonal"
                    )));
                }
                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = g.hypot(1.0);
                g = d[m] - d[l] + e[l] / (g + r.copysign(g));
                let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
                let mut deflated = false;
                let mut i = m;
                while i > l {
                    i -= 1;
                    let f = s * e[i];
                    let b = c * e[i];
                    r = f.hypot(g);
                    e[i + 1] = r;
                    if r == 0.0 {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if deflated {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
        if d.iter().any(|x| !x.is_finite()) {
            return Err(Error::NoConvergence("non-finite eigenvalue".into()));
        }
        d.sort_by(|a, b| b.total_cmp(a));
        Ok(d)
    }

    fn norm_bound(&self) -> f64 {
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 {
                    self.offdiag[i - 1].abs()
                } else {
                    0.0
                };
                let right = if i + 1 < n {
                    self.offdiag[i].abs()
                } else {
                    0.0
                };
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// Solves `(T − σ I) x = b` in place by Gaussian elimination with partial
    /// pivoting; exact-zero pivots are nudged to `tiny`.
    fn shifted_solve(&self, sigma: f64, b: &mut [f64], tiny: f64) {
        let n = self.diag.len();
        if n == 1 {
            let piv = self.diag[0] - sigma;
            b[0] /= if piv == 0.0 { tiny } else { piv };
            return;
        }
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - sigma).collect();
        let dl = &self.offdiag;
        let mut du = self.offdiag.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                d[i + 1] -= fact * du[i];
                b[i + 1] -= fact * b[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                let temp = d[i + 1];
                d[i + 1] = du[i] - fact * temp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du2[i];
                }
                du[i] = temp;
                let tb = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tb - fact * b[i + 1];
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        b[n - 1] /= d[n - 1];
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        }
    }

    /// Eigenvector of `T` for the (already accurate) eigenvalue `lambda`,
    /// unit 2-norm, by `steps` rounds of inverse iteration.
    pub fn inverse_iteration(&self, lambda: f64, steps: usize) -> Vec<f64> {
        let n = self.diag.len();
        let tiny = f64::EPSILON * self.norm_bound().max(1.0);
        // Deterministic, non-degenerate start vector.
        let mut x: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i as f64) * 0.618_033_988_75).fract())
            .collect();
        normalize(&mut x);
        for _ in 0..steps {
            self.shifted_solve(lambda, &mut x, tiny);
            if !normalize(&mut x) {
                break;
            }
        }
        x
    }
}

fn normalize(x: &mut [f64]) -> bool {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

/// Sorted (descending) spectrum of `a`.
pub fn eigenvalues(a: &SymMatrix) -> Result<Vec<f64>> {
    if a.n == 0 {
        return Ok(Vec::new());
    }
    tridiagonalize(a).eigenvalues()
}

/// Eigenpair residual tolerance: `1e-10 · (1 + |λ|)`.
pub fn residual_tolerance(lambda: f64) -> f64 {
    1e-10 * (1.0 + lambda.abs())
}

/// Full spectrum plus unit eigenvectors for the largest and smallest
/// eigenvalues, each verified against `a` by residual.
pub struct ExtremePairs {
    pub values: Vec<f64>,
    pub top: Vec<f64>,
    pub bottom: Vec<f64>,
    pub residual_top: f64,
    pub residual_bottom: f64,
}

pub fn extreme_pairs(a: &SymMatrix) -> Result<ExtremePairs> {
    if a.n == 0 {
        return Err(Error::Precondition("empty matrix".into()));
    }
    let t = tridiagonalize(a);
    let values = t.eigenvalues()?;
    let scale = a.frobenius().max(1.0);
    let pair = |lambda: f64| -> Result<(Vec<f64>, f64)> {
        let tol = residual_tolerance(lambda);
        let mut best: Option<(Vec<f64>, f64)> = None;
        for steps in [2usize, 4, 8] {
            let mut y = t.inverse_iteration(lambda, steps);
            t.back_transform(&mut y);
            normalize(&mut y);
            let res = a.residual(lambda, &y);
            if res <= tol {
                return Ok((y, res));
            }
            if best.as_ref().is_none_or(|(_, r)| res < *r) {
                best = Some((y, res));
            }
        }
        let res = best.map(|b| b.1).unwrap_or(f64::NAN);
        Err(Error::NoConvergence(format!(
            "eigenvector for λ = {lambda} has residual {res:e} (tolerance {tol:e}, ‖A‖_F = {scale})"
        )))
    };
    let (top, residual_top) = pair(values[0])?;
    let (bottom, residual_bottom) = pair(values[values.len() - 1])?;
    Ok(ExtremePairs {
        values,
        top,
        bottom,
        residual_top,
        residual_bottom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Adjacency of the complete bipartite graph `K_{a,b}`.
    fn bipartite(a: usize, b: usize) -> SymMatrix {
        let mut m = SymMatrix::zeros(a + b);
        for i in a..a + b {
            for j in 0..a {
                m.set(i, j, 1.0);
            }
        }
        m
    }

    #[test]
    fn highly_degenerate_spectra() {
        for (a, b) in [(16, 29), (1, 44), (20, 20), (3, 57)] {
            let v = eigenvalues(&bipartite(a, b)).unwrap();
            let r = ((a * b) as f64).sqrt();
            assert!((v[0] - r).abs() < 1e-12);
            assert!((v[a + b - 1] + r).abs() < 1e-12);
            assert!(v[1..a + b - 1].iter().all(|x| x.abs() < 1e-12));
        }
    }

    fn from_rows(rows: &[&[f64]]) -> SymMatrix {
        let n = rows.len();
        let mut a = SymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                a.set(i, j, rows[i][j]);
            }
        }
        a
    }

    #[test]
    fn small_known_spectra() {
        let a = from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let v = eigenvalues(&a).unwrap();
        assert!((v[0] - 3.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14);
        let one = from_rows(&[&[-4.5]]);
        assert_eq!(eigenvalues(&one).unwrap(), vec![-4.5]);
        assert!(eigenvalues(&SymMatrix::zeros(0)).unwrap().is_empty());
    }

    #[test]
    fn tridiagonal_matrix_of_path_matches_cosines() {
        let n = 40;
        let mut a = SymMatrix::zeros(n);
        for i in 1..n {
            a.set(i, i - 1, 1.0);
        }
        let v = eigenvalues(&a).unwrap();
        for (k, x) in v.iter().enumerate() {
            let expect = 2.0 * (std::f64::consts::PI * (k + 1) as f64 / (n + 1) as f64).cos();
            assert!((x - expect).abs() < 1e-12, "{k}: {x} vs {expect}");
        }
    }

    #[test]
    fn dense_pseudo_random_matrix_invariants() {
        let n = 60;
        let mut a = SymMatrix::zeros(n);
        let mut s = 12345u64;
        let mut trace = 0.0;
        let mut fro2 = 0.0;
        for i in 0..n {
            for j in 0..=i {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let x = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
                a.set(i, j, x);
                if i == j {
                    trace += x;
                    fro2 += x * x;
                } else {
                    fro2 += 2.0 * x * x;
                }
            }
        }
        let pairs = extreme_pairs(&a).unwrap();
        let sum: f64 = pairs.values.iter().sum();
        let sum2: f64 = pairs.values.iter().map(|x| x * x).sum();
        assert!((sum - trace).abs() < 1e-11);
        assert!((sum2 - fro2).abs() < 1e-10);
        assert!(pairs.residual_top < 1e-12 && pairs.residual_bottom < 1e-12);
    }
}
