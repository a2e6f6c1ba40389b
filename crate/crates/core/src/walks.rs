//! Walk totals `1' A_ℓ^k 1` on the path `P_ℓ`, in exact integer arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest walk length accepted by [`fit_linear_walk_coeffs`].
pub const MAX_FIT_K: u32 = 12;

/// Number of walks of length `k` in `P_ℓ`, summed over all start vertices.
pub fn total_walks_exact(ell: u64, k: u32) -> BigUint {
    let l = ell as usize;
    let mut v = vec![BigUint::from(1u8); l];
    let mut next = vec![BigUint::zero(); l];
    for _ in 0..k {
        for j in 0..l {
            let mut s = BigUint::zero();
            if j > 0 {
                s += &v[j - 1];
            }
            if j + 1 < l {
                s += &v[j + 1];
            }
            next[j] = s;
        }
        std::mem::swap(&mut v, &mut next);
    }
    v.into_iter().sum()
}

/// Smallest `ℓ` accepted by [`total_walks_closed`] for walk length `k`.
pub fn closed_form_guard(k: u32) -> u64 {
    k as u64 + 1
}

/// Closed forms `ℓ, 2(ℓ−1), 4ℓ−6, 8(ℓ−2), 16ℓ−38, 32ℓ−88` for `k = 0..=5`.
pub fn total_walks_closed(ell: u64, k: u32) -> Result<BigUint> {
    if k > 5 {
        return Err(Error::Precondition(format!("no closed form for k = {k}")));
    }
    let guard = closed_form_guard(k);
    if ell < guard {
        return Err(Error::Precondition(format!(
            "closed form for k = {k} needs ℓ ≥ {guard}, got {ell}"
        )));
    }
    let l = ell as i128;
    let value = match k {
        0 => l,
        1 => 2 * (l - 1),
        2 => 4 * l - 6,
        3 => 8 * (l - 2),
        4 => 16 * l - 38,
        _ => 32 * l - 88,
    };
    Ok(BigUint::from(value as u128))
}

/// `1' A_ℓ^k 1 = p·ℓ + q` for every `ℓ ≥ threshold`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkCoeff {
    pub k: u32,
    pub p: i64,
    pub q: i64,
    pub threshold: u64,
}

impl WalkCoeff {
    pub fn eval(&self, ell: u64) -> i64 {
        self.p * ell as i64 + self.q
    }
}

fn signed(x: BigUint) -> BigInt {
    BigInt::from(x)
}

/// Interpolates the walk total at `ℓ = 2k+1, 2k+2`, confirms the line at
/// `ℓ = 2k+10`, and scans downward for the first `ℓ` where it stops holding.
pub fn fit_linear_walk_coeffs(k: u32) -> Result<WalkCoeff> {
    if k > MAX_FIT_K {
        return Err(Error::Precondition(format!("k = {k} exceeds {MAX_FIT_K}")));
    }
    let l1 = 2 * k as u64 + 1;
    let w1 = signed(total_walks_exact(l1, k));
    let w2 = signed(total_walks_exact(l1 + 1, k));
    let p = &w2 - &w1;
    let q = &w1 - &p * BigInt::from(l1);
    let line = |ell: u64| &p * BigInt::from(ell) + &q;

    let lv = 2 * k as u64 + 10;
    if signed(total_walks_exact(lv, k)) != line(lv) {
        return Err(Error::Series(format!(
            "walk totals for k = {k} are not linear in ℓ at ℓ = {lv}"
        )));
    }
    let mut threshold = l1;
    while threshold > 1 && signed(total_walks_exact(threshold - 1, k)) == line(threshold - 1) {
        threshold -= 1;
    }
    let small = |x: &BigInt| {
        x.to_i64()
            .ok_or_else(|| Error::Series(format!("walk coefficient {x} overflows i64")))
    };
    Ok(WalkCoeff {
        k,
        p: small(&p)?,
        q: small(&q)?,
        threshold,
    })
}

/// Fits for `k = 0..=kmax`.
pub fn walk_table(kmax: u32) -> Result<Vec<WalkCoeff>> {
    (0..=kmax).map(fit_linear_walk_coeffs).collect()
}

pub fn walk_table_csv(rows: &[WalkCoeff]) -> String {
    let mut out = String::from("k,p,q,threshold\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.k, r.p, r.q, r.threshold));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Entry sum of the `k`-th power of the path adjacency matrix.
    fn matrix_power_total(ell: usize, k: u32) -> u128 {
        let a: Vec<Vec<u128>> = (0..ell)
            .map(|i| (0..ell).map(|j| (i.abs_diff(j) == 1) as u128).collect())
            .collect();
        let mut pow: Vec<Vec<u128>> = (0..ell)
            .map(|i| (0..ell).map(|j| (i == j) as u128).collect())
            .collect();
        for _ in 0..k {
            pow = (0..ell)
                .map(|i| {
                    (0..ell)
                        .map(|j| (0..ell).map(|t| pow[i][t] * a[t][j]).sum())
                        .collect()
                })
                .collect();
        }
        pow.iter().flatten().sum()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(total_walks_exact(1, 0), BigUint::from(1u8));
        assert_eq!(total_walks_exact(12, 5), BigUint::from(296u32));
        assert_eq!(
            total_walks_exact(3, 2),
            BigUint::from(matrix_power_total(3, 2))
        );
        for ell in 1..9 {
            for k in 0..7 {
                assert_eq!(
                    total_walks_exact(ell, k),
                    BigUint::from(matrix_power_total(ell as usize, k))
                );
            }
        }
    }

    #[test]
    fn closed_examples() {
        assert_eq!(total_walks_closed(20, 4).unwrap(), BigUint::from(282u32));
        assert_eq!(total_walks_closed(2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(total_walks_closed(11, 5).unwrap(), total_walks_exact(11, 5));
        assert!(total_walks_closed(3, 5).is_err());
        assert!(total_walks_closed(30, 6).is_err());
    }

    #[test]
    fn fits() {
        let expected = [(1, 0), (2, -2), (4, -6), (8, -16), (16, -38), (32, -88)];
        for (k, (p, q)) in expected.iter().enumerate() {
            let c = fit_linear_walk_coeffs(k as u32).unwrap();
            assert_eq!((c.p, c.q), (*p, *q));
        }
        let c6 = fit_linear_walk_coeffs(6).unwrap();
        let direct = matrix_power_total(20, 6) as i64 - 64 * 20;
        assert_eq!((c6.p, c6.q), (64, direct));
        assert!(fit_linear_walk_coeffs(13).is_err());
    }

    #[test]
    fn thresholds_are_sharp() {
        for k in 0..=MAX_FIT_K {
            let c = fit_linear_walk_coeffs(k).unwrap();
            assert_eq!(c.p, 1i64 << k);
            for ell in c.threshold..c.threshold + 30 {
                assert_eq!(signed(total_walks_exact(ell, k)), BigInt::from(c.eval(ell)));
            }
            if c.threshold > 1 {
                let below = c.threshold - 1;
                assert_ne!(
                    signed(total_walks_exact(below, k)),
                    BigInt::from(c.eval(below))
                );
            }
        }
    }

    #[test]
    fn csv_layout() {
        let csv = walk_table_csv(&walk_table(2).unwrap());
        assert_eq!(csv, "k,p,q,threshold\n0,1,0,1\n1,2,-2,1\n2,4,-6,2\n");
    }
}
