use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use super::eps::EpsSeries;
use super::ratpoly::{rat, RatPoly};
use super::solve::ACoeffList;
use crate::error::{Error, Result};

/// Coefficients `d₁ … dₖ` of the inverse `x = Σ dᵢ zⁱ` of `z = x/φ(x)`, from
/// `dₙ = (1/n)[x^{n−1}] φ(x)ⁿ`. The series variable of `phi` is `x`.
pub fn lagrange_burmann_inverse(phi: &EpsSeries, k: usize) -> Result<Vec<RatPoly>> {
    if phi.valuation() != 0 || phi.coeff(0) != RatPoly::one() {
        return Err(Error::Series("φ must have constant term 1".into()));
    }
    let need = k as i32 - 1;
    if phi.order() < need {
        return Err(Error::Series(format!(
            "φ is known through x^{} but d_{k} needs x^{need}",
            phi.order()
        )));
    }
    let phi = phi.truncate(need);
    let mut pow = EpsSeries::one(need);
    let mut out = Vec::with_capacity(k);
    for n in 1..=k {
        pow = pow.mul(&phi);
        out.push(pow.coeff(n as i32 - 1).scale(&rat(1, n as i64)));
    }
    Ok(out)
}

/// Series in `x` whose coefficients are Laurent polynomials in ε, keyed by
/// `(x-exponent, ε-exponent)` and truncated to total weight `b + a ≤ cap`.
#[derive(Clone)]
struct Bivariate {
    cap: i32,
    terms: BTreeMap<(i32, i32), RatPoly>,
}

impl Bivariate {
    fn one(cap: i32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), RatPoly::one());
        Bivariate { cap, terms }
    }

    fn zero(cap: i32) -> Self {
        Bivariate {
            cap,
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, b: i32, a: i32, c: RatPoly) {
        if b + a > self.cap || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((b, a)).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&(b, a));
        }
    }

    fn add(&self, rhs: &Self, scale: &BigRational) -> Self {
        let mut out = self.clone();
        for (&(b, a), c) in &rhs.terms {
            out.add_term(b, a, c.scale(scale));
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Bivariate::zero(self.cap);
        for (&(b1, a1), c1) in &self.terms {
            for (&(b2, a2), c2) in &rhs.terms {
                out.add_term(b1 + b2, a1 + a2, c1 * c2);
            }
        }
        out
    }

    /// `√(1 − s)` by the binomial series; `s` must have positive weight.
    fn sqrt_one_minus(s: &Self) -> Self {
        let cap = s.cap;
        let minus_s = Bivariate::zero(cap).add(s, &rat(-1, 1));
        let mut acc = Bivariate::one(cap);
        let mut pow = Bivariate::one(cap);
        let mut binom = BigRational::one();
        let half = rat(1, 2);
        for k in 1..=cap.max(0) {
            binom = binom * (&half - rat(k as i64 - 1, 1)) / rat(k as i64, 1);
            pow = pow.mul(&minus_s);
            acc = acc.add(&pow, &binom);
        }
        acc
    }

    /// Coefficient of `x^b` as a Laurent series in ε.
    fn x_coeff(&self, b: i32) -> Vec<(i32, RatPoly)> {
        self.terms
            .range((b, i32::MIN)..=(b, i32::MAX))
            .map(|(&(_, a), c)| (a, c.clone()))
            .collect()
    }
}

/// The same expansion as [`super::solve_lambda_series`], obtained instead by
/// inverting `ε = x/φ(x)` with `x = 1/λ` and
/// `φ(x) = √(1 − κx − Σ aᵢ x^{i+2})`, then taking `λ = 1/x`.
pub fn solve_lambda_series_lagrange(a: &ACoeffList, k: usize) -> Result<Vec<RatPoly>> {
    if k == 0 || a.entries.len() < k {
        return Err(Error::Series(format!(
            "order {k} needs a_1..a_{k}; {} supplied",
            a.entries.len()
        )));
    }
    let cap = k as i32;
    let mut s = Bivariate::zero(cap);
    if a.lambda_coeff != 0 {
        s.add_term(1, 0, RatPoly::from_ints(&[a.lambda_coeff]));
    }
    for (i, &(p, q)) in a.entries.iter().enumerate().take(k) {
        let b = i as i32 + 3;
        // aᵢ = pᵢ·μ·ε⁻² + qᵢ
        s.add_term(b, -2, RatPoly::mu().scale(&rat(p, 1)));
        s.add_term(b, 0, RatPoly::from_ints(&[q]));
    }
    let phi = Bivariate::sqrt_one_minus(&s);

    // dₙ εⁿ contributes at ε^{n+a} with weight n−1+a ≤ k, so x/ε is exact
    // through ε^k. Every term of φ has weight ≥ b/3, hence n ≤ 3k+1.
    let mut x_over_eps = EpsSeries::zero(cap);
    let mut pow = Bivariate::one(cap);
    for n in 1..=(3 * k + 1) {
        pow = pow.mul(&phi);
        let inv_n = rat(1, n as i64);
        for (e, c) in pow.x_coeff(n as i32 - 1) {
            let exp = e + n as i32 - 1;
            x_over_eps = x_over_eps.add(&EpsSeries::monomial(exp, c.scale(&inv_n), cap));
        }
    }
    let l = x_over_eps.reciprocal()?;
    Ok((1..=cap).map(|i| l.coeff(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{solve_lambda_series, SeriesFamily};

    #[test]
    fn identity_inversion() {
        let d = lagrange_burmann_inverse(&EpsSeries::one(5), 5).unwrap();
        assert_eq!(d[0], RatPoly::one());
        assert!(d[1..].iter().all(RatPoly::is_zero));
    }

    #[test]
    fn catalan_numbers() {
        let cs: Vec<_> = (0..8).map(|_| rat(1, 1)).collect();
        let phi = EpsSeries::from_rationals(&cs, 7);
        let d = lagrange_burmann_inverse(&phi, 5).unwrap();
        let want: Vec<_> = [1, 1, 2, 5, 14]
            .iter()
            .map(|&c| RatPoly::from_ints(&[c]))
            .collect();
        assert_eq!(d, want);
    }

    #[test]
    fn catalan_against_iterative_reversion() {
        // Reversion of z = x − x² by fixed-point iteration x ← z + x².
        let order = 9;
        let z = EpsSeries::monomial(1, RatPoly::one(), order);
        let mut x = z.clone();
        for _ in 0..order {
            x = z.add(&x.mul(&x).truncate(order));
        }
        let cs: Vec<_> = (0..=order).map(|_| rat(1, 1)).collect();
        let d = lagrange_burmann_inverse(&EpsSeries::from_rationals(&cs, order), order as usize)
            .unwrap();
        for (i, di) in d.iter().enumerate() {
            assert_eq!(*di, x.coeff(i as i32 + 1));
        }
    }

    #[test]
    fn insufficient_order_is_rejected() {
        let phi = EpsSeries::from_rationals(&[rat(1, 1), rat(1, 1)], 1);
        assert!(lagrange_burmann_inverse(&phi, 4).is_err());
        assert!(lagrange_burmann_inverse(&EpsSeries::from_rationals(&[rat(2, 1)], 4), 2).is_err());
    }

    #[test]
    fn agrees_with_order_matching() {
        for fam in SeriesFamily::ALL {
            let a = fam.a_list(7).unwrap();
            assert_eq!(
                solve_lambda_series_lagrange(&a, 7).unwrap(),
                solve_lambda_series(&a, 7).unwrap(),
                "{}",
                fam.name()
            );
        }
    }
}
