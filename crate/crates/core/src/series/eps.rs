use num_rational::BigRational;
use num_traits::One;

use super::ratpoly::{rat, RatPoly};
use crate::error::{Error, Result};

/// Truncated Laurent series `Σ tᵢ εⁱ` with [`RatPoly`] coefficients, exact
/// for every exponent up to and including `order`.
///
/// The lowest stored exponent is always the valuation, so a leading zero is
/// never kept. The zero series has no terms and valuation `order + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsSeries {
    low: i32,
    order: i32,
    terms: Vec<RatPoly>,
}

impl EpsSeries {
    /// Series whose first coefficient belongs to `ε^low`; coefficients above
    /// `order` are dropped and missing ones are zero.
    pub fn new(low: i32, terms: Vec<RatPoly>, order: i32) -> Self {
        let mut s = EpsSeries { low, order, terms };
        s.normalize();
        s
    }

    pub fn zero(order: i32) -> Self {
        EpsSeries::new(0, Vec::new(), order)
    }

    pub fn one(order: i32) -> Self {
        EpsSeries::constant(RatPoly::one(), order)
    }

    pub fn constant(c: RatPoly, order: i32) -> Self {
        EpsSeries::new(0, vec![c], order)
    }

    /// `c·ε^exp`.
    pub fn monomial(exp: i32, c: RatPoly, order: i32) -> Self {
        EpsSeries::new(exp, vec![c], order)
    }

    /// Power series with rational coefficients from degree 0 upward.
    pub fn from_rationals(cs: &[BigRational], order: i32) -> Self {
        let terms = cs.iter().map(|c| RatPoly::constant(c.clone())).collect();
        EpsSeries::new(0, terms, order)
    }

    fn normalize(&mut self) {
        let keep = (self.order - self.low + 1).max(0) as usize;
        self.terms.truncate(keep);
        while self.terms.last().is_some_and(RatPoly::is_zero) {
            self.terms.pop();
        }
        let lead = self.terms.iter().take_while(|t| t.is_zero()).count();
        self.terms.drain(..lead);
        self.low += lead as i32;
        if self.terms.is_empty() {
            self.low = self.order + 1;
        }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Lowest exponent with a non-zero coefficient, or `order + 1`.
    pub fn valuation(&self) -> i32 {
        self.low
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `ε^i`. Panics when `i` is beyond the truncation order.
    pub fn coeff(&self, i: i32) -> RatPoly {
        assert!(
            i <= self.order,
            "coefficient ε^{i} is beyond order {}",
            self.order
        );
        if i < self.low {
            return RatPoly::zero();
        }
        self.terms
            .get((i - self.low) as usize)
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficients of `ε^from ..= ε^to`.
    pub fn coeffs(&self, from: i32, to: i32) -> Vec<RatPoly> {
        (from..=to).map(|i| self.coeff(i)).collect()
    }

    pub fn truncate(&self, order: i32) -> Self {
        EpsSeries::new(self.low, self.terms.clone(), order.min(self.order))
    }

    /// Multiplies by `ε^k`.
    pub fn shift(&self, k: i32) -> Self {
        EpsSeries::new(self.low + k, self.terms.clone(), self.order + k)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let low = self.low.min(rhs.low);
        let terms = (low..=order)
            .map(|i| &self.coeff_or_zero(i) + &rhs.coeff_or_zero(i))
            .collect();
        EpsSeries::new(low, terms, order)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        EpsSeries::new(
            self.low,
            self.terms.iter().map(|t| -t).collect(),
            self.order,
        )
    }

    pub fn scale(&self, c: &RatPoly) -> Self {
        EpsSeries::new(
            self.low,
            self.terms.iter().map(|t| t * c).collect(),
            self.order,
        )
    }

    fn coeff_or_zero(&self, i: i32) -> RatPoly {
        if i < self.low || i > self.order {
            RatPoly::zero()
        } else {
            self.terms
                .get((i - self.low) as usize)
                .cloned()
                .unwrap_or_default()
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = (self.order + rhs.low).min(rhs.order + self.low);
        let low = self.low + rhs.low;
        let len = (order - low + 1).max(0) as usize;
        let mut terms = vec![RatPoly::zero(); len];
        for (i, a) in self.terms.iter().enumerate() {
            for (j, b) in rhs.terms.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                terms[i + j] = &terms[i + j] + &(a * b);
            }
        }
        EpsSeries::new(low, terms, order)
    }

    /// Multiplicative inverse. The leading coefficient must be a non-zero
    /// constant.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Series(
                "reciprocal of a series that is zero through its order".into(),
            ));
        }
        let lead = self.terms[0].as_constant().ok_or_else(|| {
            Error::Series(format!(
                "leading coefficient {} is not constant",
                self.terms[0]
            ))
        })?;
        let inv = RatPoly::constant(BigRational::one() / lead);
        let rel = self.order - self.low;
        // u = 1 + t with t of valuation ≥ 1; 1/u = Σ (−t)^k.
        let u = self.shift(-self.low).scale(&inv);
        let minus_t = u.sub(&EpsSeries::one(rel)).neg();
        let mut acc = EpsSeries::one(rel);
        let mut pow = EpsSeries::one(rel);
        for _ in 0..rel {
            pow = pow.mul(&minus_t);
            acc = acc.add(&pow);
        }
        Ok(acc.scale(&inv).shift(-self.low))
    }

    /// `s^k` for any integer `k`; negative powers go through the reciprocal.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(EpsSeries::one(self.order - self.low));
        }
        let base = if k < 0 {
            self.reciprocal()?
        } else {
            self.clone()
        };
        let mut acc = base.clone();
        for _ in 1..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Square root by the binomial series. The series must be a power
    /// series with constant term exactly 1.
    pub fn sqrt(&self) -> Result<Self> {
        if self.order < 1 {
            return Err(Error::Series(
                "square root needs truncation order ≥ 1".into(),
            ));
        }
        if self.low != 0 || self.terms[0] != RatPoly::one() {
            return Err(Error::Series("square root needs constant term 1".into()));
        }
        let t = self.sub(&EpsSeries::one(self.order));
        let mut acc = EpsSeries::one(self.order);
        let mut pow = EpsSeries::one(self.order);
        let mut binom = BigRational::one();
        let half = rat(1, 2);
        for k in 1..=self.order {
            binom = binom * (&half - rat(k as i64 - 1, 1)) / rat(k as i64, 1);
            pow = pow.mul(&t);
            acc = acc.add(&pow.scale(&RatPoly::constant(binom.clone())));
        }
        Ok(acc)
    }

    /// Substitutes `inner` for ε in a power series. `inner` must have
    /// valuation at least 1.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.low < 0 {
            return Err(Error::Series(
                "composition needs a power series on the left".into(),
            ));
        }
        let v = inner.low;
        if v < 1 {
            return Err(Error::Series(
                "composition needs an inner series with valuation ≥ 1".into(),
            ));
        }
        let order = (v * (self.order + 1) - 1).min(inner.order);
        let mut acc = EpsSeries::zero(order);
        let mut pow = EpsSeries::one(order);
        for i in 0..=self.order {
            if i > 0 {
                pow = pow.mul(inner).truncate(order);
            }
            if pow.low > order {
                break;
            }
            let c = self.coeff(i);
            if !c.is_zero() {
                acc = acc.add(&pow.scale(&c));
            }
        }
        Ok(acc)
    }

    /// `s(−ε)`.
    pub fn flip(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if (self.low + i as i32).rem_euclid(2) == 1 {
                    -t
                } else {
                    t.clone()
                }
            })
            .collect();
        EpsSeries::new(self.low, terms, self.order)
    }

    /// Every coefficient through the order is the zero polynomial.
    pub fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl Default for EpsSeries {
    fn default() -> Self {
        EpsSeries::zero(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(c: BigRational, order: i32) -> EpsSeries {
        let cs: Vec<BigRational> = (0..=order).map(|_| c.clone()).collect();
        EpsSeries::from_rationals(&cs, order)
    }

    fn rats(cs: &[(i64, i64)]) -> Vec<BigRational> {
        cs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn sqrt_binomial() {
        let s = EpsSeries::from_rationals(&rats(&[(1, 1), (-1, 1)]), 4);
        let r = s.sqrt().unwrap();
        let want =
            EpsSeries::from_rationals(&rats(&[(1, 1), (-1, 2), (-1, 8), (-1, 16), (-5, 128)]), 4);
        assert_eq!(r, want);
        assert_eq!(r.mul(&r), s);
        assert_eq!(EpsSeries::one(5).sqrt().unwrap(), EpsSeries::one(5));
        assert!(EpsSeries::from_rationals(&rats(&[(4, 1)]), 3)
            .sqrt()
            .is_err());
    }

    #[test]
    fn sqrt_of_cubed_argument() {
        // √(1 − x³) is √(1 − y) with y = x³.
        let base = EpsSeries::from_rationals(&rats(&[(1, 1), (-1, 1)]), 3)
            .sqrt()
            .unwrap();
        let cube = EpsSeries::monomial(3, RatPoly::one(), 9);
        let via_compose = base.compose(&cube).unwrap().truncate(9);
        let direct = EpsSeries::from_rationals(&rats(&[(1, 1), (0, 1), (0, 1), (-1, 1)]), 9)
            .sqrt()
            .unwrap();
        assert_eq!(via_compose.coeffs(0, 9), direct.coeffs(0, 9));
        assert_eq!(direct.coeff(3), RatPoly::constant(rat(-1, 2)));
        assert_eq!(direct.coeff(6), RatPoly::constant(rat(-1, 8)));
        let sq = direct.mul(&direct);
        assert_eq!(
            sq.coeffs(0, 9),
            EpsSeries::from_rationals(&rats(&[(1, 1), (0, 1), (0, 1), (-1, 1)]), 9).coeffs(0, 9)
        );
    }

    #[test]
    fn reciprocal_laurent() {
        // (2ε^{-1} + 2)^{-1} = ε/2 · (1 − ε + ε² − …)
        let s = EpsSeries::new(
            -1,
            vec![RatPoly::from_ints(&[2]), RatPoly::from_ints(&[2])],
            4,
        );
        let r = s.reciprocal().unwrap();
        assert_eq!(r.valuation(), 1);
        assert_eq!(r.coeff(1), RatPoly::constant(rat(1, 2)));
        assert_eq!(r.coeff(2), RatPoly::constant(rat(-1, 2)));
        let prod = s.mul(&r);
        assert_eq!(prod, EpsSeries::one(prod.order()));
        assert!(EpsSeries::new(0, vec![RatPoly::mu()], 3)
            .reciprocal()
            .is_err());
    }

    #[test]
    fn powers_and_flip() {
        let g = geometric(rat(1, 1), 6);
        let inv = g.pow(-1).unwrap();
        assert_eq!(
            inv.coeffs(0, 6),
            EpsSeries::from_rationals(&rats(&[(1, 1), (-1, 1)]), 6).coeffs(0, 6)
        );
        assert_eq!(g.pow(0).unwrap(), EpsSeries::one(6));
        assert_eq!(g.pow(2).unwrap().coeff(3), RatPoly::from_ints(&[4]));
        assert_eq!(g.flip().coeff(3), RatPoly::from_ints(&[-1]));
        assert_eq!(g.flip().flip(), g);
    }

    #[test]
    fn mul_tracks_order() {
        let a = EpsSeries::new(-2, vec![RatPoly::one()], 3);
        let b = EpsSeries::one(3);
        assert_eq!(a.mul(&b).order(), 1);
        assert!(a.sub(&a).vanishes());
    }
}
