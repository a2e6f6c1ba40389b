use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Polynomial in the formal parameter μ with exact rational coefficients,
/// stored densely from degree 0 with trailing zeros trimmed.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `"num/den"`, always with an explicit denominator.
pub fn rat_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rat(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n.trim().parse().ok()?, d))
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly::default()
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    /// The monomial `μ`.
    pub fn mu() -> Self {
        RatPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// Integer coefficients from degree 0 upward.
    pub fn from_ints(cs: &[i64]) -> Self {
        RatPoly::new(cs.iter().map(|&c| rat(c, 1)).collect())
    }

    /// `(numerator, denominator)` pairs from degree 0 upward.
    pub fn from_fracs(cs: &[(i64, i64)]) -> Self {
        RatPoly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The constant value, if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        RatPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(s·μ)`.
    pub fn rescale_var(&self, s: &BigRational) -> Self {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= s;
        }
        RatPoly::new(out)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Coefficients as `"num/den"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(cs: &[S]) -> Option<Self> {
        cs.iter()
            .map(|s| parse_rat(s.as_ref()))
            .collect::<Option<Vec<_>>>()
            .map(RatPoly::new)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}μ", if show_coeff { "·" } else { "" })?,
                _ => write!(f, "{}μ^{i}", if show_coeff { "·" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        RatPoly::from_strings(&v).ok_or_else(|| serde::de::Error::custom("malformed rational"))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = RatPoly::from_ints(&[1, 2]);
        let q = RatPoly::from_fracs(&[(0, 1), (0, 1), (-3, 2)]);
        assert_eq!((&p * &p), RatPoly::from_ints(&[1, 4, 4]));
        assert_eq!((&p + &q).degree(), Some(2));
        assert!((&p - &p).is_zero());
        assert_eq!(q.eval(&rat(2, 3)), rat(-2, 3));
        assert_eq!(q.rescale_var(&rat(2, 1)), RatPoly::from_ints(&[0, 0, -6]));
        assert!((p.eval_f64(0.5) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn strings_and_display() {
        let q = RatPoly::from_fracs(&[(1, 8), (3, 2), (-3, 2)]);
        assert_eq!(q.to_strings(), vec!["1/8", "3/2", "-3/2"]);
        assert_eq!(RatPoly::from_ints(&[2]).to_strings(), vec!["2/1"]);
        assert_eq!(RatPoly::from_strings(&q.to_strings()).unwrap(), q);
        assert_eq!(q.to_string(), "1/8 + 3/2·μ - 3/2·μ^2");
        assert_eq!(RatPoly::mu().to_string(), "μ");
        assert_eq!(
            serde_json::to_string(&q).unwrap(),
            r#"["1/8","3/2","-3/2"]"#
        );
        assert!(parse_rat("1/0").is_none());
    }
}
