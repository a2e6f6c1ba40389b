use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::ratpoly::RatPoly;
use super::solve::{solve_lambda_series, SeriesFamily};
use crate::error::Result;

/// Published expansion coefficients, each a polynomial in the published
/// variable: `(ℓ−1)/(n−1)` for the outerplanar family and `(ℓ−2)/(n−2)` for
/// both planar kinds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedTables {
    pub outerplanar: Vec<RatPoly>,
    pub planar_first: Vec<RatPoly>,
    /// Only `c''₂` is published for the second kind.
    pub planar_second_c2: RatPoly,
}

impl PrintedTables {
    /// Published `c₁, c₂, …` for `family`, `None` where nothing is printed.
    pub fn printed(&self, family: SeriesFamily) -> Vec<Option<RatPoly>> {
        match family {
            SeriesFamily::Outerplanar => self.outerplanar.iter().cloned().map(Some).collect(),
            SeriesFamily::PlanarFirst => self.planar_first.iter().cloned().map(Some).collect(),
            SeriesFamily::PlanarSecond => vec![None, Some(self.planar_second_c2.clone())],
        }
    }
}

pub fn published_coefficient_tables() -> PrintedTables {
    let f = RatPoly::from_fracs;
    PrintedTables {
        outerplanar: vec![
            f(&[(0, 1), (1, 1)]),
            f(&[(0, 1), (2, 1), (-3, 2)]),
            f(&[(0, 1), (4, 1), (-8, 1), (4, 1)]),
            f(&[(-1, 1), (8, 1), (-30, 1), (35, 1), (-105, 8)]),
            f(&[(-4, 1), (20, 1), (-96, 1), (192, 1), (-160, 1), (48, 1)]),
            f(&[
                (-11, 1),
                (62, 1),
                (-595, 2),
                (840, 1),
                (-1155, 1),
                (3003, 4),
                (-3003, 16),
            ]),
        ],
        planar_first: vec![
            f(&[(0, 1), (1, 1)]),
            f(&[(0, 1), (2, 1), (-3, 2)]),
            f(&[(2, 1), (4, 1), (-8, 1), (4, 1)]),
            f(&[(2, 1), (2, 1), (-30, 1), (35, 1), (-105, 8)]),
            f(&[(0, 1), (-8, 1), (-72, 1), (192, 1), (-160, 1), (48, 1)]),
            f(&[
                (-12, 1),
                (-28, 1),
                (-105, 1),
                (735, 1),
                (-1155, 1),
                (3003, 4),
                (-3003, 16),
            ]),
        ],
        planar_second_c2: f(&[(1, 8), (3, 2), (-3, 2)]),
    }
}

/// Derived engine coefficients rewritten in the published variable.
pub fn derived_in_printed_variable(family: SeriesFamily, order: usize) -> Result<Vec<RatPoly>> {
    let c = solve_lambda_series(&family.a_list(order)?, order)?;
    let inv = BigRational::one() / family.printed_scale();
    Ok(c.iter().map(|ci| ci.rescale_var(&inv)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub index: usize,
    pub derived: RatPoly,
    pub printed: Option<RatPoly>,
    pub matches: Option<bool>,
    /// `derived − printed`, when something is printed.
    pub difference: Option<RatPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffComparison {
    pub family: SeriesFamily,
    pub order: usize,
    pub variable: String,
    pub rows: Vec<CoeffRow>,
}

impl CoeffComparison {
    /// Every printed coefficient with index in `1..=upto` matches.
    pub fn exact_match(&self, upto: usize) -> bool {
        self.rows
            .iter()
            .filter(|r| r.index <= upto)
            .all(|r| r.matches != Some(false))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison serializes")
    }
}

pub fn printed_variable(family: SeriesFamily) -> &'static str {
    match family {
        SeriesFamily::Outerplanar => "(l-1)/(n-1)",
        _ => "(l-2)/(n-2)",
    }
}

/// Derived `c₁ … c_order` against the published tables.
pub fn compare_coefficients(family: SeriesFamily, order: usize) -> Result<CoeffComparison> {
    let derived = derived_in_printed_variable(family, order)?;
    let printed = published_coefficient_tables().printed(family);
    let rows = derived
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let p = printed.get(i).cloned().flatten();
            let difference = p.as_ref().map(|p| &d - p);
            CoeffRow {
                index: i + 1,
                matches: difference.as_ref().map(RatPoly::is_zero),
                derived: d,
                printed: p,
                difference,
            }
        })
        .collect();
    Ok(CoeffComparison {
        family,
        order,
        variable: printed_variable(family).into(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixthCoefficient {
    pub family: SeriesFamily,
    pub derived: RatPoly,
    pub printed: RatPoly,
    pub matches: bool,
    pub difference: RatPoly,
    /// `c₆` re-derived with the leading part of `a₆` dropped.
    pub derived_without_a6_lead: RatPoly,
    pub matches_without_a6_lead: bool,
}

/// Sixth coefficient of both one-parameter families, derived with the full
/// `a₆` from the walk fits and also with its leading part removed.
pub fn sixth_coefficient_report() -> Result<Vec<SixthCoefficient>> {
    let tables = published_coefficient_tables();
    [SeriesFamily::Outerplanar, SeriesFamily::PlanarFirst]
        .into_iter()
        .map(|family| {
            let printed = tables.printed(family)[5].clone().expect("c6 is printed");
            let derived = derived_in_printed_variable(family, 6)?[5].clone();
            let mut a = family.a_list(6)?;
            a.entries[5].0 = 0;
            let inv = BigRational::one() / family.printed_scale();
            let truncated = solve_lambda_series(&a, 6)?[5].rescale_var(&inv);
            let difference = &derived - &printed;
            Ok(SixthCoefficient {
                family,
                matches: difference.is_zero(),
                matches_without_a6_lead: truncated == printed,
                derived,
                printed,
                difference,
                derived_without_a6_lead: truncated,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratpoly::rat;

    #[test]
    fn transcriptions() {
        let t = published_coefficient_tables();
        assert_eq!(
            t.outerplanar[1],
            RatPoly::from_fracs(&[(0, 1), (2, 1), (-3, 2)])
        );
        assert_eq!(t.planar_first[3].coeff(4), rat(-105, 8));
        assert_eq!(t.outerplanar[5].coeff(5), rat(3003, 4));
        assert_eq!(t.outerplanar[5].coeff(6), rat(-3003, 16));
        // c''₂ is a downward parabola with vertex (1/2, 1/2).
        assert_eq!(t.planar_second_c2.eval(&rat(1, 2)), rat(1, 2));
        assert!(t.planar_second_c2.eval(&rat(2, 5)) < rat(1, 2));
    }

    #[test]
    fn low_order_coefficients_match() {
        for fam in SeriesFamily::ALL {
            let cmp = compare_coefficients(fam, 5).unwrap();
            assert!(cmp.exact_match(5), "{}", cmp.to_json());
        }
    }

    #[test]
    fn sixth_coefficient_includes_a6() {
        let rep = sixth_coefficient_report().unwrap();
        assert_eq!(rep.len(), 2);
        for r in &rep {
            assert!(r.matches);
            assert!(!r.matches_without_a6_lead);
        }
    }
}
