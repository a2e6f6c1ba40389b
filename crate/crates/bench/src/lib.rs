//! Shared fixtures for the criterion benches.

use spread_core::{build_family, FamilyKind, Graph};

/// The outerplanar family member at the predicted peak.
pub fn peak_outerplanar(n: usize) -> Graph {
    let ell = FamilyKind::OuterplanarLinear.predicted_ell0(n);
    build_family(FamilyKind::OuterplanarLinear, n, ell).expect("n ≥ 4")
}
