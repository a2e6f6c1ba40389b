//! Extremal adjacency spread of outerplanar and planar graphs.
//!
//! The crate bundles a dense symmetric eigensolver, graph constructors with a
//! forbidden-minor classifier, exact walk counts on paths, an exact-rational
//! Laurent series engine for the extreme eigenvalues of linear families, and
//! the scans, experiments and exhaustive searches built on top of them.

pub mod eigen;
pub mod error;
pub mod families;
pub mod graph;
pub mod minor;
pub mod report;
pub mod search;
pub mod series;
pub mod spectra;
pub mod verify;
pub mod walks;

pub use error::{Error, Result};
pub use families::{build_family, FamilyKind, FamilySpec, SpreadScanReport};
pub use graph::{disjoint_union, join, BasicKind, Graph, LinearForestSpec};
pub use minor::{classify, has_minor, Classification, MinorPattern, PatternName};
pub use search::{exhaustive_max_spread, GraphClass};
pub use series::{ACoeffList, EpsSeries, RatPoly, SeriesFamily};
pub use spectra::{eigenvalues_sym, spectrum, spread, EigenReport, Extreme, RegularJoinInput};
pub use verify::{verify_suite, VerificationReport};
