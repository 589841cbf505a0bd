//! Classical symmetric flag spaces, their cotangent bundles realized as
//! adjoint orbits, and numerical certification of the structure that comes
//! with that realization: symmetric-space decompositions, the dual
//! submanifold S and its fiber intersections, Lagrangian and KKS symplectic
//! behavior, geodesic projections, and the curvature obstruction for
//! connection metrics.
//!
//! The core is generic over the real scalar via [`scalar::Scalar`]; the
//! aliases at the crate root fix `f64`, which is what the default 1e-9
//! tolerances are calibrated for.

pub mod dynamics;
pub mod error;
pub mod flag;
pub mod killing;
pub mod linalg;
pub mod matrix;
pub mod orbit;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod subspace;
pub mod symplectic;
pub mod toy;
pub mod weyl;

pub use dynamics::{curvature_tensor, geodesic_point, project_geodesic, sectional_curvature, tsw_violation_scan, CurvatureSpace, GeodesicClass};
pub use error::{Error, Result};
pub use flag::{characteristic_element, d_case_conjugation, ConjugationDirection, FlagDatum, FlagParams};
pub use matrix::{bracket, SquareMatrix};
pub use orbit::{canonical_decomposition, classify_fiber, fiber_intersection_origin, sample_s, transversality_check, CanonicalDecomposition, FiberVerdict, OrbitPoint};
pub use report::{run_verification, CheckResult, CheckStatus, RunConfig, Suite, VerificationReport};
pub use roots::{build_root_system, Family, RootFunctional, RootSystem};
pub use scalar::{Cx, Scalar, Tolerances};
pub use subspace::{Membership, RealSubspace};
pub use symplectic::{kks_nonlagrangian_witness, lagrangian_report, CompactConjugation, SymplecticForms};
pub use toy::{emit_toy_figures, sl2_fiber_meets_hyperbola, su2_fiber_meets_s, ToyModel, ToyPoint3D};
pub use weyl::{compact_real_form, weyl_basis, CompactForm, WeylBasis};

/// Complex scalar at the default precision.
pub type C64 = num_complex::Complex<f64>;
/// Dense complex matrix at the default precision.
pub type Matrix64 = SquareMatrix<f64>;
/// Real subspace at the default precision.
pub type Subspace64 = RealSubspace<f64>;
/// Thresholds at the default precision.
pub type Tolerances64 = Tolerances<f64>;
/// Flag datum at the default precision.
pub type FlagDatum64 = FlagDatum<f64>;
/// Canonical decomposition at the default precision.
pub type CanonicalDecomposition64 = CanonicalDecomposition<f64>;
