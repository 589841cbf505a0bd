//! Real scalar abstraction underlying all complex matrix arithmetic.
//!
//! Every computation in this crate is complex linear algebra over a real
//! floating-point type. The math itself does not care whether that type is
//! `f32` or `f64`, so the whole core is generic over [`Scalar`]; the crate
//! root exposes `f64` aliases for ordinary use. Tolerance-sensitive checks
//! (the default residual budgets are around 1e-9) only make sense at `f64`.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + Default
    + serde::Serialize
    + serde::de::DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Conversion from an `f64` constant (π-sized quantities, tolerances).
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant converts to scalar")
    }

    /// Lossy view as `f64`, for diagnostics and serialized reports.
    fn lossy_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over the scalar `S`.
pub type Cx<S> = Complex<S>;

/// Complex constant from `f64` parts.
pub fn cx<S: Scalar>(re: f64, im: f64) -> Cx<S> {
    Complex::new(S::real(re), S::real(im))
}

/// Purely imaginary unit.
pub fn i<S: Scalar>() -> Cx<S> {
    Complex::new(S::zero(), S::one())
}

/// Numeric thresholds used throughout the crate.
///
/// `base` is the general residual budget for identities that are exact in
/// principle (default 1e-9, configurable). The remaining fields are the
/// fixed cutoffs of the solvers and classifiers: a scale-relative
/// singular-value cutoff for rank decisions, the ad-eigenvalue zero
/// threshold (true eigenvalues are multiples of π/n, so anything below
/// 1e-6 is zero), the absolute residual for "certified" membership
/// verdicts, and the floor above which a value counts as nonzero.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct Tolerances<S> {
    pub base: S,
    pub sv_cutoff: S,
    pub eig_zero: S,
    pub certify: S,
    pub nonzero: S,
}

impl<S: Scalar> Default for Tolerances<S> {
    fn default() -> Self {
        Tolerances {
            base: S::real(1e-9),
            sv_cutoff: S::real(1e-8),
            eig_zero: S::real(1e-6),
            certify: S::real(1e-8),
            nonzero: S::real(1e-6),
        }
    }
}

impl<S: Scalar> Tolerances<S> {
    /// Default thresholds with an overridden base residual budget.
    pub fn with_base(base: S) -> Self {
        Tolerances {
            base,
            ..Self::default()
        }
    }
}
