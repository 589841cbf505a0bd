//! Geodesics of the orbit and the flag, symmetric-space curvature, the
//! bundle metric g, and the search for violations of the
//! Tapp–Strake–Walschap inequality.
//!
//! Geodesics through the zero section are the curves Ad(u e^{tX}) H_Θ for
//! X ∈ m_G = m ⊕ n⁺. Splitting X = X_m + X_f, the projection to the flag
//! is the one-parameter orbit of X_m when X_f = 0 or when the parts
//! commute, and is constant when X_m = 0 (the curve stays in its fiber).
//!
//! At the origin the canonical-connection curvature is
//! R(X, Y)Z = -[[X, Y], Z]; sectional curvature is nonnegative on m with
//! the -K metric, nonpositive on √-1 m with the +K metric, and the two are
//! negatives of each other under X ↦ √-1 X. The scan for the inequality
//!
//!   R_g(X, Y, √-1 Z, √-1 W)² ≤ 4 sec(X, Y) sec(√-1 Z, √-1 W)
//!
//! looks for quadruples with a nonzero left side; the right side is never
//! positive, so any such quadruple is a violation.

use crate::error::{Error, Result};
use crate::flag::FlagDatum;
use crate::matrix::{comm, SquareMatrix};
use crate::orbit::{CanonicalDecomposition, OrbitPoint};
use crate::scalar::Scalar;
use rand::SeedableRng;

/// Which tangent space a curvature computation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureSpace {
    /// m with the -K metric (compact type).
    M,
    /// √-1 m with the +K metric (noncompact type).
    SqrtM,
}

/// Geodesic through Ad(g0) H_Θ with direction X, where g0 = u e^{Z}.
pub fn geodesic_point<S: Scalar>(
    fd: &FlagDatum<S>,
    u0: &SquareMatrix<S>,
    z0: &SquareMatrix<S>,
    x: &SquareMatrix<S>,
    t: S,
) -> Result<OrbitPoint<S>> {
    let g = u0.mul(&z0.exp()?).mul(&x.scale_re(t).exp()?);
    let value = fd.ad_group(&g, &fd.h_theta)?;
    Ok(OrbitPoint {
        value,
        s_generator: None,
        fiber_witness: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeodesicClass {
    /// X ∈ m: the curve is horizontal, its projection a flag geodesic.
    Horizontal,
    /// X ∈ n⁺: the curve stays in its fiber; the projection is constant.
    Vertical,
    /// X = X_m + X_f with [X_m, X_f] = 0: projection is the X_m orbit.
    MixedCommuting,
}

/// A geodesic through the zero-section point Ad(u0) H_Θ together with its
/// classified projection to the flag.
pub struct GeodesicProjection<S: Scalar> {
    pub class: GeodesicClass,
    pub x_m: SquareMatrix<S>,
    pub x_f: SquareMatrix<S>,
}

/// Split X ∈ m_G into X_m + X_f and classify the projection behavior.
/// Mixed directions with non-commuting parts are unsupported and reported
/// as an error rather than guessed.
pub fn project_geodesic<S: Scalar>(
    fd: &FlagDatum<S>,
    cd: &CanonicalDecomposition<S>,
    x: &SquareMatrix<S>,
) -> Result<GeodesicProjection<S>> {
    let tol = fd.tol;
    // coordinates over m ⊕ n⁺ (a real basis of m_G)
    let mut basis: Vec<SquareMatrix<S>> = cd.m.basis().to_vec();
    let m_count = basis.len();
    basis.extend(fd.n_plus.basis().iter().cloned());
    let span = crate::subspace::RealSubspace::new(basis, tol.sv_cutoff)?;
    let mem = span.membership(x, tol.certify);
    if !mem.member {
        return Err(Error::MembershipViolation {
            what: "geodesic direction outside m_G",
            residual: mem.residual.lossy_f64(),
        });
    }
    let x_m = cd.m.from_coefficients(&mem.coefficients[..m_count]);
    let x_f = fd.n_plus.from_coefficients(&mem.coefficients[m_count..]);
    let class = if x_f.frob_norm() < tol.certify {
        GeodesicClass::Horizontal
    } else if x_m.frob_norm() < tol.certify {
        GeodesicClass::Vertical
    } else {
        let c = comm(&x_m, &x_f).max_abs();
        if c < tol.certify {
            GeodesicClass::MixedCommuting
        } else {
            return Err(Error::UnsupportedGeodesic {
                norm: c.lossy_f64(),
            });
        }
    };
    Ok(GeodesicProjection { class, x_m, x_f })
}

/// Residuals of the projection claim at one parameter value: the curve
/// point must lie in the fiber over Ad(u0 e^{tX_m}) H_Θ.
pub fn projection_residual_at<S: Scalar>(
    fd: &FlagDatum<S>,
    proj: &GeodesicProjection<S>,
    u0: &SquareMatrix<S>,
    x: &SquareMatrix<S>,
    t: S,
) -> Result<S> {
    let curve = geodesic_point(fd, u0, &SquareMatrix::zeros(fd.matrix_dim()), x, t)?;
    let flag_elem = u0.mul(&proj.x_m.scale_re(t).exp()?);
    let pulled = fd.ad_group(&flag_elem.inverse()?, &curve.value)?;
    let mem = fd.n_plus.membership(&pulled.sub(&fd.h_theta), fd.tol.certify);
    Ok(mem.residual)
}

/// Canonical-connection curvature at the origin: R(X, Y)Z = -[[X, Y], Z].
/// All three generators must lie in the declared space, and the output
/// lands back in it.
pub fn curvature_tensor<S: Scalar>(
    cd: &CanonicalDecomposition<S>,
    space: CurvatureSpace,
    x: &SquareMatrix<S>,
    y: &SquareMatrix<S>,
    z: &SquareMatrix<S>,
    tol: S,
) -> Result<SquareMatrix<S>> {
    let sub = match space {
        CurvatureSpace::M => &cd.m,
        CurvatureSpace::SqrtM => &cd.sqrt_m,
    };
    for (what, v) in [("X", x), ("Y", y), ("Z", z)] {
        let mem = sub.membership(v, tol);
        if !mem.member {
            return Err(Error::MembershipViolation {
                what: match what {
                    "X" => "curvature argument X",
                    "Y" => "curvature argument Y",
                    _ => "curvature argument Z",
                },
                residual: mem.residual.lossy_f64(),
            });
        }
    }
    let r = comm(&comm(x, y), z).neg();
    let mem = sub.membership(&r, tol);
    if !mem.member {
        return Err(Error::MembershipViolation {
            what: "curvature output left the space",
            residual: mem.residual.lossy_f64(),
        });
    }
    Ok(r)
}

/// Sectional curvature ⟨R(X,Y)Y, X⟩ / (|X|²|Y|² - ⟨X,Y⟩²) with
/// ⟨·,·⟩ = -K on m and +K on √-1 m.
pub fn sectional_curvature<S: Scalar>(
    fd: &FlagDatum<S>,
    cd: &CanonicalDecomposition<S>,
    space: CurvatureSpace,
    x: &SquareMatrix<S>,
    y: &SquareMatrix<S>,
) -> Result<S> {
    let k = fd.killing();
    let sign = match space {
        CurvatureSpace::M => -S::one(),
        CurvatureSpace::SqrtM => S::one(),
    };
    let ip = |a: &SquareMatrix<S>, b: &SquareMatrix<S>| sign * k.pairing(a, b).re;
    let denom = ip(x, x) * ip(y, y) - ip(x, y) * ip(x, y);
    if denom < fd.tol.nonzero {
        return Err(Error::SingularSystem("degenerate curvature plane"));
    }
    let r = curvature_tensor(cd, space, x, y, y, fd.tol.certify)?;
    Ok(ip(&r, x) / denom)
}

/// The submersion metric g on m ⊕ √-1 m:
/// g(X + √-1 Z, Y + √-1 W) = -K(X, Y) + K(√-1 Z, √-1 W).
/// Splitting coordinates are factored once at construction.
pub struct BundleMetric<'a, S: Scalar> {
    fd: &'a FlagDatum<S>,
    cd: &'a CanonicalDecomposition<S>,
    span: crate::subspace::RealSubspace<S>,
    m_count: usize,
}

impl<'a, S: Scalar> BundleMetric<'a, S> {
    pub fn new(fd: &'a FlagDatum<S>, cd: &'a CanonicalDecomposition<S>) -> Result<Self> {
        let mut basis: Vec<SquareMatrix<S>> = cd.m.basis().to_vec();
        let m_count = basis.len();
        basis.extend(cd.sqrt_m.basis().iter().cloned());
        let span = crate::subspace::RealSubspace::new(basis, fd.tol.sv_cutoff)?;
        Ok(BundleMetric {
            fd,
            cd,
            span,
            m_count,
        })
    }

    fn split(&self, v: &SquareMatrix<S>) -> Result<(SquareMatrix<S>, SquareMatrix<S>)> {
        let mem = self.span.membership(v, self.fd.tol.certify);
        if !mem.member {
            return Err(Error::MembershipViolation {
                what: "bundle metric argument outside m + sqrt(-1) m",
                residual: mem.residual.lossy_f64(),
            });
        }
        Ok((
            self.cd.m.from_coefficients(&mem.coefficients[..self.m_count]),
            self.cd
                .sqrt_m
                .from_coefficients(&mem.coefficients[self.m_count..]),
        ))
    }

    pub fn pairing(&self, a: &SquareMatrix<S>, b: &SquareMatrix<S>) -> Result<S> {
        let k = self.fd.killing();
        let (ax, az) = self.split(a)?;
        let (bx, bz) = self.split(b)?;
        Ok(-k.pairing(&ax, &bx).re + k.pairing(&az, &bz).re)
    }
}

/// One-shot evaluation of the bundle metric.
pub fn bundle_metric<S: Scalar>(
    fd: &FlagDatum<S>,
    cd: &CanonicalDecomposition<S>,
    a: &SquareMatrix<S>,
    b: &SquareMatrix<S>,
) -> Result<S> {
    BundleMetric::new(fd, cd)?.pairing(a, b)
}

/// A quadruple violating the Tapp–Strake–Walschap inequality.
#[derive(Debug, Clone)]
pub struct TswWitness<S: Scalar> {
    pub x: SquareMatrix<S>,
    pub y: SquareMatrix<S>,
    pub z: SquareMatrix<S>,
    pub w: SquareMatrix<S>,
    /// R_g(X, Y, √-1 Z, √-1 W) = K([[X, Y], Z], W).
    pub mixed_term: S,
    pub rhs: S,
    /// Index of the quadruple in the deterministic search order.
    pub sample_index: usize,
}

#[derive(Debug, Clone)]
pub struct TswScan<S: Scalar> {
    pub witness: Option<TswWitness<S>>,
    pub tried: usize,
}

/// Search for a TSW violation: seeded random quadruples in m⁴ first, then
/// the deterministic sweep of basis quadruples (X, Y, X, Y). A witness
/// needs mixed_term² > 0 with rhs ≤ -margin; the first hit in the search
/// order is returned.
pub fn tsw_violation_scan<S: Scalar>(
    fd: &FlagDatum<S>,
    cd: &CanonicalDecomposition<S>,
    samples: usize,
    seed: u64,
    margin: S,
) -> Result<TswScan<S>> {
    use rand::Rng;
    let k = fd.killing();

    let evaluate = |x: &SquareMatrix<S>,
                    y: &SquareMatrix<S>,
                    z: &SquareMatrix<S>,
                    w: &SquareMatrix<S>|
     -> Result<Option<(S, S)>> {
        // mixed curvature of the product metric: g(-[[X,Y], √-1 Z], √-1 W)
        // = K([[X, Y], Z], W)
        let mixed = k.pairing(&comm(&comm(x, y), z), w).re;
        if mixed.abs() <= fd.tol.nonzero {
            return Ok(None);
        }
        let sec_m = match sectional_curvature(fd, cd, CurvatureSpace::M, x, y) {
            Ok(v) => v,
            Err(Error::SingularSystem(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let iz = z.scale(crate::scalar::i::<S>());
        let iw = w.scale(crate::scalar::i::<S>());
        let sec_s = match sectional_curvature(fd, cd, CurvatureSpace::SqrtM, &iz, &iw) {
            Ok(v) => v,
            Err(Error::SingularSystem(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let rhs = S::real(4.0) * sec_m * sec_s;
        if rhs <= -margin {
            Ok(Some((mixed, rhs)))
        } else {
            Ok(None)
        }
    };

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut tried = 0usize;
    for idx in 0..samples {
        let mut draw = || {
            let r = S::real(rng.random_range(0.2..1.0));
            cd.m.random_element(&mut rng, r)
        };
        let (x, y, z, w) = (draw(), draw(), draw(), draw());
        tried += 1;
        if let Some((mixed, rhs)) = evaluate(&x, &y, &z, &w)? {
            return Ok(TswScan {
                witness: Some(TswWitness {
                    x,
                    y,
                    z,
                    w,
                    mixed_term: mixed,
                    rhs,
                    sample_index: idx,
                }),
                tried,
            });
        }
    }
    // deterministic fallback sweep: (b_i, b_j, b_i, b_j)
    let basis = cd.m.basis();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate().skip(i + 1) {
            let _ = j;
            tried += 1;
            if let Some((mixed, rhs)) = evaluate(x, y, x, y)? {
                return Ok(TswScan {
                    witness: Some(TswWitness {
                        x: x.clone(),
                        y: y.clone(),
                        z: x.clone(),
                        w: y.clone(),
                        mixed_term: mixed,
                        rhs,
                        sample_index: tried - 1,
                    }),
                    tried,
                });
            }
        }
    }
    Ok(TswScan {
        witness: None,
        tried,
    })
}
