//! Closed-form toy models: the real adjoint orbit of sl(2, R) and the
//! SU(2) orbit, used as independent oracles against the generic machinery,
//! plus the figure data for both.
//!
//! The sl(2, R) picture lives in the basis
//!
//!   A = [[0, 1], [1, 0]],  B = [[1, 0], [0, -1]],  C = [[0, 1], [-1, 0]],
//!
//! where the orbit of B is the one-sheeted hyperboloid x² + y² - z² = 1,
//! the flag is the unit circle in the plane z = 0, and the dual
//! submanifold is the hyperbola branch {x = 0, y² - z² = 1, y > 0}. Fibers
//! of the cotangent bundle through the rotation angle t meet the branch
//! exactly when cos 2t > 0, with offset r = 2 tan 2t.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{Cx, Scalar};
use crate::subspace::RealSubspace;
use num_complex::Complex;

/// Coordinates in the {A, B, C} basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToyPoint3D<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> ToyPoint3D<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        ToyPoint3D { x, y, z }
    }

    /// The matrix x A + y B + z C = [[y, x+z], [x-z, -y]].
    pub fn to_matrix(&self) -> SquareMatrix<S> {
        let mut m = SquareMatrix::zeros(2);
        m.set(0, 0, Complex::new(self.y, S::zero()));
        m.set(0, 1, Complex::new(self.x + self.z, S::zero()));
        m.set(1, 0, Complex::new(self.x - self.z, S::zero()));
        m.set(1, 1, Complex::new(-self.y, S::zero()));
        m
    }

    /// x² + y² - z² - 1, the hyperboloid residual.
    pub fn hyperboloid_residual(&self) -> S {
        (self.x * self.x + self.y * self.y - self.z * self.z - S::one()).abs()
    }
}

/// Flag point at angle s: Ad(rot s) B = sin(2s) A + cos(2s) B.
pub fn sl2_flag_point<S: Scalar>(s: S) -> ToyPoint3D<S> {
    let two_s = s + s;
    ToyPoint3D::new(two_s.sin(), two_s.cos(), S::zero())
}

/// Point of the fiber through the rotation angle t at offset r:
/// (-sin 2t, cos 2t, 0) + (r/2)(cos 2t, sin 2t, 1).
pub fn sl2_fiber_point<S: Scalar>(t: S, r: S) -> ToyPoint3D<S> {
    let two_t = t + t;
    let half_r = r * S::real(0.5);
    ToyPoint3D::new(
        -two_t.sin() + half_r * two_t.cos(),
        two_t.cos() + half_r * two_t.sin(),
        half_r,
    )
}

/// Closed-form intersection of the fiber through t with the hyperbola
/// branch: r = 2 tan 2t when cos 2t > 0 (t in (-π/4, π/4) modulo π),
/// none otherwise.
pub fn sl2_fiber_meets_hyperbola<S: Scalar>(t: S) -> Option<(S, ToyPoint3D<S>)> {
    let two_t = t + t;
    let c = two_t.cos();
    if c <= S::real(1e-12) {
        return None;
    }
    let r = S::real(2.0) * two_t.tan();
    Some((r, sl2_fiber_point(t, r)))
}

/// The same intersection computed by the generic route: build the fiber as
/// an actual adjoint translate in matrix form, solve the linear x = 0
/// condition by least squares over the {A, B, C} coordinate span, and
/// apply the branch condition y > 0. Independent of the tangent identity.
pub fn sl2_fiber_meets_hyperbola_generic<S: Scalar>(t: S) -> Result<Option<(S, ToyPoint3D<S>)>> {
    let a = ToyPoint3D::new(S::one(), S::zero(), S::zero()).to_matrix();
    let b = ToyPoint3D::new(S::zero(), S::one(), S::zero()).to_matrix();
    let c = ToyPoint3D::new(S::zero(), S::zero(), S::one()).to_matrix();
    let span = RealSubspace::new(vec![a, b, c], S::real(1e-10))?;

    let k = {
        let mut m = SquareMatrix::zeros(2);
        m.set(0, 0, Complex::new(t.cos(), S::zero()));
        m.set(0, 1, Complex::new(t.sin(), S::zero()));
        m.set(1, 0, Complex::new(-t.sin(), S::zero()));
        m.set(1, 1, Complex::new(t.cos(), S::zero()));
        m
    };
    let k_inv = k.transpose();
    let coords_at = |r: S| -> Vec<S> {
        let mut upper = SquareMatrix::zeros(2);
        upper.set(0, 0, Complex::new(S::one(), S::zero()));
        upper.set(1, 1, Complex::new(-S::one(), S::zero()));
        upper.set(0, 1, Complex::new(r, S::zero()));
        let moved = k.mul(&upper).mul(&k_inv);
        span.membership(&moved, S::real(1e-9)).coefficients
    };
    let c0 = coords_at(S::zero());
    let c2 = coords_at(S::real(2.0));
    let slope = (c2[0] - c0[0]) * S::real(0.5);
    if slope.abs() < S::real(1e-12) {
        return Ok(None);
    }
    let r = -c0[0] / slope;
    let cr = coords_at(r);
    if cr[1] <= S::zero() {
        return Ok(None);
    }
    Ok(Some((r, ToyPoint3D::new(cr[0], cr[1], cr[2]))))
}

/// Closed-form intersection of the SU(2) fiber through
/// u = [[α, β], [-β̄, ᾱ]] with S: nonempty exactly when 1/2 < |α|² ≤ 1,
/// in which case it is the single point
///
///   (iπ / (2|α|² - 1)) [[1/2, αβ], [-ᾱβ̄, -1/2]].
pub fn su2_fiber_meets_s<S: Scalar>(
    alpha: Cx<S>,
    beta: Cx<S>,
    tol: S,
) -> Result<Option<SquareMatrix<S>>> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - S::one()).abs() > tol {
        return Err(Error::InvalidParams(format!(
            "(alpha, beta) off the unit sphere by {:e}",
            (norm - S::one()).abs().lossy_f64()
        )));
    }
    let den = alpha.norm_sqr() + alpha.norm_sqr() - S::one();
    if den <= S::real(1e-12) {
        return Ok(None);
    }
    let factor = Complex::new(S::zero(), S::PI() / den);
    let ab = alpha * beta;
    let mut m = SquareMatrix::zeros(2);
    m.set(0, 0, factor * Complex::new(S::real(0.5), S::zero()));
    m.set(0, 1, factor * ab);
    m.set(1, 0, -factor * ab.conj());
    m.set(1, 1, -factor * Complex::new(S::real(0.5), S::zero()));
    Ok(Some(m))
}

/// The flag projection of the fiber through (α, β): the point
/// u · H_Θ = π Im(αβ) e₁ + (π/2)(2|α|²-1) e₂ - π Re(αβ) e₃ of the
/// radius-π/2 sphere in su(2). Fibers meeting S project into the open
/// half b > 0.
pub fn su2_flag_projection<S: Scalar>(alpha: Cx<S>, beta: Cx<S>) -> (S, S, S) {
    let ab = alpha * beta;
    let pi = S::PI();
    (
        pi * ab.im,
        pi * S::real(0.5) * (alpha.norm_sqr() + alpha.norm_sqr() - S::one()),
        -pi * ab.re,
    )
}

// ---------------------------------------------------------------------
// figure data
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToyModel {
    Sl2,
    Su2,
}

impl std::str::FromStr for ToyModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl2" => Ok(ToyModel::Sl2),
            "su2" => Ok(ToyModel::Su2),
            other => Err(Error::InvalidParams(format!("unknown toy model {other:?}"))),
        }
    }
}

/// One named polyline layer of 3D points.
#[derive(Debug, Clone)]
pub struct PolyLayer {
    pub name: String,
    pub points: Vec<(f64, f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct ToyFigures {
    pub layers: Vec<PolyLayer>,
}

/// Build the figure layers for a toy model. The resolution is the number
/// of samples per polyline and must be at least 16.
pub fn emit_toy_figures(model: ToyModel, resolution: usize) -> Result<ToyFigures> {
    if resolution < 16 {
        return Err(Error::InvalidParams(format!(
            "resolution {resolution} below the minimum of 16"
        )));
    }
    let n = resolution;
    let mut layers = Vec::new();
    match model {
        ToyModel::Sl2 => {
            // hyperboloid slices x² + y² = 1 + z²
            for (zi, kz) in (-4..=4).enumerate() {
                let z = 0.375 * kz as f64;
                let rad = (1.0 + z * z).sqrt();
                let pts = (0..=n)
                    .map(|k| {
                        let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                        (rad * th.cos(), rad * th.sin(), z)
                    })
                    .collect();
                layers.push(PolyLayer {
                    name: format!("hyperboloid_{zi:02}"),
                    points: pts,
                });
            }
            // the flag: unit circle at z = 0
            layers.push(PolyLayer {
                name: "circle".into(),
                points: (0..=n)
                    .map(|k| {
                        let s = std::f64::consts::PI * k as f64 / n as f64;
                        let p = sl2_flag_point(s);
                        (p.x, p.y, p.z)
                    })
                    .collect(),
            });
            // the dual submanifold: hyperbola branch x = 0, y > 0
            layers.push(PolyLayer {
                name: "hyperbola".into(),
                points: (0..=n)
                    .map(|k| {
                        let t = -1.2 + 2.4 * k as f64 / n as f64;
                        ((0.0f64), (2.0 * t).cosh(), -(2.0 * t).sinh())
                    })
                    .collect(),
            });
            // fibers over t ∈ [-π/2, π/2]; the open range (-π/4, π/4)
            // intersects the branch, the rest are marked
            let fibers = 25usize;
            for k in 0..fibers {
                let t = -std::f64::consts::FRAC_PI_2
                    + std::f64::consts::PI * k as f64 / (fibers - 1) as f64;
                let meets = (2.0 * t).cos() > 1e-9;
                let name = if meets {
                    format!("fiber_{k:02}")
                } else {
                    format!("fiber_{k:02}_nointersect")
                };
                let pts = (0..=n)
                    .map(|j| {
                        let r = -4.0 + 8.0 * j as f64 / n as f64;
                        let p = sl2_fiber_point(t, r);
                        (p.x, p.y, p.z)
                    })
                    .collect();
                layers.push(PolyLayer { name, points: pts });
            }
            // intersection locus (0, 1/cos 2t, tan 2t)
            layers.push(PolyLayer {
                name: "intersection".into(),
                points: (0..=n)
                    .map(|k| {
                        let t = -0.9 * std::f64::consts::FRAC_PI_4
                            + 1.8 * std::f64::consts::FRAC_PI_4 * k as f64 / n as f64;
                        let (_, p) = sl2_fiber_meets_hyperbola(t).unwrap();
                        (p.x, p.y, p.z)
                    })
                    .collect(),
            });
        }
        ToyModel::Su2 => {
            let pi = std::f64::consts::PI;
            // wireframe of the radius-π/2 sphere
            for (bi, kb) in (-3..=3).enumerate() {
                let b = (pi / 2.0) * (kb as f64 / 4.0);
                let rad = ((pi / 2.0) * (pi / 2.0) - b * b).sqrt();
                let pts = (0..=n)
                    .map(|k| {
                        let th = 2.0 * pi * k as f64 / n as f64;
                        (rad * th.cos(), b, rad * th.sin())
                    })
                    .collect();
                layers.push(PolyLayer {
                    name: format!("sphere_{bi:02}"),
                    points: pts,
                });
            }
            layers.push(PolyLayer {
                name: "equator".into(),
                points: (0..=n)
                    .map(|k| {
                        let th = 2.0 * pi * k as f64 / n as f64;
                        ((pi / 2.0) * th.cos(), 0.0, (pi / 2.0) * th.sin())
                    })
                    .collect(),
            });
            // the projected locus of fibers meeting S: |α|² ∈ (1/2, 1]
            for j in 0..8usize {
                let u = 0.5 + 0.5 * (j as f64 + 1.0) / 8.0;
                let alpha = u.sqrt();
                let betamod = (1.0 - u).sqrt();
                let pts = (0..=n)
                    .map(|k| {
                        let phi = 2.0 * pi * k as f64 / n as f64;
                        let beta = Complex::new(betamod * phi.cos(), betamod * phi.sin());
                        let (a, b, c) =
                            su2_flag_projection(Complex::new(alpha, 0.0), beta);
                        (a, b, c)
                    })
                    .collect();
                layers.push(PolyLayer {
                    name: format!("locus_{j:02}"),
                    points: pts,
                });
            }
        }
    }
    Ok(ToyFigures { layers })
}

impl ToyFigures {
    /// CSV: one polyline per block, a header line naming the layer, then
    /// x,y,z rows; blocks separated by a blank line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for layer in &self.layers {
            out.push_str(&layer.name);
            out.push('\n');
            out.push_str("x,y,z\n");
            for (x, y, z) in &layer.points {
                out.push_str(&format!("{x:.6},{y:.6},{z:.6}\n"));
            }
            out.push('\n');
        }
        out
    }

    /// SVG with a fixed 800x800 viewport; one group per layer whose id
    /// matches the CSV layer name. Isometric projection.
    pub fn to_svg(&self) -> String {
        let scale = {
            let mut extent: f64 = 1.0;
            for layer in &self.layers {
                for &(x, y, z) in &layer.points {
                    let (sx, sy) = iso(x, y, z);
                    extent = extent.max(sx.abs()).max(sy.abs());
                }
            }
            360.0 / extent
        };
        let mut out = String::new();
        out.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n",
        );
        out.push_str("<rect width=\"800\" height=\"800\" fill=\"white\"/>\n");
        for layer in &self.layers {
            let color = layer_color(&layer.name);
            out.push_str(&format!("<g id=\"{}\">\n", layer.name));
            let pts: Vec<String> = layer
                .points
                .iter()
                .map(|&(x, y, z)| {
                    let (sx, sy) = iso(x, y, z);
                    format!("{:.2},{:.2}", 400.0 + scale * sx, 400.0 - scale * sy)
                })
                .collect();
            out.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1\" points=\"{}\"/>\n",
                color,
                pts.join(" ")
            ));
            out.push_str("</g>\n");
        }
        out.push_str("</svg>\n");
        out
    }
}

fn iso(x: f64, y: f64, z: f64) -> (f64, f64) {
    let c30 = 0.866_025_403_784_438_6;
    ((x - y) * c30, (x + y) * 0.5 - z * (-1.0))
}

fn layer_color(name: &str) -> &'static str {
    if name.ends_with("_nointersect") {
        "#00bfff" // sky blue: the fibers that never meet S
    } else if name.starts_with("fiber") {
        "#b0c4de"
    } else if name.starts_with("hyperboloid") || name.starts_with("sphere") {
        "#cccccc"
    } else if name.starts_with("circle") || name.starts_with("equator") {
        "#2ca02c"
    } else if name.starts_with("hyperbola") {
        "#d62728"
    } else {
        "#ff7f0e" // intersection / locus
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    #[test]
    fn flag_point_endpoints() {
        let p = sl2_flag_point(0.0f64);
        assert!((p.x, p.y, p.z) == (0.0, 1.0, 0.0));
        let p = sl2_flag_point(std::f64::consts::FRAC_PI_4);
        assert!((p.x - 1.0).abs() < 1e-15 && p.y.abs() < 1e-15);
        for k in 0..50 {
            let p = sl2_flag_point(0.13 * k as f64);
            assert!((p.x * p.x + p.y * p.y - 1.0).abs() < 1e-13);
            assert_eq!(p.z, 0.0);
        }
    }

    #[test]
    fn fiber_point_values() {
        // r = 0 is the flag point at parameter -t
        let t = 0.37f64;
        let p = sl2_fiber_point(t, 0.0);
        let q = sl2_flag_point(-t);
        assert!((p.x - q.x).abs() < 1e-15 && (p.y - q.y).abs() < 1e-15);
        // t = 0, r = 2 gives (1, 1, 1)
        let p = sl2_fiber_point(0.0f64, 2.0);
        assert!((p.x - 1.0).abs() < 1e-15);
        assert!((p.y - 1.0).abs() < 1e-15);
        assert!((p.z - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fiber_matrices_have_determinant_minus_one() {
        for (t, r) in [(0.0, 0.5), (0.3, -2.0), (1.2, 4.0), (-0.7, 0.0)] {
            let m = sl2_fiber_point(t, r).to_matrix();
            let d = m.det();
            assert!((d - cx(-1.0, 0.0)).norm() < 1e-12, "t={t} r={r}");
        }
    }

    #[test]
    fn hyperbola_intersection_closed_form() {
        // t = 0: r = 0 at the point B
        let (r, p) = sl2_fiber_meets_hyperbola(0.0f64).unwrap();
        assert!(r.abs() < 1e-15);
        assert!((p.y - 1.0).abs() < 1e-15);
        // t = π/8: r = 2, on the branch
        let (r, p) = sl2_fiber_meets_hyperbola(std::f64::consts::FRAC_PI_8).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
        assert!(p.x.abs() < 1e-12);
        assert!(p.y > 0.0);
        assert!((p.y * p.y - p.z * p.z - 1.0).abs() < 1e-12);
        // t = ±π/4: the fibers through ±A never meet the branch
        assert!(sl2_fiber_meets_hyperbola(std::f64::consts::FRAC_PI_4).is_none());
        assert!(sl2_fiber_meets_hyperbola(-std::f64::consts::FRAC_PI_4).is_none());
    }

    #[test]
    fn generic_route_agrees_with_tangent_identity() {
        for k in 0..100 {
            let t = -1.5 + 3.0 * k as f64 / 99.0;
            let closed = sl2_fiber_meets_hyperbola(t);
            let generic = sl2_fiber_meets_hyperbola_generic(t).unwrap();
            match (closed, generic) {
                (None, None) => {}
                (Some((r1, p1)), Some((r2, p2))) => {
                    assert!((r1 - r2).abs() < 1e-8, "t = {t}: {r1} vs {r2}");
                    assert!((p1.y - p2.y).abs() < 1e-8);
                    assert!((p1.z - p2.z).abs() < 1e-8);
                }
                (a, b) => panic!("t = {t}: verdicts disagree ({a:?} vs {b:?})"),
            }
        }
    }

    #[test]
    fn su2_boundary_cases() {
        // α = 1: the fiber through the origin meets S at H_Θ
        let m = su2_fiber_meets_s(cx::<f64>(1.0, 0.0), cx(0.0, 0.0), 1e-9)
            .unwrap()
            .unwrap();
        let h = SquareMatrix::from_diag(&[
            cx(0.0, std::f64::consts::FRAC_PI_2),
            cx(0.0, -std::f64::consts::FRAC_PI_2),
        ]);
        assert!(m.approx_eq(&h, 1e-12));
        // |α|² = 1/2: empty
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let m = su2_fiber_meets_s(cx::<f64>(inv_sqrt2, 0.0), cx(0.0, inv_sqrt2), 1e-9).unwrap();
        assert!(m.is_none());
        // off the sphere: error
        assert!(su2_fiber_meets_s(cx::<f64>(1.0, 0.0), cx(0.5, 0.0), 1e-9).is_err());
    }

    #[test]
    fn su2_point_stays_on_orbit_and_in_dual_form() {
        let alpha = cx::<f64>(0.9, 0.1);
        let beta = {
            let rest = (1.0 - alpha.norm_sqr()).sqrt();
            cx(rest * 0.6, rest * 0.8)
        };
        let m = su2_fiber_meets_s(alpha, beta, 1e-9).unwrap().unwrap();
        // su(1,1) form: M11 imaginary, M21 = conj(M12), M22 = -M11
        assert!(m.at(0, 0).re.abs() < 1e-12);
        assert!((m.at(1, 0) - m.at(0, 1).conj()).norm() < 1e-12);
        // determinant equals det(H_Θ) = π²/4
        let want = std::f64::consts::PI * std::f64::consts::PI / 4.0;
        assert!((m.det() - cx(want, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn su2_projection_on_semi_sphere() {
        let pi = std::f64::consts::PI;
        for k in 0..40 {
            let u = 0.5 + 0.5 * (k as f64 + 1.0) / 40.0;
            let alpha = cx::<f64>(u.sqrt(), 0.0);
            let beta = cx((1.0 - u).sqrt(), 0.0);
            let (a, b, c) = su2_flag_projection(alpha, beta);
            assert!((a * a + b * b + c * c - pi * pi / 4.0).abs() < 1e-10);
            assert!(b > 0.0);
        }
    }

    #[test]
    fn figures_resolution_guard() {
        assert!(matches!(
            emit_toy_figures(ToyModel::Sl2, 8),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn sl2_figures_content() {
        let figs = emit_toy_figures(ToyModel::Sl2, 32).unwrap();
        let hyperbola = figs
            .layers
            .iter()
            .find(|l| l.name == "hyperbola")
            .expect("hyperbola layer");
        for &(x, y, z) in &hyperbola.points {
            assert!(x.abs() < 1e-12);
            assert!((y * y - z * z - 1.0).abs() < 1e-12);
            assert!(y > 0.0);
        }
        assert!(figs.layers.iter().any(|l| l.name == "circle"));
        // the fibers through ±A carry the marker
        let marked: Vec<&str> = figs
            .layers
            .iter()
            .filter(|l| l.name.ends_with("_nointersect"))
            .map(|l| l.name.as_str())
            .collect();
        assert!(marked.contains(&"fiber_06_nointersect")); // t = -π/4
        assert!(marked.contains(&"fiber_18_nointersect")); // t = +π/4
        let csv = figs.to_csv();
        assert!(csv.contains("hyperbola\nx,y,z\n"));
        let svg = figs.to_svg();
        assert!(svg.contains("id=\"circle\""));
        assert!(svg.contains("width=\"800\" height=\"800\""));
    }

    #[test]
    fn su2_figures_content() {
        let figs = emit_toy_figures(ToyModel::Su2, 16).unwrap();
        let pi = std::f64::consts::PI;
        for layer in figs.layers.iter().filter(|l| l.name.starts_with("locus")) {
            for &(a, b, c) in &layer.points {
                assert!((a * a + b * b + c * c - pi * pi / 4.0).abs() < 1e-9);
                assert!(b > 0.0);
            }
        }
    }
}
