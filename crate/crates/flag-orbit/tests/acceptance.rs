//! Acceptance suite: the structural results certified by this crate, one
//! criterion per check, each at its stated tolerance. Run with
//! `cargo test --test acceptance -- --nocapture` to see the per-criterion
//! lines.

use flag_orbit::dynamics::{sectional_curvature, tsw_violation_scan, CurvatureSpace};
use flag_orbit::flag::{FlagDatum, FlagParams};
use flag_orbit::killing::certify_killing_scalar;
use flag_orbit::matrix::{bracket, SquareMatrix};
use flag_orbit::orbit::{
    canonical_decomposition, classify_fiber, fiber_intersection_origin, point_from_generator,
    sample_s, transversality_check, FiberVerdict,
};
use flag_orbit::roots::{build_root_system, Family};
use flag_orbit::scalar::{cx, Tolerances};
use flag_orbit::symplectic::{kks_nonlagrangian_witness, lagrangian_report, SymplecticForms};
use flag_orbit::toy::{sl2_fiber_meets_hyperbola, sl2_fiber_meets_hyperbola_generic, su2_fiber_meets_s};
use flag_orbit::weyl::weyl_basis;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use std::time::Instant;

type R = Result<String, String>;

fn families() -> Vec<FlagParams> {
    vec![
        FlagParams::A { p: 1, q: 2 },
        FlagParams::C { l: 2 },
        FlagParams::D { l: 3 },
    ]
}

fn datum(params: FlagParams) -> FlagDatum<f64> {
    FlagDatum::build(params, Tolerances::default()).expect("flag datum")
}

/// 1. Weyl normalization across the supported desk-scale ranks.
fn criterion_weyl_normalization() -> R {
    let cases: Vec<(Family, Vec<usize>)> = vec![
        (Family::A, (1..=4).collect()),
        (Family::C, (1..=3).collect()),
        (Family::D, (2..=4).collect()),
    ];
    let mut worst = 0.0f64;
    for (family, ranks) in cases {
        let start = Instant::now();
        for rank in ranks {
            let rs = build_root_system::<f64>(family, rank).map_err(|e| e.to_string())?;
            let wb = weyl_basis(rs, 1e-8, 1e-9).map_err(|e| e.to_string())?;
            for k in 0..wb.rs.positive_roots.len() {
                let v = wb.killing.pairing(wb.x_positive(k), wb.x_negative(k));
                let dev = (v - Complex::new(1.0, 0.0)).norm();
                worst = worst.max(dev);
                if dev >= 1e-9 {
                    return Err(format!(
                        "{family} rank {rank}: |K(X,X-) - 1| = {dev:e}"
                    ));
                }
            }
        }
        let secs = start.elapsed().as_secs_f64();
        if secs >= 5.0 {
            return Err(format!("family {family} took {secs:.1} s (budget 5 s)"));
        }
    }
    Ok(format!("worst |K(X_a, X_-a) - 1| = {worst:.2e}"))
}

/// 2. Killing scalar certification: ad-trace oracle vs scalar * trace.
fn criterion_killing_scalar() -> R {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (family, rank) in [(Family::A, 4), (Family::C, 3), (Family::D, 4)] {
        let rs = build_root_system::<f64>(family, rank).map_err(|e| e.to_string())?;
        let wb = weyl_basis(rs, 1e-8, 1e-9).map_err(|e| e.to_string())?;
        let cert = certify_killing_scalar(family, rank, &wb.complex_basis(), 50, 2024, 1e-8, 1e-8)
            .map_err(|e| e.to_string())?;
        worst = worst.max(cert.max_rel_deviation);
        if cert.max_rel_deviation >= 1e-8 {
            return Err(format!(
                "{family} rank {rank}: rel deviation {:e}",
                cert.max_rel_deviation
            ));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 30.0 {
        return Err(format!("certification took {secs:.1} s (budget 30 s)"));
    }
    Ok(format!(
        "max rel deviation {worst:.2e} over 50 pairs per family in {secs:.1} s"
    ))
}

/// 3. Canonical decomposition bracket inclusions.
fn criterion_symmetric_axioms() -> R {
    let mut worst = 0.0f64;
    for params in families() {
        let fd = datum(params);
        let cd = canonical_decomposition(&fd).map_err(|e| e.to_string())?;
        for x in cd.u_theta.basis() {
            for y in cd.u_theta.basis() {
                worst = worst.max(cd.u_theta.membership(&bracket(x, y).unwrap(), 0.0).residual);
            }
            for y in cd.m.basis() {
                worst = worst.max(cd.m.membership(&bracket(x, y).unwrap(), 0.0).residual);
            }
        }
        for x in cd.m.basis() {
            for y in cd.m.basis() {
                worst = worst.max(cd.u_theta.membership(&bracket(x, y).unwrap(), 0.0).residual);
            }
        }
        if worst >= 1e-9 {
            return Err(format!("{params}: bracket inclusion residual {worst:e}"));
        }
    }
    Ok(format!("max inclusion residual {worst:.2e}"))
}

/// 4. Centralizer identity with exact dimensions.
fn criterion_centralizer() -> R {
    let mut detail = String::new();
    for params in families() {
        let fd = datum(params);
        let rep = fd.centralizer_agreement().map_err(|e| e.to_string())?;
        if !rep.agrees(1e-9) {
            return Err(format!("{params}: {rep:?}"));
        }
        detail.push_str(&format!(
            "{params}: dim_C = {}; ",
            rep.expected_complex_dim
        ));
    }
    Ok(detail)
}

/// 5. Fiber intersection at the origin is exactly {H_Θ}.
fn criterion_fiber_intersection() -> R {
    let mut worst = 0.0f64;
    for params in families() {
        let fd = datum(params);
        let cd = canonical_decomposition(&fd).map_err(|e| e.to_string())?;
        let fi = fiber_intersection_origin(&fd, &cd).map_err(|e| e.to_string())?;
        if fi.solution_dim != 0 {
            return Err(format!("{params}: solution dim {}", fi.solution_dim));
        }
        let dev = fi.point.sub(&fd.h_theta).max_abs();
        worst = worst.max(dev);
        if dev >= 1e-10 {
            return Err(format!("{params}: point deviates from H_Theta by {dev:e}"));
        }
    }
    Ok(format!("solution dim 0; max point deviation {worst:.2e}"))
}

/// 6. Transversality at 50 sampled S-points per family.
fn criterion_transversality() -> R {
    for params in families() {
        let fd = datum(params);
        let cd = canonical_decomposition(&fd).map_err(|e| e.to_string())?;
        let pts = sample_s(&fd, &cd, 50, 606, 2.0).map_err(|e| e.to_string())?;
        for p in &pts {
            let rep = transversality_check(&fd, &cd, p);
            if !rep.full() {
                return Err(format!(
                    "{params}: rank {} of {}",
                    rep.rank, rep.expected
                ));
            }
        }
    }
    Ok("full tangent rank at 50 points per family".into())
}

/// 7. Lagrangian suite: ω vanishes on F_Θ and S tangents at half
/// dimension; the KKS witness is nonzero.
fn criterion_lagrangian() -> R {
    let mut detail = String::new();
    for params in families() {
        let fd = datum(params);
        let cd = canonical_decomposition(&fd).map_err(|e| e.to_string())?;
        let forms = SymplecticForms::new(&fd).map_err(|e| e.to_string())?;
        let origin = point_from_generator(&fd, &SquareMatrix::zeros(fd.matrix_dim()))
            .map_err(|e| e.to_string())?;
        let flag_rep =
            lagrangian_report(&forms, &fd.u.space, &[origin]).map_err(|e| e.to_string())?;
        let half = fd.params.m_real_dim();
        let orbit = 2 * half;
        if flag_rep.max_omega >= 1e-9 || flag_rep.tangent_dim != half || flag_rep.orbit_dim != orbit
        {
            return Err(format!("{params}: flag report {flag_rep:?}"));
        }
        let pts = sample_s(&fd, &cd, 20, 707, 1.5).map_err(|e| e.to_string())?;
        let s_rep = lagrangian_report(&forms, &cd.sqrt_m, &pts).map_err(|e| e.to_string())?;
        if s_rep.max_omega >= 1e-9 || s_rep.tangent_dim != half {
            return Err(format!("{params}: S report {s_rep:?}"));
        }
        let w = kks_nonlagrangian_witness(&forms).map_err(|e| e.to_string())?;
        if w.value.abs() <= 1e-6 {
            return Err(format!("{params}: KKS witness {:.3e}", w.value));
        }
        detail.push_str(&format!(
            "{params}: dims {half}/{orbit}, KKS {:.3}; ",
            w.value
        ));
    }
    Ok(detail)
}

/// 8. Sectional curvature signs and compact/noncompact duality over 500
/// random planes per family.
fn criterion_curvature_signs() -> R {
    let mut worst_dual = 0.0f64;
    for params in families() {
        let fd = datum(params);
        let cd = canonical_decomposition(&fd).map_err(|e| e.to_string())?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(808);
        let mut used = 0;
        while used < 500 {
            let x = cd.m.random_element(&mut rng, 1.0);
            let y = cd.m.random_element(&mut rng, 1.0);
            let sm = match sectional_curvature(&fd, &cd, CurvatureSpace::M, &x, &y) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let ix = x.scale(cx(0.0, 1.0));
            let iy = y.scale(cx(0.0, 1.0));
            let ss = sectional_curvature(&fd, &cd, CurvatureSpace::SqrtM, &ix, &iy)
                .map_err(|e| e.to_string())?;
            if sm < -1e-9 {
                return Err(format!("{params}: sec_m = {sm:e}"));
            }
            if ss > 1e-9 {
                return Err(format!("{params}: sec_s = {ss:e}"));
            }
            let dual = (sm + ss).abs();
            worst_dual = worst_dual.max(dual);
            if dual >= 1e-8 {
                return Err(format!("{params}: duality residual {dual:e}"));
            }
            used += 1;
        }
    }
    Ok(format!(
        "signs correct on 500 planes per family; duality residual {worst_dual:.2e}"
    ))
}

/// 9. Tapp–Strake–Walschap violation witness per family.
fn criterion_tsw() -> R {
    let start = Instant::now();
    let mut detail = String::new();
    for params in families() {
        let fd = datum(params);
        let cd = canonical_decomposition(&fd).map_err(|e| e.to_string())?;
        let scan = tsw_violation_scan(&fd, &cd, 10_000, 909, 1e-9).map_err(|e| e.to_string())?;
        match scan.witness {
            Some(w) => {
                if !(w.mixed_term.abs() > 0.0 && w.rhs <= -1e-9) {
                    return Err(format!(
                        "{params}: witness not strict: mixed {:e}, rhs {:e}",
                        w.mixed_term, w.rhs
                    ));
                }
                detail.push_str(&format!(
                    "{params}: sample {} (lhs^2 {:.2e}, rhs {:.2e}); ",
                    w.sample_index,
                    w.mixed_term * w.mixed_term,
                    w.rhs
                ));
            }
            None => return Err(format!("{params}: no witness in {} samples", scan.tried)),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        return Err(format!("scan took {secs:.1} s (budget 60 s)"));
    }
    Ok(detail)
}

/// 10. Toy oracles: sl(2, R) tangent identity and the SU(2) closed form
/// against the generic machinery.
fn criterion_toy_oracles() -> R {
    // sl(2, R): r = 2 tan(2t) vs the generic linear solve
    let mut worst = 0.0f64;
    for k in 0..100 {
        let t = -0.99 * std::f64::consts::FRAC_PI_4
            + 1.98 * std::f64::consts::FRAC_PI_4 * k as f64 / 99.0;
        let (r1, _) = sl2_fiber_meets_hyperbola(t).ok_or("closed form missing root")?;
        let (r2, _) = sl2_fiber_meets_hyperbola_generic(t)
            .map_err(|e| e.to_string())?
            .ok_or("generic solver missing root")?;
        worst = worst.max((r1 - r2).abs());
        if worst >= 1e-8 {
            return Err(format!("t = {t}: |r1 - r2| = {:e}", (r1 - r2).abs()));
        }
    }

    // SU(2): verdict agreement on 100 random (α, β) plus the boundary
    // cases |α|² = 1/2 (empty) and α = 1 (the point H_Θ itself)
    let fd = datum(FlagParams::A { p: 1, q: 1 });
    let cd = canonical_decomposition(&fd).map_err(|e| e.to_string())?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1010);
    let mut cases = vec![
        (cx::<f64>(1.0, 0.0), cx(0.0, 0.0)),
        (
            cx(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            cx(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ),
    ];
    while cases.len() < 102 {
        let g: [f64; 4] = std::array::from_fn(|_| rng.sample(rand_distr::StandardNormal));
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-6 {
            continue;
        }
        let alpha = cx::<f64>(g[0] / n, g[1] / n);
        let beta = cx(g[2] / n, g[3] / n);
        if (2.0 * alpha.norm_sqr() - 1.0).abs() < 0.01 {
            continue; // intersection point runs off to infinity here
        }
        cases.push((alpha, beta));
    }
    let mut point_dev = 0.0f64;
    for (idx, (alpha, beta)) in cases.iter().enumerate() {
        let closed = su2_fiber_meets_s(*alpha, *beta, 1e-9).map_err(|e| e.to_string())?;
        let u = SquareMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => *alpha,
            (0, 1) => *beta,
            (1, 0) => -beta.conj(),
            (1, 1) => alpha.conj(),
            _ => unreachable!(),
        });
        let generic = classify_fiber(&fd, &cd, &u).map_err(|e| e.to_string())?;
        match (closed, generic) {
            (Some(m), FiberVerdict::CertifiedSingleton { point, .. }) => {
                let dev = m.sub(&point).max_abs();
                point_dev = point_dev.max(dev);
                if dev >= 1e-8 {
                    return Err(format!("case {idx}: point deviation {dev:e}"));
                }
                if idx == 0 {
                    // α = 1 must give H_Θ
                    let dh = m.sub(&fd.h_theta).max_abs();
                    if dh >= 1e-10 {
                        return Err(format!("alpha = 1 gave point {dh:e} from H_Theta"));
                    }
                }
            }
            (None, FiberVerdict::CertifiedEmpty { .. }) => {}
            (c, g) => {
                return Err(format!(
                    "case {idx}: verdicts disagree: closed = {:?}, generic = {:?}",
                    c.map(|_| "some"),
                    g
                ))
            }
        }
    }
    Ok(format!(
        "sl2 max |Δr| = {worst:.2e}; su2 verdicts agree, max point deviation {point_dev:.2e}"
    ))
}

/// 11. The paper's H_Θ pairing values: pass on agreement, otherwise a
/// logged mismatch; never a hard failure.
fn criterion_pairing_values() -> R {
    let mut detail = String::new();
    for params in families() {
        let fd = datum(params);
        let exp = fd.coroot_expansion().map_err(|e| e.to_string())?;
        if exp.reconstruction_residual >= 1e-9 {
            return Err(format!(
                "{params}: expansion residual {:e}",
                exp.reconstruction_residual
            ));
        }
        let status = if exp.matches_paper(1e-6) {
            "pass"
        } else {
            "reported-mismatch"
        };
        if params.family() == Family::A && status != "pass" {
            return Err(format!(
                "family A must match -pi, computed {:?}",
                exp.computed_pairing
            ));
        }
        detail.push_str(&format!(
            "{params}: computed {:.4}, paper {:.4} [{status}]; ",
            exp.computed_pairing.re, exp.paper_value
        ));
    }
    Ok(detail)
}

/// 12. Geodesic projections: horizontal curves project to flag orbits,
/// vertical curves stay in their fiber.
fn criterion_geodesics() -> R {
    use flag_orbit::dynamics::{geodesic_point, project_geodesic, projection_residual_at};
    let mut worst = 0.0f64;
    for params in families() {
        let fd = datum(params);
        let cd = canonical_decomposition(&fd).map_err(|e| e.to_string())?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1212);
        let x = cd.m.random_element(&mut rng, 1.0);
        let proj = project_geodesic(&fd, &cd, &x).map_err(|e| e.to_string())?;
        let u0 = fd
            .u
            .space
            .random_element(&mut rng, 0.5)
            .exp()
            .map_err(|e| e.to_string())?;
        for k in 0..20 {
            let t = -1.0 + 0.1 * k as f64;
            let res =
                projection_residual_at(&fd, &proj, &u0, &x, t).map_err(|e| e.to_string())?;
            worst = worst.max(res);
            if res >= 1e-8 {
                return Err(format!("{params}: horizontal residual {res:e} at t = {t}"));
            }
        }
        let y = fd.n_plus.random_element(&mut rng, 1.0);
        let id = SquareMatrix::identity(fd.matrix_dim());
        let z0 = SquareMatrix::zeros(fd.matrix_dim());
        for k in 0..20 {
            let t = -2.0 + 0.2 * k as f64;
            let p = geodesic_point(&fd, &id, &z0, &y, t).map_err(|e| e.to_string())?;
            let res = fd
                .n_plus
                .membership(&p.value.sub(&fd.h_theta), 0.0)
                .residual;
            worst = worst.max(res);
            if res >= 1e-8 {
                return Err(format!("{params}: vertical residual {res:e} at t = {t}"));
            }
        }
    }
    Ok(format!("max residual {worst:.2e} over 20 t per curve class"))
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&str, fn() -> R)> = vec![
        ("weyl-normalization", criterion_weyl_normalization),
        ("killing-scalar-certification", criterion_killing_scalar),
        ("symmetric-space-axioms", criterion_symmetric_axioms),
        ("centralizer-identity", criterion_centralizer),
        ("fiber-intersection", criterion_fiber_intersection),
        ("transversality", criterion_transversality),
        ("lagrangian-suite", criterion_lagrangian),
        ("curvature-signs", criterion_curvature_signs),
        ("tsw-violation", criterion_tsw),
        ("toy-oracles", criterion_toy_oracles),
        ("pairing-values", criterion_pairing_values),
        ("geodesic-projection", criterion_geodesics),
    ];
    let mut failures = Vec::new();
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => {
                println!(
                    "acceptance {:02} {name:<30} PASS  ({secs:.1} s)  {detail}",
                    idx + 1
                );
            }
            Err(msg) => {
                println!(
                    "acceptance {:02} {name:<30} FAIL  ({secs:.1} s)  {msg}",
                    idx + 1
                );
                failures.push(format!("{name}: {msg}"));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "{} acceptance criteria failed:\n{}",
        failures.len(),
        failures.join("\n")
    );
}
