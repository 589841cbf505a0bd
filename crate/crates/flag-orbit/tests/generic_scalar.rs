//! The core is generic over the real scalar. `f64` is the working
//! precision; this target instantiates the same constructions at `f32`
//! with correspondingly loose thresholds to keep the genericity honest.

use flag_orbit::flag::{FlagDatum, FlagParams};
use flag_orbit::orbit::{canonical_decomposition, fiber_intersection_origin, sample_s};
use flag_orbit::scalar::Tolerances;

fn f32_tolerances() -> Tolerances<f32> {
    Tolerances {
        base: 1e-3,
        sv_cutoff: 1e-4,
        eig_zero: 1e-2,
        certify: 1e-2,
        nonzero: 1e-3,
    }
}

#[test]
fn f32_construction_and_fiber_intersection() {
    let fd = FlagDatum::<f32>::build(FlagParams::A { p: 1, q: 2 }, f32_tolerances()).unwrap();
    assert_eq!(fd.n_plus.dim(), 4);
    let cd = canonical_decomposition(&fd).unwrap();
    assert_eq!(cd.m.dim(), 4);
    let fi = fiber_intersection_origin(&fd, &cd).unwrap();
    assert_eq!(fi.solution_dim, 0);
    assert!(fi.offset_norm < 1e-3);
}

#[test]
fn f32_sampled_points_stay_in_dual_algebra() {
    let fd = FlagDatum::<f32>::build(FlagParams::C { l: 2 }, f32_tolerances()).unwrap();
    let cd = canonical_decomposition(&fd).unwrap();
    for p in sample_s(&fd, &cd, 10, 5, 1.0).unwrap() {
        let mem = cd.u_star.membership(&p.value, 1e-3);
        assert!(mem.member, "residual {}", mem.residual);
    }
}
