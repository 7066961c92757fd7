use super::*;
use crate::kernels::{heat_kernel, KernelConfig, SpectralCutoffs};
use crate::special::SpectralParam;
use crate::transform::{forward_transform, l1_weighted_norm};
use crate::error::Error;

fn grid() -> RadialGrid {
    RadialGrid::refined(2.0, 0.05, 12.0).unwrap()
}

fn bump(n: i64, m: i64, radius: f64) -> BiTypeProfile {
    BiTypeProfile::bump(n, m, radius).unwrap()
}

fn heat(m: i64, t: f64) -> RadialProfile {
    heat_kernel(m, t, &SpectralCutoffs::new(m, 0.0).unwrap(), &KernelConfig::default()).unwrap()
}

#[test]
fn heat_semigroup_in_space() {
    let h = heat(0, 0.5);
    let h1 = heat(0, 1.0);
    let rs = [0.0, 0.5, 1.0, 2.0];
    let c = convolve_at(&h.clone().into(), &h.into(), &rs, &ConvolutionConfig::default()).unwrap();
    let sup = rs.iter().map(|r| h1.eval(*r).norm()).fold(0.0, f64::max);
    for (v, r) in c.iter().zip(rs) {
        assert!((v - h1.eval(r)).norm() <= 1e-2 * sup, "r={r}: {v} vs {}", h1.eval(r));
    }
}

#[test]
fn type_m_convolution_commutes_and_multiplies_symbols() {
    let m = 2;
    let f = bump(m, m, 1.0);
    let g: BiTypeProfile = heat(m, 0.5).into();
    let fg = convolve(&f, &g, &grid(), &ConvolutionConfig::default()).unwrap();
    let rs = [0.3, 1.0, 1.7];
    let gf = convolve_at(&g, &f, &rs, &ConvolutionConfig::default()).unwrap();
    let scale = fg.radial.max_abs();
    for (r, v) in rs.iter().zip(&gf) {
        assert!((fg.radial.eval(*r) - v).norm() <= 1e-2 * scale, "r={r}");
    }
    for l in [0.0, 1.0, 3.0] {
        let s = SpectralParam::imag(l);
        let prod = forward_transform(&f.radial, s).unwrap() * forward_transform(&g.radial, s).unwrap();
        let got = forward_transform(&fg.radial, s).unwrap();
        assert!((got - prod).norm() <= 1e-2 * prod.norm(), "λ={l}: {got} vs {prod}");
    }
}

#[test]
fn mismatched_types_vanish() {
    let f = bump(0, 2, 1.0);
    let g = bump(0, 0, 1.0);
    let c = convolve_at(&f, &g, &[0.2, 0.8], &ConvolutionConfig::default()).unwrap();
    let scale = f.radial.max_abs() * g.radial.max_abs();
    assert!(c.iter().all(|v| v.norm() <= 1e-10 * scale), "{c:?}");
}

#[test]
fn too_few_angles_is_a_resolution_error() {
    let f = bump(6, 6, 1.0);
    let cfg = ConvolutionConfig { theta_points: 16, psi_points: None };
    assert!(matches!(convolve_at(&f, &f, &[0.5], &cfg), Err(Error::Resolution(_))));
}

#[test]
fn young_bound() {
    let f = bump(1, 1, 0.8);
    let g = bump(1, 1, 1.0);
    let fg = convolve(&f, &g, &grid(), &ConvolutionConfig { theta_points: 64, psi_points: None }).unwrap();
    let lhs = l1_weighted_norm(&fg.radial).unwrap();
    let rhs = l1_weighted_norm(&f.radial).unwrap() * l1_weighted_norm(&g.radial).unwrap();
    assert!(lhs <= rhs, "{lhs} {rhs}");
}

#[test]
fn projection_is_idempotent_and_orthogonal() {
    let f = bump(0, 2, 1.0);
    let eval = |x: &GroupElement| f.eval_at(x).unwrap();
    let p = k_project(eval, 0, 2, 0.0, grid(), 16).unwrap();
    assert!(p.radial.sup_rel_diff(&f.radial).unwrap() <= 1e-10);
    let q = k_project(eval, 2, 2, 0.0, grid(), 16).unwrap();
    assert!(q.radial.max_abs() <= 1e-12 * f.radial.max_abs());
}

#[test]
fn fejer_sums_converge() {
    // smooth, not K-equivariant
    let f = |x: &GroupElement| C64::new((-(x.a * x.a + 2.0 * x.b * x.b + x.c * x.c + x.d * x.d) / 4.0).exp(), x.b);
    let g = RadialGrid::with_r_max(10.0).unwrap();
    let x = GroupElement::k(0.4) * GroupElement::a_r(0.6) * GroupElement::k(1.1);
    let mut errs = Vec::new();
    for order in [2usize, 4, 8] {
        let mut comps = Vec::new();
        for n in -(order as i64)..=order as i64 {
            for m in -(order as i64)..=order as i64 {
                comps.push(k_project(f, n, m, 0.0, g.clone(), 40).unwrap());
            }
        }
        errs.push((fejer_sum(&comps, order, &x).unwrap() - f(&x)).norm());
    }
    assert!(errs[1] < errs[0] && errs[2] < errs[1], "{errs:?}");
}

#[test]
fn intertwine_same_type_returns_f() {
    let f = bump(1, 1, 1.0);
    let cfg = IntertwineConfig { conv: ConvolutionConfig { theta_points: 64, psi_points: None }, ..Default::default() };
    let out = intertwine(&f.radial, &bump(1, 1, 0.7), &[0.3, 1.0], &cfg).unwrap();
    assert!(out.f_prime.sup_rel_diff(&f.radial).unwrap() <= 1e-4, "{}", out.f_prime.sup_rel_diff(&f.radial).unwrap());
    assert!(out.residual <= 1e-3, "{}", out.residual);
}

#[test]
fn intertwine_rejects_odd_difference() {
    let f = bump(0, 0, 1.0);
    let g = BiTypeProfile::from_fn(0, 1, 0.0, grid(), |r| C64::new((1.0 - r).max(0.0), 0.0)).unwrap();
    assert!(matches!(BiTypeProfile::bump(0, 1, 1.0), Err(Error::Domain(_))));
    assert!(matches!(intertwine(&f.radial, &g, &[0.5], &IntertwineConfig::default()), Err(Error::Domain(_))));
}

#[test]
fn intertwined_symbols_agree() {
    let f = bump(0, 0, 1.0);
    let g = bump(0, 2, 1.0);
    let cfg = IntertwineConfig { conv: ConvolutionConfig { theta_points: 32, psi_points: None }, ..Default::default() };
    let out = intertwine(&f.radial, &g, &[0.5], &cfg).unwrap();
    for l in [0.0, 1.5, 4.0] {
        let s = SpectralParam::imag(l);
        let a = forward_transform(&out.f_prime, s).unwrap();
        let b = forward_transform(&f.radial, s).unwrap();
        assert!((a - b).norm() <= 1e-5 * b.norm().max(1e-3 * f.radial.max_abs()), "λ={l}: {a} {b}");
    }
}
