//! Resolvent kernels r_z: the closed contour route against the Laplace
//! transform of the heat semigroup, and the two norm laws.

use sl2r_harmonic::kernels::{resolvent_kernel, resolvent_laplace, KernelConfig, SpectralCutoffs};
use sl2r_harmonic::transform::{l1_weighted_norm, SpectralQuadrature};
use sl2r_harmonic::C64;

fn main() -> sl2r_harmonic::Result<()> {
    let m = 1;
    let cut = SpectralCutoffs::new(m, 0.0)?;
    let cfg = KernelConfig::default();
    let g = cut.gamma_m;
    let zeta = g + 1.0;
    let rs = [0.5, 1.0, 3.0];
    let r = resolvent_kernel(m, C64::new(zeta, 0.0), &cut, &cfg)?;
    // slow: one heat kernel per Laplace node
    let lap = resolvent_laplace(m, zeta, &cut, &rs, &SpectralQuadrature::default())?;
    println!("m = {m}, ζ = {zeta:.4}");
    for (x, l) in rs.iter().zip(&lap) {
        println!("  r={x}: residues {:.12e}  Laplace {:.12e}", r.eval(*x).re, l.re);
    }
    println!("‖r_ζ‖ (ζ² - β_m²) along the real axis:");
    for k in 0..5 {
        let z = g + 0.5 + 2.375 * k as f64;
        let n = l1_weighted_norm(&resolvent_kernel(m, C64::new(z, 0.0), &cut, &cfg)?)?;
        println!("  ζ={z:.3} {:.4}", n * (z * z - cut.beta_m * cut.beta_m));
    }
    println!("‖r_(γ+iy)‖ / (1+y)⁴:");
    for y in [0.0, 1.0, 5.0, 20.0, 50.0] {
        let n = l1_weighted_norm(&resolvent_kernel(m, C64::new(g, y), &cut, &cfg)?)?;
        println!("  y={y:<4} {:.4e}", n / (1.0 + y).powi(4));
    }
    Ok(())
}
