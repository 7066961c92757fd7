//! Direct convolution on the group: the heat semigroup in space, and the
//! intertwining of a type-0 bump through a (0, 2) bump.

use sl2r_harmonic::convolution::{convolve_at, intertwine, BiTypeProfile, ConvolutionConfig, IntertwineConfig};
use sl2r_harmonic::kernels::{heat_kernel, KernelConfig, SpectralCutoffs};

fn main() -> sl2r_harmonic::Result<()> {
    let cut = SpectralCutoffs::new(0, 0.0)?;
    let cfg = KernelConfig::default();
    let half: BiTypeProfile = heat_kernel(0, 0.5, &cut, &cfg)?.into();
    let one = heat_kernel(0, 1.0, &cut, &cfg)?;
    let rs = [0.0, 0.5, 1.0, 2.0];
    let conv = convolve_at(&half, &half, &rs, &ConvolutionConfig::default())?;
    for (r, v) in rs.iter().zip(&conv) {
        println!("r={r}: h_½ * h_½ = {:.6e}, h_1 = {:.6e}", v.re, one.eval(*r).re);
    }

    let f = BiTypeProfile::bump(0, 0, 1.0)?;
    let g = BiTypeProfile::bump(0, 2, 1.0)?;
    let out = intertwine(&f.radial, &g, &[0.25, 0.5, 1.0, 1.5], &IntertwineConfig::default())?;
    for ((r, a), b) in out.probes.iter().zip(&out.lhs).zip(&out.rhs) {
        println!("r={r}: f * g = {:.8e}, g * f' = {:.8e}", a.re, b.re);
    }
    println!("relative residual {:.2e}", out.residual);
    Ok(())
}
