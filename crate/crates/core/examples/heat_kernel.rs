//! Heat kernels of several types: the symbol round trip, the heat equation
//! residual and the growth of ‖h_t‖ against e^{α_m t}.

use sl2r_harmonic::kernels::{heat_kernel, heat_pde_check, KernelConfig, SpectralCutoffs};
use sl2r_harmonic::special::SpectralParam;
use sl2r_harmonic::transform::{forward_transform, l1_weighted_norm, SpectralQuadrature};

fn main() -> sl2r_harmonic::Result<()> {
    let cfg = KernelConfig::default();
    for m in [0, 1, 4] {
        let cut = SpectralCutoffs::new(m, 0.0)?;
        println!("m = {m}: α_m = {}, β_m = {:.4}, γ_m = {:.4}", cut.alpha_m, cut.beta_m, cut.gamma_m);
        for t in [0.25, 1.0, 4.0] {
            let h = heat_kernel(m, t, &cut, &cfg)?;
            let sym = forward_transform(&h, SpectralParam::imag(1.0))?;
            let want = (-t * 1.25f64).exp();
            let norm = l1_weighted_norm(&h)?;
            println!(
                "  t={t:<4} h(a_0)={:.6} ĥ(i)={:.8} (exact {want:.8}) ‖h‖={norm:.4} ‖h‖e^(-α_m t)={:.4}",
                h.eval(0.0).re,
                sym.re,
                norm * (-cut.alpha_m * t).exp()
            );
        }
    }
    let rs = [0.25, 0.5, 1.0, 2.0];
    let q = SpectralQuadrature::default();
    for dt in [2e-3, 1e-3] {
        println!("heat equation residual, m=0, t=1, dt={dt}: {:.2e}", heat_pde_check(0, 1.0, dt, &rs, &q)?);
    }
    Ok(())
}
