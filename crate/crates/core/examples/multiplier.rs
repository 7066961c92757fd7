//! Synthesis of a multiplier with its a priori norm certificate.

use sl2r_harmonic::kernels::{approx_identity_symbol, multiplier_synthesize, KernelConfig, SpectralCutoffs};
use sl2r_harmonic::transform::{HeatSymbol, SphericalSymbol};
use std::sync::Arc;

fn main() -> sl2r_harmonic::Result<()> {
    let cfg = KernelConfig::default();
    for (m, alpha) in [(0, 0.0), (4, 0.0), (4, 1.0)] {
        let cut = SpectralCutoffs::new(m, alpha)?;
        let symbols: Vec<(&str, Box<dyn SphericalSymbol>)> = vec![
            ("heat t=0.5", Box::new(HeatSymbol::new(m, 0.5)?)),
            ("ζ=2γ N=4 × heat", Box::new(approx_identity_symbol(Arc::new(HeatSymbol::new(m, 1.0)?), 2.0 * cut.gamma_m, 4)?)),
        ];
        for (name, psi) in symbols {
            let delta = alpha + 1.5;
            let (_, c) = multiplier_synthesize(psi.as_ref(), delta, &cut, &cfg)?;
            println!(
                "m={m} α={alpha} {name:<16} M_δ={:.4} Σ={:.4} certificate {:.4} ≥ ‖f‖ {:.4}: {}",
                c.m_delta,
                c.discrete_sum,
                c.certificate,
                c.computed_norm,
                c.is_sound()
            );
            println!("  {}", serde_json::to_string(&c)?);
        }
    }
    Ok(())
}
