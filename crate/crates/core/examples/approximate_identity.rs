//! `(ζ² r_ζ)^{*4} * h_1` approaching h_1 as ζ grows, and the same function
//! rebuilt from resolvents on the line Re z = γ_m.

use sl2r_harmonic::kernels::{
    approx_identity_gap, approx_identity_norm, approx_identity_symbol, generator_reconstruct, KernelConfig,
    SpectralCutoffs,
};
use sl2r_harmonic::transform::{l1_weighted_norm, synthesize, HeatSymbol, SymbolRef};
use std::sync::Arc;

fn main() -> sl2r_harmonic::Result<()> {
    let cfg = KernelConfig::default();
    for m in [0, 1, 4, 7] {
        let cut = SpectralCutoffs::new(m, 0.0)?;
        let g = cut.gamma_m;
        let h: SymbolRef = Arc::new(HeatSymbol::new(m, 1.0)?);
        print!("m={m}:");
        for z in [g + 1.0, 2.0 * g, 4.0 * g, 8.0 * g] {
            let gap = approx_identity_gap(h.clone(), z, 4, &cut, &cfg)?;
            let norm = approx_identity_norm(m, z, 4, &cut, &cfg)?;
            print!("  ζ={z:.2} gap {gap:.4} ‖·‖ {norm:.3}");
        }
        println!();
    }
    let m = 4;
    let cut = SpectralCutoffs::new(m, 0.0)?;
    let h = approx_identity_symbol(Arc::new(HeatSymbol::new(m, 1.0)?), cut.gamma_m + 1.0, 4)?;
    let direct = synthesize(&h, &cfg.grid, 0.0, &cfg.quad)?;
    for y in [10.0, 20.0, 60.0] {
        let rec = generator_reconstruct(&h, &cut, y, &cfg)?;
        let err = l1_weighted_norm(&rec.sub(&direct)?)? / l1_weighted_norm(&direct)?;
        println!("reconstruction from resolvents, m={m}, Y={y}: relative L¹ error {err:.2e}");
    }
    Ok(())
}
