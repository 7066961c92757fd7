//! Recomputes the frozen multiplier constants `C_m`.
//!
//! Every symbol of the calibration family is synthesized at two strip widths
//! and `‖f‖ / (M_δ + Σ)` is recorded; the constant for each m is 1.25 times the
//! largest ratio seen. Run with `--release`; it takes several minutes.

use sl2r_harmonic::kernels::{certificate_family, multiplier_synthesize, KernelConfig, SpectralCutoffs, CERTIFICATE_CONSTANTS};

fn main() -> sl2r_harmonic::Result<()> {
    let cfg = KernelConfig::default();
    let mut constants = Vec::new();
    for m in 0..=10i64 {
        let mut worst: f64 = 0.0;
        for alpha in [0.0, 1.0] {
            let cut = SpectralCutoffs::new(m, alpha)?;
            for (name, psi) in certificate_family(m, &cut)? {
                let w = psi.holomorphy_half_width();
                for delta in [alpha + 1.5, (alpha + 4.0).min(2.0 * w - 0.1)] {
                    if delta <= alpha + 1.0 {
                        continue;
                    }
                    match multiplier_synthesize(psi.as_ref(), delta, &cut, &cfg) {
                        Ok((_, c)) => {
                            let ratio = c.computed_norm / (c.m_delta + c.discrete_sum);
                            worst = worst.max(ratio);
                            println!("m={m} α={alpha} δ={delta:.2} {name:<26} ratio {ratio:.4}");
                        }
                        Err(e) => println!("m={m} α={alpha} δ={delta:.2} {name:<26} skipped: {e}"),
                    }
                }
            }
        }
        constants.push(1.25 * worst);
        println!("m={m}: max ratio {worst:.4}, C_m = {:.4}, frozen {}", 1.25 * worst, CERTIFICATE_CONSTANTS[m as usize]);
    }
    println!("{constants:.4?}");
    Ok(())
}
