//! Profiles and symbols on disk: a heat kernel is written, read back,
//! transformed, tabulated and inverted again.

use sl2r_harmonic::io::{read_profile, read_symbol, write_profile, write_symbol};
use sl2r_harmonic::kernels::{heat_kernel, KernelConfig, SpectralCutoffs};
use sl2r_harmonic::transform::{invert_axis_many, SpectralQuadrature, TabulatedSymbol, TransformSymbol};

fn main() -> sl2r_harmonic::Result<()> {
    let dir = std::env::temp_dir().join("sl2r-file-pipeline");
    let m = 3;
    let h = heat_kernel(m, 1.0, &SpectralCutoffs::new(m, 0.0)?, &KernelConfig::default())?;
    let prof = dir.join("h.csv");
    write_profile(&prof, &h)?;
    let back = read_profile(&prof)?;
    assert_eq!(back, h);
    let lambdas: Vec<f64> = (0..=480).map(|k| k as f64 / 40.0).collect();
    let table = TabulatedSymbol::sample(&TransformSymbol::new(back), lambdas)?;
    let sym = dir.join("h_hat.csv");
    write_symbol(&sym, &table)?;
    let rs = [0.5, 1.0, 2.0];
    let inv = invert_axis_many(&read_symbol(&sym)?, &rs, &SpectralQuadrature::default())?;
    for (r, v) in rs.iter().zip(&inv) {
        println!("r={r}: h = {:.10e}, from the table {:.10e}", h.eval(*r).re, v.re);
    }
    println!("files in {}", dir.display());
    Ok(())
}
