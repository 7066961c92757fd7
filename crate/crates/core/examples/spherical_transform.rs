//! Forward transform of a compactly supported bump, inversion along the axis
//! and along a shifted contour, Plancherel and the Paley–Wiener diagnostics.

use sl2r_harmonic::convolution::BiTypeProfile;
use sl2r_harmonic::special::SpectralParam;
use sl2r_harmonic::transform::{
    forward_transform, invert_axis_many, invert_contour_many, paley_wiener_report, plancherel_check, HeatSymbol,
    SpectralQuadrature, TransformSymbol,
};

fn main() -> sl2r_harmonic::Result<()> {
    let q = SpectralQuadrature::default();
    let f = BiTypeProfile::bump(2, 2, 1.0)?.radial;
    println!("bump of type 2 supported in r <= 1");
    for l in [0.0, 1.0, 5.0, 20.0] {
        let v = forward_transform(&f, SpectralParam::imag(l))?;
        println!("  f̂({l}i) = {:.6e}", v.re);
    }
    let rs = [0.2, 0.5, 0.8];
    let back = invert_axis_many(&TransformSymbol::new(f.clone()).with_cutoff(40.0), &rs, &q)?;
    for (r, v) in rs.iter().zip(&back) {
        println!("  r={r}: f = {:.8}, inverted {:.8}", f.eval(*r).re, v.re);
    }
    let p = plancherel_check(&f, &q)?;
    println!("Plancherel: spatial {:.10}, spectral {:.10} (discrete part {:.3e})", p.lhs, p.rhs, p.discrete);
    let pw = paley_wiener_report(&f)?;
    println!(
        "Paley–Wiener: type {:.3} (predicted {:.3}), axis slope {:.2}",
        pw.fitted_type, pw.predicted_type, pw.axis_slope
    );

    // axis and contour agree once the discrete terms crossed by the contour are added
    let m = 7;
    let heat = HeatSymbol::new(m, 1.0)?;
    let axis = invert_axis_many(&heat, &[1.0], &q)?[0];
    println!("\nheat symbol, m = {m}, r = 1: axis {:.12e}", axis.re);
    for delta in [0.3, 1.3, 2.8, 3.2] {
        let c = invert_contour_many(&heat, &[1.0], delta, &q)?[0];
        println!("  Re s = {delta}: {:.12e}", c.re);
    }
    Ok(())
}
