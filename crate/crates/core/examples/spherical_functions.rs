//! φ_{m,s} and the two Φ solutions, the connection formula between them,
//! the c-function on the axis and the poles of its reciprocal.

use sl2r_harmonic::special::{binomial_residue_formula, c_abs_inv_sq_axis, c_function, c_inv_poles, discrete_spectrum, SpectralParam};
use sl2r_harmonic::spherical::{decay_profile, discrete_phis, phi, phi_big};

fn main() -> sl2r_harmonic::Result<()> {
    let m = 3;
    let s = SpectralParam::new(0.3, 2.0);
    let ms = SpectralParam { s: -s.s };
    println!("m = {m}, s = {}", s.s);
    println!("{:>5} {:>26} {:>10}", "r", "φ", "connection");
    for r in [0.1, 0.5, 1.0, 2.0, 4.0] {
        let p = phi(m, s, r)?;
        let q = c_function(m, s)? * phi_big(m, s, r)? + c_function(m, ms)? * phi_big(m, ms, r)?;
        println!("{r:>5} {:>12.8}{:+.8}i {:>10.1e}", p.re, p.im, (p - q).norm() / p.norm());
    }
    let d = decay_profile(m, s);
    println!("decay: {:?}, rate {:.3}, (1+r)^{}", d.regime, d.rate, d.poly_degree);

    println!("\n|c_m(iλ)|⁻² from Gamma functions against the closed forms:");
    for m in [0, 1] {
        for l in [0.5, 2.0, 10.0] {
            let a = c_function(m, SpectralParam::imag(l))?.norm_sqr().recip();
            println!("  m={m} λ={l:<4} {a:.10} {:.10}", c_abs_inv_sq_axis(m, l));
        }
    }

    println!("\npoles of 1/c_m to the right of the axis:");
    for m in [4, 7] {
        let spec = discrete_spectrum(m);
        println!("  m={m}, discrete spectrum {:?}", spec.points.iter().map(|p| p.to_string()).collect::<Vec<_>>());
        for p in c_inv_poles(m).positive {
            println!(
                "    s = {:<4} residue {:>6}  (binomial expression gives {})",
                p.location.to_string(),
                p.residue,
                binomial_residue_formula(m, p.j)
            );
        }
        for (s, v) in discrete_phis(m, 1.0)? {
            println!("    φ_{{{m},{s}}}(a_1) = {v:.6}");
        }
    }
    Ok(())
}
