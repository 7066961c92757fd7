//! Cartan and Iwasawa coordinates of a few group elements, and the radial
//! Haar density and weight used everywhere else.

use sl2r_harmonic::group::{cartan_decompose, haar_density, iwasawa_decompose, op_norm, weight_eval, GroupElement, Weight};

fn main() -> sl2r_harmonic::Result<()> {
    let samples = [
        GroupElement::k(0.7) * GroupElement::a_r(1.2) * GroupElement::k(-0.4),
        GroupElement::n(2.0) * GroupElement::a_r(-0.5),
        GroupElement::new(2.0, 3.0, 1.0, 2.0)?,
    ];
    let w = Weight::new(1.5)?;
    for g in &samples {
        let c = cartan_decompose(g)?;
        let i = iwasawa_decompose(g)?;
        let back = GroupElement::from_cartan(&c);
        println!(
            "g = [{:.3} {:.3}; {:.3} {:.3}]  θ={:.4} r={:.4} ψ={:.4}  t={:.4} ρ={:.4} φ={:.4}",
            g.a, g.b, g.c, g.d, c.theta, c.r, c.psi, i.t, i.rr, i.theta
        );
        println!(
            "    ‖g‖ = {:.4} = e^r = {:.4}, ω(g) = {:.4}, rebuild error {:.1e}",
            op_norm(g)?,
            c.r.exp(),
            weight_eval(&w, g)?,
            back.distance(g)
        );
    }
    for r in [0.0, 0.5, 1.0, 2.0] {
        println!("Haar density at r = {r}: {:.6}", haar_density(r)?);
    }
    Ok(())
}
