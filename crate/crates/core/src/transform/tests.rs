use super::*;
use crate::special::HalfInt;

fn heat_profile(m: i64, t: f64) -> RadialProfile {
    let psi = HeatSymbol::new(m, t).unwrap();
    synthesize(&psi, &RadialGrid::with_r_max(30.0).unwrap(), 0.0, &SpectralQuadrature::default()).unwrap()
}

#[test]
fn heat_axis_value_at_origin() {
    // (1/4π²) ∫_0^∞ e^{-(λ²+1/4)} πλ tanh(πλ) dλ, mpmath quad at 30 digits
    let v = invert_axis(&HeatSymbol::new(0, 1.0).unwrap(), 0.0).unwrap();
    assert!((v.re / 0.028767877602860987 - 1.0).abs() < 1e-12, "{v}");
    assert!(v.im.abs() < 1e-17);
}

#[test]
fn heat_round_trip_fixes_kappa() {
    for m in [0, 1, 4] {
        let h = heat_profile(m, 1.0);
        for l in [0.0, 0.5, 1.0, 2.5, 5.0] {
            let s = SpectralParam::imag(l);
            let v = forward_transform(&h, s).unwrap();
            let want = (-(l * l + 0.25f64)).exp();
            assert!((v - want).norm() < 1e-6 * want.max(1e-8), "m={m} λ={l}: {v} vs {want}");
        }
    }
}

#[test]
fn axis_and_contour_agree_for_heat() {
    let q = SpectralQuadrature::default();
    for m in [0, 1, 4, 7] {
        let psi = HeatSymbol::new(m, 1.0).unwrap();
        let rs = [0.5, 1.0, 3.0];
        let ax = invert_axis_many(&psi, &rs, &q).unwrap();
        for d in [0.25, 0.8, 2.2] {
            let co = invert_contour_many(&psi, &rs, d, &q).unwrap();
            for i in 0..3 {
                assert!((ax[i] - co[i]).norm() < 1e-7 * ax[i].norm(), "m={m} δ={d} r={}: {} vs {}", rs[i], ax[i], co[i]);
            }
        }
    }
}

#[test]
fn contour_rejects_poles_and_origin() {
    let psi = HeatSymbol::new(4, 1.0).unwrap();
    assert!(matches!(invert_contour(&psi, 1.0, 1.5), Err(Error::Domain(_))));
    assert!(matches!(invert_contour(&psi, 0.0, 0.3), Err(Error::Domain(_))));
    let res = RationalSymbol::resolvent(0, C64::new(1.0, 0.0)).unwrap();
    assert!(matches!(invert_contour(&res, 1.0, 1.2), Err(Error::Precondition(_))));
}

#[test]
fn evenness_of_forward_transform() {
    let h = heat_profile(2, 0.5);
    for s in [C64::new(0.2, 1.3), C64::new(-0.4, 3.0)] {
        let a = forward_transform(&h, s.into()).unwrap();
        let b = forward_transform(&h, (-s).into()).unwrap();
        assert!((a - b).norm() < 1e-10 * a.norm());
    }
}

#[test]
fn forward_domain_checks() {
    let g = RadialGrid::with_r_max(12.0).unwrap();
    let slow = RadialProfile::from_fn(0, 0.0, g, |r| C64::new((-r).exp(), 0.0)).unwrap();
    assert!(matches!(forward_transform(&slow, SpectralParam::real(0.9)), Err(Error::Domain(_))));
    assert!(forward_transform(&slow, SpectralParam::new(0.5, 2.0)).is_ok());
    let mut bad = slow.clone();
    bad.tail = Some(Tail { rate: -1.5, coeff: C64::new(1.0, 0.0) });
    assert!(matches!(forward_transform(&bad, SpectralParam::new(0.4, 1.0)), Err(Error::Precondition(_))));
}

#[test]
fn residue_closure_matches_axis_for_fourth_power() {
    // (z² - s²)^{-4} decays fast enough for the axis integral
    let psi = RationalSymbol::new(1, C64::new(100.0, 0.0), vec![(C64::new(2.5, 0.0), 4)]).unwrap();
    let rs = [0.5, 1.0, 2.0];
    let closed = invert_contour_many(&psi, &rs, 0.3, &SpectralQuadrature::default()).unwrap();
    let ax = invert_axis_many(&psi, &rs, &SpectralQuadrature { rel_tol: 1e-13, ..Default::default() }).unwrap();
    for i in 0..3 {
        assert!((closed[i] - ax[i]).norm() < 1e-6 * closed[i].norm(), "{} vs {}", closed[i], ax[i]);
    }
}

#[test]
fn resolvent_axis_integral_is_rejected() {
    let psi = RationalSymbol::resolvent(0, C64::new(2.0, 0.0)).unwrap();
    assert!(matches!(invert_axis(&psi, 1.0), Err(Error::Precondition(_))));
}

#[test]
fn resolvent_round_trip() {
    let z = C64::new(2.3, 0.7);
    let psi = RationalSymbol::resolvent(2, z).unwrap();
    let f = synthesize(&psi, &RadialGrid::with_r_max(30.0).unwrap(), 0.0, &SpectralQuadrature::default()).unwrap();
    for s in [C64::new(0.0, 0.5), C64::new(0.0, 3.0), C64::new(0.3, 1.0), C64::new(0.5, 0.0)] {
        let v = forward_transform(&f, s.into()).unwrap();
        let want = (z * z - s * s).inv();
        assert!((v - want).norm() < 1e-5 * want.norm(), "s={s}: {v} vs {want}");
    }
}

#[test]
fn crossing_a_pole_moves_one_discrete_term() {
    let psi = HeatSymbol::new(4, 1.0).unwrap();
    let q = SpectralQuadrature::default();
    let r = 1.0;
    let below = invert_contour_many(&psi, &[r], 1.4, &q).unwrap()[0];
    let above = invert_contour_many(&psi, &[r], 1.6, &q).unwrap()[0];
    assert!((below - above).norm() < 1e-9 * below.norm(), "{below} {above}");
    // the discrete term at 3/2 that the lower contour carries explicitly
    let s = 1.5;
    let term = 1.5 / (8.0 * PI) * psi.eval(C64::new(s, 0.0)).unwrap() * crate::spherical::phi(4, SpectralParam::real(s), r).unwrap();
    assert!(term.norm() > 1e-3 * below.norm());
    let _ = HalfInt::new(3);
}

#[test]
fn plancherel_heat() {
    for (m, t) in [(0, 1.0), (4, 1.0)] {
        let h = heat_profile(m, t);
        let p = plancherel_check(&h, &SpectralQuadrature::default()).unwrap();
        assert!((p.ratio() - 1.0).abs() < 1e-6, "m={m}: {p:?}");
        if m == 4 {
            assert!(p.discrete > 0.0);
        }
        let p2 = plancherel_check(&h.scaled(C64::new(2.0, 0.0)), &SpectralQuadrature::default()).unwrap();
        assert!((p2.lhs / p.lhs - 4.0).abs() < 1e-12 && (p2.rhs / p.rhs - 4.0).abs() < 1e-9);
    }
}

fn bump(m: i64, radius: f64) -> RadialProfile {
    let g = RadialGrid::refined(2.0, 0.05, 12.0).unwrap();
    RadialProfile::from_fn(m, 0.0, g, |r| {
        let x = r / radius;
        C64::new(if x < 1.0 { (1.0 - x * x).powi(8) } else { 0.0 }, 0.0)
    })
    .unwrap()
}

#[test]
fn paley_wiener_bump() {
    let rep = paley_wiener_report(&bump(0, 1.0)).unwrap();
    assert!((rep.fitted_type - 2.0).abs() < 0.2, "{rep:?}");
    assert!(rep.decays_faster_than(6.0), "{rep:?}");
    let half = paley_wiener_report(&bump(0, 0.5)).unwrap();
    assert!((half.fitted_type / rep.fitted_type - 0.5).abs() < 0.05, "{half:?}");
}

#[test]
fn paley_wiener_rejects_noncompact() {
    let g = RadialGrid::with_r_max(30.0).unwrap();
    let slow = RadialProfile::from_fn(0, 0.0, g, |r| C64::new((-0.5 * r).exp(), 0.0)).unwrap();
    assert!(matches!(paley_wiener_report(&slow), Err(Error::Precondition(_))));
}

#[test]
fn weighted_norm_monotone_in_alpha() {
    let h = heat_profile(0, 1.0);
    let mut h1 = h.clone();
    h1.alpha = 1.0;
    let n0 = l1_weighted_norm(&h).unwrap();
    let n1 = l1_weighted_norm(&h1).unwrap();
    assert!(n0 > 0.0 && n1 >= n0);
}

#[test]
fn tail_integral_closed_form() {
    // ∫_5^∞ e^{-4r} 2 sinh 2r dr = e^{-10}/2 - e^{-30}/6
    let v = tail_integral(1.0, -4.0, 5.0).unwrap();
    let want = (-10f64).exp() / 2.0 - (-30f64).exp() / 6.0;
    assert!((v / want - 1.0).abs() < 1e-14);
    assert!(tail_integral(1.0, -1.5, 5.0).is_err());
}
