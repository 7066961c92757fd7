//! The m-spherical functions `φ_{m,s}(a_r)`, the asymptotic solutions
//! `Φ_{m,s}(a_r)` and the remainder `ν_m(s, r)`.

use crate::error::{domain, Result};
use crate::special::{discrete_spectrum, hyp2f1, hyp2f1_path, hyp2f1_scaled, HalfInt, Scaled, SpectralParam};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

/// `(tanh² r, cosh⁻² r)` computed without cancellation.
fn tanh2_sech2(r: f64) -> (f64, f64) {
    let e = (-2.0 * r).exp();
    let d = 1.0 + e;
    let t = -(-2.0 * r).exp_m1() / d;
    (t * t, 4.0 * e / (d * d))
}

fn ln_cosh(r: f64) -> f64 {
    r + (-2.0 * r).exp().ln_1p() - LN_2
}

/// Complex `exp(w) - 1` without cancellation near 0.
pub(crate) fn exp_m1(w: C64) -> C64 {
    let (s, co) = w.im.sin_cos();
    let half = (0.5 * w.im).sin();
    C64::new(w.re.exp_m1() * co - 2.0 * half * half, w.re.exp() * s)
}

/// The parameter used on the tanh² chart: on 𝔻_m the positive representative,
/// for which the series is a polynomial; elsewhere the one with `Re s <= 0`,
/// for which the series stays bounded as r grows.
fn chart_param(m: i64, s: C64) -> C64 {
    if s.im == 0.0 {
        if let Some(h) = HalfInt::from_f64(s.re) {
            if h.in_discrete(m) {
                return C64::new(s.re.abs(), 0.0);
            }
        }
    }
    if s.re > 0.0 {
        -s
    } else {
        s
    }
}

/// `ln φ_{m,s}(a_r)` (principal branch of the mantissa).
pub(crate) fn ln_phi(m: i64, s: C64, r: f64) -> Result<C64> {
    if !(r >= 0.0) {
        return Err(domain(format!("radius {r} must be nonnegative")));
    }
    if r == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let mf = m.unsigned_abs() as f64;
    let sp = chart_param(m, s);
    let (x, omx) = tanh2_sech2(r);
    let f = hyp2f1_scaled(sp + (1.0 + mf) / 2.0, sp + (1.0 - mf) / 2.0, C64::new(1.0, 0.0), x, omx)?;
    Ok(f.ln() - (sp * 2.0 + 1.0) * ln_cosh(r))
}

/// `φ_{m,s}(a_r) = (cosh r)^{-1-2s} 2F1((1+m)/2 + s, (1-m)/2 + s; 1; tanh² r)`.
pub fn phi(m: i64, s: SpectralParam, r: f64) -> Result<C64> {
    if r == 0.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let v = ln_phi(m, s.s, r)?;
    if v.re < -745.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    Ok(v.exp())
}

/// `ln φ_{m,s}(a_r)` at every radius of an increasing sequence, sharing one
/// continuation path.
pub fn ln_phi_radial(m: i64, s: C64, rs: &[f64]) -> Result<Vec<C64>> {
    if rs.windows(2).any(|w| !(w[0] <= w[1])) || rs.first().is_some_and(|&r| !(r >= 0.0)) {
        return Err(domain("radii must be nonnegative and increasing"));
    }
    let mf = m.unsigned_abs() as f64;
    let sp = chart_param(m, s);
    let pts: Vec<(f64, f64)> = rs.iter().map(|&r| tanh2_sech2(r)).collect();
    let fs = hyp2f1_path(sp + (1.0 + mf) / 2.0, sp + (1.0 - mf) / 2.0, C64::new(1.0, 0.0), &pts)?;
    Ok(fs.iter().zip(rs).map(|(f, &r)| f.ln() - (sp * 2.0 + 1.0) * ln_cosh(r)).collect())
}

/// `φ_{m,s}(a_r)` at every radius of an increasing sequence.
pub fn phi_radial(m: i64, s: SpectralParam, rs: &[f64]) -> Result<Vec<C64>> {
    Ok(ln_phi_radial(m, s.s, rs)?
        .into_iter()
        .map(|v| if v.re < -745.0 { C64::new(0.0, 0.0) } else { v.exp() })
        .collect())
}

/// The first hypergeometric form, `(cosh r)^{-m} 2F1((1-m)/2 - s, (1-m)/2 + s; 1; -sinh² r)`,
/// valid while `sinh² r < 1`.
pub fn phi_sinh_form(m: i64, s: SpectralParam, r: f64) -> Result<C64> {
    let sh2 = r.sinh().powi(2);
    if sh2 >= 1.0 {
        return Err(domain("the -sinh² r form needs sinh² r < 1"));
    }
    let mf = m as f64;
    let f = hyp2f1((1.0 - mf) / 2.0 - s.s, (1.0 - mf) / 2.0 + s.s, C64::new(1.0, 0.0), -sh2)?;
    Ok(f * r.cosh().powf(-mf))
}

/// The third hypergeometric form, `(cosh r)^{-1+2s} 2F1((1-m)/2 - s, (1+m)/2 - s; 1; tanh² r)`,
/// summed exactly as written (no choice of chart).
pub fn phi_third_form(m: i64, s: SpectralParam, r: f64) -> Result<C64> {
    let mf = m as f64;
    let (x, omx) = tanh2_sech2(r);
    let f = hyp2f1_scaled((1.0 - mf) / 2.0 - s.s, (1.0 + mf) / 2.0 - s.s, C64::new(1.0, 0.0), x, omx)?;
    Ok((f.ln() + (s.s * 2.0 - 1.0) * ln_cosh(r)).exp())
}

fn phi_big_scaled(m: i64, s: C64, r: f64) -> Result<Scaled> {
    if !(r > 0.0) {
        return Err(domain(format!("Φ needs r > 0, got {r}")));
    }
    let mf = m as f64;
    let (omy, y) = tanh2_sech2(r);
    let f = hyp2f1_scaled((1.0 - mf) / 2.0 - s, (1.0 + mf) / 2.0 - s, C64::new(1.0, 0.0) - s * 2.0, y, omy)?;
    Ok(f)
}

/// `ln Φ_{m,s}(a_r)`.
pub fn ln_phi_big(m: i64, s: C64, r: f64) -> Result<C64> {
    let f = phi_big_scaled(m, s, r)?;
    let ln2cosh = r + (-2.0 * r).exp().ln_1p();
    Ok(f.ln() + (s * 2.0 - 1.0) * ln2cosh)
}

/// `ln Φ_{m,s}(a_r)` at many positive radii (any order), sharing one path.
pub fn ln_phi_big_radial(m: i64, s: C64, rs: &[f64]) -> Result<Vec<C64>> {
    if rs.iter().any(|&r| !(r > 0.0)) {
        return Err(domain("Φ needs r > 0"));
    }
    let mf = m as f64;
    let mut order: Vec<usize> = (0..rs.len()).collect();
    // increasing argument cosh⁻² r means decreasing r
    order.sort_by(|&i, &j| rs[j].partial_cmp(&rs[i]).unwrap());
    let pts: Vec<(f64, f64)> = order
        .iter()
        .map(|&i| {
            let (omy, y) = tanh2_sech2(rs[i]);
            (y, omy)
        })
        .collect();
    let one = C64::new(1.0, 0.0);
    let fs = hyp2f1_path((1.0 - mf) / 2.0 - s, (1.0 + mf) / 2.0 - s, one - s * 2.0, &pts)?;
    let mut out = vec![C64::new(0.0, 0.0); rs.len()];
    for (k, &i) in order.iter().enumerate() {
        let r = rs[i];
        out[i] = fs[k].ln() + (s * 2.0 - 1.0) * (r + (-2.0 * r).exp().ln_1p());
    }
    Ok(out)
}

/// `Φ_{m,s}(a_r) = (2 cosh r)^{2s-1} 2F1((1-m)/2 - s, (1+m)/2 - s; 1-2s; cosh⁻² r)`.
///
/// Errors with a pole when `1 - 2s` is a nonpositive integer and the series
/// does not terminate first.
pub fn phi_big(m: i64, s: SpectralParam, r: f64) -> Result<C64> {
    let v = ln_phi_big(m, s.s, r)?;
    if v.re < -745.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    Ok(v.exp())
}

/// `ν_m(s, r) = Φ_{m,s}(a_r) e^{(1-2s)r} - 1`.
pub fn nu_remainder(m: i64, s: SpectralParam, r: f64) -> Result<C64> {
    let f = phi_big_scaled(m, s.s, r)?;
    let w = f.ln() + (s.s * 2.0 - 1.0) * (-2.0 * r).exp().ln_1p();
    Ok(exp_m1(w))
}

/// Growth regime of `|φ_{m,s}(a_r)|` as r → ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecayRegime {
    /// `s = 0`: `(1+r) e^{-r}`.
    Zero,
    /// `s ∈ 𝔻_m`: `e^{(-2|s|-1) r}`.
    Discrete,
    /// otherwise: `e^{(2|Re s|-1) r}`.
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayProfile {
    pub regime: DecayRegime,
    /// Exponential rate in r.
    pub rate: f64,
    /// Degree of the polynomial factor `(1+r)^k`.
    pub poly_degree: u32,
}

impl DecayProfile {
    /// Predicted `ln |φ|` up to an additive constant.
    pub fn ln_envelope(&self, r: f64) -> f64 {
        self.rate * r + self.poly_degree as f64 * (1.0 + r).ln()
    }
}

pub fn decay_profile(m: i64, s: SpectralParam) -> DecayProfile {
    if s.s == C64::new(0.0, 0.0) {
        DecayProfile { regime: DecayRegime::Zero, rate: -1.0, poly_degree: 1 }
    } else if s.in_discrete(m) {
        DecayProfile { regime: DecayRegime::Discrete, rate: -2.0 * s.s.re.abs() - 1.0, poly_degree: 0 }
    } else {
        DecayProfile { regime: DecayRegime::Generic, rate: 2.0 * s.s.re.abs() - 1.0, poly_degree: 0 }
    }
}

/// A triple `(m, s, r)` at which `φ_{m,s}(a_r)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalPoint {
    pub m: i64,
    pub s: SpectralParam,
    pub r: f64,
}

impl SphericalPoint {
    pub fn new(m: i64, s: SpectralParam, r: f64) -> Result<Self> {
        if !(r >= 0.0) {
            return Err(domain(format!("radius {r} must be nonnegative")));
        }
        Ok(SphericalPoint { m, s, r })
    }

    pub fn phi(&self) -> Result<C64> {
        phi(self.m, self.s, self.r)
    }
}

/// `φ_{m,s}` for every `s ∈ 𝔻_m`, as `(s, φ_{m,s}(a_r))`.
pub fn discrete_phis(m: i64, r: f64) -> Result<Vec<(HalfInt, f64)>> {
    discrete_spectrum(m)
        .points
        .iter()
        .map(|p| Ok((*p, phi(m, SpectralParam::real(p.value()), r)?.re)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::c_function;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn phi_at_identity_is_one() {
        for m in -5..6 {
            for s in [c(0.3, 2.0), c(-4.0, 0.1), c(0.0, 0.0)] {
                assert_eq!(phi(m, s.into(), 0.0).unwrap(), c(1.0, 0.0));
            }
        }
    }

    #[test]
    fn phi_matches_high_precision_values() {
        let cases = [
            (0, c(0.25, 0.0), 3.0, c(0.363_987_711_916_972_83, 0.0)),
            (3, c(0.2, 5.0), 2.0, c(0.064_061_238_585_276_07, 0.042_358_279_254_164_92)),
            (4, c(-0.3, 20.0), 0.7, c(-0.082_517_467_381_902_49, -0.044_469_964_158_167_655)),
            (2, c(0.1, 1.0), 25.0, c(1.064_838_064_274_893_9e-9, -2.263_253_855_080_814_3e-10)),
            (5, c(0.0, 0.5), 10.0, c(-1.528_298_908_397_463_5e-5, 0.0)),
            (1, c(0.4, -2.0), 0.05, c(0.989_180_301_176_650_0, -0.003_976_684_763_485_841)),
        ];
        for (m, s, r, want) in cases {
            let got = phi(m, s.into(), r).unwrap();
            assert!((got - want).norm() <= 1e-10 * want.norm() + 1e-25, "{m} {s} {r}: {got} vs {want}");
        }
    }

    #[test]
    fn phi_big_matches_high_precision_values() {
        let cases = [
            (0, c(-0.5, 0.3), 5.0, c(-4.494_558_984_209_776e-5, 6.406_838_461_454_973e-6)),
            (3, c(0.2, 5.0), 2.0, c(0.127_235_591_669_680_58, 0.272_743_922_848_109_04)),
            (4, c(-2.3, -7.0), 0.3, c(-0.149_699_864_994_675_58, 0.124_288_752_839_563_14)),
        ];
        for (m, s, r, want) in cases {
            let got = phi_big(m, s.into(), r).unwrap();
            assert!(close(got, want, 1e-10), "{m} {s} {r}: {got} vs {want}");
        }
        // far below the f64 range: compare logarithms
        let ln = ln_phi_big(1, c(-30.0, 4.0), 20.0).unwrap();
        let mag = (-1.412_592_572_110_148f64).hypot(0.317_701_083_858_870_7).ln() - 530.0 * 10f64.ln();
        assert!((ln.re - mag).abs() < 1e-10 * mag.abs());
        let arg = (0.317_701_083_858_870_7f64).atan2(-1.412_592_572_110_148);
        let d = (ln.im - arg) / std::f64::consts::TAU;
        assert!((d - d.round()).abs() < 1e-9);
    }

    #[test]
    fn phi_big_direct_series_m0() {
        // Φ_{0,1/4}(a_3) from 50 terms of the defining series.
        let (r, s) = (3.0f64, 0.25);
        let y = 1.0 / r.cosh().powi(2);
        let (a, b, cc) = (0.5 - s, 0.5 - s, 1.0 - 2.0 * s);
        let mut t = 1.0;
        let mut sum = 1.0;
        for k in 0..50 {
            let kf = k as f64;
            t *= (a + kf) * (b + kf) / ((cc + kf) * (kf + 1.0)) * y;
            sum += t;
        }
        let want = (2.0 * r.cosh()).powf(2.0 * s - 1.0) * sum;
        let got = phi_big(0, SpectralParam::real(s), r).unwrap();
        assert!((got.re - want).abs() < 1e-14 * want && got.im == 0.0);
    }

    #[test]
    fn phi_big_pole_and_domain() {
        assert!(phi_big(0, SpectralParam::real(1.0), 1.0).is_err());
        assert!(phi_big(0, SpectralParam::real(0.3), 0.0).is_err());
        // 2s = -1 is fine: 1 - 2s = 2
        assert!(phi_big(0, SpectralParam::real(-0.5), 1.0).is_ok());
    }

    fn sample() -> impl Strategy<Value = (i64, C64, f64)> {
        (-7i64..8, -1.0f64..1.0, -30.0f64..30.0, 0.0f64..6.0).prop_map(|(m, a, b, r)| (m, c(a, b), r))
    }

    proptest! {
        #[test]
        fn phi_symmetries((m, s, r) in sample()) {
            let v = phi(m, s.into(), r).unwrap();
            let tol = 1e-9 * v.norm() + 1e-14;
            prop_assert!((phi(-m, s.into(), r).unwrap() - v).norm() <= tol);
            prop_assert!((phi(m, (-s).into(), r).unwrap() - v).norm() <= tol);
        }

        #[test]
        fn phi_dominated_by_m0_real((m, s, r) in sample()) {
            let v = phi(m, s.into(), r).unwrap().norm();
            let bound = phi(0, SpectralParam::real(s.re.abs()), r).unwrap().re;
            prop_assert!(v <= bound * (1.0 + 1e-9));
        }

        #[test]
        fn three_forms_agree(m in -7i64..8, a in -1.5f64..1.5, b in -10.0f64..10.0, r in 0.0f64..0.8) {
            let s = SpectralParam::new(a, b);
            let v = phi(m, s, r).unwrap();
            let tol = 1e-10 * v.norm().max(1e-3);
            prop_assert!((phi_sinh_form(m, s, r).unwrap() - v).norm() <= tol);
            prop_assert!((phi_third_form(m, s, r).unwrap() - v).norm() <= tol);
        }
    }

    #[test]
    fn connection_identity_spot_checks() {
        for (m, s, r) in [(0, c(0.3, 1.0), 1.0), (5, c(-0.7, 3.5), 0.2), (-4, c(0.1, -12.0), 4.0), (7, c(0.95, 0.4), 2.5)] {
            let sp = SpectralParam::from(s);
            let lhs = phi(m, sp, r).unwrap();
            let rhs = c_function(m, sp).unwrap() * phi_big(m, sp, r).unwrap()
                + c_function(m, (-s).into()).unwrap() * phi_big(m, (-s).into(), r).unwrap();
            assert!(close(lhs, rhs, 1e-9), "{m} {s} {r}: {lhs} {rhs}");
        }
    }

    #[test]
    fn leading_behaviour_and_nu() {
        for m in [0i64, 3, 6] {
            for s in [c(0.2, 1.0), c(-0.4, -3.0), c(0.45, 0.0)] {
                let nu = nu_remainder(m, s.into(), 25.0).unwrap();
                assert!(nu.norm() < 1e-8, "{m} {s} {nu}");
                let lead = phi_big(m, s.into(), 12.0).unwrap() * ((c(1.0, 0.0) - s * 2.0) * 12.0).exp();
                assert!((lead - 1.0).norm() < 1e-4);
            }
        }
        let nu = nu_remainder(0, SpectralParam::new(-0.5, 0.3), 5.0).unwrap();
        assert!(nu.norm() < 0.1);
    }

    #[test]
    fn nu_bounded_on_left_half_plane() {
        for m in [0i64, 1, 4, 7] {
            let mut sup: f64 = 0.0;
            let mut sup_far: f64 = 0.0;
            for i in 0..=20 {
                let re = -3.0 * i as f64 / 20.0;
                for im in [0.0, 0.5, 2.0, 10.0, 40.0] {
                    for r in [0.1, 0.3, 1.0, 3.0, 8.0] {
                        let s = c(re, im);
                        if let Ok(nu) = nu_remainder(m, s.into(), r) {
                            sup = sup.max(nu.norm());
                            if r >= 3.0 {
                                sup_far = sup_far.max(nu.norm());
                            }
                        }
                    }
                }
            }
            assert!(sup.is_finite() && sup < 50.0, "m={m} sup={sup}");
            assert!(sup_far < sup.max(1e-12));
        }
    }

    #[test]
    fn decay_examples() {
        let d = decay_profile(0, SpectralParam::real(0.0));
        assert_eq!((d.regime, d.rate, d.poly_degree), (DecayRegime::Zero, -1.0, 1));
        let d = decay_profile(4, SpectralParam::real(1.5));
        assert_eq!((d.regime, d.rate), (DecayRegime::Discrete, -4.0));
        let d = decay_profile(4, SpectralParam::new(0.2, 5.0));
        assert_eq!(d.regime, DecayRegime::Generic);
        assert!((d.rate + 0.6).abs() < 1e-15);
    }

    #[test]
    fn empirical_decay_matches_profile() {
        let cases = [(0, c(0.0, 0.0)), (4, c(1.5, 0.0)), (4, c(-0.5, 0.0)), (3, c(0.2, 5.0)), (7, c(0.0, 2.0)), (2, c(0.7, 0.0))];
        for (m, s) in cases {
            let d = decay_profile(m, s.into());
            let vals: Vec<f64> = (0..=20)
                .map(|i| {
                    let r = 2.0 + 0.5 * i as f64;
                    ln_phi(m, s, r).unwrap().re - d.ln_envelope(r)
                })
                .collect();
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            // oscillating cases dip at zeros; the envelope must not be exceeded
            assert!(hi - vals[0] < 3.0, "m={m} s={s}: {vals:?}");
            if s.im == 0.0 {
                assert!(hi - lo < 3.0, "m={m} s={s}: {vals:?}");
            }
        }
    }

    #[test]
    fn radial_path_matches_pointwise() {
        let rs: Vec<f64> = (0..60).map(|i| 0.5 * i as f64).collect();
        for (m, s) in [(0, c(0.0, 3.0)), (4, c(1.5, 0.0)), (3, c(0.3, 40.0)), (7, c(-0.9, 0.2))] {
            let path = phi_radial(m, s.into(), &rs).unwrap();
            for (r, v) in rs.iter().zip(&path) {
                let w = phi(m, s.into(), *r).unwrap();
                assert!((v - w).norm() <= 1e-10 * w.norm() + 1e-300, "{m} {s} {r}: {v} {w}");
            }
        }
        assert!(phi_radial(0, SpectralParam::real(0.0), &[1.0, 0.5]).is_err());
    }

    #[test]
    fn big_phi_path_matches_pointwise() {
        let rs = [3.0, 0.05, 1.0, 12.0, 0.4];
        for (m, s) in [(0, c(-0.3, 5.0)), (5, c(-2.2, -40.0)), (2, c(-7.0, 1.0))] {
            let path = ln_phi_big_radial(m, s, &rs).unwrap();
            for (r, v) in rs.iter().zip(&path) {
                let w = ln_phi_big(m, s, *r).unwrap();
                assert!((v.exp() - w.exp()).norm() <= 1e-10 * w.exp().norm(), "{m} {s} {r}");
            }
        }
    }

    #[test]
    fn discrete_values_are_real_polynomials() {
        for (s, v) in discrete_phis(4, 2.0).unwrap() {
            let want = phi(4, SpectralParam::real(s.value()), 2.0).unwrap();
            assert_eq!(v, want.re);
        }
        // φ_{4,3/2}(a_r) = cosh(r)^{-4}
        let v = phi(4, SpectralParam::real(1.5), 1.3).unwrap();
        assert!((v.re - 1.3f64.cosh().powi(-4)).abs() < 1e-15);
    }
}
