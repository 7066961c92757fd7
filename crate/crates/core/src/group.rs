//! The 2x2 matrix model of SL(2,R) with its Cartan and Iwasawa charts.
//!
//! Conventions: `k(θ) = [[cos θ, sin θ], [-sin θ, cos θ]]`,
//! `a(r) = diag(e^r, e^-r)`, `n(t) = [[1, 0], [t, 1]]`.

use crate::error::{domain, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::ops::Mul;

const DET_TOL: f64 = 1e-12;
const DET_RENORM_TOL: f64 = 1e-9;
/// Below this `sinh r` the element is treated as a pure rotation.
const ROTATION_EPS: f64 = 1e-14;

/// A point of SL(2,R), stored as the matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Cartan coordinates: `g = k(theta) a(r) k(psi)` with `theta ∈ [0,2π)`, `psi ∈ [0,π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartanCoords {
    pub theta: f64,
    pub r: f64,
    pub psi: f64,
}

/// Iwasawa coordinates: `g = n(t) a(rr) k(theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IwasawaCoords {
    pub t: f64,
    pub rr: f64,
    pub theta: f64,
}

impl GroupElement {
    /// Builds an element, renormalizing slightly non-unimodular input.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|x| x.is_finite()) {
            return Err(domain("matrix entries must be finite"));
        }
        let det = a * d - b * c;
        let dev = (det - 1.0).abs();
        if dev <= DET_TOL {
            Ok(GroupElement { a, b, c, d })
        } else if dev <= DET_RENORM_TOL {
            let s = 1.0 / det.sqrt();
            Ok(GroupElement { a: a * s, b: b * s, c: c * s, d: d * s })
        } else {
            Err(domain(format!("determinant {det} is not 1")))
        }
    }

    pub fn identity() -> Self {
        GroupElement { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn k(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        GroupElement { a: c, b: s, c: -s, d: c }
    }

    pub fn a_r(r: f64) -> Self {
        GroupElement { a: r.exp(), b: 0.0, c: 0.0, d: (-r).exp() }
    }

    pub fn n(t: f64) -> Self {
        GroupElement { a: 1.0, b: 0.0, c: t, d: 1.0 }
    }

    pub fn from_cartan(c: &CartanCoords) -> Self {
        Self::k(c.theta) * Self::a_r(c.r) * Self::k(c.psi)
    }

    pub fn from_iwasawa(w: &IwasawaCoords) -> Self {
        Self::n(w.t) * Self::a_r(w.rr) * Self::k(w.theta)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        GroupElement { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Largest entrywise difference to another element.
    pub fn distance(&self, o: &GroupElement) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Rounding in `ad - bc` grows like `cosh 2r = (a² + b² + c² + d²)/2`, so
    /// elements built by multiplication are judged relative to that size.
    fn check(&self) -> Result<()> {
        let size = 0.5 * (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d);
        if !((self.det() - 1.0).abs() <= DET_RENORM_TOL * size.max(1.0)) {
            return Err(domain(format!("determinant {} is not 1", self.det())));
        }
        Ok(())
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, o: GroupElement) -> GroupElement {
        GroupElement {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

fn wrap(x: f64, period: f64) -> f64 {
    let y = x.rem_euclid(period);
    if y >= period { 0.0 } else { y }
}

/// Radial Cartan coordinate alone, `r = asinh(sqrt((a-d)^2 + (b+c)^2) / 2)`.
pub fn cartan_radius(g: &GroupElement) -> f64 {
    (0.5 * (g.a - g.d).hypot(g.b + g.c)).asinh()
}

/// Closed-form Cartan decomposition.
///
/// With `g = k(θ) a(r) k(ψ)` one has `a+d = 2 cosh r cos(θ+ψ)`,
/// `b-c = 2 cosh r sin(θ+ψ)`, `a-d = 2 sinh r cos(ψ-θ)` and `b+c = 2 sinh r sin(ψ-θ)`.
pub fn cartan_decompose(g: &GroupElement) -> Result<CartanCoords> {
    g.check()?;
    let sh = 0.5 * (g.a - g.d).hypot(g.b + g.c);
    let r = sh.asinh();
    let sum = (g.b - g.c).atan2(g.a + g.d);
    if sh < ROTATION_EPS {
        return Ok(CartanCoords { theta: wrap(sum, TAU), r: 0.0, psi: 0.0 });
    }
    let diff = (g.b + g.c).atan2(g.a - g.d);
    let mut theta = 0.5 * (sum - diff);
    let mut psi = 0.5 * (sum + diff);
    // (θ, ψ) and (θ+π, ψ-π) give the same element; pick ψ ∈ [0, π).
    let k = (psi / PI).floor();
    psi -= k * PI;
    theta += k * PI;
    if psi >= PI {
        psi -= PI;
        theta += PI;
    }
    if psi < 0.0 {
        psi = 0.0;
    }
    Ok(CartanCoords { theta: wrap(theta, TAU), r, psi })
}

/// Closed-form Iwasawa decomposition `g = n(t) a(rr) k(θ)`.
pub fn iwasawa_decompose(g: &GroupElement) -> Result<IwasawaCoords> {
    g.check()?;
    let n2 = g.a * g.a + g.b * g.b;
    let rr = 0.5 * n2.ln();
    let theta = wrap(g.b.atan2(g.a), TAU);
    let t = (g.c * g.a + g.d * g.b) / n2;
    Ok(IwasawaCoords { t, rr, theta })
}

/// Operator norm `‖g‖ = e^r`.
pub fn op_norm(g: &GroupElement) -> Result<f64> {
    g.check()?;
    Ok(cartan_radius(g).exp())
}

/// Haar density `2 sinh 2r` in Cartan coordinates.
pub fn haar_density(r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(domain(format!("radius {r} must be nonnegative")));
    }
    Ok(2.0 * (2.0 * r).sinh())
}

/// The weight `ω_α(x) = ‖x‖^α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weight {
    pub alpha: f64,
}

impl Weight {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(domain(format!("weight exponent {alpha} must be finite and nonnegative")));
        }
        Ok(Weight { alpha })
    }

    /// `e^{αr}` as a function of the Cartan radius.
    pub fn at_radius(&self, r: f64) -> f64 {
        (self.alpha * r).exp()
    }
}

pub fn weight_eval(w: &Weight, g: &GroupElement) -> Result<f64> {
    g.check()?;
    Ok(w.at_radius(cartan_radius(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sv_max(g: &GroupElement) -> f64 {
        // Largest singular value from the eigenvalues of gᵀg.
        let p = g.a * g.a + g.c * g.c;
        let q = g.b * g.b + g.d * g.d;
        let x = g.a * g.b + g.c * g.d;
        let tr = p + q;
        let det = p * q - x * x;
        (0.5 * (tr + (tr * tr - 4.0 * det).max(0.0).sqrt())).sqrt()
    }

    #[test]
    fn identity_has_zero_coordinates() {
        let c = cartan_decompose(&GroupElement::identity()).unwrap();
        assert_eq!((c.theta, c.r, c.psi), (0.0, 0.0, 0.0));
        let w = iwasawa_decompose(&GroupElement::identity()).unwrap();
        assert_eq!((w.t, w.rr, w.theta), (0.0, 0.0, 0.0));
    }

    #[test]
    fn a2_is_already_cartan() {
        let c = cartan_decompose(&GroupElement::a_r(2.0)).unwrap();
        assert!(c.theta.abs() < 1e-15 && (c.r - 2.0).abs() < 1e-14 && c.psi.abs() < 1e-15);
    }

    #[test]
    fn n1_is_already_iwasawa() {
        let w = iwasawa_decompose(&GroupElement::n(1.0)).unwrap();
        assert!((w.t - 1.0).abs() < 1e-15 && w.rr.abs() < 1e-15 && w.theta.abs() < 1e-15);
    }

    #[test]
    fn rotation_maps_to_theta() {
        let c = cartan_decompose(&GroupElement::k(2.5)).unwrap();
        assert!(c.r == 0.0 && c.psi == 0.0 && (c.theta - 2.5).abs() < 1e-14);
    }

    #[test]
    fn norm_examples() {
        assert!((op_norm(&GroupElement::a_r(1.5)).unwrap() - 4.481_689_070_338_065).abs() < 1e-12);
        assert!((op_norm(&GroupElement::k(0.7)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn haar_density_limits() {
        assert_eq!(haar_density(0.0).unwrap(), 0.0);
        assert!((haar_density(1e-6).unwrap() / 4e-6 - 1.0).abs() < 1e-10);
        assert!((haar_density(20.0).unwrap() / 40f64.exp() - 1.0).abs() < 1e-15);
        assert!(haar_density(-0.1).is_err());
    }

    #[test]
    fn weight_examples() {
        let g = GroupElement::k(0.3) * GroupElement::a_r(1.0) * GroupElement::k(1.2);
        assert!((weight_eval(&Weight::new(0.0).unwrap(), &g).unwrap() - 1.0).abs() < 1e-15);
        let v = weight_eval(&Weight::new(2.0).unwrap(), &g).unwrap();
        assert!((v / 2f64.exp() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_determinant() {
        assert!(GroupElement::new(2.0, 0.0, 0.0, 1.0).is_err());
        let g = GroupElement::new(1.0 + 1e-10, 0.0, 0.0, 1.0).unwrap();
        assert!((g.det() - 1.0).abs() < 1e-15);
        assert!(GroupElement::new(f64::NAN, 0.0, 0.0, 1.0).is_err());
        let bad = GroupElement { a: 3.0, b: 0.0, c: 0.0, d: 1.0 };
        assert!(cartan_decompose(&bad).is_err());
        assert!(iwasawa_decompose(&bad).is_err());
    }

    fn element() -> impl Strategy<Value = GroupElement> {
        (-3.0f64..3.0, -2.5f64..2.5, 0.0f64..TAU)
            .prop_map(|(t, r, th)| GroupElement::from_iwasawa(&IwasawaCoords { t, rr: r, theta: th }))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn cartan_round_trip(g in element()) {
            let c = cartan_decompose(&g).unwrap();
            prop_assert!(c.r >= 0.0 && (0.0..TAU).contains(&c.theta) && (0.0..PI).contains(&c.psi));
            let back = GroupElement::from_cartan(&c);
            let scale = 1.0f64.max(op_norm(&g).unwrap());
            prop_assert!(back.distance(&g) < 1e-10 * scale, "{:?} {:?}", g, back);
        }

        #[test]
        fn iwasawa_round_trip(g in element()) {
            let w = iwasawa_decompose(&g).unwrap();
            let back = GroupElement::from_iwasawa(&w);
            prop_assert!(back.distance(&g) < 1e-10 * 1.0f64.max(op_norm(&g).unwrap()));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn norm_properties(g in element(), h in element(), alpha in 0.0f64..3.0) {
            let ng = op_norm(&g).unwrap();
            prop_assert!((ng - sv_max(&g)).abs() < 1e-10 * ng);
            prop_assert!((op_norm(&g.inverse()).unwrap() - ng).abs() < 1e-10 * ng);
            let nh = op_norm(&h).unwrap();
            prop_assert!(op_norm(&(g * h)).unwrap() <= ng * nh * (1.0 + 1e-12));
            let w = Weight::new(alpha).unwrap();
            let (wg, wh) = (weight_eval(&w, &g).unwrap(), weight_eval(&w, &h).unwrap());
            prop_assert!(wg >= 1.0 - 1e-15);
            prop_assert!((weight_eval(&w, &g.inverse()).unwrap() - wg).abs() < 1e-9 * wg);
            prop_assert!(weight_eval(&w, &(g * h)).unwrap() <= wg * wh * (1.0 + 1e-12));
            let rc = cartan_decompose(&g).unwrap().r;
            prop_assert!((cartan_decompose(&g.inverse()).unwrap().r - rc).abs() < 1e-10);
        }
    }
}
