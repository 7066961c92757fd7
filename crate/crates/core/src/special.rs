//! Log-Gamma, the Gauss function 2F1 on the real interval, the c-function
//! `c_m` and its pole data.

use crate::error::{domain, Error, Result};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// `B_{2k} / (2k (2k-1))` for k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Returns `Some(n)` when `z` is (numerically) the integer `n <= 0`.
pub(crate) fn nonpositive_integer(z: C64, tol: f64) -> Option<i64> {
    let n = z.re.round();
    let t = tol * (1.0 + z.norm());
    if n <= 0.0 && (z.re - n).abs() <= t && z.im.abs() <= t {
        Some(n as i64)
    } else {
        None
    }
}

/// Logarithm of the Gamma function, continued analytically from the positive axis.
///
/// Shifts into `Re z >= 15` (or `|Im z| >= 15`) and uses ten Stirling terms;
/// `Re z < 1/2` goes through the reflection formula.
pub fn log_gamma(z: C64) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("log_gamma of a non-finite argument"));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { at: z.re as i64, what: "Gamma".into() });
    }
    if z.re < 0.5 {
        let lns = ln_sin_pi(z);
        return Ok(c(LN_PI, 0.0) - lns - log_gamma(c(1.0, 0.0) - z)?);
    }
    let shift = if z.im.abs() >= 15.0 { 0 } else { (15.0 - z.re).ceil().max(0.0) as usize };
    let w = z + shift as f64;
    let mut acc = (w - 0.5) * w.ln() - w + LN_2PI_HALF;
    let winv = w.inv();
    let w2 = winv * winv;
    let mut p = winv;
    for coef in STIRLING {
        acc += p * coef;
        p *= w2;
    }
    for k in 0..shift {
        acc -= (z + k as f64).ln();
    }
    Ok(acc)
}

/// `ln sin(πz)`, avoiding overflow for large `|Im z|`.
fn ln_sin_pi(z: C64) -> C64 {
    if z.im.abs() < 10.0 {
        return (z * PI).sin().ln();
    }
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(πz) = (i/2) e^{-iπz} (1 - e^{2iπz}), small correction for Im z > 0.
    let i = c(0.0, 1.0);
    let e = (i * z * (2.0 * PI)).exp();
    -i * z * PI + (c(1.0, 0.0) - e).ln() + c(0.5f64.ln(), PI / 2.0)
}

/// The Gamma function.
pub fn gamma(z: C64) -> Result<C64> {
    Ok(log_gamma(z)?.exp())
}

/// A complex number stored as `mant * exp(ln_scale)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scaled {
    pub mant: C64,
    pub ln_scale: f64,
}

impl Scaled {
    pub fn value(&self) -> C64 {
        self.mant * self.ln_scale.exp()
    }

    /// Complex logarithm of the value (branch of the mantissa's principal log).
    pub fn ln(&self) -> C64 {
        self.mant.ln() + self.ln_scale
    }
}

/// Sums the hypergeometric series; returns (sum, Σ k t_k, max |t_k|) or `None`
/// when the series has not settled within `max_terms`.
fn series(a: C64, b: C64, cc: C64, x: f64, max_terms: usize) -> Option<(C64, C64, f64)> {
    let mut t = c(1.0, 0.0);
    let mut sum = t;
    let mut dsum = c(0.0, 0.0);
    let mut tmax = 1.0f64;
    let mut quiet = 0;
    for k in 0..max_terms {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((cc + kf) * (kf + 1.0)) * x;
        t *= ratio;
        sum += t;
        dsum += t * (kf + 1.0);
        let tn = t.norm();
        tmax = tmax.max(tn);
        if tn <= 1e-17 * sum.norm() && ratio.norm() < 0.95 {
            quiet += 1;
            if quiet >= 2 {
                return Some((sum, dsum, tmax));
            }
        } else {
            quiet = 0;
        }
        if tn == 0.0 {
            return Some((sum, dsum, tmax));
        }
    }
    None
}

/// Gauss hypergeometric function `2F1(a, b; c; x)` for real `x ∈ (-1, 1)`.
///
/// Terminating series (a or b a nonpositive integer) are summed exactly.
/// Otherwise the power series is used when it converges without cancellation,
/// and the hypergeometric equation is integrated by Taylor steps otherwise.
pub fn hyp2f1(a: C64, b: C64, cc: C64, x: f64) -> Result<C64> {
    Ok(hyp2f1_scaled(a, b, cc, x, 1.0 - x)?.value())
}

/// As [`hyp2f1`], with the complement `omx = 1 - x` supplied accurately and the
/// result returned in scaled form.
pub(crate) fn hyp2f1_scaled(a: C64, b: C64, cc: C64, x: f64, omx: f64) -> Result<Scaled> {
    if !(x > -1.0 && x <= 1.0 && omx > 0.0) {
        return Err(domain(format!("2F1 argument {x} outside (-1, 1)")));
    }
    let one = Scaled { mant: c(1.0, 0.0), ln_scale: 0.0 };
    let degree = [a, b].iter().filter_map(|&p| nonpositive_integer(p, 1e-12)).map(|n| -n).min();
    let c_pole = nonpositive_integer(cc, 1e-12).map(|n| -n);
    if let Some(n) = degree {
        if let Some(k) = c_pole {
            if n > k {
                return Err(Error::Pole { at: -k, what: "2F1 lower parameter".into() });
            }
        }
        let mut t = c(1.0, 0.0);
        let mut sum = t;
        for k in 0..n {
            let kf = k as f64;
            t *= (a + kf) * (b + kf) / ((cc + kf) * (kf + 1.0)) * x;
            sum += t;
        }
        return Ok(Scaled { mant: sum, ln_scale: 0.0 });
    }
    if let Some(k) = c_pole {
        return Err(Error::Pole { at: -k, what: "2F1 lower parameter".into() });
    }
    if x == 0.0 {
        return Ok(one);
    }
    if x.abs() <= 0.9 {
        if let Some((s, _, tmax)) = series(a, b, cc, x, 3000) {
            if tmax <= 1e3 * s.norm() {
                return Ok(Scaled { mant: s, ln_scale: 0.0 });
            }
        }
    }
    march(a, b, cc, x, omx)
}

/// Taylor-step integrator for `x(1-x)y'' + (c-(a+b+1)x)y' - ab y = 0`.
///
/// The state carries the abscissa together with its complement so that
/// targets extremely close to 1 keep full relative precision.
struct Stepper {
    ab: C64,
    apb1: C64,
    cc: C64,
    xc: f64,
    omc: f64,
    y: C64,
    dy: C64,
    ln_scale: f64,
    z: Vec<C64>,
}

impl Stepper {
    /// Starts from the power series at a point where it has no cancellation,
    /// found by halving `x_hint`.
    fn start(a: C64, b: C64, cc: C64, x_hint: f64) -> Result<Self> {
        let mut x0 = x_hint;
        for _ in 0..200 {
            if let Some((s, ds, tmax)) = series(a, b, cc, x0, 600) {
                if tmax <= 10.0 * s.norm().max(1e-300) {
                    return Ok(Stepper {
                        ab: a * b,
                        apb1: a + b + 1.0,
                        cc,
                        xc: x0,
                        omc: 1.0 - x0,
                        y: s,
                        dy: ds / x0,
                        ln_scale: 0.0,
                        z: Vec::with_capacity(256),
                    });
                }
            }
            x0 *= 0.5;
        }
        Err(Error::Resolution("2F1: no benign starting point".into()))
    }

    fn value(&self) -> Scaled {
        Scaled { mant: self.y, ln_scale: self.ln_scale }
    }

    fn advance_to(&mut self, x: f64, omx: f64) -> Result<()> {
        let ab_norm = self.ab.norm();
        loop {
            let near_one = x > 0.5 && self.xc > 0.25;
            let remaining = if near_one { self.omc - omx } else { x - self.xc };
            let tiny = if near_one { 1e-15 * omx } else { 1e-16 * x.abs() };
            if remaining.abs() <= tiny {
                self.xc = x;
                self.omc = omx;
                return Ok(());
            }
            let (xc, omc) = (self.xc, self.omc);
            let p0 = xc * omc;
            let q0 = self.cc - self.apb1 * xc;
            let kloc = (ab_norm / p0.abs()).sqrt() + q0.norm() / p0.abs();
            let radius = xc.abs().min(omc);
            let hmax = (0.5 * radius).min(2.0 / kloc.max(1e-300));
            let last = remaining.abs() <= hmax;
            let h = if last { remaining } else { hmax * remaining.signum() };
            let p1 = omc - xc;
            let z = &mut self.z;
            z.clear();
            z.push(self.y);
            z.push(self.dy * h);
            let mut zmax = self.y.norm().max(z[1].norm());
            let mut quiet = 0;
            let mut k = 0usize;
            while k < 600 {
                let kf = k as f64;
                let t1 = (q0 + p1 * kf) * ((kf + 1.0) * h) * z[k + 1];
                let t2 = (self.apb1 * (-kf) - self.ab - kf * (kf - 1.0)) * (h * h) * z[k];
                let next = -(t1 + t2) / (p0 * (kf + 2.0) * (kf + 1.0));
                z.push(next);
                let n = next.norm();
                zmax = zmax.max(n);
                if n <= 1e-18 * zmax {
                    quiet += 1;
                    if quiet >= 3 {
                        break;
                    }
                } else {
                    quiet = 0;
                }
                k += 1;
            }
            if k >= 600 {
                return Err(Error::Resolution("2F1: Taylor step did not converge".into()));
            }
            let mut ny = C64::new(0.0, 0.0);
            let mut ndy = C64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                ny += zj;
                ndy += zj * j as f64;
            }
            self.y = ny;
            self.dy = ndy / h;
            if last {
                self.xc = x;
                self.omc = omx;
            } else {
                self.xc += h;
                self.omc -= h;
            }
            let nrm = self.y.norm().max(self.dy.norm() * radius);
            if nrm > 1e100 || (nrm < 1e-100 && nrm > 0.0) {
                self.y /= nrm;
                self.dy /= nrm;
                self.ln_scale += nrm.ln();
            }
            if !(self.y.re.is_finite() && self.y.im.is_finite()) {
                return Err(Error::Resolution("2F1: overflow during continuation".into()));
            }
            if last {
                return Ok(());
            }
        }
    }
}

fn march(a: C64, b: C64, cc: C64, x: f64, omx: f64) -> Result<Scaled> {
    let hint = if x.abs() > 0.5 { 0.5 * x.signum() } else { 0.5 * x };
    let mut st = Stepper::start(a, b, cc, hint)?;
    st.advance_to(x, omx)?;
    Ok(st.value())
}

/// `2F1(a, b; c; x)` at several points `(x, 1 - x)` with `0 <= x <= 1`,
/// sorted by increasing x, using a single continuation path.
pub(crate) fn hyp2f1_path(a: C64, b: C64, cc: C64, pts: &[(f64, f64)]) -> Result<Vec<Scaled>> {
    let one = Scaled { mant: C64::new(1.0, 0.0), ln_scale: 0.0 };
    let first = pts.iter().position(|p| p.0 > 0.0);
    let polynomial = [a, b].iter().any(|&p| nonpositive_integer(p, 1e-12).is_some());
    if polynomial || nonpositive_integer(cc, 1e-12).is_some() || first.is_none() {
        return pts.iter().map(|&(x, omx)| if x == 0.0 { Ok(one) } else { hyp2f1_scaled(a, b, cc, x, omx) }).collect();
    }
    let first = first.unwrap();
    let mut out = vec![one; first];
    let x1 = pts[first].0;
    let mut st = Stepper::start(a, b, cc, x1.min(0.5))?;
    for &(x, omx) in &pts[first..] {
        if x < st.xc {
            // below the benign start: the series itself is benign there
            let (s, _, _) = series(a, b, cc, x, 600)
                .ok_or_else(|| Error::Resolution("2F1: series failed below start".into()))?;
            out.push(Scaled { mant: s, ln_scale: 0.0 });
            continue;
        }
        st.advance_to(x, omx)?;
        out.push(st.value());
    }
    Ok(out)
}

/// The complex spectral parameter `s` with eigenvalue `s² - 1/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParam {
    pub s: C64,
}

impl SpectralParam {
    pub fn new(re: f64, im: f64) -> Self {
        SpectralParam { s: c(re, im) }
    }

    pub fn real(x: f64) -> Self {
        Self::new(x, 0.0)
    }

    pub fn imag(lambda: f64) -> Self {
        Self::new(0.0, lambda)
    }

    pub fn eigenvalue(&self) -> C64 {
        self.s * self.s - 0.25
    }

    /// Membership in the closed strip `|Re s| <= δ/2`.
    pub fn in_strip(&self, delta: f64) -> bool {
        2.0 * self.s.re.abs() <= delta
    }

    pub fn in_discrete(&self, m: i64) -> bool {
        self.s.im == 0.0 && HalfInt::from_f64(self.s.re).is_some_and(|h| h.in_discrete(m))
    }
}

impl From<C64> for SpectralParam {
    fn from(s: C64) -> Self {
        SpectralParam { s }
    }
}

/// An exact half-integer `twice / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt {
    pub twice: i64,
}

impl HalfInt {
    pub fn new(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn from_f64(x: f64) -> Option<Self> {
        let t = (2.0 * x).round();
        if (2.0 * x - t).abs() <= 1e-12 * (1.0 + x.abs()) {
            Some(HalfInt { twice: t as i64 })
        } else {
            None
        }
    }

    pub fn value(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn abs(&self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    /// `|m| - 1 - 2|s| ∈ 2ℕ` and `s != 0`.
    pub fn in_discrete(&self, m: i64) -> bool {
        let k = m.abs() - 1 - self.twice.abs();
        self.twice != 0 && k >= 0 && k % 2 == 0
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::Parse(format!("not a half-integer: {text}"));
        if let Some((num, den)) = t.split_once('/') {
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "2" => Ok(HalfInt { twice: n }),
                "1" => Ok(HalfInt { twice: 2 * n }),
                _ => Err(bad()),
            }
        } else {
            let n: i64 = t.parse().map_err(|_| bad())?;
            Ok(HalfInt { twice: 2 * n })
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// The finite set `𝔻_m = {s ∈ ℝ∖{0} : |m| - 1 - 2|s| ∈ 2ℕ}`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteSpectrum {
    pub m: i64,
    pub points: Vec<HalfInt>,
}

impl DiscreteSpectrum {
    pub fn positive(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.points.iter().copied().filter(|p| p.twice > 0)
    }

    pub fn contains(&self, s: f64) -> bool {
        HalfInt::from_f64(s).is_some_and(|h| h.in_discrete(self.m))
    }

    /// Distance from a real number to the set (infinite when empty).
    pub fn distance(&self, x: f64) -> f64 {
        self.points.iter().map(|p| (p.value() - x).abs()).fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.points.iter().map(|p| p.value().abs()).fold(0.0, f64::max)
    }
}

pub fn discrete_spectrum(m: i64) -> DiscreteSpectrum {
    let mut pos = Vec::new();
    let mut t = m.abs() - 1;
    while t > 0 {
        pos.push(t);
        t -= 2;
    }
    let mut points: Vec<HalfInt> = pos.iter().map(|&t| HalfInt::new(-t)).collect();
    points.extend(pos.iter().rev().map(|&t| HalfInt::new(t)));
    points.sort();
    DiscreteSpectrum { m, points }
}

/// Splits `c_m(s) = P(s) Γ(x) / (√π Γ(x + k + 1/2))` with a polynomial `P`
/// absorbing the cancelling Gamma poles of the duplication formula.
fn c_parts(m: i64, s: C64) -> (C64, C64, C64) {
    let am = m.abs();
    let mut p = c(1.0, 0.0);
    if am % 2 == 1 {
        let k = (am - 1) / 2;
        for j in 1..=k {
            p *= s - j as f64;
        }
        (p, s + 0.5, s + 0.5 + k as f64 + 0.5)
    } else {
        let k = am / 2;
        for j in 1..=k {
            p *= s + 0.5 - j as f64;
        }
        (p, s, s + k as f64 + 0.5)
    }
}

/// The Harish-Chandra function
/// `c_m(s) = 2^{1-2s} Γ(2s) / (Γ((1+2s+m)/2) Γ((1+2s-m)/2))`.
///
/// Poles of the numerator give [`Error::Pole`]; poles of the denominator give 0.
pub fn c_function(m: i64, s: SpectralParam) -> Result<C64> {
    let (p, num, den) = c_parts(m, s.s);
    if let Some(n) = nonpositive_integer(num, 1e-14) {
        if nonpositive_integer(den, 1e-14).is_none() {
            return Err(Error::Pole { at: n, what: "c-function numerator".into() });
        }
    }
    let ln_num = log_gamma(num)?;
    match log_gamma(den) {
        Ok(ln_den) => Ok(p * (ln_num - ln_den).exp() / SQRT_PI),
        Err(Error::Pole { .. }) => Ok(c(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

/// `ln c_m(s)`; a zero of `c_m` is reported as a pole of its reciprocal.
pub fn ln_c_function(m: i64, s: C64) -> Result<C64> {
    let (p, num, den) = c_parts(m, s);
    let ln_den = log_gamma(den).map_err(|_| Error::Pole { at: 0, what: "zero of c-function".into() })?;
    if p == c(0.0, 0.0) {
        return Err(Error::Pole { at: 0, what: "zero of c-function".into() });
    }
    Ok(p.ln() + log_gamma(num)? - ln_den - SQRT_PI.ln())
}

/// `1 / c_m(s)`.
pub fn c_inverse(m: i64, s: SpectralParam) -> Result<C64> {
    let v = c_function(m, s)?;
    if v == c(0.0, 0.0) {
        return Err(Error::Pole { at: 0, what: "reciprocal c-function".into() });
    }
    Ok(v.inv())
}

/// `|c_m(iλ)|^{-2}`: `πλ tanh(πλ)` for even m and `πλ coth(πλ)` for odd m.
pub fn c_abs_inv_sq_axis(m: i64, lambda: f64) -> f64 {
    let x = PI * lambda;
    if m % 2 == 0 {
        x * x.tanh()
    } else if x == 0.0 {
        1.0
    } else {
        x / x.tanh()
    }
}

fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

fn pow2_scaled(mantissa: i128, e: i64) -> f64 {
    mantissa as f64 * 2f64.powi(e as i32)
}

/// Residue of `c_m^{-1}` at the positive pole `s_j = (|m|-1)/2 - j`:
/// `(-1)^j (|m|-2j-1) C(|m|-1-j, j) 2^{|m|-2-2j}`.
pub fn residue(m: i64, j: i64) -> f64 {
    let am = m.abs();
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let mant = sign * (am - 2 * j - 1) as i128 * binom(am - 1 - j, j);
    pow2_scaled(mant, am - 2 - 2 * j)
}

/// The closed expression `(-1)^j C(|m|-j, j) 2^{|m|-2-2j}` that is sometimes
/// quoted for the same residues. It agrees with [`residue`] only for `|m| <= 2`.
pub fn binomial_residue_formula(m: i64, j: i64) -> f64 {
    let am = m.abs();
    let sign = if j % 2 == 0 { 1 } else { -1 };
    pow2_scaled(sign * binom(am - j, j), am - 2 - 2 * j)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CInvPole {
    pub j: i64,
    pub location: HalfInt,
    pub residue: f64,
}

/// Pole data of `c_m^{-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CInvPoles {
    pub m: i64,
    /// Positive poles `s_j`, largest first.
    pub positive: Vec<CInvPole>,
}

impl CInvPoles {
    /// The first `count` negative poles, `2s = -|m| - 1 - 2n`.
    pub fn negative_locations(&self, count: usize) -> Vec<HalfInt> {
        (0..count as i64).map(|n| HalfInt::new(-self.m.abs() - 1 - 2 * n)).collect()
    }
}

pub fn c_inv_poles(m: i64) -> CInvPoles {
    let am = m.abs();
    let mut positive = Vec::new();
    let mut j = 0;
    while am - 1 - 2 * j > 0 {
        positive.push(CInvPole { j, location: HalfInt::new(am - 1 - 2 * j), residue: residue(m, j) });
        j += 1;
    }
    CInvPoles { m, positive }
}

/// `(1/2πi) ∮ f` over the circle `|s - center| = radius` by the trapezoid rule.
pub fn contour_residue<F: FnMut(C64) -> Result<C64>>(mut f: F, center: C64, radius: f64, n: usize) -> Result<C64> {
    let mut acc = c(0.0, 0.0);
    for k in 0..n {
        let th = 2.0 * PI * k as f64 / n as f64;
        let e = c(th.cos(), th.sin());
        acc += f(center + e * radius)? * e * radius;
    }
    Ok(acc / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn log_gamma_classical_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!((log_gamma(c(0.5, 0.0)).unwrap() - c(SQRT_PI.ln(), 0.0)).norm() < 1e-15);
        assert!((log_gamma(c(11.0, 0.0)).unwrap().re - 3_628_800f64.ln()).abs() < 1e-13);
        assert_eq!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole { at: -3, what: "Gamma".into() }));
    }

    #[test]
    fn log_gamma_matches_high_precision_values() {
        let cases = [
            (c(3.0, 4.0), c(-1.756_626_784_603_784_1, 4.742_664_438_034_658)),
            (c(0.1, -20.0), c(-31.695_265_907_346_563, -39.284_410_010_649_36)),
            (c(-2.5, 0.3), c(-0.432_088_892_613_201_9, -9.093_345_421_289_742)),
            (c(100.0, 300.0), c(98.973_332_029_402_76, 1551.218_624_099_110_6)),
            (c(-7.3, 0.0), c(-7.779_101_629_826_852, -25.132_741_228_718_346)),
            (c(0.5, 1e-3), c(0.572_362_475_527_658_5, -0.001_963_507_221_228_411_7)),
            (c(-40.5, 60.0), c(-264.019_017_102_602, 108.176_394_697_867_1)),
        ];
        for (z, want) in cases {
            let got = log_gamma(z).unwrap();
            // Compare Γ itself: the real part exactly, the imaginary part modulo 2π.
            assert!((got.re - want.re).abs() <= 1e-12 * (1.0 + want.re.abs()), "{z}: {got} vs {want}");
            let dim = (got.im - want.im) / (2.0 * PI);
            assert!((dim - dim.round()).abs() * 2.0 * PI <= 1e-12 * (1.0 + want.im.abs()), "{z}: {got} vs {want}");
        }
    }

    /// Independent route: recurrence up by 200 and a three-term Stirling tail.
    fn shifted_oracle(z: C64) -> C64 {
        let w = z + 200.0;
        let mut v = (w - 0.5) * w.ln() - w + LN_2PI_HALF + w.inv() / 12.0 - w.powi(3).inv() / 360.0
            + w.powi(5).inv() / 1260.0;
        for k in 0..200 {
            v -= (z + k as f64).ln();
        }
        v
    }

    proptest! {
        #[test]
        fn exp_log_gamma_matches_oracle(re in 0.5f64..30.0, im in -30.0f64..30.0) {
            let z = c(re, im);
            // The oracle cancels terms of size |w ln w|, which bounds its own accuracy.
            let w = z + 200.0;
            let tol = 4e-15 * (w.norm() * w.norm().ln()).max(1.0);
            let (a, b) = (log_gamma(z).unwrap(), shifted_oracle(z));
            prop_assert!((a - b).norm() <= tol, "{} {} {}", z, a, b);
        }

        #[test]
        fn reflection_consistent(re in -20.0f64..0.4, im in -5.0f64..5.0) {
            prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
            let z = c(re, im);
            // Γ(z)Γ(1-z) = π / sin(πz)
            let lhs = (log_gamma(z).unwrap() + log_gamma(c(1.0, 0.0) - z).unwrap()).exp();
            let rhs = c(PI, 0.0) / (z * PI).sin();
            prop_assert!(close(lhs, rhs, 1e-11));
        }

        #[test]
        fn recurrence(re in -10.0f64..10.0, im in 0.01f64..50.0) {
            let z = c(re, im);
            let lhs = (log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap()).exp();
            prop_assert!(close(lhs, z, 1e-11));
        }
    }

    #[test]
    fn hyp2f1_trivial_cases() {
        let (a, b, cc) = (c(0.3, 1.0), c(-1.2, 0.5), c(2.5, -1.0));
        assert_eq!(hyp2f1(a, b, cc, 0.0).unwrap(), c(1.0, 0.0));
        for x in [-0.95, -0.3, 0.2, 0.7, 0.99] {
            let v = hyp2f1(c(-1.0, 0.0), b, cc, x).unwrap();
            assert!(close(v, c(1.0, 0.0) - b * x / cc, 1e-15));
        }
        assert!(hyp2f1(a, b, cc, 1.0).is_err());
        assert!(hyp2f1(a, b, cc, -1.0).is_err());
        assert!(matches!(hyp2f1(a, b, c(-2.0, 0.0), 0.3), Err(Error::Pole { at: -2, .. })));
        // terminating before the lower parameter hits zero
        assert!(hyp2f1(c(-2.0, 0.0), b, c(-3.0, 0.0), 0.3).is_ok());
        assert!(hyp2f1(c(-4.0, 0.0), b, c(-3.0, 0.0), 0.3).is_err());
    }

    #[test]
    fn hyp2f1_matches_high_precision_values() {
        let cases = [
            (c(0.5, 3.0), c(-0.5, 3.0), c(1.0, 0.0), 0.95, c(-0.312_131_616_335_225_45, 0.090_638_566_458_453_34)),
            (c(1.2, 0.0), c(2.3, 0.0), c(1.0, 2.0), 0.97, c(-301.507_111_831_177_9, -413.051_028_918_768_8)),
            (c(2.0, 1.0), c(1.0, -1.0), c(3.0, 0.5), -0.6, c(0.616_739_169_737_225_6, 0.153_981_368_266_003_98)),
            (c(0.5, -10.0), c(1.5, -10.0), c(1.0, 0.0), 0.999, c(159.017_097_073_549_04, -80.462_832_858_249_19)),
            (c(1.5, 40.0), c(-0.5, 40.0), c(1.0, 80.0), 0.6, c(-1.074_173_476_912_031_4, -0.653_426_386_139_894_3)),
        ];
        for (a, b, cc, x, want) in cases {
            let got = hyp2f1(a, b, cc, x).unwrap();
            assert!(close(got, want, 1e-11), "{a} {b} {cc} {x}: {got} vs {want}");
        }
    }

    #[test]
    fn hyp2f1_terminates_on_discrete_spectrum() {
        // φ_{4,1/2}: second hypergeometric form has b = (1-4)/2 + 1/2 = -1, degree 1.
        let (a, b) = (c(2.5 + 0.5, 0.0), c(-1.5 + 0.5, 0.0));
        let x = 0.4;
        let v = hyp2f1(a, b, c(1.0, 0.0), x).unwrap();
        assert!(close(v, c(1.0 - 3.0 * 0.4, 0.0), 1e-15));
        for m in 2..12i64 {
            for p in discrete_spectrum(m).positive() {
                let s = p.value();
                let b = (1.0 - m as f64) / 2.0 + s;
                let deg = (m - 1 - p.twice) / 2;
                assert_eq!(nonpositive_integer(c(b, 0.0), 1e-12), Some(-deg));
            }
        }
    }

    #[test]
    fn c_function_examples() {
        assert!(close(c_function(0, SpectralParam::real(0.5)).unwrap(), c(1.0, 0.0), 1e-14));
        let want = [
            (3, c(0.25, 2.0), c(0.345_389_248_336_372_3, 0.090_522_554_011_361_51)),
            (6, c(-1.3, 0.7), c(-8.481_637_801_710_889, 1.230_484_606_586_588_5)),
            (7, c(2.2, -15.0), c(0.129_046_587_985_748_3, -0.009_383_852_899_948_127)),
        ];
        for (m, s, v) in want {
            assert!(close(c_function(m, s.into()).unwrap(), v, 1e-12));
            assert!(close(c_function(-m, s.into()).unwrap(), v, 1e-12));
        }
        // denominator pole -> zero; numerator pole -> error
        assert_eq!(c_function(4, SpectralParam::real(1.5)).unwrap(), c(0.0, 0.0));
        assert!(matches!(c_function(0, SpectralParam::real(0.0)), Err(Error::Pole { .. })));
        assert!(matches!(c_function(3, SpectralParam::real(-0.5)), Err(Error::Pole { .. })));
        assert!(c_inverse(4, SpectralParam::real(0.5)).is_err());
    }

    /// `c_m` straight from the displayed Gamma quotient.
    fn c_direct(m: i64, s: C64) -> C64 {
        let num = c(2.0, 0.0).powc(c(1.0, 0.0) - s * 2.0) * gamma(s * 2.0).unwrap();
        let mf = m as f64;
        num / (gamma((s * 2.0 + 1.0 + mf) / 2.0).unwrap() * gamma((s * 2.0 + 1.0 - mf) / 2.0).unwrap())
    }

    proptest! {
        #[test]
        fn c_function_matches_direct_formula(m in -9i64..10, re in -3.0f64..3.0, im in 0.05f64..20.0) {
            let s = c(re, im);
            prop_assert!(close(c_function(m, s.into()).unwrap(), c_direct(m, s), 1e-10));
        }

        #[test]
        fn c_conjugate_on_axis(m in 0i64..8, lambda in 0.01f64..50.0) {
            let a = c_function(m, SpectralParam::imag(-lambda)).unwrap();
            let b = c_function(m, SpectralParam::imag(lambda)).unwrap().conj();
            prop_assert!(close(a, b, 1e-13));
        }

        #[test]
        fn ln_c_consistent(m in -7i64..8, re in -2.0f64..4.0, im in 0.1f64..100.0) {
            let s = c(re, im);
            let a = ln_c_function(m, s).unwrap().exp();
            prop_assert!(close(a, c_function(m, s.into()).unwrap(), 1e-11));
        }
    }

    #[test]
    fn abs_c_closed_forms() {
        for m in 0..8 {
            for k in 1..=200 {
                let lambda = k as f64 * 0.1;
                let cv = c_function(m, SpectralParam::imag(lambda)).unwrap();
                let got = 1.0 / cv.norm_sqr();
                let want = c_abs_inv_sq_axis(m, lambda);
                assert!((got - want).abs() <= 1e-10 * want, "m={m} λ={lambda}");
            }
        }
    }

    #[test]
    fn reciprocal_grows_like_sqrt() {
        for m in [0i64, 1, 4, 7] {
            let mut ratios = Vec::new();
            for re in [-0.4, 0.0, 0.4] {
                for y in [1e2, 1e3, 1e4, -1e4] {
                    let s = c(re, y);
                    ratios.push(c_inverse(m, s.into()).unwrap().norm() / s.norm().sqrt());
                }
            }
            let mid = ratios.iter().sum::<f64>() / ratios.len() as f64;
            assert!(ratios.iter().all(|r| *r / mid > 1.0 / 3.0 && *r / mid < 3.0));
        }
    }

    #[test]
    fn discrete_spectrum_examples() {
        assert!(discrete_spectrum(0).points.is_empty());
        assert!(discrete_spectrum(1).points.is_empty());
        let d4: Vec<f64> = discrete_spectrum(4).points.iter().map(|p| p.value()).collect();
        assert_eq!(d4, vec![-1.5, -0.5, 0.5, 1.5]);
        let d3: Vec<f64> = discrete_spectrum(-3).points.iter().map(|p| p.value()).collect();
        assert_eq!(d3, vec![-1.0, 1.0]);
        for m in -12..12 {
            let d = discrete_spectrum(m);
            for p in &d.points {
                assert!(p.in_discrete(m));
                assert!(d.points.contains(&HalfInt::new(-p.twice)));
            }
        }
    }

    #[test]
    fn pole_locations() {
        assert!(c_inv_poles(0).positive.is_empty());
        assert!(c_inv_poles(1).positive.is_empty());
        let p4 = c_inv_poles(4);
        let locs: Vec<f64> = p4.positive.iter().map(|p| p.location.value()).collect();
        assert_eq!(locs, vec![1.5, 0.5]);
        assert_eq!(p4.negative_locations(2), vec![HalfInt::new(-5), HalfInt::new(-7)]);
        for loc in p4.negative_locations(3) {
            assert_eq!(c_function(4, SpectralParam::real(loc.value())).unwrap(), c(0.0, 0.0));
            assert!(c_inverse(4, SpectralParam::real(loc.value())).is_err());
        }
    }

    #[test]
    fn residues_match_contour_integrals() {
        for m in 2..=12i64 {
            for p in c_inv_poles(m).positive {
                let center = c(p.location.value(), 0.0);
                let res = contour_residue(|s| c_inverse(m, s.into()), center, 0.25, 128).unwrap();
                assert!((res.re - p.residue).abs() <= 1e-9 * p.residue.abs(), "m={m} j={}: {res}", p.j);
                assert!(res.im.abs() <= 1e-9 * p.residue.abs());
            }
        }
        assert_eq!(residue(4, 0), 12.0);
        assert_eq!(residue(4, 1), -2.0);
        assert_eq!(binomial_residue_formula(4, 0), 4.0);
        assert_eq!(residue(2, 0), binomial_residue_formula(2, 0));
    }

    #[test]
    fn residues_exact_for_large_m() {
        // C(39-j, j) 2^{38-2j} exceeds 2^64; the exact integer path must not overflow.
        let r = residue(40, 0);
        assert_eq!(r, 39.0 * 2f64.powi(38));
        let big = residue(40, 10);
        assert!(big.is_finite() && big != 0.0);
    }

    #[test]
    fn half_int_parsing() {
        assert_eq!(HalfInt::parse("3/2").unwrap(), HalfInt::new(3));
        assert_eq!(HalfInt::parse("-1").unwrap(), HalfInt::new(-2));
        assert_eq!(HalfInt::new(-3).to_string(), "-3/2");
        assert_eq!(HalfInt::new(4).to_string(), "2");
        assert!(HalfInt::parse("1/3").is_err());
    }
}
