use super::grid::RadialProfile;
use crate::error::{domain, precondition, Error, Result};
use crate::special::{discrete_spectrum, HalfInt, SpectralParam};
use num_complex::Complex64 as C64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Closed-form tag of a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SymbolKind {
    Heat { t: f64 },
    Resolvent { z: C64 },
    Rational,
    Tabulated,
    Composite,
}

/// A pole of a symbol in `Re s > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolPole {
    pub at: C64,
    pub order: u32,
    /// `lim (s - at) ψ(s)` for simple poles.
    pub simple_factor: Option<C64>,
}

/// An even function `ψ(s)` playing the role of a spherical transform.
pub trait SphericalSymbol: Send + Sync + fmt::Debug {
    fn m(&self) -> i64;

    fn kind(&self) -> SymbolKind;

    fn eval(&self, s: C64) -> Result<C64>;

    /// `ln ψ(s)`, for symbols whose values over- or underflow.
    fn ln_eval(&self, s: C64) -> Result<C64> {
        Ok(self.eval(s)?.ln())
    }

    /// Value at a point of `𝔻_m`.
    fn discrete_value(&self, s: HalfInt) -> Result<C64> {
        self.eval(C64::new(s.value(), 0.0))
    }

    /// ψ is holomorphic on `|Re s| < w`. Zero means axis data only.
    fn holomorphy_half_width(&self) -> f64;

    /// All poles with `Re s > 0`, when ψ is a rational function decaying at infinity.
    fn right_poles(&self) -> Option<Vec<SymbolPole>> {
        None
    }

    /// Preferred contour abscissa for radius r, when the symbol has one.
    fn contour_shift(&self, _r: f64) -> Option<f64> {
        None
    }

    /// Rate `d arg ψ(δ + iλ) / dλ`, used to size quadrature panels.
    fn phase_rate(&self, _delta: f64) -> f64 {
        0.0
    }

    /// Largest λ for which axis values exist.
    fn axis_cutoff(&self) -> Option<f64> {
        None
    }
}

pub type SymbolRef = Arc<dyn SphericalSymbol>;

/// `exp(t(s² - 1/4))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatSymbol {
    pub m: i64,
    pub t: f64,
}

impl HeatSymbol {
    pub fn new(m: i64, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(domain(format!("heat time must be positive, got {t}")));
        }
        Ok(HeatSymbol { m, t })
    }
}

impl SphericalSymbol for HeatSymbol {
    fn m(&self) -> i64 {
        self.m
    }
    fn kind(&self) -> SymbolKind {
        SymbolKind::Heat { t: self.t }
    }
    fn eval(&self, s: C64) -> Result<C64> {
        Ok(self.ln_eval(s)?.exp())
    }
    fn ln_eval(&self, s: C64) -> Result<C64> {
        Ok((s * s - 0.25) * self.t)
    }
    fn holomorphy_half_width(&self) -> f64 {
        f64::INFINITY
    }
    // on s = δ + iλ the integrand behaves like exp(-tλ² + 2iλ(tδ - r)); δ = r/t removes the oscillation
    fn contour_shift(&self, r: f64) -> Option<f64> {
        Some(r / self.t)
    }
    fn phase_rate(&self, delta: f64) -> f64 {
        2.0 * self.t * delta
    }
}

/// `scale · Π_k (a_k² - s²)^{-n_k}` with every `Re a_k > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalSymbol {
    pub m: i64,
    pub scale: C64,
    pub factors: Vec<(C64, u32)>,
}

impl RationalSymbol {
    pub fn new(m: i64, scale: C64, factors: Vec<(C64, u32)>) -> Result<Self> {
        let mut merged: Vec<(C64, u32)> = Vec::new();
        for (a, n) in factors {
            if n == 0 {
                continue;
            }
            let a = if a.re < 0.0 { -a } else { a };
            if a.re == 0.0 {
                return Err(domain("rational symbol has a pole on the imaginary axis"));
            }
            match merged.iter_mut().find(|(b, _)| (*b - a).norm() <= 1e-14 * a.norm()) {
                Some(e) => e.1 += n,
                None => merged.push((a, n)),
            }
        }
        Ok(RationalSymbol { m, scale, factors: merged })
    }

    /// `(z² - s²)^{-1}`, the symbol of the resolvent kernel.
    pub fn resolvent(m: i64, z: C64) -> Result<Self> {
        Self::new(m, C64::new(1.0, 0.0), vec![(z, 1)])
    }

    /// `(ζ² / (ζ² - s²))^N`.
    pub fn approx_identity(m: i64, zeta: f64, n: u32) -> Result<Self> {
        Self::new(m, C64::new(zeta * zeta, 0.0).powu(n), vec![(C64::new(zeta, 0.0), n)])
    }

    pub fn times(&self, o: &RationalSymbol) -> Result<Self> {
        if self.m != o.m {
            return Err(domain("symbols of different types"));
        }
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().copied());
        Self::new(self.m, self.scale * o.scale, f)
    }

    pub fn scaled(&self, a: C64) -> Self {
        RationalSymbol { m: self.m, scale: self.scale * a, factors: self.factors.clone() }
    }
}

impl SphericalSymbol for RationalSymbol {
    fn m(&self) -> i64 {
        self.m
    }
    fn kind(&self) -> SymbolKind {
        match self.factors.as_slice() {
            [(z, 1)] if self.scale == C64::new(1.0, 0.0) => SymbolKind::Resolvent { z: *z },
            _ => SymbolKind::Rational,
        }
    }
    fn eval(&self, s: C64) -> Result<C64> {
        let mut v = self.scale;
        for &(a, n) in &self.factors {
            let d = a * a - s * s;
            if d == C64::new(0.0, 0.0) {
                return Err(Error::Pole { at: 0, what: "rational symbol".into() });
            }
            v /= d.powu(n);
        }
        Ok(v)
    }
    fn ln_eval(&self, s: C64) -> Result<C64> {
        let mut v = self.scale.ln();
        for &(a, n) in &self.factors {
            let d = a * a - s * s;
            if d == C64::new(0.0, 0.0) {
                return Err(Error::Pole { at: 0, what: "rational symbol".into() });
            }
            // ln(a-s) + ln(a+s) avoids the cancellation in a² - s² near the pole
            v -= ((a - s).ln() + (a + s).ln()) * n as f64;
        }
        Ok(v)
    }
    fn holomorphy_half_width(&self) -> f64 {
        self.factors.iter().map(|(a, _)| a.re).fold(f64::INFINITY, f64::min)
    }
    fn right_poles(&self) -> Option<Vec<SymbolPole>> {
        Some(
            self.factors
                .iter()
                .map(|&(a, n)| {
                    let simple_factor = (n == 1).then(|| {
                        let mut v = self.scale / (a * -2.0);
                        for &(b, k) in &self.factors {
                            if b != a {
                                v /= (b * b - a * a).powu(k);
                            }
                        }
                        v
                    });
                    SymbolPole { at: a, order: n, simple_factor }
                })
                .collect(),
        )
    }
}

/// `s² - 1/4`, the eigenvalue of the Casimir on `φ_{m,s}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueSymbol {
    pub m: i64,
}

impl SphericalSymbol for EigenvalueSymbol {
    fn m(&self) -> i64 {
        self.m
    }
    fn kind(&self) -> SymbolKind {
        SymbolKind::Composite
    }
    fn eval(&self, s: C64) -> Result<C64> {
        Ok(s * s - 0.25)
    }
    fn holomorphy_half_width(&self) -> f64 {
        f64::INFINITY
    }
}

/// Axis samples `ψ(iλ)`, `λ ≥ 0`, plus explicit values on `𝔻_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedSymbol {
    pub m: i64,
    pub lambdas: Vec<f64>,
    pub values: Vec<C64>,
    pub discrete: BTreeMap<HalfInt, C64>,
}

impl TabulatedSymbol {
    pub fn new(m: i64, lambdas: Vec<f64>, values: Vec<C64>, discrete: BTreeMap<HalfInt, C64>) -> Result<Self> {
        if lambdas.len() != values.len() || lambdas.len() < 4 {
            return Err(domain("tabulated symbol needs at least 4 matching samples"));
        }
        if lambdas[0] != 0.0 || lambdas.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(domain("tabulated λ must start at 0 and increase"));
        }
        for k in discrete.keys() {
            if !k.in_discrete(m) {
                return Err(domain(format!("{k} is not in the discrete set for m = {m}")));
            }
        }
        Ok(TabulatedSymbol { m, lambdas, values, discrete })
    }

    /// Samples another symbol on a λ list, copying its discrete values.
    pub fn sample(psi: &dyn SphericalSymbol, lambdas: Vec<f64>) -> Result<Self> {
        let values = lambdas.iter().map(|&l| psi.eval(C64::new(0.0, l))).collect::<Result<Vec<_>>>()?;
        let mut discrete = BTreeMap::new();
        for p in discrete_spectrum(psi.m()).points {
            discrete.insert(p, psi.discrete_value(p)?);
        }
        Self::new(psi.m(), lambdas, values, discrete)
    }

    /// Cubic interpolation through the four nearest samples.
    fn at(&self, lambda: f64) -> Result<C64> {
        let l = lambda.abs();
        let n = self.lambdas.len();
        if l > self.lambdas[n - 1] {
            return Err(domain(format!("λ = {l} beyond the tabulated range")));
        }
        let i = self.lambdas.partition_point(|&x| x <= l).clamp(2, n - 2) - 2;
        let xs = &self.lambdas[i..i + 4];
        let mut v = C64::new(0.0, 0.0);
        for j in 0..4 {
            let mut w = 1.0;
            for k in 0..4 {
                if k != j {
                    w *= (l - xs[k]) / (xs[j] - xs[k]);
                }
            }
            v += self.values[i + j] * w;
        }
        Ok(v)
    }
}

impl SphericalSymbol for TabulatedSymbol {
    fn m(&self) -> i64 {
        self.m
    }
    fn kind(&self) -> SymbolKind {
        SymbolKind::Tabulated
    }
    fn eval(&self, s: C64) -> Result<C64> {
        if s.re != 0.0 {
            if s.im == 0.0 {
                if let Some(h) = HalfInt::from_f64(s.re) {
                    if h.in_discrete(self.m) {
                        return self.discrete_value(h);
                    }
                }
            }
            return Err(domain("tabulated symbols are known on the imaginary axis only"));
        }
        self.at(s.im)
    }
    fn discrete_value(&self, s: HalfInt) -> Result<C64> {
        self.discrete
            .get(&s)
            .or_else(|| self.discrete.get(&HalfInt::new(-s.twice)))
            .copied()
            .ok_or_else(|| precondition(format!("no tabulated value at s = {s}")))
    }
    fn holomorphy_half_width(&self) -> f64 {
        0.0
    }
    fn axis_cutoff(&self) -> Option<f64> {
        self.lambdas.last().copied()
    }
}

/// Pointwise product of symbols of one type.
#[derive(Debug, Clone)]
pub struct ProductSymbol {
    m: i64,
    factors: Vec<SymbolRef>,
}

impl ProductSymbol {
    pub fn new(factors: Vec<SymbolRef>) -> Result<Self> {
        let m = factors.first().ok_or_else(|| domain("empty product"))?.m();
        if factors.iter().any(|f| f.m() != m) {
            return Err(domain("symbols of different types"));
        }
        Ok(ProductSymbol { m, factors })
    }
}

impl SphericalSymbol for ProductSymbol {
    fn m(&self) -> i64 {
        self.m
    }
    fn kind(&self) -> SymbolKind {
        SymbolKind::Composite
    }
    fn eval(&self, s: C64) -> Result<C64> {
        self.factors.iter().try_fold(C64::new(1.0, 0.0), |acc, f| Ok(acc * f.eval(s)?))
    }
    fn ln_eval(&self, s: C64) -> Result<C64> {
        self.factors.iter().try_fold(C64::new(0.0, 0.0), |acc, f| Ok(acc + f.ln_eval(s)?))
    }
    fn discrete_value(&self, s: HalfInt) -> Result<C64> {
        self.factors.iter().try_fold(C64::new(1.0, 0.0), |acc, f| Ok(acc * f.discrete_value(s)?))
    }
    fn holomorphy_half_width(&self) -> f64 {
        self.factors.iter().map(|f| f.holomorphy_half_width()).fold(f64::INFINITY, f64::min)
    }
    fn contour_shift(&self, r: f64) -> Option<f64> {
        self.factors.iter().filter_map(|f| f.contour_shift(r)).reduce(f64::min)
    }
    fn phase_rate(&self, delta: f64) -> f64 {
        self.factors.iter().map(|f| f.phase_rate(delta)).sum()
    }
    fn axis_cutoff(&self) -> Option<f64> {
        self.factors.iter().filter_map(|f| f.axis_cutoff()).reduce(f64::min)
    }
}

/// `scale · ψ(s) + offset`.
#[derive(Debug, Clone)]
pub struct AffineSymbol {
    pub inner: SymbolRef,
    pub scale: C64,
    pub offset: C64,
}

impl SphericalSymbol for AffineSymbol {
    fn m(&self) -> i64 {
        self.inner.m()
    }
    fn kind(&self) -> SymbolKind {
        SymbolKind::Composite
    }
    fn eval(&self, s: C64) -> Result<C64> {
        Ok(self.inner.eval(s)? * self.scale + self.offset)
    }
    fn discrete_value(&self, s: HalfInt) -> Result<C64> {
        Ok(self.inner.discrete_value(s)? * self.scale + self.offset)
    }
    fn holomorphy_half_width(&self) -> f64 {
        self.inner.holomorphy_half_width()
    }
    fn axis_cutoff(&self) -> Option<f64> {
        self.inner.axis_cutoff()
    }
}

/// The transform `f̂` of a profile, read as a symbol of type `m` (possibly
/// different from the profile's own type).
#[derive(Debug, Clone)]
pub struct TransformSymbol {
    pub profile: RadialProfile,
    pub m: i64,
    /// Largest |Im s| the grid resolves; spectral integrals stop there.
    pub cutoff: Option<f64>,
}

impl TransformSymbol {
    pub fn new(profile: RadialProfile) -> Self {
        let m = profile.m;
        TransformSymbol { profile, m, cutoff: None }
    }

    /// The transform of `profile` read as a symbol of type m.
    pub fn retyped(profile: RadialProfile, m: i64) -> Self {
        TransformSymbol { profile, m, cutoff: None }
    }

    pub fn with_cutoff(mut self, lambda: f64) -> Self {
        self.cutoff = Some(lambda);
        self
    }
}

impl SphericalSymbol for TransformSymbol {
    fn m(&self) -> i64 {
        self.m
    }
    fn kind(&self) -> SymbolKind {
        SymbolKind::Composite
    }
    fn eval(&self, s: C64) -> Result<C64> {
        super::forward_transform(&self.profile, SpectralParam { s })
    }
    fn axis_cutoff(&self) -> Option<f64> {
        self.cutoff
    }
    fn holomorphy_half_width(&self) -> f64 {
        if self.profile.is_compact() {
            f64::INFINITY
        } else {
            (self.profile.alpha + 1.0) / 2.0
        }
    }
}

/// Evenness and Cauchy-Riemann residuals at random points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolCheck {
    /// `max |ψ(s) - ψ(-s)| / max(|ψ(s)|, tiny)`.
    pub evenness: f64,
    /// `max |∂_y ψ - i ∂_x ψ| / max(|∂_x ψ|, |ψ|)` by central differences; 0 when
    /// the symbol is known on the axis only.
    pub cauchy_riemann: f64,
}

pub fn check_symbol<R: Rng>(psi: &dyn SphericalSymbol, rng: &mut R, samples: usize) -> Result<SymbolCheck> {
    let w = psi.holomorphy_half_width();
    let re_max = if w > 0.0 { (w - 0.05).min(1.5).max(0.0) } else { 0.0 };
    let im_max = psi.axis_cutoff().unwrap_or(8.0).min(8.0);
    let mut out = SymbolCheck { evenness: 0.0, cauchy_riemann: 0.0 };
    for _ in 0..samples {
        let s = C64::new(rng.gen_range(-re_max..=re_max), rng.gen_range(-im_max..=im_max));
        let a = psi.eval(s)?;
        let b = psi.eval(-s)?;
        out.evenness = out.evenness.max((a - b).norm() / a.norm().max(1e-300));
        if re_max > 0.05 {
            let s = C64::new(s.re.clamp(-re_max + 0.02, re_max - 0.02), s.im);
            let h = 1e-4;
            let dx = (psi.eval(s + h)? - psi.eval(s - h)?) / (2.0 * h);
            let dy = (psi.eval(s + C64::new(0.0, h))? - psi.eval(s - C64::new(0.0, h))?) / (2.0 * h);
            let scale = dx.norm().max(a.norm()).max(1e-300);
            out.cauchy_riemann = out.cauchy_riemann.max((dy - C64::i() * dx).norm() / scale);
        }
    }
    Ok(out)
}
