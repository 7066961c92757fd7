//! Heat and resolvent kernels of type m, multiplier synthesis with its norm
//! certificate, the approximate identity `(ζ² r_ζ)^{*N}` and the
//! reconstruction of a function from resolvents along a vertical line.

use crate::error::{domain, precondition, Result};
use crate::quadrature::{CSum, GaussLegendre};
use crate::special::discrete_spectrum;
use crate::transform::{
    contour_abscissa, invert_axis_many, invert_contour_many, l1_weighted_norm, synthesize, synthesize_with,
    AffineSymbol, EigenvalueSymbol, HeatSymbol, ProductSymbol, RadialGrid, RadialProfile, RationalSymbol,
    SpectralQuadrature, SphericalSymbol, SymbolRef,
};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// The spectral thresholds `α_m < β_m² - 1/4`, `γ_m² = α_m + 5/4` attached to
/// a weight exponent α and a type m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralCutoffs {
    pub m: i64,
    pub alpha: f64,
    pub alpha_m: f64,
    pub beta_m: f64,
    pub gamma_m: f64,
}

impl SpectralCutoffs {
    /// `¼ max{α² + 2α, m² - 2|m|}`, which `α_m` must exceed.
    pub fn lower_bound(m: i64, alpha: f64) -> f64 {
        let mf = m as f64;
        0.25 * (alpha * alpha + 2.0 * alpha).max(mf * mf - 2.0 * mf.abs())
    }

    /// Default choice `α_m = lower_bound + 1`.
    pub fn new(m: i64, alpha: f64) -> Result<Self> {
        Self::with_alpha_m(m, alpha, Self::lower_bound(m, alpha) + 1.0)
    }

    pub fn with_alpha_m(m: i64, alpha: f64, alpha_m: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(domain("weight exponent must be finite and nonnegative"));
        }
        if !(alpha_m > Self::lower_bound(m, alpha)) || !alpha_m.is_finite() {
            return Err(domain(format!("α_m = {alpha_m} must exceed {}", Self::lower_bound(m, alpha))));
        }
        Ok(SpectralCutoffs { m, alpha, alpha_m, beta_m: (alpha_m + 0.25).sqrt(), gamma_m: (alpha_m + 1.25).sqrt() })
    }

    pub fn invariants_hold(&self) -> bool {
        self.alpha_m > Self::lower_bound(self.m, self.alpha)
            && (self.beta_m * self.beta_m - self.alpha_m - 0.25).abs() <= 1e-12 * self.beta_m * self.beta_m
            && (self.gamma_m * self.gamma_m - self.alpha_m - 1.25).abs() <= 1e-12 * self.gamma_m * self.gamma_m
            && self.beta_m < self.gamma_m
    }
}

/// Radial grid and spectral rule shared by kernel materializations.
#[derive(Debug, Clone)]
pub struct KernelConfig {
    pub grid: RadialGrid,
    pub quad: SpectralQuadrature,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig { grid: RadialGrid::with_r_max(30.0).expect("default grid"), quad: SpectralQuadrature::default() }
    }
}

fn same_type(m: i64, cut: &SpectralCutoffs) -> Result<()> {
    if m != cut.m {
        return Err(domain(format!("cutoffs were built for m = {}, not {m}", cut.m)));
    }
    Ok(())
}

/// `h_t`, the profile with symbol `exp(t(s² - 1/4))`.
pub fn heat_kernel(m: i64, t: f64, cut: &SpectralCutoffs, cfg: &KernelConfig) -> Result<RadialProfile> {
    same_type(m, cut)?;
    synthesize(&HeatSymbol::new(m, t)?, &cfg.grid, cut.alpha, &cfg.quad)
}

/// Largest relative gap between the centered difference `(h_{t+dt} - h_{t-dt}) / 2dt`
/// and the inversion of `(s² - 1/4) exp(t(s² - 1/4))` over the given radii.
pub fn heat_pde_check(m: i64, t: f64, dt: f64, rs: &[f64], q: &SpectralQuadrature) -> Result<f64> {
    if !(dt > 0.0 && dt < t) {
        return Err(domain("need 0 < dt < t"));
    }
    let plus = invert_axis_many(&HeatSymbol::new(m, t + dt)?, rs, q)?;
    let minus = invert_axis_many(&HeatSymbol::new(m, t - dt)?, rs, q)?;
    let gen = ProductSymbol::new(vec![Arc::new(EigenvalueSymbol { m }), Arc::new(HeatSymbol::new(m, t)?)])?;
    let exact = invert_axis_many(&gen, rs, q)?;
    let scale = exact.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(plus
        .iter()
        .zip(&minus)
        .zip(&exact)
        .map(|((p, mi), e)| ((p - mi) / (2.0 * dt) - e).norm() / scale)
        .fold(0.0, f64::max))
}

/// `r_z`, the profile with symbol `(z² - s²)^{-1}`, for `|Re z| >= γ_m`.
pub fn resolvent_kernel(m: i64, z: C64, cut: &SpectralCutoffs, cfg: &KernelConfig) -> Result<RadialProfile> {
    same_type(m, cut)?;
    if z.re.abs() < cut.gamma_m {
        return Err(domain(format!("z = {z} lies inside the strip |Re z| < γ_m = {}", cut.gamma_m)));
    }
    synthesize(&RationalSymbol::resolvent(m, z)?, &cfg.grid, cut.alpha, &cfg.quad)
}

/// `ℓ_λ(a_r) = ∫_0^∞ e^{-λt} h_t(a_r) dt` with `λ = ζ² - 1/4`, at the given radii.
///
/// The t-integral runs over `[1e-4, T]` in `ln t`, with `T = 40/(λ - α_m)`
/// stretched when needed so that the cut-off is small relative to `r_ζ(a_r)`
/// at the largest radius, not just in norm. Radii with
/// `r²/t > 80` contribute nothing at that t, so the lower end moves up to
/// `r_min²/80` when that is larger.
pub fn resolvent_laplace(m: i64, zeta: f64, cut: &SpectralCutoffs, rs: &[f64], q: &SpectralQuadrature) -> Result<Vec<C64>> {
    same_type(m, cut)?;
    let lambda = zeta * zeta - 0.25;
    if !(lambda > cut.alpha_m) {
        return Err(domain(format!("ζ = {zeta} needs ζ² - 1/4 > α_m = {}", cut.alpha_m)));
    }
    if rs.iter().any(|&r| !(r * r / 1e-4 > 80.0)) {
        return Err(precondition("the Laplace route needs r > 0.09"));
    }
    // past T the integrand is below e^{-40} of the value r_ζ(a_r) ~ e^{-2ζr}
    let r_max = rs.iter().copied().fold(0.0, f64::max);
    let sq = lambda.sqrt();
    let x = (45f64.sqrt() + (45.0 + 4.0 * sq * r_max).sqrt()) / (2.0 * sq);
    let t_max = (40.0 / (lambda - cut.alpha_m)).max(x * x);
    let r_min = rs.iter().copied().fold(f64::INFINITY, f64::min);
    let (u0, u1) = ((r_min * r_min / 80.0).max(1e-4).ln(), t_max.ln());
    let panels = ((u1 - u0) / 0.5).ceil().max(1.0) as usize;
    let rule = GaussLegendre::new(10);
    let mut acc = vec![CSum::default(); rs.len()];
    for k in 0..panels {
        let a = u0 + (u1 - u0) * k as f64 / panels as f64;
        let b = u0 + (u1 - u0) * (k + 1) as f64 / panels as f64;
        for (u, w) in rule.mapped(a, b) {
            let t = u.exp();
            let heat = HeatSymbol::new(m, t)?;
            // radii sharing a contour are inverted together
            let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
            for (i, &r) in rs.iter().enumerate() {
                if r * r / t > 80.0 {
                    continue;
                }
                let d = contour_abscissa(&heat, r, cut.alpha);
                match groups.iter_mut().find(|g| g.0 == d) {
                    Some(g) => g.1.push(i),
                    None => groups.push((d, vec![i])),
                }
            }
            for (d, idx) in groups {
                let radii: Vec<f64> = idx.iter().map(|&i| rs[i]).collect();
                let vals = invert_contour_many(&heat, &radii, d, q)?;
                for (&i, v) in idx.iter().zip(vals) {
                    acc[i].add(v * (w * t * (-lambda * t).exp()));
                }
            }
        }
    }
    Ok(acc.iter().map(|a| a.sum()).collect())
}

/// Norm certificate of a synthesized multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormCertificate {
    pub m: i64,
    pub alpha: f64,
    pub delta: f64,
    /// `sup_{𝕊_δ} (1+|s|)³ |ψ(s)|`, estimated by sampling.
    #[serde(rename = "M_delta")]
    pub m_delta: f64,
    /// `Σ_{s∈𝔻_m∖𝕊_δ} |s ψ(s)| / (2|s| - α - 1)`.
    pub discrete_sum: f64,
    /// `C_m (M_δ + discrete_sum)`.
    pub certificate: f64,
    pub computed_norm: f64,
}

impl NormCertificate {
    pub fn is_sound(&self) -> bool {
        self.computed_norm <= self.certificate
    }
}

/// Fitted constants `C_m` of the multiplier bound for |m| = 0..=10.
///
/// Each value is 1.25 times the largest ratio `‖f‖ / (M_δ + Σ)` observed over the
/// calibration family of `examples/calibrate_certificate.rs` (heat symbols,
/// approximate-identity powers, their products and resolvent squares, α ∈ {0, 1}),
/// rounded up in the third decimal.
pub const CERTIFICATE_CONSTANTS: [f64; 11] = [0.179, 0.203, 0.375, 2.451, 5.925, 8.328, 7.946, 7.667, 7.455, 7.286, 7.148];

pub fn certificate_constant(m: i64) -> Option<f64> {
    CERTIFICATE_CONSTANTS.get(m.unsigned_abs() as usize).copied()
}

/// `sup (1+|s|)³ |ψ(s)|` over `|Re s| <= δ/2`, sampled on three vertical lines
/// and a log-spaced height grid up to 10⁴. Growth at the top of the grid means
/// the supremum is infinite.
pub fn strip_sup(psi: &dyn SphericalSymbol, delta: f64) -> Result<f64> {
    let mut best: f64 = 0.0;
    let mut top = [0.0f64; 2];
    for x in [0.0, 0.25 * delta, 0.5 * delta] {
        let mut prev = 0.0;
        for k in 0..=120 {
            let y = if k == 0 { 0.0 } else { 1e-2 * 10f64.powf(6.0 * k as f64 / 120.0) };
            let s = C64::new(x, y);
            let v = (1.0 + s.norm()).powi(3) * psi.eval(s)?.norm();
            if !v.is_finite() {
                return Err(precondition(format!("M_δ is infinite: ψ is unbounded near {s}")));
            }
            best = best.max(v);
            if k == 120 {
                top = [prev, v];
            }
            prev = v;
        }
        if top[1] > top[0] * 1.01 && top[1] > 1e-12 * best {
            return Err(precondition("M_δ is infinite: (1+|s|)³ψ(s) grows along the strip"));
        }
    }
    Ok(best)
}

/// Picks a point of `(lo, hi)` at least 0.1 from `𝔻_m`, starting at the midpoint.
fn abscissa_between(m: i64, lo: f64, hi: f64) -> f64 {
    let disc = discrete_spectrum(m);
    let mid = 0.5 * (lo + hi);
    let mut best = mid;
    for k in 0..200 {
        for sign in [1.0, -1.0] {
            let d = mid + sign * 0.01 * k as f64;
            if d <= lo || d >= hi {
                continue;
            }
            if disc.distance(d) >= 0.1 {
                return d;
            }
            if disc.distance(d) > disc.distance(best) {
                best = d;
            }
        }
    }
    best
}

/// The profile f with `f̂ = ψ`, together with the weighted-norm certificate.
///
/// Radii `r > 1` are inverted on the contour `Re s = t` with
/// `t ∈ ((α+1)/2, δ/2)` away from `𝔻_m`.
pub fn multiplier_synthesize(
    psi: &dyn SphericalSymbol,
    delta: f64,
    cut: &SpectralCutoffs,
    cfg: &KernelConfig,
) -> Result<(RadialProfile, NormCertificate)> {
    same_type(psi.m(), cut)?;
    let alpha = cut.alpha;
    if !(delta > alpha + 1.0) {
        return Err(domain(format!("δ = {delta} must exceed α + 1 = {}", alpha + 1.0)));
    }
    if psi.holomorphy_half_width() < delta / 2.0 {
        return Err(precondition(format!("ψ is not holomorphic on the interior of 𝕊_{delta}")));
    }
    let c_m = certificate_constant(psi.m())
        .ok_or_else(|| precondition(format!("no fitted certificate constant for m = {}", psi.m())))?;
    let m_delta = strip_sup(psi, delta)?;
    let mut discrete_sum = 0.0;
    for p in discrete_spectrum(psi.m()).positive() {
        let s = p.value();
        if 2.0 * s > delta {
            discrete_sum += s * psi.discrete_value(p)?.norm() / (2.0 * s - alpha - 1.0);
        }
    }
    let t = abscissa_between(psi.m(), (alpha + 1.0) / 2.0, delta / 2.0);
    let f = synthesize_with(psi, &cfg.grid, alpha, &cfg.quad, &|_| t)?;
    let computed_norm = l1_weighted_norm(&f)?;
    let cert = NormCertificate {
        m: psi.m(),
        alpha,
        delta,
        m_delta,
        discrete_sum,
        certificate: c_m * (m_delta + discrete_sum),
        computed_norm,
    };
    Ok((f, cert))
}

/// The symbols the certificate constants were fitted on: heat symbols,
/// approximate-identity powers alone and times `ĥ_1`, and `(γ_m² - s²)⁻²`.
pub fn certificate_family(m: i64, cut: &SpectralCutoffs) -> Result<Vec<(String, SymbolRef)>> {
    same_type(m, cut)?;
    let g = cut.gamma_m;
    let mut out: Vec<(String, SymbolRef)> = Vec::new();
    for t in [0.25, 0.5, 1.0, 2.0, 4.0] {
        out.push((format!("heat t={t}"), Arc::new(HeatSymbol::new(m, t)?)));
    }
    for z in [g + 1.0, 2.0 * g, 4.0 * g] {
        for n in [2, 4] {
            out.push((format!("ζ={z:.3} N={n}"), Arc::new(RationalSymbol::approx_identity(m, z, n)?)));
        }
        let prod = approx_identity_symbol(Arc::new(HeatSymbol::new(m, 1.0)?), z, 4)?;
        out.push((format!("ζ={z:.3} N=4 × heat t=1"), Arc::new(prod)));
    }
    let sq = RationalSymbol::new(m, C64::new(1.0, 0.0), vec![(C64::new(g, 0.0), 2)])?;
    out.push(("resolvent square".into(), Arc::new(sq)));
    Ok(out)
}

fn check_zeta(zeta: f64, cut: &SpectralCutoffs) -> Result<()> {
    if !(zeta.abs() > cut.gamma_m) {
        return Err(domain(format!("ζ = {zeta} must lie outside [-γ_m, γ_m] = ±{}", cut.gamma_m)));
    }
    Ok(())
}

/// `(ζ² / (ζ² - s²))^N f̂(s)`, the symbol of `(ζ² r_ζ)^{*N} * f`.
pub fn approx_identity_symbol(f_hat: SymbolRef, zeta: f64, n: u32) -> Result<ProductSymbol> {
    let r = RationalSymbol::approx_identity(f_hat.m(), zeta, n)?;
    ProductSymbol::new(vec![Arc::new(r), f_hat])
}

/// `‖(ζ² r_ζ)^{*N} * f - f‖_{L¹(ω)}`, materialized from the symbol
/// `((ζ²/(ζ² - s²))^N - 1) f̂(s)`.
pub fn approx_identity_gap(f_hat: SymbolRef, zeta: f64, n: u32, cut: &SpectralCutoffs, cfg: &KernelConfig) -> Result<f64> {
    same_type(f_hat.m(), cut)?;
    check_zeta(zeta, cut)?;
    if n == 0 {
        return Ok(0.0);
    }
    let r = RationalSymbol::approx_identity(f_hat.m(), zeta, n)?;
    let diff = AffineSymbol { inner: Arc::new(r), scale: C64::new(1.0, 0.0), offset: C64::new(-1.0, 0.0) };
    let psi = ProductSymbol::new(vec![Arc::new(diff), f_hat])?;
    l1_weighted_norm(&synthesize(&psi, &cfg.grid, cut.alpha, &cfg.quad)?)
}

/// `‖(ζ² r_ζ)^{*N}‖_{L¹(ω)}`.
pub fn approx_identity_norm(m: i64, zeta: f64, n: u32, cut: &SpectralCutoffs, cfg: &KernelConfig) -> Result<f64> {
    same_type(m, cut)?;
    check_zeta(zeta, cut)?;
    l1_weighted_norm(&synthesize(&RationalSymbol::approx_identity(m, zeta, n)?, &cfg.grid, cut.alpha, &cfg.quad)?)
}

/// `h = (1/πi) ∫_Γ z ĥ(z) r_z dz` on `Γ = {γ_m + iy : |y| <= Y}`, each node a
/// materialized resolvent kernel.
pub fn generator_reconstruct(
    h_hat: &dyn SphericalSymbol,
    cut: &SpectralCutoffs,
    y_max: f64,
    cfg: &KernelConfig,
) -> Result<RadialProfile> {
    let m = h_hat.m();
    same_type(m, cut)?;
    if !(y_max > 0.0) {
        return Err(domain("truncation height must be positive"));
    }
    let g = cut.gamma_m;
    let probe = y_max.max(20.0);
    let hi = h_hat.eval(C64::new(g, probe))?.norm();
    let lo = h_hat.eval(C64::new(g, probe / 2.0))?.norm();
    if hi > 0.0 && (hi / lo).log2() > -7.5 {
        return Err(precondition(format!(
            "ĥ decays like |y|^{:.2} on the line, slower than |y|^-8",
            (hi / lo).log2()
        )));
    }
    let width = 0.5f64.min(PI / (4.0 * cfg.grid.r_max()));
    let panels = (2.0 * y_max / width).ceil() as usize;
    let rule = GaussLegendre::new(10);
    let mut coeffs = Vec::new();
    for k in 0..panels {
        let a = -y_max + 2.0 * y_max * k as f64 / panels as f64;
        let b = -y_max + 2.0 * y_max * (k + 1) as f64 / panels as f64;
        for (y, w) in rule.mapped(a, b) {
            let z = C64::new(g, y);
            // dz = i dy cancels the 1/i
            let c = z * h_hat.eval(z)? * (w / PI);
            coeffs.push((z, c, c.norm() * (1.0 + z.norm()).powi(4)));
        }
    }
    let peak = coeffs.iter().map(|c| c.2).fold(0.0, f64::max);
    let mut acc = vec![CSum::default(); cfg.grid.len()];
    for (z, c, bound) in coeffs {
        if bound <= 1e-16 * peak {
            continue;
        }
        let rz = resolvent_kernel(m, z, cut, cfg)?;
        for (a, v) in acc.iter_mut().zip(&rz.values) {
            a.add(c * v);
        }
    }
    RadialProfile::new(m, cut.alpha, cfg.grid.clone(), acc.iter().map(|a| a.sum()).collect(), None)
}
