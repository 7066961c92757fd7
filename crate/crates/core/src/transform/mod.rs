//! The forward m-spherical transform of radial profiles, its two inversion
//! formulas, the Plancherel identity, weighted L¹ norms and Paley-Wiener fits.

mod grid;
mod symbol;

pub use grid::{GridSpec, RadialGrid, RadialProfile, Tail, SUPPORT_THRESHOLD};
pub use symbol::{
    check_symbol, AffineSymbol, EigenvalueSymbol, HeatSymbol, ProductSymbol, RationalSymbol, SphericalSymbol, SymbolCheck, SymbolKind,
    SymbolPole, SymbolRef, TabulatedSymbol, TransformSymbol,
};

use crate::error::{domain, precondition, Error, Result};
use crate::quadrature::{CSum, GaussLegendre, Neumaier};
use crate::special::{c_abs_inv_sq_axis, c_inv_poles, discrete_spectrum, ln_c_function, SpectralParam};
use crate::spherical::{decay_profile, ln_phi_big_radial, ln_phi_radial, phi_radial};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Angular constant of the radial reduction: `∫_G f = κ ∫_0^∞ F(r) 2 sinh 2r dr`
/// for type-m f. Forced by the inversion constants `1/8π²` and `1/8π`.
pub const KAPPA: f64 = 4.0 * PI;

/// Membership in the closed strip `𝕊_δ = {|Re s| <= δ/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub delta: f64,
}

impl Strip {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta >= 0.0) {
            return Err(domain("strip width must be nonnegative"));
        }
        Ok(Strip { delta })
    }

    pub fn contains(&self, s: C64) -> bool {
        2.0 * s.re.abs() <= self.delta
    }
}

/// Panel rule for spectral (λ) integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralQuadrature {
    pub order: usize,
    pub max_panel: f64,
    /// Stop once panel maxima fall below this fraction of the running peak...
    pub rel_tol: f64,
    /// ...for this many consecutive panels.
    pub quiet_panels: usize,
    pub lambda_max: f64,
    /// Evaluate contour integrals of rational symbols by residues.
    pub closure: bool,
}

impl Default for SpectralQuadrature {
    fn default() -> Self {
        SpectralQuadrature { order: 10, max_panel: 0.5, rel_tol: 1e-16, quiet_panels: 3, lambda_max: 4000.0, closure: true }
    }
}

/// Walks panels `[a, a + width]` from 0 until the integrand is negligible.
/// `panel` integrates one panel and returns the log of the largest integrand
/// bound seen (contour integrands over- and underflow).
fn march_panels<F>(width: f64, end: Option<f64>, q: &SpectralQuadrature, mut panel: F) -> Result<()>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let mut peak = f64::NEG_INFINITY;
    let mut quiet = 0;
    let mut a = 0.0;
    let ln_tol = q.rel_tol.ln();
    loop {
        let mut b = a + width;
        if let Some(e) = end {
            b = b.min(e);
        }
        let mag = panel(a, b)?;
        if mag.is_nan() || mag == f64::INFINITY {
            return Err(Error::Resolution(format!("spectral integrand not finite near λ = {a}")));
        }
        peak = peak.max(mag);
        quiet = if mag == f64::NEG_INFINITY || mag <= ln_tol + peak { quiet + 1 } else { 0 };
        if quiet >= q.quiet_panels || end.is_some_and(|e| b >= e) {
            return Ok(());
        }
        if b >= q.lambda_max {
            return Err(precondition(format!("spectral integrand still significant at λ = {b}")));
        }
        a = b;
    }
}

fn check_radii(rs: &[f64], positive: bool) -> Result<()> {
    if rs.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(domain("radii must be increasing"));
    }
    match rs.first() {
        Some(&r) if positive && !(r > 0.0) => Err(domain("the contour formula needs r > 0")),
        Some(&r) if !(r >= 0.0) => Err(domain("radii must be nonnegative")),
        _ => Ok(()),
    }
}

fn admissible(f: &RadialProfile, s: SpectralParam) -> bool {
    f.is_compact() || 2.0 * s.s.re.abs() <= f.alpha + 1.0 + 1e-12 || s.in_discrete(f.m)
}

/// `f̂(s) = κ ∫_0^∞ F(r) φ_{m,s}(a_r) 2 sinh 2r dr`, with the tail descriptor
/// integrated beyond the grid.
pub fn forward_transform(f: &RadialProfile, s: SpectralParam) -> Result<C64> {
    if !admissible(f, s) {
        return Err(domain(format!("s = {} lies outside the strip of width {} and the discrete set", s.s, f.alpha + 1.0)));
    }
    let m = f.m;
    let n = f.active_len();
    let rs = &f.grid.nodes()[..n];
    let hw = f.grid.haar_weights();
    let lphi = ln_phi_radial(m, s.s, rs)?;
    let mut acc = CSum::default();
    for i in 0..n {
        if f.values[i] != C64::new(0.0, 0.0) {
            acc.add(f.values[i] * lphi[i].exp() * hw[i]);
        }
    }
    if let Some(t) = f.tail.filter(|t| t.coeff.norm() > 0.0) {
        let growth = decay_profile(m, s).rate;
        let e = t.rate + growth + 2.0;
        if e >= 0.0 {
            return Err(precondition(format!("tail rate {} is not integrable against φ at s = {}", t.rate, s.s)));
        }
        let r0 = f.grid.r_max();
        let len = (40.0 / -e).min(100.0);
        let width = 1f64.min(PI / (4.0 * s.s.im.abs().max(0.25)));
        let panels = (len / width).ceil() as usize;
        let rule = GaussLegendre::new(12);
        let mut nodes = Vec::new();
        for k in 0..panels {
            let a = r0 + len * k as f64 / panels as f64;
            let b = r0 + len * (k + 1) as f64 / panels as f64;
            nodes.extend(rule.mapped(a, b));
        }
        let rs: Vec<f64> = nodes.iter().map(|p| p.0).collect();
        let lphi = ln_phi_radial(m, s.s, &rs)?;
        for ((r, w), lp) in nodes.iter().zip(lphi) {
            acc.add(t.eval(*r) * lp.exp() * (w * 2.0 * (2.0 * r).sinh()));
        }
    }
    Ok(acc.sum() * KAPPA)
}

/// `f̂(iλ)` for each λ.
pub fn transform_axis(f: &RadialProfile, lambdas: &[f64]) -> Result<Vec<C64>> {
    lambdas.iter().map(|&l| forward_transform(f, SpectralParam::imag(l))).collect()
}

fn axis_bound(psi: &dyn SphericalSymbol, lambda: f64) -> Result<f64> {
    Ok(psi.eval(C64::new(0.0, lambda))?.norm() * c_abs_inv_sq_axis(psi.m(), lambda))
}

/// Estimates the decay exponent of `|ψ(iλ)| |c_m(iλ)|⁻²` from samples at
/// λ = 100, 200, 400 and rejects symbols whose axis integral diverges.
fn axis_divergence_probe(psi: &dyn SphericalSymbol) -> Result<()> {
    let b1 = axis_bound(psi, 100.0)?;
    let b2 = axis_bound(psi, 200.0)?;
    let b3 = axis_bound(psi, 400.0)?;
    if b3 == 0.0 || b2 == 0.0 {
        return Ok(());
    }
    let p = (b3 / b2).log2().max((b2 / b1.max(1e-300)).log2());
    if p > -1.1 && b3 > 1e-30 {
        return Err(precondition(format!(
            "∫|ψ(iλ)||c(iλ)|⁻² dλ diverges (integrand ~ λ^{p:.2})"
        )));
    }
    Ok(())
}

/// Inversion along the imaginary axis at a single radius.
pub fn invert_axis(psi: &dyn SphericalSymbol, r: f64) -> Result<C64> {
    Ok(invert_axis_many(psi, &[r], &SpectralQuadrature::default())?[0])
}

/// `(1/8π²) ∫_ℝ ψ(iλ) φ_{m,iλ}(a_r) |c_m(iλ)|⁻² dλ + (1/8π) Σ_{s∈𝔻_m} |s| ψ(s) φ_{m,s}(a_r)`
/// at every radius of an increasing list.
pub fn invert_axis_many(psi: &dyn SphericalSymbol, rs: &[f64], q: &SpectralQuadrature) -> Result<Vec<C64>> {
    check_radii(rs, false)?;
    let m = psi.m();
    let mut acc = vec![CSum::default(); rs.len()];
    for p in discrete_spectrum(m).points {
        let v = psi.discrete_value(p)? * (p.value().abs() / (8.0 * PI));
        for (a, ph) in acc.iter_mut().zip(phi_radial(m, SpectralParam::real(p.value()), rs)?) {
            a.add(v * ph);
        }
    }
    if psi.axis_cutoff().is_none() {
        axis_divergence_probe(psi)?;
    }
    let r_max = rs.last().copied().unwrap_or(0.0);
    let width = q.max_panel.min(PI / (4.0 * r_max.max(1.0)));
    let rule = GaussLegendre::new(q.order);
    march_panels(width, psi.axis_cutoff(), q, |a, b| {
        let mut mag = f64::NEG_INFINITY;
        for (l, w) in rule.mapped(a, b) {
            let s = C64::new(0.0, l);
            let v = psi.eval(s)?;
            let dens = c_abs_inv_sq_axis(m, l);
            mag = mag.max((v.norm() * dens).ln());
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            // the integrand is even in λ, so the full line is twice the half line
            let k = v * (w * dens / (4.0 * PI * PI));
            for (acc, lp) in acc.iter_mut().zip(ln_phi_radial(m, s, rs)?) {
                acc.add(k * lp.exp());
            }
        }
        Ok(mag)
    })?;
    Ok(acc.iter().map(|a| a.sum()).collect())
}

/// Inversion along `Re s = δ` at a single radius.
pub fn invert_contour(psi: &dyn SphericalSymbol, r: f64, delta: f64) -> Result<C64> {
    Ok(invert_contour_many(psi, &[r], delta, &SpectralQuadrature::default())?[0])
}

/// `(1/4π²) ∫_ℝ ψ(δ+iλ) c_m(δ+iλ)⁻¹ Φ_{m,-δ-iλ}(a_r) dλ + (1/8π) Σ_{s∈𝔻_m, |s|>δ} |s| ψ(s) φ_{m,s}(a_r)`
/// at every radius of an increasing list of positive radii.
///
/// Rational symbols are integrated in closed form by summing the residues to
/// the right of the contour (the residues at the poles of `c_m⁻¹` cancel the
/// discrete terms), unless `q.closure` is off.
pub fn invert_contour_many(psi: &dyn SphericalSymbol, rs: &[f64], delta: f64, q: &SpectralQuadrature) -> Result<Vec<C64>> {
    check_radii(rs, true)?;
    let m = psi.m();
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(domain(format!("contour abscissa {delta} must be finite and nonnegative")));
    }
    let disc = discrete_spectrum(m);
    if disc.contains(delta) {
        return Err(domain(format!("the contour Re s = {delta} passes through a pole of c_m⁻¹")));
    }
    if !(delta < psi.holomorphy_half_width()) {
        return Err(precondition(format!("symbol is not holomorphic up to Re s = {delta}")));
    }
    if q.closure {
        if let Some(poles) = psi.right_poles() {
            return residue_closure(psi, &poles, rs);
        }
    }
    let mut acc = vec![CSum::default(); rs.len()];
    for p in disc.points.iter().filter(|p| p.value().abs() > delta) {
        let v = psi.discrete_value(*p)? * (p.value().abs() / (8.0 * PI));
        for (a, ph) in acc.iter_mut().zip(phi_radial(m, SpectralParam::real(p.value()), rs)?) {
            a.add(v * ph);
        }
    }
    let phase = psi.phase_rate(delta);
    let omega = rs.iter().map(|r| (2.0 * r - phase).abs()).fold(0.0, f64::max);
    // near λ = 0 the integrand varies on the scale of the distance to the closest singularity
    let gap = disc.distance(delta).min(psi.holomorphy_half_width() - delta);
    let width = q.max_panel.min(PI / (4.0 * omega.max(1.0))).min(gap);
    let rule = GaussLegendre::new(q.order);
    march_panels(width, psi.axis_cutoff(), q, |a, b| {
        let mut mag = f64::NEG_INFINITY;
        for (l, w) in rule.mapped(a, b) {
            let s = C64::new(delta, l);
            let lc = ln_c_function(m, s)?;
            let lp = psi.ln_eval(s)?;
            let lm = psi.ln_eval(s.conj())?;
            mag = mag.max(lp.re - lc.re).max(lm.re - lc.re);
            let k = w / (4.0 * PI * PI);
            // Φ and c are real on the real axis, so the λ < 0 half uses conjugates
            for (acc, lf) in acc.iter_mut().zip(ln_phi_big_radial(m, -s, rs)?) {
                acc.add((lp - lc + lf).exp() * k);
                acc.add((lm - lc.conj() + lf.conj()).exp() * k);
            }
        }
        Ok(mag)
    })?;
    Ok(acc.iter().map(|a| a.sum()).collect())
}

/// `-(1/2π) Σ_p Res_{s=p} ψ(s) c_m(s)⁻¹ Φ_{m,-s}(a_r)` over the right poles of ψ.
fn residue_closure(psi: &dyn SphericalSymbol, poles: &[SymbolPole], rs: &[f64]) -> Result<Vec<C64>> {
    let m = psi.m();
    let mut out = vec![C64::new(0.0, 0.0); rs.len()];
    for p in poles {
        // in Re s > 0 only the poles of c_m⁻¹ on 𝔻_m are singular besides ψ's own
        let lattice = c_inv_poles(m)
            .positive
            .iter()
            .map(|c| (p.at - c.location.value()).norm())
            .fold(f64::INFINITY, f64::min);
        if lattice < 1e-9 {
            return Err(precondition(format!("symbol pole {} coincides with a pole of c_m⁻¹", p.at)));
        }
        let res: Vec<C64> = match p.simple_factor {
            Some(k) => {
                let k = k * (-ln_c_function(m, p.at)?).exp();
                ln_phi_big_radial(m, -p.at, rs)?.into_iter().map(|lf| k * lf.exp()).collect()
            }
            None => {
                let others = poles
                    .iter()
                    .filter(|o| o.at != p.at)
                    .flat_map(|o| [(p.at - o.at).norm(), (p.at + o.at).norm()])
                    .fold(f64::INFINITY, f64::min);
                let rho = 0.4 * lattice.min(others).min(p.at.re);
                let n = 64;
                let mut acc = vec![CSum::default(); rs.len()];
                for j in 0..n {
                    let th = 2.0 * PI * j as f64 / n as f64;
                    let e = C64::new(th.cos(), th.sin()) * rho;
                    let s = p.at + e;
                    let k = psi.ln_eval(s)? - ln_c_function(m, s)?;
                    for (a, lf) in acc.iter_mut().zip(ln_phi_big_radial(m, -s, rs)?) {
                        a.add((k + lf).exp() * e / n as f64);
                    }
                }
                acc.iter().map(|a| a.sum()).collect()
            }
        };
        for (o, r) in out.iter_mut().zip(res) {
            *o -= r / (2.0 * PI);
        }
    }
    Ok(out)
}

/// Default contour abscissa: the symbol's own preference, else `(α+1)/2 + 0.26`;
/// kept inside the holomorphy strip and at least 0.1 away from `𝔻_m`.
pub fn contour_abscissa(psi: &dyn SphericalSymbol, r: f64, alpha: f64) -> f64 {
    let w = psi.holomorphy_half_width();
    let mut d = match psi.contour_shift(r) {
        // quantized so that neighbouring radii share one contour
        Some(x) => (x / 0.125).round() * 0.125,
        None => (alpha + 1.0) / 2.0 + 0.26,
    };
    d = d.min(60.0);
    if d > w - 0.25 {
        d = (w - 0.25).max(w / 2.0);
    }
    let disc = discrete_spectrum(psi.m());
    let mut up = d;
    while disc.distance(up) < 0.1 {
        up += 0.01;
    }
    if up < w {
        return up;
    }
    let mut down = d;
    while disc.distance(down) < 0.1 && down > 0.01 {
        down -= 0.01;
    }
    down.max(0.0)
}

/// Materializes the profile with symbol ψ on a grid: residue closure for
/// rational symbols, otherwise the axis formula for `r <= 1` and shifted
/// contours beyond.
pub fn synthesize(psi: &dyn SphericalSymbol, grid: &RadialGrid, alpha: f64, q: &SpectralQuadrature) -> Result<RadialProfile> {
    synthesize_with(psi, grid, alpha, q, &|r| contour_abscissa(psi, r, alpha))
}

/// [`synthesize`] with a caller-chosen contour abscissa for each radius `r > 1`.
pub fn synthesize_with(
    psi: &dyn SphericalSymbol,
    grid: &RadialGrid,
    alpha: f64,
    q: &SpectralQuadrature,
    abscissa: &dyn Fn(f64) -> f64,
) -> Result<RadialProfile> {
    let m = psi.m();
    let nodes = grid.nodes();
    let w = psi.holomorphy_half_width();
    let mut values = Vec::with_capacity(nodes.len());
    let tail_delta;
    if let (true, Some(poles)) = (q.closure, psi.right_poles()) {
        values = residue_closure(psi, &poles, nodes)?;
        tail_delta = poles.iter().map(|p| p.at.re).fold(f64::INFINITY, f64::min);
    } else if w <= 0.0 {
        values = invert_axis_many(psi, nodes, q)?;
        tail_delta = f64::NAN;
    } else {
        let split = nodes.partition_point(|&r| r <= 1.0);
        values.extend(invert_axis_many(psi, &nodes[..split], q)?);
        let mut i = split;
        let mut last = f64::NAN;
        while i < nodes.len() {
            let d = abscissa(nodes[i]);
            let mut j = i + 1;
            while j < nodes.len() && abscissa(nodes[j]) == d {
                j += 1;
            }
            values.extend(invert_contour_many(psi, &nodes[i..j], d, q)?);
            last = d;
            i = j;
        }
        tail_delta = last;
    }
    let tail = match (tail_delta.is_finite(), values.last()) {
        (true, Some(&v)) if v.norm() > 0.0 => {
            let rate = -(1.0 + 2.0 * tail_delta);
            // a coefficient past the f64 range means the tail is below it too
            Some(Tail { rate, coeff: v * (-rate * grid.r_max()).exp() }).filter(|t| t.coeff.is_finite())
        }
        _ => None,
    };
    RadialProfile::new(m, alpha, grid.clone(), values, tail)
}

/// Both sides of the type-m Plancherel identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlancherelReport {
    /// `κ ∫ |F|² 2 sinh 2r dr`.
    pub lhs: f64,
    /// `(1/8π²) ∫_ℝ |f̂(iλ)|² |c_m(iλ)|⁻² dλ + (1/8π) Σ_{𝔻_m} |s| |f̂(s)|²`.
    pub rhs: f64,
    pub continuous: f64,
    pub discrete: f64,
}

impl PlancherelReport {
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }
}

pub fn plancherel_check(f: &RadialProfile, q: &SpectralQuadrature) -> Result<PlancherelReport> {
    let hw = f.grid.haar_weights();
    let mut lhs = Neumaier::default();
    for (v, w) in f.values.iter().zip(hw) {
        lhs.add(v.norm_sqr() * w);
    }
    let mut lhs = lhs.sum();
    if let Some(t) = f.tail.filter(|t| t.coeff.norm() > 0.0) {
        lhs += tail_integral(t.coeff.norm_sqr(), 2.0 * t.rate, f.grid.r_max())?;
    }
    lhs *= KAPPA;
    let m = f.m;
    // |f̂|² reaches the grid's quadrature floor long before 1e-16 of its peak
    let q = &SpectralQuadrature { rel_tol: q.rel_tol.max(1e-14), ..*q };
    let mut cont = Neumaier::default();
    let supp = f.support_radius(SUPPORT_THRESHOLD).unwrap_or(1.0);
    let width = q.max_panel.min(PI / (4.0 * supp.max(1.0)));
    let rule = GaussLegendre::new(q.order);
    march_panels(width, None, q, |a, b| {
        let mut mag = f64::NEG_INFINITY;
        for (l, w) in rule.mapped(a, b) {
            let v = forward_transform(f, SpectralParam::imag(l))?.norm_sqr() * c_abs_inv_sq_axis(m, l);
            mag = mag.max(v.ln());
            cont.add(w * v);
        }
        Ok(mag)
    })?;
    let continuous = cont.sum() / (4.0 * PI * PI);
    let mut disc = Neumaier::default();
    for p in discrete_spectrum(m).points {
        let v = forward_transform(f, SpectralParam::real(p.value()))?;
        disc.add(p.value().abs() * v.norm_sqr() / (8.0 * PI));
    }
    let discrete = disc.sum();
    Ok(PlancherelReport { lhs, rhs: continuous + discrete, continuous, discrete })
}

/// `∫_{r0}^∞ a e^{b r} 2 sinh 2r dr` for `b < -2`.
fn tail_integral(a: f64, b: f64, r0: f64) -> Result<f64> {
    if b + 2.0 >= 0.0 {
        return Err(precondition(format!("tail rate {b} is not integrable against the Haar density")));
    }
    Ok(a * (((b + 2.0) * r0).exp() / -(b + 2.0) - ((b - 2.0) * r0).exp() / -(b - 2.0)))
}

/// `‖f‖_{L¹(G,ω_α)} = κ ∫_0^∞ |F(r)| e^{αr} 2 sinh 2r dr`.
pub fn l1_weighted_norm(f: &RadialProfile) -> Result<f64> {
    let mut acc = Neumaier::default();
    for ((v, w), r) in f.values.iter().zip(f.grid.haar_weights()).zip(f.grid.nodes()) {
        acc.add(v.norm() * (f.alpha * r).exp() * w);
    }
    let mut total = acc.sum();
    if let Some(t) = f.tail.filter(|t| t.coeff.norm() > 0.0) {
        total += tail_integral(t.coeff.norm(), t.rate + f.alpha, f.grid.r_max())?;
    }
    Ok(KAPPA * total)
}

/// Exponential type and axis decay of the transform of a compactly supported profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PaleyWienerReport {
    /// Largest radius where `|F|` exceeds `1e-10 max|F|`.
    pub support_radius: f64,
    /// τ in the fit `ln|f̂(σ)| ≈ τσ + p ln σ + c` over real σ ∈ [10, 40] / min(R, 1).
    pub fitted_type: f64,
    pub fitted_power: f64,
    /// `2 R`, the predicted type.
    pub predicted_type: f64,
    /// Slope of the log-log envelope of `|f̂(iλ)|` over λ ∈ [4, 40].
    pub axis_slope: f64,
}

impl PaleyWienerReport {
    pub fn decays_faster_than(&self, n: f64) -> bool {
        self.axis_slope < -n
    }
}

/// Least-squares solution of a small dense system by Gaussian elimination.
fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let k = rows[0].len();
    let mut a = vec![vec![0.0; k + 1]; k];
    for (row, &yi) in rows.iter().zip(y) {
        for i in 0..k {
            for j in 0..k {
                a[i][j] += row[i] * row[j];
            }
            a[i][k] += row[i] * yi;
        }
    }
    for c in 0..k {
        let p = (c..k).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap()).unwrap();
        a.swap(c, p);
        for i in 0..k {
            if i != c {
                let f = a[i][c] / a[c][c];
                for j in c..=k {
                    a[i][j] -= f * a[c][j];
                }
            }
        }
    }
    (0..k).map(|i| a[i][k] / a[i][i]).collect()
}

pub fn paley_wiener_report(f: &RadialProfile) -> Result<PaleyWienerReport> {
    if !f.is_compact() {
        return Err(precondition("Paley-Wiener diagnostics need a compactly supported profile"));
    }
    let support_radius = f.support_radius(SUPPORT_THRESHOLD).ok_or_else(|| precondition("profile vanishes"))?;
    let mut rows = Vec::new();
    let mut ys = Vec::new();
    // the window scales with 1/R so that σR covers the same range for every support
    let stretch = 1.0 / support_radius.clamp(0.25, 1.0);
    for k in 0..=15 {
        let sigma = (10.0 + 2.0 * k as f64) * stretch;
        let v = forward_transform(f, SpectralParam::real(sigma))?;
        rows.push(vec![sigma, sigma.ln(), 1.0]);
        ys.push(v.norm().ln());
    }
    let fit = least_squares(&rows, &ys);
    // envelope: per-bin maxima on a log-spaced λ partition
    let bins = 12;
    let (lo, hi) = (4f64.ln(), 40f64.ln());
    let mut env_rows = Vec::new();
    let mut env_ys = Vec::new();
    for b in 0..bins {
        let (a, c) = (lo + (hi - lo) * b as f64 / bins as f64, lo + (hi - lo) * (b + 1) as f64 / bins as f64);
        let mut best: f64 = 0.0;
        for j in 0..8 {
            let l = (a + (c - a) * (j as f64 + 0.5) / 8.0).exp();
            best = best.max(forward_transform(f, SpectralParam::imag(l))?.norm());
        }
        env_rows.push(vec![0.5 * (a + c), 1.0]);
        env_ys.push(best.max(1e-300).ln());
    }
    let slope = least_squares(&env_rows, &env_ys)[0];
    Ok(PaleyWienerReport {
        support_radius,
        fitted_type: fit[0],
        fitted_power: fit[1],
        predicted_type: 2.0 * support_radius,
        axis_slope: slope,
    })
}

#[cfg(test)]
mod tests;
