//! Direct convolution on G of functions with prescribed left and right
//! K-types, the K-Fourier projections, and the intertwining `f * g = g * f'`
//! between types n and m.
//!
//! Convolution here is an oracle: it integrates over the Cartan chart of G
//! and costs O(radial × angular²) per output radius. Products of symbols are
//! the fast path for functions of a single type.

use crate::error::{domain, precondition, resolution, Result};
use crate::group::{cartan_decompose, GroupElement};
use crate::quadrature::CSum;
use crate::transform::{invert_axis_many, RadialGrid, RadialProfile, SpectralQuadrature, TransformSymbol, KAPPA};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Values below this fraction of the peak do not enter the radial integrals.
const NEGLIGIBLE: f64 = 1e-14;

/// A function with `g(k_θ x k_φ) = e^{-inθ - imφ} g(x)`, stored through its
/// radial part `G(r) = g(a_r)`. The right type is `radial.m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiTypeProfile {
    pub n: i64,
    pub radial: RadialProfile,
}

impl BiTypeProfile {
    pub fn new(n: i64, radial: RadialProfile) -> Self {
        BiTypeProfile { n, radial }
    }

    pub fn m(&self) -> i64 {
        self.radial.m
    }

    /// Builds the (n, m) profile `G(r) = f(r)` on a grid.
    pub fn from_fn<F: Fn(f64) -> C64>(n: i64, m: i64, alpha: f64, grid: RadialGrid, f: F) -> Result<Self> {
        Ok(BiTypeProfile { n, radial: RadialProfile::from_fn(m, alpha, grid, f)? })
    }

    /// The smooth compactly supported (n, m) function with radial part
    /// `sinh(2r)^{|n-m|/2} (1 - (r/R)²)^8` on `r < R`, sampled on a grid fine
    /// enough near the support to resolve its transform up to λ ≈ 40.
    pub fn bump(n: i64, m: i64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius <= 8.0) {
            return Err(domain(format!("bump radius {radius} must lie in (0, 8]")));
        }
        if (n - m) % 2 != 0 {
            return Err(domain(format!("types {n} and {m} differ by an odd integer")));
        }
        let k = ((n - m).unsigned_abs() / 2) as i32;
        let grid = RadialGrid::refined(radius.max(2.0), 0.05, 12.0)?;
        Self::from_fn(n, m, 0.0, grid, |r| {
            let x = r / radius;
            let b = if x < 1.0 { (1.0 - x * x).powi(8) } else { 0.0 };
            C64::new((2.0 * r).sinh().powi(k) * b, 0.0)
        })
    }

    pub fn eval_at(&self, x: &GroupElement) -> Result<C64> {
        let c = cartan_decompose(x)?;
        let phase = -(self.n as f64) * c.theta - (self.m() as f64) * c.psi;
        Ok(C64::from_polar(1.0, phase) * self.radial.eval(c.r))
    }
}

impl From<RadialProfile> for BiTypeProfile {
    fn from(p: RadialProfile) -> Self {
        BiTypeProfile { n: p.m, radial: p }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvolutionConfig {
    /// Trapezoid points for the left angle of y.
    pub theta_points: usize,
    /// Trapezoid points for the right angle of y; by default just enough to
    /// integrate the phases exactly.
    pub psi_points: Option<usize>,
}

impl Default for ConvolutionConfig {
    fn default() -> Self {
        ConvolutionConfig { theta_points: 128, psi_points: None }
    }
}

/// `(f * g)(a_ρ) = ∫_G f(y) g(y⁻¹ a_ρ) dy` at each radius, with y in Cartan
/// coordinates `k_θ a_r k_ψ`, Gauss–Legendre in r from f's grid and the
/// trapezoid rule in θ and ψ over `[0, 2π)²`.
pub fn convolve_at(f: &BiTypeProfile, g: &BiTypeProfile, rhos: &[f64], cfg: &ConvolutionConfig) -> Result<Vec<C64>> {
    if rhos.iter().any(|r| !(*r >= 0.0 && r.is_finite())) {
        return Err(domain("output radii must be finite and nonnegative"));
    }
    let types = [f.n, f.m(), g.n, g.m()].iter().map(|t| t.unsigned_abs() as usize).sum::<usize>();
    if cfg.theta_points < 2 * types + 16 {
        return Err(resolution(format!(
            "{} angular points cannot resolve the phases of types ({}, {}) and ({}, {})",
            cfg.theta_points,
            f.n,
            f.m(),
            g.n,
            g.m()
        )));
    }
    let n_psi = cfg.psi_points.unwrap_or(2 * (f.m().unsigned_abs() + g.n.unsigned_abs()) as usize + 4);
    let fr = &f.radial;
    let peak = fr.max_abs();
    if let Some(t) = fr.tail {
        if t.eval(fr.grid.r_max()).norm() > NEGLIGIBLE * peak {
            return Err(precondition("the first factor must be negligible at the end of its grid"));
        }
    }
    let nodes: Vec<(f64, f64, C64)> = fr
        .grid
        .nodes()
        .iter()
        .zip(fr.grid.haar_weights())
        .zip(&fr.values)
        .filter(|(_, v)| v.norm() > NEGLIGIBLE * peak)
        .map(|((r, w), v)| (*r, *w, *v))
        .collect();
    let thetas: Vec<(GroupElement, C64)> = (0..cfg.theta_points)
        .map(|j| {
            let th = TAU * j as f64 / cfg.theta_points as f64;
            (GroupElement::k(th), C64::from_polar(1.0, -(f.n as f64) * th))
        })
        .collect();
    let psis: Vec<(GroupElement, C64)> = (0..n_psi)
        .map(|j| {
            let ps = TAU * j as f64 / n_psi as f64;
            (GroupElement::k(-ps), C64::from_polar(1.0, -(f.m() as f64) * ps))
        })
        .collect();
    // κ/(4π²) dθ dψ 2 sinh 2r dr over the double cover [0, 2π)²
    let scale = KAPPA / (4.0 * PI * PI) * (TAU / cfg.theta_points as f64) * (TAU / n_psi as f64);
    let mut out = Vec::with_capacity(rhos.len());
    for &rho in rhos {
        let target = GroupElement::a_r(rho);
        let mut acc = CSum::default();
        for &(r, w, fv) in &nodes {
            let a_inv = GroupElement::a_r(-r);
            for (kt, et) in &thetas {
                // y⁻¹ a_ρ = k(-ψ) a(-r) k(-θ) a_ρ
                let inner = a_inv * kt.inverse() * target;
                let mut s = C64::new(0.0, 0.0);
                for (kp, ep) in &psis {
                    s += ep * g.eval_at(&(*kp * inner))?;
                }
                acc.add(s * et * fv * w);
            }
        }
        out.push(acc.sum() * scale);
    }
    Ok(out)
}

/// `f * g` on the nodes of `grid`, as a profile of type `(f.n, g.m)`.
///
/// When both factors are compact, nodes beyond the sum of their supports
/// are set to zero without integrating.
pub fn convolve(f: &BiTypeProfile, g: &BiTypeProfile, grid: &RadialGrid, cfg: &ConvolutionConfig) -> Result<BiTypeProfile> {
    let reach = match (f.radial.is_compact(), g.radial.is_compact()) {
        (true, true) => {
            let sf = f.radial.support_radius(NEGLIGIBLE).unwrap_or(0.0);
            let sg = g.radial.support_radius(NEGLIGIBLE).unwrap_or(0.0);
            sf + sg + 0.25
        }
        _ => f64::INFINITY,
    };
    let inside: Vec<f64> = grid.nodes().iter().copied().filter(|r| *r <= reach).collect();
    let mut values = convolve_at(f, g, &inside, cfg)?;
    values.resize(grid.len(), C64::new(0.0, 0.0));
    Ok(BiTypeProfile { n: f.n, radial: RadialProfile::new(g.m(), f.radial.alpha, grid.clone(), values, None)? })
}

/// The `(n, m)` component `μ_n * f * μ_m` of a function on G, as its radial part
/// `(1/4π²) ∫∫ e^{inθ + imψ} f(k_θ a_r k_ψ) dθ dψ`, by the trapezoid rule with
/// `points` nodes per angle.
pub fn k_project<F>(f: F, n: i64, m: i64, alpha: f64, grid: RadialGrid, points: usize) -> Result<BiTypeProfile>
where
    F: Fn(&GroupElement) -> C64,
{
    if points < 2 * (n.unsigned_abs() + m.unsigned_abs()) as usize + 4 {
        return Err(resolution(format!("{points} angular points cannot resolve types ({n}, {m})")));
    }
    let ks: Vec<(GroupElement, f64)> = (0..points)
        .map(|j| {
            let t = TAU * j as f64 / points as f64;
            (GroupElement::k(t), t)
        })
        .collect();
    let w = 1.0 / (points * points) as f64;
    BiTypeProfile::from_fn(n, m, alpha, grid, |r| {
        let a = GroupElement::a_r(r);
        let mut acc = CSum::default();
        for (kt, th) in &ks {
            let left = *kt * a;
            for (kp, ps) in &ks {
                acc.add(C64::from_polar(1.0, n as f64 * th + m as f64 * ps) * f(&(left * *kp)));
            }
        }
        acc.sum() * w
    })
}

/// Fejér-weighted sum `Σ_{|n|,|m|<M} (1 - |n|/M)(1 - |m|/M) e^{-inθ - imψ} G_{nm}(r)`
/// of projected components at `x = k_θ a_r k_ψ`.
pub fn fejer_sum(components: &[BiTypeProfile], order: usize, x: &GroupElement) -> Result<C64> {
    let big_m = order as f64;
    let mut acc = CSum::default();
    for c in components {
        let (wn, wm) = (1.0 - c.n.unsigned_abs() as f64 / big_m, 1.0 - c.m().unsigned_abs() as f64 / big_m);
        if wn > 0.0 && wm > 0.0 {
            acc.add(c.eval_at(x)? * (wn * wm));
        }
    }
    Ok(acc.sum())
}

/// Result of the type-changing intertwining.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Intertwining {
    /// Type-m profile whose m-transform is the n-transform of f.
    pub f_prime: RadialProfile,
    pub probes: Vec<f64>,
    /// `(f * g)(a_r)` at the probes.
    pub lhs: Vec<C64>,
    /// `(g * f')(a_r)` at the probes.
    pub rhs: Vec<C64>,
    /// `max |lhs - rhs| / max |lhs|`.
    pub residual: f64,
}

/// Settings of [`intertwine`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntertwineConfig {
    pub conv: ConvolutionConfig,
    /// Largest λ at which the transform of f is trusted.
    pub lambda_cutoff: f64,
    pub quad: SpectralQuadrature,
}

impl Default for IntertwineConfig {
    fn default() -> Self {
        IntertwineConfig {
            conv: ConvolutionConfig::default(),
            lambda_cutoff: 40.0,
            quad: SpectralQuadrature { rel_tol: 1e-12, ..Default::default() },
        }
    }
}

/// Given f of type n and g of type (n, m), builds f′ of type m with the same
/// spherical transform and compares `f * g` with `g * f′` at the probe radii.
///
/// f′ is inverted along the axis on f's support (plus a margin) and set to
/// zero beyond it; a compact f has a compact f′ with the same exponential type.
pub fn intertwine(f: &RadialProfile, g: &BiTypeProfile, probes: &[f64], cfg: &IntertwineConfig) -> Result<Intertwining> {
    let (n, m) = (g.n, g.m());
    if f.m != n {
        return Err(domain(format!("f has type {} but g has left type {n}", f.m)));
    }
    if (n - m) % 2 != 0 {
        return Err(domain(format!("types {n} and {m} differ by an odd integer")));
    }
    if !f.is_compact() || !g.radial.is_compact() {
        return Err(precondition("intertwining needs compactly supported f and g"));
    }
    let reach = f.support_radius(NEGLIGIBLE).unwrap_or(0.0) + 0.25;
    let psi = TransformSymbol::retyped(f.clone(), m).with_cutoff(cfg.lambda_cutoff);
    let inside: Vec<f64> = f.grid.nodes().iter().copied().filter(|r| *r <= reach).collect();
    let mut values = invert_axis_many(&psi, &inside, &cfg.quad)?;
    values.resize(f.grid.len(), C64::new(0.0, 0.0));
    let f_prime = RadialProfile::new(m, f.alpha, f.grid.clone(), values, None)?;
    let lhs = convolve_at(&f.clone().into(), g, probes, &cfg.conv)?;
    let rhs = convolve_at(g, &f_prime.clone().into(), probes, &cfg.conv)?;
    let scale = lhs.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let residual = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale;
    Ok(Intertwining { f_prime, probes: probes.to_vec(), lhs, rhs, residual })
}

#[cfg(test)]
mod tests;
