use crate::error::{domain, Result};
use crate::quadrature::{barycentric_eval, barycentric_weights, GaussLegendre};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Composite Gauss-Legendre grid on `[0, R_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridSpec", into = "GridSpec")]
pub struct RadialGrid {
    breaks: Vec<f64>,
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    haar: Vec<f64>,
    ref_nodes: Vec<f64>,
    bary: Vec<f64>,
}

/// Serialized form of a grid: panel breakpoints and rule order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub breaks: Vec<f64>,
    pub order: usize,
}

impl TryFrom<GridSpec> for RadialGrid {
    type Error = crate::error::Error;
    fn try_from(s: GridSpec) -> Result<Self> {
        RadialGrid::new(s.breaks, s.order)
    }
}

impl From<RadialGrid> for GridSpec {
    fn from(g: RadialGrid) -> Self {
        GridSpec { breaks: g.breaks, order: g.order }
    }
}

impl RadialGrid {
    pub fn new(breaks: Vec<f64>, order: usize) -> Result<Self> {
        if breaks.len() < 2 || breaks[0] != 0.0 || breaks.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(domain("grid breakpoints must start at 0 and increase strictly"));
        }
        if order < 2 {
            return Err(domain("grid order must be at least 2"));
        }
        let rule = GaussLegendre::new(order);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for w in breaks.windows(2) {
            for (x, wt) in rule.mapped(w[0], w[1]) {
                nodes.push(x);
                weights.push(wt);
            }
        }
        let haar = nodes.iter().zip(&weights).map(|(r, w)| w * 2.0 * (2.0 * r).sinh()).collect();
        let bary = barycentric_weights(&rule.nodes);
        Ok(RadialGrid { breaks, order, nodes, weights, haar, ref_nodes: rule.nodes, bary })
    }

    /// Panels graded toward the origin: widths 1/16, 1/16, 1/8, 1/4, 1/2 up to 1,
    /// then 1/2 up to 4 and 1 beyond, with a 12-point rule.
    pub fn with_r_max(r_max: f64) -> Result<Self> {
        Self::graded(r_max, 12)
    }

    pub fn graded(r_max: f64, order: usize) -> Result<Self> {
        if !(r_max > 0.0) {
            return Err(domain("grid radius must be positive"));
        }
        let mut breaks = vec![0.0, 0.0625, 0.125, 0.25, 0.5, 1.0];
        let mut x = 1.0;
        while x < r_max - 1e-12 {
            x += if x < 4.0 { 0.5 } else { 1.0 };
            breaks.push(x.min(r_max));
        }
        breaks.retain(|&b| b <= r_max + 1e-12);
        if *breaks.last().unwrap() < r_max {
            breaks.push(r_max);
        }
        Self::new(breaks, order)
    }

    /// Uniform panels of width `fine_width` up to `fine_until`, then the graded layout.
    pub fn refined(fine_until: f64, fine_width: f64, r_max: f64) -> Result<Self> {
        let n = (fine_until / fine_width).ceil().max(1.0) as usize;
        let mut breaks: Vec<f64> = (0..=n).map(|i| fine_until * i as f64 / n as f64).collect();
        let graded = Self::with_r_max(r_max)?;
        breaks.extend(graded.breaks.iter().filter(|&&b| b > fine_until + 1e-9));
        Self::new(breaks, graded.order)
    }

    /// Uniform panels of the given width.
    pub fn uniform(r_max: f64, width: f64, order: usize) -> Result<Self> {
        let n = (r_max / width).ceil().max(1.0) as usize;
        Self::new((0..=n).map(|i| r_max * i as f64 / n as f64).collect(), order)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Quadrature weights times the Haar density `2 sinh 2r`.
    pub fn haar_weights(&self) -> &[f64] {
        &self.haar
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn r_max(&self) -> f64 {
        *self.breaks.last().unwrap()
    }

    pub fn panel_of(&self, r: f64) -> Option<usize> {
        if !(r >= 0.0) || r > self.r_max() {
            return None;
        }
        let p = self.breaks.partition_point(|&b| b <= r);
        Some(p.saturating_sub(1).min(self.breaks.len() - 2))
    }

    /// Polynomial interpolation of grid values inside the panel containing `r`.
    pub fn interpolate(&self, values: &[C64], r: f64) -> Option<C64> {
        let p = self.panel_of(r)?;
        let (a, b) = (self.breaks[p], self.breaks[p + 1]);
        let t = (2.0 * r - a - b) / (b - a);
        let k = p * self.order;
        Some(barycentric_eval(&self.ref_nodes, &self.bary, &values[k..k + self.order], t))
    }
}

/// Exponential continuation `F(r) ≈ coeff · e^{rate r}` beyond the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tail {
    pub rate: f64,
    pub coeff: C64,
}

impl Tail {
    pub fn eval(&self, r: f64) -> C64 {
        self.coeff * (self.rate * r).exp()
    }
}

/// The radial part `F(r) = f(a_r)` of a type-m function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub m: i64,
    pub alpha: f64,
    pub grid: RadialGrid,
    pub values: Vec<C64>,
    pub tail: Option<Tail>,
}

/// Relative level below which a profile counts as vanished.
pub const SUPPORT_THRESHOLD: f64 = 1e-10;

impl RadialProfile {
    pub fn new(m: i64, alpha: f64, grid: RadialGrid, values: Vec<C64>, tail: Option<Tail>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(domain("profile values do not match the grid"));
        }
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(domain("weight exponent must be finite and nonnegative"));
        }
        if grid.r_max() < 10.0 {
            return Err(domain("profiles need a grid reaching at least r = 10"));
        }
        Ok(RadialProfile { m, alpha, grid, values, tail })
    }

    pub fn from_fn<F: FnMut(f64) -> C64>(m: i64, alpha: f64, grid: RadialGrid, mut f: F) -> Result<Self> {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        Self::new(m, alpha, grid, values, None)
    }

    /// `F(r)`, from the grid interpolant, the tail, or zero.
    pub fn eval(&self, r: f64) -> C64 {
        match self.grid.interpolate(&self.values, r) {
            Some(v) => v,
            None => self.tail.map_or(C64::new(0.0, 0.0), |t| t.eval(r)),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest node radius where `|F| > rel · max|F|`.
    pub fn support_radius(&self, rel: f64) -> Option<f64> {
        let thr = rel * self.max_abs();
        self.grid.nodes().iter().zip(&self.values).rev().find(|(_, v)| v.norm() > thr).map(|(r, _)| *r)
    }

    /// No tail and negligible values on the outermost panel.
    pub fn is_compact(&self) -> bool {
        let tail_ok = self.tail.is_none_or(|t| t.coeff.norm() == 0.0);
        let last_break = self.grid.breaks()[self.grid.breaks().len() - 2];
        tail_ok && self.support_radius(SUPPORT_THRESHOLD).is_none_or(|r| r < last_break)
    }

    /// Index one past the last node with a nonzero value.
    pub(crate) fn active_len(&self) -> usize {
        self.values.iter().rposition(|v| v.norm() > 0.0).map_or(0, |i| i + 1)
    }

    pub fn scaled(&self, a: C64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= a);
        out.tail = self.tail.map(|t| Tail { rate: t.rate, coeff: t.coeff * a });
        out
    }

    /// Pointwise difference on a shared grid (tails are dropped).
    pub fn sub(&self, o: &RadialProfile) -> Result<Self> {
        if self.grid != o.grid {
            return Err(domain("profiles live on different grids"));
        }
        let values = self.values.iter().zip(&o.values).map(|(a, b)| a - b).collect();
        Ok(RadialProfile { m: self.m, alpha: self.alpha, grid: self.grid.clone(), values, tail: None })
    }

    /// Largest pointwise difference relative to the largest value of `reference`.
    pub fn sup_rel_diff(&self, reference: &RadialProfile) -> Result<f64> {
        let d = self.sub(reference)?;
        Ok(d.max_abs() / reference.max_abs())
    }
}
