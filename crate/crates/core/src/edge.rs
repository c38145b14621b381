//! Edge behaviour of the Plancherel-type measures.
//!
//! `P_sp`, `P_o` use `(ρ⁺, ρ⁻) = (pl_{2θ}, pl_θ)` so that `F(z) = exp θ(z - 1/z)`;
//! `P_A`, `P_B` use `(0, pl_{iθ})`, `F(z) = exp(-iθ(z + 1/z))`. The discrete gap
//! probability of `{λ_1 ≤ 2θ + sθ^{1/3}}` is compared with the continuum
//! Fredholm determinant at the effective `s` of the first excluded site.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::characters::SpO;
use crate::continuum::{fredholm_det_continuum, ContinuumKernel, NystromConfig};
use crate::error::{Error, Result};
use crate::kernel::{fredholm_det_discrete, ContourParams, KernelMethod, KernelSpec};
use crate::measures::MeasureSpec;
use crate::partition::{Class, HalfInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeModel {
    Psp,
    Po,
    Pa,
    Pb,
}

impl EdgeModel {
    pub const ALL: [EdgeModel; 4] = [EdgeModel::Psp, EdgeModel::Po, EdgeModel::Pa, EdgeModel::Pb];

    pub fn kind(self) -> SpO {
        match self {
            Self::Psp | Self::Pa => SpO::Sp,
            Self::Po | Self::Pb => SpO::O,
        }
    }

    pub fn measure(self, theta: f64) -> MeasureSpec {
        match self {
            Self::Psp => MeasureSpec::plancherel_type(SpO::Sp, theta),
            Self::Po => MeasureSpec::plancherel_type(SpO::O, theta),
            Self::Pa => MeasureSpec::almost_symmetric(Class::A, theta),
            Self::Pb => MeasureSpec::almost_symmetric(Class::B, theta),
        }
    }

    /// The limiting kernel: `𝒜⁺`, `𝒜⁻`, or the Airy kernel for both almost-symmetric models.
    pub fn continuum_kernel(self) -> ContinuumKernel {
        match self {
            Self::Psp => ContinuumKernel::a21_plus(),
            Self::Po => ContinuumKernel::a21_minus(),
            Self::Pa | Self::Pb => ContinuumKernel::airy(),
        }
    }

    /// Offset added to the first excluded site before rescaling: the o-kernel's
    /// edge sits one site to the left of the sp-kernel's.
    pub fn site_shift(self) -> f64 {
        match self.kind() {
            SpO::Sp => 0.0,
            SpO::O => -1.0,
        }
    }

    fn rotated(self) -> bool {
        matches!(self, Self::Pa | Self::Pb)
    }
}

impl fmt::Display for EdgeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Psp => "psp",
            Self::Po => "po",
            Self::Pa => "pa",
            Self::Pb => "pb",
        })
    }
}

impl FromStr for EdgeModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "psp" | "sp" => Ok(Self::Psp),
            "po" | "o" => Ok(Self::Po),
            "pa" | "a" => Ok(Self::Pa),
            "pb" | "b" => Ok(Self::Pb),
            other => Err(Error::InvalidArgument(format!("unknown edge model `{other}`"))),
        }
    }
}

/// `x = 2θ + sθ^{1/3}` and the first half-integer site beyond it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EdgeScaling {
    pub theta: f64,
    pub s: f64,
    pub threshold: f64,
    /// The smallest half-integer strictly greater than `x`; the gap is `{start, start + 1, …}`,
    /// i.e. the event `λ_1 ≤ start - 1/2`.
    pub start: HalfInt,
    /// `start - x`, in `(0, 1]`.
    pub offset: f64,
}

impl EdgeScaling {
    pub fn new(theta: f64, s: f64) -> Result<Self> {
        if !(theta > 0.0) || !s.is_finite() {
            return Err(Error::InvalidArgument(format!("need θ > 0 and finite s, got θ = {theta}, s = {s}")));
        }
        let threshold = 2.0 * theta + s * theta.cbrt();
        let start = HalfInt::from_int_plus_half((threshold - 0.5).floor() as i64 + 1);
        Ok(Self {
            theta,
            s,
            threshold,
            start,
            offset: start.value() - threshold,
        })
    }

    /// `(start + shift - 2θ) / θ^{1/3}`.
    pub fn effective_s(&self, shift: f64) -> f64 {
        (self.start.value() + shift - 2.0 * self.theta) / self.theta.cbrt()
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct EdgeGap {
    pub model: EdgeModel,
    pub scaling: EdgeScaling,
    pub value: Complex64,
    pub tail_len: usize,
}

fn initial_tail(theta: f64) -> usize {
    (8.0 * theta.cbrt() + 20.0).ceil() as usize
}

/// Discrete `det(I - K)` over the half-integer sites `> 2θ + sθ^{1/3}`.
pub fn edge_gap_discrete(model: EdgeModel, theta: f64, s: f64) -> Result<EdgeGap> {
    let scaling = EdgeScaling::new(theta, s)?;
    let (value, tail_len) = discrete_gap(model, theta, scaling.start)?;
    Ok(EdgeGap {
        model,
        scaling,
        value,
        tail_len,
    })
}

fn discrete_gap(model: EdgeModel, theta: f64, start: HalfInt) -> Result<(Complex64, usize)> {
    let spec = KernelSpec::new(model.measure(theta));
    let mut contour = ContourParams::for_spec(&spec)?;
    if model.rotated() {
        contour = contour.rotated();
    }
    let fd = fredholm_det_discrete(&spec, start, initial_tail(theta), KernelMethod::Quadrature(contour))?;
    Ok((fd.value, fd.tail_len))
}

fn discrete_at(model: EdgeModel, theta: f64, start: HalfInt) -> Result<Complex64> {
    Ok(discrete_gap(model, theta, start)?.0)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct EdgeRow {
    pub model: EdgeModel,
    pub theta: f64,
    pub s: f64,
    pub start: HalfInt,
    pub s_effective: f64,
    pub discrete: Complex64,
    pub continuum: f64,
    pub deviation: f64,
    /// `discrete - continuum` on the two sites whose effective `s` bracket the
    /// nominal `s`, linearly interpolated to it (absolute value).
    pub deviation_at_s: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeReport {
    pub model: EdgeModel,
    pub rows: Vec<EdgeRow>,
}

impl EdgeReport {
    /// Whether the deviation strictly decreases along θ for every `s`.
    pub fn strictly_decreasing(&self) -> bool {
        let mut ss: Vec<f64> = self.rows.iter().map(|r| r.s).collect();
        ss.sort_by(f64::total_cmp);
        ss.dedup();
        ss.iter().all(|&s| {
            let devs: Vec<f64> = self.rows.iter().filter(|r| r.s == s).map(|r| r.deviation).collect();
            devs.windows(2).all(|w| w[1] < w[0])
        })
    }

    /// Same check on the interpolated deviation.
    pub fn interpolated_strictly_decreasing(&self) -> bool {
        let mut ss: Vec<f64> = self.rows.iter().map(|r| r.s).collect();
        ss.sort_by(f64::total_cmp);
        ss.dedup();
        ss.iter().all(|&s| {
            let devs: Vec<f64> = self.rows.iter().filter(|r| r.s == s).map(|r| r.deviation_at_s).collect();
            devs.windows(2).all(|w| w[1] < w[0])
        })
    }

    pub fn max_imaginary(&self) -> f64 {
        self.rows.iter().map(|r| r.discrete.im.abs()).fold(0.0, f64::max)
    }
}

/// Discrete gap against the continuum target for every `(θ, s)`; rows are ordered by `s`, then θ.
pub fn edge_convergence_report(model: EdgeModel, thetas: &[f64], ss: &[f64]) -> Result<EdgeReport> {
    if thetas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("θ values must be strictly increasing".into()));
    }
    let kernel = model.continuum_kernel();
    let continuum_at = |x: f64| fredholm_det_continuum(&kernel, x, NystromConfig::default());
    let mut rows = Vec::with_capacity(thetas.len() * ss.len());
    for &s in ss {
        for &theta in thetas {
            let gap = edge_gap_discrete(model, theta, s)?;
            let s_effective = gap.scaling.effective_s(model.site_shift());
            let continuum = continuum_at(s_effective)?;
            let signed = gap.value.re - continuum;
            let step = 1.0 / theta.cbrt();
            // the neighbouring site on the other side of the nominal s
            let (other_start, other_s) = if s_effective > s {
                (gap.scaling.start.offset(-1), s_effective - step)
            } else {
                (gap.scaling.start.offset(1), s_effective + step)
            };
            let other = discrete_at(model, theta, other_start)?.re - continuum_at(other_s)?;
            let t = (s - s_effective) / (other_s - s_effective);
            rows.push(EdgeRow {
                model,
                theta,
                s,
                start: gap.scaling.start,
                s_effective,
                discrete: gap.value,
                continuum,
                deviation: (gap.value - continuum).norm(),
                deviation_at_s: (signed + t * (other - signed)).abs(),
            });
        }
    }
    Ok(EdgeReport { model, rows })
}

/// `S(z) = z - 1/z - 2 log z`.
pub fn saddle_phase(z: f64) -> f64 {
    z - 1.0 / z - 2.0 * z.ln()
}

/// `(S'(z), S''(z), S'''(z))`.
pub fn saddle_derivatives(z: f64) -> (f64, f64, f64) {
    (
        1.0 + 1.0 / (z * z) - 2.0 / z,
        -2.0 / z.powi(3) + 2.0 / (z * z),
        6.0 / z.powi(4) - 4.0 / z.powi(3),
    )
}
