//! Symbols `f = exp(R₊ + R₋)`, their Toeplitz+Hankel determinants and the
//! identities linking them to the symplectic and orthogonal measures.
//!
//! Symbols enter the measures through `p_k(ρ±) = k ρ±_k`, so that
//! `f(z) = H(ρ⁺; z) H(ρ⁻; 1/z)`. The Hankel parts use the coefficients of
//! `z^{-(i+j)}` (resp. `z^{-(i+j+2)}`); with that orientation each determinant
//! equals its restricted Cauchy sum.

use num_complex::Complex64;
use serde::Serialize;

use crate::characters::SpO;
use crate::error::{Error, Result};
use crate::kernel::{fredholm_det_discrete, KernelMethod, KernelSpec};
use crate::linalg;
use crate::measures::{gap_restricted_sum, MeasureSpec};
use crate::partition::{Constraint, HalfInt};
use crate::series::exp_power;
use crate::specialization::Specialization;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// `f(z) = exp(Σ_k ρ⁺_k z^k + Σ_k ρ⁻_k z^{-k})` with finitely many nonzero `ρ±_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Symbol {
    /// `ρ⁺_1, ρ⁺_2, …`
    pub plus: Vec<Complex64>,
    /// `ρ⁻_1, ρ⁻_2, …`
    pub minus: Vec<Complex64>,
}

/// The symbol `f̌(z) = f(-z)^{-1}` of a base symbol.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckSymbol {
    pub base: Symbol,
}

impl CheckSymbol {
    /// Coefficients `ρ̌±_k = -(-1)^k ρ±_k`.
    pub fn symbol(&self) -> Symbol {
        let flip = |v: &[Complex64]| -> Vec<Complex64> {
            v.iter()
                .enumerate()
                .map(|(i, &r)| if (i + 1) % 2 == 0 { -r } else { r })
                .collect()
        };
        Symbol {
            plus: flip(&self.base.plus),
            minus: flip(&self.base.minus),
        }
    }
}

fn rho_at(v: &[Complex64], k: usize) -> Complex64 {
    if k == 0 {
        ZERO
    } else {
        v.get(k - 1).copied().unwrap_or(ZERO)
    }
}

impl Symbol {
    pub fn new(plus: Vec<Complex64>, minus: Vec<Complex64>) -> Self {
        Self { plus, minus }
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new(), Vec::new())
    }

    pub fn real(plus: &[f64], minus: &[f64]) -> Self {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(c(plus), c(minus))
    }

    pub fn check(&self) -> Symbol {
        CheckSymbol { base: self.clone() }.symbol()
    }

    pub fn rho_plus(&self, k: usize) -> Complex64 {
        rho_at(&self.plus, k)
    }

    pub fn rho_minus(&self, k: usize) -> Complex64 {
        rho_at(&self.minus, k)
    }

    /// `f(z)` pointwise.
    pub fn value(&self, z: Complex64) -> Complex64 {
        let mut e = ZERO;
        for (i, r) in self.plus.iter().enumerate() {
            e += r * z.powi(i as i32 + 1);
        }
        for (i, r) in self.minus.iter().enumerate() {
            e += r * z.powi(-(i as i32) - 1);
        }
        e.exp()
    }

    /// `(ρ⁺, ρ⁻)` under `p_k = k ρ_k`.
    pub fn specializations(&self) -> (Specialization, Specialization) {
        (
            Specialization::from_log_coeffs(&self.plus),
            Specialization::from_log_coeffs(&self.minus),
        )
    }

    pub fn measure(&self, kind: SpO) -> MeasureSpec {
        let (plus, minus) = self.specializations();
        MeasureSpec::new(kind, plus, minus)
    }

    fn coeffs_at(&self, k_min: i64, k_max: i64, n: usize) -> Vec<Complex64> {
        let log = |v: &[Complex64]| -> Vec<Complex64> { (0..=n).map(|k| rho_at(v, k)).collect() };
        let ep = exp_power(&log(&self.plus), n);
        let em = exp_power(&log(&self.minus), n);
        (k_min..=k_max)
            .map(|k| {
                let start = (-k).max(0) as usize;
                let stop = (n as i64 - k).min(n as i64);
                (start as i64..=stop)
                    .map(|j| ep[(k + j) as usize] * em[j as usize])
                    .sum()
            })
            .collect()
    }
}

const FOURIER_MAX_ORDER: usize = 1 << 14;

/// `f_k` for `k_min ≤ k ≤ k_max`, as `Σ_j [z^{k+j}] e^{R₊} [z^{-j}] e^{R₋}`;
/// the truncation starts at `n` and doubles until the coefficients settle.
pub fn fourier_coeffs(s: &Symbol, k_min: i64, k_max: i64, n: usize) -> Result<Vec<Complex64>> {
    if k_min > k_max {
        return Err(Error::InvalidArgument(format!("empty coefficient range {k_min}..={k_max}")));
    }
    let span = k_min.abs().max(k_max.abs()) as usize;
    let mut order = n.max(span + 16);
    let mut prev = s.coeffs_at(k_min, k_max, order);
    while order < FOURIER_MAX_ORDER {
        order *= 2;
        let next = s.coeffs_at(k_min, k_max, order);
        let scale = next.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let diff = prev.iter().zip(&next).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        if diff <= 1e-15 * scale {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence {
        what: "fourier truncation order",
        limit: FOURIER_MAX_ORDER,
    })
}

/// The four Toeplitz+Hankel families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThKind {
    /// `det[f_{i-j} + f_{-(i+j)}]`
    D1,
    /// `det[f̌_{i-j} - f̌_{-(i+j+2)}]`
    D2,
    /// `det[f_{i-j} - f_{-(i+j+2)}]`
    D3,
    /// `det[f̌_{i-j} + f̌_{-(i+j)}]`
    D4,
}

impl ThKind {
    pub const ALL: [ThKind; 4] = [ThKind::D1, ThKind::D2, ThKind::D3, ThKind::D4];

    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Self::D1),
            2 => Ok(Self::D2),
            3 => Ok(Self::D3),
            4 => Ok(Self::D4),
            _ => Err(Error::InvalidArgument(format!("determinant kind must be 1..=4, got {k}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Self::D1 => 1,
            Self::D2 => 2,
            Self::D3 => 3,
            Self::D4 => 4,
        }
    }

    /// The character paired with this family.
    pub fn measure_kind(self) -> SpO {
        match self {
            Self::D1 | Self::D2 => SpO::Sp,
            Self::D3 | Self::D4 => SpO::O,
        }
    }

    /// Whether the determinant is halved in the identities.
    pub fn halved(self) -> bool {
        matches!(self, Self::D1 | Self::D4)
    }

    /// The restriction on the partition side: lengths for 1 and 3, parts for 2 and 4.
    pub fn constraint(self, size: usize) -> Constraint {
        match self {
            Self::D1 | Self::D3 => Constraint::MaxLength(size),
            Self::D2 | Self::D4 => Constraint::MaxPart(size as u32),
        }
    }

    fn uses_check(self) -> bool {
        matches!(self, Self::D2 | Self::D4)
    }
}

/// `D^kind_size`; the empty determinant is 1.
pub fn th_det(s: &Symbol, kind: ThKind, size: usize) -> Result<Complex64> {
    if size == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let sym = if kind.uses_check() { s.check() } else { s.clone() };
    let n = size as i64;
    let lo = -2 * n;
    let f = fourier_coeffs(&sym, lo, n, 32)?;
    let at = |k: i64| f[(k - lo) as usize];
    Ok(linalg::det_from_fn(size, |i, j| {
        let (i, j) = (i as i64, j as i64);
        match kind {
            ThKind::D1 | ThKind::D4 => at(i - j) + at(-(i + j)),
            ThKind::D2 | ThKind::D3 => at(i - j) - at(-(i + j + 2)),
        }
    }))
}

/// `D^kind_size`, halved for kinds 1 and 4.
pub fn th_side(s: &Symbol, kind: ThKind, size: usize) -> Result<Complex64> {
    let d = th_det(s, kind, size)?;
    Ok(if kind.halved() { d / 2.0 } else { d })
}

/// Both sides of a restricted Cauchy sum identity.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GesselCheck {
    pub determinant: Complex64,
    pub restricted_sum: Complex64,
    pub tail_bound: Option<f64>,
    pub residual: f64,
}

pub fn gessel_check(kind: ThKind, s: &Symbol, size: usize, max_weight: usize) -> Result<GesselCheck> {
    let determinant = th_side(s, kind, size)?;
    let m = s.measure(kind.measure_kind());
    let sum = gap_restricted_sum(&m, kind.constraint(size), max_weight)?;
    Ok(GesselCheck {
        determinant,
        restricted_sum: sum.value,
        tail_bound: sum.tail_bound,
        residual: (determinant - sum.value).norm(),
    })
}

/// `|determinant side - restricted sum over |λ| ≤ M|`.
pub fn gessel_residual(kind: ThKind, s: &Symbol, size: usize, max_weight: usize) -> Result<f64> {
    Ok(gessel_check(kind, s, size, max_weight)?.residual)
}

/// `exp Σ_k (k ρ⁺_k ρ⁻_k ± ρ⁻_{2k} - k (ρ⁻_k)²/2)`, `+` for sp.
pub fn szego_rhs(kind: SpO, s: &Symbol) -> Result<Complex64> {
    let sign = match kind {
        SpO::Sp => 1.0,
        SpO::O => -1.0,
    };
    let top = s.plus.len().max(s.minus.len());
    let mut e = ZERO;
    for k in 1..=top {
        let kf = k as f64;
        e += kf * s.rho_plus(k) * s.rho_minus(k) + sign * s.rho_minus(2 * k)
            - kf * s.rho_minus(k) * s.rho_minus(k) / 2.0;
    }
    if !e.is_finite() {
        return Err(Error::Divergence("szegő exponent".into()));
    }
    Ok(e.exp())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SzegoRow {
    pub size: usize,
    pub lhs: Complex64,
    pub deviation: f64,
}

/// `D^kind_size` (halved for 1 and 4) along `sizes`, against the limit.
pub fn szego_convergence(kind: ThKind, s: &Symbol, sizes: &[usize]) -> Result<Vec<SzegoRow>> {
    let rhs = szego_rhs(kind.measure_kind(), s)?;
    sizes
        .iter()
        .map(|&size| {
            let lhs = th_side(s, kind, size)?;
            Ok(SzegoRow {
                size,
                lhs,
                deviation: (lhs - rhs).norm(),
            })
        })
        .collect()
}

/// Both sides of `D²_m = Z_sp det(1 - K_sp)` (resp. `½D⁴_m = Z_o det(1 - K_o)`) on `{m + 1/2, …}`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoCheck {
    pub determinant: Complex64,
    pub normalization: Complex64,
    pub fredholm: Complex64,
    pub tail_len: usize,
    pub residual: f64,
}

pub fn bo_check(kind: SpO, s: &Symbol, m: usize, method: KernelMethod) -> Result<BoCheck> {
    let th = match kind {
        SpO::Sp => ThKind::D2,
        SpO::O => ThKind::D4,
    };
    let determinant = th_side(s, th, m)?;
    let measure = s.measure(kind);
    let normalization = measure.normalization()?;
    let spec = KernelSpec::new(measure);
    let fd = fredholm_det_discrete(&spec, HalfInt::from_int_plus_half(m as i64), 8, method)?;
    Ok(BoCheck {
        determinant,
        normalization,
        fredholm: fd.value,
        tail_len: fd.tail_len,
        residual: (determinant - normalization * fd.value).norm(),
    })
}

pub fn bo_residual(kind: SpO, s: &Symbol, m: usize) -> Result<f64> {
    Ok(bo_check(kind, s, m, KernelMethod::Series)?.residual)
}
