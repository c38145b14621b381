//! The (possibly complex) measures `m_sp(λ) ∝ sp_λ(ρ⁺) s_λ(ρ⁻)` and
//! `m_o(λ) ∝ o_λ(ρ⁺) s_λ(ρ⁻)`, their normalizations, and exact-enumeration
//! oracles for correlations and gap sums.

use num_complex::Complex64;
use serde::Serialize;

use crate::characters::{HTable, SpO};
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions_capped, Class, Constraint, HalfInt, Partition};
use crate::specialization::Specialization;

/// Default enumeration cap for exact oracles.
pub const DEFAULT_MEASURE_CAP: usize = 14;

/// Environment variable overriding [`DEFAULT_MEASURE_CAP`].
pub const CAP_ENV: &str = "SPODET_MAX_WEIGHT";

/// Enumeration cap, honouring `SPODET_MAX_WEIGHT` when it parses.
pub fn enumeration_cap() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MEASURE_CAP)
}

fn check_cap(max_weight: usize) -> Result<()> {
    let cap = enumeration_cap();
    if max_weight > cap {
        return Err(Error::CapExceeded {
            requested: max_weight,
            cap,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureSpec {
    pub kind: SpO,
    pub rho_plus: Specialization,
    pub rho_minus: Specialization,
}

impl MeasureSpec {
    pub fn new(kind: SpO, rho_plus: Specialization, rho_minus: Specialization) -> Self {
        Self {
            kind,
            rho_plus,
            rho_minus,
        }
    }

    /// `P_sp` / `P_o`: `ρ⁺ = pl_{2θ}`, `ρ⁻ = pl_θ`.
    pub fn plancherel_type(kind: SpO, theta: f64) -> Self {
        Self::new(
            kind,
            Specialization::plancherel_real(2.0 * theta),
            Specialization::plancherel_real(theta),
        )
    }

    /// The measure reproducing `P_A` (sp) or `P_B` (o): `ρ⁺ = 0`, `ρ⁻ = pl_{iθ}`.
    pub fn almost_symmetric(class: Class, theta: f64) -> Self {
        let kind = match class {
            Class::A => SpO::Sp,
            Class::B => SpO::O,
        };
        Self::new(kind, Specialization::zero(), Specialization::plancherel(Complex64::new(0.0, theta)))
    }

    /// Unnormalized weight `sp_λ(ρ⁺) s_λ(ρ⁻)` (or with `o_λ`).
    pub fn weight(&self, lambda: &Partition) -> Complex64 {
        WeightTable::new(self, lambda.weight()).weight(lambda)
    }

    /// `Z = exp Σ_k (p_k(ρ⁺) p_k(ρ⁻)/k ± p_{2k}(ρ⁻)/2k - p_k(ρ⁻)²/2k)`, `+` for sp.
    pub fn normalization(&self) -> Result<Complex64> {
        Ok(self.log_normalization()?.exp())
    }

    pub fn log_normalization(&self) -> Result<Complex64> {
        let sign = match self.kind {
            SpO::Sp => 1.0,
            SpO::O => -1.0,
        };
        let term = |k: usize| {
            let pm = self.rho_minus.p(k);
            let kf = k as f64;
            self.rho_plus.p(k) * pm / kf + self.rho_minus.p(2 * k) * (sign / (2.0 * kf))
                - pm * pm / (2.0 * kf)
        };
        if let Some(support) = self.rho_minus.support() {
            return Ok((1..=support).map(term).sum());
        }
        const MAX_TERMS: usize = 200_000;
        let mut total = Complex64::new(0.0, 0.0);
        let mut small = 0;
        let mut mags = vec![0.0f64];
        for k in 1..=MAX_TERMS {
            let t = term(k);
            // geometric growth or non-decay of the terms means the growth conditions fail
            if !t.is_finite() || (k >= 64 && t.norm() > 1e-12 && t.norm() > mags[k / 2]) {
                break;
            }
            mags.push(t.norm());
            total += t;
            small = if t.norm() < 1e-17 { small + 1 } else { 0 };
            if small >= 4 {
                return Ok(total);
            }
        }
        Err(Error::Divergence(
            "normalization exponent does not converge; the growth conditions on ρ± fail".into(),
        ))
    }

    /// Upper bound on `Σ_{|λ|>M} |weight(λ)|` for Plancherel-type specializations.
    ///
    /// Expanding `sp_λ` (or `o_λ`) into skew Schur functions and summing the
    /// Cauchy identity gives the majorant `Φ(t) = exp(|a||b|t + |b|²t²/2)` for
    /// `Σ_λ |weight(λ)| t^{|λ|}`, `ρ⁺ = pl_a`, `ρ⁻ = pl_b`; the bound is `min_{t≥1} Φ(t)/t^{M+1}`.
    pub fn tail_bound(&self, max_weight: usize) -> Option<f64> {
        let a = self.rho_plus.plancherel_parameter()?.norm();
        let b = self.rho_minus.plancherel_parameter()?.norm();
        if b == 0.0 {
            return Some(0.0);
        }
        let m1 = (max_weight + 1) as f64;
        let t = ((-a * b + (a * a * b * b + 4.0 * b * b * m1).sqrt()) / (2.0 * b * b)).max(1.0);
        Some((a * b * t + b * b * t * t / 2.0 - m1 * t.ln()).exp())
    }
}

/// Character tables for both sides of a measure, sized for a maximal weight.
pub struct WeightTable {
    kind: SpO,
    plus: HTable,
    minus: HTable,
}

impl WeightTable {
    pub fn new(m: &MeasureSpec, max_weight: usize) -> Self {
        Self {
            kind: m.kind,
            plus: HTable::for_weight(&m.rho_plus, max_weight),
            minus: HTable::for_weight(&m.rho_minus, max_weight),
        }
    }

    pub fn weight(&self, lambda: &Partition) -> Complex64 {
        let s = self.minus.schur(lambda);
        if s == Complex64::new(0.0, 0.0) {
            return s;
        }
        self.plus.character(self.kind.character(), lambda) * s
    }
}

/// A truncated enumeration sum with an optional rigorous tail bound.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Enumerated {
    pub value: Complex64,
    pub tail_bound: Option<f64>,
    pub max_weight: usize,
}

/// Truncated `m({k_1,…,k_n} ⊂ S(λ))` by summing over `|λ| ≤ M`.
pub fn brute_correlation(m: &MeasureSpec, pts: &[HalfInt], max_weight: usize) -> Result<Enumerated> {
    check_cap(max_weight)?;
    let z = m.normalization()?;
    let table = WeightTable::new(m, max_weight);
    let value: Complex64 = enumerate_partitions_capped(max_weight, Constraint::None, max_weight)?
        .filter(|l| pts.iter().all(|&k| l.occupies(k)))
        .map(|l| table.weight(&l))
        .sum::<Complex64>()
        / z;
    Ok(Enumerated {
        value,
        tail_bound: m.tail_bound(max_weight).map(|t| t / z.norm()),
        max_weight,
    })
}

/// Unnormalized restricted sum over `λ_1 ≤ m` or `ℓ(λ) ≤ n`, truncated at `|λ| ≤ M`.
pub fn gap_restricted_sum(m: &MeasureSpec, constraint: Constraint, max_weight: usize) -> Result<Enumerated> {
    check_cap(max_weight)?;
    let table = WeightTable::new(m, max_weight);
    let value = enumerate_partitions_capped(max_weight, constraint, max_weight)?
        .map(|l| table.weight(&l))
        .sum();
    Ok(Enumerated {
        value,
        tail_bound: m.tail_bound(max_weight),
        max_weight,
    })
}

/// `Σ_{|λ|≤M} weight(λ)` next to the closed-form `Z`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NormalizationCheck {
    pub z: Complex64,
    pub enumerated_sum: Complex64,
    pub tail_bound: Option<f64>,
    pub max_weight: usize,
}

pub fn normalization_check(m: &MeasureSpec, max_weight: usize) -> Result<NormalizationCheck> {
    let enumerated = gap_restricted_sum(m, Constraint::None, max_weight)?;
    Ok(NormalizationCheck {
        z: m.normalization()?,
        enumerated_sum: enumerated.value,
        tail_bound: enumerated.tail_bound,
        max_weight,
    })
}

/// Poissonized Plancherel measure restricted to one almost-symmetric class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlancherelAB {
    pub class: Class,
    pub theta: f64,
}

impl PlancherelAB {
    pub fn new(class: Class, theta: f64) -> Result<Self> {
        if !(theta > 0.0) {
            return Err(Error::InvalidArgument(format!("theta must be positive, got {theta}")));
        }
        Ok(Self { class, theta })
    }

    /// `e^{-θ²/2} θ^{|λ|} dim λ / |λ|!` on the class, zero off it.
    pub fn weight(&self, lambda: &Partition) -> f64 {
        if !lambda.in_class(self.class) {
            return 0.0;
        }
        (-self.theta * self.theta / 2.0).exp() * unit_plancherel(self.theta, lambda)
    }

    /// `Σ_{α ∈ class, |α| ≤ M} θ^{|α|} dim α / |α|!` with a bound on the omitted tail.
    pub fn partial_mass(&self, max_weight: usize) -> Result<(f64, f64)> {
        check_cap(max_weight)?;
        let sum = enumerate_partitions_capped(max_weight, Constraint::Class(self.class), max_weight)?
            .map(|l| unit_plancherel(self.theta, &l))
            .sum();
        let tail = MeasureSpec::almost_symmetric(self.class, self.theta)
            .tail_bound(max_weight)
            .expect("plancherel-type");
        Ok((sum, tail))
    }
}

/// `θ^{|λ|} dim λ / |λ|!`.
fn unit_plancherel(theta: f64, lambda: &Partition) -> f64 {
    let n = lambda.weight();
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    theta.powi(n as i32) * lambda.dim_f64() / fact
}

/// `max_{λ ∈ class, |λ| ≤ M} |P(λ) - Z⁻¹ sp_λ(0) s_λ(pl_{iθ})|` (o-measure for class B).
pub fn plancherel_ab_equals_msp(class: Class, theta: f64, max_weight: usize) -> Result<f64> {
    check_cap(max_weight)?;
    let m = MeasureSpec::almost_symmetric(class, theta);
    let z = m.normalization()?;
    let table = WeightTable::new(&m, max_weight);
    let mut worst: f64 = 0.0;
    for lambda in enumerate_partitions_capped(max_weight, Constraint::Class(class), max_weight)? {
        let exact = if theta == 0.0 {
            if lambda.is_empty() { 1.0 } else { 0.0 }
        } else {
            PlancherelAB::new(class, theta)?.weight(&lambda)
        };
        let via_measure = table.weight(&lambda) / z;
        worst = worst.max((via_measure - exact).norm());
    }
    Ok(worst)
}
