//! Schur functions and the universal symplectic / orthogonal characters of a
//! specialization, evaluated through Jacobi–Trudi determinants in the `h_k`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::det_from_fn;
use crate::partition::{enumerate_partitions_capped, Class, Constraint, Partition};
use crate::specialization::{AlphabetStyle, Specialization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterKind {
    Schur,
    Symplectic,
    Orthogonal,
}

/// The two non-Schur character families, which also label the measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpO {
    Sp,
    O,
}

impl SpO {
    pub fn character(self) -> CharacterKind {
        match self {
            SpO::Sp => CharacterKind::Symplectic,
            SpO::O => CharacterKind::Orthogonal,
        }
    }

    /// Class indexing the expansion into skew Schur functions.
    pub fn class(self) -> Class {
        match self {
            SpO::Sp => Class::A,
            SpO::O => Class::B,
        }
    }

    pub fn dual(self) -> SpO {
        match self {
            SpO::Sp => SpO::O,
            SpO::O => SpO::Sp,
        }
    }
}

impl std::str::FromStr for SpO {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sp" | "symplectic" => Ok(SpO::Sp),
            "o" | "orthogonal" => Ok(SpO::O),
            _ => Err(Error::InvalidArgument(format!("unknown kind `{s}` (expected sp or o)"))),
        }
    }
}

/// Cached `h_0, …, h_N` of one specialization; `h_k = 0` for `k < 0`.
#[derive(Clone, Debug)]
pub struct HTable {
    h: Vec<Complex64>,
}

impl HTable {
    pub fn new(rho: &Specialization, n: usize) -> Self {
        Self { h: rho.h_coeffs(n) }
    }

    /// Table large enough for any partition of weight at most `weight`.
    pub fn for_weight(rho: &Specialization, weight: usize) -> Self {
        Self::new(rho, weight + 2)
    }

    pub fn h(&self, k: i64) -> Complex64 {
        if k < 0 {
            return Complex64::new(0.0, 0.0);
        }
        *self
            .h
            .get(k as usize)
            .unwrap_or_else(|| panic!("h_{k} requested beyond table size {}", self.h.len()))
    }

    pub fn schur(&self, lambda: &Partition) -> Complex64 {
        let l = lambda.len();
        det_from_fn(l, |i, j| {
            self.h(lambda.parts()[i] as i64 - i as i64 + j as i64)
        })
    }

    pub fn skew_schur(&self, lambda: &Partition, mu: &Partition) -> Complex64 {
        if !lambda.contains(mu) {
            return Complex64::new(0.0, 0.0);
        }
        let l = lambda.len();
        det_from_fn(l, |i, j| {
            self.h(lambda.part(i + 1) as i64 - mu.part(j + 1) as i64 - i as i64 + j as i64)
        })
    }

    pub fn symplectic(&self, lambda: &Partition) -> Complex64 {
        let l = lambda.len();
        if l == 0 {
            return Complex64::new(1.0, 0.0);
        }
        // 1-based indices: h_{λ_i - i + j} + h_{λ_i - i - j + 2}
        let d = det_from_fn(l, |i, j| {
            let (i, j) = (i as i64 + 1, j as i64 + 1);
            let li = lambda.part(i as usize) as i64;
            self.h(li - i + j) + self.h(li - i - j + 2)
        });
        d * 0.5
    }

    pub fn orthogonal(&self, lambda: &Partition) -> Complex64 {
        let l = lambda.len();
        det_from_fn(l, |i, j| {
            let (i, j) = (i as i64 + 1, j as i64 + 1);
            let li = lambda.part(i as usize) as i64;
            self.h(li - i + j) - self.h(li - i - j)
        })
    }

    pub fn character(&self, kind: CharacterKind, lambda: &Partition) -> Complex64 {
        match kind {
            CharacterKind::Schur => self.schur(lambda),
            CharacterKind::Symplectic => self.symplectic(lambda),
            CharacterKind::Orthogonal => self.orthogonal(lambda),
        }
    }
}

pub fn schur(lambda: &Partition, rho: &Specialization) -> Complex64 {
    HTable::for_weight(rho, lambda.weight()).schur(lambda)
}

/// `s_{λ/μ}(ρ)`, zero unless `μ ⊆ λ`.
pub fn skew_schur(lambda: &Partition, mu: &Partition, rho: &Specialization) -> Complex64 {
    HTable::for_weight(rho, lambda.weight()).skew_schur(lambda, mu)
}

pub fn symplectic(lambda: &Partition, rho: &Specialization) -> Complex64 {
    HTable::for_weight(rho, lambda.weight()).symplectic(lambda)
}

pub fn orthogonal(lambda: &Partition, rho: &Specialization) -> Complex64 {
    HTable::for_weight(rho, lambda.weight()).orthogonal(lambda)
}

pub fn character(kind: CharacterKind, lambda: &Partition, rho: &Specialization) -> Complex64 {
    HTable::for_weight(rho, lambda.weight()).character(kind, lambda)
}

/// `sp_λ = Σ_{α∈A} (-1)^{|α|/2} s_{λ/α}` (resp. `o_λ` with `α ∈ B`), an
/// independent route to the Jacobi–Trudi value.
pub fn sp_o_via_expansion(
    kind: SpO,
    lambda: &Partition,
    rho: &Specialization,
    class_cap: usize,
) -> Result<Complex64> {
    if class_cap < lambda.weight() {
        return Err(Error::InvalidArgument(format!(
            "class cap {class_cap} below |λ| = {}",
            lambda.weight()
        )));
    }
    let table = HTable::for_weight(rho, lambda.weight());
    let members =
        enumerate_partitions_capped(lambda.weight(), Constraint::Class(kind.class()), class_cap)?;
    let mut total = Complex64::new(0.0, 0.0);
    for alpha in members.filter(|a| lambda.contains(a)) {
        let sign = if (alpha.weight() / 2) % 2 == 0 { 1.0 } else { -1.0 };
        total += table.skew_schur(lambda, &alpha) * sign;
    }
    Ok(total)
}

/// Options for [`cauchy_check`].
#[derive(Clone, Copy, Debug)]
pub struct CauchyOptions {
    /// Relative stopping tolerance `|lhs_M - lhs_{M-2}| < tol |rhs|`.
    pub tol: f64,
    /// Largest truncation weight before giving up.
    pub max_weight: usize,
}

impl Default for CauchyOptions {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_weight: 256,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CauchyCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// Truncation weight reached.
    pub horizon: usize,
}

/// Truncated `Σ_λ sp_λ(X) s_λ(Y)` (or `o_λ`) against the closed product, with
/// `X = (x_1^{±1}, …)` and `Y = (y_1, …)`.
pub fn cauchy_check(kind: SpO, xs: &[Complex64], ys: &[Complex64], opts: CauchyOptions) -> Result<CauchyCheck> {
    let one = Complex64::new(1.0, 0.0);
    let xmax = xs.iter().map(|x| x.norm().max(1.0 / x.norm())).fold(0.0, f64::max);
    let ymax = ys.iter().map(|y| y.norm()).fold(0.0, f64::max);
    if ymax * xmax >= 1.0 {
        return Err(Error::Divergence(format!(
            "max|y| * max(|x|, 1/|x|) = {} is not below 1",
            ymax * xmax
        )));
    }
    let mut rhs = one;
    for (i, yi) in ys.iter().enumerate() {
        for (j, yj) in ys.iter().enumerate() {
            let include = match kind {
                SpO::Sp => i < j,
                SpO::O => i <= j,
            };
            if include {
                rhs *= one - yi * yj;
            }
        }
        for x in xs {
            rhs /= (one - yi * x) * (one - yi / x);
        }
    }

    let plus = Specialization::from_variables(xs.to_vec(), AlphabetStyle::Doubled)?;
    let minus = Specialization::from_variables(ys.to_vec(), AlphabetStyle::Plain)?;
    let hp = HTable::for_weight(&plus, opts.max_weight + ys.len());
    let hm = HTable::for_weight(&minus, opts.max_weight + ys.len());

    // s_λ(Y) vanishes for ℓ(λ) > |Y|, so only those shapes are summed.
    let shapes = enumerate_partitions_capped(opts.max_weight, Constraint::MaxLength(ys.len()), opts.max_weight)?;
    let mut shells = vec![Complex64::new(0.0, 0.0); opts.max_weight + 1];
    let mut checkpoint = 8usize;
    let mut done = 0usize;
    let lhs_at = |m: usize, shells: &[Complex64]| shells[..=m].iter().sum::<Complex64>();
    for lambda in shapes {
        let w = lambda.weight();
        while w > done {
            // shell `done` is complete
            if done == checkpoint {
                let (now, before) = (lhs_at(done, &shells), lhs_at(done - 2, &shells));
                if (now - before).norm() < opts.tol * rhs.norm() {
                    return Ok(CauchyCheck {
                        lhs: now,
                        rhs,
                        horizon: done,
                    });
                }
                checkpoint *= 2;
            }
            done += 1;
        }
        shells[w] += hp.character(kind.character(), &lambda) * hm.schur(&lambda);
    }
    let (now, before) = (lhs_at(opts.max_weight, &shells), lhs_at(opts.max_weight - 2, &shells));
    if (now - before).norm() < opts.tol * rhs.norm() {
        return Ok(CauchyCheck {
            lhs: now,
            rhs,
            horizon: opts.max_weight,
        });
    }
    Err(Error::NoConvergence {
        what: "cauchy truncation weight",
        limit: opts.max_weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn empty_characters_are_one() {
        let rho = Specialization::plancherel_real(0.3);
        let e = Partition::empty();
        assert_eq!(schur(&e, &rho), c(1.0));
        assert_eq!(symplectic(&e, &rho), c(1.0));
        assert_eq!(orthogonal(&e, &rho), c(1.0));
    }

    #[test]
    fn small_plancherel_values() {
        let theta = 0.7;
        let pl = Specialization::plancherel_real(theta);
        assert!(close(schur(&p(&[1]), &pl), c(theta), 1e-15));
        assert!(close(schur(&p(&[2, 1]), &pl), c(theta.powi(3) / 3.0), 1e-15));
        assert!(close(symplectic(&p(&[1]), &pl), c(theta), 1e-15));
        assert!(close(orthogonal(&p(&[1]), &pl), c(theta), 1e-15));
    }

    #[test]
    fn skew_values() {
        let theta = 0.6;
        let pl = Specialization::plancherel_real(theta);
        let (one, two) = (p(&[1]), p(&[2]));
        assert!(close(skew_schur(&one, &one, &pl), c(1.0), 1e-15));
        assert!(close(skew_schur(&two, &one, &pl), c(theta), 1e-15));
        // two fillings of the skew shape (2,1)/(1): θ²/2! · 2
        assert!(close(skew_schur(&p(&[2, 1]), &one, &pl), c(theta * theta), 1e-15));
        assert_eq!(skew_schur(&one, &two, &pl), c(0.0));
        let lam = p(&[3, 2]);
        assert!(close(skew_schur(&lam, &lam, &pl), c(1.0), 1e-15));
    }

    #[test]
    fn zero_specialization_values() {
        let zero = Specialization::zero();
        assert_eq!(symplectic(&p(&[1, 1]), &zero), c(-1.0));
        assert_eq!(orthogonal(&p(&[2]), &zero), c(-1.0));
    }

    #[test]
    fn zero_specialization_support() {
        let zero = Specialization::zero();
        for lam in enumerate_partitions(10, Constraint::None).unwrap() {
            let sign = if (lam.weight() / 2) % 2 == 0 { 1.0 } else { -1.0 };
            for (kind, class) in [(SpO::Sp, Class::A), (SpO::O, Class::B)] {
                let v = character(kind.character(), &lam, &zero);
                if lam.in_class(class) {
                    assert!(close(v, c(sign), 1e-14), "{kind:?} {lam}");
                } else {
                    assert!(v.norm() < 1e-14, "{kind:?} {lam}");
                }
            }
        }
    }

    #[test]
    fn schur_plancherel_hook_formula() {
        let theta = 1.3;
        let pl = Specialization::plancherel_real(theta);
        for lam in enumerate_partitions(10, Constraint::None).unwrap() {
            let n = lam.weight();
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            let expected = theta.powi(n as i32) * lam.dim_f64() / fact;
            let got = schur(&lam, &pl);
            assert!((got.re - expected).abs() <= 1e-12 * expected.abs().max(1e-300), "{lam}");
        }
    }

    #[test]
    fn expansion_examples() {
        let theta = 0.8;
        let pl = Specialization::plancherel_real(theta);
        assert_eq!(sp_o_via_expansion(SpO::Sp, &Partition::empty(), &pl, 4).unwrap(), c(1.0));
        assert!(close(sp_o_via_expansion(SpO::Sp, &p(&[1]), &pl, 4).unwrap(), c(theta), 1e-15));
        let v = sp_o_via_expansion(SpO::Sp, &p(&[1, 1]), &pl, 4).unwrap();
        assert!(close(v, c(theta * theta / 2.0 - 1.0), 1e-15));
        assert!(sp_o_via_expansion(SpO::Sp, &p(&[3, 1]), &pl, 2).is_err());
    }

    #[test]
    fn jacobi_trudi_matches_expansion() {
        let specs = [
            Specialization::plancherel_real(0.7),
            Specialization::from_variables(vec![c(0.6), c(0.9)], AlphabetStyle::Doubled).unwrap(),
        ];
        for rho in &specs {
            for lam in enumerate_partitions(10, Constraint::None).unwrap() {
                for kind in [SpO::Sp, SpO::O] {
                    let jt = character(kind.character(), &lam, rho);
                    let ex = sp_o_via_expansion(kind, &lam, rho, 10).unwrap();
                    assert!(close(jt, ex, 1e-10 * jt.norm().max(1.0)), "{kind:?} {lam} {rho}");
                }
            }
        }
    }

    #[test]
    fn omega_duality() {
        let rho = Specialization::from_variables(vec![c(0.6), c(0.3)], AlphabetStyle::Doubled).unwrap();
        let dual = rho.omega_dual();
        for lam in enumerate_partitions(8, Constraint::None).unwrap() {
            let sp = symplectic(&lam, &rho);
            let o = orthogonal(&lam.conjugate(), &dual);
            assert!(close(sp, o, 1e-10 * sp.norm().max(1.0)), "{lam}");
        }
    }

    #[test]
    fn cauchy_trivial_case() {
        let r = cauchy_check(SpO::Sp, &[c(1.0)], &[c(0.0)], CauchyOptions::default()).unwrap();
        assert_eq!(r.rhs, c(1.0));
        assert!(close(r.lhs, c(1.0), 1e-15));
    }

    #[test]
    fn cauchy_single_variable() {
        for (kind, x, y) in [(SpO::Sp, 0.9, 0.3), (SpO::O, 0.8, 0.25)] {
            let r = cauchy_check(kind, &[c(x)], &[c(y)], CauchyOptions::default()).unwrap();
            assert!((r.lhs - r.rhs).norm() < 1e-10, "{kind:?}: {r:?}");
        }
    }

    #[test]
    fn cauchy_rejects_divergent_parameters() {
        assert!(matches!(
            cauchy_check(SpO::Sp, &[c(0.5)], &[c(0.6)], CauchyOptions::default()),
            Err(Error::Divergence(_))
        ));
    }
}
