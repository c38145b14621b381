//! The Airy kernel `𝒜(x, y) = ∫₀^∞ Ai(x+s) Ai(y+s) ds`, the kernels
//! `𝒜± = 𝒜 ± ∫₀^∞ Ai(x-s) Ai(y+s) ds`, and Fredholm determinants on `L²(s, ∞)`.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use serde::Serialize;

use crate::airy::ai;
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ContinuumKind {
    Airy,
    A21Plus,
    A21Minus,
}

/// A continuum kernel together with the panel rule for its defining integrals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContinuumKernel {
    pub kind: ContinuumKind,
    /// Smallest truncation `T` of the `s`-integrals; the actual one is `max(T, |x| + |y| + 20)`.
    pub t_min: f64,
    pub panel_width: f64,
    pub panel_nodes: usize,
}

impl ContinuumKernel {
    pub fn new(kind: ContinuumKind) -> Self {
        Self {
            kind,
            t_min: 20.0,
            panel_width: 2.0,
            panel_nodes: 24,
        }
    }

    pub fn airy() -> Self {
        Self::new(ContinuumKind::Airy)
    }

    pub fn a21_plus() -> Self {
        Self::new(ContinuumKind::A21Plus)
    }

    pub fn a21_minus() -> Self {
        Self::new(ContinuumKind::A21Minus)
    }

    /// Twice the truncation and twice the panel nodes.
    pub fn refined(self) -> Self {
        Self {
            t_min: 2.0 * self.t_min,
            panel_nodes: 2 * self.panel_nodes,
            ..self
        }
    }

    fn s_rule(&self, reach: f64) -> (Vec<f64>, Vec<f64>) {
        let t = self.t_min.max(reach + 20.0);
        let panels = (t / self.panel_width).ceil() as usize;
        let gl = legendre(self.panel_nodes);
        let mut nodes = Vec::with_capacity(panels * self.panel_nodes);
        let mut weights = Vec::with_capacity(panels * self.panel_nodes);
        for p in 0..panels {
            let a = p as f64 * self.panel_width;
            let half = self.panel_width / 2.0;
            for &(x, w) in gl.as_node_weight_pairs() {
                nodes.push(a + half * (x + 1.0));
                weights.push(half * w);
            }
        }
        (nodes, weights)
    }

    /// `K(x, y)` by Gauss–Legendre panels.
    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.matrix_between(&[x], &[y])[0]
    }

    /// `K(xs[i], ys[j])`, row-major.
    pub fn matrix_between(&self, xs: &[f64], ys: &[f64]) -> Vec<f64> {
        let reach = xs.iter().chain(ys).fold(0.0f64, |m, v| m.max(v.abs()));
        let (s, w) = self.s_rule(2.0 * reach);
        let table = |pts: &[f64], sign: f64| -> Vec<Vec<f64>> {
            pts.par_iter()
                .map(|&x| s.iter().map(|&t| ai(x + sign * t)).collect())
                .collect()
        };
        let plus_x = table(xs, 1.0);
        let plus_y = table(ys, 1.0);
        let minus_x = match self.kind {
            ContinuumKind::Airy => None,
            _ => Some(table(xs, -1.0)),
        };
        let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).zip(&w).map(|((p, q), r)| p * q * r).sum() };
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for i in 0..xs.len() {
            for j in 0..ys.len() {
                let base = dot(&plus_x[i], &plus_y[j]);
                let v = match (&self.kind, &minus_x) {
                    (ContinuumKind::A21Plus, Some(m)) => base + dot(&m[i], &plus_y[j]),
                    (ContinuumKind::A21Minus, Some(m)) => base - dot(&m[i], &plus_y[j]),
                    _ => base,
                };
                out.push(v);
            }
        }
        out
    }
}

fn legendre(n: usize) -> GaussLegendre {
    GaussLegendre::new(NonZeroUsize::new(n).expect("positive node count"))
}

/// Nyström discretisation of `(s, s + length)` with `nodes` Gauss–Legendre points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NystromConfig {
    pub length: f64,
    pub nodes: usize,
}

impl Default for NystromConfig {
    fn default() -> Self {
        Self {
            length: 12.0,
            nodes: 40,
        }
    }
}

impl NystromConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.length >= 8.0) || self.nodes < 20 {
            return Err(Error::InvalidArgument(format!(
                "nyström needs length ≥ 8 and at least 20 nodes, got ({}, {})",
                self.length, self.nodes
            )));
        }
        Ok(())
    }

    /// The comparison discretisation `(L + 4, 2n)`.
    pub fn refined(self) -> Self {
        Self {
            length: self.length + 4.0,
            nodes: 2 * self.nodes,
        }
    }
}

/// `det(I - K)` on `L²(s, ∞)`, truncated to `(s, s + L)`.
pub fn fredholm_det_continuum(k: &ContinuumKernel, s: f64, cfg: NystromConfig) -> Result<f64> {
    cfg.validate()?;
    let gl = legendre(cfg.nodes);
    let half = cfg.length / 2.0;
    let (t, w): (Vec<f64>, Vec<f64>) = gl
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (s + half * (x + 1.0), half * w))
        .unzip();
    let kmat = k.matrix_between(&t, &t);
    let n = t.len();
    let root: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let m: Vec<f64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let delta = if i == j { 1.0 } else { 0.0 };
            delta - root[i] * kmat[idx] * root[j]
        })
        .collect();
    Ok(linalg::det_real(n, &m))
}

/// A Fredholm determinant with its refined-discretisation companion.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ContinuumDet {
    pub value: f64,
    pub refined: f64,
    pub difference: f64,
}

/// Largest disagreement tolerated between `(L, n)` and `(L + 4, 2n)`.
pub const NYSTROM_TOL: f64 = 1e-8;

/// [`fredholm_det_continuum`] at `cfg` and at `cfg.refined()`, failing when they disagree by more than [`NYSTROM_TOL`].
pub fn fredholm_det_continuum_checked(k: &ContinuumKernel, s: f64, cfg: NystromConfig) -> Result<ContinuumDet> {
    let value = fredholm_det_continuum(k, s, cfg)?;
    let refined = fredholm_det_continuum(k, s, cfg.refined())?;
    let difference = (value - refined).abs();
    if difference > NYSTROM_TOL {
        return Err(Error::Unstable(difference));
    }
    Ok(ContinuumDet {
        value,
        refined,
        difference,
    })
}

/// `F₂(s)`, the GUE Tracy–Widom distribution.
pub fn tracy_widom_gue(s: f64) -> Result<f64> {
    fredholm_det_continuum(&ContinuumKernel::airy(), s, NystromConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::airy::airy_pair;

    #[test]
    fn airy_kernel_closed_forms() {
        let k = ContinuumKernel::airy();
        let (_, d0) = airy_pair(0.0);
        assert!((k.value(0.0, 0.0) - d0 * d0).abs() < 1e-13);
        for (x, y) in [(-2.0, 1.5), (0.3, -0.7), (-4.0, -3.2), (1.0, 2.0)] {
            let ((ax, dx), (ay, dy)) = (airy_pair(x), airy_pair(y));
            let closed = (ax * dy - dx * ay) / (x - y);
            assert!((k.value(x, y) - closed).abs() < 1e-13, "({x}, {y})");
            assert!((k.value(x, y) - k.value(y, x)).abs() < 1e-15);
        }
        for x in [-3.0, 0.5, 2.5] {
            let (a, d) = airy_pair(x);
            assert!((k.value(x, x) - (d * d - x * a * a)).abs() < 1e-13);
        }
    }

    #[test]
    fn kernels_sum_to_twice_airy() {
        for (x, y) in [(-2.0, 1.5), (0.3, -0.7), (-4.0, -3.2), (1.0, 2.0)] {
            let p = ContinuumKernel::a21_plus().value(x, y);
            let m = ContinuumKernel::a21_minus().value(x, y);
            let a = ContinuumKernel::airy().value(x, y);
            assert!((p + m - 2.0 * a).abs() < 1e-10);
        }
    }

    #[test]
    fn kernel_values_stable_under_refinement() {
        for kind in [ContinuumKind::Airy, ContinuumKind::A21Plus, ContinuumKind::A21Minus] {
            let k = ContinuumKernel::new(kind);
            for (x, y) in [(-3.0, 1.0), (0.0, 0.0), (2.0, -5.0)] {
                assert!((k.value(x, y) - k.refined().value(x, y)).abs() < 1e-10, "{kind:?}");
            }
        }
    }

    #[test]
    fn right_tail_is_one() {
        for k in [ContinuumKernel::airy(), ContinuumKernel::a21_plus(), ContinuumKernel::a21_minus()] {
            let v = fredholm_det_continuum(&k, 8.0, NystromConfig::default()).unwrap();
            assert!((v - 1.0).abs() < 1e-10, "{:?}: {v}", k.kind);
        }
    }

    #[test]
    fn f2_is_a_distribution_function() {
        let mut last = 0.0;
        for i in 0..=40 {
            let s = -6.0 + 0.25 * i as f64;
            let v = tracy_widom_gue(s).unwrap();
            assert!(v >= last - 1e-12 && v > 0.0 && v <= 1.0 + 1e-12, "s={s}: {v}");
            last = v;
        }
    }

    #[test]
    fn f2_nystrom_self_consistency() {
        let c = fredholm_det_continuum_checked(&ContinuumKernel::airy(), 0.0, NystromConfig::default()).unwrap();
        assert!(c.difference < 1e-9);
        assert!((c.value - 0.969_372_828_355).abs() < 1e-9);
    }

    #[test]
    fn config_validation() {
        let k = ContinuumKernel::airy();
        assert!(fredholm_det_continuum(&k, 0.0, NystromConfig { length: 4.0, nodes: 40 }).is_err());
        assert!(fredholm_det_continuum(&k, 0.0, NystromConfig { length: 12.0, nodes: 10 }).is_err());
    }
}
