//! Correlation kernels of the symplectic and orthogonal measures.
//!
//! With `F(z) = H(ρ⁺;z) / (H(ρ⁻;z) H(ρ⁻;1/z))` the kernel is
//!
//! ```text
//! K(a, b) = [z^{a+1/2} w^{-b-1/2}] F(z)/F(w) · G(z, w),
//! G_sp = (1 - w²) / ((1 - wz)(1 - w/z)),   G_o = (1 - z²) / ((1 - wz)(1 - w/z)),
//! ```
//!
//! expanded in `|z| > |w|`, `|wz| < 1`. Entries are computed either by
//! coefficient extraction from truncated Laurent series or by the trapezoidal
//! rule on two circles.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::SpO;
use crate::error::{Error, Result};
use crate::linalg;
use crate::measures::MeasureSpec;
use crate::partition::HalfInt;
use crate::series::SeriesTrunc;

/// Agreement required between successive series truncations.
pub const SERIES_TOL: f64 = 1e-12;
/// Largest truncation order tried by the series method.
pub const SERIES_MAX_ORDER: usize = 8192;
/// Agreement required between successive node counts.
pub const QUADRATURE_TOL: f64 = 1e-11;
/// Largest node count tried by the quadrature method.
pub const QUADRATURE_MAX_NODES: usize = 8192;
/// Required change between successive tail lengths of a Fredholm determinant.
pub const FREDHOLM_TOL: f64 = 1e-12;
/// Largest tail length tried by [`fredholm_det_discrete`].
pub const FREDHOLM_MAX_TAIL: usize = 4096;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    pub measure: MeasureSpec,
}

impl From<MeasureSpec> for KernelSpec {
    fn from(measure: MeasureSpec) -> Self {
        Self { measure }
    }
}

impl KernelSpec {
    pub fn new(measure: MeasureSpec) -> Self {
        Self { measure }
    }

    pub fn kind(&self) -> SpO {
        self.measure.kind
    }

    pub fn log_f(&self, z: Complex64) -> Complex64 {
        let m = &self.measure;
        m.rho_plus.log_h_value(z) - m.rho_minus.log_h_value(z) - m.rho_minus.log_h_value(z.inv())
    }

    pub fn f(&self, z: Complex64) -> Complex64 {
        self.log_f(z).exp()
    }

    /// Truncated Laurent series of `F` and `1/F` on `[-order, order]`.
    pub fn f_series(&self, order: usize) -> FSeries {
        let plus = self.measure.rho_plus.log_coeffs(order);
        let minus = self.measure.rho_minus.log_coeffs(order);
        let mut log_f = SeriesTrunc::zero(order);
        for k in 1..=order {
            log_f.set(k as i64, plus[k] - minus[k]);
            log_f.set(-(k as i64), -minus[k]);
        }
        FSeries {
            f: log_f.exp(),
            fi: (-&log_f).exp(),
        }
    }

    /// Radii `(lower, upper)` such that `F` and `1/F` are analytic on `lower < |z| < upper`.
    pub fn annulus(&self) -> (f64, f64) {
        let r_plus = self.measure.rho_plus.growth_radius();
        let r_minus = self.measure.rho_minus.growth_radius();
        let upper = [r_plus, r_minus]
            .iter()
            .flatten()
            .map(|&r| 1.0 / r)
            .fold(f64::INFINITY, f64::min);
        (r_minus.unwrap_or(0.0), upper)
    }
}

/// Laurent coefficients of `F` and `1/F` at a fixed truncation.
#[derive(Clone, Debug)]
pub struct FSeries {
    pub f: SeriesTrunc,
    pub fi: SeriesTrunc,
}

impl FSeries {
    pub fn order(&self) -> usize {
        self.f.order()
    }

    /// Kernel entry from the stored coefficients.
    ///
    /// Writing `A = a + 1/2`, `B = b + 1/2` and `j = k + l` for the geometric
    /// indices of `1/(1-wz)` and `1/(1-w/z)`, the sp entry is
    /// `Σ_j (Fi_{-B-j} - Fi_{-B-j-2}) Σ_{d ≡ j (2), |d| ≤ j} F_{A+d}`
    /// and the o entry is `Σ_j Fi_{-B-j} Σ_d (F_{A+d} - F_{A+d-2})`.
    pub fn entry(&self, kind: SpO, a: HalfInt, b: HalfInt) -> Result<Complex64> {
        let (ca, cb) = (a.shifted_up(), b.shifted_up());
        let n = self.order() as i64;
        let jmax = n - ca.abs() - cb.abs() - 2;
        if jmax < 2 {
            return Err(Error::InvalidArgument(format!(
                "truncation order {n} too small for a = {}, b = {}",
                a.value(),
                b.value()
            )));
        }
        let g = |e: i64| match kind {
            SpO::Sp => self.f.coeff(e),
            SpO::O => self.f.coeff(e) - self.f.coeff(e - 2),
        };
        let weight = |j: i64| match kind {
            SpO::Sp => self.fi.coeff(-cb - j) - self.fi.coeff(-cb - j - 2),
            SpO::O => self.fi.coeff(-cb - j),
        };
        let (mut even, mut odd) = (ZERO, ZERO);
        let mut total = ZERO;
        for j in 0..=jmax {
            let s = if j == 0 {
                even = g(ca);
                even
            } else if j % 2 == 1 {
                odd += g(ca + j) + g(ca - j);
                odd
            } else {
                even += g(ca + j) + g(ca - j);
                even
            };
            total += weight(j) * s;
        }
        Ok(total)
    }
}

fn initial_order(a: HalfInt, b: HalfInt, n: usize) -> Result<usize> {
    let need = (a.shifted_up().abs() + b.shifted_up().abs() + 4) as usize;
    if n < need {
        return Err(Error::InvalidArgument(format!(
            "series order {n} below |a| + |b| + 4 = {need}"
        )));
    }
    Ok(n)
}

/// Kernel entry by coefficient extraction, doubling the truncation from `n`
/// until successive values agree to [`SERIES_TOL`].
pub fn kernel_entry_series(spec: &KernelSpec, a: HalfInt, b: HalfInt, n: usize) -> Result<Complex64> {
    let mut order = initial_order(a, b, n)?.max(16);
    let mut prev = spec.f_series(order).entry(spec.kind(), a, b)?;
    while order < SERIES_MAX_ORDER {
        order *= 2;
        let next = spec.f_series(order).entry(spec.kind(), a, b)?;
        if (next - prev).norm() < SERIES_TOL {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence {
        what: "series order",
        limit: SERIES_MAX_ORDER,
    })
}

/// Two concentric circles and a trapezoidal node count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContourParams {
    pub r_z: f64,
    pub r_w: f64,
    pub nodes: usize,
    /// Evaluate on rotated variables `z = iu`, `w = iv`.
    pub rotate: bool,
}

impl Default for ContourParams {
    fn default() -> Self {
        Self {
            r_z: 1.0,
            r_w: 0.8,
            nodes: 512,
            rotate: false,
        }
    }
}

impl ContourParams {
    pub fn new(r_z: f64, r_w: f64, nodes: usize) -> Self {
        Self {
            r_z,
            r_w,
            nodes,
            rotate: false,
        }
    }

    pub fn rotated(self) -> Self {
        Self { rotate: true, ..self }
    }

    /// Checks `upper > r_z > r_w > lower`, `r_z r_w < 1` and a power-of-two node count.
    pub fn validate(&self, spec: &KernelSpec) -> Result<()> {
        let (lower, upper) = spec.annulus();
        let fail = |why: String| Err(Error::InfeasibleContour(why));
        if !self.nodes.is_power_of_two() || self.nodes < 4 {
            return Err(Error::InvalidArgument(format!(
                "node count {} must be a power of two ≥ 4",
                self.nodes
            )));
        }
        if !(self.r_w > 0.0 && self.r_z > self.r_w) {
            return fail(format!("need r_z > r_w > 0, got r_z = {}, r_w = {}", self.r_z, self.r_w));
        }
        if self.r_z * self.r_w >= 1.0 {
            return fail(format!("need r_z·r_w < 1, got {}", self.r_z * self.r_w));
        }
        if self.r_z >= upper {
            return fail(format!("r_z = {} must stay below {upper}", self.r_z));
        }
        if self.r_w <= lower {
            return fail(format!("r_w = {} must exceed {lower}", self.r_w));
        }
        Ok(())
    }

    /// The defaults when admissible, otherwise radii placed geometrically inside the admissible annulus.
    pub fn for_spec(spec: &KernelSpec) -> Result<Self> {
        let default = Self::default();
        if default.validate(spec).is_ok() {
            return Ok(default);
        }
        let (lower, upper) = spec.annulus();
        let lo = if lower > 0.0 { lower } else { 0.5 * upper.min(1.0) };
        let hi = upper.min(1.0 / lo);
        if !(hi > lo) {
            return Err(Error::InfeasibleContour(format!(
                "empty admissible annulus: lower bound {lower}, upper bound {upper}"
            )));
        }
        let ratio = hi / lo;
        let c = Self {
            r_w: lo * ratio.powf(0.25),
            r_z: lo * ratio.powf(0.5),
            ..default
        };
        c.validate(spec)?;
        Ok(c)
    }
}

/// `i^n`.
fn i_pow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => ONE,
        1 => Complex64::new(0.0, 1.0),
        2 => -ONE,
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Trapezoidal grid on the two circles, with `F` and `1/F` tabulated.
struct Grid {
    kind: SpO,
    c: ContourParams,
    roots: Vec<Complex64>,
    fz: Vec<Complex64>,
    fw_inv: Vec<Complex64>,
}

impl Grid {
    fn new(spec: &KernelSpec, c: ContourParams) -> Self {
        let n = c.nodes;
        let roots: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
            .collect();
        let turn = if c.rotate { Complex64::new(0.0, 1.0) } else { ONE };
        let fz = roots.iter().map(|&u| spec.f(turn * u * c.r_z)).collect();
        let fw_inv = roots.iter().map(|&v| (-spec.log_f(turn * v * c.r_w)).exp()).collect();
        Self {
            kind: spec.kind(),
            c,
            roots,
            fz,
            fw_inv,
        }
    }

    fn root(&self, k: i64) -> Complex64 {
        self.roots[k.rem_euclid(self.c.nodes as i64) as usize]
    }

    /// `G` in the variables actually sampled (rotated when requested).
    fn g(&self, p: usize, q: usize) -> Complex64 {
        let z = self.roots[p] * self.c.r_z;
        let w = self.roots[q] * self.c.r_w;
        if self.c.rotate {
            let den = (ONE + w * z) * (ONE - w / z);
            match self.kind {
                SpO::Sp => (ONE + w * w) / den,
                SpO::O => (ONE + z * z) / den,
            }
        } else {
            let den = (ONE - w * z) * (ONE - w / z);
            match self.kind {
                SpO::Sp => (ONE - w * w) / den,
                SpO::O => (ONE - z * z) / den,
            }
        }
    }

    /// `T_a(q) = Σ_p z_p^{-A} F(z_p) G(z_p, w_q)` without the radial factor.
    fn row(&self, a: HalfInt) -> Vec<Complex64> {
        let n = self.c.nodes;
        let ca = a.shifted_up();
        let mut t = vec![ZERO; n];
        for p in 0..n {
            let fp = self.root(-ca * p as i64) * self.fz[p];
            for (q, slot) in t.iter_mut().enumerate() {
                *slot += fp * self.g(p, q);
            }
        }
        t
    }

    fn entry_from_row(&self, row: &[Complex64], a: HalfInt, b: HalfInt) -> Complex64 {
        let (ca, cb) = (a.shifted_up(), b.shifted_up());
        let n = self.c.nodes;
        let sum: Complex64 = (0..n)
            .map(|q| row[q] * self.root(cb * q as i64) * self.fw_inv[q])
            .sum();
        let radial = self.c.r_z.powi(-ca as i32) * self.c.r_w.powi(cb as i32);
        let rotation = if self.c.rotate { i_pow(cb - ca) } else { ONE };
        sum * radial * rotation / (n * n) as f64
    }

    fn matrix(&self, pts: &[HalfInt]) -> Vec<Complex64> {
        let rows: Vec<Vec<Complex64>> = pts
            .par_iter()
            .map(|&a| {
                let row = self.row(a);
                pts.iter().map(|&b| self.entry_from_row(&row, a, b)).collect()
            })
            .collect();
        rows.into_iter().flatten().collect()
    }
}

/// Kernel entry from the double trapezoidal sum at exactly `c.nodes` nodes per circle.
pub fn kernel_entry_quadrature(spec: &KernelSpec, a: HalfInt, b: HalfInt, c: ContourParams) -> Result<Complex64> {
    c.validate(spec)?;
    let grid = Grid::new(spec, c);
    Ok(grid.entry_from_row(&grid.row(a), a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum KernelMethod {
    Series,
    Quadrature(ContourParams),
}

/// `K(points[i], points[j])`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelMatrix {
    pub points: Vec<HalfInt>,
    pub entries: Vec<Complex64>,
    /// Truncation order or node count at which the entries stabilised.
    pub resolution: usize,
}

impl KernelMatrix {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.size() + j]
    }

    /// `det[K(k_i, k_j)]`, the correlation function at the points.
    pub fn det(&self) -> Complex64 {
        linalg::det(self.size(), &self.entries)
    }

    pub fn det_identity_minus(&self) -> Complex64 {
        linalg::det_identity_minus(self.size(), &self.entries)
    }

    /// Principal submatrix on the given indices.
    pub fn restrict(&self, idx: &[usize]) -> KernelMatrix {
        KernelMatrix {
            points: idx.iter().map(|&i| self.points[i]).collect(),
            entries: idx
                .iter()
                .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
                .map(|(i, j)| self.get(i, j))
                .collect(),
            resolution: self.resolution,
        }
    }
}

fn max_diff(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

fn series_matrix(spec: &KernelSpec, pts: &[HalfInt], order: usize) -> Result<Vec<Complex64>> {
    let table = spec.f_series(order);
    let rows: Result<Vec<Vec<Complex64>>> = pts
        .par_iter()
        .map(|&a| pts.iter().map(|&b| table.entry(spec.kind(), a, b)).collect())
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

/// Kernel matrix on distinct points, refined until successive resolutions agree.
pub fn kernel_matrix(spec: &KernelSpec, pts: &[HalfInt], method: KernelMethod) -> Result<KernelMatrix> {
    let mut sorted = pts.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != pts.len() {
        return Err(Error::InvalidArgument("kernel points must be distinct".into()));
    }
    let span = pts.iter().map(|p| p.shifted_up().abs()).max().unwrap_or(0) as usize;
    match method {
        KernelMethod::Series => {
            let mut order = (2 * span + 4).next_power_of_two().max(32);
            let mut prev = series_matrix(spec, pts, order)?;
            while order < SERIES_MAX_ORDER {
                order *= 2;
                let next = series_matrix(spec, pts, order)?;
                if max_diff(&prev, &next) < SERIES_TOL {
                    return Ok(KernelMatrix {
                        points: pts.to_vec(),
                        entries: next,
                        resolution: order,
                    });
                }
                prev = next;
            }
            Err(Error::NoConvergence {
                what: "series order",
                limit: SERIES_MAX_ORDER,
            })
        }
        KernelMethod::Quadrature(c) => {
            c.validate(spec)?;
            let mut c = c;
            let mut prev = Grid::new(spec, c).matrix(pts);
            while c.nodes < QUADRATURE_MAX_NODES {
                c.nodes *= 2;
                let next = Grid::new(spec, c).matrix(pts);
                if max_diff(&prev, &next) < QUADRATURE_TOL {
                    return Ok(KernelMatrix {
                        points: pts.to_vec(),
                        entries: next,
                        resolution: c.nodes,
                    });
                }
                prev = next;
            }
            Err(Error::NoConvergence {
                what: "quadrature node count",
                limit: QUADRATURE_MAX_NODES,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FredholmDet {
    pub value: Complex64,
    pub tail_len: usize,
}

/// `det(I - K)` on `{start, start + 1, …}`, doubling the window from `tail_len`
/// until the value moves by less than [`FREDHOLM_TOL`].
pub fn fredholm_det_discrete(
    spec: &KernelSpec,
    start: HalfInt,
    tail_len: usize,
    method: KernelMethod,
) -> Result<FredholmDet> {
    if tail_len == 0 {
        return Err(Error::InvalidArgument("tail length must be at least 1".into()));
    }
    let det_at = |len: usize| -> Result<Complex64> {
        let pts: Vec<HalfInt> = (0..len as i64).map(|k| start.offset(k)).collect();
        Ok(kernel_matrix(spec, &pts, method)?.det_identity_minus())
    };
    let mut len = tail_len;
    let mut prev = det_at(len)?;
    while len < FREDHOLM_MAX_TAIL {
        len *= 2;
        let next = det_at(len)?;
        if (next - prev).norm() < FREDHOLM_TOL {
            return Ok(FredholmDet {
                value: next,
                tail_len: len,
            });
        }
        prev = next;
    }
    Err(Error::NoConvergence {
        what: "fredholm tail length",
        limit: FREDHOLM_MAX_TAIL,
    })
}

/// Both sides of the Cauchy-type evaluation
/// `det[1/((1 - w_i z_j)(1 - w_i/z_j))] = ∏_{i<j}(z_i - z_j)(w_i - w_j)(1 - w_i w_j)(1 - 1/(z_i z_j)) / ∏_{i,j}(1 - w_i z_j)(1 - w_i/z_j)`.
pub fn cauchy_det_identity_check(zs: &[Complex64], ws: &[Complex64]) -> Result<(Complex64, Complex64)> {
    let n = zs.len();
    if ws.len() != n {
        return Err(Error::InvalidArgument(format!("{n} z-values but {} w-values", ws.len())));
    }
    if zs.iter().any(|z| *z == ZERO) {
        return Err(Error::Singular("z = 0".into()));
    }
    let mut entries = Vec::with_capacity(n * n);
    let mut den = ONE;
    for &w in ws {
        for &z in zs {
            let d = (ONE - w * z) * (ONE - w / z);
            if d == ZERO {
                return Err(Error::Singular(format!("1 - wz or 1 - w/z vanishes at z = {z}, w = {w}")));
            }
            entries.push(d.inv());
            den *= d;
        }
    }
    let mut num = ONE;
    for i in 0..n {
        for j in i + 1..n {
            num *= (zs[i] - zs[j]) * (ws[i] - ws[j]) * (ONE - ws[i] * ws[j]) * (ONE - (zs[i] * zs[j]).inv());
        }
    }
    Ok((linalg::det(n, &entries), num / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::brute_correlation;
    use crate::specialization::Specialization;

    fn h(d: i64) -> HalfInt {
        HalfInt::from_doubled(d).unwrap()
    }

    fn vacuum(kind: SpO) -> KernelSpec {
        MeasureSpec::new(kind, Specialization::zero(), Specialization::zero()).into()
    }

    fn small(kind: SpO) -> KernelSpec {
        MeasureSpec::new(kind, Specialization::plancherel_real(0.4), Specialization::plancherel_real(0.3)).into()
    }

    #[test]
    fn vacuum_series_entries() {
        // entries with a > 0 > b need not vanish; the kernel is block triangular
        // with respect to the sign of the points and its minors are still those of δ·[a < 0]
        for kind in [SpO::Sp, SpO::O] {
            let spec = vacuum(kind);
            for a in -7..=7 {
                for b in -7..=7 {
                    let (a, b) = (h(2 * a + 1), h(2 * b + 1));
                    if a.value() > 0.0 && b.value() < 0.0 {
                        continue;
                    }
                    let want = if a == b && a.value() < 0.0 { 1.0 } else { 0.0 };
                    let got = kernel_entry_series(&spec, a, b, 40).unwrap();
                    assert_eq!(got, Complex64::new(want, 0.0), "{kind:?} {} {}", a.value(), b.value());
                }
            }
        }
    }

    #[test]
    fn vacuum_quadrature() {
        let spec = vacuum(SpO::Sp);
        let c = ContourParams::new(1.1, 0.8, 256);
        let k = kernel_entry_quadrature(&spec, h(-1), h(-1), c).unwrap();
        assert!((k - ONE).norm() < 1e-12);
    }

    #[test]
    fn vacuum_quadrature_aliasing_at_64_nodes() {
        // the only aliased monomial surviving both averages is (wz)^N
        let spec = vacuum(SpO::Sp);
        let c = ContourParams::new(1.1, 0.8, 64);
        let k = kernel_entry_quadrature(&spec, h(-1), h(-1), c).unwrap();
        let predicted = 0.88f64.powi(64);
        assert!(((k.re - 1.0) / predicted - 1.0).abs() < 0.05, "{k}");
    }

    #[test]
    fn series_order_precondition() {
        assert!(kernel_entry_series(&vacuum(SpO::Sp), h(9), h(-9), 8).is_err());
    }

    #[test]
    fn f_series_matches_pointwise() {
        for spec in [small(SpO::Sp), KernelSpec::from(MeasureSpec::almost_symmetric(crate::partition::Class::A, 1.3))] {
            let s = spec.f_series(64);
            for k in 0..8 {
                let z = Complex64::from_polar(1.0, 0.7 * k as f64);
                let sum: Complex64 = (-64..=64).map(|e| s.f.coeff(e) * z.powi(e as i32)).sum();
                assert!((sum - spec.f(z)).norm() < 1e-13);
                let inv: Complex64 = (-64..=64).map(|e| s.fi.coeff(e) * z.powi(e as i32)).sum();
                assert!((inv * spec.f(z) - ONE).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn series_and_quadrature_agree() {
        for kind in [SpO::Sp, SpO::O] {
            let spec = small(kind);
            let c = ContourParams::default();
            for (a, b) in [(3, 1), (1, 1), (-1, 3), (-5, -5), (7, -3)] {
                let s = kernel_entry_series(&spec, h(a), h(b), 32).unwrap();
                let q = kernel_entry_quadrature(&spec, h(a), h(b), c).unwrap();
                assert!((s - q).norm() < 1e-10, "{kind:?} {a}/2 {b}/2: {s} vs {q}");
            }
        }
    }

    #[test]
    fn one_point_matches_enumeration() {
        for kind in [SpO::Sp, SpO::O] {
            let spec = small(kind);
            let brute = brute_correlation(&spec.measure, &[h(1)], 12).unwrap().value;
            let k = kernel_entry_series(&spec, h(1), h(1), 32).unwrap();
            assert!((brute - k).norm() < 1e-8, "{kind:?}: {brute} vs {k}");
        }
    }

    #[test]
    fn two_point_matches_enumeration() {
        let spec = small(SpO::Sp);
        let pts = [h(1), h(3)];
        let brute = brute_correlation(&spec.measure, &pts, 12).unwrap().value;
        let m = kernel_matrix(&spec, &pts, KernelMethod::Series).unwrap();
        assert!((brute - m.det()).norm() < 1e-7);
    }

    #[test]
    fn vacuum_matrix_is_identity() {
        let m = kernel_matrix(&vacuum(SpO::Sp), &[h(-1), h(-3)], KernelMethod::Series).unwrap();
        assert_eq!(m.entries, vec![ONE, ZERO, ZERO, ONE]);
    }

    #[test]
    fn matrix_rejects_repeated_points() {
        assert!(kernel_matrix(&vacuum(SpO::Sp), &[h(1), h(1)], KernelMethod::Series).is_err());
    }

    #[test]
    fn rotated_route_agrees() {
        let spec: KernelSpec = MeasureSpec::almost_symmetric(crate::partition::Class::A, 2.0).into();
        let c = ContourParams::default();
        for (a, b) in [(3, 1), (5, 9), (-1, 1)] {
            let plain = kernel_entry_quadrature(&spec, h(a), h(b), c).unwrap();
            let rotated = kernel_entry_quadrature(&spec, h(a), h(b), c.rotated()).unwrap();
            assert!((plain - rotated).norm() < 1e-12, "{plain} vs {rotated}");
        }
    }

    #[test]
    fn fredholm_vacuum() {
        let f = fredholm_det_discrete(&vacuum(SpO::Sp), h(1), 4, KernelMethod::Series).unwrap();
        assert_eq!(f.value, ONE);
    }

    #[test]
    fn contour_validation() {
        let spec = small(SpO::Sp);
        assert!(ContourParams::new(0.8, 1.0, 64).validate(&spec).is_err());
        assert!(ContourParams::new(1.5, 0.9, 64).validate(&spec).is_err());
        assert!(ContourParams::new(1.0, 0.8, 100).validate(&spec).is_err());
        use crate::specialization::AlphabetStyle;
        let vars = |x: f64| Specialization::from_variables(vec![Complex64::new(x, 0.0)], AlphabetStyle::Plain).unwrap();
        let tight: KernelSpec = MeasureSpec::new(SpO::Sp, vars(0.5), vars(0.85)).into();
        assert!(ContourParams::default().validate(&tight).is_err());
        let c = ContourParams::for_spec(&tight).unwrap();
        c.validate(&tight).unwrap();
        let s = kernel_entry_series(&tight, h(1), h(-1), 32).unwrap();
        let q = kernel_entry_quadrature(&tight, h(1), h(-1), ContourParams { nodes: 1024, ..c }).unwrap();
        assert!((s - q).norm() < 1e-9, "{s} vs {q}");
    }

    #[test]
    fn cauchy_determinant() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let (l, r) = cauchy_det_identity_check(&[c(1.3, 0.0)], &[c(0.4, 0.0)]).unwrap();
        assert!((l - r).norm() < 1e-15);
        let (l, r) = cauchy_det_identity_check(&[c(1.3, 0.0), c(0.7, 0.2)], &[c(0.4, 0.0), c(-0.3, 0.0)]).unwrap();
        assert!((l - r).norm() / r.norm() < 1e-12);
        assert!(cauchy_det_identity_check(&[c(2.0, 0.0)], &[c(0.5, 0.0)]).is_err());
    }
}
