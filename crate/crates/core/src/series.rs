//! Truncated Laurent series `Σ_{|e| ≤ N} c_e z^e` with complex coefficients.
//!
//! Products drop every exponent outside `[-N, N]`; coefficients near the
//! truncation edge are therefore only as accurate as the decay of the
//! operands allows, and callers double `N` until results stabilise.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTrunc {
    order: usize,
    coeffs: Vec<Complex64>,
}

impl SeriesTrunc {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(order: usize, exponent: i64, c: Complex64) -> Self {
        let mut s = Self::zero(order);
        s.set(exponent, c);
        s
    }

    /// Power series `Σ_{k=0}^{N} c_k z^k` from a coefficient slice (extra entries are dropped).
    pub fn from_power_coeffs(order: usize, coeffs: &[Complex64]) -> Self {
        let mut s = Self::zero(order);
        for (k, &c) in coeffs.iter().enumerate().take(order + 1) {
            s.set(k as i64, c);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `z^e`; zero outside the stored window.
    pub fn coeff(&self, e: i64) -> Complex64 {
        match self.index(e) {
            Some(i) => self.coeffs[i],
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Sets the coefficient of `z^e`; writes outside the window are ignored.
    pub fn set(&mut self, e: i64, c: Complex64) {
        if let Some(i) = self.index(e) {
            self.coeffs[i] = c;
        }
    }

    fn index(&self, e: i64) -> Option<usize> {
        let n = self.order as i64;
        (-n..=n).contains(&e).then(|| (e + n) as usize)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// Series in `z^{-1}`: `c_e ↦ c_{-e}`.
    pub fn reflect(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self {
            order: self.order,
            coeffs,
        }
    }

    /// Re-truncates (or zero-pads) to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut s = Self::zero(order);
        let n = order.min(self.order) as i64;
        for e in -n..=n {
            s.set(e, self.coeff(e));
        }
        s
    }

    fn nonzero_range(&self) -> Option<(i64, i64)> {
        let n = self.order as i64;
        let lo = self.coeffs.iter().position(|c| *c != Complex64::new(0.0, 0.0))?;
        let hi = self.coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0))?;
        Some((lo as i64 - n, hi as i64 - n))
    }

    /// Positive-exponent part, constant term, negative-exponent part.
    fn split(&self) -> (Vec<Complex64>, Complex64, Vec<Complex64>) {
        let n = self.order as i64;
        let mut pos = vec![Complex64::new(0.0, 0.0); self.order + 1];
        let mut neg = vec![Complex64::new(0.0, 0.0); self.order + 1];
        for k in 1..=n {
            pos[k as usize] = self.coeff(k);
            neg[k as usize] = self.coeff(-k);
        }
        (pos, self.coeff(0), neg)
    }

    /// `exp` of the series. The positive and negative parts commute, so
    /// `exp(c_0 + P(z) + Q(1/z)) = e^{c_0} exp(P(z)) exp(Q(1/z))`, each factor a one-sided power series.
    pub fn exp(&self) -> Self {
        let (pos, c0, neg) = self.split();
        let ep = Self::from_power_coeffs(self.order, &exp_power(&pos, self.order));
        let en = Self::from_power_coeffs(self.order, &exp_power(&neg, self.order)).reflect();
        (&ep * &en).scale(c0.exp())
    }

    /// Multiplicative inverse of a one-sided series with nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0 == Complex64::new(0.0, 0.0) {
            return Err(Error::Singular("reciprocal of a series with zero constant term".into()));
        }
        match self.nonzero_range() {
            Some((lo, _)) if lo >= 0 => {
                let (pos, _, _) = self.split();
                Ok(Self::from_power_coeffs(self.order, &reciprocal_power(c0, &pos, self.order)))
            }
            Some((_, hi)) if hi <= 0 => {
                let (_, _, neg) = self.split();
                Ok(Self::from_power_coeffs(self.order, &reciprocal_power(c0, &neg, self.order))
                    .reflect())
            }
            _ => Err(Error::InvalidArgument(
                "reciprocal of a two-sided Laurent series is not supported; use exp(-log)".into(),
            )),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.order.max(other.order) as i64;
        (-n..=n)
            .map(|e| (self.coeff(e) - other.coeff(e)).norm())
            .fold(0.0, f64::max)
    }
}

/// Coefficients of `exp(Σ_{k≥1} a_k z^k)` through degree `n` (`a[0]` is ignored).
pub fn exp_power(a: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            acc += a[j] * e[k - j] * j as f64;
        }
        e[k] = acc / k as f64;
    }
    e
}

fn reciprocal_power(c0: Complex64, a: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut r = vec![Complex64::new(0.0, 0.0); n + 1];
    r[0] = c0.inv();
    for k in 1..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            acc += a[j] * r[k - j];
        }
        r[k] = -acc * r[0];
    }
    r
}

impl Add for &SeriesTrunc {
    type Output = SeriesTrunc;

    fn add(self, rhs: &SeriesTrunc) -> SeriesTrunc {
        let order = self.order.max(rhs.order);
        let mut s = SeriesTrunc::zero(order);
        let n = order as i64;
        for e in -n..=n {
            s.set(e, self.coeff(e) + rhs.coeff(e));
        }
        s
    }
}

impl Sub for &SeriesTrunc {
    type Output = SeriesTrunc;

    fn sub(self, rhs: &SeriesTrunc) -> SeriesTrunc {
        self + &(-rhs)
    }
}

impl Neg for &SeriesTrunc {
    type Output = SeriesTrunc;

    fn neg(self) -> SeriesTrunc {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &SeriesTrunc {
    type Output = SeriesTrunc;

    fn mul(self, rhs: &SeriesTrunc) -> SeriesTrunc {
        let order = self.order.max(rhs.order);
        let n = order as i64;
        let mut out = SeriesTrunc::zero(order);
        let (Some((alo, ahi)), Some((blo, bhi))) = (self.nonzero_range(), rhs.nonzero_range())
        else {
            return out;
        };
        for i in alo..=ahi {
            let a = self.coeff(i);
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let jlo = blo.max(-n - i);
            let jhi = bhi.min(n - i);
            for j in jlo..=jhi {
                let idx = (i + j + n) as usize;
                out.coeffs[idx] += a * rhs.coeff(j);
            }
        }
        out
    }
}
