//! Specializations of the ring of symmetric functions, given by their powersum
//! values `p_n(ρ)`, together with the generating series `H(ρ; z) = Σ h_k(ρ) z^k`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{exp_power, SeriesTrunc};

/// Dense horizon used when a caller needs powersums of an infinite family as a list.
pub const DEFAULT_HORIZON: usize = 128;

/// How a list of variables becomes an alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphabetStyle {
    /// `p_n = Σ x_i^n`.
    Plain,
    /// `p_n = Σ (x_i^n + x_i^{-n})`.
    Doubled,
    /// Doubled, plus the extra variable `1`.
    DoubledPlusOne,
}

#[derive(Clone, Debug, PartialEq)]
enum Family {
    Zero,
    Plancherel(Complex64),
    Variables {
        xs: Vec<Complex64>,
        style: AlphabetStyle,
    },
    Powersums(Vec<Complex64>),
}

/// A specialization `ρ`, possibly composed with the involution `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct Specialization {
    family: Family,
    dual: bool,
}

impl Specialization {
    pub fn zero() -> Self {
        Self::new(Family::Zero)
    }

    /// `pl_θ`: `p_1 = θ` and all other powersums vanish.
    pub fn plancherel(theta: Complex64) -> Self {
        Self::new(Family::Plancherel(theta))
    }

    pub fn plancherel_real(theta: f64) -> Self {
        Self::plancherel(Complex64::new(theta, 0.0))
    }

    pub fn from_variables(xs: Vec<Complex64>, style: AlphabetStyle) -> Result<Self> {
        if style != AlphabetStyle::Plain && xs.iter().any(|x| x.norm() == 0.0) {
            return Err(Error::ZeroVariable);
        }
        Ok(Self::new(Family::Variables { xs, style }))
    }

    /// Finitely supported powersums `p_1, p_2, …` (zero beyond the list).
    pub fn from_powersums(ps: Vec<Complex64>) -> Self {
        Self::new(Family::Powersums(ps))
    }

    /// Specialization attached to the logarithmic coefficients `ρ_k` of a
    /// Wiener–Hopf factor `exp(Σ ρ_k z^k)`, i.e. `p_k = k ρ_k`.
    pub fn from_log_coeffs(rho: &[Complex64]) -> Self {
        let ps = rho
            .iter()
            .enumerate()
            .map(|(i, &r)| r * (i + 1) as f64)
            .collect();
        Self::from_powersums(ps)
    }

    fn new(family: Family) -> Self {
        Self {
            family,
            dual: false,
        }
    }

    /// `ω ρ`: `p_n ↦ (-1)^{n-1} p_n`, so that `h_k(ωρ) = e_k(ρ)`.
    pub fn omega_dual(&self) -> Self {
        Self {
            family: self.family.clone(),
            dual: !self.dual,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.family {
            Family::Zero => true,
            Family::Plancherel(t) => t.norm() == 0.0,
            Family::Variables { xs, style } => xs.is_empty() && *style != AlphabetStyle::DoubledPlusOne,
            Family::Powersums(ps) => ps.iter().all(|p| p.norm() == 0.0),
        }
    }

    /// The Plancherel parameter, if this is a (possibly dualised) Plancherel specialization.
    pub fn plancherel_parameter(&self) -> Option<Complex64> {
        match &self.family {
            Family::Zero => Some(Complex64::new(0.0, 0.0)),
            Family::Plancherel(t) => Some(*t),
            _ => None,
        }
    }

    /// `p_n(ρ)` for `n ≥ 1`.
    pub fn p(&self, n: usize) -> Complex64 {
        assert!(n >= 1, "powersums are indexed from 1");
        let raw = match &self.family {
            Family::Zero => Complex64::new(0.0, 0.0),
            Family::Plancherel(t) => {
                if n == 1 {
                    *t
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Family::Variables { xs, style } => {
                let k = n as i32;
                let mut s: Complex64 = match style {
                    AlphabetStyle::Plain => xs.iter().map(|x| x.powi(k)).sum(),
                    _ => xs.iter().map(|x| x.powi(k) + x.powi(-k)).sum(),
                };
                if *style == AlphabetStyle::DoubledPlusOne {
                    s += 1.0;
                }
                s
            }
            Family::Powersums(ps) => ps.get(n - 1).copied().unwrap_or_default(),
        };
        if self.dual && n % 2 == 0 {
            -raw
        } else {
            raw
        }
    }

    /// Largest `n` with possibly nonzero `p_n`, or `None` for infinite families.
    pub fn support(&self) -> Option<usize> {
        match &self.family {
            Family::Zero => Some(0),
            Family::Plancherel(_) => Some(1),
            Family::Variables { .. } => None,
            Family::Powersums(ps) => Some(ps.iter().rposition(|p| p.norm() != 0.0).map_or(0, |i| i + 1)),
        }
    }

    /// Radius `r` with `|p_n| / n = O(r^n)`.
    ///
    /// Finitely supported families satisfy the bound for every `r > 0`; the
    /// Plancherel family reports the conventional `1/2`.
    pub fn decay_radius(&self) -> f64 {
        match &self.family {
            Family::Zero | Family::Plancherel(_) => 0.5,
            Family::Variables { xs, style } => {
                let r = xs
                    .iter()
                    .map(|x| match style {
                        AlphabetStyle::Plain => x.norm(),
                        _ => x.norm().max(1.0 / x.norm()),
                    })
                    .fold(0.0, f64::max);
                if *style == AlphabetStyle::DoubledPlusOne {
                    r.max(1.0)
                } else {
                    r
                }
            }
            Family::Powersums(ps) => ps
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let n = (i + 1) as f64;
                    (p.norm() / n).powf(1.0 / n)
                })
                .fold(0.0, f64::max)
                .max(f64::MIN_POSITIVE),
        }
    }

    /// The radius that constrains contours, or `None` when the powersums are finitely supported.
    pub fn growth_radius(&self) -> Option<f64> {
        match self.support() {
            Some(_) => None,
            None => Some(self.decay_radius()),
        }
    }

    /// `h_0, …, h_N`, the coefficients of `exp(Σ_{n≤N} p_n z^n / n)`.
    pub fn h_coeffs(&self, n: usize) -> Vec<Complex64> {
        exp_power(&self.log_coeffs(n), n)
    }

    /// `e_0, …, e_N` through `E(z) = 1 / H(ρ; -z)`, independently of `ω`.
    pub fn e_coeffs(&self, n: usize) -> Vec<Complex64> {
        let h = self.h_coeffs(n);
        let alternated: Vec<Complex64> = h
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
            .collect();
        let s = SeriesTrunc::from_power_coeffs(n, &alternated);
        let inv = s.reciprocal().expect("h_0 = 1");
        (0..=n as i64).map(|k| inv.coeff(k)).collect()
    }

    /// `[0, p_1/1, p_2/2, …, p_N/N]`.
    pub fn log_coeffs(&self, n: usize) -> Vec<Complex64> {
        let limit = self.support().map_or(n, |s| s.min(n));
        let mut a = vec![Complex64::new(0.0, 0.0); n + 1];
        for (k, slot) in a.iter_mut().enumerate().take(limit + 1).skip(1) {
            *slot = self.p(k) / k as f64;
        }
        a
    }

    /// Truncated series of `H(ρ; z^{direction})`, `direction = ±1`.
    pub fn h_series(&self, n: usize, direction: i32) -> SeriesTrunc {
        let s = SeriesTrunc::from_power_coeffs(n, &self.h_coeffs(n));
        if direction < 0 {
            s.reflect()
        } else {
            s
        }
    }

    /// Pointwise `H(ρ; z)`, closed form where one exists.
    pub fn h_value(&self, z: Complex64) -> Complex64 {
        if self.dual {
            return self.undual().h_value(-z).inv();
        }
        let one = Complex64::new(1.0, 0.0);
        match &self.family {
            Family::Zero => one,
            Family::Plancherel(t) => (t * z).exp(),
            Family::Variables { xs, style } => {
                let mut v = one;
                for &x in xs {
                    v /= one - x * z;
                    if *style != AlphabetStyle::Plain {
                        v /= one - z / x;
                    }
                }
                if *style == AlphabetStyle::DoubledPlusOne {
                    v /= one - z;
                }
                v
            }
            Family::Powersums(ps) => {
                let mut zn = one;
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, p) in ps.iter().enumerate() {
                    zn *= z;
                    acc += p * zn / (i + 1) as f64;
                }
                acc.exp()
            }
        }
    }

    /// `log H(ρ; z)`, summed factor by factor so that `exp` of a sum of these
    /// avoids forming large intermediate values.
    pub fn log_h_value(&self, z: Complex64) -> Complex64 {
        if self.dual {
            return -self.undual().log_h_value(-z);
        }
        let one = Complex64::new(1.0, 0.0);
        match &self.family {
            Family::Zero => Complex64::new(0.0, 0.0),
            Family::Plancherel(t) => t * z,
            Family::Variables { xs, style } => {
                let mut v = Complex64::new(0.0, 0.0);
                for &x in xs {
                    v -= (one - x * z).ln();
                    if *style != AlphabetStyle::Plain {
                        v -= (one - z / x).ln();
                    }
                }
                if *style == AlphabetStyle::DoubledPlusOne {
                    v -= (one - z).ln();
                }
                v
            }
            Family::Powersums(ps) => {
                let mut zn = one;
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, p) in ps.iter().enumerate() {
                    zn *= z;
                    acc += p * zn / (i + 1) as f64;
                }
                acc
            }
        }
    }

    fn undual(&self) -> Self {
        Self {
            family: self.family.clone(),
            dual: false,
        }
    }

    /// Vector of `p_1..=p_n`, for finitely supported specializations the exact list.
    pub fn powersums(&self, n: usize) -> Vec<Complex64> {
        (1..=n).map(|k| self.p(k)).collect()
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual {
            write!(f, "omega(")?;
        }
        let list = |v: &[Complex64]| v.iter().map(|&c| format_complex(c)).collect::<Vec<_>>().join(",");
        match &self.family {
            Family::Zero => write!(f, "zero")?,
            Family::Plancherel(t) => write!(f, "plancherel:{}", format_complex(*t))?,
            Family::Variables { xs, style } => {
                let tag = match style {
                    AlphabetStyle::Plain => "vars",
                    AlphabetStyle::Doubled => "dvars",
                    AlphabetStyle::DoubledPlusOne => "dvars1",
                };
                write!(f, "{tag}:{}", list(xs))?
            }
            Family::Powersums(ps) => write!(f, "powersums:{}", list(ps))?,
        }
        if self.dual {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for Specialization {
    type Err = Error;

    /// Parses `zero`, `plancherel:<θ>`, `vars:<x,…>`, `dvars:<x,…>`, `dvars1:<x,…>`, `powersums:<p,…>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "zero" {
            return Ok(Self::zero());
        }
        let (tag, body) = s
            .split_once(':')
            .ok_or_else(|| Error::BadSpecialization(s.to_string()))?;
        let list = || -> Result<Vec<Complex64>> {
            if body.trim().is_empty() {
                return Ok(Vec::new());
            }
            body.split(',').map(parse_complex).collect()
        };
        match tag.trim() {
            "plancherel" | "pl" => Ok(Self::plancherel(parse_complex(body)?)),
            "vars" => Self::from_variables(list()?, AlphabetStyle::Plain),
            "dvars" => Self::from_variables(list()?, AlphabetStyle::Doubled),
            "dvars1" => Self::from_variables(list()?, AlphabetStyle::DoubledPlusOne),
            "powersums" => Ok(Self::from_powersums(list()?)),
            _ => Err(Error::BadSpecialization(s.to_string())),
        }
    }
}

/// Parses complex literals such as `0.4`, `-2i`, `i`, `1.5-0.25i`, `1e-3+2e-1i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::BadComplex(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let imag = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[i..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Formats a complex number in the literal syntax accepted by [`parse_complex`].
pub fn format_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("{}{}i", c.re, c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}
