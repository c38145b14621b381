//! The Airy function `Ai` and its derivative.
//!
//! Maclaurin series on `|x| ≤ 2`, the large-argument expansions for `|x| ≥ 9`,
//! and Taylor stepping of `y'' = xy` in between: backwards from the `x = 9`
//! anchor on the right (the recessive direction for `Ai`), outwards from
//! `x = -2` on the oscillatory side.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Largest `|x|` accepted by [`airy_ai`].
pub const AIRY_RANGE: f64 = 50.0;

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = -0.258_819_403_792_806_8;
const SERIES_EDGE: f64 = 2.0;
const ASYMPTOTIC_EDGE: f64 = 9.0;
const STEP: f64 = 0.25;

/// `Ai(x)` for `|x| ≤ 50`.
pub fn airy_ai(x: f64) -> Result<f64> {
    check(x)?;
    Ok(airy_pair(x).0)
}

/// `Ai'(x)` for `|x| ≤ 50`.
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    check(x)?;
    Ok(airy_pair(x).1)
}

fn check(x: f64) -> Result<()> {
    if x.is_finite() && x.abs() <= AIRY_RANGE {
        Ok(())
    } else {
        Err(Error::OutOfRange(x))
    }
}

/// `(Ai(x), Ai'(x))` for any finite `x`; accuracy degrades slowly as `x → -∞`.
pub fn airy_pair(x: f64) -> (f64, f64) {
    if x.abs() <= SERIES_EDGE {
        maclaurin(x)
    } else if x >= ASYMPTOTIC_EDGE {
        asymptotic_right(x)
    } else if x <= -ASYMPTOTIC_EDGE {
        asymptotic_left(-x)
    } else if x > 0.0 {
        let (y, yp) = asymptotic_right(ASYMPTOTIC_EDGE);
        march(ASYMPTOTIC_EDGE, y, yp, x)
    } else {
        let (y, yp) = maclaurin(-SERIES_EDGE);
        march(-SERIES_EDGE, y, yp, x)
    }
}

/// `Ai(x)` for any finite `x`, without the range check.
pub(crate) fn ai(x: f64) -> f64 {
    airy_pair(x).0
}

fn maclaurin(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    // f = Σ t_k, g = Σ u_k and their derivatives f' = Σ p_k, g' = Σ q_k
    let (mut t, mut u) = (1.0, x);
    let (mut p, mut q) = (x * x / 2.0, 1.0);
    let (mut f, mut g, mut fp, mut gp) = (t, u, p, q);
    for k in 1..60 {
        let k = k as f64;
        t *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
        u *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
        q *= x3 / ((3.0 * k) * (3.0 * k - 2.0));
        if k >= 2.0 {
            p *= x3 / ((3.0 * k - 1.0) * (3.0 * k - 3.0));
            fp += p;
        }
        f += t;
        g += u;
        gp += q;
        if t.abs() + u.abs() + p.abs() + q.abs() < 1e-18 {
            break;
        }
    }
    (AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp)
}

/// Coefficients `u_k` of the large-argument expansion, and `v_k` for the derivative.
fn uv(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    for n in 1..=k {
        let m = n as f64;
        let next = u[n - 1] * (6.0 * m - 5.0) * (6.0 * m - 3.0) * (6.0 * m - 1.0)
            / ((2.0 * m - 1.0) * 216.0 * m);
        u.push(next);
        v.push(-next * (6.0 * m + 1.0) / (6.0 * m - 1.0));
    }
    (u, v)
}

const TERMS: usize = 40;

fn asymptotic_right(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = uv(TERMS);
    let (mut su, mut sv) = (0.0, 0.0);
    let mut zp = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..=TERMS {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let tu = sign * u[k] / zp;
        if tu.abs() > last {
            break;
        }
        last = tu.abs();
        su += tu;
        sv += sign * v[k] / zp;
        zp *= zeta;
        if last < 1e-17 {
            break;
        }
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (e / q * su, -e * q * sv)
}

fn asymptotic_left(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = uv(TERMS);
    let (mut ue, mut uo, mut ve, mut vo) = (0.0, 0.0, 0.0, 0.0);
    let mut zp = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..=TERMS {
        let term = u[k] / zp;
        if term.abs() > last {
            break;
        }
        last = term.abs();
        // (-1)^{⌊k/2⌋} splits into the even and odd sums
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            ue += sign * term;
            ve += sign * v[k] / zp;
        } else {
            uo += sign * term;
            vo += sign * v[k] / zp;
        }
        zp *= zeta;
        if last < 1e-17 {
            break;
        }
    }
    let (s, c) = (zeta - FRAC_PI_4).sin_cos();
    let q = x.powf(0.25);
    let norm = PI.sqrt();
    ((c * ue + s * uo) / (norm * q), q * (s * ve - c * vo) / norm)
}

/// Integrates `y'' = xy` from `x0` to `x1` by Taylor steps.
fn march(x0: f64, mut y: f64, mut yp: f64, x1: f64) -> (f64, f64) {
    let steps = ((x1 - x0).abs() / STEP).ceil().max(1.0) as usize;
    let h = (x1 - x0) / steps as f64;
    let mut x = x0;
    for _ in 0..steps {
        (y, yp) = taylor_step(x, y, yp, h);
        x += h;
    }
    (y, yp)
}

fn taylor_step(x0: f64, y: f64, yp: f64, h: f64) -> (f64, f64) {
    // c_{n+2} (n+2)(n+1) = x0 c_n + c_{n-1}
    let mut c = [0.0f64; 64];
    c[0] = y;
    c[1] = yp;
    c[2] = x0 * y / 2.0;
    let (mut val, mut der) = (y + yp * h + c[2] * h * h, yp + 2.0 * c[2] * h);
    let mut hn = h * h;
    let scale = y.abs() + yp.abs();
    for n in 3..64 {
        c[n] = (x0 * c[n - 2] + c[n - 3]) / (n * (n - 1)) as f64;
        der += n as f64 * c[n] * hn;
        hn *= h;
        let t = c[n] * hn;
        val += t;
        if n > 8 && t.abs() < 1e-18 * scale && c[n - 1].abs() * hn.abs() < 1e-18 * scale {
            break;
        }
    }
    (val, der)
}

#[cfg(test)]
mod tests {
    use super::*;

    // (x, Ai(x), Ai'(x)) from a 30-digit reference evaluation
    const REFERENCE: &[(f64, f64, f64)] = &[
        (-50.0, -0.16188142361232092, 0.96898983727674909),
        (-30.0, -0.087968188456842163, 1.2286206026374851),
        (-20.0, -0.17640612707798469, 0.89286285673647124),
        (-12.0, -0.066555175054373129, 1.0231104533679707),
        (-9.5, 0.3191032477191282, -0.10809531881187124),
        (-8.75, -0.23823003845963551, -0.6738561861206686),
        (-6.0, -0.32914517362982311, 0.34593548728134289),
        (-4.25, 0.12778292722826728, -0.75926741205737406),
        (-2.5, -0.11232506769296609, 0.67885273426479436),
        (-1.0, 0.53556088329235212, -0.010160567116645209),
        (-0.3, 0.43090309528558086, -0.24054512725815461),
        (0.0, 0.35502805388781724, -0.2588194037928068),
        (0.7, 0.18916240039815008, -0.19985119158228048),
        (1.9, 0.040594420031529502, -0.060436781785756547),
        (2.1, 0.029952602115866522, -0.046455994032674594),
        (3.3, 0.0037872884268267546, -0.0071424877858847401),
        (5.0, 0.00010834442813607442, -0.00024741389086846248),
        (7.5, 1.9172560675134308e-7, -5.3127139597205447e-7),
        (8.9, 3.3420610425186999e-9, -1.0062109921836912e-8),
        (9.1, 1.824228253564028e-9, -5.5520373443859194e-9),
        (12.0, 1.3931846888753608e-13, -4.8547365549853085e-13),
        (20.0, 1.6916728686705403e-27, -7.586391625748355e-27),
        (30.0, 3.2082175915504956e-49, -1.759876581432726e-48),
        (50.0, 4.5849417240748285e-104, -3.2443318198287993e-103),
    ];

    #[test]
    fn matches_reference() {
        for &(x, ai, aip) in REFERENCE {
            let (y, yp) = airy_pair(x);
            // relative on the right, absolute against the O(1) envelope on the left
            let tol = |r: f64| if x > 0.0 { 1e-12 * r.abs() } else { 1e-12 * x.abs().max(1.0).sqrt() };
            assert!((y - ai).abs() <= tol(ai), "Ai({x}) = {y}, want {ai}");
            assert!((yp - aip).abs() <= tol(aip).max(1e-12 * x.abs().sqrt() * 3.0), "Ai'({x}) = {yp}, want {aip}");
        }
    }

    #[test]
    fn value_at_zero() {
        assert!((airy_ai(0.0).unwrap() - 0.355028053887817).abs() < 1e-15);
    }

    #[test]
    fn decays_monotonically() {
        let v: Vec<f64> = [1.0, 5.0, 10.0].iter().map(|&x| airy_ai(x).unwrap()).collect();
        assert!(v[0] > v[1] && v[1] > v[2] && v[2] > 0.0);
    }

    #[test]
    fn ode_residual() {
        // centred second differences, Richardson-extrapolated to fourth order
        let dd = |x: f64, h: f64| (ai(x + h) - 2.0 * ai(x) + ai(x - h)) / (h * h);
        for x in [-5.0, 0.0, 5.0, -1.7, 2.3, 8.5, -8.5] {
            let h = 4e-3;
            let d2 = (4.0 * dd(x, h / 2.0) - dd(x, h)) / 3.0;
            assert!((d2 - x * ai(x)).abs() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn wronskian_style_consistency() {
        // the derivative agrees with a centred difference of the value
        let h = 1e-5;
        for x in [-7.3, -3.0, -2.0, 0.4, 2.0, 4.4, 9.0] {
            let d = (ai(x + h) - ai(x - h)) / (2.0 * h);
            assert!((d - airy_pair(x).1).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn range_is_enforced() {
        assert!(airy_ai(50.5).is_err());
        assert!(airy_ai(f64::NAN).is_err());
        assert!(airy_ai_prime(-50.0).is_ok());
    }
}
