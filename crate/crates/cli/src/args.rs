//! Value parsers for list, grid and range flags.

use anyhow::{anyhow, bail, Result};
use spodet_core::specialization::parse_complex;
use spodet_core::{Complex64, Partition, Specialization};

pub fn specialization(s: &str) -> Result<Specialization> {
    s.parse::<Specialization>().map_err(|e| anyhow!(e))
}

pub fn complex_list(s: &str) -> Result<Vec<Complex64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| parse_complex(t).map_err(|e| anyhow!(e))).collect()
}

pub fn float_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let v: f64 = t.trim().parse().map_err(|_| anyhow!("not a number: `{t}`"))?;
            if !v.is_finite() {
                bail!("not finite: `{t}`");
            }
            Ok(v)
        })
        .collect()
}

pub fn partition(s: &str) -> Result<Partition> {
    if s.trim().is_empty() {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| anyhow!("not a part: `{t}`")))
        .collect::<Result<Vec<u32>>>()?;
    Partition::new(parts).map_err(|e| anyhow!(e))
}

/// `start:stop:step`, both ends included (up to rounding of the last step).
pub fn grid(s: &str) -> Result<Vec<f64>> {
    let fields: Vec<&str> = s.split(':').collect();
    let [a, b, h] = fields[..] else {
        bail!("grid must be start:stop:step, got `{s}`");
    };
    let num = |t: &str| -> Result<f64> { t.trim().parse::<f64>().map_err(|_| anyhow!("not a number in grid: `{t}`")) };
    let (a, b, h) = (num(a)?, num(b)?, num(h)?);
    if !(a.is_finite() && b.is_finite() && h.is_finite()) || h <= 0.0 || b < a {
        bail!("grid needs finite start <= stop and step > 0, got `{s}`");
    }
    let n = ((b - a) / h + 1e-9).floor() as usize;
    if n > 100_000 {
        bail!("grid `{s}` has more than 100000 points");
    }
    Ok((0..=n).map(|i| a + i as f64 * h).collect())
}

/// Sizes as `a..b` (inclusive), `a:b:step` or a comma list.
pub fn sizes(s: &str) -> Result<Vec<usize>> {
    let int = |t: &str| -> Result<usize> { t.trim().parse::<usize>().map_err(|_| anyhow!("not a size: `{t}`")) };
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (int(a)?, int(b.trim_start_matches('='))?);
        if b < a {
            bail!("empty size range `{s}`");
        }
        (a..=b).collect()
    } else if s.contains(':') {
        let fields: Vec<&str> = s.split(':').collect();
        let [a, b, h] = fields[..] else {
            bail!("size grid must be start:stop:step, got `{s}`");
        };
        let (a, b, h) = (int(a)?, int(b)?, int(h)?);
        if h == 0 || b < a {
            bail!("size grid needs start <= stop and step > 0, got `{s}`");
        }
        (a..=b).step_by(h).collect()
    } else {
        s.split(',').map(int).collect::<Result<_>>()?
    };
    if out.contains(&0) {
        bail!("sizes must be positive");
    }
    Ok(out)
}

pub fn positive(s: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().map_err(|_| anyhow!("not a number: `{s}`"))?;
    if !(v > 0.0 && v.is_finite()) {
        bail!("must be positive, got `{s}`");
    }
    Ok(v)
}
