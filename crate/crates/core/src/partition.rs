//! Integer partitions, Frobenius coordinates, the almost-symmetric classes
//! `A` and `B`, and the half-integer particle picture `S(λ) = {λ_i - i + 1/2}`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default maximal weight accepted by [`enumerate_partitions`].
pub const DEFAULT_PARTITION_CAP: usize = 30;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let valid = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if valid {
            Ok(Self { parts })
        } else {
            Err(Error::InvalidPartition(parts))
        }
    }

    /// Builds a partition from parts that may contain trailing zeros.
    pub fn from_padded(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `λ_i` with 1-based index; zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Largest part (`λ_1`), zero for the empty partition.
    pub fn largest(&self) -> u32 {
        self.part(1)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.largest() as usize;
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p as usize >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Diagram containment `μ ⊆ λ`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.parts.iter().zip(&self.parts).all(|(m, l)| m <= l)
    }

    /// Size of the Durfee square, `#{i : λ_i ≥ i}`.
    pub fn durfee(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|(i, &p)| p as usize > *i)
            .count()
    }

    pub fn frobenius(&self) -> FrobeniusCoord {
        let d = self.durfee();
        let conj = self.conjugate();
        let arms = (0..d).map(|i| self.parts[i] - i as u32 - 1).collect();
        let legs = (0..d).map(|i| conj.parts[i] - i as u32 - 1).collect();
        FrobeniusCoord { arms, legs }
    }

    pub fn in_class(&self, class: Class) -> bool {
        let fr = self.frobenius();
        match class {
            Class::A => fr.arms.iter().zip(&fr.legs).all(|(a, b)| *b == a + 1),
            Class::B => fr.arms.iter().zip(&fr.legs).all(|(a, b)| *a == b + 1),
        }
    }

    /// Number of standard Young tableaux, by the hook-length formula.
    pub fn dim(&self) -> BigUint {
        let conj = self.conjugate();
        let mut hooks = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.parts[j] as usize - i - 1;
                hooks *= BigUint::from(arm + leg + 1);
            }
        }
        factorial(self.weight()) / hooks
    }

    /// `dim λ` as a float, for weights.
    pub fn dim_f64(&self) -> f64 {
        biguint_to_f64(&self.dim())
    }

    /// The first `depth` particle positions `λ_i - i + 1/2`.
    pub fn points(&self, depth: usize) -> Result<PointConfig> {
        if depth < self.len() {
            return Err(Error::DepthTooSmall {
                depth,
                length: self.len(),
            });
        }
        let points = (1..=depth)
            .map(|i| HalfInt::from_int_plus_half(self.part(i) as i64 - i as i64))
            .collect();
        Ok(PointConfig { points })
    }

    /// Whether the half-integer `k` belongs to `S(λ)`.
    pub fn occupies(&self, k: HalfInt) -> bool {
        // k = λ_i - i + 1/2 for some i; for i > ℓ(λ) this is -i + 1/2.
        let base = k.floor(); // λ_i - i
        if base < -(self.len() as i64) {
            return true;
        }
        (1..=self.len()).any(|i| self.part(i) as i64 - i as i64 == base)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Parses `3,1,1`; the empty string (or `0`) is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidArgument(format!("bad partition `{s}`")))?;
        Partition::from_padded(parts)
    }
}

/// Frobenius coordinates `(a_1, …, a_d | b_1, …, b_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusCoord {
    pub arms: Vec<u32>,
    pub legs: Vec<u32>,
}

impl FrobeniusCoord {
    pub fn new(arms: Vec<u32>, legs: Vec<u32>) -> Result<Self> {
        let strict = |v: &[u32]| v.windows(2).all(|w| w[0] > w[1]);
        if arms.len() != legs.len() || !strict(&arms) || !strict(&legs) {
            return Err(Error::InvalidFrobenius);
        }
        Ok(Self { arms, legs })
    }

    pub fn rank(&self) -> usize {
        self.arms.len()
    }

    /// Inverse of [`Partition::frobenius`].
    pub fn to_partition(&self) -> Partition {
        let d = self.rank();
        if d == 0 {
            return Partition::empty();
        }
        // rows i < d: λ_i = a_i + i + 1; rows below the Durfee square come
        // from the legs: λ_i for i ≥ d is #{j : b_j + j ≥ i}.
        let length = self.legs[0] as usize + 1;
        let parts = (0..length)
            .map(|i| {
                if i < d {
                    self.arms[i] + i as u32 + 1
                } else {
                    self.legs
                        .iter()
                        .enumerate()
                        .filter(|(j, &b)| b as usize + j >= i)
                        .count() as u32
                }
            })
            .collect();
        Partition { parts }
    }
}

/// The almost-symmetric classes: `A` has legs = arms + 1, `B` has arms = legs + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    A,
    B,
}

impl Class {
    pub fn dual(self) -> Class {
        match self {
            Class::A => Class::B,
            Class::B => Class::A,
        }
    }
}

/// A half-integer `h = doubled / 2` with `doubled` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub fn from_doubled(doubled: i64) -> Result<Self> {
        if doubled.rem_euclid(2) == 1 {
            Ok(Self { doubled })
        } else {
            Err(Error::InvalidArgument(format!("{doubled}/2 is not a half-integer")))
        }
    }

    /// `n + 1/2`.
    pub fn from_int_plus_half(n: i64) -> Self {
        Self { doubled: 2 * n + 1 }
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        let d = 2.0 * x;
        if d.fract() != 0.0 || !d.is_finite() {
            return Err(Error::InvalidArgument(format!("{x} is not a half-integer")));
        }
        Self::from_doubled(d as i64)
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    /// The integer `h - 1/2`.
    pub fn floor(self) -> i64 {
        (self.doubled - 1) / 2
    }

    /// The integer `h + 1/2`, i.e. the power of `z` tracked by kernel generating series.
    pub fn shifted_up(self) -> i64 {
        (self.doubled + 1) / 2
    }

    pub fn value(self) -> f64 {
        self.doubled as f64 / 2.0
    }

    pub fn offset(self, n: i64) -> Self {
        Self {
            doubled: self.doubled + 2 * n,
        }
    }
}

impl TryFrom<f64> for HalfInt {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        HalfInt::from_f64(x)
    }
}

impl From<HalfInt> for f64 {
    fn from(h: HalfInt) -> f64 {
        h.value()
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.doubled)
    }
}

/// The leading particles of `S(λ)`; every half-integer below the last stored one is occupied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    pub points: Vec<HalfInt>,
}

impl PointConfig {
    /// Particles at positive positions minus holes at negative positions.
    ///
    /// Sites below `-(depth - 1/2)` are occupied by the unstored particles, so
    /// holes can only sit in the window `-1/2, …, -(depth - 1/2)`.
    pub fn charge(&self) -> i64 {
        let depth = self.points.len() as i64;
        let positive = self.points.iter().filter(|p| p.doubled > 0).count() as i64;
        let in_window = self
            .points
            .iter()
            .filter(|p| p.doubled < 0 && p.doubled > -2 * depth)
            .count() as i64;
        positive - (depth - in_window)
    }
}

/// Constraint applied while enumerating partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    None,
    MaxPart(u32),
    MaxLength(usize),
    Class(Class),
}

impl Constraint {
    pub fn admits(&self, p: &Partition) -> bool {
        match *self {
            Constraint::None => true,
            Constraint::MaxPart(m) => p.largest() <= m,
            Constraint::MaxLength(n) => p.len() <= n,
            Constraint::Class(c) => p.in_class(c),
        }
    }
}

/// Iterator over partitions by increasing weight; within one weight, in decreasing lexicographic order.
pub struct Partitions {
    weight: usize,
    max_weight: usize,
    constraint: Constraint,
    buffer: std::vec::IntoIter<Partition>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            if let Some(p) = self.buffer.next() {
                return Some(p);
            }
            if self.weight > self.max_weight {
                return None;
            }
            let mut out = Vec::new();
            let (max_part, max_len) = match self.constraint {
                Constraint::MaxPart(m) => (m as usize, usize::MAX),
                Constraint::MaxLength(n) => (usize::MAX, n),
                _ => (usize::MAX, usize::MAX),
            };
            partitions_of(self.weight, max_part, max_len, &mut Vec::new(), &mut out);
            if let Constraint::Class(c) = self.constraint {
                out.retain(|p| p.in_class(c));
            }
            self.weight += 1;
            self.buffer = out.into_iter();
        }
    }
}

fn partitions_of(
    n: usize,
    max_part: usize,
    max_len: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if n == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    if max_len == 0 {
        return;
    }
    for k in (1..=n.min(max_part)).rev() {
        // the remaining n - k must fit in max_len - 1 parts of size ≤ k
        if (n - k) > k.saturating_mul(max_len - 1) {
            break;
        }
        prefix.push(k as u32);
        partitions_of(n - k, k, max_len - 1, prefix, out);
        prefix.pop();
    }
}

/// All partitions with `|λ| ≤ max_weight` satisfying `constraint`, capped at [`DEFAULT_PARTITION_CAP`].
pub fn enumerate_partitions(max_weight: usize, constraint: Constraint) -> Result<Partitions> {
    enumerate_partitions_capped(max_weight, constraint, DEFAULT_PARTITION_CAP)
}

pub fn enumerate_partitions_capped(
    max_weight: usize,
    constraint: Constraint,
    cap: usize,
) -> Result<Partitions> {
    if max_weight > cap {
        return Err(Error::CapExceeded {
            requested: max_weight,
            cap,
        });
    }
    Ok(Partitions {
        weight: 0,
        max_weight,
        constraint,
        buffer: Vec::new().into_iter(),
    })
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub(crate) fn biguint_to_f64(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.iter_u64_digits().next().unwrap_or(0) as f64;
    }
    let shift = bits - 64;
    let top = (x >> shift).iter_u64_digits().next().unwrap_or(0) as f64;
    top * 2f64.powi(shift as i32)
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    /// Graded order: by weight, then decreasing lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}
