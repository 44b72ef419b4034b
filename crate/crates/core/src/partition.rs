//! Integer partitions as labels of classical nilpotent orbits.
//!
//! A [`Partition`] always holds strictly positive parts in weakly decreasing
//! order. Zero parts are dropped when a partition is built, so a family such
//! as `(p+2, p+1, p-3)` evaluated at `p = 3` is simply `(5,4)`.
//!
//! Very even orthogonal partitions (all parts even) label two orbits of
//! `SO_{2n}`. Both have the same dimension, and nothing here distinguishes
//! them, so they share one label.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from arbitrary non-negative entries: zeros are
    /// dropped and the rest sorted descending.
    pub fn new(raw: &[i64]) -> Result<Self> {
        if let Some(&bad) = raw.iter().find(|&&x| x < 0) {
            return Err(Error::NegativePart(bad));
        }
        Ok(Self::from_parts(raw.iter().map(|&x| x as u32)))
    }

    pub fn from_parts(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&x| x > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-part partition `(n)`, the regular orbit of `GL_n`.
    pub fn regular(n: u32) -> Self {
        Self::from_parts([n])
    }

    /// `(k^m)`: `m` parts equal to `k`.
    pub fn rectangle(k: u32, m: u32) -> Self {
        Self::from_parts(std::iter::repeat_n(k, m as usize))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), with zero beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&x| x == value).count()
    }

    /// Number of odd parts, counted with multiplicity.
    pub fn odd_parts(&self) -> u32 {
        self.parts.iter().filter(|&&x| x % 2 == 1).count() as u32
    }

    /// The conjugate partition: `s_i = #{j : p_j >= i}`.
    pub fn transpose(&self) -> Self {
        let first = self.part(0);
        let parts = (1..=first)
            .map(|i| self.parts.iter().take_while(|&&x| x >= i).count() as u32)
            .collect();
        Self { parts }
    }

    /// Sum of the squares of the conjugate parts. Equal to
    /// `sum_i (2i - 1) p_i`, which avoids building the transpose.
    pub fn transpose_square_sum(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &x)| (2 * i as u64 + 1) * x as u64)
            .sum()
    }

    /// Dominance order: every prefix sum of `self` is at least the matching
    /// prefix sum of `other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn strictly_dominates(&self, other: &Partition) -> Result<bool> {
        Ok(self != other && self.dominates(other)?)
    }

    /// Dominance as a partial order; `None` for incomparable partitions.
    pub fn dominance_cmp(&self, other: &Partition) -> Result<Option<Ordering>> {
        let ge = self.dominates(other)?;
        let le = other.dominates(self)?;
        Ok(match (ge, le) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        })
    }

    /// Componentwise sum `(k_1+m_1, k_2+m_2, ...)` after zero-padding.
    pub fn add(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Self::from_parts((0..n).map(|i| self.part(i) + other.part(i)))
    }

    pub fn double(&self) -> Partition {
        Self::from_parts(self.parts.iter().map(|&x| 2 * x))
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(raw: Vec<i64>) -> Result<Self> {
        Partition::new(&raw)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `4,2`, `(4,2)` or `4 2`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let raw = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Domain(format!("bad partition entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(&raw)
    }
}

/// Classical group types whose nilpotent orbits are labelled by partitions.
/// The similitude groups share the orbit data of `Sp` and `SO`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassicalType {
    GL,
    GSp,
    GSO,
}

impl ClassicalType {
    pub fn name(self) -> &'static str {
        match self {
            ClassicalType::GL => "GL",
            ClassicalType::GSp => "GSp",
            ClassicalType::GSO => "GSO",
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassicalType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(ClassicalType::GL),
            "gsp" | "sp" => Ok(ClassicalType::GSp),
            "gso" | "so" => Ok(ClassicalType::GSO),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// A classical group together with the size of its natural representation:
/// `GL_n` has partitions of `n`, `GSp_{2N}` of `2N`, `GSO_M` of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassicalFamily {
    pub ty: ClassicalType,
    pub size: u32,
}

impl ClassicalFamily {
    pub fn new(ty: ClassicalType, size: u32) -> Result<Self> {
        if ty == ClassicalType::GSp && size % 2 == 1 {
            return Err(Error::Domain(format!("GSp_{size} has odd rank datum")));
        }
        Ok(Self { ty, size })
    }

    pub fn gl(n: u32) -> Self {
        Self {
            ty: ClassicalType::GL,
            size: n,
        }
    }

    pub fn gsp(size: u32) -> Self {
        Self::new(ClassicalType::GSp, size).expect("GSp size must be even")
    }

    pub fn gso(size: u32) -> Self {
        Self {
            ty: ClassicalType::GSO,
            size,
        }
    }

    /// Symplectic partitions need even multiplicity for odd parts,
    /// orthogonal ones for even parts. Size must match as well.
    pub fn is_valid(&self, p: &Partition) -> bool {
        if p.size() != self.size {
            return false;
        }
        let bad_parity = match self.ty {
            ClassicalType::GL => return true,
            ClassicalType::GSp => 1,
            ClassicalType::GSO => 0,
        };
        let mut i = 0;
        let parts = p.parts();
        while i < parts.len() {
            let v = parts[i];
            let run = parts[i..].iter().take_while(|&&x| x == v).count();
            if v % 2 == bad_parity && run % 2 == 1 {
                return false;
            }
            i += run;
        }
        true
    }
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.ty, self.size)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut |_, _| true, &mut out);
    out
}

/// Partitions of `base.size()` whose prefix sums never drop below those
/// of `base`. Includes `base` itself.
fn dominating_all(base: &Partition) -> Vec<Partition> {
    let n = base.size();
    let prefix: Vec<u32> = base
        .parts()
        .iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut ok = |idx: usize, sum: u32| prefix.get(idx).is_none_or(|&b| sum >= b);
    fill(n, n, &mut cur, &mut ok, &mut out);
    out
}

fn fill(
    remaining: u32,
    max_part: u32,
    cur: &mut Vec<u32>,
    prefix_ok: &mut dyn FnMut(usize, u32) -> bool,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    let used: u32 = cur.iter().sum();
    for part in (1..=max_part.min(remaining)).rev() {
        if !prefix_ok(cur.len(), used + part) {
            // smaller parts only make the prefix sum smaller
            break;
        }
        cur.push(part);
        fill(remaining - part, part, cur, prefix_ok, out);
        cur.pop();
    }
}

/// Family-valid partitions strictly dominating `base`, sorted by orbit
/// dimension and then lexicographically.
pub fn partitions_dominating(base: &Partition, family: ClassicalFamily) -> Result<Vec<Partition>> {
    if !family.is_valid(base) {
        return Err(Error::Domain(format!(
            "{base} is not a valid partition for {family}"
        )));
    }
    let mut keyed = dominating_all(base)
        .into_iter()
        .filter(|p| p != base && family.is_valid(p))
        .map(|p| Ok((family.orbit_dim(&p)?, p)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, p)| p).collect())
}
