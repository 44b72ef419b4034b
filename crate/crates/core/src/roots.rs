//! Integer-exact E6 and E7 root systems.
//!
//! Roots are coefficient vectors over the simple roots. The simple roots
//! are numbered as in Bourbaki: `1-3-4-5-6(-7)` is the long chain and `2`
//! hangs off `4`. A root written as a digit string such as `122321` lists
//! its coefficients in that order, so `122321` is the highest root of E6.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    E6,
    E7,
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::E6 => 6,
            RootType::E7 => 7,
        }
    }

    fn edges(self) -> &'static [(usize, usize)] {
        match self {
            RootType::E6 => &[(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
            RootType::E7 => &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootType::E6 => "E6",
            RootType::E7 => "E7",
        })
    }
}

/// A vector of simple-root coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    /// Parses the digit-string notation, e.g. `001100`; a leading `-`
    /// negates.
    pub fn parse_digits(s: &str) -> Result<Root> {
        let s = s.trim();
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest.trim_start_matches('(').trim_end_matches(')')),
            None => (1, s.trim_start_matches('(').trim_end_matches(')')),
        };
        let coeffs = body
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| sign * d as i32)
                    .ok_or_else(|| Error::Domain(format!("bad root digit {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Root(coeffs))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() || self.0.iter().all(|&c| c == 0) {
            for c in &self.0 {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            write!(f, "-({})", self.neg())
        }
    }
}

impl FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Root::parse_digits(s)
    }
}

/// A word in simple reflections. The word `w6 w5 w4` applies `w4` first.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        Self::default()
    }
}

impl FromStr for WeylWord {
    type Err = Error;

    /// `w6w5w4w3`, `6 5 4 3` and `6,5,4,3` all parse to the same word.
    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c == 'w' || c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Domain(format!("bad reflection index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(WeylWord)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for i in &self.0 {
            write!(f, "w{i}")?;
        }
        Ok(())
    }
}

/// Roots paired with unit coefficients, describing a character
/// `u -> psi(sum of coefficient * coordinate)` on a unipotent group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSupport {
    pub entries: Vec<(Root, i32)>,
}

impl CharacterSupport {
    pub fn from_digits(digits: &[&str]) -> Result<Self> {
        let entries = digits
            .iter()
            .map(|d| Ok((Root::parse_digits(d)?, 1)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { entries })
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: RootType,
    cartan: Vec<Vec<i32>>,
    positive: Vec<Root>,
    lookup: HashSet<Root>,
}

impl RootSystem {
    /// Builds the positive roots by repeatedly adding simple roots. In a
    /// simply-laced system `beta + alpha_i` is a root exactly when
    /// `(beta, alpha_i) = -1`.
    pub fn build(ty: RootType) -> Self {
        let n = ty.rank();
        let mut cartan = vec![vec![0; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in ty.edges() {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }
        let mut rs = RootSystem {
            ty,
            cartan,
            positive: Vec::new(),
            lookup: HashSet::new(),
        };
        let simple: Vec<Root> = (1..=n).map(|i| rs.simple_root(i)).collect();
        let mut layer = simple.clone();
        let mut all: Vec<Root> = simple.clone();
        let mut seen: HashSet<Root> = simple.iter().cloned().collect();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for alpha in &simple {
                    if beta != alpha && rs.pairing(beta, alpha) == -1 {
                        let sum = Root(beta.0.iter().zip(&alpha.0).map(|(a, b)| a + b).collect());
                        if seen.insert(sum.clone()) {
                            next.push(sum.clone());
                            all.push(sum);
                        }
                    }
                }
            }
            layer = next;
        }
        all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        rs.lookup = all
            .iter()
            .cloned()
            .chain(all.iter().map(Root::neg))
            .collect();
        rs.positive = all;
        rs
    }

    pub fn root_type(&self) -> RootType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn highest_root(&self) -> &Root {
        self.positive.last().expect("root system is non-empty")
    }

    /// The `i`-th simple root, 1-based.
    pub fn simple_root(&self, i: usize) -> Root {
        Root((1..=self.rank()).map(|j| i32::from(j == i)).collect())
    }

    pub fn is_root(&self, v: &Root) -> bool {
        self.lookup.contains(v)
    }

    pub fn is_positive_root(&self, v: &Root) -> bool {
        v.is_positive() && self.lookup.contains(v)
    }

    /// The symmetric bilinear form given by the Cartan matrix.
    pub fn pairing(&self, a: &Root, b: &Root) -> i32 {
        let mut total = 0;
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                total += ai * self.cartan[i][j] * bj;
            }
        }
        total
    }

    pub fn simple_reflection(&self, i: usize, v: &Root) -> Result<Root> {
        if i == 0 || i > self.rank() {
            return Err(Error::OutOfRange {
                what: "reflection index",
                value: i as i64,
                lo: 1,
                hi: self.rank() as i64,
            });
        }
        let alpha = self.simple_root(i);
        let c = self.pairing(v, &alpha);
        Ok(Root(
            v.0.iter().zip(&alpha.0).map(|(x, a)| x - c * a).collect(),
        ))
    }

    pub fn apply_weyl_word(&self, w: &WeylWord, root: &Root) -> Result<Root> {
        if root.0.len() != self.rank() || !self.is_root(root) {
            return Err(Error::NotARoot(root.0.clone()));
        }
        w.0.iter()
            .rev()
            .try_fold(root.clone(), |acc, &i| self.simple_reflection(i, &acc))
    }

    /// Positive roots lying in the rational span of `generators`.
    pub fn levi_positive_roots(&self, generators: &[Root]) -> Vec<Root> {
        let rank = span_rank(generators);
        self.positive
            .iter()
            .filter(|r| {
                let mut extended = generators.to_vec();
                extended.push((*r).clone());
                span_rank(&extended) == rank
            })
            .cloned()
            .collect()
    }

    /// Number of positive roots outside the root subsystem spanned by the
    /// Levi generators.
    pub fn unipotent_radical_dim(&self, levi_generators: &[Root]) -> usize {
        self.positive.len() - self.levi_positive_roots(levi_generators).len()
    }

    /// Same as [`unipotent_radical_dim`](Self::unipotent_radical_dim) for a
    /// Levi generated by simple roots (1-based indices).
    pub fn unipotent_radical_dim_simple(&self, levi_simple: &[usize]) -> usize {
        let gens: Vec<Root> = levi_simple.iter().map(|&i| self.simple_root(i)).collect();
        self.unipotent_radical_dim(&gens)
    }

    pub fn verify_character_support(&self, support: &CharacterSupport) -> bool {
        support
            .entries
            .iter()
            .all(|(r, _)| r.0.len() == self.rank() && self.is_positive_root(r))
    }
}

/// Rank of a set of integer vectors, by fraction-free elimination.
fn span_rank(vectors: &[Root]) -> usize {
    let mut rows: Vec<Vec<i64>> = vectors
        .iter()
        .map(|r| r.0.iter().map(|&x| x as i64).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&p) {
                    *x = *x * p[col] - f * y;
                }
                let g = row.iter().fold(0i64, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    row.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
