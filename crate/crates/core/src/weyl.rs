//! Admissible double-coset representatives `P \ GL_2p / V` for the
//! Eisenstein unfolding, with `P` the standard maximal parabolic of type
//! `(r, 2p - r)` and `V` block upper triangular with `2 x 2` blocks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation matrix in one-line notation: row `i` has its 1 in column
/// `sigma(i)`, all 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::MalformedPermutation(format!("{images:?}")));
            }
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// Column of the 1 in row `i`.
    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Self(inv)
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Self(self.0.iter().map(|&x| other.image(x)).collect())
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let s = &self.0;
        (0..s.len())
            .map(|i| (i + 1..s.len()).filter(|&j| s[i] > s[j]).count())
            .sum()
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        self.0
            .iter()
            .map(|&c| (1..=n).map(|j| u8::from(j == c)).collect())
            .collect()
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Self(cur.clone())];
        loop {
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Self(cur.clone()));
        }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let images = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::MalformedPermutation(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityContext {
    pub p: usize,
    pub r: usize,
}

impl AdmissibilityContext {
    pub fn new(p: usize, r: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::OutOfRange {
                what: "p",
                value: 0,
                lo: 1,
                hi: i64::MAX,
            });
        }
        if r < p || r >= 2 * p {
            return Err(Error::OutOfRange {
                what: "r",
                value: r as i64,
                lo: p as i64,
                hi: 2 * p as i64 - 1,
            });
        }
        Ok(Self { p, r })
    }

    pub fn n(&self) -> usize {
        2 * self.p
    }

    /// Coordinates `(a, b)` of `V`: strictly above the `2 x 2` block diagonal.
    pub fn v_coords(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                if a.div_ceil(2) < b.div_ceil(2) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Coordinates on which the character is `psi(x)`.
    pub fn psi_support(&self) -> Vec<(usize, usize)> {
        (1..self.p)
            .flat_map(|j| [(2 * j - 1, 2 * j + 1), (2 * j, 2 * j + 2)])
            .collect()
    }

    pub fn in_unipotent_radical(&self, i: usize, j: usize) -> bool {
        i <= self.r && self.r < j
    }

    fn check(&self, w: &Permutation, z: &[i64]) -> Result<()> {
        if w.size() != self.n() {
            return Err(Error::MalformedPermutation(format!(
                "{w} has size {}, expected {}",
                w.size(),
                self.n()
            )));
        }
        if !z.is_empty() && z.len() != self.p {
            return Err(Error::Domain(format!(
                "z needs {} entries, got {}",
                self.p,
                z.len()
            )));
        }
        Ok(())
    }
}

/// Linear part of the character: the sum of the support coordinates of a
/// matrix, reduced modulo `modulus` when given.
fn psi_linear(ctx: &AdmissibilityContext, m: &[Vec<i64>], modulus: Option<i64>) -> i64 {
    let s: i64 = ctx
        .psi_support()
        .iter()
        .map(|&(a, b)| m[a - 1][b - 1])
        .sum();
    modulus.map_or(s, |q| s.rem_euclid(q))
}

fn z_matrix(n: usize, z: &[i64], sign: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for (k, &x) in z.iter().enumerate() {
        m[2 * k][2 * k + 1] = sign * x;
    }
    m
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Admissibility of `gamma = w z(r_1, ..., r_p)`; an empty `z` means the
/// identity.
///
/// `gamma v gamma^-1` lies in `U(P)` exactly when `z v z^-1` lies in the
/// pattern group spanned by the `V` coordinates `(a, b)` with
/// `w^-1(a) <= r < w^-1(b)`, so `gamma` fails to be admissible iff the
/// character, pulled back through `z`, is nonzero on one of those
/// coordinates.
pub fn is_admissible_mod(
    ctx: &AdmissibilityContext,
    w: &Permutation,
    z: &[i64],
    modulus: Option<i64>,
) -> Result<bool> {
    ctx.check(w, z)?;
    let inv = w.inverse();
    let n = ctx.n();
    let trivial_z = z.iter().all(|&x| x == 0);
    let (zi, zz) = (z_matrix(n, z, -1), z_matrix(n, z, 1));
    for (a, b) in ctx.v_coords() {
        if !ctx.in_unipotent_radical(inv.image(a), inv.image(b)) {
            continue;
        }
        let value = if trivial_z {
            i64::from(ctx.psi_support().contains(&(a, b)))
        } else {
            let mut e = vec![vec![0; n]; n];
            e[a - 1][b - 1] = 1;
            psi_linear(ctx, &mat_mul(&mat_mul(&zi, &e), &zz), modulus)
        };
        if value != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_admissible(ctx: &AdmissibilityContext, w: &Permutation, z: &[i64]) -> Result<bool> {
    is_admissible_mod(ctx, w, z, None)
}

/// Label of the left coset `W_M w`: the columns hit by the last `2p - r`
/// rows.
pub fn coset_key(ctx: &AdmissibilityContext, w: &Permutation) -> Vec<usize> {
    let mut key: Vec<usize> = (ctx.r + 1..=ctx.n()).map(|i| w.image(i)).collect();
    key.sort_unstable();
    key
}

/// Minimal-length representatives, ties broken lexicographically, of the
/// admissible left cosets of `W_M = S_r x S_{2p-r}`.
pub fn admissible_set(ctx: &AdmissibilityContext) -> Result<Vec<Permutation>> {
    if ctx.p > 4 {
        return Err(Error::OutOfRange {
            what: "p",
            value: ctx.p as i64,
            lo: 1,
            hi: 4,
        });
    }
    let reps: BTreeMap<Vec<usize>, (usize, Permutation)> = Permutation::all(ctx.n())
        .into_par_iter()
        .filter_map(|w| match is_admissible(ctx, &w, &[]) {
            Ok(true) => Some((coset_key(ctx, &w), (w.length(), w))),
            _ => None,
        })
        .fold(BTreeMap::new, |mut acc, (k, v)| {
            merge_min(&mut acc, k, v);
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                merge_min(&mut a, k, v);
            }
            a
        });
    let mut out: Vec<(usize, Permutation)> = reps.into_values().collect();
    out.sort();
    Ok(out.into_iter().map(|(_, w)| w).collect())
}

fn merge_min(
    acc: &mut BTreeMap<Vec<usize>, (usize, Permutation)>,
    k: Vec<usize>,
    v: (usize, Permutation),
) {
    match acc.get(&k) {
        Some(cur) if *cur <= v => {}
        _ => {
            acc.insert(k, v);
        }
    }
}

/// The explicit representative `w_q`:
///
/// ```text
///     (      L'_q        )
///     (              I   )
///     ( I_q              )
///     (      L''_q       )
/// ```
///
/// with `L'_q`, `L''_q` of size `N x 2N`, `N = 2p - r - q`, having ones at
/// `(i, 2i - 1)` and `(i, 2i)`, and the middle identity of size
/// `2(r - p) + q`.
pub fn build_wq(p: usize, r: usize, q: usize) -> Result<Permutation> {
    let ctx = AdmissibilityContext::new(p, r)?;
    if q > 2 * p - r {
        return Err(Error::OutOfRange {
            what: "q",
            value: q as i64,
            lo: 0,
            hi: (2 * p - r) as i64,
        });
    }
    let big_n = 2 * p - r - q;
    let mut images = Vec::with_capacity(ctx.n());
    images.extend((1..=big_n).map(|i| q + 2 * i - 1));
    images.extend(q + 2 * big_n + 1..=2 * p);
    images.extend(1..=q);
    images.extend((1..=big_n).map(|i| q + 2 * i));
    Permutation::new(images)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylReport {
    pub p: usize,
    pub r: usize,
    pub admissible: Vec<Permutation>,
    pub wq: Vec<Permutation>,
    pub count_expected: usize,
    /// `admissible` and `wq` give the same cosets.
    pub matches: bool,
}

impl WeylReport {
    pub fn holds(&self) -> bool {
        self.matches && self.admissible.len() == self.count_expected
    }
}

pub fn check_context(p: usize, r: usize) -> Result<WeylReport> {
    let ctx = AdmissibilityContext::new(p, r)?;
    let admissible = admissible_set(&ctx)?;
    let wq = (0..=2 * p - r)
        .map(|q| build_wq(p, r, q))
        .collect::<Result<Vec<_>>>()?;
    let keys = |ws: &[Permutation]| {
        ws.iter()
            .map(|w| coset_key(&ctx, w))
            .collect::<BTreeSet<_>>()
    };
    let wq_admissible = wq
        .iter()
        .map(|w| is_admissible(&ctx, w, &[]))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|x| x);
    let matches = wq_admissible && keys(&admissible) == keys(&wq) && keys(&wq).len() == wq.len();
    Ok(WeylReport {
        p,
        r,
        count_expected: 2 * p - r + 1,
        admissible,
        wq,
        matches,
    })
}

/// Group-level test over `F_q`: enumerates every `v` in `V(F_q)` and looks
/// for `gamma v gamma^-1` in `U(P)` with `psi(v) != 1`. Feasible for
/// `p <= 2`.
pub fn is_admissible_finite_field(
    ctx: &AdmissibilityContext,
    w: &Permutation,
    z: &[i64],
    q: i64,
) -> Result<bool> {
    ctx.check(w, z)?;
    let n = ctx.n();
    let coords = ctx.v_coords();
    if q.checked_pow(coords.len() as u32)
        .is_none_or(|c| c > 1 << 20)
    {
        return Err(Error::Domain(format!("V(F_{q}) too large to enumerate")));
    }
    let wm: Vec<Vec<i64>> = w
        .matrix()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect();
    let wt: Vec<Vec<i64>> = w
        .inverse()
        .matrix()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect();
    let z = if z.is_empty() {
        vec![0; ctx.p]
    } else {
        z.to_vec()
    };
    let gamma = mat_mul(&wm, &z_matrix(n, &z, 1));
    let gamma_inv = mat_mul(&z_matrix(n, &z, -1), &wt);
    let mut x = vec![0i64; coords.len()];
    loop {
        let mut v = z_matrix(n, &vec![0; ctx.p], 1);
        for (&(a, b), &val) in coords.iter().zip(&x) {
            v[a - 1][b - 1] = val;
        }
        if psi_linear(ctx, &v, Some(q)) != 0 {
            let c = mat_mul(&mat_mul(&gamma, &v), &gamma_inv);
            let in_u = (0..n).all(|i| {
                (0..n).all(|j| {
                    let e = c[i][j].rem_euclid(q);
                    let id = i64::from(i == j);
                    e == id || ctx.in_unipotent_radical(i + 1, j + 1)
                })
            });
            if in_u {
                return Ok(false);
            }
        }
        let Some(k) = x.iter().position(|&d| d < q - 1) else {
            return Ok(true);
        };
        x[k] += 1;
        x[..k].iter_mut().for_each(|d| *d = 0);
    }
}
