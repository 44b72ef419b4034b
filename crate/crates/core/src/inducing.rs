//! Induced orbits, Eisenstein inducing data and the odd-Eisenstein labeling.
//!
//! Targets here are two-row partitions. Adding partitions is monotone in
//! the number of rows, so every summand of a two-row target has at most two
//! rows and the brute force only ranges over those.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit::{half_dim, ExceptionalGroup, ExceptionalTable, OrbitLabel};
use crate::partition::{partitions, ClassicalFamily, ClassicalType, Partition};
use crate::roots::{RootSystem, RootType};
use crate::solver::{Role, SolutionRow, VanishingStatus};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Induced {
    pub partition: Partition,
    pub group: ClassicalFamily,
    /// False when the sum is not a valid partition for `group` and would
    /// need a collapse.
    pub valid: bool,
}

/// Orbit of an Eisenstein series induced from `GL_a x L`: `tau1 + tau2` for
/// `GL`, `2 tau1 + tau2` for `GSp` and `GSO`.
pub fn induce(ty: ClassicalType, tau1: &Partition, tau2: &Partition) -> Induced {
    let (partition, size) = match ty {
        ClassicalType::GL => (tau1.add(tau2), tau1.size() + tau2.size()),
        _ => (tau1.double().add(tau2), 2 * tau1.size() + tau2.size()),
    };
    let group = ClassicalFamily { ty, size };
    Induced {
        valid: group.is_valid(&partition),
        partition,
        group,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InducingDatum {
    pub group: ClassicalFamily,
    /// Size of the `GL` block carrying `tau1`.
    pub gl_block: u32,
    /// The second Levi factor: `GL` of this size, or the classical group of
    /// this size for `GSp`/`GSO`.
    pub rest_block: u32,
    pub a: u32,
    pub i: u32,
    pub tau1: Partition,
    pub tau2: Partition,
}

impl InducingDatum {
    /// `(gl_block, tau1, tau2)`, which determines the datum.
    pub fn key(&self) -> (u32, &Partition, &Partition) {
        (self.gl_block, &self.tau1, &self.tau2)
    }

    pub fn levi(&self) -> String {
        let rest = match self.group.ty {
            ClassicalType::GL => format!("GL_{}", self.rest_block),
            ty => format!("{ty}_{}", self.rest_block),
        };
        format!("GL_{} x {rest}", self.gl_block)
    }

    pub fn descriptor(&self) -> EisensteinDescriptor {
        match self.group.ty {
            ClassicalType::GL => EisensteinDescriptor::Classical {
                ty: ClassicalType::GL,
                size: self.group.size,
                blocks: vec![self.gl_block, self.rest_block],
                tail: 0,
            },
            ty => EisensteinDescriptor::Classical {
                ty,
                size: self.group.size,
                blocks: vec![self.gl_block],
                tail: self.rest_block,
            },
        }
    }
}

fn two_row(n: u32) -> impl Iterator<Item = Partition> {
    (n.div_ceil(2)..=n).map(move |x| Partition::from_parts([x, n - x]))
}

fn pad2(p: &Partition) -> (i64, i64) {
    (p.part(0) as i64, p.part(1) as i64)
}

fn check_target(group: ClassicalFamily, target: &Partition) -> Result<()> {
    if target.len() > 2 {
        return Err(Error::Domain(format!(
            "target {target} has more than two parts"
        )));
    }
    if !group.is_valid(target) {
        return Err(Error::Domain(format!(
            "{target} is not an orbit of {group}"
        )));
    }
    if target.len() == 2 && target.part(0) == target.part(1) {
        return Err(Error::Domain(format!(
            "{target} does not lie strictly above the base of {group}"
        )));
    }
    Ok(())
}

/// Every maximal-parabolic inducing datum with at most two-row `tau_i`
/// whose induced orbit is `target`, found by exhaustive search.
pub fn classify_inducing_data(
    group: ClassicalFamily,
    target: &Partition,
) -> Result<Vec<InducingDatum>> {
    check_target(group, target)?;
    let n = group.size;
    let (x, y) = pad2(target);
    let blocks: Vec<(u32, u32)> = match group.ty {
        ClassicalType::GL => (1..n).map(|b| (b, n - b)).collect(),
        _ => (1..=n / 2).map(|b| (b, n - 2 * b)).collect(),
    };
    let mut out: Vec<InducingDatum> = blocks
        .into_par_iter()
        .flat_map_iter(|(b, rest)| {
            let tail = ClassicalFamily {
                ty: group.ty,
                size: rest,
            };
            let mut found = Vec::new();
            for tau1 in two_row(b) {
                for tau2 in two_row(rest) {
                    if !tail.is_valid(&tau2) {
                        continue;
                    }
                    if induce(group.ty, &tau1, &tau2).partition != *target {
                        continue;
                    }
                    let (a1, b1) = pad2(&tau1);
                    let i = match group.ty {
                        ClassicalType::GL => (x - y) - (a1 - b1),
                        _ => a1 - b1,
                    };
                    found.push(InducingDatum {
                        group,
                        gl_block: b,
                        rest_block: rest,
                        a: a1 as u32,
                        i: i as u32,
                        tau1: tau1.clone(),
                        tau2,
                    });
                }
            }
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The six families of the closed-form classification, for the group of
/// rank datum `p`: `GL_2p`, `GSp_{4p+2}` or `GSO_4p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lemma2Case {
    GlNear,
    GlFar,
    GspNear,
    GspFar,
    GsoNear,
    GsoFar,
}

impl Lemma2Case {
    pub const ALL: [Lemma2Case; 6] = [
        Lemma2Case::GlNear,
        Lemma2Case::GlFar,
        Lemma2Case::GspNear,
        Lemma2Case::GspFar,
        Lemma2Case::GsoNear,
        Lemma2Case::GsoFar,
    ];

    pub fn number(self) -> u8 {
        Self::ALL.iter().position(|&c| c == self).unwrap() as u8 + 1
    }

    pub fn from_number(n: u8) -> Result<Self> {
        Self::ALL
            .get((n as usize).wrapping_sub(1))
            .copied()
            .ok_or(Error::OutOfRange {
                what: "case",
                value: n as i64,
                lo: 1,
                hi: 6,
            })
    }

    pub fn group(self, p: u32) -> ClassicalFamily {
        match self {
            Lemma2Case::GlNear | Lemma2Case::GlFar => ClassicalFamily::gl(2 * p),
            Lemma2Case::GspNear | Lemma2Case::GspFar => ClassicalFamily::gsp(4 * p + 2),
            Lemma2Case::GsoNear | Lemma2Case::GsoFar => ClassicalFamily::gso(4 * p),
        }
    }

    /// Target orbit, or `None` when it has a negative part.
    pub fn target(self, p: u32) -> Option<Partition> {
        let p = p as i64;
        let (x, y) = match self {
            Lemma2Case::GlNear => (p + 1, p - 1),
            Lemma2Case::GlFar => (p + 2, p - 2),
            Lemma2Case::GspNear => (2 * p + 2, 2 * p),
            Lemma2Case::GspFar => (2 * p + 4, 2 * p - 2),
            Lemma2Case::GsoNear => (2 * p + 1, 2 * p - 1),
            Lemma2Case::GsoFar => (2 * p + 3, 2 * p - 3),
        };
        Partition::new(&[x, y]).ok()
    }

    fn max_i(self) -> i64 {
        match self {
            Lemma2Case::GlNear => 2,
            Lemma2Case::GlFar => 4,
            Lemma2Case::GspNear | Lemma2Case::GsoNear => 1,
            Lemma2Case::GspFar | Lemma2Case::GsoFar => 3,
        }
    }

    /// `(gl_block, rest_block, tau1, tau2)` as raw rows for given `a`, `i`.
    fn formula(self, p: i64, a: i64, i: i64) -> (i64, i64, [i64; 2], [i64; 2]) {
        match self {
            Lemma2Case::GlNear => (
                2 * (a - 1) + i,
                2 * (p - a + 1) - i,
                [a, a - 2 + i],
                [p - a + 1, p - a + 1 - i],
            ),
            Lemma2Case::GlFar => (
                2 * (a - 2) + i,
                2 * (p - a + 2) - i,
                [a, a - 4 + i],
                [p - a + 2, p - a + 2 - i],
            ),
            Lemma2Case::GspNear => (
                2 * a - i,
                2 * (2 * p - 2 * a + i + 1),
                [a, a - i],
                [2 * p - 2 * a + 2, 2 * p - 2 * a + 2 * i],
            ),
            Lemma2Case::GspFar => (
                2 * a - i,
                2 * (2 * p - 2 * a + i + 1),
                [a, a - i],
                [2 * p - 2 * a + 4, 2 * p - 2 * a + 2 * i - 2],
            ),
            Lemma2Case::GsoNear => (
                2 * a - i,
                2 * (2 * p - 2 * a + i),
                [a, a - i],
                [2 * p - 2 * a + 1, 2 * p - 2 * a + 2 * i - 1],
            ),
            Lemma2Case::GsoFar => (
                2 * a - i,
                2 * (2 * p - 2 * a + i),
                [a, a - i],
                [2 * p - 2 * a + 3, 2 * p - 2 * a + 2 * i - 3],
            ),
        }
    }
}

fn rows(r: [i64; 2]) -> Option<Partition> {
    (r[1] >= 0 && r[0] >= r[1]).then(|| Partition::from_parts([r[0] as u32, r[1] as u32]))
}

/// Instantiates one closed-form family at `p`: all `(a, i)` in range whose
/// orbits are genuine partitions and whose `GL` blocks are nonempty.
pub fn lemma2_closed_form(case: Lemma2Case, p: u32) -> Result<Vec<InducingDatum>> {
    let group = case.group(p);
    let Some(target) = case.target(p) else {
        return Err(Error::Domain(format!(
            "case {} has no target at p = {p}",
            case.number()
        )));
    };
    check_target(group, &target)?;
    let mut out = Vec::new();
    for a in 0..=(2 * p as i64 + 4) {
        for i in 0..=case.max_i() {
            let (b, rest, t1, t2) = case.formula(p as i64, a, i);
            let min_rest = if group.ty == ClassicalType::GL { 1 } else { 0 };
            if b < 1 || rest < min_rest {
                continue;
            }
            let (Some(tau1), Some(tau2)) = (rows(t1), rows(t2)) else {
                continue;
            };
            if tau1.size() as i64 != b || tau2.size() as i64 != rest {
                continue;
            }
            out.push(InducingDatum {
                group,
                gl_block: b as u32,
                rest_block: rest as u32,
                a: a as u32,
                i: i as u32,
                tau1,
                tau2,
            });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EisensteinDescriptor {
    /// Induction by stages through `GL` blocks. For `GL_n` the blocks sum
    /// to `n` and `tail` is 0; otherwise `2 * sum(blocks) + tail = size`
    /// with the tail a smaller group of the same type.
    Classical {
        ty: ClassicalType,
        size: u32,
        blocks: Vec<u32>,
        tail: u32,
    },
    /// Levi of `GE7` given by its simple roots.
    Ge7 { levi: Vec<usize> },
}

impl EisensteinDescriptor {
    pub fn validate(&self) -> Result<()> {
        match self {
            EisensteinDescriptor::Classical {
                ty,
                size,
                blocks,
                tail,
            } => {
                if blocks.contains(&0) {
                    return Err(Error::Domain("empty Levi block".into()));
                }
                let total: u32 = match ty {
                    ClassicalType::GL => blocks.iter().sum::<u32>() + tail,
                    _ => 2 * blocks.iter().sum::<u32>() + tail,
                };
                if total != *size || (*ty == ClassicalType::GL && *tail != 0) {
                    return Err(Error::Domain(format!(
                        "Levi blocks {blocks:?} + {tail} do not fill {ty}_{size}"
                    )));
                }
                if *ty == ClassicalType::GL && blocks.len() < 2 {
                    return Err(Error::Domain("a GL Levi needs at least two blocks".into()));
                }
                if *ty != ClassicalType::GL && blocks.is_empty() {
                    return Err(Error::Domain("no GL block".into()));
                }
                Ok(())
            }
            EisensteinDescriptor::Ge7 { levi } => {
                let set: BTreeSet<usize> = levi.iter().copied().collect();
                if set.len() != levi.len()
                    || levi.iter().any(|&r| !(1..=7).contains(&r))
                    || set.len() == 7
                {
                    return Err(Error::Domain(format!(
                        "{levi:?} is not a proper Levi of E7"
                    )));
                }
                Ok(())
            }
        }
    }

    /// An induction stage with an odd `GL` block, or a `GE7` Levi missing
    /// one of the roots 2, 5, 7.
    pub fn is_odd(&self) -> bool {
        match self {
            EisensteinDescriptor::Classical { blocks, .. } => blocks.iter().any(|b| b % 2 == 1),
            EisensteinDescriptor::Ge7 { levi } => ![2, 5, 7].iter().all(|r| levi.contains(r)),
        }
    }

    pub fn unipotent_dim(&self) -> u64 {
        match self {
            EisensteinDescriptor::Classical {
                ty,
                size,
                blocks,
                tail,
            } => {
                let levi_gl: u64 = blocks.iter().map(|&b| (b as u64).pow(2)).sum();
                let dim = |n: u32| -> u64 {
                    let n = n as u64;
                    match ty {
                        ClassicalType::GL => n * n,
                        ClassicalType::GSp => n * (n + 1) / 2,
                        ClassicalType::GSO => n * n.saturating_sub(1) / 2,
                    }
                };
                let levi = match ty {
                    ClassicalType::GL => levi_gl,
                    _ => levi_gl + dim(*tail),
                };
                (dim(*size) - levi) / 2
            }
            EisensteinDescriptor::Ge7 { levi } => e7().unipotent_radical_dim_simple(levi) as u64,
        }
    }
}

fn e7() -> &'static RootSystem {
    static E7: OnceLock<RootSystem> = OnceLock::new();
    E7.get_or_init(|| RootSystem::build(RootType::E7))
}

/// Connected components of a simple-root subset of `E7`, as
/// `(type letter, rank)`.
fn e7_components(levi: &[usize]) -> Vec<(char, usize)> {
    const EDGES: [(usize, usize); 6] = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)];
    let set: BTreeSet<usize> = levi.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in &set {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for &(x, y) in &EDGES {
                let w = if x == v {
                    y
                } else if y == v {
                    x
                } else {
                    continue;
                };
                if set.contains(&w) && seen.insert(w) {
                    comp.push(w);
                }
            }
            k += 1;
        }
        let branched = [2, 3, 4, 5].iter().all(|r| comp.contains(r));
        let letter = match (branched, comp.contains(&1) && comp.contains(&6)) {
            (false, _) => 'A',
            (true, false) => 'D',
            (true, true) => 'E',
        };
        out.push((letter, comp.len()));
    }
    out
}

/// Half-dimensions of orbits of a simple factor. `E` factors only know the
/// orbits in the exceptional fixture.
fn factor_half_dims(letter: char, rank: usize) -> BTreeSet<u64> {
    let r = rank as u32;
    match letter {
        'A' => partitions(r + 1)
            .iter()
            .map(|p| ClassicalFamily::gl(r + 1).orbit_dim(p).unwrap() / 2)
            .collect(),
        'D' => {
            let g = ClassicalFamily::gso(2 * r);
            partitions(2 * r)
                .iter()
                .filter(|p| g.is_valid(p))
                .map(|p| g.orbit_dim(p).unwrap() / 2)
                .collect()
        }
        _ => ExceptionalTable::global()
            .orbits(ExceptionalGroup::E6)
            .map(|o| o.dim / 2)
            .collect(),
    }
}

/// Half-dimensions available to automorphic representations of the Levi.
pub fn ge7_levi_half_dims(levi: &[usize]) -> BTreeSet<u64> {
    let mut acc = BTreeSet::from([0u64]);
    for (letter, rank) in e7_components(levi) {
        let dims = factor_half_dims(letter, rank);
        acc = acc
            .iter()
            .flat_map(|a| dims.iter().map(move |d| a + d))
            .collect();
    }
    acc
}

/// `half_dim(expected) == sum(tau_half_dims) + dim U(P)`.
pub fn lemex_check(
    desc: &EisensteinDescriptor,
    tau_half_dims: &[u64],
    expected: &OrbitLabel,
) -> Result<bool> {
    desc.validate()?;
    Ok(half_dim(expected)? == tau_half_dims.iter().sum::<u64>() + desc.unipotent_dim())
}

/// The dimension identity for a classical datum, with every term computed
/// from orbit dimensions.
pub fn lemex_check_datum(d: &InducingDatum, target: &Partition) -> Result<bool> {
    let tau1 = OrbitLabel::Classical {
        family: ClassicalFamily::gl(d.gl_block),
        partition: d.tau1.clone(),
    };
    let tau2 = OrbitLabel::Classical {
        family: ClassicalFamily {
            ty: d.group.ty,
            size: d.rest_block,
        },
        partition: d.tau2.clone(),
    };
    let expected = OrbitLabel::Classical {
        family: d.group,
        partition: target.clone(),
    };
    let h2 = if d.rest_block == 0 {
        0
    } else {
        half_dim(&tau2)?
    };
    lemex_check(&d.descriptor(), &[half_dim(&tau1)?, h2], &expected)
}

fn realizable(ty: ClassicalType, target: (i64, i64), blocks: &[u32], tail: u32) -> bool {
    let Some((&b, rest)) = blocks.split_first() else {
        let need = target;
        if need.1 < 0 || need.0 < need.1 {
            return false;
        }
        let tau = Partition::from_parts([need.0 as u32, need.1 as u32]);
        return ClassicalFamily { ty, size: tail }.is_valid(&tau);
    };
    let scale = if ty == ClassicalType::GL { 1 } else { 2 };
    two_row(b).any(|tau| {
        let (x, y) = pad2(&tau);
        let next = (target.0 - scale * x, target.1 - scale * y);
        next.0 >= 0 && next.1 >= 0 && realizable(ty, next, rest, tail)
    })
}

/// Whether the descriptor can produce `orbit` for some choice of inducing
/// representations.
pub fn is_consistent(desc: &EisensteinDescriptor, orbit: &OrbitLabel) -> Result<bool> {
    desc.validate()?;
    match (desc, orbit) {
        (
            EisensteinDescriptor::Classical {
                ty,
                size,
                blocks,
                tail,
            },
            OrbitLabel::Classical { family, partition },
        ) => {
            if family.ty != *ty || family.size != *size || partition.len() > 2 {
                return Ok(false);
            }
            let target = pad2(partition);
            let (gl_blocks, tail) = match ty {
                ClassicalType::GL => (&blocks[..blocks.len() - 1], *blocks.last().unwrap()),
                _ => (&blocks[..], *tail),
            };
            Ok(realizable(*ty, target, gl_blocks, tail))
        }
        (
            EisensteinDescriptor::Ge7 { levi },
            OrbitLabel::Exceptional {
                group: ExceptionalGroup::E7,
                ..
            },
        ) => {
            let u = desc.unipotent_dim();
            let h = half_dim(orbit)?;
            Ok(h >= u && ge7_levi_half_dims(levi).contains(&(h - u)))
        }
        _ => Ok(false),
    }
}

/// Maximal-parabolic descriptors consistent with a slot orbit.
pub fn descriptor_options(orbit: &OrbitLabel) -> Result<Vec<EisensteinDescriptor>> {
    let mut out: Vec<EisensteinDescriptor> = Vec::new();
    match orbit {
        OrbitLabel::Classical { family, partition } => {
            if partition.len() > 2
                || (partition.len() == 2 && partition.part(0) == partition.part(1))
            {
                return Ok(out);
            }
            for d in classify_inducing_data(*family, partition)? {
                let desc = d.descriptor();
                if !out.contains(&desc) {
                    out.push(desc);
                }
            }
        }
        OrbitLabel::Exceptional {
            group: ExceptionalGroup::E7,
            ..
        } => {
            for drop in 1..=7 {
                let desc = EisensteinDescriptor::Ge7 {
                    levi: (1..=7).filter(|&r| r != drop).collect(),
                };
                if is_consistent(&desc, orbit)? {
                    out.push(desc);
                }
            }
        }
        OrbitLabel::Exceptional { .. } => {}
    }
    Ok(out)
}

/// Sets the vanishing status of an `m = 2` row: nonzero and unipotent iff
/// some slot admits an odd descriptor. `descriptors[j]` lists the options
/// for slot `j`; cuspidal slots must have none.
pub fn label_row(
    row: &SolutionRow,
    descriptors: &[Vec<EisensteinDescriptor>],
) -> Result<SolutionRow> {
    let mut out = row.clone();
    if row.m != 2 {
        out.status = VanishingStatus::Unknown;
        return Ok(out);
    }
    if descriptors.len() > row.slots.len() {
        return Err(Error::Domain(format!(
            "{} descriptor lists for {} slots",
            descriptors.len(),
            row.slots.len()
        )));
    }
    let mut odd = false;
    for (slot, options) in row.slots.iter().zip(descriptors) {
        if slot.role == Role::Cuspidal && !options.is_empty() {
            return Err(Error::Domain(format!(
                "cuspidal slot {} has Eisenstein descriptors",
                slot.orbit
            )));
        }
        for d in options {
            if !is_consistent(d, &slot.orbit)? {
                return Err(Error::Domain(format!(
                    "descriptor {d:?} cannot produce {}",
                    slot.orbit
                )));
            }
            odd |= d.is_odd();
        }
    }
    out.status = if odd {
        VanishingStatus::NonzeroUnipotent
    } else {
        VanishingStatus::NotUnipotent
    };
    Ok(out)
}

/// Labels a row with every maximal-parabolic descriptor of its
/// non-cuspidal slots.
pub fn label_row_default(row: &SolutionRow) -> Result<SolutionRow> {
    if row.m != 2 {
        return label_row(row, &[]);
    }
    let descriptors = row
        .slots
        .iter()
        .map(|s| match s.role {
            Role::Cuspidal => Ok(Vec::new()),
            _ => descriptor_options(&s.orbit),
        })
        .collect::<Result<Vec<_>>>()?;
    label_row(row, &descriptors)
}
