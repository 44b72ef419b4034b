//! The dimension-equation enumerator.
//!
//! A global integral on `GL_m` is a list of slots. The first slot holds a
//! cuspidal representation, the last an Eisenstein series, and any slots in
//! between hold automorphic representations. Each slot contributes
//! `half_dim(orbit) - dim U(O)` and the contributions must add up to
//! `m^2 - 1`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{CoefficientConfig, CuspidalRule, FamilyKind, FamilyRegistry};
use crate::error::{Error, Result};
use crate::orbit::OrbitLabel;
use crate::partition::{ClassicalFamily, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Cuspidal,
    Automorphic,
    Eisenstein,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub role: Role,
    pub config: CoefficientConfig,
    pub orbit: OrbitLabel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VanishingStatus {
    #[default]
    Unknown,
    NonzeroUnipotent,
    NotUnipotent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowFlag {
    /// A cuspidal `GE6` slot sits on `D5` or `D5(a1)`.
    Lemma1Excluded,
    /// `m >= 4` with a cuspidal `GL_m` slot; no completeness claim.
    OpenRegime,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRow {
    pub m: u32,
    pub slots: Vec<Slot>,
    pub contributions: Vec<u64>,
    pub total: u64,
    pub status: VanishingStatus,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<RowFlag>,
    pub vanishing_unknown: bool,
}

impl SolutionRow {
    pub fn l(&self) -> usize {
        self.slots.len()
    }

    pub fn has_flag(&self, flag: RowFlag) -> bool {
        self.flags.contains(&flag)
    }

    /// `(family, param, orbit)` per slot; two rows with the same key
    /// describe the same integral.
    pub fn key(&self) -> Vec<(FamilyKind, Option<u32>, OrbitLabel)> {
        self.slots
            .iter()
            .map(|s| (s.config.family, s.config.param, s.orbit.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub params: RangeInclusive<u32>,
    /// `None` leaves the length bounded only by the equation itself.
    pub l_max: Option<usize>,
    pub allow_open_regime: bool,
    pub disable_lemma1: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            params: 1..=6,
            l_max: None,
            allow_open_regime: false,
            disable_lemma1: false,
        }
    }
}

impl ClassifyOptions {
    pub fn with_params(params: RangeInclusive<u32>) -> Self {
        Self {
            params,
            ..Self::default()
        }
    }
}

pub fn equation_total(m: u32) -> u64 {
    let m = m as u64;
    m * m - 1
}

/// Orbits above the base of `config` contributing exactly `c`.
pub fn admissible_orbits(config: &CoefficientConfig, c: u64) -> Result<Vec<OrbitLabel>> {
    let family = FamilyRegistry::global().by_kind(config.family)?;
    Ok(family
        .orbits_above(config)?
        .into_iter()
        .filter(|(_, x)| *x == c)
        .map(|(o, _)| o)
        .collect())
}

#[derive(Debug, Clone)]
struct Candidate {
    order: usize,
    config: CoefficientConfig,
    orbit: OrbitLabel,
    contribution: u64,
    lemma1: bool,
}

fn configs(m: u32, params: &RangeInclusive<u32>) -> Result<Vec<CoefficientConfig>> {
    let mut out = Vec::new();
    for family in FamilyRegistry::global().families_for(m)? {
        if family.parametric() {
            for p in params.clone() {
                out.push(family.instantiate(Some(p), m)?);
            }
        } else {
            out.push(family.instantiate(None, m)?);
        }
    }
    Ok(out)
}

fn candidates_for(configs: &[CoefficientConfig], budget: u64) -> Result<Vec<Candidate>> {
    let registry = FamilyRegistry::global();
    let mut out = Vec::new();
    for config in configs {
        let family = registry.by_kind(config.family)?;
        for (orbit, c) in family.orbits_above(config)? {
            if c <= budget {
                out.push(Candidate {
                    order: out.len(),
                    config: config.clone(),
                    orbit,
                    contribution: c,
                    lemma1: false,
                });
            }
        }
    }
    Ok(out)
}

fn cuspidal_filter(all: &[Candidate], disable_lemma1: bool) -> Result<Vec<Candidate>> {
    let registry = FamilyRegistry::global();
    let mut out = Vec::new();
    for cand in all {
        let family = registry.by_kind(cand.config.family)?;
        match family.cuspidal_rule(&cand.config, &cand.orbit) {
            CuspidalRule::Allowed => out.push(cand.clone()),
            CuspidalRule::NotGeneric => {}
            CuspidalRule::Lemma1 if disable_lemma1 => out.push(Candidate {
                lemma1: true,
                ..cand.clone()
            }),
            CuspidalRule::Lemma1 => {}
        }
    }
    Ok(out)
}

fn is_open_regime(m: u32, cusp: &Candidate) -> bool {
    m >= 4 && cusp.config.family == FamilyKind::GL && cusp.config.param == Some(1)
}

struct Search<'a> {
    m: u32,
    total: u64,
    others: &'a [Candidate],
    by_contribution: BTreeMap<u64, Vec<usize>>,
    l_max: Option<usize>,
}

impl<'a> Search<'a> {
    fn new(m: u32, others: &'a [Candidate], l_max: Option<usize>) -> Self {
        let mut by_contribution: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, c) in others.iter().enumerate() {
            by_contribution.entry(c.contribution).or_default().push(i);
        }
        Self {
            m,
            total: equation_total(m),
            others,
            by_contribution,
            l_max,
        }
    }

    fn run(&self, cusp: &Candidate, out: &mut Vec<(Vec<usize>, SolutionRow)>) {
        if cusp.contribution >= self.total {
            return;
        }
        let mut middle = Vec::new();
        self.extend(cusp, 0, self.total - cusp.contribution, &mut middle, out);
    }

    fn extend(
        &self,
        cusp: &Candidate,
        start: usize,
        remaining: u64,
        middle: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, SolutionRow)>,
    ) {
        let l = middle.len() + 2;
        if self.l_max.is_none_or(|lm| l <= lm) {
            if let Some(eis) = self.by_contribution.get(&remaining) {
                for &e in eis {
                    out.push(self.row(cusp, middle, e));
                }
            }
        }
        if self.l_max.is_some_and(|lm| l + 1 > lm) {
            return;
        }
        for i in start..self.others.len() {
            let c = self.others[i].contribution;
            if c < remaining {
                middle.push(i);
                self.extend(cusp, i, remaining - c, middle, out);
                middle.pop();
            }
        }
    }

    fn row(&self, cusp: &Candidate, middle: &[usize], eis: usize) -> (Vec<usize>, SolutionRow) {
        let mut order = vec![cusp.order];
        let mut slots = vec![Slot {
            role: Role::Cuspidal,
            config: cusp.config.clone(),
            orbit: cusp.orbit.clone(),
        }];
        let mut contributions = vec![cusp.contribution];
        for (&i, role) in middle
            .iter()
            .map(|i| (i, Role::Automorphic))
            .chain(std::iter::once((&eis, Role::Eisenstein)))
        {
            let c = &self.others[i];
            order.push(c.order);
            slots.push(Slot {
                role,
                config: c.config.clone(),
                orbit: c.orbit.clone(),
            });
            contributions.push(c.contribution);
        }
        let mut flags = Vec::new();
        if cusp.lemma1 {
            flags.push(RowFlag::Lemma1Excluded);
        }
        let open = is_open_regime(self.m, cusp);
        if open {
            flags.push(RowFlag::OpenRegime);
        }
        let total = contributions.iter().sum();
        let row = SolutionRow {
            m: self.m,
            slots,
            contributions,
            total,
            status: VanishingStatus::Unknown,
            flags,
            vanishing_unknown: open,
        };
        (order, row)
    }
}

fn run_search(
    m: u32,
    cusp: &[Candidate],
    others: &[Candidate],
    l_max: Option<usize>,
) -> Vec<SolutionRow> {
    let search = Search::new(m, others, l_max);
    let mut found: Vec<(Vec<usize>, SolutionRow)> = cusp
        .par_iter()
        .flat_map_iter(|c| {
            let mut out = Vec::new();
            search.run(c, &mut out);
            out
        })
        .collect();
    found.sort_by(|a, b| {
        a.1.l()
            .cmp(&b.1.l())
            .then_with(|| a.1.contributions.cmp(&b.1.contributions))
            .then_with(|| a.0.cmp(&b.0))
    });
    found.into_iter().map(|(_, r)| r).collect()
}

/// All integrals on `GL_m` satisfying the dimension equation, with middle
/// slots in canonical order.
pub fn classify(m: u32, opts: &ClassifyOptions) -> Result<Vec<SolutionRow>> {
    let total = equation_total(m);
    let configs = configs(m, &opts.params)?;
    let all = candidates_for(&configs, total)?;
    let mut cusp = cuspidal_filter(&all, opts.disable_lemma1)?;
    if !opts.allow_open_regime {
        cusp.retain(|c| !is_open_regime(m, c));
    }
    Ok(run_search(m, &cusp, &all, opts.l_max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotChoice {
    pub role: Role,
    pub family: FamilyKind,
    pub param: Option<u32>,
}

impl SlotChoice {
    pub fn new(role: Role, family: FamilyKind, param: Option<u32>) -> Self {
        Self {
            role,
            family,
            param,
        }
    }
}

/// Every orbit assignment for a fixed list of slots, in slot order.
pub fn solve(m: u32, choices: &[SlotChoice], opts: &ClassifyOptions) -> Result<Vec<SolutionRow>> {
    if choices.len() < 2 {
        return Err(Error::Domain("an integral needs at least two slots".into()));
    }
    let last = choices.len() - 1;
    for (i, ch) in choices.iter().enumerate() {
        let expected = match i {
            0 => Role::Cuspidal,
            i if i == last => Role::Eisenstein,
            _ => Role::Automorphic,
        };
        if ch.role != expected {
            return Err(Error::Domain(format!(
                "slot {} must be {expected:?}",
                i + 1
            )));
        }
    }
    let registry = FamilyRegistry::global();
    let total = equation_total(m);
    let mut per_slot = Vec::with_capacity(choices.len());
    for (i, ch) in choices.iter().enumerate() {
        let config = registry.by_kind(ch.family)?.instantiate(ch.param, m)?;
        let mut cands = candidates_for(std::slice::from_ref(&config), total)?;
        if i == 0 {
            cands = cuspidal_filter(&cands, opts.disable_lemma1)?;
        }
        per_slot.push(cands);
    }
    let mut rows = Vec::new();
    let mut pick = Vec::new();
    assign(m, &per_slot, total, &mut pick, &mut rows);
    Ok(rows)
}

fn assign<'a>(
    m: u32,
    per_slot: &'a [Vec<Candidate>],
    remaining: u64,
    pick: &mut Vec<&'a Candidate>,
    out: &mut Vec<SolutionRow>,
) {
    let i = pick.len();
    if i == per_slot.len() {
        if remaining == 0 {
            out.push(make_row(m, pick));
        }
        return;
    }
    for c in &per_slot[i] {
        if c.contribution <= remaining {
            pick.push(c);
            assign(m, per_slot, remaining - c.contribution, pick, out);
            pick.pop();
        }
    }
}

fn make_row(m: u32, pick: &[&Candidate]) -> SolutionRow {
    let last = pick.len() - 1;
    let slots = pick
        .iter()
        .enumerate()
        .map(|(i, c)| Slot {
            role: match i {
                0 => Role::Cuspidal,
                i if i == last => Role::Eisenstein,
                _ => Role::Automorphic,
            },
            config: c.config.clone(),
            orbit: c.orbit.clone(),
        })
        .collect();
    let contributions: Vec<u64> = pick.iter().map(|c| c.contribution).collect();
    let mut flags = Vec::new();
    if pick[0].lemma1 {
        flags.push(RowFlag::Lemma1Excluded);
    }
    let open = is_open_regime(m, pick[0]);
    if open {
        flags.push(RowFlag::OpenRegime);
    }
    SolutionRow {
        m,
        slots,
        total: contributions.iter().sum(),
        contributions,
        status: VanishingStatus::Unknown,
        flags,
        vanishing_unknown: open,
    }
}

/// Largest `l` among all solutions.
pub fn max_length(m: u32, opts: &ClassifyOptions) -> Result<usize> {
    let opts = ClassifyOptions {
        l_max: None,
        ..opts.clone()
    };
    Ok(classify(m, &opts)?
        .iter()
        .map(SolutionRow::l)
        .max()
        .unwrap_or(0))
}

/// Contribution of the cuspidal `GL_km` slot, whose orbit is `(km)`.
pub fn cuspidal_gl_contribution(k: u32, m: u32) -> Result<u64> {
    let family = ClassicalFamily::gl(k * m);
    let regular = family.orbit_dim(&Partition::regular(k * m))? / 2;
    let base = family.orbit_dim(&Partition::rectangle(k, m))? / 2;
    Ok(regular - base)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop2Case {
    pub m: u32,
    pub k: u32,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop2Report {
    pub cases: Vec<Prop2Case>,
    pub counterexamples: Vec<SolutionRow>,
    /// `(k, m)` where the cuspidal contribution differs from `km(m-1)/2`.
    pub identity_failures: Vec<(u32, u32)>,
}

impl Prop2Report {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty() && self.identity_failures.is_empty()
    }
}

/// Searches for solutions whose cuspidal slot is `GL_km` with `k` in
/// `k_range`, and checks the closed form of the cuspidal contribution.
pub fn verify_prop2(
    m_range: RangeInclusive<u32>,
    k_range: RangeInclusive<u32>,
    l_max: usize,
    params: RangeInclusive<u32>,
) -> Result<Prop2Report> {
    let mut cases = Vec::new();
    let mut counterexamples = Vec::new();
    for m in m_range.clone() {
        let total = equation_total(m);
        let others = candidates_for(&configs(m, &params)?, total)?;
        for k in k_range.clone() {
            let config = FamilyRegistry::global()
                .by_kind(FamilyKind::GL)?
                .instantiate(Some(k), m)?;
            let orbit =
                OrbitLabel::classical(ClassicalFamily::gl(k * m), Partition::regular(k * m))?;
            let cusp = Candidate {
                order: usize::MAX,
                config,
                orbit,
                contribution: cuspidal_gl_contribution(k, m)?,
                lemma1: false,
            };
            let rows = run_search(m, std::slice::from_ref(&cusp), &others, Some(l_max));
            cases.push(Prop2Case {
                m,
                k,
                rows: rows.len(),
            });
            if k >= 3 {
                counterexamples.extend(rows);
            }
        }
    }
    let mut identity_failures = Vec::new();
    for k in 1..=(*k_range.end()).max(6) {
        for m in 2..=(*m_range.end()).max(6) {
            let expect = (k * m * (m - 1) / 2) as u64;
            if cuspidal_gl_contribution(k, m)? != expect {
                identity_failures.push((k, m));
            }
        }
    }
    Ok(Prop2Report {
        cases,
        counterexamples,
        identity_failures,
    })
}
