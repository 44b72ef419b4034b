//! Fourier-coefficient configurations whose stabilizer is `GL_m`.
//!
//! Each coefficient family is a [`CoefficientFamily`] strategy held in a
//! [`FamilyRegistry`] under a short name (`gl`, `gsp`, `gso`, `ge6`, `ge7`).
//! The standard registry is closed: it holds exactly those five. Further
//! families can be added through [`FamilyRegistry::register`].

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit::{half_dim, ExceptionalGroup, ExceptionalTable, OrbitLabel};
use crate::partition::{partitions_dominating, ClassicalFamily, ClassicalType, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    GL,
    GSp,
    GSO,
    GE6,
    GE7,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::GL,
        FamilyKind::GSp,
        FamilyKind::GSO,
        FamilyKind::GE6,
        FamilyKind::GE7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::GL => "gl",
            FamilyKind::GSp => "gsp",
            FamilyKind::GSO => "gso",
            FamilyKind::GE6 => "ge6",
            FamilyKind::GE7 => "ge7",
        }
    }

    pub fn is_exceptional(self) -> bool {
        matches!(self, FamilyKind::GE6 | FamilyKind::GE7)
    }

    pub fn classical_type(self) -> Option<ClassicalType> {
        match self {
            FamilyKind::GL => Some(ClassicalType::GL),
            FamilyKind::GSp => Some(ClassicalType::GSp),
            FamilyKind::GSO => Some(ClassicalType::GSO),
            _ => None,
        }
    }

    pub fn exceptional_group(self) -> Option<ExceptionalGroup> {
        match self {
            FamilyKind::GE6 => Some(ExceptionalGroup::E6),
            FamilyKind::GE7 => Some(ExceptionalGroup::E7),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A concrete configuration: ambient group, base orbit and `dim U(O)`.
///
/// `param` is `k` for `GL_km`, `n` for `GSp_{2(2n+1)}` and `GSO_{4n}`, and
/// absent for the exceptional groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoefficientConfig {
    pub family: FamilyKind,
    pub param: Option<u32>,
    pub m: u32,
    pub base_orbit: OrbitLabel,
    #[serde(rename = "dim_U")]
    pub dim_u: u64,
}

impl CoefficientConfig {
    /// The ambient group written as in the tables, e.g. `GSp_10` or `GE7`.
    pub fn group_name(&self) -> String {
        match &self.base_orbit {
            OrbitLabel::Classical { family, .. } => family.to_string(),
            OrbitLabel::Exceptional { group, .. } => format!("G{group}"),
        }
    }

    pub fn classical_family(&self) -> Option<ClassicalFamily> {
        match &self.base_orbit {
            OrbitLabel::Classical { family, .. } => Some(*family),
            OrbitLabel::Exceptional { .. } => None,
        }
    }
}

impl fmt::Display for CoefficientConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} base {}", self.group_name(), self.base_orbit)
    }
}

/// Why an orbit is or is not available to a cuspidal representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CuspidalRule {
    Allowed,
    /// Cuspidal representations of `GL` are generic.
    NotGeneric,
    /// No cuspidal representation of `GE6` has orbit `D5` or `D5(a1)`.
    Lemma1,
}

pub trait CoefficientFamily: Send + Sync {
    fn kind(&self) -> FamilyKind;

    fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn supports(&self, m: u32) -> bool;

    /// Whether the family carries an integer parameter.
    fn parametric(&self) -> bool;

    fn instantiate(&self, param: Option<u32>, m: u32) -> Result<CoefficientConfig>;

    /// Every orbit strictly above the base with its contribution, ordered by
    /// contribution and then by label.
    fn orbits_above(&self, config: &CoefficientConfig) -> Result<Vec<(OrbitLabel, u64)>>;

    fn cuspidal_rule(&self, config: &CoefficientConfig, orbit: &OrbitLabel) -> CuspidalRule;
}

fn check_param(kind: FamilyKind, param: Option<u32>) -> Result<u32> {
    match param {
        Some(v) if v >= 1 => Ok(v),
        Some(v) => Err(Error::OutOfRange {
            what: "family parameter",
            value: v as i64,
            lo: 1,
            hi: i64::MAX,
        }),
        None => Err(Error::Domain(format!("family {kind} needs a parameter"))),
    }
}

fn classical_orbits_above(config: &CoefficientConfig) -> Result<Vec<(OrbitLabel, u64)>> {
    let OrbitLabel::Classical { family, partition } = &config.base_orbit else {
        return Err(Error::Domain(
            "classical family with exceptional base".into(),
        ));
    };
    let base_half = family.orbit_dim(partition)? / 2;
    let mut out = partitions_dominating(partition, *family)?
        .into_iter()
        .map(|p| {
            let c = family.orbit_dim(&p)? / 2 - base_half;
            Ok((
                OrbitLabel::Classical {
                    family: *family,
                    partition: p,
                },
                c,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn exceptional_orbits_above(config: &CoefficientConfig) -> Result<Vec<(OrbitLabel, u64)>> {
    let OrbitLabel::Exceptional { group, label, dim } = &config.base_orbit else {
        return Err(Error::Domain(
            "exceptional family with classical base".into(),
        ));
    };
    let table = ExceptionalTable::global();
    Ok(table
        .above(*group, label)?
        .into_iter()
        .map(|o| {
            (
                OrbitLabel::Exceptional {
                    group: *group,
                    label: o.label.clone(),
                    dim: o.dim,
                },
                (o.dim - dim) / 2,
            )
        })
        .collect())
}

fn finish(
    family: FamilyKind,
    param: Option<u32>,
    m: u32,
    base_orbit: OrbitLabel,
) -> Result<CoefficientConfig> {
    let dim_u = half_dim(&base_orbit)?;
    Ok(CoefficientConfig {
        family,
        param,
        m,
        base_orbit,
        dim_u,
    })
}

fn mismatch(kind: FamilyKind, m: u32) -> Error {
    Error::FamilyMismatch {
        family: kind.name().to_string(),
        m,
    }
}

/// `GL_km` with base `(k^m)`.
#[derive(Debug, Default)]
pub struct GlFamily;

impl CoefficientFamily for GlFamily {
    fn kind(&self) -> FamilyKind {
        FamilyKind::GL
    }

    fn supports(&self, m: u32) -> bool {
        m >= 2
    }

    fn parametric(&self) -> bool {
        true
    }

    fn instantiate(&self, param: Option<u32>, m: u32) -> Result<CoefficientConfig> {
        if !self.supports(m) {
            return Err(mismatch(self.kind(), m));
        }
        let k = check_param(self.kind(), param)?;
        let family = ClassicalFamily::gl(k * m);
        finish(
            self.kind(),
            Some(k),
            m,
            OrbitLabel::classical(family, Partition::rectangle(k, m))?,
        )
    }

    fn orbits_above(&self, config: &CoefficientConfig) -> Result<Vec<(OrbitLabel, u64)>> {
        classical_orbits_above(config)
    }

    fn cuspidal_rule(&self, _config: &CoefficientConfig, orbit: &OrbitLabel) -> CuspidalRule {
        match orbit.partition() {
            Some(p) if p.len() == 1 => CuspidalRule::Allowed,
            _ => CuspidalRule::NotGeneric,
        }
    }
}

/// `GSp_{2(2n+1)}` with base `((2n+1)^2)`, only for `m = 2`.
#[derive(Debug, Default)]
pub struct GspFamily;

impl CoefficientFamily for GspFamily {
    fn kind(&self) -> FamilyKind {
        FamilyKind::GSp
    }

    fn supports(&self, m: u32) -> bool {
        m == 2
    }

    fn parametric(&self) -> bool {
        true
    }

    fn instantiate(&self, param: Option<u32>, m: u32) -> Result<CoefficientConfig> {
        if !self.supports(m) {
            return Err(mismatch(self.kind(), m));
        }
        let n = check_param(self.kind(), param)?;
        let family = ClassicalFamily::gsp(2 * (2 * n + 1));
        finish(
            self.kind(),
            Some(n),
            m,
            OrbitLabel::classical(family, Partition::rectangle(2 * n + 1, 2))?,
        )
    }

    fn orbits_above(&self, config: &CoefficientConfig) -> Result<Vec<(OrbitLabel, u64)>> {
        classical_orbits_above(config)
    }

    fn cuspidal_rule(&self, _config: &CoefficientConfig, _orbit: &OrbitLabel) -> CuspidalRule {
        CuspidalRule::Allowed
    }
}

/// `GSO_{4n}` with base `((2n)^2)`, only for `m = 2`.
#[derive(Debug, Default)]
pub struct GsoFamily;

impl CoefficientFamily for GsoFamily {
    fn kind(&self) -> FamilyKind {
        FamilyKind::GSO
    }

    fn supports(&self, m: u32) -> bool {
        m == 2
    }

    fn parametric(&self) -> bool {
        true
    }

    fn instantiate(&self, param: Option<u32>, m: u32) -> Result<CoefficientConfig> {
        if !self.supports(m) {
            return Err(mismatch(self.kind(), m));
        }
        let n = check_param(self.kind(), param)?;
        let family = ClassicalFamily::gso(4 * n);
        finish(
            self.kind(),
            Some(n),
            m,
            OrbitLabel::classical(family, Partition::rectangle(2 * n, 2))?,
        )
    }

    fn orbits_above(&self, config: &CoefficientConfig) -> Result<Vec<(OrbitLabel, u64)>> {
        classical_orbits_above(config)
    }

    fn cuspidal_rule(&self, _config: &CoefficientConfig, _orbit: &OrbitLabel) -> CuspidalRule {
        CuspidalRule::Allowed
    }
}

/// `GE6` with base `D4`, only for `m = 3`.
#[derive(Debug, Default)]
pub struct Ge6Family;

impl CoefficientFamily for Ge6Family {
    fn kind(&self) -> FamilyKind {
        FamilyKind::GE6
    }

    fn supports(&self, m: u32) -> bool {
        m == 3
    }

    fn parametric(&self) -> bool {
        false
    }

    fn instantiate(&self, _param: Option<u32>, m: u32) -> Result<CoefficientConfig> {
        if !self.supports(m) {
            return Err(mismatch(self.kind(), m));
        }
        finish(
            self.kind(),
            None,
            m,
            OrbitLabel::exceptional(ExceptionalGroup::E6, "D4")?,
        )
    }

    fn orbits_above(&self, config: &CoefficientConfig) -> Result<Vec<(OrbitLabel, u64)>> {
        exceptional_orbits_above(config)
    }

    fn cuspidal_rule(&self, _config: &CoefficientConfig, orbit: &OrbitLabel) -> CuspidalRule {
        match orbit.label() {
            Some("D5") | Some("D5(a1)") => CuspidalRule::Lemma1,
            _ => CuspidalRule::Allowed,
        }
    }
}

/// `GE7` with base `E6`, only for `m = 2`.
#[derive(Debug, Default)]
pub struct Ge7Family;

impl CoefficientFamily for Ge7Family {
    fn kind(&self) -> FamilyKind {
        FamilyKind::GE7
    }

    fn supports(&self, m: u32) -> bool {
        m == 2
    }

    fn parametric(&self) -> bool {
        false
    }

    fn instantiate(&self, _param: Option<u32>, m: u32) -> Result<CoefficientConfig> {
        if !self.supports(m) {
            return Err(mismatch(self.kind(), m));
        }
        finish(
            self.kind(),
            None,
            m,
            OrbitLabel::exceptional(ExceptionalGroup::E7, "E6")?,
        )
    }

    fn orbits_above(&self, config: &CoefficientConfig) -> Result<Vec<(OrbitLabel, u64)>> {
        exceptional_orbits_above(config)
    }

    fn cuspidal_rule(&self, _config: &CoefficientConfig, _orbit: &OrbitLabel) -> CuspidalRule {
        CuspidalRule::Allowed
    }
}

pub struct FamilyRegistry {
    families: Vec<Box<dyn CoefficientFamily>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        Self {
            families: Vec::new(),
        }
    }

    /// The five families of the catalog.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.families.push(Box::new(GlFamily));
        r.families.push(Box::new(GspFamily));
        r.families.push(Box::new(GsoFamily));
        r.families.push(Box::new(Ge6Family));
        r.families.push(Box::new(Ge7Family));
        r
    }

    pub fn global() -> &'static FamilyRegistry {
        static REGISTRY: OnceLock<FamilyRegistry> = OnceLock::new();
        REGISTRY.get_or_init(FamilyRegistry::standard)
    }

    pub fn register(&mut self, family: Box<dyn CoefficientFamily>) -> Result<()> {
        if self.families.iter().any(|f| f.name() == family.name()) {
            return Err(Error::Domain(format!(
                "family {} already registered",
                family.name()
            )));
        }
        self.families.push(family);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&dyn CoefficientFamily> {
        let lower = name.to_ascii_lowercase();
        self.families
            .iter()
            .find(|f| f.name() == lower)
            .map(|f| f.as_ref())
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    pub fn by_kind(&self, kind: FamilyKind) -> Result<&dyn CoefficientFamily> {
        self.get(kind.name())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.name()).collect()
    }

    /// Families admitting stabilizer `GL_m`, in registration order.
    pub fn families_for(&self, m: u32) -> Result<Vec<&dyn CoefficientFamily>> {
        if m < 2 {
            return Err(Error::OutOfRange {
                what: "m",
                value: m as i64,
                lo: 2,
                hi: i64::MAX,
            });
        }
        Ok(self
            .families
            .iter()
            .filter(|f| f.supports(m))
            .map(|f| f.as_ref())
            .collect())
    }
}

impl fmt::Debug for FamilyRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

pub fn catalog_families(m: u32) -> Result<Vec<FamilyKind>> {
    Ok(FamilyRegistry::global()
        .families_for(m)?
        .into_iter()
        .map(|f| f.kind())
        .collect())
}

pub fn instantiate(family: FamilyKind, param: Option<u32>, m: u32) -> Result<CoefficientConfig> {
    FamilyRegistry::global()
        .by_kind(family)?
        .instantiate(param, m)
}
