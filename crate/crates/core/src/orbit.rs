//! Orbit labels, orbit dimensions and the per-slot contribution
//! `dim pi - dim U(O) = (dim O(pi) - dim O) / 2`.
//!
//! Similitude groups use the orbit data of their semisimple part; the extra
//! central torus cancels in every difference computed here.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{ClassicalFamily, ClassicalType, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionalGroup {
    E6,
    E7,
}

impl fmt::Display for ExceptionalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExceptionalGroup::E6 => "E6",
            ExceptionalGroup::E7 => "E7",
        })
    }
}

impl FromStr for ExceptionalGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().trim_start_matches('G') {
            "E6" => Ok(ExceptionalGroup::E6),
            "E7" => Ok(ExceptionalGroup::E7),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// One row of the exceptional orbit fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalOrbit {
    pub group: ExceptionalGroup,
    pub label: String,
    pub dim: u64,
    /// Whether the dimension is pinned by an independent numeric anchor.
    #[serde(default)]
    pub anchored: bool,
    /// Labels of orbits strictly below this one in the closure order.
    pub greater_than: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct OrbitFixture {
    version: u32,
    orbits: Vec<ExceptionalOrbit>,
}

/// The exceptional orbit table, keyed by group and label.
#[derive(Debug)]
pub struct ExceptionalTable {
    orbits: BTreeMap<(ExceptionalGroup, String), ExceptionalOrbit>,
}

pub const EXCEPTIONAL_FIXTURE: &str = include_str!("../fixtures/orbits_exceptional.json");

impl ExceptionalTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let fixture: OrbitFixture =
            serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        if fixture.version != 1 {
            return Err(Error::Fixture(format!(
                "unsupported version {}",
                fixture.version
            )));
        }
        let mut orbits = BTreeMap::new();
        for o in fixture.orbits {
            if o.dim % 2 != 0 {
                return Err(Error::Fixture(format!(
                    "{} {} has odd dimension",
                    o.group, o.label
                )));
            }
            orbits.insert((o.group, o.label.clone()), o);
        }
        for o in orbits.values() {
            for below in &o.greater_than {
                let lower = orbits.get(&(o.group, below.clone())).ok_or_else(|| {
                    Error::Fixture(format!("{} {} refers to unknown {below}", o.group, o.label))
                })?;
                if lower.dim >= o.dim {
                    return Err(Error::Fixture(format!(
                        "{} {} above {below} without larger dimension",
                        o.group, o.label
                    )));
                }
            }
        }
        Ok(Self { orbits })
    }

    /// The compiled-in fixture, parsed once.
    pub fn global() -> &'static ExceptionalTable {
        static TABLE: OnceLock<ExceptionalTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            ExceptionalTable::from_json(EXCEPTIONAL_FIXTURE)
                .expect("bundled orbit fixture is valid")
        })
    }

    pub fn get(&self, group: ExceptionalGroup, label: &str) -> Result<&ExceptionalOrbit> {
        self.orbits
            .get(&(group, label.to_string()))
            .ok_or_else(|| Error::UnknownLabel {
                group: group.to_string(),
                label: label.to_string(),
            })
    }

    pub fn orbits(&self, group: ExceptionalGroup) -> impl Iterator<Item = &ExceptionalOrbit> {
        self.orbits.values().filter(move |o| o.group == group)
    }

    pub fn is_strictly_greater(
        &self,
        group: ExceptionalGroup,
        base: &str,
        orbit: &str,
    ) -> Result<bool> {
        self.get(group, base)?;
        Ok(self
            .get(group, orbit)?
            .greater_than
            .iter()
            .any(|l| l == base))
    }

    /// Labels strictly greater than `base`, by dimension then label.
    pub fn above(&self, group: ExceptionalGroup, base: &str) -> Result<Vec<&ExceptionalOrbit>> {
        self.get(group, base)?;
        let mut out: Vec<_> = self
            .orbits(group)
            .filter(|o| o.greater_than.iter().any(|l| l == base))
            .collect();
        out.sort_by(|a, b| (a.dim, &a.label).cmp(&(b.dim, &b.label)));
        Ok(out)
    }

    /// Labels whose half-dimension is `half`.
    pub fn with_half_dim(&self, group: ExceptionalGroup, half: u64) -> Vec<&ExceptionalOrbit> {
        self.orbits(group).filter(|o| o.dim == 2 * half).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitLabel {
    Classical {
        family: ClassicalFamily,
        partition: Partition,
    },
    Exceptional {
        group: ExceptionalGroup,
        label: String,
        dim: u64,
    },
}

impl OrbitLabel {
    pub fn classical(family: ClassicalFamily, partition: Partition) -> Result<Self> {
        if !family.is_valid(&partition) {
            return Err(Error::Domain(format!(
                "{partition} is not a valid partition for {family}"
            )));
        }
        Ok(OrbitLabel::Classical { family, partition })
    }

    pub fn exceptional(group: ExceptionalGroup, label: &str) -> Result<Self> {
        let entry = ExceptionalTable::global().get(group, label)?;
        Ok(OrbitLabel::Exceptional {
            group,
            label: entry.label.clone(),
            dim: entry.dim,
        })
    }

    pub fn partition(&self) -> Option<&Partition> {
        match self {
            OrbitLabel::Classical { partition, .. } => Some(partition),
            OrbitLabel::Exceptional { .. } => None,
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            OrbitLabel::Exceptional { label, .. } => Some(label),
            OrbitLabel::Classical { .. } => None,
        }
    }

    fn same_group(&self, other: &OrbitLabel) -> bool {
        match (self, other) {
            (OrbitLabel::Classical { family: a, .. }, OrbitLabel::Classical { family: b, .. }) => {
                a == b
            }
            (
                OrbitLabel::Exceptional { group: a, .. },
                OrbitLabel::Exceptional { group: b, .. },
            ) => a == b,
            _ => false,
        }
    }

    /// Strict closure order: dominance for classical labels, the fixture's
    /// relation for exceptional ones.
    pub fn is_strictly_above(&self, base: &OrbitLabel) -> Result<bool> {
        if !self.same_group(base) {
            return Err(Error::GroupMismatch(base.to_string(), self.to_string()));
        }
        match (self, base) {
            (
                OrbitLabel::Classical { partition: a, .. },
                OrbitLabel::Classical { partition: b, .. },
            ) => a.strictly_dominates(b),
            (
                OrbitLabel::Exceptional { group, label, .. },
                OrbitLabel::Exceptional { label: b, .. },
            ) => ExceptionalTable::global().is_strictly_greater(*group, b, label),
            _ => unreachable!("same_group checked"),
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Classical { family, partition } => write!(f, "{partition}_{}", family.ty),
            OrbitLabel::Exceptional { label, .. } => f.write_str(label),
        }
    }
}

impl ClassicalFamily {
    /// Complex dimension of the nilpotent orbit with partition `p`, with
    /// `s = transpose(p)`:
    ///
    /// * `GL_n`: `n^2 - sum s_i^2`
    /// * `Sp_2N`: `2N^2 + N - (sum s_i^2)/2 - #{odd parts}/2`
    /// * `SO_M`: `(M^2 - M)/2 - (sum s_i^2 - #{odd parts})/2`
    pub fn orbit_dim(&self, p: &Partition) -> Result<u64> {
        if p.size() != self.size {
            return Err(Error::SizeMismatch {
                left: p.size(),
                right: self.size,
            });
        }
        let n = self.size as i64;
        let squares = p.transpose_square_sum() as i64;
        let odd = p.odd_parts() as i64;
        let twice = match self.ty {
            ClassicalType::GL => 2 * (n * n - squares),
            ClassicalType::GSp => n * n + n - squares - odd,
            ClassicalType::GSO => n * n - n - squares + odd,
        };
        if twice < 0 || twice % 4 != 0 {
            return Err(Error::Domain(format!(
                "{p} is not a valid partition for {self}"
            )));
        }
        Ok((twice / 2) as u64)
    }
}

pub fn orbit_dim(o: &OrbitLabel) -> Result<u64> {
    match o {
        OrbitLabel::Classical { family, partition } => family.orbit_dim(partition),
        OrbitLabel::Exceptional { group, label, .. } => {
            Ok(ExceptionalTable::global().get(*group, label)?.dim)
        }
    }
}

/// `dim pi = dim O(pi) / 2`.
pub fn half_dim(o: &OrbitLabel) -> Result<u64> {
    Ok(orbit_dim(o)? / 2)
}

/// The slot term `half_dim(orbit) - half_dim(base)`; the orbit must be
/// strictly above the base.
pub fn contribution(base: &OrbitLabel, orbit: &OrbitLabel) -> Result<u64> {
    if !orbit.is_strictly_above(base)? {
        return Err(Error::NotStrictlyGreater {
            base: base.to_string(),
            orbit: orbit.to_string(),
        });
    }
    Ok(half_dim(orbit)? - half_dim(base)?)
}
