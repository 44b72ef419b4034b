//! Verification suites run by `verify-all` and the acceptance tests.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::catalog::{instantiate, FamilyKind};
use crate::error::Result;
use crate::inducing::{
    classify_inducing_data, lemex_check, lemex_check_datum, lemma2_closed_form,
    EisensteinDescriptor, Lemma2Case,
};
use crate::orbit::{half_dim, ExceptionalGroup, ExceptionalTable, OrbitLabel};
use crate::partition::{partitions, ClassicalFamily, ClassicalType, Partition};
use crate::roots::{CharacterSupport, Root, RootSystem, RootType, WeylWord};
use crate::solver::{classify, max_length, verify_prop2, ClassifyOptions, Role, SolutionRow};
use crate::tables::enumerate_tables;
use crate::weyl::check_context;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        name: impl Into<String>,
        got: T,
        want: T,
    ) {
        let passed = got == want;
        let detail = if passed {
            String::new()
        } else {
            format!("got {got:?}, want {want:?}")
        };
        self.check(name, passed, detail);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub params: RangeInclusive<u32>,
    pub disable_lemma1: bool,
    pub allow_open_regime: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            params: 1..=6,
            disable_lemma1: false,
            allow_open_regime: false,
        }
    }
}

impl VerifyOptions {
    fn classify(&self) -> ClassifyOptions {
        ClassifyOptions {
            params: self.params.clone(),
            l_max: None,
            allow_open_regime: self.allow_open_regime,
            disable_lemma1: self.disable_lemma1,
        }
    }
}

fn root(s: &str) -> Root {
    Root::parse_digits(s).expect("literal root")
}

pub fn verify_roots() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("roots");
    let e6 = RootSystem::build(RootType::E6);
    let e7 = RootSystem::build(RootType::E7);
    rep.expect_eq("E6 positive roots", e6.positive_roots().len(), 36);
    rep.expect_eq("E7 positive roots", e7.positive_roots().len(), 63);
    rep.expect_eq("E6 highest root", e6.highest_root().clone(), root("122321"));
    rep.expect_eq(
        "E7 highest root",
        e7.highest_root().clone(),
        root("2234321"),
    );

    let images = |word: &str, pairs: &[(&str, &str)], rep: &mut SuiteReport| -> Result<()> {
        let w: WeylWord = word.parse()?;
        for (from, to) in pairs {
            let got = e6.apply_weyl_word(&w, &root(from))?;
            rep.expect_eq(format!("{w}({from})"), got, root(to));
        }
        Ok(())
    };
    images(
        "w6w5w4w3w2w4w5w1w3",
        &[
            ("100000", "010000"),
            ("001100", "000100"),
            ("000110", "100000"),
            ("000011", "000010"),
            ("010000", "001000"),
        ],
        &mut rep,
    )?;
    images(
        "w6w5w4w3w2w4w5w1",
        &[
            ("010000", "001000"),
            ("010100", "001100"),
            ("101100", "010100"),
            ("000011", "000010"),
            ("001110", "100000"),
        ],
        &mut rep,
    )?;

    // U/[U,U] for the parabolic whose Levi has simple roots 3 and 5.
    let levi = [3usize, 5];
    let level_one: BTreeSet<Root> = e6
        .positive_roots()
        .iter()
        .filter(|b| {
            (1..=6)
                .filter(|i| !levi.contains(i))
                .map(|i| b.0[i - 1])
                .sum::<i32>()
                == 1
        })
        .cloned()
        .collect();
    let nine: BTreeSet<Root> = [
        "100000", "101000", "000001", "000011", "000100", "001100", "000110", "001110", "010000",
    ]
    .iter()
    .map(|s| root(s))
    .collect();
    rep.expect_eq("nine representatives of U/[U,U]", level_one, nine);

    for (name, roots) in [
        (
            "D5 character",
            vec!["100000", "001100", "000110", "000011", "010000"],
        ),
        (
            "D5(a1) character",
            vec!["010000", "101100", "000011", "000111", "001110"],
        ),
        (
            "V+ roots",
            vec![
                "111211", "011221", "112211", "111221", "112221", "112321", "122321",
            ],
        ),
        (
            "V- roots",
            vec![
                "101111", "011111", "001111", "010111", "000111", "000011", "000001",
            ],
        ),
    ] {
        let s = CharacterSupport::from_digits(&roots)?;
        rep.check(name, e6.verify_character_support(&s), "");
    }
    let e7_char = CharacterSupport::from_digits(&[
        "1000000", "0010000", "0101000", "0001100", "0000110", "0000011",
    ])?;
    rep.check("E7 character", e7.verify_character_support(&e7_char), "");

    let gens = [root("0100000"), root("0000100"), root("0000001")];
    rep.expect_eq("dim U(O) in E7", e7.unipotent_radical_dim(&gens), 60);
    let u_prime = e6.unipotent_radical_dim_simple(&[4]);
    rep.expect_eq("dim U' (Levi alpha4)", u_prime, 35);
    let omitted = ["001100", "000010", "000110"];
    let inside = omitted.iter().all(|s| {
        let b = root(s);
        e6.is_positive_root(&b) && b != e6.simple_root(4)
    });
    rep.check("omitted roots lie in U'", inside, "");
    rep.expect_eq("dim U = dim U' - 3", u_prime - omitted.len(), 32);
    rep.expect_eq(
        "dim R (Levi D5)",
        e6.unipotent_radical_dim_simple(&[1, 2, 3, 4, 5]),
        16,
    );
    let d4 = OrbitLabel::exceptional(ExceptionalGroup::E6, "D4")?;
    rep.expect_eq("half_dim(D4)", half_dim(&d4)?, 30);
    rep.expect_eq(
        "GE6 base dim U",
        instantiate(FamilyKind::GE6, None, 3)?.dim_u,
        30,
    );
    Ok(rep)
}

/// Tables for one `m`.
pub fn verify_tables(m: u32, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(&format!("tables m={m}"));
    let set = enumerate_tables(m, &opts.classify())?;
    for t in &set.tables {
        for (ci, c) in t.columns.iter().enumerate() {
            rep.check(
                format!("table {} column {}", t.id, ci + 1),
                c.complete(),
                format!(
                    "{}/{} rows, pattern ok: {}",
                    c.matched, c.expected, c.pattern_ok
                ),
            );
        }
    }
    rep.check("some table applies", !set.tables.is_empty(), "");
    rep.expect_eq("unexpected rows", set.unexpected.len(), 0);
    rep.expect_eq("ambiguous rows", set.ambiguous, 0);
    if m >= 4 {
        let pattern_ok = set
            .tables
            .iter()
            .all(|t| t.columns.iter().all(|c| c.matched > 0))
            && classify(m, &ClassifyOptions::with_params(opts.params.clone()))?
                .iter()
                .all(|r| r.contributions == vec![(m * (m - 1)) as u64, (m - 1) as u64]);
        rep.check("pattern (m(m-1), m-1)", pattern_ok, "");
    }
    if opts.allow_open_regime {
        rep.check(
            "open-regime rows flagged",
            set.open_regime.iter().all(|r| r.vanishing_unknown),
            format!("{} rows", set.open_regime.len()),
        );
    }
    Ok(rep)
}

/// The minimum over orbits above `(p^m)` in `GL_pm` is `m - 1`, attained
/// only at `((p+1) p^{m-2} (p-1))`.
pub fn verify_gl_lower_bound(
    m_range: RangeInclusive<u32>,
    p_range: RangeInclusive<u32>,
) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("GL lower bound");
    for m in m_range {
        for p in p_range.clone() {
            let g = ClassicalFamily::gl(p * m);
            let base = Partition::rectangle(p, m);
            let base_half = g.orbit_dim(&base)? / 2;
            let mut best: Option<(u64, Vec<Partition>)> = None;
            for lam in partitions(p * m) {
                if !lam.strictly_dominates(&base)? {
                    continue;
                }
                let c = g.orbit_dim(&lam)? / 2 - base_half;
                match &mut best {
                    Some((b, who)) if *b == c => who.push(lam),
                    Some((b, _)) if *b < c => {}
                    _ => best = Some((c, vec![lam])),
                }
            }
            let minimal = Partition::from_parts(
                std::iter::once(p + 1)
                    .chain(std::iter::repeat_n(p, m as usize - 2))
                    .chain(std::iter::once(p - 1)),
            );
            let got = best;
            rep.expect_eq(
                format!("m={m} p={p}"),
                got,
                Some(((m - 1) as u64, vec![minimal])),
            );
        }
    }
    Ok(rep)
}

pub fn verify_prop1(params: RangeInclusive<u32>) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("length bound");
    for m in [2, 3] {
        rep.expect_eq(
            format!("max l for m={m}"),
            max_length(m, &ClassifyOptions::with_params(params.clone()))?,
            3,
        );
    }
    Ok(rep)
}

pub fn verify_prop2_suite(params: RangeInclusive<u32>) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("cuspidal GL_km");
    let report = verify_prop2(2..=6, 1..=6, 4, params)?;
    rep.check(
        "no solutions with k >= 3",
        report.counterexamples.is_empty(),
        format!("{} counterexamples", report.counterexamples.len()),
    );
    rep.check(
        "contribution = km(m-1)/2",
        report.identity_failures.is_empty(),
        format!("{:?}", report.identity_failures),
    );
    Ok(rep)
}

pub fn verify_lemma2(p_max: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("inducing data");
    for case in Lemma2Case::ALL {
        for p in 1..=p_max {
            let Some(target) = case.target(p) else {
                continue;
            };
            let brute = classify_inducing_data(case.group(p), &target)?;
            let closed = lemma2_closed_form(case, p)?;
            rep.check(
                format!("case {} p={p}", case.number()),
                brute == closed && !brute.is_empty(),
                format!("{} brute force, {} closed form", brute.len(), closed.len()),
            );
        }
    }
    for p in 2..=p_max {
        let target = Lemma2Case::GlFar.target(p).expect("p >= 2");
        let data = classify_inducing_data(ClassicalFamily::gl(2 * p), &target)?;
        let ones: BTreeSet<_> = data
            .iter()
            .filter(|d| d.i == 1)
            .map(|d| (d.tau1.clone(), d.tau2.clone()))
            .collect();
        let threes: BTreeSet<_> = data
            .iter()
            .filter(|d| d.i == 3)
            .map(|d| (d.tau2.clone(), d.tau1.clone()))
            .collect();
        let a_map = data.iter().filter(|d| d.i == 1).all(|d| {
            data.iter()
                .any(|e| e.i == 3 && e.a == p + 2 - d.a && e.tau1 == d.tau2)
        });
        rep.check(
            format!("a -> p-a+2 swap p={p}"),
            ones == threes && a_map,
            "",
        );
    }
    Ok(rep)
}

pub fn verify_lemex(p_max: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("lemex");
    for case in Lemma2Case::ALL {
        let mut count = 0;
        let mut bad = Vec::new();
        for p in 1..=p_max {
            let Some(target) = case.target(p) else {
                continue;
            };
            for d in classify_inducing_data(case.group(p), &target)? {
                count += 1;
                if !lemex_check_datum(&d, &target)? {
                    bad.push(format!("{} {} {}", d.levi(), d.tau1, d.tau2));
                }
            }
        }
        rep.check(
            format!("case {} data ({count})", case.number()),
            bad.is_empty(),
            bad.join("; "),
        );
    }
    let e7 = |label: &str| OrbitLabel::exceptional(ExceptionalGroup::E7, label);
    let a6 = EisensteinDescriptor::Ge7 {
        levi: vec![1, 3, 4, 5, 6, 7],
    };
    let e6 = EisensteinDescriptor::Ge7 {
        levi: vec![1, 2, 3, 4, 5, 6],
    };
    let tau = ClassicalFamily::gl(7).orbit_dim(&Partition::from_parts([5, 2]))? / 2;
    rep.expect_eq("dim U(P), A6", a6.unipotent_dim(), 42);
    rep.expect_eq("dim tau = (5,2) in GL_7", tau, 19);
    rep.check(
        "42 + 19 = E7(a2)",
        lemex_check(&a6, &[tau], &e7("E7(a2)")?)?,
        "",
    );
    rep.check(
        "27 + 35 = E7(a1)",
        lemex_check(&e6, &[35], &e7("E7(a1)")?)?,
        "",
    );
    Ok(rep)
}

pub fn verify_weyl(p_max: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("admissible Weyl elements");
    for p in 1..=p_max {
        for r in p..2 * p {
            let w = check_context(p, r)?;
            rep.check(
                format!("p={p} r={r}"),
                w.holds(),
                format!(
                    "{} admissible cosets, expected {}",
                    w.admissible.len(),
                    w.count_expected
                ),
            );
        }
    }
    Ok(rep)
}

/// Dominance order laws, transpose laws and parity of orbit dimensions.
pub fn verify_partitions(n_dominance: u32, n_dims: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("partitions");
    let mut order_ok = true;
    let mut transpose_ok = true;
    for n in 0..=n_dominance {
        let ps = partitions(n);
        for a in &ps {
            transpose_ok &= a.transpose().transpose() == *a && a.transpose().size() == n;
            order_ok &= a.dominates(a)?;
            for b in &ps {
                let ab = a.dominates(b)?;
                let ba = b.dominates(a)?;
                order_ok &= !(ab && ba) || a == b;
                transpose_ok &= ab == b.transpose().dominates(&a.transpose())?;
                if ab {
                    for c in &ps {
                        order_ok &= !b.dominates(c)? || a.dominates(c)?;
                    }
                }
            }
        }
    }
    rep.check(
        format!("dominance is a partial order (n <= {n_dominance})"),
        order_ok,
        "",
    );
    rep.check(
        format!("transpose is an order-reversing involution (n <= {n_dominance})"),
        transpose_ok,
        "",
    );
    let mut parity = Vec::new();
    for n in 1..=n_dims {
        for ty in [ClassicalType::GL, ClassicalType::GSp, ClassicalType::GSO] {
            if ty == ClassicalType::GSp && n % 2 == 1 {
                continue;
            }
            let g = ClassicalFamily::new(ty, n)?;
            for lam in partitions(n).iter().filter(|l| g.is_valid(l)) {
                match g.orbit_dim(lam) {
                    Ok(d) if d % 2 == 0 => {}
                    other => parity.push(format!("{lam} in {g}: {other:?}")),
                }
            }
        }
    }
    rep.check(
        format!("orbit dimensions even (n <= {n_dims})"),
        parity.is_empty(),
        parity.join("; "),
    );
    Ok(rep)
}

type RowKey = Vec<(FamilyKind, Option<u32>, OrbitLabel)>;

fn canonical(mut key: RowKey) -> RowKey {
    if key.len() > 2 {
        let last = key.len() - 1;
        key[1..last].sort();
    }
    key
}

/// Solver output against a direct product enumeration for `m = 2`: every
/// family and parameter per slot, every valid orbit, filtered by the sum.
pub fn brute_force_keys_m2(params: RangeInclusive<u32>) -> Result<BTreeSet<RowKey>> {
    let mut options: Vec<(FamilyKind, Option<u32>, OrbitLabel, u64, bool)> = Vec::new();
    for kind in [
        FamilyKind::GL,
        FamilyKind::GSp,
        FamilyKind::GSO,
        FamilyKind::GE7,
    ] {
        let ps: Vec<Option<u32>> = if kind.is_exceptional() {
            vec![None]
        } else {
            params.clone().map(Some).collect()
        };
        for param in ps {
            let config = instantiate(kind, param, 2)?;
            let base_half = half_dim(&config.base_orbit)?;
            let orbits: Vec<OrbitLabel> = match &config.base_orbit {
                OrbitLabel::Classical { family, .. } => partitions(family.size)
                    .into_iter()
                    .filter(|l| family.is_valid(l))
                    .map(|l| OrbitLabel::Classical {
                        family: *family,
                        partition: l,
                    })
                    .collect(),
                OrbitLabel::Exceptional { group, .. } => ExceptionalTable::global()
                    .orbits(*group)
                    .map(|o| OrbitLabel::exceptional(*group, &o.label))
                    .collect::<Result<_>>()?,
            };
            for o in orbits {
                if !o.is_strictly_above(&config.base_orbit)? {
                    continue;
                }
                let c = half_dim(&o)? - base_half;
                let cusp_ok = kind != FamilyKind::GL || o.partition().is_some_and(|p| p.len() == 1);
                options.push((kind, param, o, c, cusp_ok));
            }
        }
    }
    let mut out = BTreeSet::new();
    let key = |i: usize| (options[i].0, options[i].1, options[i].2.clone());
    let n = options.len();
    for c in (0..n).filter(|&i| options[i].4) {
        for e in 0..n {
            if options[c].3 + options[e].3 == 3 {
                out.insert(vec![key(c), key(e)]);
            }
            for mid in 0..n {
                if options[c].3 + options[mid].3 + options[e].3 == 3 {
                    out.insert(vec![key(c), key(mid), key(e)]);
                }
            }
        }
    }
    Ok(out)
}

pub fn solver_keys(rows: &[SolutionRow]) -> BTreeSet<RowKey> {
    rows.iter().map(|r| canonical(r.key())).collect()
}

pub fn verify_solver_oracle(params: RangeInclusive<u32>) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("solver oracle");
    let rows = classify(2, &ClassifyOptions::with_params(params.clone()))?;
    let solver = solver_keys(&rows);
    let brute = brute_force_keys_m2(params)?;
    rep.expect_eq("row count", solver.len(), brute.len());
    rep.check("row sets equal", solver == brute, "");
    let sums = rows.iter().all(|r| {
        r.contributions.iter().sum::<u64>() == 3
            && r.slots.first().is_some_and(|s| s.role == Role::Cuspidal)
            && r.slots.last().is_some_and(|s| s.role == Role::Eisenstein)
    });
    rep.check("every row sums to m^2 - 1", sums, "");
    Ok(rep)
}

/// Every suite, in a fixed order.
pub fn verify_all(opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    let mut out = vec![verify_roots()?];
    for m in 2..=6 {
        let o = if m >= 4 {
            VerifyOptions {
                params: *opts.params.start()..=(*opts.params.end()).min(5),
                ..opts.clone()
            }
        } else {
            opts.clone()
        };
        out.push(verify_tables(m, &o)?);
    }
    out.push(verify_gl_lower_bound(2..=5, 1..=5)?);
    out.push(verify_prop1(opts.params.clone())?);
    out.push(verify_prop2_suite(opts.params.clone())?);
    out.push(verify_lemma2(8)?);
    out.push(verify_lemex(8)?);
    out.push(verify_weyl(4)?);
    out.push(verify_partitions(12, 14)?);
    out.push(verify_solver_oracle(1..=4)?);
    Ok(out)
}
