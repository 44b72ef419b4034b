use std::fmt::Write as _;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use glint_core::catalog::{FamilyKind, FamilyRegistry};
use glint_core::inducing::{
    classify_inducing_data, induce, label_row_default, lemma2_closed_form, Lemma2Case,
};
use glint_core::solver::{classify, ClassifyOptions, SolutionRow};
use glint_core::tables::{enumerate_tables, row_summary, to_markdown};
use glint_core::verify::{verify_all, verify_roots, SuiteReport, VerifyOptions};
use glint_core::weyl::{check_context, AdmissibilityContext};
use glint_core::{
    contribution, half_dim, orbit_dim, ClassicalFamily, ClassicalType, OrbitLabel, Partition,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "glint",
    version,
    about = "Dimension equations for global integrals on GL_m"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Emit::Markdown)]
    emit: Emit,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Markdown,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of a unipotent orbit.
    OrbitDim(OrbitDimArgs),
    /// Orbit of an Eisenstein series from its inducing orbits.
    Induce(InduceArgs),
    /// All maximal-parabolic inducing data for a two-row target.
    Inducing(InducingArgs),
    /// Solve the dimension equation for GL_m.
    Classify(ClassifyArgs),
    /// Solve and match against the tables.
    Tables(SolveArgs),
    /// Nonvanishing labels for m = 2 rows.
    Label(SolveArgs),
    /// Admissible Weyl elements in GL_2p.
    Weyl(WeylArgs),
    /// Root-system fixtures for E6 and E7.
    VerifyRoots,
    /// Every verification suite.
    VerifyAll(VerifyArgs),
}

#[derive(Args, Debug)]
struct OrbitDimArgs {
    /// Family name: gl, gsp, gso, ge6, ge7.
    #[arg(long)]
    group: String,
    /// Orbit: a partition such as 4,2 or a label such as E7(a1).
    #[arg(long)]
    orbit: String,
    /// Size of the natural representation of a classical group.
    #[arg(long, conflicts_with_all = ["param", "m"])]
    size: Option<u32>,
    /// Family parameter; with --m, also reports the contribution.
    #[arg(long)]
    param: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Args, Debug)]
struct InduceArgs {
    /// gl, gsp or gso.
    #[arg(long)]
    group: String,
    #[arg(long)]
    tau1: String,
    #[arg(long, default_value = "")]
    tau2: String,
}

#[derive(Args, Debug)]
struct InducingArgs {
    /// gl (GL_2p), gsp (GSp_{4p+2}) or gso (GSO_4p).
    #[arg(long)]
    group: String,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    target: String,
}

#[derive(Args, Debug, Clone)]
struct SolveArgs {
    #[arg(long)]
    m: u32,
    /// Parameter range, e.g. 1..6.
    #[arg(long, default_value = "1..6", value_parser = parse_range)]
    params: RangeInclusive<u32>,
    #[arg(long)]
    l_max: Option<usize>,
    #[arg(long)]
    allow_open_regime: bool,
    #[arg(long)]
    disable_lemma1: bool,
}

impl SolveArgs {
    fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            params: self.params.clone(),
            l_max: self.l_max,
            allow_open_regime: self.allow_open_regime,
            disable_lemma1: self.disable_lemma1,
        }
    }
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    solve: SolveArgs,
    /// Keep only rows whose slots all use these families.
    #[arg(long, value_delimiter = ',')]
    group: Vec<String>,
}

#[derive(Args, Debug)]
struct WeylArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    r: usize,
    /// List admissible representatives and the w_q.
    #[arg(long)]
    list: bool,
    /// Compare admissible cosets with the w_q.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "1..6", value_parser = parse_range)]
    params: RangeInclusive<u32>,
    #[arg(long)]
    disable_lemma1: bool,
    #[arg(long)]
    allow_open_regime: bool,
    /// Run the table suite only for this m.
    #[arg(long)]
    m: Option<u32>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u32 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end in {s:?}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("range {s:?} must be nonempty and positive"));
    }
    Ok(lo..=hi)
}

enum Failure {
    Usage(String),
    Verification,
    Io(String),
}

impl From<glint_core::Error> for Failure {
    fn from(e: glint_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    json: Value,
    markdown: String,
    ok: bool,
}

fn header(cmd: &str) -> String {
    format!("glint {VERSION} {cmd}\n\n")
}

fn classical_type(group: &str) -> Result<ClassicalType, Failure> {
    group.parse::<ClassicalType>().map_err(Failure::from)
}

fn parse_orbit(family: FamilyKind, size: Option<u32>, text: &str) -> Result<OrbitLabel, Failure> {
    match family.exceptional_group() {
        Some(g) => Ok(OrbitLabel::exceptional(g, text)?),
        None => {
            let ty = family.classical_type().expect("classical family");
            let partition: Partition = text.parse()?;
            let size = size.unwrap_or(partition.size());
            Ok(OrbitLabel::classical(
                ClassicalFamily::new(ty, size)?,
                partition,
            )?)
        }
    }
}

fn orbit_dim_cmd(a: &OrbitDimArgs) -> Result<Output, Failure> {
    let family = FamilyRegistry::global().get(&a.group)?;
    let kind = family.kind();
    let (orbit, config) = match a.m {
        Some(m) => {
            let config = family.instantiate(a.param, m)?;
            let size = config.classical_family().map(|f| f.size);
            (parse_orbit(kind, size, &a.orbit)?, Some(config))
        }
        None => (parse_orbit(kind, a.size, &a.orbit)?, None),
    };
    let dim = orbit_dim(&orbit)?;
    let half = half_dim(&orbit)?;
    let mut json = json!({ "orbit": orbit.to_string(), "dim": dim, "half_dim": half });
    let mut md = format!("{orbit}: dim {dim}, half {half}\n");
    if let Some(config) = config {
        let c = contribution(&config.base_orbit, &orbit)?;
        json["group"] = json!(config.group_name());
        json["base"] = json!(config.base_orbit.to_string());
        json["dim_U"] = json!(config.dim_u);
        json["contribution"] = json!(c);
        let _ = writeln!(md, "{config}: dim U {}, contribution {c}", config.dim_u);
    }
    Ok(Output {
        json,
        markdown: md,
        ok: true,
    })
}

fn induce_cmd(a: &InduceArgs) -> Result<Output, Failure> {
    let ty = classical_type(&a.group)?;
    let tau1: Partition = a.tau1.parse()?;
    let tau2: Partition = a.tau2.parse()?;
    let r = induce(ty, &tau1, &tau2);
    let md = format!(
        "{} in {}{}\n",
        r.partition,
        r.group,
        if r.valid {
            ""
        } else {
            " (not a valid partition; needs a collapse)"
        }
    );
    Ok(Output {
        json: json!({ "group": r.group.to_string(), "partition": r.partition, "valid": r.valid }),
        markdown: md,
        ok: true,
    })
}

fn inducing_cmd(a: &InducingArgs) -> Result<Output, Failure> {
    let ty = classical_type(&a.group)?;
    let p = a.p;
    let group = match ty {
        ClassicalType::GL => ClassicalFamily::gl(2 * p),
        ClassicalType::GSp => ClassicalFamily::gsp(4 * p + 2),
        ClassicalType::GSO => ClassicalFamily::gso(4 * p),
    };
    let target: Partition = a.target.parse()?;
    let data = classify_inducing_data(group, &target)?;
    let case = Lemma2Case::ALL
        .into_iter()
        .find(|c| c.group(p) == group && c.target(p).as_ref() == Some(&target));
    let closed = match case {
        Some(c) => Some(lemma2_closed_form(c, p)? == data),
        None => None,
    };
    let mut md = format!("{target} in {group}: {} data\n\n", data.len());
    md.push_str("| Levi | a | i | tau1 | tau2 | odd |\n|---|---|---|---|---|---|\n");
    for d in &data {
        let _ = writeln!(
            md,
            "| {} | {} | {} | {} | {} | {} |",
            d.levi(),
            d.a,
            d.i,
            d.tau1,
            d.tau2,
            d.descriptor().is_odd()
        );
    }
    if let (Some(c), Some(eq)) = (case, closed) {
        let _ = writeln!(
            md,
            "\nclosed form case {}: {}",
            c.number(),
            if eq { "equal" } else { "MISMATCH" }
        );
    }
    Ok(Output {
        json: json!({
            "group": group.to_string(),
            "target": target,
            "case": case.map(|c| c.number()),
            "matches_closed_form": closed,
            "data": data,
        }),
        markdown: md,
        ok: closed != Some(false),
    })
}

fn rows_markdown(rows: &[SolutionRow]) -> String {
    let mut md = String::new();
    for r in rows {
        let _ = writeln!(md, "- {}", row_summary(r));
    }
    md
}

fn classify_cmd(a: &ClassifyArgs) -> Result<Output, Failure> {
    let opts = a.solve.options();
    let m = a.solve.m;
    if a.group.is_empty() {
        let set = enumerate_tables(m, &opts)?;
        let rows = classify(m, &opts)?;
        let ok = set.all_matched();
        let mut md = format!("{} rows for GL_{m}\n\n", rows.len());
        md.push_str(&rows_markdown(&rows));
        let _ = writeln!(
            md,
            "\ntables: {}",
            if ok { "all matched" } else { "MISMATCH" }
        );
        return Ok(Output {
            json: json!({ "m": m, "rows": rows, "tables_matched": ok, "unexpected": set.unexpected.len() }),
            markdown: md,
            ok,
        });
    }
    let kinds = a
        .group
        .iter()
        .map(|g| FamilyRegistry::global().get(g).map(|f| f.kind()))
        .collect::<glint_core::Result<Vec<_>>>()?;
    let rows: Vec<SolutionRow> = classify(m, &opts)?
        .into_iter()
        .filter(|r| r.slots.iter().all(|s| kinds.contains(&s.config.family)))
        .collect();
    let mut md = format!(
        "{} rows for GL_{m} using {}\n\n",
        rows.len(),
        a.group.join(",")
    );
    md.push_str(&rows_markdown(&rows));
    Ok(Output {
        json: json!({ "m": m, "groups": a.group, "rows": rows }),
        markdown: md,
        ok: true,
    })
}

fn tables_cmd(a: &SolveArgs) -> Result<Output, Failure> {
    let set = enumerate_tables(a.m, &a.options())?;
    Ok(Output {
        json: serde_json::to_value(&set).expect("serializable"),
        markdown: to_markdown(&set),
        ok: set.all_matched(),
    })
}

fn label_cmd(a: &SolveArgs) -> Result<Output, Failure> {
    let rows = classify(a.m, &a.options())?
        .iter()
        .map(label_row_default)
        .collect::<glint_core::Result<Vec<_>>>()?;
    let mut md = String::new();
    for r in &rows {
        let _ = writeln!(md, "- {:?}: {}", r.status, row_summary(r));
    }
    Ok(Output {
        json: json!({ "m": a.m, "rows": rows }),
        markdown: md,
        ok: true,
    })
}

fn weyl_cmd(a: &WeylArgs) -> Result<Output, Failure> {
    let ctx = AdmissibilityContext::new(a.p, a.r)?;
    let rep = check_context(ctx.p, ctx.r)?;
    let mut md = format!(
        "GL_{} with Levi GL_{} x GL_{}: {} admissible cosets, expected {}\n",
        ctx.n(),
        ctx.r,
        ctx.n() - ctx.r,
        rep.admissible.len(),
        rep.count_expected
    );
    if a.list || !a.check {
        md.push_str("\nadmissible:\n");
        for w in &rep.admissible {
            let _ = writeln!(md, "- {w}");
        }
        md.push_str("\nw_q:\n");
        for (q, w) in rep.wq.iter().enumerate() {
            let _ = writeln!(md, "- q={q}: {w}");
        }
    }
    let _ = writeln!(
        md,
        "\nw_q parameterize the admissible cosets: {}",
        rep.holds()
    );
    Ok(Output {
        json: serde_json::to_value(&rep).expect("serializable"),
        markdown: md,
        ok: !a.check || rep.holds(),
    })
}

fn suites_output(reports: Vec<SuiteReport>) -> Output {
    let ok = reports.iter().all(SuiteReport::passed);
    let mut md = String::new();
    for r in &reports {
        let passed = r.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            md,
            "{} {} ({passed}/{})",
            if r.passed() { "PASS" } else { "FAIL" },
            r.suite,
            r.checks.len()
        );
        for c in r.failures() {
            let _ = writeln!(md, "  - {}: {}", c.name, c.detail);
        }
    }
    let _ = writeln!(md, "\n{}", if ok { "all suites passed" } else { "FAILED" });
    Output {
        json: json!({ "passed": ok, "suites": reports }),
        markdown: md,
        ok,
    }
}

fn verify_all_cmd(a: &VerifyArgs) -> Result<Output, Failure> {
    let opts = VerifyOptions {
        params: a.params.clone(),
        disable_lemma1: a.disable_lemma1,
        allow_open_regime: a.allow_open_regime,
    };
    let mut reports = verify_all(&opts)?;
    if let Some(m) = a.m {
        reports.retain(|r| !r.suite.starts_with("tables m=") || r.suite == format!("tables m={m}"));
    }
    let mut out = suites_output(reports);
    if a.allow_open_regime {
        let ms: Vec<u32> = a.m.map_or_else(|| (4..=6).collect(), |m| vec![m]);
        let mut rows = Vec::new();
        for m in ms.into_iter().filter(|&m| m >= 4) {
            let set = enumerate_tables(
                m,
                &ClassifyOptions {
                    params: a.params.clone(),
                    allow_open_regime: true,
                    ..ClassifyOptions::default()
                },
            )?;
            rows.extend(set.open_regime);
        }
        let _ = writeln!(
            out.markdown,
            "\nopen regime, vanishing unknown ({} rows):",
            rows.len()
        );
        out.markdown.push_str(&rows_markdown(&rows));
        out.json["open_regime"] = json!(rows);
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::OrbitDim(a) => orbit_dim_cmd(a),
        Command::Induce(a) => induce_cmd(a),
        Command::Inducing(a) => inducing_cmd(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Tables(a) => tables_cmd(a),
        Command::Label(a) => label_cmd(a),
        Command::Weyl(a) => weyl_cmd(a),
        Command::VerifyRoots => Ok(suites_output(vec![verify_roots()?])),
        Command::VerifyAll(a) => verify_all_cmd(a),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::OrbitDim(_) => "orbit-dim",
        Command::Induce(_) => "induce",
        Command::Inducing(_) => "inducing",
        Command::Classify(_) => "classify",
        Command::Tables(_) => "tables",
        Command::Label(_) => "label",
        Command::Weyl(_) => "weyl",
        Command::VerifyRoots => "verify-roots",
        Command::VerifyAll(_) => "verify-all",
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), Failure> {
    let name = command_name(&cli.command);
    let text = match cli.emit {
        Emit::Json => {
            let doc =
                json!({ "glint": VERSION, "command": name, "ok": out.ok, "result": out.json });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Emit::Markdown => header(name) + &out.markdown,
    };
    let res = match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    res.map_err(Failure::Io)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out)?;
        if out.ok {
            Ok(())
        } else {
            Err(Failure::Verification)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("io error: {msg}");
            ExitCode::from(3)
        }
    }
}
