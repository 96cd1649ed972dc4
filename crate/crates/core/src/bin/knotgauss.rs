use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use knotgauss::codes::{build_diagram, parse_gauss_code, parse_pd_code, to_pd_code, KnotDiagram, Sign};
use knotgauss::constructions::{
    braid_closure, pretzel_diagram, torus_braid_diagram, twist_knot_diagram, whitehead_double, TwistVariant,
};
use knotgauss::enumerate::{
    extremal_search, map_diagrams, sample_loop_signature, verify_theorem, DiagramFilter, Objective, TheoremId,
};
use knotgauss::fixtures::fixture;
use knotgauss::gauss::GaussDiagram;
use knotgauss::invariants::{invariant_report, linked_pairs};
use knotgauss::oracles::{conway, jones, signature_and_det, vassiliev_from_jones};
use knotgauss::planar::{
    apply_t2bar, connected_sum, find_clasps, loop_move, reduce, resolve_clasp, LoopPass, PositivityStatus, Side,
};
use knotgauss::KnotError;

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "knotgauss", version, about = "Gauss diagram invariants of knot diagrams")]
struct Cli {
    /// Worker threads for enumeration
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Signed Gauss code, or PD code of X[a,b,c,d] terms
    #[arg(long, conflicts_with = "fixture")]
    code: Option<String>,
    /// Name from the fixture table
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Gauss-sum invariants of one diagram
    Compute {
        #[command(flatten)]
        input: Input,
        /// Comma-separated subset of v2,v3,lk,genus,writhe,status,linked,clasps,pd
        #[arg(long, value_delimiter = ',')]
        invariants: Vec<String>,
    },
    /// Polynomial invariants and signature
    Oracle {
        #[command(flatten)]
        input: Input,
    },
    /// Generate a diagram from a family
    Make {
        /// Twist knot with n crossings
        #[arg(long, conflicts_with_all = ["pretzel", "torus", "braid"])]
        twist: Option<usize>,
        #[arg(long, value_enum, default_value_t = VariantArg::Alt)]
        variant: VariantArg,
        /// Pretzel parameters, e.g. -2,3,7
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        pretzel: Option<Vec<i64>>,
        /// Torus knot p,q as a braid closure
        #[arg(long, value_delimiter = ',')]
        torus: Option<Vec<usize>>,
        /// Braid word as signed generator indices, e.g. 1,-2,1,-2
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "strands")]
        braid: Option<Vec<i32>>,
        /// Strand count for --braid
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Untwisted Whitehead double
    Double {
        #[command(flatten)]
        input: Input,
        /// Clasp sign, + or -
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        clasp: Sign,
    },
    /// Apply a diagram move
    Move {
        #[command(flatten)]
        input: Input,
        /// Move to apply
        #[arg(long, value_enum)]
        op: MoveOp,
        /// Crossing (1-based label) or clasp index
        #[arg(long)]
        at: Option<usize>,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = PassArg::Over)]
        pass: PassArg,
        /// Second summand for the connected sum
        #[arg(long)]
        with: Option<String>,
    },
    /// Enumerate diagrams by crossing number
    Enumerate {
        /// Inclusive range a..b or a single value
        #[arg(long, value_parser = parse_range)]
        crossings: (usize, usize),
        /// positive, almost-positive, negatives=k, connected, reduced, bireduced, no-clasp
        #[arg(long, value_delimiter = ',')]
        filter: Vec<String>,
        #[arg(long, value_enum, default_value_t = Emit::Count)]
        emit: Emit,
        #[arg(long, value_enum)]
        objective: Option<ObjectiveArg>,
    },
    /// Check a statement over all small diagrams
    Verify {
        /// th1, th2, th3, lm2, lk43, t2bar or sigma
        #[arg(long, required_unless_present = "property")]
        theorem: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        /// Sampled property: loop-signature
        #[arg(long)]
        property: Option<String>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Also write the report to this file
        #[arg(long)]
        report: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Alt,
    Apu,
}

#[derive(Clone, Copy, ValueEnum)]
enum MoveOp {
    Reduce,
    T2bar,
    ResolveClasp,
    Loop,
    Sum,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum PassArg {
    Over,
    Under,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Count,
    Codes,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    MaxLkV2,
    MinV3,
    MinV2,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "+1" | "1" | "positive" => Ok(Sign::Positive),
        "-" | "-1" | "negative" => Ok(Sign::Negative),
        _ => Err(format!("expected + or -, got {s}")),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok((a, b))
        }
        None => parse(s).map(|a| (a, a)),
    }
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(String),
    Verification(Value),
}

impl From<KnotError> for Failure {
    fn from(e: KnotError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_code(text: &str) -> Result<KnotDiagram, KnotError> {
    let t = text.trim();
    if t.contains('X') || t.starts_with('[') {
        parse_pd_code(t)
    } else {
        build_diagram(&parse_gauss_code(t)?)
    }
}

fn load(input: &Input) -> Result<KnotDiagram, Failure> {
    match (&input.code, &input.fixture) {
        (Some(c), _) => Ok(read_code(c)?),
        (None, Some(f)) => Ok(fixture(f)?),
        (None, None) => Err(Failure::Usage("one of --code or --fixture is required".into())),
    }
}

fn diagram_json(d: &KnotDiagram) -> Value {
    json!({ "code": d.code().to_string(), "c": d.crossing_count() })
}

fn compute(d: &KnotDiagram, wanted: &[String]) -> Result<Value, Failure> {
    let r = invariant_report(d);
    let all = ["v2", "v3", "lk", "genus", "writhe", "status"];
    let wanted: Vec<&str> = if wanted.is_empty() { all.to_vec() } else { wanted.iter().map(|s| s.as_str()).collect() };
    let mut out = serde_json::Map::new();
    out.insert("code".into(), json!(d.code().to_string()));
    out.insert("c".into(), json!(r.c));
    for w in wanted {
        match w {
            "v2" => out.insert("v2".into(), json!(r.v2)),
            "v3" => out.insert("v3".into(), json!(r.v3)),
            "lk" => out.insert("lk".into(), json!(r.lk)),
            "genus" => {
                out.insert("s".into(), json!(r.s));
                out.insert("g".into(), json!(r.g))
            }
            "writhe" => out.insert("writhe".into(), json!(r.writhe)),
            "status" => out.insert("status".into(), json!(r.status)),
            "linked" => {
                let g = GaussDiagram::from_diagram(d);
                out.insert("linked".into(), serde_json::to_value(linked_pairs(&g)).expect("serializable"))
            }
            "clasps" => out.insert("clasps".into(), serde_json::to_value(find_clasps(d)).expect("serializable")),
            "pd" => out.insert("pd".into(), json!(to_pd_code(d))),
            other => return Err(Failure::Usage(format!("unknown invariant {other}"))),
        };
    }
    Ok(Value::Object(out))
}

fn oracle(d: &KnotDiagram) -> Result<Value, Failure> {
    let v = jones(d)?;
    let (v2, v3) = vassiliev_from_jones(&v)?;
    let nabla = conway(d)?;
    let sd = signature_and_det(d)?;
    Ok(json!({
        "code": d.code().to_string(),
        "jones": v.to_string(),
        "jones_terms": v,
        "conway": nabla.coeffs(),
        "alexander": nabla.alexander().to_string(),
        "v2": v2,
        "v3": v3,
        "det_signed": sd.det_signed,
        "det": sd.det_abs(),
        "sigma_paper": sd.sigma_paper,
        "sigma": sd.sigma_standard(),
    }))
}

fn make(
    twist: Option<usize>,
    variant: VariantArg,
    pretzel: Option<Vec<i64>>,
    torus: Option<Vec<usize>>,
    braid: Option<Vec<i32>>,
    strands: Option<usize>,
) -> Result<Value, Failure> {
    let d = if let Some(n) = twist {
        let v = match variant {
            VariantArg::Alt => TwistVariant::Alternating,
            VariantArg::Apu => TwistVariant::AlmostPositiveUnknot,
        };
        twist_knot_diagram(n, v)?
    } else if let Some(p) = pretzel {
        pretzel_diagram(&p)?
    } else if let Some(t) = torus {
        if t.len() != 2 {
            return Err(Failure::Usage("--torus takes p,q".into()));
        }
        torus_braid_diagram(t[0], t[1])?
    } else if let Some(w) = braid {
        braid_closure(strands.unwrap_or(0), &w)?
    } else {
        return Err(Failure::Usage("one of --twist, --pretzel, --torus, --braid is required".into()));
    };
    Ok(diagram_json(&d))
}

fn apply_move(d: &KnotDiagram, op: MoveOp, at: Option<usize>, side: SideArg, pass: PassArg, with: Option<&str>) -> Result<Value, Failure> {
    let crossing = || -> Result<usize, Failure> {
        match at {
            Some(k) if k >= 1 => Ok(k - 1),
            _ => Err(Failure::Usage("--at <crossing label> is required".into())),
        }
    };
    let out = match op {
        MoveOp::Reduce => diagram_json(&reduce(d)),
        MoveOp::T2bar => diagram_json(&apply_t2bar(d, crossing()?)?),
        MoveOp::ResolveClasp => {
            let clasps = find_clasps(d);
            let i = at.unwrap_or(0);
            let clasp = clasps.get(i).ok_or(KnotError::OutOfRange { id: i, len: clasps.len() })?;
            diagram_json(&resolve_clasp(d, clasp)?)
        }
        MoveOp::Loop => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let pass = match pass {
                PassArg::Over => LoopPass::Over,
                PassArg::Under => LoopPass::Under,
            };
            let o = loop_move(&GaussDiagram::from_diagram(d), crossing()?, side, pass)?;
            let e = o.diagram.to_diagram()?;
            let mut v = diagram_json(&e);
            v["switched"] = json!(o.switched.iter().map(|x| x + 1).collect::<Vec<_>>());
            v
        }
        MoveOp::Sum => {
            let other = with.ok_or_else(|| Failure::Usage("--with <code> is required".into()))?;
            diagram_json(&connected_sum(d, &read_code(other)?))
        }
    };
    Ok(out)
}

fn build_filter(range: (usize, usize), flags: &[String]) -> Result<DiagramFilter, Failure> {
    let mut f = DiagramFilter::new(None, range.0..=range.1);
    for flag in flags {
        match flag.as_str() {
            "positive" => f.positivity = Some(PositivityStatus::Positive),
            "almost-positive" => f.positivity = Some(PositivityStatus::AlmostPositive),
            "connected" => f.connected = true,
            "reduced" => f.reduced = true,
            "bireduced" => f.bireduced = true,
            "no-clasp" => f.no_clasp = true,
            other => match other.strip_prefix("negatives=").map(str::parse::<usize>) {
                Some(Ok(k)) => f.positivity = Some(PositivityStatus::from_negatives(k)),
                _ => return Err(Failure::Usage(format!("unknown filter {other}"))),
            },
        }
    }
    Ok(f)
}

#[derive(Serialize)]
struct CsvRow {
    code: String,
    c: usize,
    s: usize,
    g: usize,
    lk: usize,
    v2: i64,
    v3: i64,
    writhe: i64,
    status: String,
}

fn status_label(s: PositivityStatus) -> String {
    match s {
        PositivityStatus::Positive => "positive".into(),
        PositivityStatus::AlmostPositive => "almost_positive".into(),
        PositivityStatus::KNegative(k) => format!("negative_{k}"),
    }
}

fn enumerate(filter: &DiagramFilter, emit: Emit, objective: Option<ObjectiveArg>) -> Result<Option<Value>, Failure> {
    if let Some(o) = objective {
        let o = match o {
            ObjectiveArg::MaxLkV2 => Objective::MaxLkOverV2,
            ObjectiveArg::MinV3 => Objective::MinV3,
            ObjectiveArg::MinV2 => Objective::MinV2,
        };
        let r = extremal_search(o, filter)?;
        return Ok(Some(json!({ "filter": filter, "extremal": r })));
    }
    match emit {
        Emit::Count => {
            let rows = map_diagrams(filter, |d| Some(d.crossing_count()))?;
            let mut by_c = std::collections::BTreeMap::new();
            for c in rows {
                *by_c.entry(c.to_string()).or_insert(0usize) += 1;
            }
            let total: usize = by_c.values().sum();
            Ok(Some(json!({ "filter": filter, "total": total, "by_crossings": by_c })))
        }
        Emit::Codes => {
            let codes = map_diagrams(filter, |d| Some(d.code().to_string()))?;
            Ok(Some(json!({ "filter": filter, "total": codes.len(), "codes": codes })))
        }
        Emit::Csv => {
            let rows = map_diagrams(filter, |d| {
                let r = invariant_report(d);
                Some(CsvRow {
                    code: d.code().to_string(),
                    c: r.c,
                    s: r.s,
                    g: r.g,
                    lk: r.lk,
                    v2: r.v2,
                    v3: r.v3,
                    writhe: r.writhe,
                    status: status_label(r.status),
                })
            })?;
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            for row in rows {
                w.serialize(row).map_err(|e| Failure::Usage(e.to_string()))?;
            }
            w.flush().map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(None)
        }
    }
}

fn verify(
    theorem: Option<&str>,
    max_c: usize,
    property: Option<&str>,
    samples: usize,
    seed: u64,
) -> Result<(Value, bool), Failure> {
    if let Some(p) = property {
        if p != "loop-signature" {
            return Err(Failure::Usage(format!("unknown property {p}")));
        }
        let r = sample_loop_signature(seed, samples, max_c)?;
        let pass = r.pass();
        return Ok((serde_json::to_value(r).expect("serializable"), pass));
    }
    let id: TheoremId = theorem.unwrap_or_default().parse()?;
    let r = verify_theorem(id, max_c)?;
    let pass = r.pass();
    let mut v = serde_json::to_value(&r).expect("serializable");
    v["pass"] = json!(pass);
    if let Some(o) = v.as_object_mut() {
        o.remove("elapsed_ms");
    }
    Ok((v, pass))
}

fn run(cli: Cli) -> Result<Option<Value>, Failure> {
    let seed = cli.seed;
    match cli.command {
        Command::Compute { input, invariants } => compute(&load(&input)?, &invariants).map(Some),
        Command::Oracle { input } => oracle(&load(&input)?).map(Some),
        Command::Make { twist, variant, pretzel, torus, braid, strands } => {
            make(twist, variant, pretzel, torus, braid, strands).map(Some)
        }
        Command::Double { input, clasp } => {
            let d = whitehead_double(&load(&input)?, clasp)?;
            Ok(Some(diagram_json(&d)))
        }
        Command::Move { input, op, at, side, pass, with } => {
            apply_move(&load(&input)?, op, at, side, pass, with.as_deref()).map(Some)
        }
        Command::Enumerate { crossings, filter, emit, objective } => {
            enumerate(&build_filter(crossings, &filter)?, emit, objective)
        }
        Command::Verify { theorem, max_crossings, property, samples, report } => {
            let (v, pass) = verify(theorem.as_deref(), max_crossings, property.as_deref(), samples, seed)?;
            if let Some(path) = report {
                let text = serde_json::to_string_pretty(&v).expect("serializable");
                std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            if pass {
                Ok(Some(v))
            } else {
                Err(Failure::Verification(v))
            }
        }
    }
}

fn emit_report(command: &[String], payload: Value, start: Instant) {
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "payload": payload,
        "timing": { "elapsed_ms": start.elapsed().as_millis() as u64 },
    });
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{report}");
}

fn main() -> ExitCode {
    let start = Instant::now();
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("knotgauss: {e}");
        }
    }
    let command = argv[1..].to_vec();
    match run(cli) {
        Ok(Some(payload)) => {
            emit_report(&command, payload, start);
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(Failure::Verification(payload)) => {
            emit_report(&command, payload, start);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("knotgauss: {msg}");
            ExitCode::from(2)
        }
    }
}
