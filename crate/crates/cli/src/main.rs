mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fanfree::bounds::{check_against_bounds, nonexistence_argument, Subject, Verdict};
use fanfree::constructions::{generate, ConstructionError, Family, GeneratorSpec};
use fanfree::crossings::{crossing_relation, find_k_fans, validate_simplicity};
use fanfree::decompose::audit;
use fanfree::io::{self, read_drawing, to_document, with_schema, write};
use fanfree::repro::{self, ReproOptions};
use fanfree::star::{max_arrows, verify_base_cases, SearchError, SearchFilter, SearchOptions, DEFAULT_BUDGET};
use fanfree::Drawing;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "fanfree", version, about = "Exact tools for k-fan-crossing free drawings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a verified construction.
    Gen(GenArgs),
    /// List every k-fan crossing of a drawing.
    Check(CheckArgs),
    /// Decompose a drawing and audit every face against its arrow bound.
    Audit(AuditArgs),
    /// Exhaustive search for the largest fan-free m-star.
    StarSearch(StarArgs),
    /// Compare against the closed-form edge bounds.
    Bounds(BoundsArgs),
    /// Render a straight-line drawing as SVG.
    Render(RenderArgs),
    /// Run the whole reproduction battery.
    Repro(ReproArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    side: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Write the witnesses as JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Directory for counterexamples.
    #[arg(long, default_value = "counterexamples")]
    archive: PathBuf,
}

#[derive(Args)]
struct StarArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, conflicts_with = "class")]
    long_only: bool,
    /// Vertex classification `H,L,V`.
    #[arg(long, value_parser = parse_class)]
    class: Option<(usize, usize, usize)>,
    #[arg(long)]
    budget: Option<u64>,
    /// Keep one witness per symmetry class of extremal stars.
    #[arg(long)]
    all: bool,
    /// Search without the rotation/reflection reduction.
    #[arg(long)]
    no_symmetry: bool,
    /// Run the nine base-case rows for `--k` instead of a single search.
    #[arg(long, conflicts_with_all = ["m", "class", "long_only"])]
    base_cases: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long)]
    straight: bool,
    #[arg(long)]
    input: Option<PathBuf>,
    /// Print the nonexistence arithmetic for n = 7 or 9.
    #[arg(long)]
    nonexistence: bool,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproArgs {
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = ReproOptions::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = ReproOptions::default().max_n)]
    max_n: usize,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value = "counterexamples")]
    archive: PathBuf,
}

fn parse_class(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [h, l, v] => Ok((h, l, v)),
        _ => Err("expected H,L,V".into()),
    }
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        usage(e)
    }
}

type Outcome = Result<u8, Failure>;

fn budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("FANFREE_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("FANFREE_BUDGET is not a node count: `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => Ok(write(p, text)?),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(a: GenArgs) -> Outcome {
    let spec = GeneratorSpec {
        family: a.family,
        n: a.n,
        k: a.k,
        q: a.q,
        side: a.side,
        rows: a.rows,
        cols: a.cols,
    };
    let d = generate(&spec).map_err(|e| match e {
        ConstructionError::Domain { .. } | ConstructionError::MissingParam { .. } => usage(&e),
        other => Failure {
            code: EXIT_VIOLATION,
            message: other.to_string(),
        },
    })?;
    let provenance = format!("gen --family {}", a.family);
    emit(a.out.as_deref(), &io::drawing_to_string(&d, &provenance))?;
    if a.out.is_some() {
        eprintln!("{}: n = {}, {} edges", a.family, d.graph().n(), d.graph().edge_count());
    }
    Ok(0)
}

fn cmd_check(a: CheckArgs) -> Outcome {
    if a.k < 2 {
        return Err(usage("k must be at least 2"));
    }
    let d = read_drawing(&a.input)?.drawing;
    if let Drawing::Straight(s) = &d {
        let report = validate_simplicity(s);
        if !report.ok {
            for v in &report.violations {
                println!("not simple: {v}");
            }
            if let Some(p) = &a.json {
                write(
                    p,
                    &to_document(&report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
                )?;
            }
            return Ok(EXIT_VIOLATION);
        }
    }
    let rel = crossing_relation(&d).map_err(usage)?;
    let fans = find_k_fans(d.graph(), &rel, a.k).map_err(usage)?;
    for w in &fans {
        println!("{w}");
    }
    if fans.is_empty() {
        println!(
            "{}-fan-crossing free: n = {}, {} edges, {} crossings",
            a.k,
            d.graph().n(),
            d.graph().edge_count(),
            rel.len()
        );
    } else {
        println!("{} witness(es) for k = {}", fans.len(), a.k);
    }
    if let Some(p) = &a.json {
        let body = serde_json::json!({
            "k": a.k,
            "fan_free": fans.is_empty(),
            "witnesses": fans.iter().map(|w| serde_json::json!({
                "crosser": w.crosser, "apex": w.apex, "fan": w.fan
            })).collect::<Vec<_>>(),
        });
        write(p, &to_document(&body))?;
    }
    Ok(if fans.is_empty() { 0 } else { EXIT_VIOLATION })
}

fn archive(dir: &Path, name: &str, body: &serde_json::Value) -> Result<PathBuf, Failure> {
    std::fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(format!("{name}.json"));
    write(&path, &serde_json::to_string_pretty(body).expect("json"))?;
    Ok(path)
}

fn cmd_audit(a: AuditArgs) -> Outcome {
    let loaded = read_drawing(&a.input)?;
    let report = audit(&loaded.drawing, a.k).map_err(usage)?;
    if let Some(p) = &a.report {
        write(p, &to_document(&report))?;
    }
    println!(
        "n = {}, |E| = {}, |H| = {}, |K| = {}, faces = {}, components = {}, fan-free = {}",
        report.n,
        report.edges,
        report.plane.len(),
        report.excluded.len(),
        report.faces_count,
        report.components,
        report.fan_free
    );
    if report.faces_traced {
        let tight = report.faces.iter().filter(|f| f.arrows as i64 == f.bound).count();
        println!(
            "faces pass: {}/{} ({} tight); sum m(f) = 2|H|: {}; sum (p(f)-1) = p-1: {}; Euler: {}",
            report.faces.iter().filter(|f| f.pass).count(),
            report.faces.len(),
            tight,
            report.complexity_sum_ok,
            report.chain_sum_ok,
            report.euler_ok
        );
    } else {
        println!("no embedding: only the global edge bound was checked");
    }
    println!(
        "2|E| = {} <= {}: {}",
        2 * report.edges,
        report.global_bound,
        report.global_ok
    );
    if !report.falsifications.is_empty() {
        let body = serde_json::json!({
            "schema": io::SCHEMA,
            "events": report.falsifications,
            "drawing": io::drawing_to_value(&loaded.drawing, &loaded.provenance),
        });
        let stem = a.input.file_stem().and_then(|s| s.to_str()).unwrap_or("input");
        let path = archive(&a.archive, &format!("{stem}-audit"), &body)?;
        println!("FALSIFICATION EVENT: counterexample archived at {}", path.display());
        for e in &report.falsifications {
            println!("  {}: {}", e.kind, e.detail);
        }
        return Ok(EXIT_VIOLATION);
    }
    Ok(0)
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::Inconclusive { .. } => Failure {
            code: EXIT_INCONCLUSIVE,
            message: format!("inconclusive: {e}"),
        },
        other => usage(other),
    }
}

fn cmd_star(a: StarArgs) -> Outcome {
    let opts = SearchOptions {
        budget: budget(a.budget)?,
        collect_all: a.all,
        symmetry: !a.no_symmetry,
    };
    if a.base_cases {
        let rows = verify_base_cases(a.k, opts).map_err(search_failure)?;
        let mut all = true;
        for r in &rows {
            all &= r.matches;
            let witness = r.witness.as_ref().map_or(String::from("-"), |w| w.to_string());
            println!(
                "A({},{},{}) = {} formula {} bound {} {} {}",
                r.heavy,
                r.light,
                r.void,
                r.searched.map_or("none".into(), |v| v.to_string()),
                r.formula,
                r.bound,
                if r.matches { "match" } else { "MISMATCH" },
                witness
            );
        }
        if let Some(p) = &a.json {
            write(p, &to_document(&serde_json::json!({ "k": a.k, "rows": rows })))?;
        }
        return Ok(if all { 0 } else { EXIT_VIOLATION });
    }
    let m =
        a.m.ok_or_else(|| usage("--m is required unless --base-cases is given"))?;
    let filter = match (a.long_only, a.class) {
        (true, _) => SearchFilter::LongOnly,
        (false, Some((heavy, light, void))) => SearchFilter::Class { heavy, light, void },
        (false, None) => SearchFilter::All,
    };
    let out = max_arrows(m, a.k, filter, opts).map_err(search_failure)?;
    match out.maximum {
        Some(v) => println!("{v}"),
        None => println!("none"),
    }
    for w in &out.witnesses {
        eprintln!("witness: {w}");
    }
    eprintln!("{} nodes", out.nodes);
    if let Some(p) = &a.json {
        write(p, &to_document(&out))?;
    }
    Ok(0)
}

fn cmd_bounds(a: BoundsArgs) -> Outcome {
    if a.nonexistence {
        let n = a.n.ok_or_else(|| usage("--n is required"))?;
        let facts = nonexistence_argument(n).map_err(usage)?;
        println!("{}", to_document(&facts));
        return Ok(if facts.holds() { 0 } else { EXIT_VIOLATION });
    }
    let report = match &a.input {
        Some(path) => {
            let d = read_drawing(path)?.drawing;
            check_against_bounds(Subject::Drawing(&d), a.k, a.straight).map_err(usage)?
        }
        None => {
            let n = a.n.ok_or_else(|| usage("give --n or --input"))?;
            if n < 3 {
                return Err(usage(format!("bounds need n >= 3, got {n}")));
            }
            let g = fanfree::Graph::empty(n).map_err(usage)?;
            check_against_bounds(Subject::Graph(&g), a.k, a.straight).map_err(usage)?
        }
    };
    if report.upper_bound.is_none() {
        return Err(usage(format!("bounds need n >= 3, got {}", report.n)));
    }
    println!("{}", to_document(&report));
    Ok(if report.verdict == Verdict::FalsificationEvent {
        EXIT_VIOLATION
    } else {
        0
    })
}

fn cmd_render(a: RenderArgs) -> Outcome {
    let d = read_drawing(&a.input)?.drawing;
    let s = d
        .as_straight()
        .ok_or_else(|| usage("render needs a drawing with coordinates"))?;
    let text = render::svg(s);
    match &a.out {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_repro(a: ReproArgs) -> Outcome {
    let opts = ReproOptions {
        budget: budget(a.budget)?,
        seed: a.seed,
        max_n: a.max_n,
        ..ReproOptions::default()
    };
    let report = repro::run(&opts);
    for row in &report.criteria {
        println!("{row}");
    }
    for (i, c) in report.counterexamples.iter().enumerate() {
        let path = archive(&a.archive, &format!("{:03}-{}", i, c.label), &with_schema(c))?;
        println!(
            "FALSIFICATION EVENT: {} ({}) archived at {}",
            c.label,
            c.reason,
            path.display()
        );
    }
    if let Some(p) = &a.json {
        write(p, &to_document(&report))?;
    }
    println!("overall: {}", report.status());
    Ok(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Check(a) => cmd_check(a),
        Command::Audit(a) => cmd_audit(a),
        Command::StarSearch(a) => cmd_star(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Render(a) => cmd_render(a),
        Command::Repro(a) => cmd_repro(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
