use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nonunital::assoc_schemes::{
    encode_graph6, mod2_params, parse_graph6_file, parse_matrix_text, SchemeKind, SchemeMatrix, SchemeParams,
};
use nonunital::e_code::EMatrix;
use nonunital::reproduce::{analyze_code, reproduce, AnalyzeOptions, ReportRecord, SchemeSource, Target};
use nonunital::request::{construction_report, ConstructRequest, RequestVariant, BUILTIN_NAMES};
use nonunital::verify::{self, Suite, VerifyOptions};
use nonunital::{ECode, Error, SearchConfig};

#[derive(Parser, Debug)]
#[command(name = "nonunital", version, about = "Codes over the non-unital ring E: construct, analyse, verify, reproduce")]
struct Cli {
    /// Worker threads for enumeration (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest log2 of a code or message space walked word by word; larger
    /// binary codes switch to the information-set method.
    #[arg(long, global = true, value_name = "LOG2")]
    max_enumeration: Option<usize>,
    /// Aligned text instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Scheme manifest file, or a directory holding manifest.json.
    #[arg(long, global = true, env = "NONUNITAL_SCHEME_DIR")]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a pure, bordered or (xI | yA) code from a scheme and report on it.
    Construct {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Also write the generator matrix (rows over 0abc) to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Report on the code spanned by a generator matrix file.
    Analyze {
        /// Rows over 0abc, one per line; `#` starts a comment.
        file: PathBuf,
        /// Use the span of g, a·g and b·g instead of the left span {x·g}.
        #[arg(long)]
        closure: bool,
        /// Enumerate every codeword (within the cap) and cross-check.
        #[arg(long)]
        enumerate: bool,
    },
    /// Read SRGs or DRTs from graph6 or matrix files and verify them.
    Ingest {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, value_enum, default_value = "srg")]
        kind: KindArg,
        /// Expected parameters `n,k,lambda,mu`; a mismatch exits with 1.
        #[arg(long, value_parser = parse_params)]
        expect: Option<SchemeParams>,
    },
    /// Run self-check suites.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Largest order in the C(M) sweep.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=8))]
        max_n: u8,
    },
    /// Compare computed values with the published ones.
    Reproduce {
        #[arg(value_enum)]
        target: TargetArg,
    },
    /// Write the additive F4 image of a code and its weight enumerators.
    ExportF4 {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Take the code from a generator matrix file instead of a scheme.
        #[arg(long, conflicts_with_all = ["paley_graph", "paley_tournament", "graph6", "matrix", "scheme", "request"])]
        input: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
        /// Enumerator JSON path (default: OUTPUT.enum.json).
        #[arg(long)]
        enumerator: Option<PathBuf>,
    },
    /// Print the addition and multiplication tables of E.
    RingTable,
}

#[derive(Args, Debug)]
struct SchemeArgs {
    #[arg(long, value_name = "Q", group = "source")]
    paley_graph: Option<usize>,
    #[arg(long, value_name = "Q", group = "source")]
    paley_tournament: Option<usize>,
    /// Undirected graph in graph6 format (first graph in the file).
    #[arg(long, value_name = "FILE", group = "source")]
    graph6: Option<PathBuf>,
    /// 0/1 adjacency matrix text file; see --kind.
    #[arg(long, value_name = "FILE", group = "source")]
    matrix: Option<PathBuf>,
    /// Built-in scheme or manifest entry name.
    #[arg(long, value_name = "NAME", group = "source", long_help = format!("Built-in scheme or manifest entry name. Built-ins: {BUILTIN_NAMES}"))]
    scheme: Option<String>,
    /// JSON construction request; replaces all other construction flags.
    #[arg(long, value_name = "FILE", group = "source")]
    request: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long, value_enum, default_value = "pure")]
    variant: VariantArg,
    /// i, ii or iii.
    #[arg(long)]
    case: Option<String>,
    /// Entries r, s, t as three characters over 0abc.
    #[arg(long)]
    rst: Option<String>,
    /// x of (xI | yA), with --variant cm.
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    enumerate: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Srg,
    Drt,
}

impl From<KindArg> for SchemeKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Srg => SchemeKind::Srg,
            KindArg::Drt => SchemeKind::Drt,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Pure,
    Bordered,
    Cm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Graph6,
    Matrix,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Ring,
    Schemes,
    Theorems,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Example1,
    Table4,
    Table5,
    Bounds,
    All,
}

fn parse_params(s: &str) -> Result<SchemeParams, String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [n, k, l, m] => Ok(SchemeParams::new(n, k, l, m)),
        _ => Err("expected four comma-separated integers n,k,lambda,mu".into()),
    }
}

/// Failure kinds and their exit codes.
enum Failure {
    /// A check ran and did not hold: exit 1.
    Verification(String),
    /// Bad input or unusable data: exit 2.
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::NoNonzeroCodewords => "no_nonzero_codewords",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::NotSelfOrthogonal => "not_self_orthogonal",
        Error::NotQsd { .. } => "not_qsd",
        Error::InvalidOrder(..) => "invalid_order",
        Error::NotAScheme { .. } => "not_a_scheme",
        Error::Unsupported(_) => "unsupported",
        Error::Graph6(_) => "graph6",
        Error::Json(_) => "json",
        Error::Io { .. } => "io",
    }
}

struct Ctx {
    config: SearchConfig,
    table: bool,
    source: SchemeSource,
}

fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<(), Error> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("report types serialize"));
}

fn print_record(ctx: &Ctx, rec: &ReportRecord) {
    if !ctx.table {
        print_json(rec);
        return;
    }
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |d| d.to_string());
    let mut lines = vec![("construction", rec.construction.clone())];
    if let Some(s) = &rec.scheme {
        lines.push(("scheme", format!("{} {} ({})", s.kind, s.params, s.origin)));
    }
    if let Some(rst) = &rec.rst {
        lines.push(("r s t", rst.clone()));
    }
    lines.extend([
        ("length", rec.length.to_string()),
        ("log2 size", rec.log2_size.to_string()),
        ("residue / torsion dim", format!("{} / {}", rec.residue_dim, rec.torsion_dim)),
        ("self-orthogonal", rec.self_orthogonal.to_string()),
        ("qsd", rec.qsd.to_string()),
        ("type iv", rec.typeiv.to_string()),
        ("d hamming", opt(rec.d_hamming)),
        ("d lee", opt(rec.d_lee)),
        ("type iv bound / old bound", format!("{} / {}", rec.typeiv_bound, rec.old_bound)),
    ]);
    if let Some(rule) = &rec.rule {
        lines.push(("rule", format!("{rule} -> qsd {}", rec.predicted_qsd.unwrap_or(false))));
    }
    if let Some(a) = rec.enumeration_agrees {
        lines.push(("enumeration agrees", a.to_string()));
    }
    if let Some(f) = rec.formally_self_dual {
        lines.push(("formally self-dual", f.to_string()));
    }
    for w in &rec.warnings {
        lines.push(("warning", w.clone()));
    }
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in lines {
        println!("{k:width$}  {v}");
    }
}

fn request_from(args: &SchemeArgs) -> Result<ConstructRequest, Error> {
    if let Some(path) = &args.request {
        return ConstructRequest::parse(&read_text(path)?);
    }
    let scheme = if let Some(q) = args.paley_graph {
        format!("paley-graph-{q}")
    } else if let Some(q) = args.paley_tournament {
        format!("paley-tournament-{q}")
    } else if let Some(p) = args.graph6.as_ref().or(args.matrix.as_ref()) {
        p.display().to_string()
    } else if let Some(name) = &args.scheme {
        name.clone()
    } else {
        return Err(Error::Unsupported(
            "choose a scheme: --paley-graph, --paley-tournament, --graph6, --matrix, --scheme or --request".into(),
        ));
    };
    if args.graph6.is_some() && matches!(args.kind, Some(KindArg::Drt)) {
        return Err(Error::Unsupported("graph6 files hold undirected graphs only".into()));
    }
    let req = ConstructRequest {
        scheme,
        kind: args.kind.map(SchemeKind::from),
        variant: match args.variant {
            VariantArg::Pure => RequestVariant::Pure,
            VariantArg::Bordered => RequestVariant::Bordered,
            VariantArg::Cm => RequestVariant::Cm,
        },
        case: args.case.clone(),
        rst: args.rst.clone(),
        x: args.x.clone(),
        y: args.y.clone(),
        enumerate: args.enumerate,
    };
    req.validate()?;
    Ok(req)
}

fn cmd_construct(ctx: &Ctx, args: &SchemeArgs, output: Option<&Path>) -> Result<(), Failure> {
    let req = request_from(args)?;
    let (c, origin) = req.build(&ctx.source)?;
    let rec = construction_report(&c, &origin, &ctx.config, AnalyzeOptions { enumerate: req.enumerate })?;
    if let Some(path) = output {
        write_file(path, c.code()?.generator_matrix().to_text())?;
    }
    print_record(ctx, &rec);
    Ok(())
}

fn load_emat_code(path: &Path, closure: bool) -> Result<ECode, Error> {
    let m = EMatrix::parse_text(&read_text(path)?)?;
    if closure {
        ECode::span_closure(m.cols, &m.rows)
    } else {
        ECode::left_span(m.cols, &m.rows)
    }
}

fn cmd_analyze(ctx: &Ctx, file: &Path, closure: bool, enumerate: bool) -> Result<(), Failure> {
    let code = load_emat_code(file, closure)?;
    let id = format!("{}{}", file.display(), if closure { " (closure)" } else { "" });
    let rec = analyze_code(&id, &code, &ctx.config, AnalyzeOptions { enumerate })?;
    print_record(ctx, &rec);
    Ok(())
}

fn cmd_ingest(
    ctx: &Ctx,
    file: &Path,
    format: Option<FormatArg>,
    kind: KindArg,
    expect: Option<SchemeParams>,
) -> Result<(), Failure> {
    let format = format.unwrap_or_else(|| {
        if file.extension().is_some_and(|e| e == "g6" || e == "graph6") {
            FormatArg::Graph6
        } else {
            FormatArg::Matrix
        }
    });
    let kind = SchemeKind::from(kind);
    let matrices = match format {
        FormatArg::Graph6 => {
            if kind == SchemeKind::Drt {
                return Err(Error::Unsupported("graph6 files hold undirected graphs only".into()).into());
            }
            let bytes = fs::read(file).map_err(|source| Error::Io {
                path: file.display().to_string(),
                source,
            })?;
            parse_graph6_file(&bytes)?
        }
        FormatArg::Matrix => vec![parse_matrix_text(&read_text(file)?).map_err(Error::from)?],
    };
    if matrices.is_empty() {
        return Err(Error::Graph6(format!("{}: no graph", file.display())).into());
    }
    let mut entries = Vec::new();
    let mut mismatched = Vec::new();
    for (i, a) in matrices.into_iter().enumerate() {
        let scheme = SchemeMatrix::new(kind, a)?;
        let p = scheme.params();
        let m2 = mod2_params(&scheme)?;
        if expect.is_some_and(|e| e != p) {
            mismatched.push(i);
        }
        let g6 = match kind {
            SchemeKind::Srg => Some(String::from_utf8(encode_graph6(scheme.adjacency())?).expect("graph6 is ASCII")),
            SchemeKind::Drt => None,
        };
        entries.push(json!({
            "index": i,
            "kind": kind,
            "params": p,
            "mod2": { "lambda": m2.lambda, "mu": m2.mu, "nu": m2.nu, "n_odd": m2.n_odd },
            "graph6": g6,
        }));
    }
    if ctx.table {
        for e in &entries {
            let p = &e["params"];
            println!(
                "#{} {} ({},{},{},{}) mod2 λ={} μ={} ν={}",
                e["index"], e["kind"].as_str().unwrap_or(""), p["n"], p["k"], p["lambda"], p["mu"],
                e["mod2"]["lambda"], e["mod2"]["mu"], e["mod2"]["nu"]
            );
        }
    } else {
        print_json(&entries);
    }
    if !mismatched.is_empty() {
        return Err(Failure::Verification(format!(
            "parameters differ from {} for record(s) {mismatched:?}",
            expect.expect("set when mismatched")
        )));
    }
    Ok(())
}

fn cmd_verify(ctx: &Ctx, suite: SuiteArg, max_n: u8) -> Result<(), Failure> {
    let suite = match suite {
        SuiteArg::Ring => Suite::Ring,
        SuiteArg::Schemes => Suite::Schemes,
        SuiteArg::Theorems => Suite::Theorems,
        SuiteArg::All => Suite::All,
    };
    let report = verify::run(suite, &ctx.config, VerifyOptions { sweep_max_n: max_n as usize })?;
    if ctx.table {
        for c in &report.checks {
            println!("{c}");
        }
        println!("verify: {} passed, {} failed", report.passed, report.failed);
    } else {
        print_json(&report);
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{} check(s) failed", report.failed)))
    }
}

fn cmd_reproduce(ctx: &Ctx, target: TargetArg) -> Result<(), Failure> {
    let targets: Vec<Target> = match target {
        TargetArg::Example1 => vec![Target::Example1],
        TargetArg::Table4 => vec![Target::Table4],
        TargetArg::Table5 => vec![Target::Table5],
        TargetArg::Bounds => vec![Target::Bounds],
        TargetArg::All => Target::ALL.to_vec(),
    };
    let mut results = Vec::new();
    for t in targets {
        results.push(reproduce(t, &ctx.source, &ctx.config)?);
    }
    if ctx.table {
        for r in &results {
            print!("{}", r.render());
        }
    } else if results.len() == 1 {
        print_json(&results[0]);
    } else {
        print_json(&results);
    }
    let failed: usize = results.iter().map(|r| r.failed).sum();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{failed} row(s) failed")))
    }
}

fn cmd_export_f4(
    ctx: &Ctx,
    args: &SchemeArgs,
    input: Option<&Path>,
    output: &Path,
    enumerator: Option<&Path>,
) -> Result<(), Failure> {
    let code = match input {
        Some(p) => load_emat_code(p, false)?,
        None => {
            let req = request_from(args)?;
            req.build(&ctx.source)?.0.code()?
        }
    };
    let f4 = code.phi_image();
    write_file(output, f4.to_text())?;
    let enum_path = enumerator
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(format!("{}.enum.json", output.display())));
    let summary = if code.log2_size() <= ctx.config.max_ecode_log2 {
        let additive = f4.additive_weight_distribution(&ctx.config)?;
        let e = code.weight_enumerator(&ctx.config)?;
        let agree = additive == e.hamming_counts;
        json!({
            "length": code.length(),
            "rows": f4.rows.len(),
            "f4_hamming": additive,
            "e_hamming": e.hamming_counts,
            "agree": agree,
        })
    } else {
        json!({
            "length": code.length(),
            "rows": f4.rows.len(),
            "skipped": format!("2^{} codewords exceeds the cap 2^{}", code.log2_size(), ctx.config.max_ecode_log2),
        })
    };
    write_file(&enum_path, serde_json::to_string_pretty(&summary).expect("json"))?;
    if ctx.table {
        println!("wrote {} ({} rows) and {}", output.display(), f4.rows.len(), enum_path.display());
    } else {
        print_json(&json!({
            "matrix": output.display().to_string(),
            "enumerator": enum_path.display().to_string(),
            "summary": summary,
        }));
    }
    if summary["agree"] == json!(false) {
        return Err(Failure::Verification("F4 and E enumerators differ".into()));
    }
    Ok(())
}

fn scheme_source(manifest: Option<&Path>) -> Result<SchemeSource, Error> {
    match manifest {
        None => Ok(SchemeSource::builtin()),
        Some(p) if p.is_dir() => SchemeSource::with_manifest(&p.join("manifest.json")),
        Some(p) => SchemeSource::with_manifest(p),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut config = SearchConfig {
        workers: cli.workers,
        ..SearchConfig::default()
    };
    if let Some(k) = cli.max_enumeration {
        config.max_binary_log2 = k;
        config.max_ecode_log2 = k;
    }
    let ctx = Ctx {
        config,
        table: cli.table,
        source: scheme_source(cli.manifest.as_deref())?,
    };
    match &cli.command {
        Command::Construct { scheme, output } => cmd_construct(&ctx, scheme, output.as_deref()),
        Command::Analyze { file, closure, enumerate } => cmd_analyze(&ctx, file, *closure, *enumerate),
        Command::Ingest { file, format, kind, expect } => cmd_ingest(&ctx, file, *format, *kind, *expect),
        Command::Verify { suite, max_n } => cmd_verify(&ctx, *suite, *max_n),
        Command::Reproduce { target } => cmd_reproduce(&ctx, *target),
        Command::ExportF4 { scheme, input, output, enumerator } => {
            cmd_export_f4(&ctx, scheme, input.as_deref(), output, enumerator.as_deref())
        }
        Command::RingTable => {
            print!("{}", nonunital::ring_e::render_tables());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{}", json!({ "verification_failed": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("{}", json!({ "error": error_kind(&e), "message": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
