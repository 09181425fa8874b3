use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use conway_core::notation::{self, check_identity, Expr, NotationError};
use conway_core::polyring::{ones, PolyError, Polynomial, VarId};
use conway_core::registry::{self, FamilyRecord, Mode, Provenance, VerificationReport, VerifyOptions};
use conway_core::tangle2;
use num_bigint::BigInt;

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DIMENSION: u8 = 3;
const EXIT_UNKNOWN_ID: u8 = 4;
const EXIT_MISSING_VAR: u8 = 5;

#[derive(Parser)]
#[command(
    name = "conway",
    version,
    about = "Expand and verify Conway functions of knot families"
)]
struct Cli {
    /// Registry file to use instead of the built-in table.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical polynomial of an expression.
    Expand { expr: String },
    /// Verify registry families.
    Verify {
        #[arg(long, conflicts_with = "id", required_unless_present = "id")]
        all: bool,
        #[arg(long)]
        id: Option<String>,
        /// Verify the verbatim caption text instead of the corrected one.
        #[arg(long)]
        as_printed: bool,
        #[arg(long, default_value_t = 100)]
        oracle_trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Print the family table.
    Table {
        #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
        format: TableFormat,
    },
    /// Check the block commutation and boundary identities.
    Identities {
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate an expression at an integer point.
    Eval {
        expr: String,
        /// Comma-separated assignments such as a1=2,a2=3.
        #[arg(long, conflicts_with = "ones", required_unless_present = "ones")]
        assign: Option<String>,
        /// Set every variable to 1.
        #[arg(long)]
        ones: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Markdown,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            if !message.is_empty() {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}

type Outcome = Result<(), (u8, String)>;

fn notation_failure(err: NotationError) -> (u8, String) {
    let code = if err.is_parse_error() {
        EXIT_PARSE
    } else {
        EXIT_DIMENSION
    };
    (code, err.to_string())
}

fn parse_expr(text: &str) -> Result<Expr, (u8, String)> {
    notation::parse(text).map_err(notation_failure)
}

fn load_registry(cli: &Cli) -> Result<Vec<FamilyRecord>, (u8, String)> {
    match &cli.registry {
        Some(path) => registry::load(path).map_err(|e| (EXIT_PARSE, e.to_string())),
        None => Ok(registry::shipped()),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Expand { expr } => cmd_expand(expr),
        Command::Verify {
            all,
            id,
            as_printed,
            oracle_trials,
            seed,
            format,
        } => {
            let records = load_registry(cli)?;
            let selected: Vec<FamilyRecord> = if *all {
                records
            } else {
                let id = id.as_deref().expect("clap requires --all or --id");
                let found: Vec<_> = records.into_iter().filter(|r| r.id == id).collect();
                if found.is_empty() {
                    return Err((EXIT_UNKNOWN_ID, format!("unknown family id {id:?}")));
                }
                found
            };
            let opts = VerifyOptions {
                mode: if *as_printed { Mode::AsPrinted } else { Mode::Corrected },
                oracle_trials: *oracle_trials,
                seed: *seed,
            };
            cmd_verify(&selected, &opts, *format, !*all)
        }
        Command::Table { format } => {
            let records = load_registry(cli)?;
            print!("{}", render_table(&records, *format));
            Ok(())
        }
        Command::Identities { trials, seed } => cmd_identities(*trials, *seed),
        Command::Eval { expr, assign, ones } => cmd_eval(expr, assign.as_deref(), *ones),
    }
}

fn cmd_expand(text: &str) -> Outcome {
    let e = parse_expr(text)?;
    let report = check_identity(&e);
    for r in &report.branches {
        if let Err(err) = r {
            return Err(notation_failure(err.clone()));
        }
    }
    let p = report
        .branches
        .last()
        .expect("at least one branch")
        .as_ref()
        .expect("checked above");
    println!("{p} ({} terms)", p.term_count());
    if !report.all_equal {
        let mut message = String::from("branches disagree");
        for (i, d) in &report.differences {
            message.push_str(&format!("\n  branch {i} minus last branch: {d}"));
        }
        return Err((EXIT_FAILURE, message));
    }
    Ok(())
}

fn expected_text(r: &VerificationReport) -> String {
    match (r.expected_terms, r.expected_match) {
        (Some(e), Some(true)) => match e.provenance {
            Provenance::Paper => "matches paper".to_string(),
            Provenance::Derived => "matches derived value".to_string(),
        },
        (Some(e), _) => format!("MISMATCH, expected {} ({})", e.value, e.provenance),
        (None, _) => "no expected value".to_string(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn print_detail(r: &VerificationReport) {
    println!(
        "{} (seed {}, {} conways): {}",
        r.id,
        r.seed_label,
        r.conway_count,
        if r.passed() { "OK" } else { "FAIL" }
    );
    match &r.canonical {
        Some(c) => println!("  canonical: {c}"),
        None => println!("  canonical: unavailable"),
    }
    println!("  terms: {}", r.term_count);
    match r.seed_count {
        Some(s) => println!("  seed count: {s} ({})", expected_text(r)),
        None => println!("  seed count: unavailable ({})", expected_text(r)),
    }
    println!("  branches agree: {}", yes_no(r.branches_agree));
    println!("  unit multilinear: {}", yes_no(r.multilinear_unit));
    println!("  uses all variables: {}", yes_no(r.uses_all_variables));
    if let Some(c) = r.chain_agrees {
        println!("  chain evaluation agrees: {}", yes_no(c));
    }
    if let Some(o) = r.oracle {
        println!("  oracle naive expansion agrees: {}", yes_no(o.naive_agrees));
        println!("  oracle point check agrees: {}", yes_no(o.point_agrees));
    }
    for m in &r.mismatches {
        println!("  mismatch (branch minus reference): {m}");
    }
    for e in &r.errors {
        println!("  error: {e}");
    }
}

fn cmd_verify(records: &[FamilyRecord], opts: &VerifyOptions, format: ReportFormat, detailed: bool) -> Outcome {
    let reports = registry::verify_all(records, opts);
    let passed = reports.iter().filter(|r| r.passed()).count();
    match format {
        ReportFormat::Json => {
            let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
            println!("{text}");
        }
        ReportFormat::Text => {
            for r in &reports {
                if detailed || !r.passed() {
                    print_detail(r);
                }
            }
            println!("{passed}/{} OK", reports.len());
        }
    }
    if passed == reports.len() {
        Ok(())
    } else {
        Err((EXIT_FAILURE, String::new()))
    }
}

fn render_table(records: &[FamilyRecord], format: TableFormat) -> String {
    let reports = registry::verify_all(records, &VerifyOptions::default());
    let rows: Vec<[String; 5]> = records
        .iter()
        .zip(&reports)
        .map(|(r, v)| {
            [
                r.id.clone(),
                r.seed_label.clone(),
                r.conway_count.to_string(),
                v.seed_count.map(|s| s.to_string()).unwrap_or_else(|| "?".into()),
                r.factorization_count().to_string(),
            ]
        })
        .collect();
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str("id,seed_label,conway_count,conway_number,factorizations\n");
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        TableFormat::Markdown => {
            out.push_str("| id | seed | conways | Conway number | factorizations |\n");
            out.push_str("|---|---|---:|---:|---:|\n");
            for row in rows {
                out.push_str(&format!("| {} |\n", row.join(" | ")));
            }
        }
    }
    out
}

fn cmd_identities(trials: u32, seed: u64) -> Outcome {
    let suite = tangle2::identity_suite(trials, seed);
    for l in &suite.lines {
        let ok = l.symbolic && l.random_passed == l.random_trials;
        println!(
            "{} {}: symbolic {}, random {}/{}",
            if ok { "PASS" } else { "FAIL" },
            l.name,
            if l.symbolic { "holds" } else { "fails" },
            l.random_passed,
            l.random_trials
        );
    }
    println!(
        "{} generic pair [[a1,a2],[a3,a4]], [[a5,a6],[a7,a8]]: {}",
        if suite.generic_pair_commutes { "FAIL" } else { "PASS" },
        if suite.generic_pair_commutes {
            "commutes"
        } else {
            "does not commute"
        }
    );
    if suite.passed() {
        Ok(())
    } else {
        Err((EXIT_FAILURE, "identity suite failed".into()))
    }
}

fn parse_assignment(text: &str) -> Result<BTreeMap<VarId, BigInt>, (u8, String)> {
    let bad = |item: &str| (EXIT_PARSE, format!("bad assignment {item:?}, expected aN=integer"));
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item.split_once('=').ok_or_else(|| bad(item))?;
        let index: u64 = name
            .trim()
            .strip_prefix('a')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| bad(item))?;
        let var = VarId::new(index).map_err(|_| bad(item))?;
        let value: BigInt = value.trim().parse().map_err(|_| bad(item))?;
        out.insert(var, value);
    }
    Ok(out)
}

fn cmd_eval(text: &str, assign: Option<&str>, all_ones: bool) -> Outcome {
    let e = parse_expr(text)?;
    let p: Polynomial = notation::expand(&e).map_err(notation_failure)?;
    let point = if all_ones {
        ones(e.variables())
    } else {
        parse_assignment(assign.unwrap_or_default())?
    };
    // variables that cancel out of the expansion still need a value
    if let Some(v) = e.variables().into_iter().find(|v| !point.contains_key(v)) {
        return Err((EXIT_MISSING_VAR, format!("no value assigned to {v}")));
    }
    match p.eval(&point) {
        Ok(value) => {
            println!("{value}");
            Ok(())
        }
        Err(PolyError::MissingVariable(v)) => Err((EXIT_MISSING_VAR, format!("no value assigned to {v}"))),
        Err(err) => Err((EXIT_FAILURE, err.to_string())),
    }
}
