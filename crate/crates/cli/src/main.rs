//! `permop`: build, verify, and export the two permutahedral cell models.

mod suites;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permop_core::complex::{build_cact, build_milgram, CellComplex};
use permop_core::geometry::{export_off_pn, export_off_subdivision, subdivision_json};
use permop_core::seq::NrSequence;
use permop_core::tree::{decomposition, face_top_pairs, t_sigma};
use serde::Serialize;
use std::process::ExitCode;

/// Default seed for the randomized spot checks; fixed for reproducibility.
const DEFAULT_SEED: u64 = 0x5eed_cafe;

#[derive(Parser)]
#[command(name = "permop", version, about = "Exact combinatorics of permutahedral E2 models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    Milgram,
    Cact,
    Both,
}

impl Space {
    fn names(self) -> Vec<&'static str> {
        match self {
            Space::Milgram => vec!["milgram"],
            Space::Cact => vec!["cact"],
            Space::Both => vec!["milgram", "cact"],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Off,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Graded cell counts, top-cell counts, and decomposition sizes.
    Counts(CountsArgs),
    /// Run a named verification suite; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Write complexes or geometry as OFF / JSON / CSV.
    Export(ExportArgs),
}

#[derive(Args)]
struct CountsArgs {
    #[arg(short, default_value_t = 3)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Space::Both)]
    space: Space,
    /// Also print the decomposition piece sizes by initial branching.
    #[arg(long)]
    per_k: bool,
    /// Permit the long enumerations (the full cactus complex at n = 5).
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, default_value_t = 3)]
    n: u32,
    #[arg(long, default_value = "all")]
    suite: String,
    /// Emit a machine-readable JSON report (off = human lines only).
    #[arg(long, value_enum, default_value_t = Format::Off)]
    format: Format,
    /// Report destination; stdout when absent.
    #[arg(long)]
    out: Option<String>,
    /// Seed for the randomized spot checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(short, default_value_t = 3)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Space::Both)]
    space: Space,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Destination file; stdout when absent.
    #[arg(long)]
    out: Option<String>,
    /// Export the cactus subdivision of one permutahedral copy instead of a
    /// whole complex; the value is the vertex order, e.g. 4321.
    #[arg(long)]
    subdivision: Option<String>,
    #[arg(long)]
    allow_large: bool,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn build_space(name: &str, n: u32) -> Result<CellComplex, String> {
    match name {
        "milgram" => build_milgram(n).map_err(|e| e.to_string()),
        "cact" => build_cact(n).map_err(|e| e.to_string()),
        other => Err(format!("unknown space {other}")),
    }
}

fn cmd_counts(args: &CountsArgs) -> ExitCode {
    let n = args.n;
    if n == 0 || n > 5 {
        return usage_error("counts supports 1 <= n <= 5");
    }
    if n == 1 {
        println!("n=1: 1 cell (a point) in either model");
        return ExitCode::SUCCESS;
    }
    for name in args.space.names() {
        if name == "cact" && n == 5 && !args.allow_large {
            println!("cact n=5: full enumeration skipped (pass --allow-large to run it)");
        } else {
            match build_space(name, n) {
                Ok(cx) => {
                    let f = cx.f_vector();
                    let total: usize = f.iter().sum();
                    let by_dim: Vec<String> = f.iter().map(|c| c.to_string()).collect();
                    println!("{name} n={n}: cells by dim {} (total {total})", by_dim.join("/"));
                }
                Err(e) => return usage_error(&e),
            }
        }
    }
    let identity = NrSequence::identity(n);
    let sample_only = n == 5 && !args.allow_large;
    let orders: Vec<NrSequence> = if sample_only {
        vec![identity.clone()]
    } else {
        permop_core::seq::permutations((1..=n).collect())
            .into_iter()
            .map(|l| NrSequence::new(l).unwrap())
            .collect()
    };
    let mut counts = std::collections::BTreeSet::new();
    for sigma in &orders {
        match t_sigma(sigma, Some(n as usize - 1)) {
            Ok(tops) => counts.insert(tops.len()),
            Err(e) => return usage_error(&e.to_string()),
        };
    }
    let scope = if sample_only {
        "identity order only; pass --allow-large for all orders".to_string()
    } else {
        format!("all {} vertex orders agree", orders.len())
    };
    let shown: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
    println!("top cells per vertex order: {} ({scope})", shown.join(", "));
    if args.per_k {
        match decomposition(&identity) {
            Ok(dec) => {
                let sizes = dec.piece_sizes_by_k();
                let total: usize = sizes.values().sum();
                let parts: Vec<String> =
                    sizes.iter().map(|(k, c)| format!("k={k}: {c}")).collect();
                println!("decomposition pieces: {} (total {total})", parts.join(", "));
            }
            Err(e) => return usage_error(&e.to_string()),
        }
    }
    match face_top_pairs(&identity) {
        Ok(pairs) => println!("face/top bijection: {} pairs", pairs.len()),
        Err(e) => return usage_error(&e.to_string()),
    }
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    n: u32,
    suite: String,
    seed: u64,
    pass: bool,
    checks: Vec<suites::Check>,
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let checks = match suites::run(&args.suite, args.n, args.seed, args.allow_large) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let pass = checks.iter().all(|c| c.pass);
    for c in &checks {
        let tag = if c.pass { "pass" } else { "FAIL" };
        println!("[{tag}] {}: {}", c.name, c.detail);
    }
    println!("suite {} n={}: {}", args.suite, args.n, if pass { "pass" } else { "FAIL" });
    if args.format == Format::Json {
        let report = VerifyReport {
            command: "verify",
            n: args.n,
            suite: args.suite.clone(),
            seed: args.seed,
            pass,
            checks,
        };
        let body = serde_json::to_string_pretty(&report).unwrap() + "\n";
        if let Err(code) = emit(&body, args.out.as_deref()) {
            return code;
        }
    } else if args.format == Format::Csv {
        return usage_error("verify reports are json only");
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Writes to the given path, or stdout when absent.
fn emit(body: &str, out: Option<&str>) -> Result<(), ExitCode> {
    match out {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => std::fs::write(path, body).map_err(|e| {
            eprintln!("error: cannot write {path}: {e}");
            ExitCode::from(1)
        }),
    }
}

fn complex_csv(cx: &CellComplex) -> String {
    let mut body = String::from("id,dim,encoding\n");
    for d in 0..=cx.dim() {
        for (j, enc) in cx.cells(d).iter().enumerate() {
            body += &format!("{},{d},{enc}\n", cx.global_index(d, j));
        }
    }
    body += "\ncell,face,multiplicity\n";
    for d in 1..=cx.dim() {
        for j in 0..cx.cells(d).len() {
            for &(i, mult) in cx.incidence(d, j) {
                body += &format!(
                    "{},{},{mult}\n",
                    cx.global_index(d, j),
                    cx.global_index(d - 1, i)
                );
            }
        }
    }
    body
}

fn cmd_export(args: &ExportArgs) -> ExitCode {
    if let Some(order) = &args.subdivision {
        let sigma = match NrSequence::parse(order) {
            Ok(s) => s,
            Err(e) => return usage_error(&format!("bad --subdivision value: {e}")),
        };
        let body = match args.format {
            Format::Off => export_off_subdivision(&sigma).map_err(|e| e.to_string()),
            Format::Json => subdivision_json(&sigma)
                .map(|j| serde_json::to_string_pretty(&j).unwrap() + "\n")
                .map_err(|e| e.to_string()),
            Format::Csv => Err("subdivision export is off or json".into()),
        };
        return match body {
            Ok(b) => match emit(&b, args.out.as_deref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(code) => code,
            },
            Err(e) => usage_error(&e),
        };
    }
    if args.format == Format::Off {
        if args.space != Space::Milgram {
            return usage_error("off export covers the permutahedron (--space milgram) or --subdivision");
        }
        let body = match export_off_pn(args.n) {
            Ok(b) => b,
            Err(e) => return usage_error(&e.to_string()),
        };
        return match emit(&body, args.out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(code) => code,
        };
    }
    let names = args.space.names();
    if names.len() > 1 && args.out.is_some() {
        return usage_error("--out needs a single --space; export the two spaces separately");
    }
    for name in names {
        if name == "cact" && args.n == 5 && !args.allow_large {
            return usage_error("cact n=5 is a long enumeration; pass --allow-large");
        }
        let cx = match build_space(name, args.n) {
            Ok(cx) => cx,
            Err(e) => return usage_error(&e),
        };
        let body = match args.format {
            Format::Json => serde_json::to_string_pretty(&cx.to_json()).unwrap() + "\n",
            Format::Csv => complex_csv(&cx),
            Format::Off => unreachable!(),
        };
        if let Err(code) = emit(&body, args.out.as_deref()) {
            return code;
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Counts(args) => cmd_counts(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Export(args) => cmd_export(args),
    }
}
