//! Command-line front end: build the system for one q, verify it, compute
//! the K0-model group, export artifacts, or regression-compare a report
//! against a stored golden file.
//!
//! Exit codes: 0 all requested checks passed; 1 a verification or
//! regression comparison failed (details on stdout); 2 usage or
//! configuration error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use trik0::ktheory::RelationSet;
use trik0::pipeline::{
    build_system, prime_power, report_to_json, BuiltSystem, RunConfig, ShiftRuleChoice,
};
use trik0::plane::PairingKind;
use trik0::subshift::union_digraph_dot;

#[derive(Parser)]
#[command(name = "trik0", version, about = "Triangle presentations from PG(2,q) and the order of [1] in the K0-model group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the plane, presentations, basic subset and matrices;
    /// print a summary and optionally write the artifacts.
    Build(CommonArgs),
    /// Run the full verification suite (axioms, H conditions, Lemmas).
    Verify(CommonArgs),
    /// Compute the K0-model group and the order of the identity class.
    Ktheory(CommonArgs),
    /// Emit the full report: configuration echo, checks, group.
    Report(CommonArgs),
    /// Write matrices, graphs and tile lists to the output directory.
    Export(ExportArgs),
    /// Compare a freshly computed report against a stored golden file.
    Regress(RegressArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Prime power q = p^k.
    #[arg(long, conflicts_with_all = ["p", "k"])]
    q: Option<u64>,
    /// Field characteristic (use together with --k).
    #[arg(long, requires = "k")]
    p: Option<u64>,
    /// Extension degree so that q = p^k (use together with --p).
    #[arg(long, requires = "p")]
    k: Option<usize>,
    /// Defining polynomial of F_{p^{3k}}: comma-separated coefficients,
    /// constant term first, monic. Default: smallest primitive polynomial.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
    /// Point/line pairing realizing the plane.
    #[arg(long, value_enum, default_value_t = PairingArg::TrXinvY)]
    pairing: PairingArg,
    /// Shift-rule selection: calibrated, literal, or forced exclusions.
    #[arg(long, value_enum, default_value_t = ShiftRuleArg::Auto)]
    shift_rule: ShiftRuleArg,
    /// Max-norm bound for the H3 aperiodicity search.
    #[arg(long, default_value_t = 2)]
    h3_bound: usize,
    /// Which transition matrices contribute K0 relations.
    #[arg(long, value_enum, default_value_t = RelationsArg::M1)]
    relations: RelationsArg,
    /// Output directory for artifact files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Restrict the export to a single matrix (default: everything).
    #[arg(long, value_enum)]
    matrix: Option<MatrixArg>,
}

#[derive(Args)]
struct RegressArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Stored golden report to compare against.
    #[arg(long)]
    golden: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    /// Incidence via Tr(xy) = 0.
    TrXy,
    /// Incidence via Tr(x^{-1}y) = 0.
    TrXinvY,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShiftRuleArg {
    Auto,
    Literal,
    BothExclusions,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationsArg {
    M1,
    M2,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixArg {
    M1,
    M2,
}

fn config_from(args: &CommonArgs) -> Result<RunConfig, String> {
    let (p, k) = match (args.q, args.p, args.k) {
        (Some(q), None, None) => {
            prime_power(q).ok_or_else(|| format!("{q} is not a prime power"))?
        }
        (None, Some(p), Some(k)) => {
            if prime_power(p) != Some((p, 1)) {
                return Err(format!("--p {p} is not prime"));
            }
            if k == 0 {
                return Err("--k must be positive".to_string());
            }
            (p, k)
        }
        _ => return Err("specify either --q or both --p and --k".to_string()),
    };
    Ok(RunConfig {
        p,
        k,
        modulus: args.modulus.clone(),
        pairing: match args.pairing {
            PairingArg::TrXy => PairingKind::TrXY,
            PairingArg::TrXinvY => PairingKind::TrXInvY,
        },
        shift_rule: match args.shift_rule {
            ShiftRuleArg::Auto => ShiftRuleChoice::Auto,
            ShiftRuleArg::Literal => ShiftRuleChoice::Literal,
            ShiftRuleArg::BothExclusions => ShiftRuleChoice::BothExclusions,
        },
        h3_bound: args.h3_bound,
        relations: match args.relations {
            RelationsArg::M1 => RelationSet::M1Only,
            RelationsArg::M2 => RelationSet::M2Only,
            RelationsArg::Both => RelationSet::Both,
        },
    })
}

fn build_from(args: &CommonArgs) -> Result<BuiltSystem, String> {
    let config = config_from(args)?;
    build_system(config).map_err(|e| e.to_string())
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn emit_report(sys: &BuiltSystem, args: &CommonArgs, with_group: bool) -> (bool, String) {
    let report = sys.report(with_group);
    let passed = report.checks.all_passed();
    let text = match args.format {
        FormatArg::Json => report_to_json(&report),
        FormatArg::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "q = {} (p = {}, k = {}), modulus {:?}, pairing {:?}, rule {}, relations {:?}\n",
                report.q,
                report.p,
                report.k,
                report.modulus,
                report.pairing,
                report.shift_rule,
                report.relation_set
            ));
            for line in &report.detail {
                out.push_str(line);
                out.push('\n');
            }
            if let Some(group) = &report.group {
                out.push_str(&format!(
                    "K0 model: invariant factors {:?}, free rank {}, identity order {}\n",
                    group.invariant_factors, group.free_rank, group.identity_order
                ));
            }
            out.push_str(if passed {
                "all checks passed\n"
            } else {
                "SOME CHECKS FAILED\n"
            });
            out
        }
    };
    (passed, text)
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Build(args) => {
            let sys = build_from(args)?;
            println!(
                "q = {}: n = {}, |T0| = {}, |T1| = {}, |S| = {}, rule {}",
                sys.config.q(),
                sys.t1.n(),
                sys.t1.t0().len(),
                sys.t1.len(),
                sys.basic.tile_ids().len(),
                sys.rule.label()
            );
            if let Some(dir) = &args.out {
                write_file(dir, "plane.txt", &sys.plane.export_text())?;
                write_file(dir, "t0.txt", &sys.t1.t0().export_text())?;
                write_file(dir, "t1.txt", &sys.t1.export_text())?;
                write_file(dir, "basic.txt", &sys.basic.export_text(&sys.t1))?;
            }
            Ok(true)
        }
        Command::Verify(args) => {
            let sys = build_from(args)?;
            let (passed, text) = emit_report(&sys, args, false);
            print!("{text}");
            if let Some(dir) = &args.out {
                let report = sys.report(false);
                write_file(dir, "verify.json", &report_to_json(&report))?;
            }
            Ok(passed)
        }
        Command::Ktheory(args) => {
            let sys = build_from(args)?;
            let (passed, text) = emit_report(&sys, args, true);
            print!("{text}");
            if let Some(dir) = &args.out {
                let report = sys.report(true);
                write_file(dir, "ktheory.json", &report_to_json(&report))?;
            }
            Ok(passed)
        }
        Command::Report(args) => {
            let sys = build_from(args)?;
            let (passed, text) = emit_report(&sys, args, true);
            print!("{text}");
            if let Some(dir) = &args.out {
                let report = sys.report(true);
                write_file(dir, "report.json", &report_to_json(&report))?;
            }
            Ok(passed)
        }
        Command::Export(args) => {
            let sys = build_from(&args.common)?;
            let dir = args
                .common
                .out
                .clone()
                .ok_or_else(|| "export requires --out DIR".to_string())?;
            match args.matrix {
                Some(MatrixArg::M1) => write_file(&dir, "m1.txt", &sys.m1.export_triplets())?,
                Some(MatrixArg::M2) => write_file(&dir, "m2.txt", &sys.m2.export_triplets())?,
                None => {
                    write_file(&dir, "m1.txt", &sys.m1.export_triplets())?;
                    write_file(&dir, "m2.txt", &sys.m2.export_triplets())?;
                    write_file(&dir, "plane.txt", &sys.plane.export_text())?;
                    write_file(&dir, "t1.txt", &sys.t1.export_text())?;
                    write_file(&dir, "basic.txt", &sys.basic.export_text(&sys.t1))?;
                    write_file(&dir, "union.dot", &union_digraph_dot(&sys.m1, &sys.m2, &sys.t1))?;
                    write_file(
                        &dir,
                        "incidence.dot",
                        &sys.plane.incidence_graph().to_dot("incidence"),
                    )?;
                }
            }
            Ok(true)
        }
        Command::Regress(args) => {
            let sys = build_from(&args.common)?;
            let report = sys.report(true);
            let fresh = report_to_json(&report);
            let golden = std::fs::read_to_string(&args.golden)
                .map_err(|e| format!("cannot read {}: {e}", args.golden.display()))?;
            if fresh == golden {
                println!("report matches {}", args.golden.display());
                Ok(true)
            } else {
                println!("REGRESSION: report differs from {}", args.golden.display());
                for (i, (f, g)) in fresh.lines().zip(golden.lines()).enumerate() {
                    if f != g {
                        println!("first difference at line {}:", i + 1);
                        println!("  fresh:  {f}");
                        println!("  golden: {g}");
                        break;
                    }
                }
                if fresh.lines().count() != golden.lines().count() {
                    println!(
                        "line counts differ: fresh {} vs golden {}",
                        fresh.lines().count(),
                        golden.lines().count()
                    );
                }
                Ok(false)
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
