use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eaqmds_core::codecheck::{DeskOptions, DEFAULT_DISTANCE_BUDGET};
use eaqmds_core::constructions::{certify_family, lemma_sweep, scan_families, ScanOptions};
use eaqmds_core::engine::{CheckSelection, Verdict};
use eaqmds_core::tables::{reference_table, regenerate_table};
use eaqmds_core::{Family, FamilyInput, LemmaStatus};

mod render;

use render::Format;

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_ABSTAINED: u8 = 3;

#[derive(Parser)]
#[command(name = "eaqmds", version, about = "Construct and certify entanglement-assisted quantum MDS codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (default: available cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    B,
    Both,
}

impl FamilyArg {
    fn families(self) -> Vec<Family> {
        match self {
            FamilyArg::A => vec![Family::A],
            FamilyArg::B => vec![Family::B],
            FamilyArg::Both => vec![Family::A, Family::B],
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate a reference table (2: family A, 3: family B) and annotate discrepancies.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(2..=3))]
        which: u8,
    },
    /// Certify one family member.
    Certify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Accept m outside its admissible range.
        #[arg(long)]
        force: bool,
        /// Realize the classical code and verify distance and duality exhaustively.
        #[arg(long)]
        desk_check: bool,
        /// Codeword-evaluation budget for exhaustive distance.
        #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET)]
        budget: u64,
        /// Exit with status 3 when a check abstained.
        #[arg(long)]
        abstain_as_error: bool,
    },
    /// Sweep the coset-identity verifiers over all odd prime powers q <= q-max.
    Lemmas {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        q_max: u64,
    },
    /// Certify every admissible (q, t, m) in a range of q.
    Scan {
        /// A single q or an inclusive range LO..HI.
        #[arg(long, value_parser = parse_range)]
        q: (u64, u64),
        #[arg(long, value_enum, default_value = "both")]
        family: FamilyArg,
        /// Fix t instead of sweeping all divisors.
        #[arg(long)]
        t: Option<u64>,
        /// Fix m instead of sweeping all admissible values.
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        desk_check: bool,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET)]
        budget: u64,
        #[arg(long)]
        abstain_as_error: bool,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn selection(desk_check: bool, budget: u64) -> CheckSelection {
    CheckSelection {
        desk: desk_check.then(|| DeskOptions { distance_budget: budget, ..DeskOptions::default() }),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .map_err(|e| (EXIT_INVALID, e.to_string()))?;
    }
    let invalid = |e: eaqmds_core::Error| (EXIT_INVALID, e.to_string());
    let (text, code) = match cli.command {
        Command::Table { which } => {
            let reference = reference_table(which).expect("validated by clap");
            let rows = regenerate_table(reference).map_err(invalid)?;
            (render::table(which, &rows, cli.format), 0)
        }
        Command::Certify { q, t, m, family, force, desk_check, budget, abstain_as_error } => {
            let family = match family {
                FamilyArg::A => Family::A,
                FamilyArg::B => Family::B,
                FamilyArg::Both => return Err((EXIT_INVALID, "certify needs --family a or b".into())),
            };
            let mut input = FamilyInput::new(family, q, t, m);
            input.force = force;
            let cert = certify_family(&input, selection(desk_check, budget)).map_err(invalid)?;
            for w in &cert.warnings {
                eprintln!("warning: {w}");
            }
            let code = if cert.verdict == Verdict::Fail {
                EXIT_FAIL
            } else if abstain_as_error && cert.has_abstention() {
                EXIT_ABSTAINED
            } else {
                0
            };
            (render::certificate(&cert, cli.format), code)
        }
        Command::Lemmas { q_max } => {
            let reports = lemma_sweep(q_max);
            let failed = reports.iter().any(|r| r.status == LemmaStatus::Fail);
            (render::lemmas(&reports, cli.format), if failed { EXIT_FAIL } else { 0 })
        }
        Command::Scan { q, family, t, m, desk_check, budget, abstain_as_error } => {
            let opts = ScanOptions { t, m, checks: selection(desk_check, budget) };
            let certs = scan_families(q.0, q.1, &family.families(), opts);
            eprintln!("{}", render::ScanSummary::of(&certs).line());
            let code = if certs.iter().any(|c| c.verdict == Verdict::Fail) {
                EXIT_FAIL
            } else if abstain_as_error && certs.iter().any(|c| c.has_abstention()) {
                EXIT_ABSTAINED
            } else {
                0
            };
            (render::scan(&certs, cli.format), code)
        }
    };
    emit(&text, &cli.out).map_err(|e| (EXIT_INVALID, e))?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
