//! Command-line driver for the identity verifiers.
//!
//! Every subcommand runs one sweep, prints a human summary to stdout and
//! optionally writes the report as a single JSON object. Exit status is 0
//! when the sweep passed, 1 when any check failed, 2 on usage errors.

mod json;
mod parallel;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncjacobi_core::report::VerificationReport;
use ncjacobi_core::{hirota, jacobi, partitions, special, Mutation};

#[derive(Parser)]
#[command(
    name = "ncjacobi",
    version,
    about = "Exact verification of noncommutative triple-product and bilinear identities",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Write the report as a JSON object to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Worker threads for the heavier sweeps (the NCJACOBI_THREADS
    /// environment variable overrides this flag).
    #[arg(long, default_value_t = 1, value_name = "N")]
    threads: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MutationArg {
    /// Flip the shift-charge convention when matching product terms.
    SplitSign,
    /// Skip the tilde-generator reduction in bilinear terms.
    NoTildeReduction,
    /// Make the pairing involution step the charge the wrong way.
    RhoSign,
}

impl From<MutationArg> for Mutation {
    fn from(m: MutationArg) -> Mutation {
        match m {
            MutationArg::SplitSign => Mutation::FlipSplitCharge,
            MutationArg::NoTildeReduction => Mutation::SkipTildeReduction,
            MutationArg::RhoSign => Mutation::FlipInvolutionCharge,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Profile {
    /// Reduced parameters, suitable for continuous integration.
    Quick,
    /// Full desk-scale parameters.
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Roundtrip the charged-partition / half-integer set correspondence.
    VerifyBijection {
        /// Charge window.
        #[arg(long, default_value_t = 6)]
        m_range: i64,
        /// Largest partition weight.
        #[arg(long, default_value_t = 12)]
        max_weight: u32,
        /// Set elements range over half-integers below this bound.
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Check the mode series: cleared Laurent identity and both expansions.
    VerifyPsi {
        #[arg(long, default_value_t = 4)]
        m_range: i64,
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
        /// Truncation order for the two expansions.
        #[arg(long, default_value_t = 12)]
        order: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Classify realized degree pairs and check the snake classes.
    VerifySnake {
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Check the normal-ordered split of the box observable.
    VerifySplit {
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
        #[arg(long, default_value_t = 5)]
        m_range: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Termwise check of both noncommutative product identities.
    VerifyJacobi {
        /// Set elements range over half-integers below this bound (>= 1).
        #[arg(long, default_value_t = 6)]
        cutoff: u32,
        /// Inject a deliberate defect (the run is then expected to fail).
        #[arg(long, value_enum)]
        mutate: Option<MutationArg>,
        #[command(flatten)]
        common: Common,
    },
    /// Graded sweep of the bilinear vanishing identity.
    VerifyHirota {
        #[arg(long, default_value_t = 12)]
        max_grade: u64,
        #[arg(long, value_enum)]
        mutate: Option<MutationArg>,
        #[command(flatten)]
        common: Common,
    },
    /// Classical triple product against an independent partition count.
    VerifyClassicalJtp {
        /// Largest tracked power of the square-rooted expansion unit.
        #[arg(long, default_value_t = 30)]
        order: i64,
        /// Charge-unit window.
        #[arg(long, default_value_t = 5)]
        m_range: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Refined triple product with higher-time variables.
    VerifyW1inf {
        /// Highest time variable index (>= 3).
        #[arg(long, default_value_t = 3)]
        times: u8,
        /// Nilpotent total-degree cap (>= 1).
        #[arg(long, default_value_t = 2)]
        degree_cap: u32,
        #[arg(long, default_value_t = 12)]
        order: i64,
        #[arg(long, default_value_t = 3)]
        m_range: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Q-character transform: termwise identity, factor families, relabels.
    VerifyQchar {
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Commutative limit through an independent series path.
    VerifyRed34 {
        #[arg(long, default_value_t = 1)]
        rank: u32,
        /// Grading order of the truncation.
        #[arg(long, default_value_t = 4)]
        order: u32,
        /// Charge-unit window.
        #[arg(long, default_value_t = 3)]
        m_range: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Difference-Laplace normalization solver and the Fay-type relation.
    VerifyFay {
        #[command(flatten)]
        common: Common,
    },
    /// Run every verifier at a named parameter profile.
    All {
        #[arg(long, value_enum, default_value_t = Profile::Quick)]
        profile: Profile,
        /// Inject a deliberate defect (the run is then expected to fail).
        #[arg(long, value_enum)]
        mutate: Option<MutationArg>,
        #[command(flatten)]
        common: Common,
    },
}

fn effective_threads(flag: usize) -> usize {
    if let Ok(value) = std::env::var("NCJACOBI_THREADS") {
        if let Ok(n) = value.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
        eprintln!("warning: ignoring unparsable NCJACOBI_THREADS={value}");
    }
    flag.max(1)
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    eprintln!("run `ncjacobi --help` for usage");
    2
}

fn run_jacobi_both(cutoff: u32, mutation: Mutation, threads: usize) -> VerificationReport {
    let mut report = VerificationReport::new("nc-jacobi-both", [("cutoff", cutoff.to_string())]);
    report.note(jacobi::jacobi_convention_note());
    for transposed in [false, true] {
        let identity = if transposed {
            "nc-jacobi-transposed"
        } else {
            "nc-jacobi"
        };
        let skeleton = jacobi::jacobi_report_skeleton(identity, cutoff, transposed);
        let jobs: Vec<_> = parallel::ranges(jacobi::term_count(cutoff), threads * 4)
            .into_iter()
            .map(|(lo, hi)| {
                move || jacobi::verify_jacobi_range(cutoff, transposed, mutation, lo, hi)
            })
            .collect();
        report.absorb(parallel::run_chunks(skeleton, jobs, threads));
    }
    report.sort_failures();
    report
}

fn run_hirota(max_grade: u64, mutation: Mutation, threads: usize) -> VerificationReport {
    let skeleton = hirota::bilinear_report_skeleton(max_grade);
    let jobs: Vec<_> = (0..=max_grade)
        .rev() // heaviest grades first for better balance
        .map(|g| move || hirota::verify_bilinear_grades(max_grade, &[g], mutation))
        .collect();
    parallel::run_chunks(skeleton, jobs, threads)
}

fn run_split(max_weight: u32, m_range: i64, threads: usize) -> VerificationReport {
    let cases = jacobi::split_cases(max_weight, m_range);
    let skeleton = jacobi::split_report_skeleton(max_weight, m_range);
    let jobs: Vec<_> = parallel::ranges(cases.len() as u64, threads * 4)
        .into_iter()
        .map(|(lo, hi)| {
            let slice = cases[lo as usize..hi as usize].to_vec();
            move || jacobi::verify_split_cases(max_weight, m_range, &slice)
        })
        .collect();
    parallel::run_chunks(skeleton, jobs, threads)
}

fn run_qchar(rank: u32, cutoff: u32) -> VerificationReport {
    special::verify_qchar(rank, cutoff)
}

fn run_red34(rank: u32, order: u32, z_range: i64) -> VerificationReport {
    let mut report = VerificationReport::new(
        "classical-limit-all-nodes",
        [
            ("rank", rank.to_string()),
            ("order", order.to_string()),
            ("z_range", z_range.to_string()),
        ],
    );
    for node in 0..=rank as i64 {
        report.absorb(special::verify_classical_limit(rank, node, order, z_range));
    }
    report.sort_failures();
    report
}

fn run_all(profile: Profile, mutation: Mutation, threads: usize) -> VerificationReport {
    let mut report = VerificationReport::new(
        "all",
        [(
            "profile",
            match profile {
                Profile::Quick => "quick".to_string(),
                Profile::Full => "full".to_string(),
            },
        )],
    );
    match profile {
        Profile::Quick => {
            report.absorb(partitions::verify_bijection_sweep(4, 8, 6));
            report.absorb(partitions::verify_psi_sweep(3, 4, 8));
            report.absorb(partitions::verify_snake_sweep(6));
            report.absorb(run_split(6, 3, threads));
            report.absorb(run_jacobi_both(4, mutation, threads));
            report.absorb(run_hirota(8, mutation, threads));
            report.absorb(special::verify_classical_jtp(16, 4));
            report.absorb(special::verify_w1inf(3, 2, 8, 2));
            report.absorb(run_qchar(1, 3));
            report.absorb(run_red34(0, 3, 2));
            report.absorb(special::verify_fay_xi_sweep());
        }
        Profile::Full => {
            report.absorb(partitions::verify_bijection_sweep(6, 12, 8));
            report.absorb(partitions::verify_psi_sweep(4, 6, 12));
            report.absorb(partitions::verify_snake_sweep(8));
            report.absorb(run_split(8, 5, threads));
            report.absorb(run_jacobi_both(6, mutation, threads));
            report.absorb(run_hirota(12, mutation, threads));
            report.absorb(special::verify_classical_jtp(30, 5));
            report.absorb(special::verify_w1inf(3, 2, 12, 3));
            report.absorb(special::verify_w1inf(4, 2, 12, 3));
            for rank in 0..=2 {
                report.absorb(run_qchar(rank, 4));
            }
            for rank in 0..=1 {
                report.absorb(run_red34(rank, 4, 3));
            }
            report.absorb(special::verify_fay_xi_sweep());
        }
    }
    report.sort_failures();
    report
}

fn print_human(report: &VerificationReport) {
    // writes are best-effort: a closed pipe must not turn a pass into a crash
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let status = if report.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "[{status}] {}  ({} terms checked, {} failures, {} ms)",
        report.identity,
        report.terms_checked,
        report.failures.len(),
        report.elapsed_ms
    );
    for (key, value) in &report.parameters {
        let _ = writeln!(out, "    param {key} = {value}");
    }
    for note in &report.convention_notes {
        let _ = writeln!(out, "    note: {note}");
    }
    const SHOWN: usize = 10;
    for f in report.failures.iter().take(SHOWN) {
        let _ = writeln!(out, "    failure at {}", f.index);
        let _ = writeln!(out, "      lhs: {}", f.lhs);
        let _ = writeln!(out, "      rhs: {}", f.rhs);
    }
    if report.failures.len() > SHOWN {
        let _ = writeln!(
            out,
            "    ... and {} more failures",
            report.failures.len() - SHOWN
        );
    }
}

fn finish(mut report: VerificationReport, started: Instant, common: &Common) -> i32 {
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    print_human(&report);
    if let Some(path) = &common.json {
        if let Err(e) = json::write_report(path, &report) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if report.passed() {
        0
    } else {
        1
    }
}

fn main() {
    let cli = Cli::parse();
    let code = dispatch(cli.command);
    std::process::exit(code);
}

fn dispatch(command: Command) -> i32 {
    let started = Instant::now();
    match command {
        Command::VerifyBijection {
            m_range,
            max_weight,
            cutoff,
            common,
        } => {
            if m_range < 0 {
                return usage_error("--m-range must be non-negative");
            }
            if cutoff > 12 {
                return usage_error("--cutoff above 12 enumerates too many subsets");
            }
            let report = partitions::verify_bijection_sweep(m_range, max_weight, cutoff);
            finish(report, started, &common)
        }
        Command::VerifyPsi {
            m_range,
            max_weight,
            order,
            common,
        } => {
            if m_range < 0 {
                return usage_error("--m-range must be non-negative");
            }
            let report = partitions::verify_psi_sweep(m_range, max_weight, order);
            finish(report, started, &common)
        }
        Command::VerifySnake { max_weight, common } => {
            let report = partitions::verify_snake_sweep(max_weight);
            finish(report, started, &common)
        }
        Command::VerifySplit {
            max_weight,
            m_range,
            common,
        } => {
            if m_range < 0 {
                return usage_error("--m-range must be non-negative");
            }
            let threads = effective_threads(common.threads);
            let report = run_split(max_weight, m_range, threads);
            finish(report, started, &common)
        }
        Command::VerifyJacobi {
            cutoff,
            mutate,
            common,
        } => {
            if cutoff < 1 {
                return usage_error("--cutoff must be at least 1");
            }
            if cutoff > 10 {
                return usage_error("--cutoff above 10 expands too many terms");
            }
            let threads = effective_threads(common.threads);
            let mutation = mutate.map_or(Mutation::None, Mutation::from);
            let report = run_jacobi_both(cutoff, mutation, threads);
            finish(report, started, &common)
        }
        Command::VerifyHirota {
            max_grade,
            mutate,
            common,
        } => {
            let threads = effective_threads(common.threads);
            let mutation = mutate.map_or(Mutation::None, Mutation::from);
            let report = run_hirota(max_grade, mutation, threads);
            finish(report, started, &common)
        }
        Command::VerifyClassicalJtp {
            order,
            m_range,
            common,
        } => {
            if order < 0 || m_range < 0 {
                return usage_error("--order and --m-range must be non-negative");
            }
            let report = special::verify_classical_jtp(order, m_range);
            finish(report, started, &common)
        }
        Command::VerifyW1inf {
            times,
            degree_cap,
            order,
            m_range,
            common,
        } => {
            if times < 3 {
                return usage_error("--times must name at least the third time variable");
            }
            if degree_cap < 1 {
                return usage_error("--degree-cap must be at least 1");
            }
            if order < 0 || m_range < 0 {
                return usage_error("--order and --m-range must be non-negative");
            }
            let report = special::verify_w1inf(times, degree_cap, order, m_range);
            finish(report, started, &common)
        }
        Command::VerifyQchar {
            rank,
            cutoff,
            common,
        } => {
            if cutoff < 1 {
                return usage_error("--cutoff must be at least 1");
            }
            let report = run_qchar(rank, cutoff);
            finish(report, started, &common)
        }
        Command::VerifyRed34 {
            rank,
            order,
            m_range,
            common,
        } => {
            if m_range < 0 {
                return usage_error("--m-range must be non-negative");
            }
            let report = run_red34(rank, order, m_range);
            finish(report, started, &common)
        }
        Command::VerifyFay { common } => {
            let report = special::verify_fay_xi_sweep();
            finish(report, started, &common)
        }
        Command::All {
            profile,
            mutate,
            common,
        } => {
            let threads = effective_threads(common.threads);
            let mutation = mutate.map_or(Mutation::None, Mutation::from);
            let report = run_all(profile, mutation, threads);
            finish(report, started, &common)
        }
    }
}
