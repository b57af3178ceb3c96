//! `quadri`: runs the verification checks and prints one JSON object per
//! check. Exit status is 0 when every check passes, 1 when one fails and
//! 2 on invalid flags.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadri_core::checks::{
    self, battery, timed, AlgebraName, CheckError, OperadName, Report, StructureCheck,
};
use quadri_core::series::table_csv;
use rayon::prelude::*;

#[derive(Parser, Debug)]
#[command(name = "quadri", version, about = "Exact checks for quadri-algebras, their operads and models")]
struct Cli {
    /// Allow the expensive parameter ranges.
    #[arg(long, global = true)]
    slow: bool,
    /// Worker threads for independent checks.
    #[arg(long, global = true, env = "QUADRI_JOBS")]
    jobs: Option<usize>,
    /// Add wall time to each report. Output is then no longer reproducible.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one check.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Dimensions of a named operad.
    Dims {
        #[arg(long, value_enum)]
        operad: OperadArg,
        #[arg(long, default_value_t = 10)]
        upto: usize,
    },
    /// Dimension series a, b, c and their printed values.
    Series {
        #[arg(long, value_enum, default_value_t = TableArg::Abc)]
        table: TableArg,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Json)]
        format: SeriesFormat,
    },
    /// Run every check at its default parameters.
    Report {
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    Axioms(StructureArgs),
    Coaxioms(StructureArgs),
    Bialgebra(StructureArgs),
    Confluence {
        #[arg(long, value_enum)]
        operad: OperadArg,
    },
    KoszulDual {
        #[arg(long, value_enum)]
        operad: OperadArg,
    },
    Manin,
    Theta {
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
    },
    FreenessFqsym {
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    Rect {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    Psi {
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    Primitives {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
}

#[derive(Args, Debug)]
struct StructureArgs {
    #[arg(long, value_enum)]
    algebra: AlgebraArg,
    #[arg(long, default_value_t = 5)]
    max_degree: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgebraArg {
    Fqsym,
    Wqsym,
    Rect,
    ShuffleWords,
}

impl From<AlgebraArg> for AlgebraName {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::Fqsym => AlgebraName::Fqsym,
            AlgebraArg::Wqsym => AlgebraName::Wqsym,
            AlgebraArg::Rect => AlgebraName::Rect,
            AlgebraArg::ShuffleWords => AlgebraName::ShuffleWords,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OperadArg {
    Quad,
    QuadShriek,
    Dend,
    Dias,
}

impl From<OperadArg> for OperadName {
    fn from(o: OperadArg) -> Self {
        match o {
            OperadArg::Quad => OperadName::Quad,
            OperadArg::QuadShriek => OperadName::QuadShriek,
            OperadArg::Dend => OperadName::Dend,
            OperadArg::Dias => OperadName::Dias,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableArg {
    Abc,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
    Text,
}

type Job = Box<dyn Fn() -> Result<Report, CheckError> + Send + Sync>;

fn single(cli: &Cli, cmd: &CheckCommand) -> Job {
    let slow = cli.slow;
    match cmd {
        CheckCommand::Axioms(a) => structure_job(StructureCheck::Axioms, a, slow),
        CheckCommand::Coaxioms(a) => structure_job(StructureCheck::Coaxioms, a, slow),
        CheckCommand::Bialgebra(a) => structure_job(StructureCheck::Bialgebra, a, slow),
        CheckCommand::Confluence { operad } => {
            let o = (*operad).into();
            Box::new(move || checks::confluence(o))
        }
        CheckCommand::KoszulDual { operad } => {
            let o = (*operad).into();
            Box::new(move || checks::koszul(o))
        }
        CheckCommand::Manin => Box::new(checks::manin),
        CheckCommand::Theta { max_arity } => {
            let n = *max_arity;
            Box::new(move || checks::theta(n, slow))
        }
        CheckCommand::FreenessFqsym { max_degree } => {
            let n = *max_degree;
            Box::new(move || checks::freeness_fqsym(n, slow))
        }
        CheckCommand::Rect { max_n } => {
            let n = *max_n;
            Box::new(move || checks::rect(n))
        }
        CheckCommand::Psi { max_degree } => {
            let n = *max_degree;
            Box::new(move || checks::psi_check(n))
        }
        CheckCommand::Primitives { max_degree } => {
            let n = *max_degree;
            Box::new(move || checks::primitives(n))
        }
    }
}

fn structure_job(check: StructureCheck, a: &StructureArgs, slow: bool) -> Job {
    let (alg, deg) = (a.algebra.into(), a.max_degree);
    Box::new(move || checks::structure(check, alg, deg, slow))
}

fn csv_field(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn print_reports(reports: &[Report], format: ReportFormat) {
    match format {
        ReportFormat::Json => {
            for r in reports {
                println!("{}", serde_json::to_string(r).expect("reports serialize"));
            }
        }
        ReportFormat::Csv => {
            println!("check,params,verdict,witness");
            for r in reports {
                println!(
                    "{},{},{},{}",
                    r.check,
                    csv_field(&r.params.to_string()),
                    if r.passed() { "pass" } else { "fail" },
                    csv_field(&r.witness.to_string())
                );
            }
        }
        ReportFormat::Text => {
            for r in reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                match r.elapsed_ms {
                    Some(ms) => println!("{verdict} {} {} {ms}ms", r.check, r.params),
                    None => println!("{verdict} {} {}", r.check, r.params),
                }
            }
        }
    }
}

fn run(cli: &Cli) -> Result<Vec<Report>, CheckError> {
    let jobs: Vec<Job> = match &cli.command {
        Command::Check(c) => vec![single(cli, c)],
        Command::Dims { operad, upto } => {
            let (o, n) = ((*operad).into(), *upto);
            vec![Box::new(move || checks::dims(o, n))]
        }
        Command::Series { .. } => vec![Box::new(checks::series_table)],
        Command::Report { .. } => battery(cli.slow).into_iter().map(|(_, f)| f).collect(),
    };
    let timings = cli.timings;
    jobs.par_iter()
        .map(|f| if timings { timed(f) } else { f() })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Command::Series { format: SeriesFormat::Csv, .. } = cli.command {
        print!("{}", table_csv(10).expect("ten rows are below the cap"));
        return ExitCode::SUCCESS;
    }
    match pool.install(|| run(&cli)) {
        Err(e @ CheckError::Internal(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Ok(reports) => {
            let format = match cli.command {
                Command::Report { format } => format,
                _ => ReportFormat::Json,
            };
            print_reports(&reports, format);
            if reports.iter().all(Report::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
