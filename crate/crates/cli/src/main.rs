use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use movlab::codec;
use movlab::experiments::{
    run_experiment, summarize, summary_table, write_rows_file, write_summary_file, ExperimentConfig,
};
use movlab::generators::{generate, GeneratorConfig, Model};
use movlab::rng::mix;
use movlab::verification::{run_property, PropertyOptions, PropertyReport, CATALOG};
use movlab::{build_fixture, mov, winners, AlternativeId, Error, SolutionId, Tournament};

const FIXTURE_PREFIX: &str = "fixture:";

#[derive(Parser)]
#[command(
    name = "movlab",
    version,
    about = "Margin of victory for tournament solutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample random tournaments into TRN1 files t_0000.trn, t_0001.trn, ...
    Gen(GenArgs),
    /// Print the winners of a tournament, one index per line, ascending.
    Solve(SolveArgs),
    /// Print `id<TAB>value` margin-of-victory lines.
    Mov(MovArgs),
    /// Run the experiment grid and write per-sample rows as CSV.
    Experiment(ExperimentArgs),
    /// Run property suites and print a PASS/FAIL table.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct GenArgs {
    /// Generator: uniform, cnoise, cnoise-voters, ic, urn, mallows.
    #[arg(long)]
    model: Model,
    /// Number of alternatives.
    #[arg(long)]
    n: usize,
    /// Master seed; file i is drawn with a seed mixed from this and i.
    #[arg(long, env = "MOVLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of tournaments to write.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Output directory, created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Probability that the lower-indexed alternative wins a pair (cnoise models).
    #[arg(long)]
    p: Option<f64>,
    /// Number of voters (voter-based models).
    #[arg(long)]
    voters: Option<usize>,
    /// Urn replacement factor; a fresh ranking is drawn with probability 1/(1 + v * alpha).
    #[arg(long)]
    alpha_factor: Option<f64>,
    /// Mallows dispersion in (0, 1].
    #[arg(long)]
    phi: Option<f64>,
}

#[derive(clap::Args)]
struct SolveArgs {
    /// TRN1 file, or `fixture:<name>[:<p1>,<p2>,...]`.
    #[arg(long)]
    file: String,
    /// co, tc, uc, kings<k> or ba.
    #[arg(long)]
    solution: SolutionId,
}

#[derive(clap::Args)]
struct MovArgs {
    /// TRN1 file, or `fixture:<name>[:<p1>,<p2>,...]`.
    #[arg(long)]
    file: String,
    /// co, tc, uc, kings<k> or ba.
    #[arg(long)]
    solution: SolutionId,
    /// Only this alternative (0-based index); default all.
    #[arg(long)]
    alternative: Option<usize>,
    /// Append a minimum reversal set as space-separated `u->v` pairs.
    #[arg(long)]
    witness: bool,
}

#[derive(clap::Args)]
struct ExperimentArgs {
    /// JSON config; omitted keys take their defaults (all six models,
    /// sizes 5..30 step 5, 100 samples, co/uc/kings3/tc, seed 0).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Per-sample CSV output.
    #[arg(long)]
    out: PathBuf,
    /// Aggregated CSV output.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// `all` or one property name.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Random trials per property.
    #[arg(long, default_value_t = 500)]
    trials: usize,
    /// Master seed; trial i uses a seed mixed from this and i.
    #[arg(long, env = "MOVLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Smallest number of alternatives in random trials.
    #[arg(long, default_value_t = 3)]
    min_n: usize,
    /// Largest number of alternatives in random trials.
    #[arg(long, default_value_t = 25)]
    max_n: usize,
    /// Write each violating tournament to this directory.
    #[arg(long)]
    dump: Option<PathBuf>,
}

enum Failure {
    Input(Error),
    Guard(Error),
    Property,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_guard() {
            Failure::Guard(e)
        } else {
            Failure::Input(e)
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(Error::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Experiment(args) => experiment(args),
        other => single_threaded(|| match other {
            Command::Gen(args) => gen(args),
            Command::Solve(args) => solve(args),
            Command::Mov(args) => mov_cmd(args),
            Command::Verify(args) => verify(args),
            Command::Experiment(_) => unreachable!(),
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Guard(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Property) => ExitCode::from(3),
    }
}

fn single_threaded(f: impl FnOnce() -> Result<(), Failure> + Send) -> Result<(), Failure> {
    match rayon::ThreadPoolBuilder::new().num_threads(1).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn load(spec: &str) -> Result<Tournament, Error> {
    let Some(rest) = spec.strip_prefix(FIXTURE_PREFIX) else {
        return codec::read_file(Path::new(spec));
    };
    let (name, params) = match rest.split_once(':') {
        Some((name, list)) => {
            let params = list
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse()
                        .map_err(|_| Error::InvalidFixture(format!("bad parameter `{p}`")))
                })
                .collect::<Result<Vec<usize>, _>>()?;
            (name, params)
        }
        None => (rest, Vec::new()),
    };
    Ok(build_fixture(name, &params)?.tournament)
}

fn create_dir(dir: &Path) -> Result<(), Error> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn gen(args: GenArgs) -> Result<(), Failure> {
    let mut cfg = GeneratorConfig::new(args.model, args.n, args.seed);
    if let Some(p) = args.p {
        cfg.p = p;
    }
    if let Some(v) = args.voters {
        cfg.voters = v;
    }
    if let Some(a) = args.alpha_factor {
        cfg.alpha_factor = a;
    }
    if let Some(phi) = args.phi {
        cfg.phi = phi;
    }
    cfg.validate()?;
    create_dir(&args.out)?;
    for i in 0..args.count {
        cfg.seed = mix(args.seed, i as u64);
        let t = generate(&cfg)?;
        codec::write_file(&args.out.join(format!("t_{i:04}.trn")), &t)?;
    }
    Ok(())
}

fn solve(args: SolveArgs) -> Result<(), Failure> {
    let t = load(&args.file)?;
    let w = winners(&t, args.solution)?;
    let mut out = io::stdout().lock();
    for x in w.iter() {
        writeln!(out, "{x}")?;
    }
    Ok(())
}

fn mov_cmd(args: MovArgs) -> Result<(), Failure> {
    let t = load(&args.file)?;
    let targets: Vec<AlternativeId> = match args.alternative {
        Some(a) if a < t.n() => vec![AlternativeId(a)],
        Some(a) => {
            return Err(Failure::Input(Error::InvalidTournament(format!(
                "alternative {a} out of range for n={}",
                t.n()
            ))))
        }
        None => t.alternatives().collect(),
    };
    let mut out = io::stdout().lock();
    for x in targets {
        let r = mov(&t, args.solution, x)?;
        write!(out, "{}\t{}", x.0, r.value)?;
        if args.witness {
            let pairs: Vec<String> = r
                .witness
                .iter()
                .map(|e| format!("{}->{}", e.from.0, e.to.0))
                .collect();
            write!(out, "\t{}", pairs.join(" "))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<(), Failure> {
    let cfg = match &args.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    cfg.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            return Err(Failure::Input(Error::InvalidConfig(
                "--jobs must be at least 1".into(),
            )));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool
        .build()
        .map_err(|e| Failure::Input(Error::InvalidConfig(format!("thread pool: {e}"))))?;
    let rows = pool.install(|| run_experiment(&cfg))?;
    write_rows_file(&rows, &args.out)?;
    let summary = summarize(&rows);
    if let Some(path) = &args.summary {
        write_summary_file(&summary, path)?;
    }
    print!("{}", summary_table(&summary));
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let names: Vec<&str> = if args.suite == "all" {
        CATALOG.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    let opts = PropertyOptions {
        trials: args.trials,
        seed: args.seed,
        min_n: args.min_n,
        max_n: args.max_n,
    };
    if let Some(dir) = &args.dump {
        create_dir(dir)?;
    }
    let mut out = io::stdout().lock();
    let mut failed = false;
    for name in names {
        let report = run_property(name, &opts)?;
        print_report(&mut out, &report)?;
        failed |= !report.passed;
        if let Some(dir) = &args.dump {
            dump(dir, &report)?;
        }
    }
    if failed {
        Err(Failure::Property)
    } else {
        Ok(())
    }
}

fn print_report(out: &mut impl Write, r: &PropertyReport) -> io::Result<()> {
    let status = if r.passed { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "{}\t{status}\t{} trials\t{} violations\t{}",
        r.name,
        r.trials,
        r.violations.len(),
        r.model
    )?;
    for note in &r.notes {
        writeln!(out, "\t{note}")?;
    }
    for v in r.violations.iter().take(3) {
        writeln!(out, "\t{}", v.detail)?;
    }
    Ok(())
}

fn dump(dir: &Path, r: &PropertyReport) -> Result<(), Error> {
    for (i, v) in r.violations.iter().enumerate() {
        let stem = dir.join(format!("{}_{i:04}", r.name));
        let write =
            |path: PathBuf, text: &str| fs::write(&path, text).map_err(|source| Error::Io { path, source });
        if !v.tournament.is_empty() {
            write(stem.with_extension("trn"), &v.tournament)?;
        }
        write(stem.with_extension("txt"), &format!("{}\n", v.detail))?;
    }
    Ok(())
}
