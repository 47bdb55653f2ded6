use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bggx::cache::TableCache;
use bggx::checks::{ClosedForms, DEFAULT_SEED};
use bggx::commands::{self, parse_range, ReproOptions};
use bggx::{CliError, Format, RunReport};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bggx", version, about = "Exact Schubert calculus, BGG Chern classes and derivative complexes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for random subspaces.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall time in the report (JSON output is then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schubert calculus on Gr(k, q).
    Schubert {
        #[command(subcommand)]
        op: SchubertOp,
    },
    /// Chern classes of symmetric powers.
    Chern {
        #[command(subcommand)]
        op: ChernOp,
    },
    /// Vanishing pattern of c(F) above the partition mu.
    Conjecture {
        #[command(subcommand)]
        op: ConjectureOp,
    },
    /// The g_lambda of c(G) as polynomials in h and q.
    Gclass {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Hodge-number inequalities.
    Bounds {
        #[command(subcommand)]
        op: BoundsOp,
    },
    /// Derivative complexes over a Hodge datum.
    Complex {
        #[command(subcommand)]
        op: ComplexOp,
    },
    /// Worked examples.
    Example {
        #[command(subcommand)]
        op: ExampleOp,
    },
    /// Model Hodge data.
    Model {
        #[command(subcommand)]
        op: ModelOp,
    },
    /// Combinatorial identities.
    Identity {
        #[command(subcommand)]
        op: IdentityOp,
    },
    /// Rerun every reproducible check in one report.
    Repro {
        /// Random subspaces per cell of the exactness battery.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum SchubertOp {
    /// Multiply two classes, e.g. `mult --k 2 --q 5 "2,1" "1:2 + 2"`.
    Mult {
        #[arg(long)]
        k: usize,
        /// Omit for the stable ring (no width bound).
        #[arg(long)]
        q: Option<usize>,
        a: String,
        b: String,
    },
}

#[derive(Subcommand)]
enum ChernOp {
    /// c(Sym^r E) for a rank-k bundle E in e_1..e_k.
    Sym {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        power: usize,
        #[arg(long)]
        max_degree: usize,
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ConjectureOp {
    Verify {
        /// A range like `2..4`, or a single k.
        #[arg(long, default_value = "2..4")]
        k: String,
        #[arg(long, default_value_t = 12)]
        q_max: usize,
    },
}

#[derive(Subcommand)]
enum BoundsOp {
    /// Lower bounds on h^{2,0}.
    H20 {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        d: usize,
        /// Defaults to every k < d.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Alternating-sum and binomial inequalities on a Hodge table.
    Check {
        #[arg(long)]
        hodge: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum ComplexOp {
    /// Build C^j_{r,W} and report its homology.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// Basis of W, one `;`-separated vector per group: `1,0,0;0,1,0`.
        #[arg(long)]
        w: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        e2_table: bool,
    },
}

#[derive(Subcommand)]
enum ExampleOp {
    /// Product of two genus-3 curves.
    Curves {
        #[arg(long)]
        emit_datum: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ModelOp {
    /// Abelian variety of dimension q.
    Abelian {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        emit_datum: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IdentityOp {
    Combin {
        #[arg(long, default_value_t = 30)]
        max: u32,
    },
}

fn run(cli: &Cli) -> Result<(RunReport, Format), CliError> {
    let cache = TableCache::new();
    let mut format = cli.format;
    let report = match &cli.command {
        Command::Schubert { op: SchubertOp::Mult { k, q, a, b } } => commands::schubert_mult(*k, *q, a, b)?,
        Command::Chern { op: ChernOp::Sym { rank, power, max_degree, json } } => {
            if *json {
                format = Format::Json;
            }
            commands::chern_sym(*rank, *power, *max_degree)?
        }
        Command::Conjecture { op: ConjectureOp::Verify { k, q_max } } => {
            commands::conjecture_verify(parse_range(k)?, *q_max, &cache)?
        }
        Command::Gclass { k, max_degree } => commands::gclass(*k, *max_degree)?,
        Command::Bounds { op: BoundsOp::H20 { q, d, k } } => {
            let ks = match k {
                Some(k) => *k..=*k,
                None => 1..=d.saturating_sub(1),
            };
            commands::bounds_h20(*q, *d, ks)?
        }
        Command::Bounds { op: BoundsOp::Check { hodge, k, r } } => commands::bounds_check(hodge, *k, *r)?,
        Command::Complex { op: ComplexOp::Check { input, w, r, j, e2_table } } => {
            commands::complex_check(input, w, *r, *j, *e2_table)?
        }
        Command::Example { op: ExampleOp::Curves { emit_datum } } => commands::example_curves(emit_datum.as_deref())?,
        Command::Model { op: ModelOp::Abelian { q, emit_datum } } => commands::model_abelian(*q, emit_datum.as_deref())?,
        Command::Identity { op: IdentityOp::Combin { max } } => commands::identity_combin(*max),
        Command::Repro { samples } => {
            let opts = ReproOptions {
                seed: cli.seed,
                samples: *samples,
                forms: ClosedForms::default(),
            };
            commands::repro(&opts, &cache)?
        }
    };
    Ok((report, format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = run(&cli).and_then(|(mut report, format)| {
        if cli.timing {
            report.wall_time = Some(start.elapsed());
        }
        let text = report.render(format)?;
        match &cli.out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(report.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
