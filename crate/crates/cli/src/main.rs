//! `radiuskit` command-line front end.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{CliError, Format};

#[derive(Parser, Debug)]
#[command(name = "radiuskit", version, about = "k-radius sequences, k-cover sequences and de Bruijn cycle bounds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Cap on worker threads.
    #[arg(long, env = "RADIUSKIT_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact a_k with an optimal cycle of the de Bruijn graph.
    Ak {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        /// Also list the cycle's edges and weights.
        #[arg(long)]
        cycle: bool,
    },
    /// z_k, the block-cycle upper bound, with the square-root lower bound.
    Zk {
        #[arg(long)]
        k: usize,
    },
    /// w_k(s), the least number of k-bad pairs over cyclic strings of length s.
    Wk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
    },
    /// A cyclic binary string with few bad pairs built from the optimal cycle.
    Lowbad {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
    },
    /// Lower bounds on f_k for a graph.
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        graph: String,
        /// Require a bipartition and use it.
        #[arg(long)]
        bipartite: bool,
    },
    /// Check a sequence file against a graph.
    Verify {
        kind: VerifyKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        graph: String,
        #[arg(long)]
        seq: String,
        /// Read the radius sequence cyclically.
        #[arg(long)]
        cyclic: bool,
    },
    /// Constructive sequences.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Exhaustive solvers for tiny graphs.
    Exact {
        kind: ExactKind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        graph: String,
        #[arg(long)]
        cyclic: bool,
        /// Wall-clock limit in seconds.
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
    },
    /// Max-cut of circulant graphs.
    Maxcut {
        #[command(subcommand)]
        what: Maxcut,
    },
    /// Build a reduction instance, optionally transforming a witness.
    Reduce {
        kind: ReduceKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        graph: String,
        #[arg(long)]
        witness: Option<String>,
        /// Write PREFIX.edges and PREFIX.meta.json.
        #[arg(long)]
        out: Option<String>,
    },
    /// a_k and optimal cycles for k = 1..5.
    Table2,
    /// a_k against z_k and the square-root bound.
    Conjecture {
        #[arg(long, default_value_t = 12)]
        max_k: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerifyKind {
    Radius,
    Cover,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ExactKind {
    Fk,
    Ck,
    Maxcut,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReduceKind {
    HamRadius,
    Cover1Coverk,
}

#[derive(Args, Debug)]
struct BipartiteArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// k-radius sequence for K_{m,n}.
    Bipartite {
        #[command(flatten)]
        size: BipartiteArgs,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// k-cover sequence for K_{m,n}.
    CoverBipartite {
        #[command(flatten)]
        size: BipartiteArgs,
    },
    /// Eulerian 1-radius sequence.
    Euler1 {
        #[arg(long)]
        graph: String,
    },
}

#[derive(Subcommand, Debug)]
enum Maxcut {
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Confirm by enumerating all cuts.
        #[arg(long)]
        brute_check: bool,
    },
}

fn run(cli: Cli) -> Result<output::Report, CliError> {
    use commands as c;
    match cli.command {
        Command::Ak { k, alphabet, cycle } => c::ak(k, alphabet, cycle),
        Command::Zk { k } => c::zk(k),
        Command::Wk { k, s, method, alphabet } => c::wk(k, s, &method, alphabet),
        Command::Lowbad { k, s } => c::lowbad(k, s),
        Command::Bounds { k, graph, bipartite } => c::bounds(k, &graph, bipartite),
        Command::Verify { kind, k, graph, seq, cyclic } => match kind {
            VerifyKind::Radius => c::verify_radius(k, &graph, &seq, cyclic),
            VerifyKind::Cover => c::verify_cover(k, &graph, &seq),
        },
        Command::Construct { what } => match what {
            Construct::Bipartite { size, epsilon, seed } => c::construct_bipartite(size.m, size.n, size.k, epsilon, seed),
            Construct::CoverBipartite { size } => c::construct_cover_bipartite(size.m, size.n, size.k),
            Construct::Euler1 { graph } => c::construct_euler1(&graph),
        },
        Command::Exact { kind, k, graph, cyclic, time_limit } => {
            let need_k = || k.ok_or_else(|| CliError::usage("--k is required for this solver"));
            match kind {
                ExactKind::Fk => c::exact_fk(need_k()?, &graph, cyclic, time_limit),
                ExactKind::Ck => c::exact_ck(need_k()?, &graph, time_limit),
                ExactKind::Maxcut => c::exact_maxcut(&graph),
            }
        }
        Command::Maxcut { what: Maxcut::Circulant { n, k, brute_check } } => c::maxcut_circulant(n, k, brute_check),
        Command::Reduce { kind, k, graph, witness, out } => match kind {
            ReduceKind::HamRadius => c::reduce_ham_radius(k, &graph, witness.as_deref(), out.as_deref()),
            ReduceKind::Cover1Coverk => c::reduce_cover(k, &graph, witness.as_deref(), out.as_deref()),
        },
        Command::Table2 => c::table2(),
        Command::Conjecture { max_k } => c::conjecture(max_k),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(report) => ExitCode::from(report.emit(format)),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
