use clap::{Args, Parser, Subcommand};
use hdql::cli::{self, CommonOpts, EvalRequest};

/// Model checker and logic-programming engine for hybrid-dynamic quantum
/// logic over finite-dimensional state spaces.
#[derive(Parser)]
#[command(name = "hdql", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Numeric tolerance for equality, rank and membership decisions.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Maximum star-unfolding depth in pointwise evaluation.
    #[arg(long = "star-budget")]
    star_budget: Option<usize>,
    /// Ground-term universe depth for forall instantiation and queries.
    #[arg(long = "term-depth")]
    term_depth: Option<usize>,
    /// Number of sampled parameter instances for specs with `param`.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Seed for parameter sampling.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn opts(&self) -> CommonOpts {
        CommonOpts {
            epsilon: self.epsilon,
            star_budget: self.star_budget,
            term_depth: self.term_depth,
            samples: self.samples,
            seed: self.seed,
            json: self.json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a spec, validate its model, and classify its axioms.
    Check {
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a sentence at a state (--sentence with --at) or globally
    /// (--global).
    Eval {
        file: String,
        /// Anchor state as a ground term; the origin when omitted.
        #[arg(long)]
        at: Option<String>,
        /// Sentence to evaluate at the anchor state.
        #[arg(long)]
        sentence: Option<String>,
        /// Sentence to evaluate globally (at every state).
        #[arg(long)]
        global: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Saturate the program into its initial model and report SAT/UNSAT with
    /// the derived extents.
    Init {
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Answer an existential query by ground-substitution search.
    Query {
        file: String,
        /// Anchor state as a ground term; the origin when omitted.
        #[arg(long)]
        at: Option<String>,
        /// Query of the form `exists x . BODY`; defaults to the spec\'s
        /// queries.
        #[arg(long)]
        query: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn main() {
    let cli = Cli::parse();
    let mut out = std::io::stdout();
    let code = match &cli.command {
        Command::Check { file, common } => cli::cmd_check(file, &common.opts(), &mut out),
        Command::Eval {
            file,
            at,
            sentence,
            global,
            common,
        } => {
            let req = EvalRequest {
                at: at.as_deref(),
                sentence: sentence.as_deref(),
                global: global.as_deref(),
            };
            cli::cmd_eval(file, &req, &common.opts(), &mut out)
        }
        Command::Init { file, common } => cli::cmd_init(file, &common.opts(), &mut out),
        Command::Query {
            file,
            at,
            query,
            common,
        } => cli::cmd_query(file, at.as_deref(), query.as_deref(), &common.opts(), &mut out),
    };
    std::process::exit(code);
}
