mod commands;
mod dot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Outcome;

#[derive(Parser)]
#[command(name = "wmp", version, about = "Window mean-payoff objectives on stochastic games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Fwmp,
    Bwmp,
    Reach,
    Safety,
    Buchi,
    Cobuchi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlayerArg {
    Max,
    Min,
}

#[derive(clap::Args, Clone, Debug)]
pub struct ObjectiveFlags {
    #[arg(long, value_enum)]
    pub objective: ObjectiveArg,
    /// Window length, for fwmp.
    #[arg(long)]
    pub window: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a game file.
    Validate { game: PathBuf },
    /// Check a value certificate; exit 0 iff it is accepted.
    Verify {
        game: PathBuf,
        certificate: PathBuf,
        #[command(flatten)]
        objective: ObjectiveFlags,
        /// Denominator bound; defaults to the global bound of the game.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Compute the verified expected value vector and optimal strategies.
    Solve {
        game: PathBuf,
        #[command(flatten)]
        objective: ObjectiveFlags,
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Almost-sure winning region of a player.
    AlmostSure {
        game: PathBuf,
        #[command(flatten)]
        objective: ObjectiveFlags,
        #[arg(long, value_enum)]
        player: PlayerArg,
        /// Threshold on the window value, for fwmp and bwmp.
        #[arg(long, allow_hyphen_values = true)]
        threshold: Option<String>,
        #[arg(long)]
        strict: bool,
        /// Comma-separated target or safe vertices, for the other objectives.
        #[arg(long)]
        target: Option<String>,
    },
    /// Window value of an ultimately periodic play, given as `stem;cycle`.
    EvalLasso {
        game: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lasso: String,
        #[command(flatten)]
        objective: ObjectiveFlags,
    },
    /// Monte Carlo estimate of the window value under a strategy profile.
    Simulate {
        game: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[command(flatten)]
        objective: ObjectiveFlags,
        #[arg(long, default_value_t = 10_000)]
        episodes: usize,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start vertex; every vertex when omitted.
        #[arg(long)]
        start: Option<String>,
    },
    /// Graphviz rendering of a game.
    ExportDot {
        game: PathBuf,
        /// Certificate whose value classes become clusters.
        #[arg(long)]
        classes: Option<PathBuf>,
    },
    /// Fixed-window instance of a reachability game with an absorbing target.
    GenSsg {
        game: PathBuf,
        /// Absorbing target vertex.
        #[arg(long)]
        target: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate { game } => commands::validate(&game),
        Command::Verify {
            game,
            certificate,
            objective,
            bound,
        } => commands::verify(&game, &certificate, &objective, bound.as_deref()),
        Command::Solve {
            game,
            objective,
            bound,
            output,
        } => commands::solve(&game, &objective, bound.as_deref(), output.as_deref()),
        Command::AlmostSure {
            game,
            objective,
            player,
            threshold,
            strict,
            target,
        } => commands::almost_sure(&game, &objective, player, threshold.as_deref(), strict, target.as_deref()),
        Command::EvalLasso { game, lasso, objective } => commands::eval_lasso(&game, &lasso, &objective),
        Command::Simulate {
            game,
            profile,
            objective,
            episodes,
            horizon,
            seed,
            start,
        } => commands::simulate(&game, &profile, &objective, episodes, horizon, seed, start.as_deref()),
        Command::ExportDot { game, classes } => commands::export_dot(&game, classes.as_deref()),
        Command::GenSsg { game, target, output } => commands::gen_ssg(&game, &target, output.as_deref()),
    };
    match outcome {
        Outcome::Done(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Outcome::Rejected(text) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Outcome::Failed(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Outcome::BadInput(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
