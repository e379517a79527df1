//! Command-line surface: solve, average, restrict, reduce, check, generate.
//!
//! Exit codes: 0 success (all axioms pass), 1 axiom violation, 2 input
//! error, 3 size/cap error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pfg::axioms::{
    check_balanced_contributions, check_efficiency, check_hm_consistency,
    check_sobolev_consistency, check_two_standardness, AxiomReport,
};
use pfg::gamefile::{parse_game, parse_value, serialize_game, Game, LabeledGame};
use pfg::generators;
use pfg::reduction::{hm_reduce_tux, set_hm_reduce_tux, sobolev_reduce_tux};
use pfg::restriction::restrict_set;
use pfg::solution::{EgalitarianSplit, ExternalityFree, Memoized, Mpw, SolutionConcept};
use pfg::values;
use pfg::{Coalition, Error, PayoffVector, Rational, TuxGame};

#[derive(Parser)]
#[command(name = "pfg", about = "Exact solver for games in partition function form")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Fill unlisted worths with 0 instead of requiring complete files.
    #[arg(long, global = true)]
    allow_missing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum ValueKind {
    Mpw,
    ExtFree,
    Shapley,
    Egalitarian,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Sobolev,
    Hm,
    SetHm,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a solution on a game file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ValueKind::Mpw)]
        value: ValueKind,
    },
    /// Print the Ewens-average TU game of a TUX game file.
    Avg { file: PathBuf },
    /// Print the restriction subgame after removing the listed players.
    Restrict {
        file: PathBuf,
        /// Players to remove, comma-separated labels.
        #[arg(long, value_delimiter = ',', required = true)]
        remove: Vec<String>,
    },
    /// Print a reduced game.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Players to remove, comma-separated labels (one for
        /// sobolev/hm).
        #[arg(long, value_delimiter = ',', required = true)]
        remove: Vec<String>,
        #[arg(long, value_enum, default_value_t = ValueKind::Mpw)]
        value: ValueKind,
    },
    /// Check axioms of a solution on a game file.
    Check {
        file: PathBuf,
        /// Axioms to check, comma-separated among ef,bc,sc,hmc,shmc,2s.
        /// Default: all applicable.
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<String>,
        #[arg(long, value_enum, default_value_t = ValueKind::Mpw)]
        value: ValueKind,
    },
    /// Print a generated game file.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Symmetric Cournot oligopoly.
    Cournot {
        #[arg(long)]
        n: usize,
        /// Demand/cost constant; integer, decimal, or p/q.
        #[arg(long, default_value = "1")]
        scale: String,
    },
    /// The three-player public goods example.
    Maskin,
    /// Seeded random integer-worth game.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        magnitude: i64,
    },
}

/// Reasons to stop, mapped onto the exit-code contract.
enum Failure {
    Input(String),
    Size(String),
    Violations,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. }
            | Error::TooFewPlayers { .. }
            | Error::WrongPlayerCount { .. }
            | Error::RemoveAll => Failure::Size(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::from(0),
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Size(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load(file: &PathBuf, allow_missing: bool) -> Result<LabeledGame, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", file.display())))?;
    Ok(parse_game(&text, allow_missing)?)
}

fn solution(kind: ValueKind) -> Result<Box<dyn SolutionConcept>, Failure> {
    Ok(match kind {
        ValueKind::Mpw => Box::new(Memoized::new(Mpw)),
        ValueKind::ExtFree => Box::new(Memoized::new(ExternalityFree)),
        ValueKind::Egalitarian => Box::new(EgalitarianSplit),
        ValueKind::Shapley => {
            return Err(Failure::Input(
                "shapley applies to TU games; use `solve --value shapley` on a TU file".into(),
            ))
        }
    })
}

fn remove_set(g: &LabeledGame, labels: &[String]) -> Result<Coalition, Failure> {
    let mut out = Coalition::EMPTY;
    for label in labels {
        let p = g
            .player_of(label)
            .ok_or_else(|| Failure::Input(format!("unknown player `{label}`")))?;
        if out.contains(p) {
            return Err(Failure::Input(format!("player `{label}` listed twice")));
        }
        out = out.insert(p);
    }
    Ok(out)
}

fn print_payoffs(g: &LabeledGame, payoffs: &PayoffVector, format: Format) {
    for (p, v) in payoffs.iter() {
        match format {
            Format::Text => println!("{}: {v}", g.label_of(p)),
            Format::Machine => println!("player={} value={v}", g.label_of(p)),
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Solve { file, value } => {
            let g = load(file, cli.allow_missing)?;
            let payoffs = match (value, g.game()) {
                (ValueKind::Shapley, Game::Tu(v)) => values::shapley(v)?,
                (ValueKind::Shapley, Game::Tux(w)) => {
                    if !w.is_externality_free() {
                        return Err(Failure::Input(
                            "shapley requires a TU file or an externality-free TUX game".into(),
                        ));
                    }
                    values::shapley(&values::average_game(w)?)?
                }
                (ValueKind::Mpw, _) => values::mpw(&g.game().to_tux()?)?,
                (ValueKind::ExtFree, _) => {
                    values::externality_free_value(&g.game().to_tux()?)?
                }
                (ValueKind::Egalitarian, _) => {
                    EgalitarianSplit.evaluate(&g.game().to_tux()?)?
                }
            };
            print_payoffs(&g, &payoffs, cli.format);
            Ok(())
        }
        Command::Avg { file } => {
            let g = load(file, cli.allow_missing)?;
            let avg = values::average_game(&g.game().to_tux()?)?;
            print!("{}", serialize_game(&g.with_game(Game::Tu(avg))));
            Ok(())
        }
        Command::Restrict { file, remove } => {
            let g = load(file, cli.allow_missing)?;
            let t = remove_set(&g, remove)?;
            let w = g.game().to_tux()?;
            if t == w.players() {
                return Err(Failure::Size(Error::RemoveAll.to_string()));
            }
            let sub = restrict_set(&w, t)?;
            print!("{}", serialize_game(&g.with_game(Game::Tux(sub))));
            Ok(())
        }
        Command::Reduce {
            file,
            method,
            remove,
            value,
        } => {
            let g = load(file, cli.allow_missing)?;
            let t = remove_set(&g, remove)?;
            let w = g.game().to_tux()?;
            let phi = solution(*value)?;
            let reduced = match method {
                Method::SetHm => set_hm_reduce_tux(&w, t, phi.as_ref())?,
                Method::Sobolev | Method::Hm => {
                    let j = match t.members()[..] {
                        [j] => j,
                        _ => {
                            return Err(Failure::Input(
                                "sobolev and hm reductions remove exactly one player; \
                                 use set-hm for coalitions"
                                    .into(),
                            ))
                        }
                    };
                    match method {
                        Method::Sobolev => sobolev_reduce_tux(&w, j, phi.as_ref())?,
                        _ => hm_reduce_tux(&w, j, phi.as_ref())?,
                    }
                }
            };
            print!("{}", serialize_game(&g.with_game(Game::Tux(reduced))));
            Ok(())
        }
        Command::Check {
            file,
            axioms,
            value,
        } => {
            let g = load(file, cli.allow_missing)?;
            let w = g.game().to_tux()?;
            let phi = solution(*value)?;
            let names: Vec<String> = if axioms.is_empty() {
                let mut all = vec!["ef", "bc", "sc", "hmc", "shmc"];
                if w.num_players() == 2 {
                    all.push("2s");
                }
                all.into_iter().map(str::to_string).collect()
            } else {
                axioms.clone()
            };
            let mut any_violation = false;
            for name in &names {
                let report = check_axiom(name, phi.as_ref(), &w)?;
                any_violation |= !report.pass();
                print_report(&g, &report, cli.format);
            }
            if any_violation {
                Err(Failure::Violations)
            } else {
                Ok(())
            }
        }
        Command::Gen { family } => {
            let game = match family {
                Family::Cournot { n, scale } => {
                    let scale: Rational = parse_value(scale)
                        .ok_or_else(|| Failure::Input(format!("invalid scale `{scale}`")))?;
                    generators::cournot_game(*n, scale)?
                }
                Family::Maskin => generators::maskin_public_goods(),
                Family::Random { n, seed, magnitude } => {
                    generators::random_tux_game(*n, *seed, *magnitude)?
                }
            };
            print!(
                "{}",
                serialize_game(&LabeledGame::numbered(Game::Tux(game)))
            );
            Ok(())
        }
    }
}

fn check_axiom(
    name: &str,
    phi: &dyn SolutionConcept,
    w: &TuxGame,
) -> Result<AxiomReport, Failure> {
    Ok(match name {
        "ef" => check_efficiency(phi, w)?,
        "bc" => check_balanced_contributions(phi, w)?,
        "sc" => check_sobolev_consistency(phi, w)?,
        "hmc" => check_hm_consistency(phi, w, false)?,
        "shmc" => check_hm_consistency(phi, w, true)?,
        "2s" => check_two_standardness(phi, w)?,
        other => return Err(Failure::Input(format!("unknown axiom `{other}`"))),
    })
}

fn print_report(g: &LabeledGame, report: &AxiomReport, format: Format) {
    let verdict = if report.pass() { "pass" } else { "fail" };
    match format {
        Format::Machine => println!("axiom={} result={verdict}", report.axiom),
        Format::Text => {
            println!("axiom {}: {verdict}", report.axiom);
            for v in &report.violations {
                println!("  {}: {} != {}", v.site, v.lhs, v.rhs);
            }
            let _ = g;
        }
    }
}
