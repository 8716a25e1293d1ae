use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nimcash_core::classes::classify;
use nimcash_core::classic::{win_classic_closed, ClassicTable};
use nimcash_core::lab::{middle_window, sweep_with, CashAxis, SweepConfig};
use nimcash_core::oracle::ORACLE_STONE_LIMIT;
use nimcash_core::{
    build_grid, Cash, Execution, FastWinner, GridSource, Oracle, RenderFormat, RuleSet, Span,
    TextMode,
};

#[derive(Debug, Parser)]
#[command(
    name = "nimcash",
    version,
    about = "Solver and theorem lab for NIM with Cash"
)]
struct Cli {
    /// Evaluate everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Position {
    /// Move set, comma separated, e.g. 1,3,4
    #[arg(short = 'A', long = "moves")]
    moves: RuleSet,

    /// Pile size
    #[arg(short = 'n', long = "stones")]
    stones: u64,
}

#[derive(Debug, Args)]
struct Bankrolls {
    /// Player 1's cash (integer or `inf`)
    #[arg(short = 'd', long = "cash1")]
    cash1: Cash,

    /// Player 2's cash (integer or `inf`)
    #[arg(short = 'e', long = "cash2")]
    cash2: Cash,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

impl From<Format> for RenderFormat {
    fn from(f: Format) -> RenderFormat {
        match f {
            Format::Csv => RenderFormat::Csv,
            Format::Json => RenderFormat::Json,
            Format::Svg => RenderFormat::Svg,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Source {
    Oracle,
    Fast,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Winner of a position and the rule that decides it
    Solve {
        #[command(flatten)]
        position: Position,
        #[command(flatten)]
        cash: Bankrolls,
        /// Use exhaustive search instead of the closed forms
        #[arg(long)]
        oracle: bool,
        /// Give Player 2 the whole first band of the {1,L} staircase (cases 2 and 4)
        #[arg(long)]
        strict_text: bool,
    },
    /// Winner of the game without cash
    Classic {
        #[command(flatten)]
        position: Position,
    },
    /// Class thresholds and each player's class
    Classes {
        #[command(flatten)]
        position: Position,
        #[arg(short = 'd', long = "cash1", default_value = "0")]
        cash1: Cash,
        #[arg(short = 'e', long = "cash2", default_value = "0")]
        cash2: Cash,
    },
    /// Render a grid of winners over a (d, e) window
    Staircase {
        #[command(flatten)]
        position: Position,
        /// Window bounds; default is the both-middle region
        #[arg(long, requires_all = ["dhi", "elo", "ehi"])]
        dlo: Option<u64>,
        #[arg(long, requires_all = ["dlo", "elo", "ehi"])]
        dhi: Option<u64>,
        #[arg(long, requires_all = ["dlo", "dhi", "ehi"])]
        elo: Option<u64>,
        #[arg(long, requires_all = ["dlo", "dhi", "elo"])]
        ehi: Option<u64>,
        #[arg(long, value_enum, default_value = "oracle")]
        source: Source,
        #[arg(long)]
        strict_text: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Write here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the closed forms with the oracle; exits 1 on any discrepancy
    Sweep {
        #[arg(short = 'A', long = "moves")]
        moves: RuleSet,
        /// Largest pile swept
        #[arg(long, default_value_t = 120)]
        n_max: u64,
        /// Fixed cash bound; default is two more than each pile
        #[arg(long)]
        cash_max: Option<u64>,
        #[arg(long)]
        strict_text: bool,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Run the HTTP game service
    Serve {
        #[arg(long, env = "NIMCASH_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Restore sessions from and save them to this JSON file
        #[arg(long)]
        state_file: Option<PathBuf>,
    },
}

fn text_mode(strict: bool) -> TextMode {
    if strict {
        TextMode::Strict
    } else {
        TextMode::FigureConsistent
    }
}

fn check_oracle(n: u64) -> Result<()> {
    if n > ORACLE_STONE_LIMIT {
        bail!("the oracle handles piles up to {ORACLE_STONE_LIMIT} stones");
    }
    Ok(())
}

fn window(rules: &RuleSet, n: u64, bounds: [Option<u64>; 4]) -> Result<(Span, Span)> {
    if let [Some(dlo), Some(dhi), Some(elo), Some(ehi)] = bounds {
        return Ok((Span::new(dlo, dhi)?, Span::new(elo, ehi)?));
    }
    Ok(middle_window(rules, n)?)
}

/// Exit status on success: 0, or 1 for a nonempty sweep.
fn run(cli: Cli) -> Result<u8> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Solve {
            position,
            cash,
            oracle,
            strict_text,
        } => {
            let (n, d, e) = (position.stones, cash.cash1, cash.cash2);
            let verdict = if oracle {
                check_oracle(n)?;
                Oracle::with_execution(position.moves, exec).solve_cash(n, d, e)
            } else {
                FastWinner::with_mode(position.moves, text_mode(strict_text)).winner(n, d, e)?
            };
            println!("{verdict}");
        }
        Command::Classic { position } => {
            let family = position.moves.family();
            let winner = match win_classic_closed(family, position.stones) {
                Ok(w) => w,
                Err(_) => {
                    ClassicTable::new(&position.moves, position.stones).winner(position.stones)
                }
            };
            println!("{winner}");
        }
        Command::Classes {
            position,
            cash1,
            cash2,
        } => {
            let p = classify(&position.moves, position.stones, cash1, cash2)?;
            println!("family:  {}", p.family);
            println!("classic: {}", p.classic_winner);
            println!("U1 = {}  U2 = {}", p.u.u1, p.u.u2);
            println!("M1 = {}  M2 = {}", p.m.m1, p.m.m2);
            println!("P1 with {cash1}: {:?}", p.band1);
            println!("P2 with {cash2}: {:?}", p.band2);
        }
        Command::Staircase {
            position,
            dlo,
            dhi,
            elo,
            ehi,
            source,
            strict_text,
            format,
            out,
        } => {
            let (n, rules) = (position.stones, position.moves);
            let (d, e) = window(&rules, n, [dlo, dhi, elo, ehi])?;
            let source = match (source, strict_text) {
                (Source::Oracle, _) => GridSource::Oracle,
                (Source::Fast, false) => GridSource::Fast,
                (Source::Fast, true) => GridSource::FastStrict,
            };
            let doc = build_grid(&rules, n, d, e, source, exec)?.render(format.into());
            match out {
                Some(path) => std::fs::write(&path, doc)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{doc}"),
            }
        }
        Command::Sweep {
            moves,
            n_max,
            cash_max,
            strict_text,
            json,
        } => {
            let cash = cash_max.map_or(CashAxis::PilePlus(2), CashAxis::UpTo);
            let config = SweepConfig {
                n_max,
                cash,
                mode: text_mode(strict_text),
                exec,
            };
            let report = sweep_with(&moves, &config)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
            return Ok(if report.is_empty() { 0 } else { 1 });
        }
        Command::Serve {
            port,
            host,
            state_file,
        } => {
            let runtime = tokio::runtime::Runtime::new()?;
            let config = nimcash_service::ServeConfig {
                addr: SocketAddr::new(host, port),
                state_file,
            };
            runtime.block_on(nimcash_service::run(config))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
