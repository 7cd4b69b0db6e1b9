use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use hoplab_core::dot::to_dot;
use hoplab_core::oracle::MAX_CYCLIC_SIZE;
use hoplab_core::report::{append_csv, write_csv, CoverRow, CyclicCsvRow, StatsRow};
use hoplab_core::{
    cyclic_automaton, de_bruijn_sequence, dfa_equivalent, enumerate_cyclic, hopcroft_minimize, merge_to_fixpoint,
    minimal_dfca_check, moore_partition, quotient, CoverSpec, Dfa, EqualSizeChoice, Error, Placement, SearchOptions,
    Strategy, TiePolicy,
};

const DOMAIN_FAILURE: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "hoplab", version, about = "Experiments with Hopcroft's DFA minimization algorithm")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the cyclic unary automaton of a de Bruijn word.
    GenDebruijn {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=24))]
        order: u32,
        /// Index of the start state along the cycle.
        #[arg(long, default_value_t = 0)]
        start_offset: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize a DFA and report the total splitter mass.
    Minimize {
        file: PathBuf,
        #[arg(long, default_value = "fifo")]
        strategy: Strategy,
        #[arg(long, default_value = "minstate", value_parser = parse_choice)]
        policy: EqualSizeChoice,
        #[arg(long, default_value = "larger-stays", value_parser = parse_placement)]
        placement: Placement,
        /// Append a statistics row to this CSV file.
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long)]
        emit_min: Option<PathBuf>,
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Maximize the splitter mass over every tie and placement decision.
    SearchTies {
        file: PathBuf,
        #[arg(long, default_value = "fifo")]
        strategy: Strategy,
        /// Maximum number of complete runs.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 32)]
        max_states: usize,
        /// Where to write the witness trace.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Search every finality pattern of a cyclic automaton of the given size.
    EnumerateCyclic {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_CYCLIC_SIZE as i64))]
        size: u32,
        #[arg(long, default_value = "fifo")]
        strategy: Strategy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize with the Moore refinement.
    OracleMin {
        file: PathBuf,
        #[arg(long)]
        emit_min: Option<PathBuf>,
    },
    /// Minimize a unary cover automaton for the words of length at most L.
    CoverMinimize {
        file: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append a statistics row to this CSV file.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Exit 0 if both automata accept the same language, 1 if not.
    Equiv { a: PathBuf, b: PathBuf },
}

fn parse_choice(s: &str) -> Result<EqualSizeChoice, String> {
    match s.parse()? {
        EqualSizeChoice::FromTrace => Err("trace-driven choice is only available through search-ties".into()),
        choice => Ok(choice),
    }
}

fn parse_placement(s: &str) -> Result<Placement, String> {
    match s.parse()? {
        Placement::FromTrace => Err("trace-driven placement is only available through search-ties".into()),
        placement => Ok(placement),
    }
}

fn read_dfa(path: &Path) -> Result<Dfa> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Dfa::parse(&text).with_context(|| format!("{}", path.display()))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::NotUnary(_)
            | Error::SearchTooLarge { .. }
            | Error::SizeTooLarge(_)
            | Error::OrderTooLarge(_)
            | Error::OffsetOutOfRange { .. },
        ) => USAGE,
        Some(Error::SearchBudgetExceeded { .. }) => BUDGET,
        _ => DOMAIN_FAILURE,
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::GenDebruijn { order, start_offset, out } => {
            let word = de_bruijn_sequence(order as usize)?;
            let d = cyclic_automaton(&word, start_offset)?;
            write_output(out.as_deref(), &d.to_text())?;
        }
        Command::Minimize { file, strategy, policy, placement, stats, emit_min, emit_dot } => {
            let d = read_dfa(&file)?;
            let policy = TiePolicy::new(policy, placement);
            let run = hopcroft_minimize(&d, strategy, policy)?;
            println!("blocks={} mass={}", run.partition.num_blocks(), run.stats.total_splitter_mass);
            if let Some(path) = stats {
                let row =
                    StatsRow::new(&file.display().to_string(), d.num_states, d.alphabet_size, strategy, policy, &run);
                append_csv(&path, &[row]).with_context(|| format!("writing {}", path.display()))?;
            }
            if emit_min.is_some() || emit_dot.is_some() {
                let min = quotient(&d, &run.partition)?;
                if let Some(path) = emit_min {
                    write_output(Some(&path), &min.to_text())?;
                }
                if let Some(path) = emit_dot {
                    write_output(Some(&path), &to_dot(&min))?;
                }
            }
        }
        Command::SearchTies { file, strategy, budget, max_states, trace_out } => {
            let d = read_dfa(&file)?;
            let options = SearchOptions { budget, max_states, ..SearchOptions::new(strategy) };
            let (result, code) = match hoplab_core::oracle::search(&d, &options) {
                Ok(result) => (result, 0),
                Err(Error::SearchBudgetExceeded { best, budget }) => {
                    eprintln!("error: budget of {budget} runs exhausted; best so far follows");
                    (*best, BUDGET)
                }
                Err(e) => return Err(e.into()),
            };
            println!("max_mass={} branches={}", result.objective, result.branch_count);
            if let Some(path) = trace_out {
                write_output(Some(&path), &result.witness.to_string())?;
            }
            return Ok(code);
        }
        Command::EnumerateCyclic { size, strategy, out } => {
            let rows = enumerate_cyclic(size as usize, strategy)?;
            let rows: Vec<CyclicCsvRow> = rows.iter().map(CyclicCsvRow::from).collect();
            match out {
                Some(path) => {
                    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                    write_csv(file, &rows)?;
                }
                None => write_csv(io::stdout().lock(), &rows)?,
            }
            let best = rows.iter().map(|r| r.max_mass).max().unwrap_or(0);
            let attaining = rows.iter().filter(|r| r.max_mass == best).count();
            eprintln!("patterns={} max_mass={best} attaining={attaining}", rows.len());
        }
        Command::OracleMin { file, emit_min } => {
            let d = read_dfa(&file)?;
            let partition = moore_partition(&d)?;
            println!("blocks={}", partition.num_blocks());
            if let Some(path) = emit_min {
                write_output(Some(&path), &quotient(&d, &partition)?.to_text())?;
            }
        }
        Command::CoverMinimize { file, l, out, stats } => {
            let d = read_dfa(&file)?;
            if !d.is_unary() {
                return Err(Error::NotUnary(d.alphabet_size).into());
            }
            let spec = CoverSpec { l };
            let pipeline = merge_to_fixpoint(&d, spec, Strategy::Fifo, TiePolicy::default())?;
            let minimal = minimal_dfca_check(&pipeline.minimized, spec)?;
            println!(
                "states_in={} states_out={} blocks={} mass={} minimal={minimal}",
                d.num_states, pipeline.minimized.num_states, pipeline.blocks, pipeline.stats.total_splitter_mass
            );
            if let Some(path) = stats {
                let row = CoverRow {
                    input: file.display().to_string(),
                    l,
                    states_in: d.num_states,
                    states_out: pipeline.minimized.num_states,
                    blocks: pipeline.blocks,
                    total_splitter_mass: pipeline.stats.total_splitter_mass,
                    minimal,
                };
                append_csv(&path, &[row]).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = out {
                write_output(Some(&path), &pipeline.minimized.to_text())?;
            }
        }
        Command::Equiv { a, b } => {
            let equivalent = (|| -> Result<bool> { Ok(dfa_equivalent(&read_dfa(&a)?, &read_dfa(&b)?)?) })();
            return match equivalent {
                Ok(true) => {
                    println!("equivalent");
                    Ok(0)
                }
                Ok(false) => {
                    println!("not equivalent");
                    Ok(1)
                }
                Err(e) => {
                    eprintln!("error: {e:#}");
                    Ok(USAGE)
                }
            };
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
