//! Command-line front end for the network analysis toolkit.
//!
//! Exit codes are part of the contract: 0 for success / a `true` verdict /
//! a reached target, 1 for a `false` verdict / an unreachable target / a
//! missing witness, 2 for unreadable or unparsable input, 3 for an internal
//! inconsistency between deciders, and 4 for verdicts left `unknown` within
//! the exploration budget.

mod report;

use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use drn_core::analysis::{
    analyze, check_recurrence, is_irreducible, is_lcn_irreducible, is_lcn_recurrent,
    is_self_starting, is_self_stopping, is_weakly_reversible, lcn_irreducibility_witness,
    AnalysisReport, LcnWitness, RecurrenceEvidence, SelfStartEvidence, Verdict, VerdictValue,
};
use drn_core::exactmath::ZeroInPosSpan;
use drn_core::model::{Drn, State};
use drn_core::parser::parse_network;
use drn_core::reach::{dump_graph, reachable, Budget, ReachOutcome};

#[derive(Parser)]
#[command(name = "drn", version, about = "Exact analysis of discrete reaction networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every decision procedure and print a full report.
    Analyze {
        file: PathBuf,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Decide a single property; the exit code carries the verdict.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        #[command(flatten)]
        limits: Limits,
    },
    /// Search for a path between two states.
    Reach {
        file: PathBuf,
        /// Source state as comma-separated populations, e.g. 0,0.
        #[arg(long)]
        from: String,
        /// Target state as comma-separated populations.
        #[arg(long)]
        to: String,
        /// Also write the explored transition graph to this file.
        #[arg(long, value_name = "PATH")]
        dump_graph: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Construct the mutual-reachability witness of an LCN-irreducible
    /// network.
    Witness {
        file: PathBuf,
        /// Emit the witness as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct Limits {
    /// Maximum number of states a reachability search may store.
    #[arg(long, value_name = "N", default_value_t = 100_000)]
    budget: usize,
    /// Per-species population cap during exploration.
    #[arg(long, value_name = "N", default_value_t = 64)]
    cap: u64,
}

impl Limits {
    fn to_budget(self) -> Budget {
        Budget { max_states: self.budget, species_cap: self.cap }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Property {
    LcnIrreducible,
    Irreducible,
    LcnRecurrent,
    Recurrent,
    SelfStarting,
    SelfStopping,
    WeaklyReversible,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::LcnIrreducible => "lcn-irreducible",
            Property::Irreducible => "irreducible",
            Property::LcnRecurrent => "lcn-recurrent",
            Property::Recurrent => "recurrent",
            Property::SelfStarting => "self-starting",
            Property::SelfStopping => "self-stopping",
            Property::WeaklyReversible => "weakly-reversible",
        }
    }
}

const EXIT_FALSE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_UNKNOWN: u8 = 4;

fn main() -> ExitCode {
    // Die silently on a closed pipe (e.g. `drn analyze ... | head`) instead
    // of panicking mid-print; reports can be long.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    match Cli::parse().command {
        Command::Analyze { file, json, limits } => cmd_analyze(&file, json, limits),
        Command::Check { file, property, limits } => cmd_check(&file, property, limits),
        Command::Reach { file, from, to, dump_graph, limits } => {
            cmd_reach(&file, &from, &to, dump_graph.as_deref(), limits)
        }
        Command::Witness { file, json } => cmd_witness(&file, json),
    }
    .unwrap_or_else(|message| {
        eprintln!("error: {message}");
        ExitCode::from(EXIT_INPUT)
    })
}

fn load_network(path: &FsPath) -> Result<Drn, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_network(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_state(drn: &Drn, text: &str) -> Result<State, String> {
    let populations = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| format!("`{}` is not an integer population", part.trim()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if populations.len() != drn.dim() {
        return Err(format!(
            "state `{text}` has {} populations, the network has {} species",
            populations.len(),
            drn.dim()
        ));
    }
    State::new(populations).map_err(|e| e.to_string())
}

fn cmd_analyze(file: &FsPath, json: bool, limits: Limits) -> Result<ExitCode, String> {
    let drn = load_network(file)?;
    match analyze(&drn, limits.to_budget()) {
        Ok(analysis) => {
            if json {
                let dto = report::report_dto(&drn, &analysis);
                println!("{}", serde_json::to_string_pretty(&dto).expect("report serializes"));
            } else {
                print_text_report(&drn, &analysis);
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(EXIT_INTERNAL))
        }
    }
}

fn cmd_check(file: &FsPath, property: Property, limits: Limits) -> Result<ExitCode, String> {
    let drn = load_network(file)?;
    let value = match property {
        Property::LcnIrreducible => is_lcn_irreducible(&drn).value,
        Property::Irreducible => is_irreducible(&drn).value,
        Property::LcnRecurrent => is_lcn_recurrent(&drn).value,
        Property::Recurrent => check_recurrence(&drn, limits.to_budget()).value,
        Property::SelfStarting => is_self_starting(&drn).value,
        Property::SelfStopping => is_self_stopping(&drn).value,
        Property::WeaklyReversible => {
            if is_weakly_reversible(&drn) {
                VerdictValue::True
            } else {
                VerdictValue::False
            }
        }
    };
    println!("{}: {}", property.name(), value_text(value));
    Ok(match value {
        VerdictValue::True => ExitCode::SUCCESS,
        VerdictValue::False => ExitCode::from(EXIT_FALSE),
        VerdictValue::Unknown => ExitCode::from(EXIT_UNKNOWN),
    })
}

fn cmd_reach(
    file: &FsPath,
    from: &str,
    to: &str,
    dump: Option<&FsPath>,
    limits: Limits,
) -> Result<ExitCode, String> {
    let drn = load_network(file)?;
    let from = parse_state(&drn, from)?;
    let to = parse_state(&drn, to)?;
    let budget = limits.to_budget();

    if let Some(path) = dump {
        let graph = dump_graph(&drn, &from, budget).map_err(|e| e.to_string())?;
        fs::write(path, graph).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }

    let result = reachable(&drn, &from, &to, budget).map_err(|e| e.to_string())?;
    Ok(match result.outcome {
        ReachOutcome::Reached(path) => {
            println!("reached in {} steps: {}", path.len(), path);
            ExitCode::SUCCESS
        }
        ReachOutcome::NotReachableProven => {
            println!(
                "unreachable: the reachable set ({} states) is closed and misses the target",
                result.states_explored
            );
            ExitCode::from(EXIT_FALSE)
        }
        ReachOutcome::BudgetExhausted => {
            println!("undecided: budget exhausted after {} states", result.states_explored);
            ExitCode::from(EXIT_UNKNOWN)
        }
    })
}

fn cmd_witness(file: &FsPath, json: bool) -> Result<ExitCode, String> {
    let drn = load_network(file)?;
    match lcn_irreducibility_witness(&drn) {
        Some(witness) => {
            if let Err(e) = witness.verify(&drn) {
                eprintln!("error: internal inconsistency: witness failed verification: {e}");
                return Ok(ExitCode::from(EXIT_INTERNAL));
            }
            if json {
                let dto = report::WitnessFileDto {
                    schema_version: report::SCHEMA_VERSION,
                    species: drn.species().to_vec(),
                    lcn_witness: Some(report::witness_dto(&drn, &witness)),
                };
                println!("{}", serde_json::to_string_pretty(&dto).expect("witness serializes"));
            } else {
                print_witness(&drn, &witness);
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("no witness: the network is not LCN irreducible");
            Ok(ExitCode::from(EXIT_FALSE))
        }
    }
}

fn value_text(value: VerdictValue) -> &'static str {
    match value {
        VerdictValue::True => "true",
        VerdictValue::False => "false",
        VerdictValue::Unknown => "unknown",
    }
}

fn join_bigints(xs: &[BigInt]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn sequence_text(sigma: &[usize]) -> String {
    sigma.iter().map(|&j| format!("r{}", j + 1)).collect::<Vec<_>>().join(",")
}

fn print_text_report(drn: &Drn, analysis: &AnalysisReport) {
    println!("species: {}", drn.species().join(", "));
    println!("reactions: {}", drn.size());

    let lcn = &analysis.lcn_irreducible;
    let detail = if lcn.value == VerdictValue::True {
        "positive span and drift lattice are both full".to_string()
    } else if !lcn.evidence.pos_span.is_full() {
        match (&lcn.evidence.pos_span.kernel, &lcn.evidence.pos_span.failing_axis) {
            (ZeroInPosSpan::Infeasible(_), _) => {
                "no strictly positive combination of drifts cancels".to_string()
            }
            (_, Some(f)) => format!(
                "positive span misses {}{}",
                if f.positive { "+" } else { "-" },
                drn.species()[f.axis]
            ),
            _ => unreachable!("a non-full span names a failing subproblem"),
        }
    } else {
        let lattice = &lcn.evidence.lattice;
        match lattice.lattice_index() {
            Some(index) => {
                format!("drift lattice has index {index} in Z^{}", lattice.dimension)
            }
            None => format!(
                "drift lattice has rank {} of {}",
                lattice.rank, lattice.dimension
            ),
        }
    };
    println!("lcn-irreducible: {} ({detail})", value_text(lcn.value));

    let detail = match &analysis.lcn_recurrent.evidence {
        ZeroInPosSpan::Feasible(kernel) => format!("kernel {}", join_bigints(kernel)),
        ZeroInPosSpan::Infeasible(_) => "certified by a separating functional".to_string(),
    };
    println!("lcn-recurrent: {} ({detail})", value_text(analysis.lcn_recurrent.value));

    print_self_start_line(drn, "self-starting", &analysis.self_starting);
    print_self_start_line(drn, "self-stopping", &analysis.self_stopping);

    println!("irreducible: {}", value_text(analysis.irreducible.value));
    println!("weakly-reversible: {}", analysis.weakly_reversible);

    let detail = match &analysis.recurrent.evidence {
        RecurrenceEvidence::WeaklyReversible => "complex graph is weakly reversible".to_string(),
        RecurrenceEvidence::ReactionReversals(paths) => {
            format!("all {} reactions reversible by explicit paths", paths.len())
        }
        RecurrenceEvidence::SelfRecurrent { pivot, .. } => {
            format!("round trip from zero through {pivot}")
        }
        RecurrenceEvidence::ImpliedByIrreducibility => "implied by irreducibility".to_string(),
        RecurrenceEvidence::NotRecurrent { reaction, closed_set } => format!(
            "reaction r{} cannot be undone (closed set of {} states)",
            reaction + 1,
            closed_set.len()
        ),
        RecurrenceEvidence::BudgetExhausted { unresolved } => format!(
            "budget exhausted for {}",
            sequence_text(unresolved)
        ),
    };
    println!("recurrent: {} ({detail})", value_text(analysis.recurrent.value));

    if let Some(witness) = &analysis.lcn_witness {
        print_witness(drn, witness);
    }
}

fn print_self_start_line(drn: &Drn, label: &str, verdict: &Verdict<SelfStartEvidence>) {
    let detail = match &verdict.evidence {
        SelfStartEvidence::Witness(w) => format!("sequence {}", sequence_text(&w.sigma)),
        SelfStartEvidence::NoZeroOriginReaction => {
            "no reaction fires at the zero state".to_string()
        }
        SelfStartEvidence::UncoveredAxis { axis } => {
            format!("no reaction produces {}", drn.species()[*axis])
        }
        SelfStartEvidence::SearchExhausted => "no admissible sequence exists".to_string(),
    };
    println!("{label}: {} ({detail})", value_text(verdict.value));
}

fn print_witness(drn: &Drn, witness: &LcnWitness) {
    println!(
        "lcn-witness: threshold ({}), kernel {}",
        join_bigints(&witness.threshold),
        join_bigints(&witness.kernel)
    );
    for mv in &witness.axis_moves {
        println!(
            "  {}{}: {}",
            if mv.positive { "+" } else { "-" },
            drn.species()[mv.axis],
            mv.ordering
        );
    }
}
