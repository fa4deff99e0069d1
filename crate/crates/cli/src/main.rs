//! `divlab`: task-file driven divisibility verdicts over finite groups and
//! rings. Subcommands mirror the task kinds as shorthand that expands into a
//! single-task file; `run` executes a full task file.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use divlab_cli::report::{emit_report, Format};
use divlab_cli::runner::{exit_code, run_task_file, RunConfig};
use divlab_cli::taskfile::{
    parse_task_file, Options, PresentationDef, SubgroupDef, TaskEntry, TaskFile, TaskKind,
    UnitSubgroupDef, SCHEMA_VERSION,
};
use divlab_cli::{CliError, EXIT_PARSE};
use divlab_core::specs::{build_group, Bounds};

#[derive(Parser)]
#[command(name = "divlab", version, about = "divisibility verdicts for counting problems over finite groups and rings")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    /// Exit with code 3 when an applicable-theorem hypothesis fails.
    #[arg(long, global = true)]
    strict: bool,
    /// Worker threads for the data-parallel loops (0 = default pool).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Subgroup-lattice enumeration bound.
    #[arg(long, global = true)]
    subgroup_bound: Option<usize>,
    /// Attach class-partition evidence to counting tasks.
    #[arg(long, global = true)]
    harness: bool,
    /// Record wall-clock durations (makes output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON task file.
    Run { path: String },
    /// Verify the class-partition evidence for a counting task.
    VerifyMainTheorem {
        #[command(subcommand)]
        task: ShorthandTask,
    },
    /// Compare the Moebius-formula count of generating tuples with direct
    /// enumeration.
    HallOracle { group: String, arity: usize },
    /// Test a system of ring equations for generalized homogeneity and show
    /// the exponent matrices.
    CheckHomogeneity(RingSystemArgs),
    /// List the elements of a group with their labels.
    Elements { group: String },
    #[command(flatten)]
    Task(ShorthandTask),
}

#[derive(Subcommand, Clone)]
enum ShorthandTask {
    /// Count generating n-tuples; divisor |G'|.
    GeneratingTuples { group: String, arity: usize },
    /// Count surjective homomorphisms from a free group; divisor |G'|.
    Epimorphisms {
        group: String,
        /// Rank of the free group.
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Optional relator words over x0..x(rank-1).
        #[arg(long = "relator")]
        relators: Vec<String>,
    },
    /// Count elements with g^n in the subgroup; divisor |H|.
    NthRoots {
        group: String,
        exponent: i64,
        /// Comma-separated element indices generating H.
        #[arg(long, required = true)]
        subgroup_generators: String,
    },
    /// Count solutions of word equations with coefficients; divisor
    /// |C(coefficients)|.
    GroupEquations {
        group: String,
        #[arg(long)]
        unknowns: usize,
        /// Equation words over x0..x(n-1) and declared constants.
        #[arg(long = "equation", required = true)]
        equations: Vec<String>,
        /// Constant bindings name=element-index.
        #[arg(long = "constant")]
        constants: Vec<String>,
    },
    /// Count unit solutions of ring equations; divisor |C(coefficients) ∩ G|.
    RingEquations(RingSystemArgs),
}

#[derive(Args, Clone)]
struct RingSystemArgs {
    /// Ring spec, e.g. zmod:7 or mat:2:zmod:2.
    #[arg(default_value = "zmod:2")]
    ring: String,
    #[arg(long)]
    unknowns: usize,
    /// Equations like "x0^2 + x1^2 - x2^2 = 0".
    #[arg(long = "equation", required = true)]
    equations: Vec<String>,
    /// Constant bindings name=ring-literal.
    #[arg(long = "constant")]
    constants: Vec<String>,
    /// Semicolon-separated unit literals generating the subgroup G of the
    /// unit group (default: the whole unit group).
    #[arg(long)]
    subgroup_generators: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("divlab: {e}");
            ExitCode::from(EXIT_PARSE as u8)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    if let Command::Elements { group } = &cli.command {
        return print_elements(group, cli);
    }
    let file = match &cli.command {
        Command::Run { path } => {
            let text = std::fs::read_to_string(path)?;
            parse_task_file(&text)?
        }
        Command::VerifyMainTheorem { task } => {
            let inner = shorthand_entry(task)?;
            let mut file = inner.file;
            file.tasks = vec![TaskEntry {
                name: format!("verify-{}", inner.entry.name),
                kind: TaskKind::VerifyMainTheorem { task: Box::new(inner.entry) },
                harness: None,
            }];
            file
        }
        Command::HallOracle { group, arity } => single_task_file(
            BTreeMap::from([("G".to_string(), group.clone())]),
            TaskEntry {
                name: "hall-oracle".into(),
                kind: TaskKind::HallOracle { group: "G".into(), arity: *arity },
                harness: None,
            },
        ),
        Command::CheckHomogeneity(args) => {
            let mut file = ring_file(args)?;
            let (ring, unknowns, constants, equations) = ring_payload(args)?;
            file.tasks = vec![TaskEntry {
                name: "check-homogeneity".into(),
                kind: TaskKind::CheckHomogeneity { ring, unknowns, constants, equations },
                harness: None,
            }];
            file
        }
        Command::Task(task) => shorthand_entry(task)?.into_file(),
        Command::Elements { .. } => unreachable!("handled above"),
    };
    let cfg = RunConfig {
        harness: cli.harness,
        workers: cli.workers,
        subgroup_bound: cli.subgroup_bound,
        timings: cli.timings,
    };
    let report = run_task_file(&file, &cfg)?;
    let format = if cli.format == "json" { Format::Json } else { Format::Text };
    print!("{}", emit_report(&report, format)?);
    Ok(exit_code(&report, cli.strict))
}

struct Shorthand {
    file: TaskFile,
    entry: TaskEntry,
}

impl Shorthand {
    fn into_file(self) -> TaskFile {
        let mut file = self.file;
        file.tasks = vec![self.entry];
        file
    }
}

fn empty_file() -> TaskFile {
    TaskFile {
        version: SCHEMA_VERSION,
        options: Options::default(),
        groups: BTreeMap::new(),
        rings: BTreeMap::new(),
        subgroups: BTreeMap::new(),
        unit_subgroups: BTreeMap::new(),
        presentations: BTreeMap::new(),
        tasks: Vec::new(),
    }
}

fn single_task_file(groups: BTreeMap<String, String>, entry: TaskEntry) -> TaskFile {
    let mut file = empty_file();
    file.groups = groups;
    file.tasks = vec![entry];
    file
}

fn parse_bindings(list: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for item in list {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("constant `{item}` is not name=value")))?;
        out.insert(name.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn ring_file(args: &RingSystemArgs) -> Result<TaskFile, CliError> {
    let mut file = empty_file();
    file.rings.insert("R".to_string(), args.ring.clone());
    if let Some(gens) = &args.subgroup_generators {
        file.unit_subgroups.insert(
            "G".to_string(),
            UnitSubgroupDef {
                ring: "R".to_string(),
                generators: gens.split(';').map(|s| s.trim().to_string()).collect(),
            },
        );
    }
    Ok(file)
}

fn ring_payload(
    args: &RingSystemArgs,
) -> Result<(String, usize, BTreeMap<String, String>, Vec<String>), CliError> {
    Ok((
        "R".to_string(),
        args.unknowns,
        parse_bindings(&args.constants)?,
        args.equations.clone(),
    ))
}

fn shorthand_entry(task: &ShorthandTask) -> Result<Shorthand, CliError> {
    match task {
        ShorthandTask::GeneratingTuples { group, arity } => Ok(Shorthand {
            file: {
                let mut f = empty_file();
                f.groups.insert("G".into(), group.clone());
                f
            },
            entry: TaskEntry {
                name: "generating-tuples".into(),
                kind: TaskKind::GeneratingTuples { group: "G".into(), arity: *arity },
                harness: None,
            },
        }),
        ShorthandTask::Epimorphisms { group, rank, relators } => {
            let mut file = empty_file();
            file.groups.insert("G".into(), group.clone());
            file.presentations.insert(
                "F".into(),
                PresentationDef {
                    generators: (0..*rank).map(|i| format!("x{i}")).collect(),
                    relators: relators.clone(),
                    fixed: BTreeMap::new(),
                    degrees: None,
                    semidirect: None,
                },
            );
            Ok(Shorthand {
                file,
                entry: TaskEntry {
                    name: "epimorphisms".into(),
                    kind: TaskKind::Epimorphisms { presentation: "F".into(), group: "G".into() },
                    harness: None,
                },
            })
        }
        ShorthandTask::NthRoots { group, exponent, subgroup_generators } => {
            let gens = subgroup_generators
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Parse(format!("bad element index `{s}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut file = empty_file();
            file.groups.insert("G".into(), group.clone());
            file.subgroups.insert(
                "H".into(),
                SubgroupDef { group: "G".into(), generators: gens },
            );
            Ok(Shorthand {
                file,
                entry: TaskEntry {
                    name: "nth-roots".into(),
                    kind: TaskKind::NthRoots {
                        group: "G".into(),
                        subgroup: "H".into(),
                        exponent: *exponent,
                    },
                    harness: None,
                },
            })
        }
        ShorthandTask::GroupEquations { group, unknowns, equations, constants } => {
            let bindings = parse_bindings(constants)?;
            let mut consts = BTreeMap::new();
            for (name, value) in bindings {
                let idx: usize = value.parse().map_err(|_| {
                    CliError::Parse(format!("constant `{name}` needs an element index"))
                })?;
                consts.insert(name, idx);
            }
            let mut file = empty_file();
            file.groups.insert("G".into(), group.clone());
            Ok(Shorthand {
                file,
                entry: TaskEntry {
                    name: "group-equations".into(),
                    kind: TaskKind::GroupEquations {
                        group: "G".into(),
                        unknowns: *unknowns,
                        constants: consts,
                        equations: equations.clone(),
                    },
                    harness: None,
                },
            })
        }
        ShorthandTask::RingEquations(args) => {
            let file = ring_file(args)?;
            let (ring, unknowns, constants, equations) = ring_payload(args)?;
            Ok(Shorthand {
                file,
                entry: TaskEntry {
                    name: "ring-equations".into(),
                    kind: TaskKind::RingEquations {
                        ring,
                        unknowns,
                        constants,
                        equations,
                        subgroup: args.subgroup_generators.as_ref().map(|_| "G".to_string()),
                    },
                    harness: None,
                },
            })
        }
    }
}

fn print_elements(group: &str, cli: &Cli) -> Result<i32, CliError> {
    let mut bounds = Bounds::default();
    if let Some(b) = cli.subgroup_bound {
        bounds.subgroup_order = b;
    }
    let g = build_group(group, &bounds).map_err(|e| CliError::Parse(e.to_string()))?;
    println!("{group}: order {}", g.order());
    for i in 0..g.order() {
        println!("{i:>4}  {}", g.label(i));
    }
    Ok(0)
}
