//! Executes a task file: resolves definitions, dispatches each task to the
//! engines, classifies outcomes, and assembles the report.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use divlab_core::exec::with_workers;
use divlab_core::group::Subgroup;
use divlab_core::ring_eq::{count_unit_solutions, homogeneity_outcome, HomogeneityOutcome};
use divlab_core::theorems::{
    count_equation_solutions, hall_count, run_theorem_task, DivisibilityReport, TaskOptions,
    TheoremTask,
};
use divlab_core::word::Word;

use crate::taskfile::{resolve, Resolved, TaskEntry, TaskFile, TaskKind, SCHEMA_VERSION};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    NotApplicable,
    Violation,
    Error,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", content = "data", rename_all = "kebab-case")]
pub enum TaskOutcome {
    Divisibility(DivisibilityReport),
    Homogeneity(HomogeneityOutcome),
    Hall(HallOutcome),
}

#[derive(Debug, Clone, Serialize)]
pub struct HallOutcome {
    pub arity: usize,
    pub count_by_formula: u64,
    pub count_by_enumeration: u64,
    pub agree: bool,
    pub derived_subgroup_order: u64,
    pub divisible_by_derived: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TaskReport {
    pub name: String,
    pub kind: String,
    /// Canonical JSON echo of the task entry.
    pub inputs: TaskEntry,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<TaskOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub ok: usize,
    pub not_applicable: usize,
    pub violations: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: u32,
    /// Canonical echo of the parsed task file (definitions included).
    pub task_file: TaskFile,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    /// Force harness evidence on for every task.
    pub harness: bool,
    /// Override the task file's worker count.
    pub workers: Option<usize>,
    /// Override the task file's subgroup bound.
    pub subgroup_bound: Option<usize>,
    /// Record wall-clock durations in the report. Off by default so that
    /// identical inputs produce identical bytes.
    pub timings: bool,
}

pub fn run_task_file(file: &TaskFile, cfg: &RunConfig) -> Result<Report, CliError> {
    let mut file = file.clone();
    if let Some(bound) = cfg.subgroup_bound {
        file.options.subgroup_bound = bound;
    }
    if cfg.harness {
        file.options.harness = true;
    }
    if let Some(w) = cfg.workers {
        file.options.workers = w;
    }
    let resolved = resolve(&file)?;
    for entry in &file.tasks {
        validate_references(&entry.kind, &resolved)?;
    }
    let workers = file.options.workers;
    let tasks: Vec<TaskReport> = with_workers(workers, || {
        file.tasks
            .iter()
            .map(|entry| run_entry(entry, &file, &resolved, cfg))
            .collect()
    });
    let summary = Summary {
        total: tasks.len(),
        ok: tasks.iter().filter(|t| t.status == Status::Ok).count(),
        not_applicable: tasks.iter().filter(|t| t.status == Status::NotApplicable).count(),
        violations: tasks.iter().filter(|t| t.status == Status::Violation).count(),
        errors: tasks.iter().filter(|t| t.status == Status::Error).count(),
    };
    Ok(Report {
        version: SCHEMA_VERSION,
        task_file: file,
        tasks,
        summary,
    })
}

pub fn exit_code(report: &Report, strict: bool) -> i32 {
    if report.summary.violations > 0 {
        crate::EXIT_VIOLATION
    } else if strict && report.summary.not_applicable > 0 {
        crate::EXIT_NOT_APPLICABLE
    } else if report.summary.errors > 0 {
        crate::EXIT_RUNTIME
    } else {
        crate::EXIT_OK
    }
}

pub fn kind_name(kind: &TaskKind) -> &'static str {
    match kind {
        TaskKind::GeneratingTuples { .. } => "generating-tuples",
        TaskKind::Epimorphisms { .. } => "epimorphisms",
        TaskKind::AllHoms { .. } => "all-homs",
        TaskKind::NthRoots { .. } => "nth-roots",
        TaskKind::SubsetInSubgroup { .. } => "subset-in-subgroup",
        TaskKind::DoubleCoset { .. } => "double-coset",
        TaskKind::ImageEquals { .. } => "image-equals",
        TaskKind::InjectiveRestriction { .. } => "injective-restriction",
        TaskKind::GroupEquations { .. } => "group-equations",
        TaskKind::RingEquations { .. } => "ring-equations",
        TaskKind::CheckHomogeneity { .. } => "check-homogeneity",
        TaskKind::VerifyMainTheorem { .. } => "verify-main-theorem",
        TaskKind::HallOracle { .. } => "hall-oracle",
    }
}

/// Every name a task mentions must be defined; checked up front so a broken
/// reference is a parse failure rather than a runtime one.
fn validate_references(kind: &TaskKind, resolved: &Resolved) -> Result<(), CliError> {
    match kind {
        TaskKind::GeneratingTuples { group, .. } | TaskKind::HallOracle { group, .. } => {
            resolved.group(group).map(|_| ())
        }
        TaskKind::Epimorphisms { presentation, group }
        | TaskKind::AllHoms { presentation, group } => {
            resolved.group(group)?;
            resolved.presentation(presentation).map(|_| ())
        }
        TaskKind::NthRoots { group, subgroup, .. } => {
            resolved.group(group)?;
            resolved.subgroup(subgroup).map(|_| ())
        }
        TaskKind::SubsetInSubgroup { presentation, group, subgroup, .. }
        | TaskKind::DoubleCoset { presentation, group, subgroup, .. }
        | TaskKind::ImageEquals { presentation, group, subgroup, .. }
        | TaskKind::InjectiveRestriction { presentation, group, subgroup, .. } => {
            resolved.group(group)?;
            resolved.presentation(presentation)?;
            resolved.subgroup(subgroup).map(|_| ())
        }
        TaskKind::GroupEquations { group, .. } => resolved.group(group).map(|_| ()),
        TaskKind::RingEquations { ring, subgroup, .. } => {
            resolved.ring(ring)?;
            match subgroup {
                Some(name) => resolved.unit_subgroup(name).map(|_| ()),
                None => Ok(()),
            }
        }
        TaskKind::CheckHomogeneity { ring, .. } => resolved.ring(ring).map(|_| ()),
        TaskKind::VerifyMainTheorem { task } => validate_references(&task.kind, resolved),
    }
}

fn run_entry(
    entry: &TaskEntry,
    file: &TaskFile,
    resolved: &Resolved,
    cfg: &RunConfig,
) -> TaskReport {
    let started = Instant::now();
    let harness = entry.harness.unwrap_or(file.options.harness);
    let opts = TaskOptions {
        harness,
        subgroup_bound: file.options.subgroup_bound,
    };
    let result = run_kind(&entry.kind, resolved, &opts);
    let duration_ms = cfg.timings.then(|| started.elapsed().as_millis() as u64);
    match result {
        Ok(outcome) => TaskReport {
            name: entry.name.clone(),
            kind: kind_name(&entry.kind).to_string(),
            inputs: entry.clone(),
            status: classify(&outcome),
            outcome: Some(outcome),
            error: None,
            duration_ms,
        },
        Err(e) => TaskReport {
            name: entry.name.clone(),
            kind: kind_name(&entry.kind).to_string(),
            inputs: entry.clone(),
            status: Status::Error,
            outcome: None,
            error: Some(e.to_string()),
            duration_ms,
        },
    }
}

/// A violation is an observed counterexample to a proved statement: an
/// applicable divisor that fails to divide, a failed auxiliary divisor, or
/// class-partition evidence whose classes do not all have size |H| even
/// though both closure conditions held.
fn classify(outcome: &TaskOutcome) -> Status {
    match outcome {
        TaskOutcome::Divisibility(r) => {
            let harness_violation = r.harness.as_ref().is_some_and(|h| {
                h.conditions_i
                    && h.conditions_ii
                    && !(h.all_classes_size_h && h.total % h.subgroup_order.max(1) == 0)
            });
            if (r.theorem_applicable && !r.divisible)
                || r.aux.iter().any(|a| !a.divides)
                || harness_violation
            {
                Status::Violation
            } else if !r.theorem_applicable {
                Status::NotApplicable
            } else {
                Status::Ok
            }
        }
        TaskOutcome::Homogeneity(_) => Status::Ok,
        TaskOutcome::Hall(h) => {
            if !h.agree || !h.divisible_by_derived {
                Status::Violation
            } else {
                Status::Ok
            }
        }
    }
}

fn run_kind(
    kind: &TaskKind,
    resolved: &Resolved,
    opts: &TaskOptions,
) -> Result<TaskOutcome, CliError> {
    let core_err = |e: divlab_core::Error| CliError::Parse(e.to_string());
    match kind {
        TaskKind::GeneratingTuples { group, arity } => {
            let g = resolved.group(group)?;
            let report = run_theorem_task(
                &TheoremTask::GeneratingTuples { group: Arc::clone(g), arity: *arity },
                opts,
            )
            .map_err(core_err)?;
            Ok(TaskOutcome::Divisibility(report))
        }
        TaskKind::Epimorphisms { presentation, group } => {
            let g = resolved.group(group)?;
            let p = resolved.presentation(presentation)?;
            let report = run_theorem_task(
                &TheoremTask::Epimorphisms {
                    presentation: Arc::clone(p),
                    group: Arc::clone(g),
                },
                opts,
            )
            .map_err(core_err)?;
            Ok(TaskOutcome::Divisibility(report))
        }
        TaskKind::AllHoms { presentation, group } => {
            let g = resolved.group(group)?;
            let p = resolved.presentation(presentation)?;
            let report = run_theorem_task(
                &TheoremTask::AllHoms {
                    presentation: Arc::clone(p),
                    group: Arc::clone(g),
                },
                opts,
            )
            .map_err(core_err)?;
            Ok(TaskOutcome::Divisibility(report))
        }
        TaskKind::NthRoots { group, subgroup, exponent } => {
            let g = resolved.group(group)?;
            let h = resolved.subgroup(subgroup)?;
            let report = run_theorem_task(
                &TheoremTask::NthRoots {
                    group: Arc::clone(g),
                    subgroup: h.clone(),
                    exponent: *exponent,
                },
                opts,
            )
            .map_err(core_err)?;
            Ok(TaskOutcome::Divisibility(report))
        }
        TaskKind::SubsetInSubgroup { presentation, group, subgroup, words } => {
            let g = resolved.group(group)?;
            let p = resolved.presentation(presentation)?;
            let h = resolved.subgroup(subgroup)?;
            let words = parse_words(p.names(), words)?;
            let report = run_theorem_task(
                &TheoremTask::SubsetInSubgroup {
                    presentation: Arc::clone(p),
                    group: Arc::clone(g),
                    words,
                    subgroup: h.clone(),
                },
                opts,
            )
            .map_err(core_err)?;
            Ok(TaskOutcome::Divisibility(report))
        }
        TaskKind::DoubleCoset { presentation, group, subgroup, items } => {
            let g = resolved.group(group)?;
            let p = resolved.presentation(presentation)?;
            let h = resolved.subgroup(subgroup)?;
            let items = items
                .iter()
                .map(|item| {
                    Word::parse(&item.word, p.names())
                        .map(|w| (w, item.rep))
                        .map_err(|e| CliError::Parse(e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let report = run_theorem_task(
                &TheoremTask::DoubleCoset {
                    presentation: Arc::clone(p),
                    group: Arc::clone(g),
                    subgroup: h.clone(),
                    items,
                },
                opts,
            )
            .map_err(core_err)?;
            Ok(TaskOutcome::Divisibility(report))
        }
        TaskKind::ImageEquals { presentation, group, subgroup, words } => {
            let g = resolved.group(group)?;
            let p = resolved.presentation(presentation)?;
            let a = resolved.subgroup(subgroup)?;
            let words = parse_words(p.names(), words)?;
            let report = run_theorem_task(
                &TheoremTask::ImageEquals {
                    presentation: Arc::clone(p),
                    group: Arc::clone(g),
                    words,
                    subgroup: a.clone(),
                },
                opts,
            )
            .map_err(core_err)?;
            Ok(TaskOutcome::Divisibility(report))
        }
        TaskKind::InjectiveRestriction { presentation, group, subgroup, w_generators } => {
            let g = resolved.group(group)?;
            let p = resolved.presentation(presentation)?;
            let a = resolved.subgroup(subgroup)?;
            let report = run_theorem_task(
                &TheoremTask::InjectiveRestriction {
                    presentation: Arc::clone(p),
                    group: Arc::clone(g),
                    w_generators: w_generators.clone(),
                    subgroup: a.clone(),
                },
                opts,
            )
            .map_err(core_err)?;
            Ok(TaskOutcome::Divisibility(report))
        }
        TaskKind::GroupEquations { group, unknowns, constants, equations } => {
            let g = resolved.group(group)?;
            let system = resolved.group_equations(g, *unknowns, constants, equations)?;
            let report = count_equation_solutions(g, &system, opts).map_err(core_err)?;
            Ok(TaskOutcome::Divisibility(report))
        }
        TaskKind::RingEquations { ring, unknowns, constants, equations, subgroup } => {
            let r = resolved.ring(ring)?;
            let units = resolved.units(ring)?;
            let system = resolved.ring_system(r, *unknowns, constants, equations)?;
            let g = match subgroup {
                Some(name) => resolved.unit_subgroup(name)?.clone(),
                None => Subgroup::whole(units.group()),
            };
            let report = count_unit_solutions(units, &g, &system, opts).map_err(core_err)?;
            Ok(TaskOutcome::Divisibility(report))
        }
        TaskKind::CheckHomogeneity { ring, unknowns, constants, equations } => {
            let r = resolved.ring(ring)?;
            let system = resolved.ring_system(r, *unknowns, constants, equations)?;
            Ok(TaskOutcome::Homogeneity(homogeneity_outcome(&system)))
        }
        TaskKind::VerifyMainTheorem { task } => {
            let forced = TaskOptions { harness: true, ..opts.clone() };
            run_kind(&task.kind, resolved, &forced)
        }
        TaskKind::HallOracle { group, arity } => {
            let g = resolved.group(group)?;
            let by_formula =
                hall_count(g, *arity as u32, opts.subgroup_bound).map_err(core_err)?;
            let enumeration = run_theorem_task(
                &TheoremTask::GeneratingTuples { group: Arc::clone(g), arity: *arity },
                &TaskOptions { harness: false, ..opts.clone() },
            )
            .map_err(core_err)?;
            let derived = divlab_core::group::derived_subgroup(g);
            Ok(TaskOutcome::Hall(HallOutcome {
                arity: *arity,
                count_by_formula: by_formula,
                count_by_enumeration: enumeration.count,
                agree: by_formula == enumeration.count,
                derived_subgroup_order: derived.order() as u64,
                divisible_by_derived: by_formula % (derived.order() as u64) == 0,
            }))
        }
    }
}

fn parse_words(names: &[String], texts: &[String]) -> Result<Vec<Word>, CliError> {
    texts
        .iter()
        .map(|t| Word::parse(t, names).map_err(|e| CliError::Parse(e.to_string())))
        .collect()
}
