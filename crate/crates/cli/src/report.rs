//! Report emission. The JSON form is the stable machine-readable document;
//! the text form renders the same data as human-readable tables. Identical
//! inputs produce identical bytes in both forms (durations appear only when
//! timings were requested).

use std::fmt::Write as _;

use divlab_core::harness::HarnessReport;
use divlab_core::ring_eq::HomogeneityOutcome;
use divlab_core::theorems::DivisibilityReport;

use crate::runner::{Report, Status, TaskOutcome};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn emit_report(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            out.push('\n');
            Ok(out)
        }
        Format::Text => Ok(emit_text(report)),
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::NotApplicable => "not-applicable",
        Status::Violation => "VIOLATION",
        Status::Error => "error",
    }
}

fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "divlab report (schema {})", report.version);
    let _ = writeln!(out);

    let file = &report.task_file;
    if !(file.groups.is_empty() && file.rings.is_empty()) {
        let _ = writeln!(out, "definitions:");
        for (name, spec) in &file.groups {
            let _ = writeln!(out, "  group {name} = {spec}");
        }
        for (name, spec) in &file.rings {
            let _ = writeln!(out, "  ring {name} = {spec}");
        }
        for (name, def) in &file.subgroups {
            let _ = writeln!(
                out,
                "  subgroup {name} = <{:?}> in {}",
                def.generators, def.group
            );
        }
        for (name, def) in &file.unit_subgroups {
            let _ = writeln!(
                out,
                "  unit subgroup {name} = <{}> in {}",
                def.generators.join(", "),
                def.ring
            );
        }
        for (name, def) in &file.presentations {
            match &def.semidirect {
                Some(sd) => {
                    let _ = writeln!(out, "  presentation {name} = Z x| {}", sd.base);
                }
                None => {
                    let _ = writeln!(
                        out,
                        "  presentation {name} = <{}; {}>",
                        def.generators.join(", "),
                        def.relators.join(", ")
                    );
                }
            }
        }
        let _ = writeln!(out);
    }

    for task in &report.tasks {
        let _ = writeln!(
            out,
            "task {} ({}) .... {}",
            task.name,
            task.kind,
            status_str(task.status)
        );
        let _ = writeln!(
            out,
            "  inputs: {}",
            serde_json::to_string(&task.inputs).unwrap_or_default()
        );
        if let Some(err) = &task.error {
            let _ = writeln!(out, "  error: {err}");
        }
        match &task.outcome {
            Some(TaskOutcome::Divisibility(r)) => write_divisibility(&mut out, r),
            Some(TaskOutcome::Homogeneity(h)) => write_homogeneity(&mut out, h),
            Some(TaskOutcome::Hall(h)) => {
                let _ = writeln!(
                    out,
                    "  formula count {} | enumeration count {} | agree {}",
                    h.count_by_formula,
                    h.count_by_enumeration,
                    yesno(h.agree)
                );
                let _ = writeln!(
                    out,
                    "  |G'| = {} divides {}",
                    h.derived_subgroup_order,
                    yesno(h.divisible_by_derived)
                );
            }
            None => {}
        }
        if let Some(ms) = task.duration_ms {
            let _ = writeln!(out, "  duration: {ms} ms");
        }
        let _ = writeln!(out);
    }

    let s = &report.summary;
    let _ = writeln!(
        out,
        "summary: {} tasks | {} ok | {} not-applicable | {} violations | {} errors",
        s.total, s.ok, s.not_applicable, s.violations, s.errors
    );
    out
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_divisibility(out: &mut String, r: &DivisibilityReport) {
    let quotient = match r.quotient {
        Some(q) => format!(" | quotient {q}"),
        None => String::new(),
    };
    let _ = writeln!(
        out,
        "  count {} | divisor {} = {} | divisible {}{}{}",
        r.count,
        r.divisor_desc,
        r.divisor,
        yesno(r.divisible),
        quotient,
        if r.theorem_applicable { "" } else { " | theorem not applicable" }
    );
    for aux in &r.aux {
        let _ = writeln!(
            out,
            "  aux divisor {} = {} divides {}",
            aux.desc,
            aux.divisor,
            yesno(aux.divides)
        );
    }
    if let Some(h) = &r.harness {
        write_harness(out, h);
    }
}

fn write_harness(out: &mut String, h: &HarnessReport) {
    let _ = writeln!(
        out,
        "  harness: |Phi| {} | |H| {} | condition I {} | condition II {} | all classes |H| {}",
        h.total,
        h.subgroup_order,
        yesno(h.conditions_i),
        yesno(h.conditions_ii),
        yesno(h.all_classes_size_h)
    );
    for c in &h.classes {
        let _ = writeln!(
            out,
            "    class size {} = {} tails x fibers {:?} | |H_phi| {} | |H:H_phi| {}",
            c.size, c.tail_class_count, c.fiber_sizes, c.core_order, c.core_index
        );
    }
}

fn write_homogeneity(out: &mut String, h: &HomogeneityOutcome) {
    for (i, m) in h.matrices.per_equation.iter().enumerate() {
        let _ = writeln!(out, "  A[{i}] = {m:?}");
    }
    for (i, m) in h.matrices.differenced.iter().enumerate() {
        let _ = writeln!(out, "  A'[{i}] = {m:?}");
    }
    let _ = writeln!(out, "  A' stacked = {:?}", h.matrices.stacked);
    let _ = writeln!(
        out,
        "  rank {} | homogeneous {} | sufficient bound holds {}",
        h.rank,
        yesno(h.homogeneous),
        yesno(h.proposition_bound_holds)
    );
    if let Some(d) = &h.degrees {
        let _ = writeln!(out, "  degrees {:?}", d);
    }
    if let Some(d) = &h.per_equation_degrees {
        let _ = writeln!(out, "  per-equation total degrees {:?}", d);
    }
}
