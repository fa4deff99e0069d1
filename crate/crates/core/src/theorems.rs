//! Divisibility theorem tasks over groups: one wrapper per statement,
//! producing a `DivisibilityReport`, plus the Moebius-formula oracle for
//! generating tuples.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::group::{
    automorphism_count, centralizer, derived_subgroup, derived_subgroup_of, moebius_table,
    subgroup_closure, FiniteGroup, Subgroup,
};
use crate::harness::{partition_classes, HarnessReport};
use crate::indexed::{
    derive_degree, enumerate_homs, Constraint, Hom, IndexedPresentation,
};
use crate::word::Word;

/// A divisibility check besides the task's main divisor (for example the
/// automorphism-count divisor on epimorphism counts).
#[derive(Debug, Clone, Serialize)]
pub struct AuxCheck {
    pub desc: String,
    pub divisor: u64,
    pub divides: bool,
}

/// The universal output of every theorem task.
#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityReport {
    pub count: u64,
    pub divisor: u64,
    pub divisor_desc: String,
    pub divisible: bool,
    pub quotient: Option<u64>,
    pub theorem_applicable: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub aux: Vec<AuxCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub harness: Option<HarnessReport>,
}

impl DivisibilityReport {
    pub fn new(count: u64, divisor: u64, desc: impl Into<String>, applicable: bool) -> Self {
        assert!(divisor > 0, "divisors are positive");
        let divisible = count % divisor == 0;
        DivisibilityReport {
            count,
            divisor,
            divisor_desc: desc.into(),
            divisible,
            quotient: divisible.then(|| count / divisor),
            theorem_applicable: applicable,
            aux: Vec::new(),
            harness: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TaskOptions {
    pub harness: bool,
    pub subgroup_bound: usize,
}

impl Default for TaskOptions {
    fn default() -> Self {
        TaskOptions { harness: false, subgroup_bound: 48 }
    }
}

/// A system of equations over a group: words over unknowns x0..x(n-1) and
/// declared constant letters, each equated to the identity.
#[derive(Debug, Clone)]
pub struct GroupEquationSystem {
    unknowns: usize,
    constants: Vec<(String, usize)>,
    equations: Vec<Word>,
}

impl GroupEquationSystem {
    /// Equation words use the combined alphabet: generator i < n is unknown
    /// x_i, generator n + j is the j-th declared constant.
    pub fn new(
        unknowns: usize,
        constants: Vec<(String, usize)>,
        equations: Vec<Word>,
    ) -> Result<Self> {
        let m = unknowns + constants.len();
        for w in &equations {
            if let Some(g) = w.max_generator() {
                if g >= m {
                    return Err(Error::Parse(format!("equation uses unknown letter {g}")));
                }
            }
        }
        Ok(GroupEquationSystem { unknowns, constants, equations })
    }

    pub fn parse(
        unknowns: usize,
        constants: Vec<(String, usize)>,
        texts: &[String],
    ) -> Result<Self> {
        let names = Self::make_names(unknowns, &constants);
        let equations = texts
            .iter()
            .map(|t| Word::parse(t, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(unknowns, constants, equations)
    }

    fn make_names(unknowns: usize, constants: &[(String, usize)]) -> Vec<String> {
        let mut names: Vec<String> = (0..unknowns).map(|i| format!("x{i}")).collect();
        names.extend(constants.iter().map(|(n, _)| n.clone()));
        names
    }

    pub fn names(&self) -> Vec<String> {
        Self::make_names(self.unknowns, &self.constants)
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn constants(&self) -> &[(String, usize)] {
        &self.constants
    }

    pub fn equations(&self) -> &[Word] {
        &self.equations
    }

    /// Entry (j, i) is the exponent sum of unknown i in equation j; constant
    /// letters contribute nothing.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.equations
            .iter()
            .map(|w| {
                let full = w.exponent_row(self.unknowns + self.constants.len());
                full[..self.unknowns].to_vec()
            })
            .collect()
    }
}

/// Enumerates the solution tuples of the system over G in lexicographic
/// order, pruning each equation as soon as all its unknowns are assigned.
fn equation_solutions(g: &Arc<FiniteGroup>, system: &GroupEquationSystem) -> Result<Vec<Vec<usize>>> {
    let n = system.unknowns;
    let m = n + system.constants.len();
    let mut base = vec![0usize; m];
    for (j, (_, e)) in system.constants.iter().enumerate() {
        g.check_index(*e)?;
        base[n + j] = *e;
    }
    // schedule equations by the largest unknown they mention
    let mut schedule: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (ei, w) in system.equations.iter().enumerate() {
        let depth = w
            .letters()
            .iter()
            .filter(|&&(g, _)| g < n)
            .map(|&(g, _)| g + 1)
            .max()
            .unwrap_or(0);
        schedule[depth].push(ei);
    }
    for &ei in &schedule[0] {
        if system.equations[ei].evaluate(g, &base) != 0 {
            return Ok(Vec::new());
        }
    }
    let holds_at = |depth: usize, images: &[usize]| {
        schedule[depth]
            .iter()
            .all(|&ei| system.equations[ei].evaluate(g, images) == 0)
    };
    fn dfs(
        g: &FiniteGroup,
        n: usize,
        depth: usize,
        images: &mut Vec<usize>,
        holds_at: &impl Fn(usize, &[usize]) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == n {
            out.push(images[..n].to_vec());
            return;
        }
        for v in 0..g.order() {
            images[depth] = v;
            if holds_at(depth + 1, images) {
                dfs(g, n, depth + 1, images, holds_at, out);
            }
        }
        images[depth] = 0;
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let out = exec::flat_map_indexed(g.order(), |v| {
        let mut images = base.clone();
        images[0] = v;
        let mut local = Vec::new();
        if holds_at(1, &images) {
            dfs(g, n, 1, &mut images, &holds_at, &mut local);
        }
        local
    });
    Ok(out)
}

/// Solution count of a group equation system with the centralizer divisor.
/// The theorem applies when the unknown-exponent relations leave a degree
/// vector; counting proceeds either way and the flag records which case held.
pub fn count_equation_solutions(
    g: &Arc<FiniteGroup>,
    system: &GroupEquationSystem,
    opts: &TaskOptions,
) -> Result<DivisibilityReport> {
    let solutions = equation_solutions(g, system)?;
    let coefficient_elements: Vec<usize> =
        system.constants.iter().map(|&(_, e)| e).collect();
    let h = centralizer(g, &coefficient_elements)?;
    let m = system.unknowns + system.constants.len();
    let relator_rows: Vec<Vec<i64>> =
        system.equations.iter().map(|w| w.exponent_row(m)).collect();
    let fixed_rows: Vec<Vec<i64>> = (0..system.constants.len())
        .map(|j| {
            let mut row = vec![0i64; m];
            row[system.unknowns + j] = 1;
            row
        })
        .collect();
    let degrees = derive_degree(m, &relator_rows, &fixed_rows).ok();
    let mut report = DivisibilityReport::new(
        solutions.len() as u64,
        h.order() as u64,
        "|C(coefficients)|",
        degrees.is_some(),
    );
    if opts.harness {
        if let Some(degrees) = degrees {
            let names = system.names();
            let fixed: Vec<(usize, usize)> = system
                .constants
                .iter()
                .enumerate()
                .map(|(j, &(_, e))| (system.unknowns + j, e))
                .collect();
            let p = IndexedPresentation::new(
                names,
                system.equations.clone(),
                fixed,
                Some(degrees),
            )?;
            let homs: Vec<Hom> = solutions
                .iter()
                .map(|s| {
                    let mut images = s.clone();
                    images.extend(system.constants.iter().map(|&(_, e)| e));
                    Hom::new(Arc::clone(&p), Arc::clone(g), images)
                })
                .collect::<Result<_>>()?;
            report.harness = Some(partition_classes(&homs, &h)?);
        }
    }
    Ok(report)
}

/// Number of g with g^n in H, with divisor |H|.
pub fn count_nth_roots(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    n: i64,
    opts: &TaskOptions,
) -> Result<DivisibilityReport> {
    h.same_parent(g)?;
    let roots: Vec<usize> = (0..g.order()).filter(|&x| h.contains(g.pow(x, n))).collect();
    let mut report =
        DivisibilityReport::new(roots.len() as u64, h.order() as u64, "|H|", true);
    if opts.harness {
        let p = IndexedPresentation::free(1)?;
        let homs: Vec<Hom> = roots
            .iter()
            .map(|&x| Hom::new(Arc::clone(&p), Arc::clone(g), vec![x]))
            .collect::<Result<_>>()?;
        report.harness = Some(partition_classes(&homs, h)?);
    }
    Ok(report)
}

/// Generating n-tuple count by the Moebius formula over the subgroup
/// lattice: sum of mu(H) |H|^n.
pub fn hall_count(g: &Arc<FiniteGroup>, n: u32, bound: usize) -> Result<u64> {
    let table = moebius_table(g, bound)?;
    let mut acc: i128 = 0;
    for (h, &mu) in table.subgroups().iter().zip(table.mu()) {
        acc += mu as i128 * (h.order() as i128).pow(n);
    }
    assert!(acc >= 0, "generating-tuple count cannot be negative");
    Ok(acc as u64)
}

#[derive(Debug, Clone)]
pub enum TheoremTask {
    /// All homomorphisms F -> G; divisor |G|.
    AllHoms {
        presentation: Arc<IndexedPresentation>,
        group: Arc<FiniteGroup>,
    },
    /// Homomorphisms with phi(w) in H for every listed word; divisor |H|.
    SubsetInSubgroup {
        presentation: Arc<IndexedPresentation>,
        group: Arc<FiniteGroup>,
        words: Vec<Word>,
        subgroup: Subgroup,
    },
    /// Homomorphisms with phi(w) in H g_w H per item; divisor |H|.
    DoubleCoset {
        presentation: Arc<IndexedPresentation>,
        group: Arc<FiniteGroup>,
        subgroup: Subgroup,
        items: Vec<(Word, usize)>,
    },
    /// Elements with g^n in H; divisor |H|.
    NthRoots {
        group: Arc<FiniteGroup>,
        subgroup: Subgroup,
        exponent: i64,
    },
    /// Solutions of a coefficient system; divisor |C(coefficients)|.
    EquationSystem {
        group: Arc<FiniteGroup>,
        system: GroupEquationSystem,
    },
    /// Surjective homomorphisms; divisor |G'|, plus the |Aut G| check.
    Epimorphisms {
        presentation: Arc<IndexedPresentation>,
        group: Arc<FiniteGroup>,
    },
    /// Generating n-tuples as epimorphisms from the free group of rank n.
    GeneratingTuples {
        group: Arc<FiniteGroup>,
        arity: usize,
    },
    /// Homomorphisms with phi(<words>) = A; divisor |A'|.
    ImageEquals {
        presentation: Arc<IndexedPresentation>,
        group: Arc<FiniteGroup>,
        words: Vec<Word>,
        subgroup: Subgroup,
    },
    /// Semidirect flavor with W <= K given by generating element indices of
    /// the base group: homomorphisms injective on W with phi(W) <= A;
    /// divisor |N(A)|.
    InjectiveRestriction {
        presentation: Arc<IndexedPresentation>,
        group: Arc<FiniteGroup>,
        w_generators: Vec<usize>,
        subgroup: Subgroup,
    },
}

fn homs_report(
    homs: &[Hom],
    divisor_subgroup: &Subgroup,
    desc: &str,
    opts: &TaskOptions,
) -> Result<DivisibilityReport> {
    let mut report = DivisibilityReport::new(
        homs.len() as u64,
        divisor_subgroup.order() as u64,
        desc,
        true,
    );
    if opts.harness {
        report.harness = Some(partition_classes(homs, divisor_subgroup)?);
    }
    Ok(report)
}

pub fn run_theorem_task(task: &TheoremTask, opts: &TaskOptions) -> Result<DivisibilityReport> {
    match task {
        TheoremTask::AllHoms { presentation, group } => {
            let homs = enumerate_homs(presentation, group, &vec![])?;
            homs_report(&homs, &Subgroup::whole(group), "|G|", opts)
        }
        TheoremTask::SubsetInSubgroup { presentation, group, words, subgroup } => {
            let constraint = Constraint::SubsetInSubgroup {
                words: words.clone(),
                subgroup: subgroup.clone(),
            };
            let homs = enumerate_homs(presentation, group, &vec![constraint])?;
            homs_report(&homs, subgroup, "|H|", opts)
        }
        TheoremTask::DoubleCoset { presentation, group, subgroup, items } => {
            subgroup.same_parent(group)?;
            let constraint = Constraint::SubsetInDoubleCosets {
                items: items
                    .iter()
                    .map(|(w, rep)| (w.clone(), subgroup.clone(), *rep))
                    .collect(),
            };
            let homs = enumerate_homs(presentation, group, &vec![constraint])?;
            homs_report(&homs, subgroup, "|H|", opts)
        }
        TheoremTask::NthRoots { group, subgroup, exponent } => {
            count_nth_roots(group, subgroup, *exponent, opts)
        }
        TheoremTask::EquationSystem { group, system } => {
            count_equation_solutions(group, system, opts)
        }
        TheoremTask::Epimorphisms { presentation, group } => {
            let homs = enumerate_homs(presentation, group, &vec![Constraint::Surjective])?;
            let d = derived_subgroup(group);
            let mut report = homs_report(&homs, &d, "|G'|", opts)?;
            if let Ok(aut) = automorphism_count(group, opts.subgroup_bound) {
                report.aux.push(AuxCheck {
                    desc: "|Aut G|".into(),
                    divisor: aut,
                    divides: aut != 0 && report.count % aut == 0,
                });
            }
            Ok(report)
        }
        TheoremTask::GeneratingTuples { group, arity } => {
            let presentation = IndexedPresentation::free(*arity)?;
            run_theorem_task(
                &TheoremTask::Epimorphisms { presentation, group: Arc::clone(group) },
                opts,
            )
        }
        TheoremTask::ImageEquals { presentation, group, words, subgroup } => {
            subgroup.same_parent(group)?;
            let constraint = Constraint::ImageEquals {
                words: words.clone(),
                subgroup: subgroup.clone(),
            };
            let homs = enumerate_homs(presentation, group, &vec![constraint])?;
            let divisor = derived_subgroup_of(subgroup);
            homs_report(&homs, &divisor, "|A'|", opts)
        }
        TheoremTask::InjectiveRestriction {
            presentation,
            group,
            w_generators,
            subgroup,
        } => {
            subgroup.same_parent(group)?;
            let sd = presentation.sd().ok_or_else(|| {
                Error::Parse("injective-restriction tasks need the semidirect flavor".into())
            })?;
            let w = subgroup_closure(sd.base(), w_generators)?;
            let words: Vec<Word> = w
                .elements()
                .iter()
                .map(|&k| sd.element_word(k).clone())
                .collect();
            let constraints = vec![
                Constraint::SubsetInSubgroup {
                    words: words.clone(),
                    subgroup: subgroup.clone(),
                },
                Constraint::InjectiveOnElements { words },
            ];
            let homs = enumerate_homs(presentation, group, &constraints)?;
            let divisor = crate::group::normalizer(group, subgroup)?;
            homs_report(&homs, &divisor, "|N(A)|", opts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    const THREE_CYCLE: usize = 3;

    #[test]
    fn exponent_matrix_rows() {
        // commutator with a trailing constant: all exponent sums cancel
        let sys = GroupEquationSystem::parse(
            2,
            vec![("c".into(), 3)],
            &["x0 x1 x0^-1 x1^-1 c".to_string()],
        )
        .unwrap();
        assert_eq!(sys.exponent_matrix(), vec![vec![0, 0]]);

        let sys =
            GroupEquationSystem::parse(2, vec![], &["x0^2 x1".to_string()]).unwrap();
        assert_eq!(sys.exponent_matrix(), vec![vec![2, 1]]);

        let sys =
            GroupEquationSystem::parse(2, vec![], &["x0^3 x1^-3".to_string()]).unwrap();
        assert_eq!(sys.exponent_matrix(), vec![vec![3, -3]]);
    }

    #[test]
    fn commutator_system_over_sym3() {
        let s3 = symmetric(3).unwrap();
        let sys = GroupEquationSystem::parse(
            2,
            vec![],
            &["x0 x1 x0^-1 x1^-1".to_string()],
        )
        .unwrap();
        let report =
            count_equation_solutions(&s3, &sys, &TaskOptions::default()).unwrap();
        assert_eq!(report.count, 18);
        assert_eq!(report.divisor, 6);
        assert!(report.divisible);
        assert!(report.theorem_applicable);
    }

    #[test]
    fn square_equals_three_cycle_not_applicable() {
        // x0^2 = (0 1 2), rewritten x0^2 c = 1 with c = (0 2 1)
        let s3 = symmetric(3).unwrap();
        let sys = GroupEquationSystem::parse(
            1,
            vec![("c".into(), 4)],
            &["x0^2 c".to_string()],
        )
        .unwrap();
        let report =
            count_equation_solutions(&s3, &sys, &TaskOptions::default()).unwrap();
        assert!(!report.theorem_applicable);
        // oracle: squares equal to (0 1 2) = index 3
        let oracle = (0..6).filter(|&x| s3.mul(x, x) == THREE_CYCLE).count() as u64;
        assert_eq!(report.count, oracle);
    }

    #[test]
    fn commutator_with_coefficient() {
        // [x0, x1] = (0 1 2): as x0 x1 x0^-1 x1^-1 c = 1 with c = (0 2 1)
        let s3 = symmetric(3).unwrap();
        let sys = GroupEquationSystem::parse(
            2,
            vec![("c".into(), 4)],
            &["x0 x1 x0^-1 x1^-1 c".to_string()],
        )
        .unwrap();
        let report =
            count_equation_solutions(&s3, &sys, &TaskOptions::default()).unwrap();
        assert_eq!(report.divisor, 3); // |C((0 1 2))|
        assert!(report.theorem_applicable);
        assert!(report.divisible);
        // oracle: brute force over 36 pairs; the equation word is
        // x0 x1 x0^-1 x1^-1 c with c = (0 2 1)
        let mut direct = 0u64;
        for a in 0..6 {
            for b in 0..6 {
                let w = s3.mul(s3.mul(a, b), s3.mul(s3.inv(a), s3.inv(b)));
                if s3.mul(w, 4) == 0 {
                    direct += 1;
                }
            }
        }
        assert_eq!(report.count, direct);
        assert_eq!(direct, 9);
    }

    #[test]
    fn solution_count_invariant_under_unknown_renaming() {
        let s3 = symmetric(3).unwrap();
        let a = GroupEquationSystem::parse(2, vec![], &["x0^2 x1".to_string()]).unwrap();
        let b = GroupEquationSystem::parse(2, vec![], &["x1^2 x0".to_string()]).unwrap();
        let ra = count_equation_solutions(&s3, &a, &TaskOptions::default()).unwrap();
        let rb = count_equation_solutions(&s3, &b, &TaskOptions::default()).unwrap();
        assert_eq!(ra.count, rb.count);
    }

    #[test]
    fn nth_roots_examples() {
        let s3 = symmetric(3).unwrap();
        let h = subgroup_closure(&s3, &[THREE_CYCLE]).unwrap();
        let opts = TaskOptions::default();
        let r1 = count_nth_roots(&s3, &h, 1, &opts).unwrap();
        assert_eq!(r1.count, 3);
        assert_eq!(r1.quotient, Some(1));

        let r2 = count_nth_roots(&s3, &h, 2, &opts).unwrap();
        assert_eq!(r2.count, 6); // every permutation squares into A3
        assert!(r2.divisible);

        let c4 = cyclic(4).unwrap();
        let h2 = subgroup_closure(&c4, &[2]).unwrap();
        let r3 = count_nth_roots(&c4, &h2, 2, &opts).unwrap();
        assert_eq!(r3.count, 4);

        // whole group: every n gives |G|
        for n in 0..5 {
            let r = count_nth_roots(&s3, &Subgroup::whole(&s3), n, &opts).unwrap();
            assert_eq!(r.count, 6);
        }
    }

    #[test]
    fn hall_count_examples() {
        let trivial = cyclic(1).unwrap();
        assert_eq!(hall_count(&trivial, 3, 48).unwrap(), 1);

        // prime order: |G|^n - 1
        for p in [2usize, 3, 5, 7] {
            let g = cyclic(p).unwrap();
            for n in 1..=3u32 {
                assert_eq!(
                    hall_count(&g, n, 48).unwrap(),
                    (p as u64).pow(n) - 1
                );
            }
        }

        let s3 = symmetric(3).unwrap();
        // 36 - 9 - 12 + 3
        assert_eq!(hall_count(&s3, 2, 48).unwrap(), 18);
    }

    #[test]
    fn generating_tuples_match_hall_and_divisor() {
        let s3 = symmetric(3).unwrap();
        let report = run_theorem_task(
            &TheoremTask::GeneratingTuples { group: Arc::clone(&s3), arity: 2 },
            &TaskOptions::default(),
        )
        .unwrap();
        assert_eq!(report.count, 18);
        assert_eq!(report.divisor, 3);
        assert!(report.divisible);
        assert_eq!(report.count, hall_count(&s3, 2, 48).unwrap());
        // |Aut sym:3| = 6 divides 18
        assert!(report.aux.iter().any(|a| a.divisor == 6 && a.divides));
    }

    #[test]
    fn all_homs_task() {
        let s3 = symmetric(3).unwrap();
        let p = IndexedPresentation::free(2).unwrap();
        let report = run_theorem_task(
            &TheoremTask::AllHoms { presentation: p, group: Arc::clone(&s3) },
            &TaskOptions::default(),
        )
        .unwrap();
        assert_eq!(report.count, 36);
        assert_eq!(report.divisor, 6);
        assert!(report.divisible);
    }

    #[test]
    fn double_coset_task_example() {
        let s3 = symmetric(3).unwrap();
        let p = IndexedPresentation::free(1).unwrap();
        let h = subgroup_closure(&s3, &[2]).unwrap();
        let report = run_theorem_task(
            &TheoremTask::DoubleCoset {
                presentation: p,
                group: Arc::clone(&s3),
                subgroup: h,
                items: vec![(Word::generator(0), THREE_CYCLE)],
            },
            &TaskOptions::default(),
        )
        .unwrap();
        assert_eq!(report.count, 4);
        assert_eq!(report.divisor, 2);
        assert!(report.divisible);
    }

    #[test]
    fn injective_restriction_example() {
        // F = Z x sym:3, W = A = the 3-cycle subgroup: count 6, divisor 6
        let s3 = symmetric(3).unwrap();
        let p = IndexedPresentation::semidirect(Arc::clone(&s3), (0..6).collect()).unwrap();
        let a = subgroup_closure(&s3, &[THREE_CYCLE]).unwrap();
        let report = run_theorem_task(
            &TheoremTask::InjectiveRestriction {
                presentation: p,
                group: Arc::clone(&s3),
                w_generators: vec![THREE_CYCLE],
                subgroup: a,
            },
            &TaskOptions::default(),
        )
        .unwrap();
        assert_eq!(report.count, 6);
        assert_eq!(report.divisor, 6);
        assert!(report.divisible);
    }

    #[test]
    fn image_equals_task() {
        let s3 = symmetric(3).unwrap();
        let p = IndexedPresentation::free(2).unwrap();
        let a = subgroup_closure(&s3, &[THREE_CYCLE]).unwrap();
        let report = run_theorem_task(
            &TheoremTask::ImageEquals {
                presentation: p,
                group: Arc::clone(&s3),
                words: vec![Word::generator(0)],
                subgroup: a.clone(),
            },
            &TaskOptions::default(),
        )
        .unwrap();
        // x0 generates A (2 ways), x1 free (6): 12, divisor |A'| = 1
        assert_eq!(report.count, 12);
        assert_eq!(report.divisor, 1);
    }

    #[test]
    fn harness_attaches_when_requested() {
        let s3 = symmetric(3).unwrap();
        let p = IndexedPresentation::free(1).unwrap();
        let opts = TaskOptions { harness: true, ..TaskOptions::default() };
        let report = run_theorem_task(
            &TheoremTask::AllHoms { presentation: p, group: Arc::clone(&s3) },
            &opts,
        )
        .unwrap();
        let harness = report.harness.expect("harness requested");
        assert!(harness.conditions_i && harness.conditions_ii);
        assert!(harness.all_classes_size_h);
        assert_eq!(harness.total, 6);
    }
}
