//! Homomorphism enumeration under constraint predicates.
//!
//! The baseline filters full assignments; the default engine prunes
//! depth-first as soon as a relator's generators are all assigned. Both
//! return the same list, in lexicographic order of the image vector. The
//! parallel path splits the first free generator's image range and merges
//! in order, so the worker count never changes the output.

use std::sync::Arc;

use super::{Hom, IndexedPresentation};
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{subgroup_closure_of, FiniteGroup, Subgroup};
use crate::word::Word;

/// One membership or shape constraint on an enumerated homomorphism.
#[derive(Debug, Clone)]
pub enum Constraint {
    /// phi(w) in H for every listed word.
    SubsetInSubgroup { words: Vec<Word>, subgroup: Subgroup },
    /// phi(w) in H g_w H per item.
    SubsetInDoubleCosets { items: Vec<(Word, Subgroup, usize)> },
    /// The closure of the images of the listed words equals the subgroup.
    ImageEquals { words: Vec<Word>, subgroup: Subgroup },
    /// Words denoting pairwise-distinct elements must have pairwise-distinct
    /// images.
    InjectiveOnElements { words: Vec<Word> },
    /// The generator images generate the whole target.
    Surjective,
}

pub type ConstraintSet = Vec<Constraint>;

/// Constraints with membership sets materialized for the hot loop.
struct Compiled<'a> {
    subset: Vec<(&'a [Word], Vec<bool>)>,
    cosets: Vec<(&'a Word, Vec<bool>)>,
    image_eq: Vec<(&'a [Word], &'a Subgroup)>,
    injective: Vec<&'a [Word]>,
    surjective: bool,
}

fn double_coset_mask(g: &FiniteGroup, h: &Subgroup, rep: usize) -> Vec<bool> {
    let mut mask = vec![false; g.order()];
    for &a in h.elements() {
        let ar = g.mul(a, rep);
        for &b in h.elements() {
            mask[g.mul(ar, b)] = true;
        }
    }
    mask
}

fn compile<'a>(
    constraints: &'a [Constraint],
    p: &IndexedPresentation,
    g: &Arc<FiniteGroup>,
) -> Result<Compiled<'a>> {
    let mut out = Compiled {
        subset: Vec::new(),
        cosets: Vec::new(),
        image_eq: Vec::new(),
        injective: Vec::new(),
        surjective: false,
    };
    let check_words = |words: &[Word]| -> Result<()> {
        for w in words {
            if let Some(max) = w.max_generator() {
                if max >= p.gen_count() {
                    return Err(Error::Parse(format!(
                        "constraint word uses unknown generator {max}"
                    )));
                }
            }
        }
        Ok(())
    };
    for c in constraints {
        match c {
            Constraint::SubsetInSubgroup { words, subgroup } => {
                subgroup.same_parent(g)?;
                check_words(words)?;
                out.subset.push((words, subgroup.mask()));
            }
            Constraint::SubsetInDoubleCosets { items } => {
                for (w, h, rep) in items {
                    h.same_parent(g)?;
                    check_words(std::slice::from_ref(w))?;
                    g.check_index(*rep)?;
                    out.cosets.push((w, double_coset_mask(g, h, *rep)));
                }
            }
            Constraint::ImageEquals { words, subgroup } => {
                subgroup.same_parent(g)?;
                check_words(words)?;
                out.image_eq.push((words, subgroup));
            }
            Constraint::InjectiveOnElements { words } => {
                check_words(words)?;
                out.injective.push(words);
            }
            Constraint::Surjective => out.surjective = true,
        }
    }
    Ok(out)
}

impl Compiled<'_> {
    fn satisfied(&self, g: &Arc<FiniteGroup>, images: &[usize]) -> bool {
        for (words, mask) in &self.subset {
            if !words.iter().all(|w| mask[w.evaluate(g, images)]) {
                return false;
            }
        }
        for (word, mask) in &self.cosets {
            if !mask[word.evaluate(g, images)] {
                return false;
            }
        }
        for (words, subgroup) in &self.image_eq {
            let closure = subgroup_closure_of(g, words.iter().map(|w| w.evaluate(g, images)));
            if closure != **subgroup {
                return false;
            }
        }
        for words in &self.injective {
            let mut vals: Vec<usize> = words.iter().map(|w| w.evaluate(g, images)).collect();
            vals.sort_unstable();
            let before = vals.len();
            vals.dedup();
            if vals.len() != before {
                return false;
            }
        }
        if self.surjective {
            let closure = subgroup_closure_of(g, images.iter().copied());
            if !closure.is_whole() {
                return false;
            }
        }
        true
    }
}

/// Scheduling data shared by the sequential and parallel DFS paths.
struct Plan<'a> {
    p: &'a Arc<IndexedPresentation>,
    g: &'a Arc<FiniteGroup>,
    free: Vec<usize>,
    /// schedule[k]: relator indices fully determined once k free generators
    /// are assigned (k = 0 means fixed letters only).
    schedule: Vec<Vec<usize>>,
    compiled: Compiled<'a>,
    base_images: Vec<usize>,
}

fn make_plan<'a>(
    p: &'a Arc<IndexedPresentation>,
    g: &'a Arc<FiniteGroup>,
    constraints: &'a [Constraint],
) -> Result<Plan<'a>> {
    let m = p.gen_count();
    let mut base_images = vec![0usize; m];
    let mut free = Vec::new();
    for (i, f) in p.fixed_images().iter().enumerate() {
        match *f {
            Some(img) => {
                g.check_index(img)?;
                base_images[i] = img;
            }
            None => free.push(i),
        }
    }
    // rank of each generator in the assignment order; fixed = rank 0
    let mut rank = vec![0usize; m];
    for (k, &gen) in free.iter().enumerate() {
        rank[gen] = k + 1;
    }
    let mut schedule: Vec<Vec<usize>> = vec![Vec::new(); free.len() + 1];
    for (ri, r) in p.relators().iter().enumerate() {
        let depth = r.letters().iter().map(|&(g, _)| rank[g]).max().unwrap_or(0);
        schedule[depth].push(ri);
    }
    // relators on fixed letters only must already hold
    for &ri in &schedule[0] {
        if p.relators()[ri].evaluate(g, &base_images) != 0 {
            return Err(Error::ImpossibleFixedImage { relator: ri });
        }
    }
    let compiled = compile(constraints, p, g)?;
    Ok(Plan { p, g, free, schedule, compiled, base_images })
}

impl Plan<'_> {
    fn relators_hold_at(&self, depth: usize, images: &[usize]) -> bool {
        self.schedule[depth]
            .iter()
            .all(|&ri| self.p.relators()[ri].evaluate(self.g, images) == 0)
    }

    fn dfs(&self, depth: usize, images: &mut Vec<usize>, out: &mut Vec<Hom>) {
        if depth == self.free.len() {
            if self.compiled.satisfied(self.g, images) {
                out.push(Hom::new_unchecked(
                    Arc::clone(self.p),
                    Arc::clone(self.g),
                    images.clone(),
                ));
            }
            return;
        }
        let gen = self.free[depth];
        for v in 0..self.g.order() {
            images[gen] = v;
            if self.relators_hold_at(depth + 1, images) {
                self.dfs(depth + 1, images, out);
            }
        }
        images[gen] = 0;
    }
}

/// Depth-first enumeration with relator pruning, sequential.
pub fn enumerate_homs_seq(
    p: &Arc<IndexedPresentation>,
    g: &Arc<FiniteGroup>,
    constraints: &ConstraintSet,
) -> Result<Vec<Hom>> {
    let plan = make_plan(p, g, constraints)?;
    let mut out = Vec::new();
    let mut images = plan.base_images.clone();
    plan.dfs(0, &mut images, &mut out);
    Ok(out)
}

/// Depth-first enumeration with relator pruning. With the `parallel` feature
/// the first free generator's range is split across workers; output order is
/// the lexicographic order of the image vector either way.
pub fn enumerate_homs(
    p: &Arc<IndexedPresentation>,
    g: &Arc<FiniteGroup>,
    constraints: &ConstraintSet,
) -> Result<Vec<Hom>> {
    let plan = make_plan(p, g, constraints)?;
    if plan.free.is_empty() {
        let mut out = Vec::new();
        let mut images = plan.base_images.clone();
        plan.dfs(0, &mut images, &mut out);
        return Ok(out);
    }
    let first = plan.free[0];
    let out = exec::flat_map_indexed(g.order(), |v| {
        let mut images = plan.base_images.clone();
        images[first] = v;
        let mut local = Vec::new();
        if plan.relators_hold_at(1, &images) {
            plan.dfs(1, &mut images, &mut local);
        }
        local
    });
    Ok(out)
}

/// Baseline engine: filter every full assignment with no pruning at all.
/// Kept as the in-tree oracle for the pruned engine.
pub fn enumerate_homs_baseline(
    p: &Arc<IndexedPresentation>,
    g: &Arc<FiniteGroup>,
    constraints: &ConstraintSet,
) -> Result<Vec<Hom>> {
    let plan = make_plan(p, g, constraints)?;
    let mut out = Vec::new();
    let mut images = plan.base_images.clone();
    let free = plan.free.clone();
    fill(&plan, &free, 0, &mut images, &mut out);
    return Ok(out);

    fn fill(plan: &Plan, free: &[usize], depth: usize, images: &mut Vec<usize>, out: &mut Vec<Hom>) {
        if depth == free.len() {
            let all_relators = plan
                .p
                .relators()
                .iter()
                .all(|r| r.evaluate(plan.g, images) == 0);
            if all_relators && plan.compiled.satisfied(plan.g, images) {
                out.push(Hom::new_unchecked(
                    Arc::clone(plan.p),
                    Arc::clone(plan.g),
                    images.clone(),
                ));
            }
            return;
        }
        for v in 0..plan.g.order() {
            images[free[depth]] = v;
            fill(plan, free, depth + 1, images, out);
        }
        images[free[depth]] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{derived_subgroup, subgroup_closure, symmetric};

    fn s3_commutator_presentation() -> Arc<IndexedPresentation> {
        let relator = Word::from_letters(vec![(0, 1), (1, 1), (0, -1), (1, -1)]);
        IndexedPresentation::new(
            vec!["x0".into(), "x1".into()],
            vec![relator],
            vec![],
            None,
        )
        .unwrap()
    }

    #[test]
    fn free_rank_two_counts_all_pairs() {
        let s3 = symmetric(3).unwrap();
        let p = IndexedPresentation::free(2).unwrap();
        let homs = enumerate_homs(&p, &s3, &vec![]).unwrap();
        assert_eq!(homs.len(), 36);
        // lexicographic order of image vectors
        for w in homs.windows(2) {
            assert!(w[0].images() < w[1].images());
        }
    }

    #[test]
    fn commuting_pairs_count() {
        let s3 = symmetric(3).unwrap();
        let p = s3_commutator_presentation();
        let homs = enumerate_homs(&p, &s3, &vec![]).unwrap();
        assert_eq!(homs.len(), 18);
        // independent oracle: direct commuting-pair count over the table
        let mut oracle = 0;
        for a in 0..6 {
            for b in 0..6 {
                if s3.mul(a, b) == s3.mul(b, a) {
                    oracle += 1;
                }
            }
        }
        assert_eq!(oracle, 18);
    }

    #[test]
    fn surjective_constraint_counts_generating_pairs() {
        let s3 = symmetric(3).unwrap();
        let p = IndexedPresentation::free(2).unwrap();
        let homs = enumerate_homs(&p, &s3, &vec![Constraint::Surjective]).unwrap();
        assert_eq!(homs.len(), 18);
        // oracle: brute-force closure check per pair
        let mut oracle = 0;
        for a in 0..6 {
            for b in 0..6 {
                if subgroup_closure(&s3, &[a, b]).unwrap().is_whole() {
                    oracle += 1;
                }
            }
        }
        assert_eq!(oracle, 18);
    }

    #[test]
    fn pruned_matches_baseline_and_seq() {
        let s3 = symmetric(3).unwrap();
        for p in [IndexedPresentation::free(2).unwrap(), s3_commutator_presentation()] {
            for constraints in [
                vec![],
                vec![Constraint::Surjective],
                vec![Constraint::SubsetInSubgroup {
                    words: vec![Word::generator(0)],
                    subgroup: derived_subgroup(&s3),
                }],
            ] {
                let a = enumerate_homs(&p, &s3, &constraints).unwrap();
                let b = enumerate_homs_baseline(&p, &s3, &constraints).unwrap();
                let c = enumerate_homs_seq(&p, &s3, &constraints).unwrap();
                assert_eq!(a, b);
                assert_eq!(a, c);
            }
        }
    }

    #[test]
    fn fixed_images_respected() {
        // one unknown and a coefficient letter fixed to (0 1 2):
        // relator x0 c x0^-1 c  ==  x0 c x0^-1 = c^-1
        let s3 = symmetric(3).unwrap();
        let relator = Word::from_letters(vec![(0, 1), (1, 1), (0, -1), (1, 1)]);
        let p = IndexedPresentation::new(
            vec!["x0".into(), "c".into()],
            vec![relator],
            vec![(1, 3)],
            None,
        )
        .unwrap();
        let homs = enumerate_homs(&p, &s3, &vec![]).unwrap();
        for h in &homs {
            assert_eq!(h.images()[1], 3);
            // conjugation by the image inverts the 3-cycle
            assert_eq!(s3.conj(3, s3.inv(h.images()[0])), 4);
        }
        // transpositions invert (0 1 2) by conjugation; there are three
        assert_eq!(homs.len(), 3);
    }

    #[test]
    fn impossible_fixed_image_detected() {
        // relator c^2 with c fixed to a 3-cycle cannot hold
        let s3 = symmetric(3).unwrap();
        let relator = Word::from_letters(vec![(1, 2)]);
        let p = IndexedPresentation::new(
            vec!["x0".into(), "c".into()],
            vec![relator],
            vec![(1, 3)],
            None,
        )
        .unwrap();
        assert!(matches!(
            enumerate_homs(&p, &s3, &vec![]),
            Err(Error::ImpossibleFixedImage { relator: 0 })
        ));
    }

    #[test]
    fn double_coset_constraint() {
        // free rank 1, H = <(0 1)>, rep (0 1 2): |H rep H| = 4 homs
        let s3 = symmetric(3).unwrap();
        let p = IndexedPresentation::free(1).unwrap();
        let h = subgroup_closure(&s3, &[2]).unwrap();
        let constraint = Constraint::SubsetInDoubleCosets {
            items: vec![(Word::generator(0), h, 3)],
        };
        let homs = enumerate_homs(&p, &s3, &vec![constraint]).unwrap();
        assert_eq!(homs.len(), 4);
    }

    #[test]
    fn image_equals_constraint() {
        let s3 = symmetric(3).unwrap();
        let p = IndexedPresentation::free(2).unwrap();
        let a = subgroup_closure(&s3, &[3]).unwrap();
        let constraint = Constraint::ImageEquals {
            words: vec![Word::generator(0)],
            subgroup: a.clone(),
        };
        let homs = enumerate_homs(&p, &s3, &vec![constraint]).unwrap();
        // x0 must generate the 3-cycle subgroup: 2 choices, x1 free: 12
        assert_eq!(homs.len(), 12);
        for h in homs {
            assert!(a.contains(h.images()[0]) && h.images()[0] != 0);
        }
    }

    #[test]
    fn foreign_subgroup_in_constraint() {
        let s3 = symmetric(3).unwrap();
        let other = symmetric(3).unwrap();
        let p = IndexedPresentation::free(1).unwrap();
        let h = subgroup_closure(&other, &[2]).unwrap();
        let constraint = Constraint::SubsetInSubgroup {
            words: vec![Word::generator(0)],
            subgroup: h,
        };
        assert!(matches!(
            enumerate_homs(&p, &s3, &vec![constraint]),
            Err(Error::ForeignSubgroup)
        ));
    }

    #[test]
    fn enumerated_homs_satisfy_relators_post_hoc() {
        let s3 = symmetric(3).unwrap();
        let p = s3_commutator_presentation();
        for hom in enumerate_homs(&p, &s3, &vec![]).unwrap() {
            assert_eq!(hom.first_violated_relator(), None);
        }
    }
}
