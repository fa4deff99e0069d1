//! Automorphism counting by generator-image backtracking.

use std::sync::Arc;

use super::subgroup::{subgroup_closure_unchecked, Subgroup};
use super::FiniteGroup;
use crate::error::{Error, Result};

pub fn center(g: &Arc<FiniteGroup>) -> Subgroup {
    let elems: Vec<usize> = (0..g.order())
        .filter(|&x| (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    Subgroup::from_sorted(Arc::clone(g), elems)
}

/// Greedy generating set: repeatedly add the smallest-index element outside
/// the closure of what we have. Deterministic by construction.
pub(crate) fn greedy_generators(g: &Arc<FiniteGroup>) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = subgroup_closure_unchecked(g, &gens);
    while closure.order() < g.order() {
        let next = (0..g.order())
            .find(|&x| !closure.contains(x))
            .expect("closure is proper");
        gens.push(next);
        closure = subgroup_closure_unchecked(g, &gens);
    }
    gens
}

/// Number of bijective table-preserving maps G -> G. Candidate images are
/// restricted to elements of equal order; partial maps are extended by
/// product closure and pruned on the first multiplicativity conflict.
pub fn automorphism_count(g: &Arc<FiniteGroup>, bound: usize) -> Result<u64> {
    let n = g.order();
    if n > bound {
        return Err(Error::OrderBoundExceeded { order: n, bound });
    }
    let gens = greedy_generators(g);
    let orders: Vec<u64> = (0..n).map(|x| g.element_order(x)).collect();

    struct State<'a> {
        g: &'a FiniteGroup,
        gens: &'a [usize],
        orders: &'a [u64],
        count: u64,
    }

    // Closure state: list of mapped elements plus the partial map. Rebuilt
    // per branch; groups here are small by the order bound.
    fn extend(
        map: &mut Vec<Option<usize>>,
        domain: &mut Vec<usize>,
        g: &FiniteGroup,
        gen: usize,
        image: usize,
    ) -> bool {
        match map[gen] {
            Some(existing) => return existing == image,
            None => {
                map[gen] = Some(image);
                domain.push(gen);
            }
        }
        let mut i = 0;
        while i < domain.len() {
            let a = domain[i];
            let fa = map[a].expect("mapped");
            let mut j = 0;
            while j < domain.len() {
                let b = domain[j];
                let fb = map[b].expect("mapped");
                for (p, fp) in [(g.mul(a, b), g.mul(fa, fb)), (g.mul(b, a), g.mul(fb, fa))] {
                    match map[p] {
                        Some(existing) => {
                            if existing != fp {
                                return false;
                            }
                        }
                        None => {
                            map[p] = Some(fp);
                            domain.push(p);
                        }
                    }
                }
                j += 1;
            }
            i += 1;
        }
        true
    }

    fn search(st: &mut State, map: Vec<Option<usize>>, domain: Vec<usize>, depth: usize) {
        if depth == st.gens.len() {
            // generators generate G, so the map is total; it is an
            // automorphism iff it is injective.
            let mut seen = vec![false; st.g.order()];
            for x in 0..st.g.order() {
                let y = map[x].expect("total map");
                if seen[y] {
                    return;
                }
                seen[y] = true;
            }
            st.count += 1;
            return;
        }
        let gen = st.gens[depth];
        for cand in 0..st.g.order() {
            if st.orders[cand] != st.orders[gen] {
                continue;
            }
            let mut map2 = map.clone();
            let mut domain2 = domain.clone();
            if extend(&mut map2, &mut domain2, st.g, gen, cand) {
                search(st, map2, domain2, depth + 1);
            }
        }
    }

    let mut st = State { g, gens: &gens, orders: &orders, count: 0 };
    let mut map = vec![None; n];
    map[0] = Some(0);
    search(&mut st, map, vec![0], 0);
    Ok(st.count)
}
