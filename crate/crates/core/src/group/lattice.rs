//! Subgroup lattice enumeration and its Moebius function.

use std::collections::HashSet;
use std::sync::Arc;

use super::subgroup::{subgroup_closure_unchecked, Subgroup};
use super::FiniteGroup;
use crate::error::{Error, Result};

/// Every subgroup of G, by layered extension: start from the cyclic
/// subgroups, then repeatedly close each known subgroup together with one
/// extra element until nothing new appears. Sorted by (order, element set).
pub fn all_subgroups(g: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<Subgroup>> {
    let n = g.order();
    if n > bound {
        return Err(Error::OrderBoundExceeded { order: n, bound });
    }
    let mut known: HashSet<Vec<usize>> = HashSet::new();
    let mut subgroups: Vec<Subgroup> = Vec::new();
    let mut frontier: Vec<Subgroup> = Vec::new();

    let push = |h: Subgroup, frontier: &mut Vec<Subgroup>, known: &mut HashSet<Vec<usize>>, subgroups: &mut Vec<Subgroup>| {
        if known.insert(h.elements().to_vec()) {
            frontier.push(h.clone());
            subgroups.push(h);
        }
    };

    push(Subgroup::trivial(g), &mut frontier, &mut known, &mut subgroups);
    for x in 0..n {
        let h = subgroup_closure_unchecked(g, &[x]);
        push(h, &mut frontier, &mut known, &mut subgroups);
    }
    while !frontier.is_empty() {
        let layer = std::mem::take(&mut frontier);
        for h in &layer {
            for x in 0..n {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.elements().to_vec();
                gens.push(x);
                let k = subgroup_closure_unchecked(g, &gens);
                push(k, &mut frontier, &mut known, &mut subgroups);
            }
        }
    }
    subgroups.sort_by(|a, b| {
        (a.order(), a.elements()).cmp(&(b.order(), b.elements()))
    });
    Ok(subgroups)
}

/// The Moebius function of the subgroup lattice: mu(G) = 1 and, top-down,
/// mu(H) = -sum of mu(K) over all K with H < K <= G.
pub struct MoebiusTable {
    subgroups: Vec<Subgroup>,
    mu: Vec<i64>,
}

impl MoebiusTable {
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn mu_of(&self, h: &Subgroup) -> Option<i64> {
        self.subgroups
            .iter()
            .position(|k| k.elements() == h.elements())
            .map(|i| self.mu[i])
    }
}

pub fn moebius_table(g: &Arc<FiniteGroup>, bound: usize) -> Result<MoebiusTable> {
    let subgroups = all_subgroups(g, bound)?;
    let m = subgroups.len();
    let mut mu = vec![0i64; m];
    // subgroups are sorted ascending by order; walk from the top
    for i in (0..m).rev() {
        if subgroups[i].order() == g.order() {
            mu[i] = 1;
            continue;
        }
        let mut acc = 0i64;
        for j in (i + 1)..m {
            if subgroups[j].order() > subgroups[i].order()
                && subgroups[j].contains_subgroup(&subgroups[i])
            {
                acc += mu[j];
            }
        }
        mu[i] = -acc;
    }
    Ok(MoebiusTable { subgroups, mu })
}
