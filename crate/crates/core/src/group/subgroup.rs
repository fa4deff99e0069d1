//! Subgroups as sorted element sets, plus the closure-based toolbox.

use std::sync::Arc;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup of a `FiniteGroup`, canonically represented by its strictly
/// sorted element set. Equality is set equality within the same parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.elements.len())
            .field("elements", &self.elements)
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    /// Wraps an element set that is already known to be closed and sorted.
    /// Asserts the identity, closure and Lagrange conditions.
    pub(crate) fn from_sorted(parent: Arc<FiniteGroup>, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        assert!(!elements.is_empty() && elements[0] == 0, "subgroup must contain the identity");
        assert_eq!(
            parent.order() % elements.len(),
            0,
            "subgroup order must divide the group order"
        );
        #[cfg(debug_assertions)]
        {
            for &a in &elements {
                debug_assert!(elements.binary_search(&parent.inv(a)).is_ok());
                for &b in &elements {
                    debug_assert!(elements.binary_search(&parent.mul(a, b)).is_ok());
                }
            }
        }
        Subgroup { parent, elements }
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            parent: Arc::clone(parent),
            elements: vec![0],
        }
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            parent: Arc::clone(parent),
            elements: (0..parent.order()).collect(),
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    /// True if the other subgroup's elements are a subset of this one's.
    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.elements.iter().all(|&x| self.contains(x))
    }

    pub fn same_parent(&self, g: &Arc<FiniteGroup>) -> Result<()> {
        if Arc::ptr_eq(&self.parent, g) {
            Ok(())
        } else {
            Err(Error::ForeignSubgroup)
        }
    }

    /// Membership mask, for hot loops.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent.order()];
        for &x in &self.elements {
            m[x] = true;
        }
        m
    }

    /// True iff g^-1 * self * g = self as a set.
    pub fn is_normalized_by(&self, g: usize) -> bool {
        self.elements.iter().all(|&a| self.contains(self.parent.conj(a, g)))
    }

    pub fn is_normal(&self) -> bool {
        (0..self.parent.order()).all(|g| self.is_normalized_by(g))
    }
}

/// Work-queue closure: the smallest subgroup containing S. Closes under
/// products (both orders) and inverses.
pub fn subgroup_closure(g: &Arc<FiniteGroup>, generators: &[usize]) -> Result<Subgroup> {
    for &s in generators {
        g.check_index(s)?;
    }
    Ok(subgroup_closure_unchecked(g, generators))
}

pub(crate) fn subgroup_closure_unchecked(g: &Arc<FiniteGroup>, generators: &[usize]) -> Subgroup {
    let n = g.order();
    let mut inset = vec![false; n];
    let mut elems: Vec<usize> = vec![0];
    inset[0] = true;
    for &s in generators {
        if !inset[s] {
            inset[s] = true;
            elems.push(s);
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let a = elems[i];
        let ia = g.inv(a);
        if !inset[ia] {
            inset[ia] = true;
            elems.push(ia);
        }
        let mut j = 0;
        while j < elems.len() {
            let b = elems[j];
            for p in [g.mul(a, b), g.mul(b, a)] {
                if !inset[p] {
                    inset[p] = true;
                    elems.push(p);
                }
            }
            j += 1;
        }
        i += 1;
    }
    elems.sort_unstable();
    Subgroup::from_sorted(Arc::clone(g), elems)
}

/// Closure of a set of elements of an existing subgroup's parent, convenience
/// for constraint code that works with image sets.
pub fn subgroup_closure_of(g: &Arc<FiniteGroup>, generators: impl IntoIterator<Item = usize>) -> Subgroup {
    let gens: Vec<usize> = generators.into_iter().collect();
    subgroup_closure_unchecked(g, &gens)
}

/// Derived subgroup: closure of all commutators.
pub fn derived_subgroup(g: &Arc<FiniteGroup>) -> Subgroup {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut gens = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                gens.push(c);
            }
        }
    }
    subgroup_closure_unchecked(g, &gens)
}

/// Derived subgroup of a subgroup, computed inside the parent group:
/// closure of commutators of elements of `h`.
pub fn derived_subgroup_of(h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let mut seen = vec![false; g.order()];
    let mut gens = Vec::new();
    for &a in h.elements() {
        for &b in h.elements() {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                gens.push(c);
            }
        }
    }
    subgroup_closure_unchecked(g, &gens)
}

/// {g : gs = sg for all s in S}.
pub fn centralizer(g: &Arc<FiniteGroup>, set: &[usize]) -> Result<Subgroup> {
    for &s in set {
        g.check_index(s)?;
    }
    let elems: Vec<usize> = (0..g.order())
        .filter(|&x| set.iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect();
    Ok(Subgroup::from_sorted(Arc::clone(g), elems))
}

/// {g : g^-1 A g = A}.
pub fn normalizer(g: &Arc<FiniteGroup>, a: &Subgroup) -> Result<Subgroup> {
    a.same_parent(g)?;
    let elems: Vec<usize> = (0..g.order()).filter(|&x| a.is_normalized_by(x)).collect();
    Ok(Subgroup::from_sorted(Arc::clone(g), elems))
}

/// Smallest normal subgroup containing S: closure of all conjugates of S.
pub fn normal_closure(g: &Arc<FiniteGroup>, set: &[usize]) -> Result<Subgroup> {
    for &s in set {
        g.check_index(s)?;
    }
    let n = g.order();
    let mut seen = vec![false; n];
    let mut gens = Vec::new();
    for &s in set {
        for x in 0..n {
            let c = g.conj(s, x);
            if !seen[c] {
                seen[c] = true;
                gens.push(c);
            }
        }
    }
    Ok(subgroup_closure_unchecked(g, &gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    // sym:3 indices in lexicographic one-line order:
    // 0: ()        [0,1,2]
    // 1: (1 2)     [0,2,1]
    // 2: (0 1)     [1,0,2]
    // 3: (0 1 2)   [1,2,0]
    // 4: (0 2 1)   [2,0,1]
    // 5: (0 2)     [2,1,0]
    const TRANSPOSITION: usize = 2; // (0 1)
    const THREE_CYCLE: usize = 3; // (0 1 2)

    #[test]
    fn closure_examples() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(subgroup_closure(&s3, &[]).unwrap().elements(), &[0]);
        let c3 = subgroup_closure(&s3, &[THREE_CYCLE]).unwrap();
        assert_eq!(c3.order(), 3);
        let whole = subgroup_closure(&s3, &[TRANSPOSITION, THREE_CYCLE]).unwrap();
        assert!(whole.is_whole());
        assert!(subgroup_closure(&s3, &[9]).is_err());
    }

    #[test]
    fn closure_idempotent() {
        let s3 = symmetric(3).unwrap();
        let h = subgroup_closure(&s3, &[THREE_CYCLE]).unwrap();
        let again = subgroup_closure(&s3, h.elements()).unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn derived_subgroup_examples() {
        let c6 = cyclic(6).unwrap();
        assert_eq!(derived_subgroup(&c6).order(), 1);

        let s3 = symmetric(3).unwrap();
        let d = derived_subgroup(&s3);
        assert_eq!(d.order(), 3);
        assert!(d.is_normal());

        let d4 = crate::group::dihedral(4).unwrap();
        assert_eq!(derived_subgroup(&d4).order(), 2);
    }

    #[test]
    fn quotient_by_derived_is_commutative() {
        // coset arithmetic: ab and ba lie in the same coset of G'.
        for g in [symmetric(3).unwrap(), crate::group::dihedral(4).unwrap()] {
            let d = derived_subgroup(&g);
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let ab = g.mul(a, b);
                    let ba = g.mul(b, a);
                    // ab (ba)^-1 in G'
                    assert!(d.contains(g.mul(ab, g.inv(ba))));
                }
            }
        }
    }

    #[test]
    fn centralizer_examples() {
        let s3 = symmetric(3).unwrap();
        assert!(centralizer(&s3, &[]).unwrap().is_whole());
        let c = centralizer(&s3, &[THREE_CYCLE]).unwrap();
        assert_eq!(c.order(), 3);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(centralizer(&s3, &all).unwrap().order(), 1);
    }

    #[test]
    fn centralizer_is_intersection_of_pointwise() {
        let s3 = symmetric(3).unwrap();
        let set = [TRANSPOSITION, THREE_CYCLE];
        let joint = centralizer(&s3, &set).unwrap();
        let per: Vec<Subgroup> =
            set.iter().map(|&s| centralizer(&s3, &[s]).unwrap()).collect();
        for x in 0..6 {
            assert_eq!(joint.contains(x), per.iter().all(|c| c.contains(x)));
        }
    }

    #[test]
    fn normalizer_examples() {
        let s3 = symmetric(3).unwrap();
        let a = subgroup_closure(&s3, &[TRANSPOSITION]).unwrap();
        let n = normalizer(&s3, &a).unwrap();
        assert_eq!(n, a);

        let c3 = subgroup_closure(&s3, &[THREE_CYCLE]).unwrap();
        assert!(normalizer(&s3, &c3).unwrap().is_whole());
        assert!(normalizer(&s3, &Subgroup::trivial(&s3)).unwrap().is_whole());
    }

    #[test]
    fn normal_closure_examples() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(normal_closure(&s3, &[]).unwrap().order(), 1);
        assert!(normal_closure(&s3, &[TRANSPOSITION]).unwrap().is_whole());
        assert_eq!(normal_closure(&s3, &[THREE_CYCLE]).unwrap().order(), 3);
    }

    #[test]
    fn foreign_subgroup_rejected() {
        let s3 = symmetric(3).unwrap();
        let other = symmetric(3).unwrap();
        let a = subgroup_closure(&s3, &[TRANSPOSITION]).unwrap();
        assert!(matches!(normalizer(&other, &a), Err(Error::ForeignSubgroup)));
    }
}
