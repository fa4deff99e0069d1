//! Finite groups as full Cayley tables over element indices.
//!
//! Element 0 is always the identity; constructors renumber where needed to
//! keep that invariant. Tables are immutable after construction and safe to
//! share across threads; the exponent is derived lazily with at-most-once
//! semantics.

mod aut;
mod lattice;
mod subgroup;

pub use aut::{automorphism_count, center};
pub(crate) use aut::greedy_generators;
pub use lattice::{all_subgroups, moebius_table, MoebiusTable};
pub use subgroup::{
    centralizer, derived_subgroup, derived_subgroup_of, normal_closure, normalizer,
    subgroup_closure, subgroup_closure_of, Subgroup,
};

use std::sync::{Arc, OnceLock};

use crate::arith::lcm_u64;
use crate::error::{Error, Result, TableViolation};

pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Option<Vec<String>>,
    exponent: OnceLock<u64>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a trusted multiplication rule. Used by the catalog
    /// constructors, which are associative by construction; no validation runs.
    pub(crate) fn from_op(order: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        assert!(order > 0, "group order must be positive");
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let p = op(a, b);
                debug_assert!(p < order);
                table[a * order + b] = p as u32;
            }
        }
        let mut g = FiniteGroup {
            order,
            table,
            inverse: Vec::new(),
            labels: None,
            exponent: OnceLock::new(),
        };
        g.inverse = g.compute_inverses().expect("trusted constructor");
        debug_assert!(g.mul(0, 0) == 0);
        g
    }

    /// Validates a candidate table (identity at 0, Latin square, associativity)
    /// and builds the group. Associativity uses Light's test on a greedy
    /// generating set, which reports the first violating triple it probes.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Parse("empty Cayley table".into()));
        }
        let mut table = vec![0u32; order * order];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::InvalidTable(TableViolation::EntryRange {
                        row: i,
                        col: j,
                        value: v,
                    }));
                }
                table[i * order + j] = v as u32;
            }
        }
        let g = FiniteGroup {
            order,
            table,
            inverse: Vec::new(),
            labels: None,
            exponent: OnceLock::new(),
        };
        g.check_identity()?;
        g.check_latin()?;
        g.check_associativity()?;
        let inverse = g.compute_inverses()?;
        Ok(FiniteGroup { inverse, ..g })
    }

    fn check_identity(&self) -> Result<()> {
        for j in 0..self.order {
            if self.mul(0, j) != j {
                return Err(Error::InvalidTable(TableViolation::Identity { row: 0, col: j }));
            }
            if self.mul(j, 0) != j {
                return Err(Error::InvalidTable(TableViolation::Identity { row: j, col: 0 }));
            }
        }
        Ok(())
    }

    fn check_latin(&self) -> Result<()> {
        let n = self.order;
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = self.mul(i, j);
                if seen[v] {
                    return Err(Error::InvalidTable(TableViolation::NotLatin { row: i, col: j }));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                let v = self.mul(i, j);
                if seen[v] {
                    return Err(Error::InvalidTable(TableViolation::NotLatin { row: i, col: j }));
                }
                seen[v] = true;
            }
        }
        Ok(())
    }

    /// Light's test: with an identity present, the operation is associative iff
    /// x*(a*y) = (x*a)*y for every a in a set whose products reach all elements.
    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let mut gens: Vec<usize> = Vec::new();
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut count = 1;
        while count < n {
            let next = (0..n).find(|&x| !reached[x]).expect("count < n");
            gens.push(next);
            // product closure of {0} ∪ gens under the raw table
            let mut elems: Vec<usize> = vec![0];
            let mut inset = vec![false; n];
            inset[0] = true;
            for &g in &gens {
                if !inset[g] {
                    inset[g] = true;
                    elems.push(g);
                }
            }
            let mut i = 0;
            while i < elems.len() {
                let a = elems[i];
                let mut j = 0;
                while j < elems.len() {
                    for p in [self.mul(a, elems[j]), self.mul(elems[j], a)] {
                        if !inset[p] {
                            inset[p] = true;
                            elems.push(p);
                        }
                    }
                    j += 1;
                }
                i += 1;
            }
            reached = inset;
            count = elems.len();
        }
        for &a in &gens {
            for x in 0..n {
                let xa = self.mul(x, a);
                for y in 0..n {
                    if self.mul(x, self.mul(a, y)) != self.mul(xa, y) {
                        return Err(Error::InvalidTable(TableViolation::Associativity {
                            a: x,
                            b: a,
                            c: y,
                        }));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_inverses(&self) -> Result<Vec<u32>> {
        let n = self.order;
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            let j = (0..n).find(|&j| self.mul(i, j) == 0).ok_or(Error::InvalidTable(
                TableViolation::NotLatin { row: i, col: 0 },
            ))?;
            if self.mul(j, i) != 0 {
                return Err(Error::InvalidTable(TableViolation::Associativity {
                    a: j,
                    b: i,
                    c: j,
                }));
            }
            inverse[i] = j as u32;
        }
        Ok(inverse)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// x^g = g^-1 * x * g.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// [a, b] = a^-1 * b^-1 * a * b.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let (mut base, mut e) = if e < 0 {
            (self.inv(a), e.unsigned_abs())
        } else {
            (a, e as u64)
        };
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// lcm of all element orders, computed once on first use.
    pub fn exponent(&self) -> u64 {
        *self.exponent.get_or_init(|| {
            (0..self.order).fold(1u64, |acc, a| lcm_u64(acc, self.element_order(a)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.order {
            return Err(Error::IndexOutOfRange {
                index: i,
                order: self.order,
            });
        }
        Ok(())
    }
}

/// Cyclic group of order n under addition mod n.
pub fn cyclic(n: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(Error::Parse("cyclic order must be positive".into()));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    Ok(Arc::new(FiniteGroup::from_op(n, |a, b| (a + b) % n).with_labels(labels)))
}

/// Dihedral group of order 2n: pairs (i, e) with
/// (i, e)(j, f) = (i + (-1)^e j mod n, e + f mod 2). Index = e*n + i.
pub fn dihedral(n: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(Error::Parse("dihedral parameter must be positive".into()));
    }
    let op = move |a: usize, b: usize| {
        let (i, e) = (a % n, a / n);
        let (j, f) = (b % n, b / n);
        let k = if e == 0 { (i + j) % n } else { (i + n - j % n) % n };
        (e + f) % 2 * n + k
    };
    let labels = (0..2 * n)
        .map(|a| {
            let (i, e) = (a % n, a / n);
            match (e, i) {
                (0, 0) => "e".to_string(),
                (0, i) => format!("r^{i}"),
                (_, 0) => "s".to_string(),
                (_, i) => format!("s*r^{i}"),
            }
        })
        .collect();
    Ok(Arc::new(FiniteGroup::from_op(2 * n, op).with_labels(labels)))
}

/// Direct product; pair (a, b) gets index a*|B| + b, so (0, 0) stays at 0.
pub fn product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Arc<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let op = |x: usize, y: usize| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        a.mul(xa, ya) * nb + b.mul(xb, yb)
    };
    let labels = (0..na * nb)
        .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
        .collect();
    Arc::new(FiniteGroup::from_op(na * nb, op).with_labels(labels))
}

fn permutations_lex(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

fn perm_parity_even(p: &[u8]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0usize;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

fn cycle_label(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Group from an explicit list of permutations, closed under composition.
/// Multiplication is "apply left, then right": (p*q)(x) = q(p(x)).
fn group_from_perms(perms: Vec<Vec<u8>>) -> Arc<FiniteGroup> {
    use std::collections::HashMap;
    let index: HashMap<Vec<u8>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let compose = |p: &[u8], q: &[u8]| -> Vec<u8> { p.iter().map(|&x| q[x as usize]).collect() };
    let n = perms.len();
    let op = |a: usize, b: usize| index[&compose(&perms[a], &perms[b])];
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    Arc::new(FiniteGroup::from_op(n, op).with_labels(labels))
}

/// Symmetric group on n points; elements are all permutations in lexicographic
/// one-line order, so the identity is element 0. Capped at n = 6: the table is
/// quadratic in the group order.
pub fn symmetric(n: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 || n > 6 {
        return Err(Error::Parse("sym:<n> requires 1 <= n <= 6".into()));
    }
    Ok(group_from_perms(permutations_lex(n)))
}

/// Alternating group on n points (even permutations, lexicographic order).
/// Capped at n = 7 for the same table-size reason as `symmetric`.
pub fn alternating(n: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 || n > 7 {
        return Err(Error::Parse("alt:<n> requires 1 <= n <= 7".into()));
    }
    let perms = permutations_lex(n)
        .into_iter()
        .filter(|p| perm_parity_even(p))
        .collect();
    Ok(group_from_perms(perms))
}

/// Reads the text Cayley-table format: line 1 is n, lines 2..n+1 hold n
/// space-separated indices. Element 0 must be the identity.
pub fn parse_cayley_table(text: &str) -> Result<Arc<FiniteGroup>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty Cayley-table file".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse("first line must be the group order".into()))?;
    if n == 0 {
        return Err(Error::Parse("group order must be positive".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing table row {}", i + 1)))?;
        let row: std::result::Result<Vec<usize>, _> =
            line.split_whitespace().map(|t| t.parse::<usize>()).collect();
        let row = row.map_err(|_| Error::Parse(format!("bad entry in table row {}", i + 1)))?;
        rows.push(row);
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after the table".into()));
    }
    FiniteGroup::from_table(rows).map(Arc::new)
}
