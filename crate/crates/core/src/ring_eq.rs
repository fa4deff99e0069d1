//! Generalized homogeneous systems over finite rings: the data model, the
//! homogeneity test via exponent matrices, unit-solution counting with
//! divisibility verdicts, and the prefix identity that powers the ring
//! theorem's twist argument.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::group::{FiniteGroup, Subgroup};
use crate::harness::partition_classes;
use crate::indexed::{Hom, IndexedPresentation};
use crate::linalg::integer_rank_and_kernel;
use crate::ring::{multiplicative_centralizer, FiniteRing, RingElem, UnitGroup};
use crate::theorems::{DivisibilityReport, TaskOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Const(RingElem),
    Power { unknown: usize, exponent: i64 },
}

/// A product of constants and unknown powers; at least one factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMonomial {
    pub factors: Vec<Factor>,
}

impl RingMonomial {
    /// Exponent sum per unknown, across repeated appearances.
    fn exponent_row(&self, unknowns: usize) -> Vec<i64> {
        let mut row = vec![0i64; unknowns];
        for f in &self.factors {
            if let Factor::Power { unknown, exponent } = f {
                row[*unknown] += exponent;
            }
        }
        row
    }
}

/// A sum of monomials equated to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingEquation {
    pub monomials: Vec<RingMonomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSystem {
    pub unknowns: usize,
    pub equations: Vec<RingEquation>,
}

impl RingSystem {
    pub fn new(unknowns: usize, equations: Vec<RingEquation>) -> Result<Self> {
        if unknowns == 0 {
            return Err(Error::Parse("a system needs at least one unknown".into()));
        }
        for eq in &equations {
            if eq.monomials.is_empty() {
                return Err(Error::Parse("an equation needs at least one monomial".into()));
            }
            for m in &eq.monomials {
                if m.factors.is_empty() {
                    return Err(Error::Parse("a monomial needs at least one factor".into()));
                }
                for f in &m.factors {
                    match f {
                        Factor::Power { unknown, exponent } => {
                            if *unknown >= unknowns {
                                return Err(Error::Parse(format!(
                                    "unknown x{unknown} out of range"
                                )));
                            }
                            if *exponent == 0 {
                                return Err(Error::Parse("zero exponent in monomial".into()));
                            }
                        }
                        Factor::Const(_) => {}
                    }
                }
            }
        }
        Ok(RingSystem { unknowns, equations })
    }

    /// All constants appearing in the system, in reading order.
    pub fn constants(&self) -> Vec<RingElem> {
        let mut out = Vec::new();
        for eq in &self.equations {
            for m in &eq.monomials {
                for f in &m.factors {
                    if let Factor::Const(c) = f {
                        if !out.contains(c) {
                            out.push(c.clone());
                        }
                    }
                }
            }
        }
        out
    }
}

/// Degree assignment witnessing homogeneity: nonzero, entry gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeAssignment(pub Vec<i64>);

/// The three matrix stages of the homogeneity test: per-equation exponent
/// matrices, the same with the first row subtracted from each row, and the
/// vertical stack of the differenced blocks.
#[derive(Debug, Clone, Serialize)]
pub struct HomogeneityMatrices {
    pub per_equation: Vec<Vec<Vec<i64>>>,
    pub differenced: Vec<Vec<Vec<i64>>>,
    pub stacked: Vec<Vec<i64>>,
}

pub fn homogeneity_matrices(system: &RingSystem) -> HomogeneityMatrices {
    let n = system.unknowns;
    let per_equation: Vec<Vec<Vec<i64>>> = system
        .equations
        .iter()
        .map(|eq| eq.monomials.iter().map(|m| m.exponent_row(n)).collect())
        .collect();
    let differenced: Vec<Vec<Vec<i64>>> = per_equation
        .iter()
        .map(|rows: &Vec<Vec<i64>>| {
            let first = rows[0].clone();
            rows.iter()
                .map(|r| r.iter().zip(&first).map(|(a, b)| a - b).collect())
                .collect()
        })
        .collect();
    let stacked = differenced.iter().flatten().cloned().collect();
    HomogeneityMatrices { per_equation, differenced, stacked }
}

/// The system is generalized homogeneous iff the stacked matrix has rank
/// below the unknown count; the witness degree vector is the deterministic
/// primitive kernel vector, re-validated against the per-equation
/// equal-degree property directly.
pub fn homogeneity_check(system: &RingSystem) -> Option<DegreeAssignment> {
    let matrices = homogeneity_matrices(system);
    let (rank, kernel) = integer_rank_and_kernel(&matrices.stacked, system.unknowns);
    if rank >= system.unknowns {
        return None;
    }
    let d = kernel.expect("rank < unknowns");
    for (eq, rows) in system.equations.iter().zip(&matrices.per_equation) {
        let degrees: Vec<i64> = rows
            .iter()
            .map(|row| row.iter().zip(&d).map(|(k, dv)| k * dv).sum())
            .collect();
        assert!(
            degrees.windows(2).all(|w| w[0] == w[1]),
            "kernel vector fails the equal-degree property on {eq:?}"
        );
    }
    Some(DegreeAssignment(d))
}

/// Per-equation total degree under an assignment (the common monomial
/// degree; equations of one system may have different degrees).
pub fn equation_degrees(system: &RingSystem, d: &DegreeAssignment) -> Vec<i64> {
    system
        .equations
        .iter()
        .map(|eq| {
            eq.monomials[0]
                .exponent_row(system.unknowns)
                .iter()
                .zip(&d.0)
                .map(|(k, dv)| k * dv)
                .sum()
        })
        .collect()
}

/// Sufficient criterion: sum over equations of (monomial count - 1) below
/// the unknown count forces homogeneity.
pub fn proposition_bound_holds(system: &RingSystem) -> bool {
    let slack: usize = system.equations.iter().map(|eq| eq.monomials.len() - 1).sum();
    slack < system.unknowns
}

/// Everything the homogeneity test produces, bundled for reporting: the
/// matrix stages, the stacked rank, the verdict, the witness degrees with
/// the per-equation total degrees they induce, and the sufficient bound.
#[derive(Debug, Clone, Serialize)]
pub struct HomogeneityOutcome {
    pub matrices: HomogeneityMatrices,
    pub rank: usize,
    pub homogeneous: bool,
    pub degrees: Option<Vec<i64>>,
    pub per_equation_degrees: Option<Vec<i64>>,
    pub proposition_bound_holds: bool,
}

pub fn homogeneity_outcome(system: &RingSystem) -> HomogeneityOutcome {
    let matrices = homogeneity_matrices(system);
    let (rank, _) = integer_rank_and_kernel(&matrices.stacked, system.unknowns);
    let assignment = homogeneity_check(system);
    let per_equation_degrees = assignment.as_ref().map(|d| equation_degrees(system, d));
    HomogeneityOutcome {
        matrices,
        rank,
        homogeneous: assignment.is_some(),
        degrees: assignment.map(|d| d.0),
        per_equation_degrees,
        proposition_bound_holds: proposition_bound_holds(system),
    }
}

/// Sum of monomial products under an assignment. Negative exponents demand
/// invertible values.
pub fn evaluate_equation(
    ring: &FiniteRing,
    eq: &RingEquation,
    assignment: &[RingElem],
) -> Result<RingElem> {
    let mut acc = ring.zero();
    for m in &eq.monomials {
        let mut prod = ring.one();
        for f in &m.factors {
            let value = match f {
                Factor::Const(c) => c.clone(),
                Factor::Power { unknown, exponent } => {
                    ring.pow(&assignment[*unknown], *exponent)?
                }
            };
            prod = ring.mul(&prod, &value);
        }
        acc = ring.add(&acc, &prod);
    }
    Ok(acc)
}

fn is_solution(ring: &FiniteRing, system: &RingSystem, assignment: &[RingElem]) -> Result<bool> {
    for eq in &system.equations {
        if !ring.is_zero(&evaluate_equation(ring, eq, assignment)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Counts solution tuples in G^n with the centralizer-intersection divisor.
/// G is a subgroup of the materialized unit group. The work splits on the
/// first coordinate; counts merge by addition, so the worker count never
/// changes the result.
pub fn count_unit_solutions(
    units: &UnitGroup,
    g: &Subgroup,
    system: &RingSystem,
    opts: &TaskOptions,
) -> Result<DivisibilityReport> {
    g.same_parent(units.group())?;
    let ring = units.ring();
    let n = system.unknowns;
    let degrees = homogeneity_check(system);
    let constants = system.constants();
    let h = multiplicative_centralizer(units, &constants, g)?;

    let candidates = g.elements();
    let solutions: Vec<Vec<usize>> = exec::flat_map_indexed(candidates.len(), |first| {
        let mut assignment: Vec<RingElem> = vec![ring.zero(); n];
        let mut tuple = vec![0usize; n];
        tuple[0] = candidates[first];
        assignment[0] = units.to_ring(candidates[first]);
        let mut local = Vec::new();
        search(
            ring,
            units,
            candidates,
            system,
            1,
            &mut tuple,
            &mut assignment,
            &mut local,
        );
        return local;

        #[allow(clippy::too_many_arguments)]
        fn search(
            ring: &FiniteRing,
            units: &UnitGroup,
            candidates: &[usize],
            system: &RingSystem,
            depth: usize,
            tuple: &mut Vec<usize>,
            assignment: &mut Vec<RingElem>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if depth == system.unknowns {
                if is_solution(ring, system, assignment).unwrap_or(false) {
                    out.push(tuple.clone());
                }
                return;
            }
            for &c in candidates {
                tuple[depth] = c;
                assignment[depth] = units.to_ring(c);
                search(ring, units, candidates, system, depth + 1, tuple, assignment, out);
            }
        }
    });

    let mut report = DivisibilityReport::new(
        solutions.len() as u64,
        h.order() as u64,
        "|C(coefficients) ∩ G|",
        degrees.is_some(),
    );
    if opts.harness {
        if let Some(d) = degrees {
            let names = (0..n).map(|i| format!("x{i}")).collect();
            let p = IndexedPresentation::new(names, Vec::new(), Vec::new(), Some(d.0))?;
            let homs: Vec<Hom> = solutions
                .iter()
                .map(|s| Hom::new(Arc::clone(&p), Arc::clone(units.group()), s.clone()))
                .collect::<Result<_>>()?;
            report.harness = Some(partition_classes(&homs, &h)?);
        }
    }
    Ok(report)
}

/// Verifies the prefix identity for u(t) = b0 t^(n1) b1 ... t^(nl) bl:
/// substituting t = a h with h whose a-conjugates commute with every b
/// multiplies u(a) on the left by an explicit prefix of conjugates of h,
/// with the shape of the prefix decided by the sign of k = sum of the
/// exponents. Pure monoid computation, shared by the group and ring faces.
fn lemma1_core<E: Clone + PartialEq>(
    one: E,
    mul: &dyn Fn(&E, &E) -> E,
    inv: &dyn Fn(&E) -> Option<E>,
    exponents: &[i64],
    bs: &[E],
    a: &E,
    h: &E,
) -> Result<bool> {
    if bs.len() != exponents.len() + 1 {
        return Err(Error::Parse("need one more b than exponents".into()));
    }
    let a_inv = inv(a).ok_or(Error::HypothesisViolated)?;
    let h_inv = inv(h).ok_or(Error::HypothesisViolated)?;

    // order of a
    let mut ord = 1u64;
    {
        let mut x = a.clone();
        while x != one {
            x = mul(&x, a);
            ord += 1;
        }
    }
    // hypothesis: a^-s h a^s commutes with every b, all s mod ord(a)
    let mut conj = h.clone();
    for _ in 0..ord {
        for b in bs {
            if mul(&conj, b) != mul(b, &conj) {
                return Err(Error::HypothesisViolated);
            }
        }
        conj = mul(&mul(&a_inv, &conj), a);
    }

    let pow = |x: &E, e: i64| -> E {
        let (base, reps) = if e < 0 {
            (inv(x).expect("invertible base"), e.unsigned_abs())
        } else {
            (x.clone(), e as u64)
        };
        let mut acc = one.clone();
        for _ in 0..reps {
            acc = mul(&acc, &base);
        }
        acc
    };
    let u = |x: &E| -> E {
        let mut acc = bs[0].clone();
        for (e, b) in exponents.iter().zip(&bs[1..]) {
            acc = mul(&mul(&acc, &pow(x, *e)), b);
        }
        acc
    };

    let k: i64 = exponents.iter().sum();
    let prefix = if k > 0 {
        // h^(a^-1) h^(a^-2) ... h^(a^-k), where h^(a^-j) = a^j h a^-j
        let mut acc = one.clone();
        let mut conj = h.clone();
        for _ in 0..k {
            conj = mul(&mul(a, &conj), &a_inv);
            acc = mul(&acc, &conj);
        }
        acc
    } else if k < 0 {
        // h^-1 h^-a ... h^(-a^(-1-k)), where h^(-a^j) = a^-j h^-1 a^j
        let mut acc = one.clone();
        let mut conj = h_inv.clone();
        for _ in 0..(-k) {
            acc = mul(&acc, &conj);
            conj = mul(&mul(&a_inv, &conj), a);
        }
        acc
    } else {
        one.clone()
    };

    let lhs = u(&mul(a, h));
    let rhs = mul(&prefix, &u(a));
    Ok(lhs == rhs)
}

/// Group face of the prefix identity.
pub fn lemma1_verify_group(
    g: &FiniteGroup,
    exponents: &[i64],
    bs: &[usize],
    a: usize,
    h: usize,
) -> Result<bool> {
    lemma1_core(
        0usize,
        &|x, y| g.mul(*x, *y),
        &|x| Some(g.inv(*x)),
        exponents,
        bs,
        &a,
        &h,
    )
}

/// Ring (multiplicative monoid) face of the prefix identity.
pub fn lemma1_verify_ring(
    ring: &FiniteRing,
    exponents: &[i64],
    bs: &[RingElem],
    a: &RingElem,
    h: &RingElem,
) -> Result<bool> {
    lemma1_core(
        ring.one(),
        &|x, y| ring.mul(x, y),
        &|x| ring.try_inverse(x),
        exponents,
        bs,
        a,
        h,
    )
}

pub mod parse {
    //! Equation text syntax: monomials are `*`-separated factor lists;
    //! factors are `x<i>`, `x<i>^<k>`, declared constant names, or ring
    //! element literals; monomials join with `+`/`-` and an optional `= 0`
    //! tail closes the equation.

    use super::*;
    use std::collections::BTreeMap;

    pub fn parse_equation(
        ring: &FiniteRing,
        unknowns: usize,
        constants: &BTreeMap<String, RingElem>,
        text: &str,
    ) -> Result<RingEquation> {
        let body = match split_equals(text)? {
            (lhs, Some(rhs)) => {
                if rhs.trim() != "0" {
                    return Err(Error::Parse("right-hand side must be 0".into()));
                }
                lhs
            }
            (lhs, None) => lhs,
        };
        let mut monomials = Vec::new();
        for (sign, part) in split_monomials(body)? {
            let mut factors = Vec::new();
            if sign < 0 {
                factors.push(Factor::Const(ring.int_embed(-1)));
            }
            for token in split_factors(part) {
                factors.push(parse_factor(ring, unknowns, constants, token.trim())?);
            }
            if factors.is_empty() || (sign < 0 && factors.len() == 1) {
                return Err(Error::Parse("empty monomial".into()));
            }
            monomials.push(RingMonomial { factors });
        }
        if monomials.is_empty() {
            return Err(Error::Parse("an equation needs at least one monomial".into()));
        }
        Ok(RingEquation { monomials })
    }

    pub fn parse_system(
        ring: &FiniteRing,
        unknowns: usize,
        constants: &BTreeMap<String, RingElem>,
        texts: &[String],
    ) -> Result<RingSystem> {
        let equations = texts
            .iter()
            .map(|t| parse_equation(ring, unknowns, constants, t))
            .collect::<Result<Vec<_>>>()?;
        RingSystem::new(unknowns, equations)
    }

    pub fn display_equation(ring: &FiniteRing, eq: &RingEquation) -> String {
        let monomials: Vec<String> = eq
            .monomials
            .iter()
            .map(|m| {
                m.factors
                    .iter()
                    .map(|f| match f {
                        Factor::Const(c) => ring.format_elem(c),
                        Factor::Power { unknown, exponent } => {
                            if *exponent == 1 {
                                format!("x{unknown}")
                            } else {
                                format!("x{unknown}^{exponent}")
                            }
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        format!("{} = 0", monomials.join(" + "))
    }

    fn split_equals(text: &str) -> Result<(&str, Option<&str>)> {
        let mut depth = 0i32;
        for (i, c) in text.char_indices() {
            match c {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                '=' if depth == 0 => {
                    return Ok((&text[..i], Some(&text[i + 1..])));
                }
                _ => {}
            }
        }
        Ok((text, None))
    }

    /// Splits on top-level `+`/`-`. A sign right after `^` or `*` (or at the
    /// start of a monomial) belongs to the token, not the splitter.
    fn split_monomials(text: &str) -> Result<Vec<(i32, &str)>> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut sign = 1i32;
        let mut start = 0usize;
        let mut prev_meaningful: Option<char> = None;
        for (i, c) in text.char_indices() {
            match c {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                '+' | '-' if depth == 0 => {
                    let splits = !matches!(prev_meaningful, None | Some('^') | Some('*'));
                    if splits {
                        let part = text[start..i].trim();
                        if part.is_empty() {
                            return Err(Error::Parse("empty monomial".into()));
                        }
                        out.push((sign, part));
                        sign = if c == '-' { -1 } else { 1 };
                        start = i + 1;
                        prev_meaningful = None;
                        continue;
                    } else if prev_meaningful.is_none() && text[start..i].trim().is_empty() {
                        // leading sign of the first monomial
                        if c == '-' {
                            sign = -sign;
                        }
                        start = i + 1;
                        continue;
                    }
                }
                _ => {}
            }
            if !c.is_whitespace() {
                prev_meaningful = Some(c);
            }
        }
        let part = text[start..].trim();
        if part.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        out.push((sign, part));
        Ok(out)
    }

    fn split_factors(text: &str) -> Vec<&str> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = 0usize;
        for (i, c) in text.char_indices() {
            match c {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                '*' if depth == 0 => {
                    out.push(&text[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.push(&text[start..]);
        out
    }

    fn parse_factor(
        ring: &FiniteRing,
        unknowns: usize,
        constants: &BTreeMap<String, RingElem>,
        token: &str,
    ) -> Result<Factor> {
        if token.is_empty() {
            return Err(Error::Parse("empty factor".into()));
        }
        if let Some(rest) = token.strip_prefix('x') {
            let (idx_text, exp_text) = match rest.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (rest, None),
            };
            if let Ok(unknown) = idx_text.parse::<usize>() {
                if unknown >= unknowns {
                    return Err(Error::Parse(format!("unknown x{unknown} out of range")));
                }
                let exponent: i64 = match exp_text {
                    Some(e) => e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?,
                    None => 1,
                };
                if exponent == 0 {
                    return Err(Error::Parse(format!("zero exponent in `{token}`")));
                }
                return Ok(Factor::Power { unknown, exponent });
            }
        }
        if let Some(c) = constants.get(token) {
            return Ok(Factor::Const(c.clone()));
        }
        ring.parse_elem(token).map(Factor::Const).map_err(|_| {
            Error::Parse(format!("`{token}` is neither an unknown, a constant, nor a literal"))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{units_group, RingSpec};
    use std::collections::BTreeMap;

    const BOUND: u64 = 4096;

    fn zmod(n: u64) -> Arc<FiniteRing> {
        FiniteRing::new(RingSpec::Zmod(n), BOUND).unwrap()
    }

    fn pythagorean(ring: &FiniteRing) -> RingSystem {
        parse::parse_system(
            ring,
            3,
            &BTreeMap::new(),
            &["x0^2 + x1^2 - x2^2 = 0".to_string()],
        )
        .unwrap()
    }

    fn worked_system(ring: &FiniteRing, c: u64, d: u64) -> RingSystem {
        let mut constants = BTreeMap::new();
        constants.insert("c".to_string(), vec![c]);
        constants.insert("d".to_string(), vec![d]);
        parse::parse_system(
            ring,
            2,
            &constants,
            &[
                "x0*d*x1*x0*d*x1 - x1*x0^2 + x0*x1^2*c*x1^-100*x0 = 0".to_string(),
                "x0*x1 - x1*x0 = 0".to_string(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_matrices() {
        let ring = zmod(101);
        let system = worked_system(&ring, 3, 5);
        let m = homogeneity_matrices(&system);
        assert_eq!(m.per_equation[0], vec![vec![2, 2], vec![2, 1], vec![2, -98]]);
        assert_eq!(m.per_equation[1], vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(
            m.differenced[0],
            vec![vec![0, 0], vec![0, -1], vec![0, -100]]
        );
        assert_eq!(m.differenced[1], vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(
            m.stacked,
            vec![vec![0, 0], vec![0, -1], vec![0, -100], vec![0, 0], vec![0, 0]]
        );
        let (rank, _) = integer_rank_and_kernel(&m.stacked, 2);
        assert_eq!(rank, 1);
        let d = homogeneity_check(&system).expect("homogeneous");
        assert_eq!(d.0, vec![1, 0]);
    }

    #[test]
    fn worked_example_round_trips() {
        let ring = zmod(101);
        let system = worked_system(&ring, 3, 5);
        let mut constants = BTreeMap::new();
        constants.insert("c".to_string(), vec![3u64]);
        constants.insert("d".to_string(), vec![5u64]);
        let texts: Vec<String> = system
            .equations
            .iter()
            .map(|eq| parse::display_equation(&ring, eq))
            .collect();
        let reparsed = parse::parse_system(&ring, 2, &constants, &texts).unwrap();
        assert_eq!(system, reparsed);
    }

    #[test]
    fn single_monomial_gives_zero_block() {
        let ring = zmod(5);
        let system = parse::parse_system(
            &ring,
            2,
            &BTreeMap::new(),
            &["x0^3*x1 = 0".to_string()],
        )
        .unwrap();
        let m = homogeneity_matrices(&system);
        assert_eq!(m.differenced[0], vec![vec![0, 0]]);
        assert!(homogeneity_check(&system).is_some());
    }

    #[test]
    fn commutator_equation_gives_zero_block() {
        let ring = zmod(5);
        let system = parse::parse_system(
            &ring,
            2,
            &BTreeMap::new(),
            &["x0*x1 - x1*x0 = 0".to_string()],
        )
        .unwrap();
        let m = homogeneity_matrices(&system);
        assert_eq!(m.differenced[0], vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn inhomogeneous_detected() {
        let ring = zmod(5);
        let system = parse::parse_system(
            &ring,
            1,
            &BTreeMap::new(),
            &["x0^2 + x0 = 0".to_string()],
        )
        .unwrap();
        assert!(homogeneity_check(&system).is_none());
        assert!(!proposition_bound_holds(&system));
    }

    #[test]
    fn pythagorean_degrees() {
        let ring = zmod(7);
        let system = pythagorean(&ring);
        let d = homogeneity_check(&system).expect("homogeneous");
        assert_eq!(d.0, vec![1, 1, 1]);
        assert!(proposition_bound_holds(&system)); // 2 < 3
        assert_eq!(equation_degrees(&system, &d), vec![2]);
    }

    #[test]
    fn proposition_bound_on_worked_example() {
        // slack 3 >= 2 unknowns: the bound fails, homogeneity still holds
        let ring = zmod(101);
        let system = worked_system(&ring, 3, 5);
        assert!(!proposition_bound_holds(&system));
        assert!(homogeneity_check(&system).is_some());
    }

    #[test]
    fn evaluate_arithmetic() {
        let ring = zmod(7);
        let system = pythagorean(&ring);
        let eq = &system.equations[0];
        // 1 + 4 - 4 = 1
        let v = evaluate_equation(&ring, eq, &[vec![1], vec![2], vec![2]]).unwrap();
        assert_eq!(v, vec![1]);
        // 3^2 + 2^2 - 6^2 = 9 + 4 - 36 = -23 = 5 mod 7
        let v = evaluate_equation(&ring, eq, &[vec![3], vec![2], vec![6]]).unwrap();
        assert_eq!(v, vec![((9 + 4 - 36i64).rem_euclid(7)) as u64]);
    }

    #[test]
    fn evaluate_negative_exponent_on_non_unit() {
        let ring = zmod(6);
        let system = parse::parse_system(
            &ring,
            1,
            &BTreeMap::new(),
            &["x0^-1 = 0".to_string()],
        )
        .unwrap();
        assert!(matches!(
            evaluate_equation(&ring, &system.equations[0], &[vec![2]]),
            Err(Error::NonInvertibleBase)
        ));
    }

    #[test]
    fn pythagorean_counts() {
        // zmod:5 -> 0 of 4; zmod:7 -> 24 of 6; zmod:2 -> 0 of 1
        let opts = TaskOptions::default();
        for (n, expected_count, expected_divisor) in [(5u64, 0u64, 4u64), (7, 24, 6), (2, 0, 1)] {
            let ring = zmod(n);
            let units = units_group(&ring).unwrap();
            let whole = Subgroup::whole(units.group());
            let system = pythagorean(&ring);
            let report = count_unit_solutions(&units, &whole, &system, &opts).unwrap();
            assert_eq!(report.count, expected_count, "zmod:{n}");
            assert_eq!(report.divisor, expected_divisor, "zmod:{n}");
            assert!(report.divisible);
            assert!(report.theorem_applicable);
        }
        // independent brute-force oracle for zmod:7 with plain u64 arithmetic
        let mut oracle = 0u64;
        for x in 1..7u64 {
            for y in 1..7u64 {
                for z in 1..7u64 {
                    if (x * x + y * y) % 7 == (z * z) % 7 {
                        oracle += 1;
                    }
                }
            }
        }
        assert_eq!(oracle, 24);
    }

    #[test]
    fn scaling_by_central_unit_preserves_solutions() {
        let ring = zmod(7);
        let units = units_group(&ring).unwrap();
        let whole = Subgroup::whole(units.group());
        let system = pythagorean(&ring);
        // multiply every monomial by the central unit 3
        let scaled = RingSystem::new(
            3,
            vec![RingEquation {
                monomials: system.equations[0]
                    .monomials
                    .iter()
                    .map(|m| {
                        let mut factors = vec![Factor::Const(vec![3])];
                        factors.extend(m.factors.clone());
                        RingMonomial { factors }
                    })
                    .collect(),
            }],
        )
        .unwrap();
        let opts = TaskOptions::default();
        let a = count_unit_solutions(&units, &whole, &system, &opts).unwrap();
        let b = count_unit_solutions(&units, &whole, &scaled, &opts).unwrap();
        assert_eq!(a.count, b.count);
    }

    #[test]
    fn power_sum_2018_over_zmod13() {
        let ring = zmod(13);
        let units = units_group(&ring).unwrap();
        let whole = Subgroup::whole(units.group());
        let system = parse::parse_system(
            &ring,
            3,
            &BTreeMap::new(),
            &["x0^2018 + x1^2018 + x2^2018 = 0".to_string()],
        )
        .unwrap();
        let report =
            count_unit_solutions(&units, &whole, &system, &TaskOptions::default()).unwrap();
        assert_eq!(report.divisor, 12);
        assert!(report.divisible);
        assert!(report.theorem_applicable);
        // oracle with plain modular arithmetic and literal exponentiation
        let mut oracle = 0u64;
        for x in 1..13u64 {
            for y in 1..13u64 {
                for z in 1..13u64 {
                    let p = |a: u64| -> u64 {
                        let mut acc = 1u64;
                        for _ in 0..2018 {
                            acc = acc * a % 13;
                        }
                        acc
                    };
                    if (p(x) + p(y) + p(z)) % 13 == 0 {
                        oracle += 1;
                    }
                }
            }
        }
        assert_eq!(report.count, oracle);
    }

    #[test]
    fn lemma1_commutative_rings() {
        let ring = zmod(9);
        for a in [1u64, 2, 4, 5, 7, 8] {
            for h in [1u64, 2, 4, 5, 7, 8] {
                let ok = lemma1_verify_ring(
                    &ring,
                    &[2, -1, 3],
                    &[vec![3], vec![4], vec![0], vec![7]],
                    &vec![a],
                    &vec![h],
                )
                .unwrap();
                assert!(ok);
            }
        }
    }

    #[test]
    fn lemma1_zero_exponent_sum() {
        // k = 0: u(ah) = u(a) whenever the hypothesis holds
        let ring = zmod(12);
        let ok = lemma1_verify_ring(
            &ring,
            &[1, -1],
            &[vec![5], vec![7], vec![2]],
            &vec![5],
            &vec![7],
        )
        .unwrap();
        assert!(ok);
    }

    #[test]
    fn lemma1_matrix_units_squared() {
        // u(t) = t^2 with identity b's over the units of mat:2:zmod:2
        let ring = FiniteRing::new(RingSpec::Mat { dim: 2, modulus: 2 }, BOUND).unwrap();
        let one = ring.one();
        let units: Vec<RingElem> = ring.elements().filter(|e| ring.is_unit(e)).collect();
        for a in &units {
            for h in &units {
                let ok = lemma1_verify_ring(
                    &ring,
                    &[2],
                    &[one.clone(), one.clone()],
                    a,
                    h,
                )
                .unwrap();
                assert!(ok, "a={a:?} h={h:?}");
                // the k = 2 prefix shape itself
                let ah = ring.mul(a, h);
                let lhs = ring.mul(&ah, &ah);
                let a_inv = ring.try_inverse(a).unwrap();
                let c1 = ring.mul(&ring.mul(a, h), &a_inv);
                let a2 = ring.mul(a, a);
                let a2_inv = ring.try_inverse(&a2).unwrap();
                let c2 = ring.mul(&ring.mul(&a2, h), &a2_inv);
                let rhs = ring.mul(&ring.mul(&c1, &c2), &a2);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lemma1_group_face() {
        let g = crate::group::symmetric(3).unwrap();
        // b's trivial: hypothesis always holds
        for a in 0..6 {
            for h in 0..6 {
                for shape in [vec![1i64], vec![2], vec![-1], vec![1, -1], vec![3, -1, 2]] {
                    let bs = vec![0usize; shape.len() + 1];
                    assert!(lemma1_verify_group(&g, &shape, &bs, a, h).unwrap());
                }
            }
        }
    }

    #[test]
    fn lemma1_hypothesis_violation_detected() {
        let g = crate::group::symmetric(3).unwrap();
        // b = (0 1 2) and h = (0 1): h does not commute with b
        let r = lemma1_verify_group(&g, &[1], &[3, 3], 0, 2);
        assert!(matches!(r, Err(Error::HypothesisViolated)));
    }

    #[test]
    fn degenerate_equation_rejected() {
        let ring = zmod(5);
        assert!(parse::parse_system(&ring, 1, &BTreeMap::new(), &["".to_string()]).is_err());
        assert!(RingSystem::new(1, vec![RingEquation { monomials: vec![] }]).is_err());
    }
}
