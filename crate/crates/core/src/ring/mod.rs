//! Finite associative unital rings: modular, matrix over Z/n, and products,
//! with unit groups materialized as Cayley-table groups so the whole group
//! toolbox applies to them unchanged.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arith::mod_inverse;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Zmod(u64),
    Mat { dim: usize, modulus: u64 },
    Prod(Box<RingSpec>, Box<RingSpec>),
}

impl RingSpec {
    fn slot_count(&self) -> usize {
        match self {
            RingSpec::Zmod(_) => 1,
            RingSpec::Mat { dim, .. } => dim * dim,
            RingSpec::Prod(a, b) => a.slot_count() + b.slot_count(),
        }
    }

    fn fill_radices(&self, out: &mut Vec<u64>) {
        match self {
            RingSpec::Zmod(n) => out.push(*n),
            RingSpec::Mat { dim, modulus } => out.extend(std::iter::repeat(*modulus).take(dim * dim)),
            RingSpec::Prod(a, b) => {
                a.fill_radices(out);
                b.fill_radices(out);
            }
        }
    }

    pub fn display(&self) -> String {
        match self {
            RingSpec::Zmod(n) => format!("zmod:{n}"),
            RingSpec::Mat { dim, modulus } => format!("mat:{dim}:zmod:{modulus}"),
            RingSpec::Prod(a, b) => format!("prod:{};{}", a.display(), b.display()),
        }
    }
}

/// Elements are fixed-length residue vectors; slot moduli come from the spec.
pub type RingElem = Vec<u64>;

pub struct FiniteRing {
    spec: RingSpec,
    radices: Vec<u64>,
    cardinality: u64,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRing")
            .field("spec", &self.spec.display())
            .field("cardinality", &self.cardinality)
            .finish()
    }
}

impl FiniteRing {
    pub fn new(spec: RingSpec, cardinality_bound: u64) -> Result<Arc<Self>> {
        fn check(spec: &RingSpec) -> Result<()> {
            match spec {
                RingSpec::Zmod(n) => {
                    if *n == 0 {
                        return Err(Error::Parse("zmod modulus must be positive".into()));
                    }
                }
                RingSpec::Mat { dim, modulus } => {
                    if *dim == 0 || *modulus == 0 {
                        return Err(Error::Parse(
                            "matrix dimension and modulus must be positive".into(),
                        ));
                    }
                }
                RingSpec::Prod(a, b) => {
                    check(a)?;
                    check(b)?;
                }
            }
            Ok(())
        }
        check(&spec)?;
        let mut radices = Vec::with_capacity(spec.slot_count());
        spec.fill_radices(&mut radices);
        let mut cardinality: u128 = 1;
        for &r in &radices {
            cardinality = cardinality.saturating_mul(r as u128);
            if cardinality > cardinality_bound as u128 {
                return Err(Error::CardinalityBoundExceeded {
                    cardinality: cardinality.min(u64::MAX as u128) as u64,
                    bound: cardinality_bound,
                });
            }
        }
        Ok(Arc::new(FiniteRing { spec, radices, cardinality: cardinality as u64 }))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    pub fn slot_count(&self) -> usize {
        self.radices.len()
    }

    pub fn zero(&self) -> RingElem {
        vec![0; self.radices.len()]
    }

    pub fn one(&self) -> RingElem {
        let mut out = self.zero();
        fill_one(&self.spec, &mut out, 0);
        out
    }

    /// k * 1 for an integer k, reduced componentwise.
    pub fn int_embed(&self, k: i64) -> RingElem {
        let one = self.one();
        let mut out = self.zero();
        for (i, (&o, &r)) in one.iter().zip(&self.radices).enumerate() {
            out[i] = (o as i128 * k as i128).rem_euclid(r as i128) as u64;
        }
        out
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        a.iter()
            .zip(b)
            .zip(&self.radices)
            .map(|((&x, &y), &r)| (x + y) % r)
            .collect()
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        a.iter()
            .zip(&self.radices)
            .map(|(&x, &r)| if x == 0 { 0 } else { r - x })
            .collect()
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut out = self.zero();
        mul_rec(&self.spec, a, b, &mut out, 0);
        out
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Two-sided inverse, if any: extended gcd for modular slots, the
    /// determinant-unit test plus the adjugate for matrix blocks, and
    /// componentwise descent for products.
    pub fn try_inverse(&self, a: &RingElem) -> Option<RingElem> {
        let mut out = self.zero();
        if inverse_rec(&self.spec, a, &mut out, 0) {
            Some(out)
        } else {
            None
        }
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        self.try_inverse(a).is_some()
    }

    /// Multiplicative order of a unit.
    pub fn unit_order(&self, a: &RingElem) -> u64 {
        let one = self.one();
        let mut x = a.clone();
        let mut k = 1u64;
        while x != one {
            x = self.mul(&x, a);
            k += 1;
            debug_assert!(k <= self.cardinality, "element is not a unit");
        }
        k
    }

    /// a^e. Negative exponents require a unit base; unit bases reduce the
    /// exponent modulo the multiplicative order before squaring.
    pub fn pow(&self, a: &RingElem, e: i64) -> Result<RingElem> {
        let (base, mut exp) = if e < 0 {
            let inv = self.try_inverse(a).ok_or(Error::NonInvertibleBase)?;
            (inv, e.unsigned_abs())
        } else {
            (a.clone(), e as u64)
        };
        if exp > self.cardinality && self.is_unit(&base) {
            exp %= self.unit_order(&base);
        }
        let mut acc = self.one();
        let mut base = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Index of an element in the canonical enumeration (lexicographic over
    /// the residue vector).
    pub fn index_of(&self, a: &RingElem) -> u64 {
        let mut idx = 0u64;
        for (&v, &r) in a.iter().zip(&self.radices) {
            idx = idx * r + v;
        }
        idx
    }

    pub fn elem_at(&self, index: u64) -> RingElem {
        let mut idx = index;
        let mut out = self.zero();
        for i in (0..self.radices.len()).rev() {
            out[i] = idx % self.radices[i];
            idx /= self.radices[i];
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.cardinality).map(|i| self.elem_at(i))
    }

    /// Element literal: an integer for modular rings, a row-major nested
    /// array for matrix rings, a parenthesized pair for products.
    pub fn format_elem(&self, a: &RingElem) -> String {
        format_rec(&self.spec, a, 0)
    }

    pub fn parse_elem(&self, text: &str) -> Result<RingElem> {
        let mut out = self.zero();
        let rest = parse_rec(&self.spec, text.trim(), &mut out, 0)?;
        if !rest.trim().is_empty() {
            return Err(Error::Parse(format!("trailing input in ring literal `{text}`")));
        }
        Ok(out)
    }
}

fn fill_one(spec: &RingSpec, out: &mut [u64], offset: usize) {
    match spec {
        RingSpec::Zmod(n) => out[offset] = 1 % n,
        RingSpec::Mat { dim, modulus } => {
            for i in 0..*dim {
                out[offset + i * dim + i] = 1 % modulus;
            }
        }
        RingSpec::Prod(a, b) => {
            fill_one(a, out, offset);
            fill_one(b, out, offset + a.slot_count());
        }
    }
}

fn mul_rec(spec: &RingSpec, a: &[u64], b: &[u64], out: &mut [u64], offset: usize) {
    match spec {
        RingSpec::Zmod(n) => out[offset] = a[offset] * b[offset] % n,
        RingSpec::Mat { dim, modulus } => {
            let d = *dim;
            for i in 0..d {
                for j in 0..d {
                    let mut acc = 0u64;
                    for k in 0..d {
                        acc = (acc + a[offset + i * d + k] * b[offset + k * d + j]) % modulus;
                    }
                    out[offset + i * d + j] = acc;
                }
            }
        }
        RingSpec::Prod(x, y) => {
            mul_rec(x, a, b, out, offset);
            mul_rec(y, a, b, out, offset + x.slot_count());
        }
    }
}

fn det_mod(m: &Vec<Vec<u64>>, modulus: u64) -> u64 {
    let d = m.len();
    if d == 0 {
        return 1 % modulus;
    }
    if d == 1 {
        return m[0][0] % modulus;
    }
    let mut acc: i128 = 0;
    for j in 0..d {
        let minor: Vec<Vec<u64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign: i128 = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * m[0][j] as i128 * det_mod(&minor, modulus) as i128;
    }
    acc.rem_euclid(modulus as i128) as u64
}

fn inverse_rec(spec: &RingSpec, a: &[u64], out: &mut [u64], offset: usize) -> bool {
    match spec {
        RingSpec::Zmod(n) => {
            if *n == 1 {
                out[offset] = 0;
                return true;
            }
            match mod_inverse(a[offset], *n) {
                Some(inv) => {
                    out[offset] = inv;
                    true
                }
                None => false,
            }
        }
        RingSpec::Mat { dim, modulus } => {
            let d = *dim;
            let n = *modulus;
            let m: Vec<Vec<u64>> =
                (0..d).map(|i| (0..d).map(|j| a[offset + i * d + j]).collect()).collect();
            let det = det_mod(&m, n);
            let Some(det_inv) = mod_inverse(det, n) else {
                return false;
            };
            // adjugate: adj[j][i] = (-1)^(i+j) det(minor(i, j))
            for i in 0..d {
                for j in 0..d {
                    let minor: Vec<Vec<u64>> = (0..d)
                        .filter(|&r| r != i)
                        .map(|r| (0..d).filter(|&c| c != j).map(|c| m[r][c]).collect())
                        .collect();
                    let sign: i128 = if (i + j) % 2 == 0 { 1 } else { -1 };
                    let cof = (sign * det_mod(&minor, n) as i128).rem_euclid(n as i128) as u64;
                    out[offset + j * d + i] = cof * det_inv % n;
                }
            }
            true
        }
        RingSpec::Prod(x, y) => {
            inverse_rec(x, a, out, offset) && inverse_rec(y, a, out, offset + x.slot_count())
        }
    }
}

fn format_rec(spec: &RingSpec, a: &[u64], offset: usize) -> String {
    match spec {
        RingSpec::Zmod(_) => a[offset].to_string(),
        RingSpec::Mat { dim, .. } => {
            let d = *dim;
            let rows: Vec<String> = (0..d)
                .map(|i| {
                    let cols: Vec<String> =
                        (0..d).map(|j| a[offset + i * d + j].to_string()).collect();
                    format!("[{}]", cols.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        }
        RingSpec::Prod(x, y) => {
            format!(
                "({},{})",
                format_rec(x, a, offset),
                format_rec(y, a, offset + x.slot_count())
            )
        }
    }
}

/// Parses one component literal, returning the unparsed remainder.
fn parse_rec<'a>(
    spec: &RingSpec,
    text: &'a str,
    out: &mut [u64],
    offset: usize,
) -> Result<&'a str> {
    let text = text.trim_start();
    match spec {
        RingSpec::Zmod(n) => {
            let end = text
                .char_indices()
                .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
                .map(|(i, c)| i + c.len_utf8())
                .last()
                .unwrap_or(0);
            let (num, rest) = text.split_at(end);
            let value: i64 = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer literal near `{text}`")))?;
            out[offset] = value.rem_euclid(*n as i64) as u64;
            Ok(rest)
        }
        RingSpec::Mat { dim, modulus } => {
            let d = *dim;
            let mut rest = expect(text, '[')?;
            for i in 0..d {
                rest = expect(rest, '[')?;
                for j in 0..d {
                    let sub = RingSpec::Zmod(*modulus);
                    let mut cell = [0u64];
                    rest = parse_rec(&sub, rest, &mut cell, 0)?;
                    out[offset + i * d + j] = cell[0];
                    if j + 1 < d {
                        rest = expect(rest, ',')?;
                    }
                }
                rest = expect(rest, ']')?;
                if i + 1 < d {
                    rest = expect(rest, ',')?;
                }
            }
            expect(rest, ']')
        }
        RingSpec::Prod(x, y) => {
            let rest = expect(text, '(')?;
            let rest = parse_rec(x, rest, out, offset)?;
            let rest = expect(rest, ',')?;
            let rest = parse_rec(y, rest, out, offset + x.slot_count())?;
            expect(rest, ')')
        }
    }
}

fn expect(text: &str, c: char) -> Result<&str> {
    let t = text.trim_start();
    match t.strip_prefix(c) {
        Some(rest) => Ok(rest),
        None => Err(Error::Parse(format!("expected `{c}` near `{t}`"))),
    }
}

/// The group of invertible elements, materialized as a Cayley-table group.
/// Group index 0 is the ring's one; the rest follow in ascending ring index.
pub struct UnitGroup {
    ring: Arc<FiniteRing>,
    group: Arc<FiniteGroup>,
    to_ring: Vec<u64>,
    from_ring: HashMap<u64, usize>,
}

impl std::fmt::Debug for UnitGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UnitGroup")
            .field("ring", &self.ring.spec().display())
            .field("order", &self.group.order())
            .finish()
    }
}

impl UnitGroup {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Ring element behind a group index.
    pub fn to_ring(&self, index: usize) -> RingElem {
        self.ring.elem_at(self.to_ring[index])
    }

    /// Group index of a ring element, if it is a unit.
    pub fn from_ring(&self, elem: &RingElem) -> Option<usize> {
        self.from_ring.get(&self.ring.index_of(elem)).copied()
    }
}

pub fn units_group(ring: &Arc<FiniteRing>) -> Result<UnitGroup> {
    let mut to_ring: Vec<u64> = Vec::new();
    let one_idx = ring.index_of(&ring.one());
    to_ring.push(one_idx);
    for i in 0..ring.cardinality() {
        if i != one_idx && ring.is_unit(&ring.elem_at(i)) {
            to_ring.push(i);
        }
    }
    let from_ring: HashMap<u64, usize> =
        to_ring.iter().enumerate().map(|(g, &r)| (r, g)).collect();
    let elems: Vec<RingElem> = to_ring.iter().map(|&i| ring.elem_at(i)).collect();
    let labels: Vec<String> = elems.iter().map(|e| ring.format_elem(e)).collect();
    let op = |a: usize, b: usize| {
        let p = ring.mul(&elems[a], &elems[b]);
        from_ring[&ring.index_of(&p)]
    };
    let group = Arc::new(FiniteGroup::from_op(to_ring.len(), op).with_labels(labels));
    Ok(UnitGroup {
        ring: Arc::clone(ring),
        group,
        to_ring,
        from_ring,
    })
}

/// {g in G : g c = c g in R for every coefficient c}. Coefficients need not
/// be units.
pub fn multiplicative_centralizer(
    units: &UnitGroup,
    coefficients: &[RingElem],
    g: &Subgroup,
) -> Result<Subgroup> {
    g.same_parent(units.group())?;
    let ring = units.ring();
    let elems: Vec<usize> = g
        .elements()
        .iter()
        .copied()
        .filter(|&x| {
            let rx = units.to_ring(x);
            coefficients
                .iter()
                .all(|c| ring.mul(&rx, c) == ring.mul(c, &rx))
        })
        .collect();
    Ok(Subgroup::from_sorted(Arc::clone(units.group()), elems))
}
