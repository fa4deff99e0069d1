//! Text grammar for groups and rings.
//!
//! Groups: `cyclic:<n>`, `sym:<n>`, `alt:<n>`, `dihedral:<n>` (order 2n),
//! `prod:<spec>,<spec>`, `cayley:<path>`, `units:<ring-spec>`.
//! Rings: `zmod:<n>`, `mat:<k>:zmod:<n>`, `prod:<spec>;<spec>`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup};
use crate::ring::{units_group, FiniteRing, RingSpec};

#[derive(Debug, Clone)]
pub struct Bounds {
    /// Largest order for which a Cayley table is materialized.
    pub group_order: usize,
    /// Largest order for subgroup-lattice and automorphism enumeration.
    pub subgroup_order: usize,
    /// Largest ring cardinality.
    pub ring_cardinality: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            group_order: 5040,
            subgroup_order: 48,
            ring_cardinality: 4096,
        }
    }
}

fn parse_usize<'a>(text: &'a str, what: &str) -> Result<(usize, &'a str)> {
    let end = text
        .char_indices()
        .take_while(|(_, c)| c.is_ascii_digit())
        .map(|(i, c)| i + c.len_utf8())
        .last()
        .ok_or_else(|| Error::Parse(format!("expected a number for {what}")))?;
    let n = text[..end]
        .parse()
        .map_err(|_| Error::Parse(format!("bad number for {what}")))?;
    Ok((n, &text[end..]))
}

fn expect_prefix<'a>(text: &'a str, prefix: &str) -> Result<&'a str> {
    text.strip_prefix(prefix)
        .ok_or_else(|| Error::Parse(format!("expected `{prefix}` near `{text}`")))
}

pub fn build_group(spec: &str, bounds: &Bounds) -> Result<Arc<FiniteGroup>> {
    let (g, rest) = parse_group(spec.trim(), bounds)?;
    if !rest.is_empty() {
        return Err(Error::Parse(format!("trailing input in group spec: `{rest}`")));
    }
    Ok(g)
}

fn check_group_order(order: usize, bounds: &Bounds) -> Result<()> {
    if order > bounds.group_order {
        return Err(Error::OrderBoundExceeded { order, bound: bounds.group_order });
    }
    Ok(())
}

fn parse_group<'a>(text: &'a str, bounds: &Bounds) -> Result<(Arc<FiniteGroup>, &'a str)> {
    if let Ok(rest) = expect_prefix(text, "cyclic:") {
        let (n, rest) = parse_usize(rest, "cyclic order")?;
        check_group_order(n, bounds)?;
        return Ok((group::cyclic(n)?, rest));
    }
    if let Ok(rest) = expect_prefix(text, "sym:") {
        let (n, rest) = parse_usize(rest, "symmetric degree")?;
        if n >= 1 && n <= 6 {
            check_group_order((1..=n).product(), bounds)?;
        }
        return Ok((group::symmetric(n)?, rest));
    }
    if let Ok(rest) = expect_prefix(text, "alt:") {
        let (n, rest) = parse_usize(rest, "alternating degree")?;
        if n >= 2 && n <= 7 {
            check_group_order((1..=n).product::<usize>() / 2, bounds)?;
        }
        return Ok((group::alternating(n)?, rest));
    }
    if let Ok(rest) = expect_prefix(text, "dihedral:") {
        let (n, rest) = parse_usize(rest, "dihedral parameter")?;
        check_group_order(2 * n, bounds)?;
        return Ok((group::dihedral(n)?, rest));
    }
    if let Ok(rest) = expect_prefix(text, "prod:") {
        let (a, rest) = parse_group(rest, bounds)?;
        let rest = expect_prefix(rest, ",")?;
        let (b, rest) = parse_group(rest, bounds)?;
        check_group_order(a.order() * b.order(), bounds)?;
        return Ok((group::product(&a, &b), rest));
    }
    if let Ok(rest) = expect_prefix(text, "cayley:") {
        let (path, rest) = match rest.find(',') {
            Some(i) => (&rest[..i], &rest[i..]),
            None => (rest, ""),
        };
        let content = std::fs::read_to_string(path.trim())?;
        let g = group::parse_cayley_table(&content)?;
        check_group_order(g.order(), bounds)?;
        return Ok((g, rest));
    }
    if let Ok(rest) = expect_prefix(text, "units:") {
        let (ring, rest) = parse_ring(rest, bounds)?;
        let units = units_group(&ring)?;
        check_group_order(units.order(), bounds)?;
        return Ok((Arc::clone(units.group()), rest));
    }
    Err(Error::Parse(format!("unrecognized group spec near `{text}`")))
}

pub fn build_ring(spec: &str, bounds: &Bounds) -> Result<Arc<FiniteRing>> {
    let (r, rest) = parse_ring(spec.trim(), bounds)?;
    if !rest.is_empty() {
        return Err(Error::Parse(format!("trailing input in ring spec: `{rest}`")));
    }
    Ok(r)
}

fn parse_ring<'a>(text: &'a str, bounds: &Bounds) -> Result<(Arc<FiniteRing>, &'a str)> {
    let (spec, rest) = parse_ring_spec(text)?;
    Ok((FiniteRing::new(spec, bounds.ring_cardinality)?, rest))
}

fn parse_ring_spec(text: &str) -> Result<(RingSpec, &str)> {
    if let Ok(rest) = expect_prefix(text, "zmod:") {
        let (n, rest) = parse_usize(rest, "modulus")?;
        return Ok((RingSpec::Zmod(n as u64), rest));
    }
    if let Ok(rest) = expect_prefix(text, "mat:") {
        let (k, rest) = parse_usize(rest, "matrix dimension")?;
        let rest = expect_prefix(rest, ":")?;
        let rest = expect_prefix(rest, "zmod:")?;
        let (n, rest) = parse_usize(rest, "modulus")?;
        return Ok((RingSpec::Mat { dim: k, modulus: n as u64 }, rest));
    }
    if let Ok(rest) = expect_prefix(text, "prod:") {
        let (a, rest) = parse_ring_spec(rest)?;
        let rest = expect_prefix(rest, ";")?;
        let (b, rest) = parse_ring_spec(rest)?;
        return Ok((RingSpec::Prod(Box::new(a), Box::new(b)), rest));
    }
    Err(Error::Parse(format!("unrecognized ring spec near `{text}`")))
}
