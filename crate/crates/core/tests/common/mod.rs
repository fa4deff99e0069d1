//! Shared fixtures for the integration suites.

use std::sync::Arc;

use divlab_core::group::FiniteGroup;
use divlab_core::specs::{build_group, Bounds};

pub const SUBGROUP_BOUND: usize = 48;

/// The desk-scale catalog exercised by the battery tests.
pub const CATALOG: &[&str] = &[
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "cyclic:5",
    "cyclic:6",
    "cyclic:7",
    "cyclic:8",
    "prod:cyclic:2,cyclic:2",
    "prod:cyclic:2,cyclic:4",
    "sym:3",
    "sym:4",
    "alt:4",
    "dihedral:4",
    "dihedral:5",
];

pub fn catalog() -> Vec<(String, Arc<FiniteGroup>)> {
    let bounds = Bounds::default();
    CATALOG
        .iter()
        .map(|spec| (spec.to_string(), build_group(spec, &bounds).unwrap()))
        .collect()
}
