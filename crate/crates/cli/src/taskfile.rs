//! The JSON task-file schema and its resolution into core objects.
//!
//! Maps use `BTreeMap` so canonical re-serialization is byte-stable. The
//! full schema is documented in `docs/schema/taskfile.md`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use divlab_core::group::{subgroup_closure, FiniteGroup, Subgroup};
use divlab_core::indexed::IndexedPresentation;
use divlab_core::ring::{units_group, FiniteRing, RingElem, UnitGroup};
use divlab_core::ring_eq::{parse::parse_system, RingSystem};
use divlab_core::specs::{build_group, build_ring, Bounds};
use divlab_core::theorems::GroupEquationSystem;
use divlab_core::word::Word;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

fn default_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TaskFile {
    #[serde(default = "default_version")]
    pub version: u32,
    #[serde(default)]
    pub options: Options,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rings: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subgroups: BTreeMap<String, SubgroupDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub unit_subgroups: BTreeMap<String, UnitSubgroupDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presentations: BTreeMap<String, PresentationDef>,
    pub tasks: Vec<TaskEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Subgroup-lattice and automorphism enumeration bound.
    pub subgroup_bound: usize,
    /// Largest group order a Cayley table is built for.
    pub group_order_bound: usize,
    /// Largest ring cardinality.
    pub ring_cardinality_bound: u64,
    /// Attach class-partition evidence to counting tasks.
    pub harness: bool,
    /// Thread count for the data-parallel loops; 0 uses the default pool.
    pub workers: usize,
}

impl Default for Options {
    fn default() -> Self {
        let bounds = Bounds::default();
        Options {
            subgroup_bound: bounds.subgroup_order,
            group_order_bound: bounds.group_order,
            ring_cardinality_bound: bounds.ring_cardinality,
            harness: false,
            workers: 0,
        }
    }
}

impl Options {
    pub fn bounds(&self) -> Bounds {
        Bounds {
            group_order: self.group_order_bound,
            subgroup_order: self.subgroup_bound,
            ring_cardinality: self.ring_cardinality_bound,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SubgroupDef {
    pub group: String,
    pub generators: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UnitSubgroupDef {
    pub ring: String,
    /// Ring element literals; each must be a unit.
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PresentationDef {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relators: Vec<String>,
    /// Generator name -> element index in the task's target group.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fixed: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<i64>>,
    /// Semidirect flavor Z ⋉ K; excludes the fields above.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semidirect: Option<SemidirectDef>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SemidirectDef {
    /// Group spec for the base group K.
    pub base: String,
    /// Element-index permutation of K realized by conjugation with t.
    pub automorphism: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DoubleCosetItem {
    pub word: String,
    pub rep: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskKind {
    GeneratingTuples {
        group: String,
        arity: usize,
    },
    Epimorphisms {
        presentation: String,
        group: String,
    },
    AllHoms {
        presentation: String,
        group: String,
    },
    NthRoots {
        group: String,
        subgroup: String,
        exponent: i64,
    },
    SubsetInSubgroup {
        presentation: String,
        group: String,
        subgroup: String,
        words: Vec<String>,
    },
    DoubleCoset {
        presentation: String,
        group: String,
        subgroup: String,
        items: Vec<DoubleCosetItem>,
    },
    ImageEquals {
        presentation: String,
        group: String,
        subgroup: String,
        words: Vec<String>,
    },
    InjectiveRestriction {
        presentation: String,
        group: String,
        subgroup: String,
        w_generators: Vec<usize>,
    },
    GroupEquations {
        group: String,
        unknowns: usize,
        #[serde(default)]
        constants: BTreeMap<String, usize>,
        equations: Vec<String>,
    },
    RingEquations {
        ring: String,
        unknowns: usize,
        #[serde(default)]
        constants: BTreeMap<String, String>,
        equations: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        subgroup: Option<String>,
    },
    CheckHomogeneity {
        ring: String,
        unknowns: usize,
        #[serde(default)]
        constants: BTreeMap<String, String>,
        equations: Vec<String>,
    },
    VerifyMainTheorem {
        task: Box<TaskEntry>,
    },
    HallOracle {
        group: String,
        arity: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TaskEntry {
    pub name: String,
    #[serde(flatten)]
    pub kind: TaskKind,
    /// Per-task harness override.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub harness: Option<bool>,
}

pub fn parse_task_file(text: &str) -> Result<TaskFile, CliError> {
    let file: TaskFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if file.version != SCHEMA_VERSION {
        return Err(CliError::Parse(format!(
            "unsupported task-file version {} (expected {SCHEMA_VERSION})",
            file.version
        )));
    }
    Ok(file)
}

/// All named definitions resolved into core objects.
pub struct Resolved {
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub rings: BTreeMap<String, Arc<FiniteRing>>,
    pub units: BTreeMap<String, Arc<UnitGroup>>,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub unit_subgroups: BTreeMap<String, Subgroup>,
    pub presentations: BTreeMap<String, Arc<IndexedPresentation>>,
    pub bounds: Bounds,
}

impl Resolved {
    pub fn group(&self, name: &str) -> Result<&Arc<FiniteGroup>, CliError> {
        self.groups
            .get(name)
            .ok_or_else(|| CliError::Parse(format!("undefined group `{name}`")))
    }

    pub fn ring(&self, name: &str) -> Result<&Arc<FiniteRing>, CliError> {
        self.rings
            .get(name)
            .ok_or_else(|| CliError::Parse(format!("undefined ring `{name}`")))
    }

    pub fn units(&self, name: &str) -> Result<&Arc<UnitGroup>, CliError> {
        self.units
            .get(name)
            .ok_or_else(|| CliError::Parse(format!("undefined ring `{name}`")))
    }

    pub fn subgroup(&self, name: &str) -> Result<&Subgroup, CliError> {
        self.subgroups
            .get(name)
            .ok_or_else(|| CliError::Parse(format!("undefined subgroup `{name}`")))
    }

    pub fn unit_subgroup(&self, name: &str) -> Result<&Subgroup, CliError> {
        self.unit_subgroups
            .get(name)
            .ok_or_else(|| CliError::Parse(format!("undefined unit subgroup `{name}`")))
    }

    pub fn presentation(&self, name: &str) -> Result<&Arc<IndexedPresentation>, CliError> {
        self.presentations
            .get(name)
            .ok_or_else(|| CliError::Parse(format!("undefined presentation `{name}`")))
    }

    pub fn group_equations(
        &self,
        group: &Arc<FiniteGroup>,
        unknowns: usize,
        constants: &BTreeMap<String, usize>,
        equations: &[String],
    ) -> Result<GroupEquationSystem, CliError> {
        for (name, &e) in constants {
            if is_reserved_unknown_name(name) {
                return Err(CliError::Parse(format!(
                    "constant name `{name}` collides with unknown names"
                )));
            }
            group
                .check_index(e)
                .map_err(|e| CliError::Parse(e.to_string()))?;
        }
        let constants: Vec<(String, usize)> =
            constants.iter().map(|(k, &v)| (k.clone(), v)).collect();
        GroupEquationSystem::parse(unknowns, constants, equations)
            .map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn ring_system(
        &self,
        ring: &Arc<FiniteRing>,
        unknowns: usize,
        constants: &BTreeMap<String, String>,
        equations: &[String],
    ) -> Result<RingSystem, CliError> {
        let mut resolved: BTreeMap<String, RingElem> = BTreeMap::new();
        for (name, literal) in constants {
            if is_reserved_unknown_name(name) {
                return Err(CliError::Parse(format!(
                    "constant name `{name}` collides with unknown names"
                )));
            }
            let elem = ring
                .parse_elem(literal)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            resolved.insert(name.clone(), elem);
        }
        parse_system(ring, unknowns, &resolved, equations)
            .map_err(|e| CliError::Parse(e.to_string()))
    }
}

fn is_reserved_unknown_name(name: &str) -> bool {
    name.strip_prefix('x')
        .map(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
        .unwrap_or(false)
}

pub fn resolve(file: &TaskFile) -> Result<Resolved, CliError> {
    let bounds = file.options.bounds();
    let mut groups = BTreeMap::new();
    for (name, spec) in &file.groups {
        let g = build_group(spec, &bounds).map_err(|e| CliError::Parse(e.to_string()))?;
        groups.insert(name.clone(), g);
    }
    let mut rings = BTreeMap::new();
    let mut units = BTreeMap::new();
    for (name, spec) in &file.rings {
        let r = build_ring(spec, &bounds).map_err(|e| CliError::Parse(e.to_string()))?;
        let u = units_group(&r).map_err(|e| CliError::Parse(e.to_string()))?;
        rings.insert(name.clone(), r);
        units.insert(name.clone(), Arc::new(u));
    }
    let mut subgroups = BTreeMap::new();
    for (name, def) in &file.subgroups {
        let g = groups
            .get(&def.group)
            .ok_or_else(|| CliError::Parse(format!("undefined group `{}`", def.group)))?;
        let h = subgroup_closure(g, &def.generators)
            .map_err(|e| CliError::Parse(e.to_string()))?;
        subgroups.insert(name.clone(), h);
    }
    let mut unit_subgroups = BTreeMap::new();
    for (name, def) in &file.unit_subgroups {
        let u = units
            .get(&def.ring)
            .ok_or_else(|| CliError::Parse(format!("undefined ring `{}`", def.ring)))?;
        let ring = u.ring();
        let mut gens = Vec::new();
        for lit in &def.generators {
            let elem = ring
                .parse_elem(lit)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            let idx = u.from_ring(&elem).ok_or_else(|| {
                CliError::Parse(format!("`{lit}` is not a unit of ring `{}`", def.ring))
            })?;
            gens.push(idx);
        }
        let h = subgroup_closure(u.group(), &gens)
            .map_err(|e| CliError::Parse(e.to_string()))?;
        unit_subgroups.insert(name.clone(), h);
    }
    let mut presentations = BTreeMap::new();
    for (name, def) in &file.presentations {
        let p = resolve_presentation(def, &bounds)?;
        presentations.insert(name.clone(), p);
    }
    Ok(Resolved {
        groups,
        rings,
        units,
        subgroups,
        unit_subgroups,
        presentations,
        bounds,
    })
}

fn resolve_presentation(
    def: &PresentationDef,
    bounds: &Bounds,
) -> Result<Arc<IndexedPresentation>, CliError> {
    if let Some(sd) = &def.semidirect {
        if !def.generators.is_empty() || !def.relators.is_empty() || !def.fixed.is_empty() {
            return Err(CliError::Parse(
                "semidirect presentations take no explicit generators or relators".into(),
            ));
        }
        let base = build_group(&sd.base, bounds).map_err(|e| CliError::Parse(e.to_string()))?;
        return IndexedPresentation::semidirect(base, sd.automorphism.clone())
            .map_err(|e| CliError::Parse(e.to_string()));
    }
    if def.generators.is_empty() {
        return Err(CliError::Parse("a presentation needs generators".into()));
    }
    let relators = def
        .relators
        .iter()
        .map(|t| Word::parse(t, &def.generators))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let mut fixed = Vec::new();
    for (gen_name, &img) in &def.fixed {
        let idx = def
            .generators
            .iter()
            .position(|g| g == gen_name)
            .ok_or_else(|| CliError::Parse(format!("fixed image for unknown `{gen_name}`")))?;
        fixed.push((idx, img));
    }
    IndexedPresentation::new(
        def.generators.clone(),
        relators,
        fixed,
        def.degrees.clone(),
    )
    .map_err(|e| CliError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_parses_with_defaults() {
        let text = r#"{"tasks": [{"name": "t", "kind": "generating-tuples", "group": "G", "arity": 2}]}"#;
        let file = parse_task_file(text).unwrap();
        assert_eq!(file.version, 1);
        assert_eq!(file.options.subgroup_bound, 48);
        assert!(matches!(
            file.tasks[0].kind,
            TaskKind::GeneratingTuples { ref group, arity: 2 } if group == "G"
        ));
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"tasks": [], "bogus": 1}"#;
        assert!(parse_task_file(text).is_err());
    }

    #[test]
    fn canonical_serialization_round_trips() {
        let text = r#"{
            "groups": {"G": "sym:3"},
            "subgroups": {"H": {"group": "G", "generators": [3]}},
            "tasks": [{"name": "r", "kind": "nth-roots", "group": "G", "subgroup": "H", "exponent": 2}]
        }"#;
        let file = parse_task_file(text).unwrap();
        let canon = serde_json::to_string_pretty(&file).unwrap();
        let file2 = parse_task_file(&canon).unwrap();
        assert_eq!(file, file2);
        assert_eq!(canon, serde_json::to_string_pretty(&file2).unwrap());
    }

    #[test]
    fn resolution_reports_missing_names() {
        let text = r#"{
            "subgroups": {"H": {"group": "G", "generators": [1]}},
            "tasks": []
        }"#;
        let file = parse_task_file(text).unwrap();
        assert!(matches!(resolve(&file), Err(CliError::Parse(_))));
    }

    #[test]
    fn resolves_catalog_definitions() {
        let text = r#"{
            "groups": {"G": "sym:3", "K4": "prod:cyclic:2,cyclic:2"},
            "rings": {"R": "zmod:7"},
            "subgroups": {"A": {"group": "G", "generators": [3]}},
            "unit_subgroups": {"U": {"ring": "R", "generators": ["2"]}},
            "presentations": {
                "F2": {"generators": ["x0", "x1"]},
                "SD": {"semidirect": {"base": "sym:3", "automorphism": [0,1,2,3,4,5]}}
            },
            "tasks": []
        }"#;
        let file = parse_task_file(text).unwrap();
        let r = resolve(&file).unwrap();
        assert_eq!(r.group("G").unwrap().order(), 6);
        assert_eq!(r.subgroup("A").unwrap().order(), 3);
        assert_eq!(r.units("R").unwrap().order(), 6);
        // 2 generates the units of zmod:7? 2^3 = 1 mod 7: order 3
        assert_eq!(r.unit_subgroup("U").unwrap().order(), 3);
        assert_eq!(r.presentation("F2").unwrap().gen_count(), 2);
        assert!(r.presentation("SD").unwrap().sd().is_some());
    }
}
