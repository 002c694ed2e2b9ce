//! JSON file formats and their conversions to library types.
//!
//! Nested complexes and groups may be given inline or as a path relative to the
//! file that references them. Emitted files are always self-contained.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use gindex::gcomplex::{FiniteGroup, GAction, GComplexError, SimplicialComplex, SimplicialMap};
use gindex::smith::{Ambient, CohomClass};
use gindex::tucker::{Label, Labeling};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupFile {
    Cyclic {
        order: usize,
    },
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Nested<T> {
    Path(String),
    Inline(T),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Name(String),
}

/// A group action. `complex` names the complex acted on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub complex: Nested<ComplexFile>,
    pub group: Nested<GroupFile>,
    pub perms: BTreeMap<usize, Vec<VertexRef>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub generator_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingFile {
    pub n: usize,
    pub labels: BTreeMap<String, [usize; 2]>,
}

/// A simplicial map given by vertex names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source: Nested<ComplexFile>,
    pub target: Nested<ComplexFile>,
    pub vertex_map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    pub simplex: Vec<String>,
    pub coefficient: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub degree: usize,
    pub ambient: Ambient,
    pub cocycle: Vec<CochainEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexFile {
    pub input: String,
    pub prime: usize,
    pub generator: usize,
    pub index: usize,
    /// Whether each `u_k`, `k = 0..=dim`, is nonzero.
    pub u_nonzero: Vec<bool>,
    pub witness: WitnessFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SearchWitness {
    Labeling(LabelingFile),
    Map(MapFile),
    EquivarianceViolation {
        element: usize,
        vertex: String,
    },
    ComplementaryEdge {
        edge: [String; 2],
        class: usize,
        elements: [usize; 2],
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictFile {
    pub verdict: String,
    pub witness: Option<SearchWitness>,
    pub leaves_explored: u64,
    pub subdivisions_applied: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LowerWitness {
    pub prime: usize,
    pub generator: usize,
    pub index: usize,
    pub witness: WitnessFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witnesses {
    pub lower: Vec<LowerWitness>,
    pub upper: Option<LabelingFile>,
}

/// Certificate emitted by `sandwich` and `verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub kind: String,
    pub tool_version: String,
    /// Input name to SHA-256 of its canonical text.
    pub inputs: BTreeMap<String, String>,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub witnesses: Witnesses,
    pub verdict: String,
    pub budget: Option<u64>,
    pub leaves_explored: u64,
    /// Check-specific data.
    pub details: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientFile {
    pub model: ActionFile,
    pub complex: ComplexFile,
    pub projection: BTreeMap<String, String>,
    pub subdivisions_applied: usize,
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Parses JSON, reporting the line, column and offending field on failure.
pub fn parse<T: DeserializeOwned>(text: &str, origin: &Path) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("{}: {e}", origin.display())))
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    parse(&read_text(path)?, path)
}

fn resolve<T: DeserializeOwned + Clone>(nested: &Nested<T>, base: &Path) -> Result<T, CliError> {
    match nested {
        Nested::Inline(t) => Ok(t.clone()),
        Nested::Path(p) => {
            let dir = base.parent().map(Path::to_path_buf).unwrap_or_default();
            load(&dir.join(p))
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("formats serialize");
    s.push('\n');
    s
}

fn domain(origin: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::input(format!("{}: {e}", origin.display()))
}

impl ComplexFile {
    pub fn from_complex(x: &SimplicialComplex) -> Self {
        Self {
            vertices: x.vertex_names().to_vec(),
            maximal_simplices: x.maximal_simplex_names(),
        }
    }

    pub fn build(&self, origin: &Path) -> Result<SimplicialComplex, CliError> {
        SimplicialComplex::new(&self.vertices, &self.maximal_simplices).map_err(|e| {
            let field = match e {
                GComplexError::DuplicateVertexName(_) => "vertices",
                _ => "maximal_simplices",
            };
            domain(origin, format!("field `{field}`: {e}"))
        })
    }
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        match FiniteGroup::cyclic(g.order()) {
            Ok(c) if &c == g => GroupFile::Cyclic { order: g.order() },
            _ => GroupFile::Table {
                order: g.order(),
                table: g.table().to_vec(),
            },
        }
    }

    pub fn build(&self, origin: &Path) -> Result<FiniteGroup, CliError> {
        match self {
            GroupFile::Cyclic { order } => FiniteGroup::cyclic(*order),
            GroupFile::Table { order, table } => {
                if table.len() != *order {
                    return Err(domain(
                        origin,
                        format!(
                            "field `table` has {} rows but `order` is {order}",
                            table.len()
                        ),
                    ));
                }
                FiniteGroup::from_table(table.clone())
            }
        }
        .map_err(|e| domain(origin, e))
    }
}

impl ActionFile {
    pub fn from_action(a: &GAction) -> Self {
        let x = a.complex();
        let perms = a
            .perms()
            .iter()
            .enumerate()
            .map(|(g, p)| {
                let names = p
                    .iter()
                    .map(|&v| VertexRef::Name(x.vertex_name(v).to_owned()));
                (g, names.collect())
            })
            .collect();
        Self {
            complex: Nested::Inline(ComplexFile::from_complex(x)),
            group: Nested::Inline(GroupFile::from_group(a.group())),
            perms,
            generator_only: false,
        }
    }

    pub fn build(&self, origin: &Path) -> Result<GAction, CliError> {
        let x = resolve(&self.complex, origin)?.build(origin)?;
        let group = resolve(&self.group, origin)?.build(origin)?;
        let perm = |g: usize, refs: &[VertexRef]| -> Result<Vec<usize>, CliError> {
            refs.iter()
                .map(|r| match r {
                    VertexRef::Index(i) if *i < x.num_vertices() => Ok(*i),
                    VertexRef::Index(i) => Err(domain(
                        origin,
                        format!("perms.{g}: vertex index {i} out of range"),
                    )),
                    VertexRef::Name(n) => x
                        .vertex_index(n)
                        .ok_or_else(|| domain(origin, format!("perms.{g}: unknown vertex {n:?}"))),
                })
                .collect()
        };
        if self.generator_only {
            let gen = self
                .perms
                .get(&1)
                .filter(|_| self.perms.len() == 1)
                .ok_or_else(|| {
                    domain(
                        origin,
                        "field `perms` must hold exactly element 1 when `generator_only` is set",
                    )
                })?;
            let generator = perm(1, gen)?;
            return GAction::from_generator(group, x, generator).map_err(|e| domain(origin, e));
        }
        let mut perms = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let refs = self.perms.get(&g).ok_or_else(|| {
                domain(
                    origin,
                    format!("field `perms` has no entry for element {g}"),
                )
            })?;
            perms.push(perm(g, refs)?);
        }
        if let Some(g) = self.perms.keys().find(|&&g| g >= group.order()) {
            return Err(domain(origin, format!("perms.{g}: no such group element")));
        }
        GAction::new(group, x, perms).map_err(|e| domain(origin, e))
    }
}

impl LabelingFile {
    pub fn from_labeling(x: &SimplicialComplex, l: &Labeling) -> Self {
        Self {
            n: l.n,
            labels: l
                .labels
                .iter()
                .enumerate()
                .map(|(v, lab)| (x.vertex_name(v).to_owned(), [lab.element, lab.class]))
                .collect(),
        }
    }

    pub fn build(&self, x: &SimplicialComplex, origin: &Path) -> Result<Labeling, CliError> {
        if let Some(name) = self.labels.keys().find(|n| x.vertex_index(n).is_none()) {
            return Err(domain(origin, format!("labels: unknown vertex {name:?}")));
        }
        let labels = x
            .vertex_names()
            .iter()
            .map(|name| {
                self.labels
                    .get(name)
                    .map(|&[g, k]| Label::new(g, k))
                    .ok_or_else(|| domain(origin, format!("labels: vertex {name:?} has no label")))
            })
            .collect::<Result<_, _>>()?;
        Ok(Labeling { n: self.n, labels })
    }
}

impl MapFile {
    pub fn from_map(f: &SimplicialMap) -> Self {
        Self {
            source: Nested::Inline(ComplexFile::from_complex(&f.source)),
            target: Nested::Inline(ComplexFile::from_complex(&f.target)),
            vertex_map: f
                .vertex_map
                .iter()
                .enumerate()
                .map(|(v, &w)| {
                    (
                        f.source.vertex_name(v).to_owned(),
                        f.target.vertex_name(w).to_owned(),
                    )
                })
                .collect(),
        }
    }

    pub fn build(&self, origin: &Path) -> Result<SimplicialMap, CliError> {
        let source = resolve(&self.source, origin)?.build(origin)?;
        let target = resolve(&self.target, origin)?.build(origin)?;
        if let Some(name) = self
            .vertex_map
            .keys()
            .find(|n| source.vertex_index(n).is_none())
        {
            return Err(domain(
                origin,
                format!("vertex_map: unknown source vertex {name:?}"),
            ));
        }
        let vertex_map = source
            .vertex_names()
            .iter()
            .map(|name| {
                let image = self.vertex_map.get(name).ok_or_else(|| {
                    domain(origin, format!("vertex_map: vertex {name:?} has no image"))
                })?;
                target.vertex_index(image).ok_or_else(|| {
                    domain(
                        origin,
                        format!("vertex_map: unknown target vertex {image:?}"),
                    )
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(SimplicialMap::new(source, target, vertex_map))
    }
}

impl WitnessFile {
    pub fn from_class(x: &SimplicialComplex, c: &CohomClass) -> Self {
        Self {
            degree: c.degree,
            ambient: c.ambient,
            cocycle: c
                .sparse(x)
                .into_iter()
                .map(|(simplex, coefficient)| CochainEntry {
                    simplex,
                    coefficient,
                })
                .collect(),
        }
    }

    pub fn build(
        &self,
        x: &SimplicialComplex,
        p: usize,
        origin: &Path,
    ) -> Result<CohomClass, CliError> {
        let entries: Vec<(Vec<String>, u32)> = self
            .cocycle
            .iter()
            .map(|e| (e.simplex.clone(), e.coefficient))
            .collect();
        CohomClass::from_sparse(x, self.degree, self.ambient, &entries, p as u32)
            .map_err(|e| domain(origin, e))
    }
}
