use super::{GAction, Simplex, SimplicialComplex};

/// A vertex map between complexes. Validity is checked by [`validate_map`],
/// not at construction, so invalid candidates can be represented and reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub vertex_map: Vec<usize>,
}

/// Outcome of [`validate_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapReport {
    Valid,
    /// `vertex_map` has the wrong length or points outside the target.
    Malformed,
    /// The image vertex set of `simplex` is not a simplex of the target.
    NotSimplicial {
        simplex: Simplex,
    },
    /// `f(g·v) != g·f(v)`.
    NotEquivariant {
        element: usize,
        vertex: usize,
    },
    /// The supplied actions do not live on the map's complexes or use different groups.
    ActionMismatch,
}

impl MapReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, MapReport::Valid)
    }
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Self {
        Self {
            source,
            target,
            vertex_map,
        }
    }

    pub fn identity(complex: &SimplicialComplex) -> Self {
        Self::new(
            complex.clone(),
            complex.clone(),
            (0..complex.num_vertices()).collect(),
        )
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        SimplicialMap::new(
            self.source.clone(),
            other.target.clone(),
            self.vertex_map
                .iter()
                .map(|&v| other.vertex_map[v])
                .collect(),
        )
    }

    /// Image vertex list of `s`, in the order of `s` (may contain repeats).
    pub fn image_list(&self, s: &Simplex) -> Vec<usize> {
        s.iter().map(|&v| self.vertex_map[v]).collect()
    }

    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new(self.image_list(s))
    }
}

/// Checks that every source simplex maps onto a target simplex (collapses
/// allowed) and, when actions are supplied, that the map is equivariant.
pub fn validate_map(f: &SimplicialMap, equivariance: Option<(&GAction, &GAction)>) -> MapReport {
    let nt = f.target.num_vertices();
    if f.vertex_map.len() != f.source.num_vertices() || f.vertex_map.iter().any(|&v| v >= nt) {
        return MapReport::Malformed;
    }
    for s in f.source.maximal_simplices() {
        if !f.target.contains(&f.image(&s)) {
            // report the smallest offending face
            let bad = s
                .faces()
                .filter(|t| !f.target.contains(&f.image(t)))
                .min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)))
                .unwrap_or(s);
            return MapReport::NotSimplicial { simplex: bad };
        }
    }
    if let Some((src, tgt)) = equivariance {
        if src.complex() != &f.source || tgt.complex() != &f.target || src.group() != tgt.group() {
            return MapReport::ActionMismatch;
        }
        for g in src.group().elements() {
            for v in 0..f.source.num_vertices() {
                if f.vertex_map[src.act_vertex(g, v)] != tgt.act_vertex(g, f.vertex_map[v]) {
                    return MapReport::NotEquivariant {
                        element: g,
                        vertex: v,
                    };
                }
            }
        }
    }
    MapReport::Valid
}
