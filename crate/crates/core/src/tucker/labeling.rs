use super::TuckerError;
use crate::gcomplex::{
    join_power, join_power_index, join_power_vertex, validate_map, FiniteGroup, GAction, MapReport,
    SimplicialComplex, SimplicialMap,
};

/// A label `(g, k)`: a group element and a class in `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub element: usize,
    pub class: usize,
}

impl Label {
    pub fn new(element: usize, class: usize) -> Self {
        Self { element, class }
    }
}

/// A `(G, n)`-labeling: one label per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub n: usize,
    pub labels: Vec<Label>,
}

/// Where equivariance is demanded.
#[derive(Clone, Copy, Debug)]
pub enum Mode<'a> {
    /// The action on the whole complex.
    Full(&'a GAction),
    /// The action on a subcomplex `x0`, matched to `complex` by vertex names;
    /// the remaining vertices are unconstrained.
    Boundary {
        complex: &'a SimplicialComplex,
        x0: &'a GAction,
    },
}

impl<'a> Mode<'a> {
    pub fn complex(&self) -> &'a SimplicialComplex {
        match self {
            Mode::Full(a) => a.complex(),
            Mode::Boundary { complex, .. } => complex,
        }
    }

    pub fn action(&self) -> &'a GAction {
        match self {
            Mode::Full(a) => a,
            Mode::Boundary { x0, .. } => x0,
        }
    }

    pub fn group(&self) -> &'a FiniteGroup {
        self.action().group()
    }

    /// Index in [`Mode::complex`] of every vertex the action moves (all vertices
    /// in full mode, the vertices of `x0` in boundary mode).
    pub fn embedding(&self) -> Result<Vec<usize>, TuckerError> {
        match self {
            Mode::Full(a) => Ok((0..a.complex().num_vertices()).collect()),
            Mode::Boundary { complex, x0 } => x0
                .complex()
                .embedding_into(complex)
                .ok_or(TuckerError::NotSubcomplex),
        }
    }
}

/// Equivariance verdict for a labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelingReport {
    Equivariant,
    /// First failure of `L(h·v) = h·L(v)`, scanning `h` then `v`; `vertex` indexes
    /// the labeled complex.
    Violation {
        element: usize,
        vertex: usize,
    },
}

impl LabelingReport {
    pub fn is_equivariant(&self) -> bool {
        matches!(self, LabelingReport::Equivariant)
    }
}

/// An edge whose endpoint labels share the class and differ in the element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementaryEdge {
    pub edge: (usize, usize),
    pub class: usize,
    pub elements: (usize, usize),
}

pub(crate) fn check_shape(
    x: &SimplicialComplex,
    group: &FiniteGroup,
    l: &Labeling,
) -> Result<(), TuckerError> {
    if l.labels.len() != x.num_vertices() {
        return Err(TuckerError::NotTotal {
            expected: x.num_vertices(),
            got: l.labels.len(),
        });
    }
    if let Some(v) = l
        .labels
        .iter()
        .position(|lab| lab.element >= group.order() || lab.class == 0 || lab.class > l.n)
    {
        return Err(TuckerError::BadLabel { vertex: v });
    }
    Ok(())
}

/// Checks the equivariance contract of `mode`.
pub fn validate_labeling(l: &Labeling, mode: &Mode) -> Result<LabelingReport, TuckerError> {
    let x = mode.complex();
    let a = mode.action();
    check_shape(x, a.group(), l)?;
    let emb = mode.embedding()?;
    let group = a.group();
    for h in group.elements() {
        for (v0, &v) in emb.iter().enumerate() {
            let Label { element, class } = l.labels[v];
            let moved = l.labels[emb[a.act_vertex(h, v0)]];
            if moved != Label::new(group.mul(h, element), class) {
                return Ok(LabelingReport::Violation {
                    element: h,
                    vertex: v,
                });
            }
        }
    }
    Ok(LabelingReport::Equivariant)
}

/// All complementary edges, in edge basis order.
pub fn find_complementary_edges(x: &SimplicialComplex, l: &Labeling) -> Vec<ComplementaryEdge> {
    if x.dim().is_none_or(|d| d < 1) {
        return Vec::new();
    }
    x.simplices(1)
        .iter()
        .filter_map(|e| {
            let (a, b) = (l.labels[e[0]], l.labels[e[1]]);
            (a.class == b.class && a.element != b.element).then_some(ComplementaryEdge {
                edge: (e[0], e[1]),
                class: a.class,
                elements: (a.element, b.element),
            })
        })
        .collect()
}

/// The map `v ↦ L(v)` into `J^n(G)`.
///
/// A vertex set spans a simplex of `J^n(G)` exactly when no two of its vertices
/// share a class with different elements, so it suffices that no edge of `X` is
/// complementary: the image of any simplex has, pairwise, distinct classes or
/// equal vertices.
pub fn labeling_to_map(action: &GAction, l: &Labeling) -> Result<SimplicialMap, TuckerError> {
    let report = validate_labeling(l, &Mode::Full(action))?;
    if let LabelingReport::Violation { element, vertex } = report {
        return Err(TuckerError::NotEquivariant { element, vertex });
    }
    if let Some(edge) = find_complementary_edges(action.complex(), l)
        .into_iter()
        .next()
    {
        return Err(TuckerError::ComplementaryEdge(edge));
    }
    let q = action.group().order();
    let jg = join_power(action.group(), l.n).map_err(|_| TuckerError::ZeroClasses)?;
    let vertex_map = l
        .labels
        .iter()
        .map(|lab| join_power_index(q, lab.element, lab.class))
        .collect();
    Ok(SimplicialMap::new(
        action.complex().clone(),
        jg.complex().clone(),
        vertex_map,
    ))
}

/// Pulls back the canonical labeling of `J^n(G)` along an equivariant map.
pub fn map_to_labeling(source: &GAction, f: &SimplicialMap) -> Result<Labeling, TuckerError> {
    let q = source.group().order();
    let nt = f.target.num_vertices();
    if nt == 0 || nt % q != 0 {
        return Err(TuckerError::NotJoinPower);
    }
    let n = nt / q;
    let jg = join_power(source.group(), n).map_err(|_| TuckerError::NotJoinPower)?;
    if jg.complex() != &f.target {
        return Err(TuckerError::NotJoinPower);
    }
    match validate_map(f, Some((source, &jg))) {
        MapReport::Valid => {}
        MapReport::NotEquivariant { element, vertex } => {
            return Err(TuckerError::NotEquivariant { element, vertex })
        }
        MapReport::NotSimplicial { simplex } => {
            return Err(TuckerError::NotSimplicial {
                simplex: f.source.simplex_names(&simplex),
            })
        }
        MapReport::Malformed | MapReport::ActionMismatch => return Err(TuckerError::NotJoinPower),
    }
    let labels = f
        .vertex_map
        .iter()
        .map(|&t| {
            let (g, k) = join_power_vertex(q, t);
            Label::new(g, k)
        })
        .collect();
    Ok(Labeling { n, labels })
}
