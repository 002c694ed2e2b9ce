use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;

use super::GComplexError;

/// A simplex as a strictly increasing list of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts and deduplicates.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// The face obtained by deleting the `i`-th vertex.
    pub fn facet(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }
}

impl Deref for Simplex {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Parity of the permutation that sorts `items` (which must be distinct):
/// `+1` for even, `-1` for odd.
pub fn sort_sign(items: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A finite abstract simplicial complex on named vertices.
///
/// Simplices are stored per dimension in lexicographic order; that order is the
/// basis order used for cochains.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    names: Vec<String>,
    by_dim: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.by_dim == other.by_dim
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds the face closure of named maximal simplices.
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        maximal_simplices: &[Vec<S>],
    ) -> Result<Self, GComplexError> {
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut lookup = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if lookup.insert(n.as_str(), i).is_some() {
                return Err(GComplexError::DuplicateVertexName(n.clone()));
            }
        }
        let mut generators = Vec::with_capacity(maximal_simplices.len());
        for s in maximal_simplices {
            let mut idx = Vec::with_capacity(s.len());
            for v in s {
                let v = v.as_ref();
                let i = *lookup
                    .get(v)
                    .ok_or_else(|| GComplexError::UnknownVertex(v.to_owned()))?;
                if idx.contains(&i) {
                    return Err(GComplexError::RepeatedVertexInSimplex(v.to_owned()));
                }
                idx.push(i);
            }
            if idx.is_empty() {
                continue;
            }
            generators.push(idx);
        }
        Ok(Self::from_generators(names, generators))
    }

    /// Index-based constructor; generators may be unsorted but must not repeat
    /// vertices. Every vertex becomes a 0-simplex.
    pub fn from_generators(names: Vec<String>, generators: Vec<Vec<usize>>) -> Self {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for v in 0..names.len() {
            all.insert(Simplex(vec![v]));
        }
        for g in generators {
            let s = Simplex::new(g);
            if all.contains(&s) {
                continue;
            }
            for f in s.faces() {
                all.insert(f);
            }
        }
        Self::from_simplex_set(names, all)
    }

    fn from_simplex_set(names: Vec<String>, all: BTreeSet<Simplex>) -> Self {
        let top = all.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); top];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        let mut index = HashMap::new();
        for layer in &by_dim {
            for (i, s) in layer.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        Self {
            names,
            by_dim,
            index,
        }
    }

    pub fn empty() -> Self {
        Self::from_generators(Vec::new(), Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Simplices of dimension `k` in basis order (empty past the top dimension).
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.by_dim.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn num_simplices(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// All simplices, by dimension and then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Whether the vertex set (in any order, with repeats) spans a simplex.
    pub fn spans_simplex(&self, vertices: &[usize]) -> bool {
        self.contains(&Simplex::new(vertices.to_vec()))
    }

    /// Position of `s` within `simplices(s.dim())`.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(k, l)| {
                if k % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// Simplices that are not proper faces of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        for layer in self.by_dim.iter().rev() {
            for s in layer {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
            }
            for s in layer {
                if s.len() > 1 {
                    for i in 0..s.len() {
                        let f = s.facet(i);
                        // faces are owned by the lower layer; look them up there
                        if let Some(pos) = self.index_of(&f) {
                            covered.insert(&self.by_dim[f.len() - 1][pos]);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Maximal simplices as vertex-name lists.
    pub fn maximal_simplex_names(&self) -> Vec<Vec<String>> {
        self.maximal_simplices()
            .iter()
            .map(|s| self.simplex_names(s))
            .collect()
    }

    pub fn simplex_names(&self, s: &Simplex) -> Vec<String> {
        s.iter().map(|&v| self.names[v].clone()).collect()
    }

    /// Looks a simplex up by vertex names.
    pub fn simplex_by_names<S: AsRef<str>>(&self, names: &[S]) -> Option<Simplex> {
        let idx: Option<Vec<usize>> = names
            .iter()
            .map(|n| self.vertex_index(n.as_ref()))
            .collect();
        let s = Simplex::new(idx?);
        (s.len() == names.len() && self.contains(&s)).then_some(s)
    }

    /// Edge adjacency lists.
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for e in self.simplices(1) {
            adj[e[0]].push(e[1]);
            adj[e[1]].push(e[0]);
        }
        adj
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut comp = vec![usize::MAX; self.num_vertices()];
        let mut out = Vec::new();
        for start in 0..self.num_vertices() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// If every simplex of `self` is, by vertex names, a simplex of `other`, returns
    /// the vertex embedding `self -> other`.
    pub fn embedding_into(&self, other: &SimplicialComplex) -> Option<Vec<usize>> {
        let emb: Vec<usize> = self
            .names
            .iter()
            .map(|n| other.vertex_index(n))
            .collect::<Option<_>>()?;
        let ok = self
            .maximal_simplices()
            .iter()
            .all(|s| other.contains(&Simplex::new(s.iter().map(|&v| emb[v]).collect())));
        ok.then_some(emb)
    }

    /// A simplex of `other` spanned by vertices of `self` that is missing from `self`,
    /// if any. `None` means `self` is a full subcomplex. Assumes `emb` is an embedding.
    pub fn fullness_witness(&self, other: &SimplicialComplex, emb: &[usize]) -> Option<Simplex> {
        let mut back = vec![usize::MAX; other.num_vertices()];
        for (i, &j) in emb.iter().enumerate() {
            back[j] = i;
        }
        other
            .iter()
            .find(|s| {
                s.iter().all(|&v| back[v] != usize::MAX)
                    && !self.contains(&Simplex::new(s.iter().map(|&v| back[v]).collect()))
            })
            .cloned()
    }

    /// The subcomplex induced on a vertex subset (keeps the original names).
    pub fn induced(&self, vertices: &[usize]) -> (SimplicialComplex, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut pos = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let names = keep.iter().map(|&v| self.names[v].clone()).collect();
        let gens = self
            .iter()
            .filter(|s| s.iter().all(|&v| pos[v] != usize::MAX))
            .map(|s| s.iter().map(|&v| pos[v]).collect())
            .collect();
        (Self::from_generators(names, gens), keep)
    }

    /// Renames vertices; names must stay distinct.
    pub fn with_names(&self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.names.len());
        Self {
            names,
            by_dim: self.by_dim.clone(),
            index: self.index.clone(),
        }
    }
}
