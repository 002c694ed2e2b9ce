//! Constructions producing new complexes and G-complexes from old ones.
//!
//! Generated vertex names are deterministic functions of the input names:
//!
//! | construction | vertex name |
//! |---|---|
//! | join | `0:a`, `1:b` (factor index, source name) |
//! | `J^m(G)` | `(g,k)` with `k` in `1..=m` |
//! | cone | the given apex name |
//! | barycentric subdivision | `<a,b,c>` for the barycenter of `{a,b,c}` |
//! | quotient | `[a]` for the orbit whose smallest vertex is `a` |
//! | camomile | `a@g` for copy `g` of an interior vertex `a`; boundary names kept |

use std::collections::HashMap;

use super::{FiniteGroup, GAction, GComplexError, Simplex, SimplicialComplex, SimplicialMap};

/// Join of two complexes (unions `s ∪ t` with either part possibly empty).
pub fn join_complexes(x: &SimplicialComplex, y: &SimplicialComplex) -> SimplicialComplex {
    let nx = x.num_vertices();
    let names = x
        .vertex_names()
        .iter()
        .map(|n| format!("0:{n}"))
        .chain(y.vertex_names().iter().map(|n| format!("1:{n}")))
        .collect();
    let mx = x.maximal_simplices();
    let my = y.maximal_simplices();
    let mut gens = Vec::new();
    if mx.is_empty() {
        gens.extend(my.iter().map(|t| t.iter().map(|&v| v + nx).collect()));
    } else if my.is_empty() {
        gens.extend(mx.iter().map(|s| s.to_vec()));
    } else {
        for s in &mx {
            for t in &my {
                gens.push(s.iter().copied().chain(t.iter().map(|&v| v + nx)).collect());
            }
        }
    }
    SimplicialComplex::from_generators(names, gens)
}

/// Join with the diagonal action.
pub fn join(x: &GAction, y: &GAction) -> Result<GAction, GComplexError> {
    if x.group() != y.group() {
        return Err(GComplexError::GroupMismatch);
    }
    let complex = join_complexes(x.complex(), y.complex());
    let nx = x.complex().num_vertices();
    let perms = x
        .perms()
        .iter()
        .zip(y.perms())
        .map(|(px, py)| {
            px.iter()
                .copied()
                .chain(py.iter().map(|&v| v + nx))
                .collect()
        })
        .collect();
    Ok(GAction::from_parts(x.group().clone(), complex, perms))
}

/// `J^m(G)`: vertices `(g,k)`, simplices are vertex sets with at most one vertex per
/// factor `k`, and `G` acts by left multiplication on the first coordinate.
///
/// Vertex `(g,k)` has index `(k-1)·|G| + g`.
pub fn join_power(group: &FiniteGroup, m: usize) -> Result<GAction, GComplexError> {
    if m == 0 {
        return Err(GComplexError::ZeroJoinPower);
    }
    let q = group.order();
    let names = (1..=m)
        .flat_map(|k| (0..q).map(move |g| format!("({g},{k})")))
        .collect();
    // every choice of one element per factor is a facet
    let mut gens = Vec::with_capacity(q.pow(m as u32));
    let mut choice = vec![0usize; m];
    loop {
        gens.push(choice.iter().enumerate().map(|(k, &g)| k * q + g).collect());
        let mut i = 0;
        while i < m {
            choice[i] += 1;
            if choice[i] < q {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
    }
    let complex = SimplicialComplex::from_generators(names, gens);
    let perms = group
        .elements()
        .map(|h| {
            (0..m * q)
                .map(|v| (v / q) * q + group.mul(h, v % q))
                .collect()
        })
        .collect();
    Ok(GAction::from_parts(group.clone(), complex, perms))
}

/// Decodes a vertex index of [`join_power`] into `(g, k)`.
pub fn join_power_vertex(order: usize, v: usize) -> (usize, usize) {
    (v % order, v / order + 1)
}

/// Index of `(g, k)` in [`join_power`].
pub fn join_power_index(order: usize, g: usize, k: usize) -> usize {
    (k - 1) * order + g
}

/// Cone with a fresh apex appended as the last vertex.
pub fn cone(x: &SimplicialComplex, apex: &str) -> Result<SimplicialComplex, GComplexError> {
    if x.vertex_index(apex).is_some() {
        return Err(GComplexError::DuplicateVertexName(apex.to_owned()));
    }
    let n = x.num_vertices();
    let mut names = x.vertex_names().to_vec();
    names.push(apex.to_owned());
    let mut gens: Vec<Vec<usize>> = x
        .maximal_simplices()
        .iter()
        .map(|s| s.iter().copied().chain([n]).collect())
        .collect();
    gens.push(vec![n]);
    Ok(SimplicialComplex::from_generators(names, gens))
}

fn barycenter_name(x: &SimplicialComplex, s: &Simplex) -> String {
    format!("<{}>", x.simplex_names(s).join(","))
}

/// Barycentric subdivision; vertex `i` of the result is the `i`-th simplex of `x`
/// in [`SimplicialComplex::iter`] order.
pub fn subdivide(x: &SimplicialComplex) -> SimplicialComplex {
    let position: HashMap<&Simplex, usize> = x.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let names = x.iter().map(|s| barycenter_name(x, s)).collect();
    let mut gens = Vec::new();
    for top in x.maximal_simplices() {
        let mut chain = Vec::with_capacity(top.len());
        full_flags(&top, &position, &mut chain, &mut gens);
    }
    SimplicialComplex::from_generators(names, gens)
}

// Every maximal flag below `s`, recorded as barycenter indices.
fn full_flags(
    s: &Simplex,
    position: &HashMap<&Simplex, usize>,
    chain: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    chain.push(position[s]);
    if s.len() == 1 {
        out.push(chain.clone());
    } else {
        for i in 0..s.len() {
            full_flags(&s.facet(i), position, chain, out);
        }
    }
    chain.pop();
}

/// Barycentric subdivision with the induced action `g·<s> = <g·s>`.
pub fn barycentric_subdivision(a: &GAction) -> GAction {
    let x = a.complex();
    let sd = subdivide(x);
    let position: HashMap<&Simplex, usize> = x.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let perms = a
        .group()
        .elements()
        .map(|g| x.iter().map(|s| position[&a.act(g, s)]).collect())
        .collect();
    GAction::from_parts(a.group().clone(), sd, perms)
}

/// Why an action is not regular enough to quotient simplicially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityViolation {
    /// Two vertices of one simplex share an orbit.
    OrbitCollision { simplex: Simplex },
    /// Two simplices with the same orbit image that are not related by the action.
    ImageCollision { first: Simplex, second: Simplex },
}

/// Checks that the orbit map is injective on each simplex and that simplices with
/// equal orbit images lie in one group orbit.
pub fn regularity_violation(a: &GAction) -> Option<RegularityViolation> {
    let ids = a.orbit_ids();
    let mut seen: HashMap<Vec<usize>, &Simplex> = HashMap::new();
    for s in a.complex().iter() {
        let mut img: Vec<usize> = s.iter().map(|&v| ids[v]).collect();
        img.sort_unstable();
        if img.windows(2).any(|w| w[0] == w[1]) {
            return Some(RegularityViolation::OrbitCollision { simplex: s.clone() });
        }
        match seen.get(&img) {
            None => {
                seen.insert(img, s);
            }
            Some(first) => {
                if !a.group().elements().any(|g| &a.act(g, first) == s) {
                    return Some(RegularityViolation::ImageCollision {
                        first: (*first).clone(),
                        second: s.clone(),
                    });
                }
            }
        }
    }
    None
}

/// Orbit complex of a free action together with the projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// The action actually quotiented (after `subdivisions` barycentric subdivisions).
    pub model: GAction,
    pub complex: SimplicialComplex,
    pub projection: SimplicialMap,
    pub subdivisions: usize,
}

/// Quotient of a free action, subdividing up to twice until the action is regular.
pub fn quotient(a: &GAction) -> Result<Quotient, GComplexError> {
    a.require_free()?;
    let mut model = a.clone();
    let mut subdivisions = 0;
    while regularity_violation(&model).is_some() {
        if subdivisions == 2 {
            return Err(GComplexError::RegularityNotReached);
        }
        model = barycentric_subdivision(&model);
        subdivisions += 1;
    }
    let x = model.complex();
    let orbits = model.orbits();
    let ids = model.orbit_ids();
    let names = orbits
        .iter()
        .map(|o| format!("[{}]", x.vertex_name(o[0])))
        .collect();
    let gens = x
        .maximal_simplices()
        .iter()
        .map(|s| s.iter().map(|&v| ids[v]).collect())
        .collect();
    let complex = SimplicialComplex::from_generators(names, gens);
    let projection = SimplicialMap::new(x.clone(), complex.clone(), ids);
    Ok(Quotient {
        model,
        complex,
        projection,
        subdivisions,
    })
}

/// The G-space glued from `|G|` copies of `x` along the free G-subcomplex `x0`.
#[derive(Clone, Debug)]
pub struct Camomile {
    pub action: GAction,
    /// Subdivisions applied to `(x, x0)` to make `x0` a full subcomplex.
    pub subdivisions: usize,
    /// Index in `action` of each vertex of the (possibly subdivided) `x0`.
    pub boundary: Vec<usize>,
}

/// Builds the camomile of `x0 ⊂ x`.
///
/// Vertices are the vertices of `x0` (in `x0` order) followed by copies `a@g` of the
/// remaining vertices of `x`, grouped by `g`. Copy `g` of a simplex `s` of `x`
/// consists of `a@g` for `a ∉ x0` and `g·b` for `b ∈ x0`.
pub fn camomile(x: &SimplicialComplex, x0: &GAction) -> Result<Camomile, GComplexError> {
    x0.require_free()?;
    let mut x = x.clone();
    let mut x0 = x0.clone();
    let mut subdivisions = 0;
    loop {
        let emb = x0
            .complex()
            .embedding_into(&x)
            .ok_or(GComplexError::NotSubcomplex)?;
        if x0.complex().fullness_witness(&x, &emb).is_none() {
            return Ok(glue(&x, &x0, &emb, subdivisions));
        }
        if subdivisions == 1 {
            return Err(GComplexError::NotSubcomplex);
        }
        x = subdivide(&x);
        x0 = barycentric_subdivision(&x0);
        subdivisions += 1;
    }
}

fn glue(x: &SimplicialComplex, x0: &GAction, emb: &[usize], subdivisions: usize) -> Camomile {
    let group = x0.group();
    let q = group.order();
    let n0 = x0.complex().num_vertices();
    let mut in_x0 = vec![None; x.num_vertices()];
    for (i, &v) in emb.iter().enumerate() {
        in_x0[v] = Some(i);
    }
    let interior: Vec<usize> = (0..x.num_vertices())
        .filter(|&v| in_x0[v].is_none())
        .collect();
    let mut interior_pos = vec![usize::MAX; x.num_vertices()];
    for (i, &v) in interior.iter().enumerate() {
        interior_pos[v] = i;
    }
    let ni = interior.len();
    let copy = |g: usize, v: usize| n0 + g * ni + interior_pos[v];

    let mut names: Vec<String> = x0.complex().vertex_names().to_vec();
    for g in 0..q {
        names.extend(
            interior
                .iter()
                .map(|&v| format!("{}@{g}", x.vertex_name(v))),
        );
    }
    let mut gens = Vec::new();
    for s in x.maximal_simplices() {
        for g in 0..q {
            gens.push(
                s.iter()
                    .map(|&v| match in_x0[v] {
                        Some(b) => x0.act_vertex(g, b),
                        None => copy(g, v),
                    })
                    .collect(),
            );
        }
    }
    let complex = SimplicialComplex::from_generators(names, gens);
    let perms = group
        .elements()
        .map(|h| {
            let mut p: Vec<usize> = x0.perm(h).to_vec();
            for g in 0..q {
                p.extend(interior.iter().map(|&v| copy(group.mul(h, g), v)));
            }
            p
        })
        .collect();
    Camomile {
        action: GAction::from_parts(group.clone(), complex, perms),
        subdivisions,
        boundary: (0..n0).collect(),
    }
}
