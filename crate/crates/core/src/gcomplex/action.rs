use super::{sort_sign, FiniteGroup, GComplexError, Simplex, SimplicialComplex};

/// A simplicial action of a finite group on the vertices of a complex.
///
/// `perm(g)[v]` is the image of vertex `v` under `g`. Construction validates that
/// `g -> perm(g)` is a homomorphism and that simplices go to simplices. Freeness
/// is computed, never assumed: a simplicial action is free when no non-identity
/// element maps a simplex onto itself as a set (such a simplex would have a
/// fixed barycenter).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GAction {
    group: FiniteGroup,
    complex: SimplicialComplex,
    perms: Vec<Vec<usize>>,
    free: bool,
}

impl GAction {
    /// One vertex permutation per group element.
    pub fn new(
        group: FiniteGroup,
        complex: SimplicialComplex,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self, GComplexError> {
        let n = complex.num_vertices();
        if perms.len() != group.order() {
            return Err(GComplexError::PermCount {
                expected: group.order(),
                got: perms.len(),
            });
        }
        for (g, p) in perms.iter().enumerate() {
            let mut seen = vec![false; n];
            let ok = p.len() == n
                && p.iter()
                    .all(|&v| v < n && !std::mem::replace(&mut seen[v], true));
            if !ok {
                return Err(GComplexError::NotAPermutation { element: g });
            }
        }
        let e = group.identity();
        if let Some(v) = (0..n).find(|&v| perms[e][v] != v) {
            return Err(GComplexError::NotHomomorphism {
                g: e,
                h: e,
                vertex: v,
            });
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if let Some(v) = (0..n).find(|&v| perms[gh][v] != perms[g][perms[h][v]]) {
                    return Err(GComplexError::NotHomomorphism { g, h, vertex: v });
                }
            }
        }
        let maximal = complex.maximal_simplices();
        for g in group.elements() {
            for s in &maximal {
                let image = Simplex::new(s.iter().map(|&v| perms[g][v]).collect());
                if !complex.contains(&image) {
                    return Err(GComplexError::NotSimplicial {
                        element: g,
                        simplex: complex.simplex_names(s),
                    });
                }
            }
        }
        let mut action = Self {
            group,
            complex,
            perms,
            free: false,
        };
        action.free = action.freeness_witness().is_none();
        Ok(action)
    }

    /// Completes the action from the permutation of the generator `1` of a
    /// standard cyclic group.
    pub fn from_generator(
        group: FiniteGroup,
        complex: SimplicialComplex,
        generator: Vec<usize>,
    ) -> Result<Self, GComplexError> {
        if !group.is_standard_cyclic() {
            return Err(GComplexError::NotCyclic);
        }
        let n = complex.num_vertices();
        let q = group.order();
        let mut perms = vec![(0..n).collect::<Vec<_>>()];
        if q > 1 {
            if generator.len() != n {
                return Err(GComplexError::NotAPermutation { element: 1 });
            }
            for k in 1..q {
                let prev: &Vec<usize> = &perms[k - 1];
                let next = prev
                    .iter()
                    .map(|&v| generator.get(v).copied().unwrap_or(usize::MAX))
                    .collect();
                perms.push(next);
            }
        }
        Self::new(group, complex, perms)
    }

    /// The trivial group acting on `complex`.
    pub fn trivial(complex: SimplicialComplex) -> Self {
        let n = complex.num_vertices();
        Self::new(
            FiniteGroup::cyclic(1).unwrap(),
            complex,
            vec![(0..n).collect()],
        )
        .expect("identity action is valid")
    }

    /// Fails with a witness simplex unless the action is free.
    pub fn require_free(&self) -> Result<(), GComplexError> {
        match self.freeness_witness() {
            None => Ok(()),
            Some((g, s)) => Err(GComplexError::NotFree {
                element: g,
                simplex: self.complex.simplex_names(&s),
            }),
        }
    }

    /// First `(g != e, simplex)` with `g·s = s`, scanning elements then simplices in
    /// basis order.
    pub fn freeness_witness(&self) -> Option<(usize, Simplex)> {
        for g in self.group.elements() {
            if g == self.group.identity() {
                continue;
            }
            for s in self.complex.iter() {
                if &self.act(g, s) == s {
                    return Some((g, s.clone()));
                }
            }
        }
        None
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn perm(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn is_free(&self) -> bool {
        self.free
    }

    pub fn act_vertex(&self, g: usize, v: usize) -> usize {
        self.perms[g][v]
    }

    /// Image of a simplex, sorted.
    pub fn act(&self, g: usize, s: &Simplex) -> Simplex {
        Simplex::new(s.iter().map(|&v| self.perms[g][v]).collect())
    }

    /// Image of an oriented simplex: sorted image and the sign of the sort.
    pub fn act_signed(&self, g: usize, s: &Simplex) -> (Simplex, i32) {
        let image: Vec<usize> = s.iter().map(|&v| self.perms[g][v]).collect();
        let sign = sort_sign(&image);
        (Simplex::new(image), sign)
    }

    /// Vertex orbits, each sorted, ordered by their smallest vertex.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.complex.num_vertices();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if done[v] {
                continue;
            }
            let mut orbit: Vec<usize> = self.perms.iter().map(|p| p[v]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &w in &orbit {
                done[w] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Orbit id of every vertex (ids follow `orbits()` order).
    pub fn orbit_ids(&self) -> Vec<usize> {
        let mut ids = vec![0; self.complex.num_vertices()];
        for (i, o) in self.orbits().iter().enumerate() {
            for &v in o {
                ids[v] = i;
            }
        }
        ids
    }

    /// Restriction to the cyclic subgroup generated by `g`, re-indexed as the
    /// standard `Z_m` with element `k` acting as `g^k`.
    pub fn restrict_to_cyclic(&self, g: usize) -> GAction {
        let powers = self.group.cyclic_subgroup(g);
        let group = FiniteGroup::cyclic(powers.len()).expect("nonzero order");
        let perms = powers.iter().map(|&x| self.perms[x].clone()).collect();
        GAction::new(group, self.complex.clone(), perms).expect("restriction of a valid action")
    }

    /// Builds an action whose validity is guaranteed by construction; checks only
    /// run in debug builds.
    pub(crate) fn from_parts(
        group: FiniteGroup,
        complex: SimplicialComplex,
        perms: Vec<Vec<usize>>,
    ) -> GAction {
        if cfg!(debug_assertions) {
            return GAction::new(group, complex, perms).expect("constructed action is valid");
        }
        let mut a = GAction {
            group,
            complex,
            perms,
            free: false,
        };
        a.free = a.freeness_witness().is_none();
        a
    }
}
