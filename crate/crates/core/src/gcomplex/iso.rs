use super::{GAction, Simplex, SimplicialComplex};

/// A vertex bijection `a -> b` carrying simplices onto simplices, if one exists.
pub fn find_isomorphism(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<Vec<usize>> {
    find_equivariant_isomorphism(&GAction::trivial(a.clone()), &GAction::trivial(b.clone()))
}

/// An equivariant simplicial isomorphism between two actions of the same group
/// (same multiplication table), if one exists.
pub fn find_equivariant_isomorphism(a: &GAction, b: &GAction) -> Option<Vec<usize>> {
    let (x, y) = (a.complex(), b.complex());
    if a.group() != b.group() || x.f_vector() != y.f_vector() {
        return None;
    }
    let px = profiles(x);
    let py = profiles(y);
    let mut sorted_x = px.clone();
    let mut sorted_y = py.clone();
    sorted_x.sort();
    sorted_y.sort();
    if sorted_x != sorted_y {
        return None;
    }
    let orbits = a.orbits();
    // step at which each vertex gets assigned
    let mut step = vec![0; x.num_vertices()];
    for (i, o) in orbits.iter().enumerate() {
        for &v in o {
            step[v] = i;
        }
    }
    let mut checks: Vec<Vec<&Simplex>> = vec![Vec::new(); orbits.len()];
    for s in x.iter().filter(|s| s.len() > 1) {
        let last = s.iter().map(|&v| step[v]).max().unwrap();
        checks[last].push(s);
    }
    let mut search = IsoSearch {
        a,
        b,
        orbits: &orbits,
        checks: &checks,
        px: &px,
        py: &py,
        map: vec![usize::MAX; x.num_vertices()],
        used: vec![false; y.num_vertices()],
    };
    search.go(0).then_some(search.map)
}

// Number of simplices of each dimension containing each vertex.
fn profiles(x: &SimplicialComplex) -> Vec<Vec<usize>> {
    let mut p = vec![vec![0; x.dim().map_or(0, |d| d + 1)]; x.num_vertices()];
    for s in x.iter() {
        for &v in s.iter() {
            p[v][s.dim()] += 1;
        }
    }
    p
}

struct IsoSearch<'a> {
    a: &'a GAction,
    b: &'a GAction,
    orbits: &'a [Vec<usize>],
    checks: &'a [Vec<&'a Simplex>],
    px: &'a [Vec<usize>],
    py: &'a [Vec<usize>],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn go(&mut self, unit: usize) -> bool {
        if unit == self.orbits.len() {
            return true;
        }
        let rep = self.orbits[unit][0];
        for t in 0..self.b.complex().num_vertices() {
            if self.used[t] || self.px[rep] != self.py[t] {
                continue;
            }
            if let Some(assigned) = self.assign(rep, t) {
                let ok = self.checks[unit].iter().all(|s| {
                    self.b
                        .complex()
                        .spans_simplex(&s.iter().map(|&v| self.map[v]).collect::<Vec<_>>())
                });
                if ok && self.go(unit + 1) {
                    return true;
                }
                for v in assigned {
                    self.used[self.map[v]] = false;
                    self.map[v] = usize::MAX;
                }
            }
        }
        false
    }

    // Propagates rep -> t along the group; returns the newly assigned vertices, or
    // `None` (with nothing changed) if the propagation is inconsistent.
    fn assign(&mut self, rep: usize, t: usize) -> Option<Vec<usize>> {
        let mut assigned = Vec::new();
        for g in self.a.group().elements() {
            let v = self.a.act_vertex(g, rep);
            let w = self.b.act_vertex(g, t);
            if self.map[v] == usize::MAX {
                if self.used[w] {
                    break;
                }
                self.map[v] = w;
                self.used[w] = true;
                assigned.push(v);
            } else if self.map[v] != w {
                break;
            }
            if g + 1 == self.a.group().order() {
                return Some(assigned);
            }
        }
        for v in assigned {
            self.used[self.map[v]] = false;
            self.map[v] = usize::MAX;
        }
        None
    }
}
