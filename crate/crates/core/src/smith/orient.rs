use std::collections::{HashMap, VecDeque};

use super::cochain::first_non_simplicial;
use super::SmithError;
use crate::gcomplex::{sort_sign, Simplex, SimplicialComplex, SimplicialMap};

/// Coherent signs on the top simplices of an orientable pseudomanifold; the
/// signed sum is a cycle over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub dim: usize,
    /// One sign per top simplex, in basis order.
    pub signs: Vec<i32>,
}

/// Fundamental cycle of a connected pseudomanifold, found by propagating signs
/// across shared facets.
///
/// Dimension 0 is the two-point sphere with signs `(+1, −1)`.
pub fn fundamental_cycle(x: &SimplicialComplex) -> Result<Orientation, SmithError> {
    let n = x.dim().ok_or(SmithError::EmptyComplex)?;
    if let Some(s) = x.maximal_simplices().into_iter().find(|s| s.dim() != n) {
        return Err(SmithError::NotPseudomanifold {
            simplex: x.simplex_names(&s),
            cofaces: 0,
        });
    }
    if n == 0 {
        if x.num_vertices() != 2 {
            return Err(SmithError::NotPseudomanifold {
                simplex: Vec::new(),
                cofaces: x.num_vertices(),
            });
        }
        return Ok(Orientation {
            dim: 0,
            signs: vec![1, -1],
        });
    }
    let tops = x.simplices(n);
    // facet index → [(top simplex, incidence sign)]
    let mut cofaces: HashMap<usize, Vec<(usize, i32)>> = HashMap::new();
    for (t, s) in tops.iter().enumerate() {
        for j in 0..s.len() {
            let f = x.index_of(&s.facet(j)).expect("closed under faces");
            cofaces
                .entry(f)
                .or_default()
                .push((t, if j % 2 == 0 { 1 } else { -1 }));
        }
    }
    for (f, list) in &cofaces {
        if list.len() != 2 {
            return Err(SmithError::NotPseudomanifold {
                simplex: x.simplex_names(&x.simplices(n - 1)[*f]),
                cofaces: list.len(),
            });
        }
    }
    let mut facets_of: Vec<Vec<usize>> = vec![Vec::new(); tops.len()];
    for (&f, list) in &cofaces {
        for &(t, _) in list {
            facets_of[t].push(f);
        }
    }
    for fs in facets_of.iter_mut() {
        fs.sort_unstable();
    }
    let mut signs = vec![0i32; tops.len()];
    let mut parent: Vec<Option<usize>> = vec![None; tops.len()];
    signs[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for &f in &facets_of[t] {
            let pair = &cofaces[&f];
            let (mine, other) = if pair[0].0 == t {
                (pair[0], pair[1])
            } else {
                (pair[1], pair[0])
            };
            // the facet must cancel in the boundary
            let want = -mine.1 * other.1 * signs[t];
            if signs[other.0] == 0 {
                signs[other.0] = want;
                parent[other.0] = Some(t);
                queue.push_back(other.0);
            } else if signs[other.0] != want {
                let cycle = failure_cycle(&parent, t, other.0)
                    .into_iter()
                    .map(|i| x.simplex_names(&tops[i]))
                    .collect();
                return Err(SmithError::NonOrientable { cycle });
            }
        }
    }
    if let Some(t) = signs.iter().position(|&s| s == 0) {
        return Err(SmithError::NotStronglyConnected {
            simplex: x.simplex_names(&tops[t]),
        });
    }
    Ok(Orientation { dim: n, signs })
}

/// Tree path `a → lca → b`, closed by the offending facet between `a` and `b`.
fn failure_cycle(parent: &[Option<usize>], a: usize, b: usize) -> Vec<usize> {
    let path = |mut v: usize| {
        let mut p = vec![v];
        while let Some(u) = parent[v] {
            p.push(u);
            v = u;
        }
        p.reverse();
        p
    };
    let (pa, pb) = (path(a), path(b));
    let common = pa.iter().zip(&pb).take_while(|(x, y)| x == y).count();
    let mut cycle: Vec<usize> = pa[common - 1..].iter().rev().copied().collect();
    cycle.extend(&pb[common..]);
    cycle
}

/// Integer degree of `f` between oriented pseudomanifolds of equal dimension.
pub fn degree(
    f: &SimplicialMap,
    source: &Orientation,
    target: &Orientation,
) -> Result<i64, SmithError> {
    if let Some(s) = first_non_simplicial(f) {
        return Err(SmithError::NotSimplicial { simplex: s });
    }
    if source.dim != target.dim {
        return Err(SmithError::DimensionMismatch {
            source_dim: source.dim,
            target_dim: target.dim,
        });
    }
    let n = source.dim;
    let mut pushed = vec![0i64; target.signs.len()];
    for (s, &o) in f.source.simplices(n).iter().zip(&source.signs) {
        let image = f.image_list(s);
        let sorted = Simplex::new(image.clone());
        if sorted.len() != image.len() {
            continue;
        }
        let j = f.target.index_of(&sorted).expect("map is simplicial");
        pushed[j] += (o * sort_sign(&image)) as i64;
    }
    let lambda = pushed[0] * target.signs[0] as i64;
    for (j, (&c, &o)) in pushed.iter().zip(&target.signs).enumerate() {
        if c * o as i64 != lambda {
            return Err(SmithError::InconsistentDegree {
                simplex: f.target.simplex_names(&f.target.simplices(n)[j]),
                expected: lambda,
                found: c * o as i64,
            });
        }
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gcomplex::subdivide;

    /// Integer boundary of the signed top chain, by facets.
    fn boundary_vanishes(x: &SimplicialComplex, o: &Orientation) -> bool {
        let n = o.dim;
        let mut acc: HashMap<Simplex, i64> = HashMap::new();
        for (s, &sg) in x.simplices(n).iter().zip(&o.signs) {
            for j in 0..s.len() {
                *acc.entry(s.facet(j)).or_default() +=
                    if j % 2 == 0 { sg as i64 } else { -sg as i64 };
            }
        }
        acc.values().all(|&v| v == 0)
    }

    #[test]
    fn octahedron_orientable() {
        let x = fixtures::octahedron();
        let o = fundamental_cycle(&x).unwrap();
        assert_eq!(o.signs.len(), 8);
        assert!(boundary_vanishes(&x, &o));
    }

    #[test]
    fn cycle_orientable() {
        let x = fixtures::cycle(6);
        let o = fundamental_cycle(&x).unwrap();
        assert!(boundary_vanishes(&x, &o));
    }

    #[test]
    fn rp2_non_orientable() {
        for x in [fixtures::rp2(), subdivide(&fixtures::rp2())] {
            match fundamental_cycle(&x) {
                Err(SmithError::NonOrientable { cycle }) => assert!(cycle.len() >= 2),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn mobius_band_is_not_closed() {
        assert!(matches!(
            fundamental_cycle(&fixtures::mobius_band()),
            Err(SmithError::NotPseudomanifold { cofaces: 1, .. })
        ));
    }

    #[test]
    fn identity_and_wrap_degrees() {
        let c6 = fixtures::cycle(6);
        let o6 = fundamental_cycle(&c6).unwrap();
        assert_eq!(degree(&SimplicialMap::identity(&c6), &o6, &o6).unwrap(), 1);
        let o12 = fundamental_cycle(&fixtures::cycle(12)).unwrap();
        let d = degree(&fixtures::cycle_wrap(12, 6), &o12, &o6).unwrap();
        assert_eq!(d.abs(), 2);
    }

    #[test]
    fn antipodal_octahedron_degree() {
        let a = fixtures::octahedron_antipodal();
        let o = fundamental_cycle(a.complex()).unwrap();
        let f = SimplicialMap::new(a.complex().clone(), a.complex().clone(), a.perm(1).to_vec());
        assert_eq!(degree(&f, &o, &o).unwrap(), -1);
    }

    #[test]
    fn degree_is_multiplicative() {
        let c = |n| fixtures::cycle(n);
        let o = |n| fundamental_cycle(&c(n)).unwrap();
        let f = fixtures::cycle_wrap(12, 6);
        let g = fixtures::cycle_wrap(6, 3);
        let reflect = SimplicialMap::new(c(3), c(3), vec![0, 2, 1]);
        let fg = f.then(&g);
        let fgr = fg.then(&reflect);
        let df = degree(&f, &o(12), &o(6)).unwrap();
        let dg = degree(&g, &o(6), &o(3)).unwrap();
        let dr = degree(&reflect, &o(3), &o(3)).unwrap();
        assert_eq!(dr, -1);
        assert_eq!(degree(&fg, &o(12), &o(3)).unwrap(), df * dg);
        assert_eq!(degree(&fgr, &o(12), &o(3)).unwrap(), df * dg * dr);
    }

    #[test]
    fn constant_map_has_degree_zero() {
        let c6 = fixtures::cycle(6);
        let o6 = fundamental_cycle(&c6).unwrap();
        let k = SimplicialMap::new(c6.clone(), c6, vec![0; 6]);
        assert_eq!(degree(&k, &o6, &o6).unwrap(), 0);
    }

    #[test]
    fn two_point_sphere() {
        let pts = fixtures::two_points_swap();
        let o = fundamental_cycle(pts.complex()).unwrap();
        let swap = SimplicialMap::new(pts.complex().clone(), pts.complex().clone(), vec![1, 0]);
        assert_eq!(degree(&swap, &o, &o).unwrap(), -1);
    }
}
