//! Small standard complexes and actions used throughout the tests and examples.

use crate::gcomplex::{cone, join_power, FiniteGroup, GAction, SimplicialComplex, SimplicialMap};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// The cycle `C_n` on `v0..v{n-1}` (`n >= 3`).
pub fn cycle(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_generators(names(n), (0..n).map(|i| vec![i, (i + 1) % n]).collect())
}

/// `Z_q` rotating `C_n` by `n/q` steps.
pub fn cycle_rotation(n: usize, q: usize) -> GAction {
    assert!(n % q == 0);
    let step = n / q;
    GAction::from_generator(
        FiniteGroup::cyclic(q).unwrap(),
        cycle(n),
        (0..n).map(|i| (i + step) % n).collect(),
    )
    .unwrap()
}

/// `C_{2m}` with the antipodal involution.
pub fn cycle_antipodal(n: usize) -> GAction {
    cycle_rotation(n, 2)
}

/// Octahedron on `v0..v5`; `v_i` and `v_{i+3}` are antipodal.
pub fn octahedron() -> SimplicialComplex {
    let mut tris = Vec::new();
    for mask in 0..8 {
        tris.push((0..3).map(|i| i + 3 * (mask >> i & 1)).collect());
    }
    SimplicialComplex::from_generators(names(6), tris)
}

pub fn octahedron_antipodal() -> GAction {
    GAction::from_generator(
        FiniteGroup::cyclic(2).unwrap(),
        octahedron(),
        (0..6).map(|i| (i + 3) % 6).collect(),
    )
    .unwrap()
}

/// `S^0 = {a, b}` with the swap.
pub fn two_points_swap() -> GAction {
    let c = SimplicialComplex::new(&["a", "b"], &[] as &[Vec<&str>]).unwrap();
    GAction::from_generator(FiniteGroup::cyclic(2).unwrap(), c, vec![1, 0]).unwrap()
}

/// Cone with apex named `apex`.
pub fn cone_complex(x: &SimplicialComplex) -> SimplicialComplex {
    cone(x, "apex").unwrap()
}

/// `C_n -> C_m`, `v_i -> v_{i mod m}` (`m` divides `n`).
pub fn cycle_wrap(n: usize, m: usize) -> SimplicialMap {
    SimplicialMap::new(cycle(n), cycle(m), (0..n).map(|i| i % m).collect())
}

/// Five-vertex Möbius band: triangles `{i, i+1, i+2}` mod 5.
pub fn mobius_band() -> SimplicialComplex {
    SimplicialComplex::from_generators(
        names(5),
        (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect(),
    )
}

/// Boundary circle of [`mobius_band`]: edges `{i, i+2}`, same vertex names.
pub fn mobius_boundary() -> SimplicialComplex {
    SimplicialComplex::from_generators(names(5), (0..5).map(|i| vec![i, (i + 2) % 5]).collect())
}

/// Six-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    let tris: [[usize; 3]; 10] = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 6, 2],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 2],
        [5, 6, 3],
        [6, 2, 4],
    ];
    SimplicialComplex::from_generators(
        names(6),
        tris.iter()
            .map(|t| t.iter().map(|&v| v - 1).collect())
            .collect(),
    )
}

/// `J^n(Z_p)`.
pub fn join_power_cyclic(p: usize, n: usize) -> GAction {
    join_power(&FiniteGroup::cyclic(p).unwrap(), n).unwrap()
}

/// Free fixtures used by property tests.
pub fn free_fixtures() -> Vec<GAction> {
    vec![
        two_points_swap(),
        cycle_antipodal(4),
        cycle_antipodal(6),
        cycle_rotation(9, 3),
        cycle_rotation(12, 4),
        octahedron_antipodal(),
        join_power_cyclic(3, 2),
        join_power_cyclic(2, 4),
    ]
}
