//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p gindex --test acceptance`. Every tolerance is exact;
//! runtime limits are wall-clock and apply to the criterion's own work.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gindex::certify::{check_camomile, check_degree_mod_order, CheckStatus};
use gindex::fixtures;
use gindex::gcomplex::{
    barycentric_subdivision, camomile, find_equivariant_isomorphism, join, join_power,
    validate_map, GAction, SimplicialMap,
};
use gindex::smith::{
    degree, fundamental_cycle, ind_p, is_nct, offered_subgroups, validate_index_witness,
    Coefficients, FpMatrix, SmithComplex,
};
use gindex::tucker::{
    find_complementary_edges, labeling_to_map, search_equivariant_map, search_labeling,
    tucker_harness, validate_labeling, Label, Labeling, Mode, SearchOptions, SearchOutcome,
    TuckerVerdict,
};

const BUDGET: u64 = 10_000_000;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(format!("{t:.2?} < {limit:?}"))
}

/// Every assignment of one label per orbit representative, extended by
/// equivariance; each of `free_vertices` gets every label independently.
fn all_labelings(
    nv: usize,
    q: usize,
    n: usize,
    orbits: &[(usize, Vec<(usize, usize)>)],
    free_vertices: &[usize],
) -> Vec<Labeling> {
    let choices = q * n;
    let slots = orbits.len() + free_vertices.len();
    let total = choices.pow(slots as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut labels = vec![Label::new(0, 1); nv];
        let mut c = code;
        for (_, members) in orbits {
            let pick = c % choices;
            c /= choices;
            for &(v, h) in members {
                labels[v] = Label::new(h ^ (pick / n), pick % n + 1);
            }
        }
        for &v in free_vertices {
            let pick = c % choices;
            c /= choices;
            labels[v] = Label::new(pick / n, pick % n + 1);
        }
        out.push(Labeling { n, labels });
    }
    out
}

/// Orbits of a Z_2 action as `(representative, [(vertex, element)])`.
fn z2_orbits(a: &GAction, emb: &[usize]) -> Vec<(usize, Vec<(usize, usize)>)> {
    a.orbits()
        .into_iter()
        .map(|o| {
            let r = o[0];
            let members = [0, 1]
                .iter()
                .map(|&h| (emb[a.act_vertex(h, r)], h))
                .collect();
            (emb[r], members)
        })
        .collect()
}

/// Equivariant vertex maps `source → target` by brute force over orbit
/// representatives, filtered by the simplicial condition on maximal simplices.
fn brute_force_maps(source: &GAction, target: &GAction) -> Vec<Vec<usize>> {
    let x = source.complex();
    let y = target.complex();
    let reps: Vec<usize> = source.orbits().iter().map(|o| o[0]).collect();
    let m = y.num_vertices();
    let total = m.pow(reps.len() as u32);
    let maximal = x.maximal_simplices();
    let mut out = Vec::new();
    for code in 0..total {
        let mut f = vec![usize::MAX; x.num_vertices()];
        let mut c = code;
        for &r in &reps {
            let w = c % m;
            c /= m;
            for g in source.group().elements() {
                f[source.act_vertex(g, r)] = target.act_vertex(g, w);
            }
        }
        let ok = maximal.iter().all(|s| {
            let img: Vec<usize> = s.iter().map(|&v| f[v]).collect();
            y.spans_simplex(&img)
        });
        if ok {
            out.push(f);
        }
    }
    out
}

/// Winding number of a vertex self-map of `C_n`.
fn winding(f: &[usize]) -> i64 {
    let n = f.len() as i64;
    let total: i64 = (0..f.len())
        .map(|i| {
            let d = (f[(i + 1) % f.len()] as i64 - f[i] as i64).rem_euclid(n);
            match d {
                0 => 0,
                1 => 1,
                d if d == n - 1 => -1,
                _ => panic!("not simplicial"),
            }
        })
        .sum();
    total / n
}

fn index_with_witness(a: &GAction, p: usize) -> Result<usize, String> {
    let r = ind_p(a, p, None).map_err(|e| e.to_string())?;
    ensure(r.classes[r.index].nonzero, "witness class is zero")?;
    ensure(
        validate_index_witness(a, r.generator, r.index, &r.witness),
        "witness does not re-validate",
    )?;
    Ok(r.index)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let octa = index_with_witness(&fixtures::octahedron_antipodal(), 2)?;
    let hex = index_with_witness(&fixtures::cycle_antipodal(6), 2)?;
    ensure(octa == 2, format!("ind_2(octahedron) = {octa}, expected 2"))?;
    ensure(hex == 1, format!("ind_2(C_6) = {hex}, expected 1"))?;
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!(
        "ind_2(octahedron)=2, ind_2(C_6)=1, witnesses re-validate; {t}"
    ))
}

const JOIN_CASES: [(usize, usize); 7] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)];

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for (p, n) in JOIN_CASES {
        let got = index_with_witness(&fixtures::join_power_cyclic(p, n), p)?;
        ensure(
            got == n - 1,
            format!("ind_{p}(J^{n}(Z_{p})) = {got}, expected {}", n - 1),
        )?;
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("ind_p(J^n(Z_p)) = n-1 on all 7 cases; {t}"))
}

fn criterion_3() -> Outcome {
    let mut cases: Vec<(String, GAction, usize)> = vec![
        ("octahedron".into(), fixtures::octahedron_antipodal(), 2),
        ("C_6".into(), fixtures::cycle_antipodal(6), 2),
    ];
    for (p, n) in JOIN_CASES {
        cases.push((
            format!("J^{n}(Z_{p})"),
            fixtures::join_power_cyclic(p, n),
            p,
        ));
    }
    for (name, a, p) in &cases {
        let before = ind_p(a, *p, None).map_err(|e| e.to_string())?.index;
        let after = index_with_witness(&barycentric_subdivision(a), *p)?;
        ensure(
            before == after,
            format!("{name}: ind_{p} = {before}, after subdivision {after}"),
        )?;
    }
    Ok(format!(
        "ind_p(sd X) = ind_p(X) on {} fixtures",
        cases.len()
    ))
}

fn criterion_4() -> Outcome {
    let hex = fixtures::cycle_antipodal(6);
    let x = hex.complex();
    let ident: Vec<usize> = (0..6).collect();
    let all = all_labelings(6, 2, 1, &z2_orbits(&hex, &ident), &[]);
    ensure(
        all.len() == 8,
        format!("{} equivariant labelings", all.len()),
    )?;
    for l in &all {
        ensure(
            validate_labeling(l, &Mode::Full(&hex))
                .map_err(|e| e.to_string())?
                .is_equivariant(),
            "oracle produced a non-equivariant labeling",
        )?;
        ensure(
            !find_complementary_edges(x, l).is_empty(),
            format!("labeling {:?} has no complementary edge", l.labels),
        )?;
    }
    let r1 = search_labeling(&Mode::Full(&hex), 1, SearchOptions::naive(BUDGET))
        .map_err(|e| e.to_string())?;
    ensure(
        r1.outcome == SearchOutcome::Exhausted && r1.leaves_explored == 8,
        format!(
            "n=1 search: {:?} after {} leaves",
            r1.outcome, r1.leaves_explored
        ),
    )?;
    let r2 = search_labeling(&Mode::Full(&hex), 2, SearchOptions::new(BUDGET))
        .map_err(|e| e.to_string())?;
    let SearchOutcome::Found(l) = r2.outcome else {
        return Err(format!("n=2 search: {:?}", r2.outcome));
    };
    ensure(
        find_complementary_edges(x, &l).is_empty(),
        "found labeling has a complementary edge",
    )?;
    let f = labeling_to_map(&hex, &l).map_err(|e| e.to_string())?;
    let j2 = fixtures::join_power_cyclic(2, 2);
    ensure(
        validate_map(&f, Some((&hex, &j2))).is_valid(),
        "labeling map is not a valid equivariant map",
    )?;
    Ok("8/8 (Z_2,1)-labelings have a complementary edge; (Z_2,2)-labeling found, C_6 -> J^2(Z_2) validates".into())
}

fn disk_case(m: usize) -> Result<(usize, u64), String> {
    let boundary = fixtures::cycle_antipodal(m);
    let disk = fixtures::cone_complex(boundary.complex());
    let emb = boundary
        .complex()
        .embedding_into(&disk)
        .ok_or("boundary does not embed")?;
    let apex = disk.vertex_index("apex").ok_or("no apex")?;
    let all = all_labelings(
        disk.num_vertices(),
        2,
        2,
        &z2_orbits(&boundary, &emb),
        &[apex],
    );
    let mode = Mode::Boundary {
        complex: &disk,
        x0: &boundary,
    };
    for l in &all {
        ensure(
            validate_labeling(l, &mode)
                .map_err(|e| e.to_string())?
                .is_equivariant(),
            "oracle produced a non-equivariant labeling",
        )?;
        ensure(
            !find_complementary_edges(&disk, l).is_empty(),
            format!(
                "cone(C_{m}): labeling {:?} has no complementary edge",
                l.labels
            ),
        )?;
    }
    let naive = tucker_harness(&disk, &boundary, 2, SearchOptions::naive(BUDGET))
        .map_err(|e| e.to_string())?;
    let pruned = tucker_harness(&disk, &boundary, 2, SearchOptions::new(BUDGET))
        .map_err(|e| e.to_string())?;
    for r in [&naive, &pruned] {
        ensure(
            r.verdict == TuckerVerdict::AllHaveComplementaryEdge,
            format!("cone(C_{m}): harness verdict {:?}", r.verdict),
        )?;
    }
    ensure(
        naive.leaves_explored == all.len() as u64,
        format!(
            "cone(C_{m}): naive search explored {} leaves, oracle has {}",
            naive.leaves_explored,
            all.len()
        ),
    )?;
    Ok((all.len(), naive.leaves_explored))
}

fn criterion_5() -> Outcome {
    let (c4, _) = disk_case(4)?;
    ensure(
        c4 == 64,
        format!("cone(C_4) has {c4} labelings, expected 64"),
    )?;
    let (c6, _) = disk_case(6)?;
    Ok(format!(
        "cone(C_4): {c4}/64 labelings complementary; cone(C_6): {c6}/{c6} complementary"
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let octa = fixtures::octahedron_antipodal();
    let square = fixtures::cycle_antipodal(4);
    let down = search_equivariant_map(&octa, &square, SearchOptions::new(BUDGET))
        .map_err(|e| e.to_string())?;
    ensure(
        down.outcome == SearchOutcome::Exhausted,
        format!("octahedron -> square: {:?}", down.outcome),
    )?;
    ensure(
        brute_force_maps(&octa, &square).is_empty(),
        "brute force finds a map octahedron -> square",
    )?;
    let up = search_equivariant_map(&square, &octa, SearchOptions::new(BUDGET))
        .map_err(|e| e.to_string())?;
    let SearchOutcome::Found(f) = up.outcome else {
        return Err(format!("square -> octahedron: {:?}", up.outcome));
    };
    ensure(
        validate_map(&f, Some((&square, &octa))).is_valid(),
        "found map does not validate",
    )?;
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "octahedron -> square exhausted ({} leaves), square -> octahedron found; {t}",
        down.leaves_explored
    ))
}

fn degree_case(a: &GAction) -> Result<Vec<i64>, String> {
    let q = a.group().order() as i64;
    let report = check_degree_mod_order(a, BUDGET).map_err(|e| e.to_string())?;
    ensure(
        report.status == CheckStatus::Holds,
        format!("status {}", report.status.tag()),
    )?;
    let mut oracle: Vec<i64> = brute_force_maps(a, a).iter().map(|f| winding(f)).collect();
    let mut got = report.degrees.clone();
    oracle.sort_unstable();
    got.sort_unstable();
    ensure(
        got == oracle,
        format!("degrees {got:?} differ from winding numbers {oracle:?}"),
    )?;
    ensure(
        oracle.iter().all(|d| (d - 1).rem_euclid(q) == 0),
        format!("a degree is not 1 mod {q}: {oracle:?}"),
    )?;
    let o = fundamental_cycle(a.complex()).map_err(|e| e.to_string())?;
    let id = SimplicialMap::identity(a.complex());
    ensure(
        degree(&id, &o, &o).map_err(|e| e.to_string())? == 1,
        "identity has degree != 1",
    )?;
    Ok(report.distinct_degrees())
}

fn criterion_7() -> Outcome {
    let c12 = degree_case(&fixtures::cycle_rotation(12, 4))?;
    let c6 = degree_case(&fixtures::cycle_antipodal(6))?;
    Ok(format!(
        "C_12/Z_4 degrees {c12:?} all = 1 mod 4; C_6/Z_2 degrees {c6:?} all odd"
    ))
}

fn criterion_8() -> Outcome {
    let s0 = fixtures::two_points_swap();
    let c = camomile(&fixtures::cone_complex(s0.complex()), &s0).map_err(|e| e.to_string())?;
    ensure(
        find_equivariant_isomorphism(&c.action, &fixtures::join_power_cyclic(2, 2)).is_some(),
        "camomile(cone(S^0), S^0) is not isomorphic to J^2(Z_2)",
    )?;
    let hex = fixtures::cycle_antipodal(6);
    let cone = fixtures::cone_complex(hex.complex());
    let c6 = camomile(&cone, &hex).map_err(|e| e.to_string())?;
    let i = index_with_witness(&c6.action, 2)?;
    ensure(i == 2, format!("ind_2(camomile(cone(C_6))) = {i}"))?;
    let report = check_camomile(&cone, &hex, 1, 2).map_err(|e| e.to_string())?;
    ensure(
        report.status == CheckStatus::Holds,
        format!("camomile check: {}", report.status.tag()),
    )?;
    Ok("camomile(cone(S^0)) = J^2(Z_2); ind_2(camomile(cone(C_6))) = 2 = 1 + 1".into())
}

fn criterion_9() -> Outcome {
    let band = fixtures::mobius_band();
    let boundary = fixtures::mobius_boundary();
    let emb = boundary
        .embedding_into(&band)
        .ok_or("boundary does not embed")?;
    let h = SimplicialMap::new(boundary, band, emb);
    ensure(
        validate_map(&h, None).is_valid(),
        "inclusion is not simplicial",
    )?;
    let f2 = is_nct(&h, 1, Coefficients::Prime(2)).map_err(|e| e.to_string())?;
    let f3 = is_nct(&h, 1, Coefficients::Prime(3)).map_err(|e| e.to_string())?;
    ensure(f2, "not 1-c.t. over F_2")?;
    ensure(!f3, "1-c.t. over F_3")?;
    Ok("Möbius boundary inclusion: 1-c.t. over F_2, not over F_3".into())
}

fn smith_fixtures() -> Vec<(String, GAction)> {
    let mut v: Vec<(String, GAction)> = fixtures::free_fixtures()
        .into_iter()
        .enumerate()
        .map(|(i, a)| (format!("fixture {i}"), a))
        .collect();
    v.push((
        "sd C_6".into(),
        barycentric_subdivision(&fixtures::cycle_antipodal(6)),
    ));
    v.push((
        "sd octahedron".into(),
        barycentric_subdivision(&fixtures::octahedron_antipodal()),
    ));
    v.push(("J^3(Z_3)".into(), fixtures::join_power_cyclic(3, 3)));
    v
}

fn criterion_10() -> Outcome {
    let mut checked = 0;
    for (name, a) in smith_fixtures() {
        for (p, g) in offered_subgroups(&a) {
            let s = SmithComplex::for_subgroup(&a, g).map_err(|e| e.to_string())?;
            let tag = format!("{name}, p={p}, generator {g}");
            ensure(
                s.identities_hold(),
                format!("{tag}: algebraic identity fails"),
            )?;
            for k in 0..s.top() {
                ensure(
                    generator_has_order_p(&s, k, p),
                    format!("{tag}: t^p != 1 in degree {k}"),
                )?;
            }
            if let Some(n) = s.exactness().into_iter().find(|n| !n.exact()) {
                return Err(format!("{tag}: not exact at {n:?}"));
            }
            for k in 0..=s.top() {
                ensure(
                    s.transfer_composite(k).is_zero(),
                    format!("{tag}: transfer composite nonzero in degree {k}"),
                )?;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "d∘d=0, ρ^p=0, σ=ρ^(p-1), both sequences exact, π^!∘π^*=0 on {checked} (fixture, subgroup) pairs"
    ))
}

fn criterion_11() -> Outcome {
    let mut leaves = Vec::new();
    for a in [fixtures::two_points_swap(), fixtures::cycle_antipodal(4)] {
        let j1 = join_power(a.group(), 1).map_err(|e| e.to_string())?;
        let joined = join(&a, &j1).map_err(|e| e.to_string())?;
        let r = search_equivariant_map(&joined, &a, SearchOptions::new(BUDGET))
            .map_err(|e| e.to_string())?;
        ensure(
            r.outcome == SearchOutcome::Exhausted,
            format!("X*G -> X: {:?}", r.outcome),
        )?;
        ensure(
            brute_force_maps(&joined, &a).is_empty(),
            "brute force finds a map X*G -> X",
        )?;
        leaves.push(r.leaves_explored);
    }
    Ok(format!(
        "no map X*Z_2 -> X for 2 points ({} leaves) and square ({} leaves)",
        leaves[0], leaves[1]
    ))
}

/// `t^p = 1` for the generator's cochain matrix, so `ρ^p = (t − 1)^p = t^p − 1 = 0`
/// in characteristic `p`.
fn generator_has_order_p(s: &SmithComplex, k: usize, p: usize) -> bool {
    let c = s.cochains();
    let t = c.group_matrix(1, k).expect("degree in range");
    t.pow(p) == FpMatrix::identity(c.len(k), p as u32)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("ind_2 of octahedron and C_6 with witnesses", criterion_1),
        ("ind_p(J^n(Z_p)) = n-1", criterion_2),
        ("subdivision invariance", criterion_3),
        ("complementary edges on the hexagon", criterion_4),
        ("Tucker's lemma on disks", criterion_5),
        ("map-search soundness", criterion_6),
        ("degree law", criterion_7),
        ("camomile", criterion_8),
        ("n-c.t. detection", criterion_9),
        ("Smith algebra", criterion_10),
        ("no equivariant map X*G -> X", criterion_11),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        match result {
            Ok(detail) => println!(
                "PASS criterion {:>2} [{title}] tolerance=exact: {detail}",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL criterion {:>2} [{title}] tolerance=exact: {why}",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
