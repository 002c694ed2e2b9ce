use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gindex_cli::formats::{
    to_json, ActionFile, CertificateFile, ComplexFile, IndexFile, QuotientFile, SearchWitness,
    VerdictFile,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn gindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gindex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Parses `text` with the typed parser and checks that re-emitting gives the same bytes.
fn round_trip<T: DeserializeOwned + Serialize>(text: &str) -> T {
    let value: T = serde_json::from_str(text).expect("emitted file parses");
    assert_eq!(to_json(&value), text, "re-emitted file differs");
    value
}

fn run_to_file(dir: &TempDir, name: &str, args: &[&str]) -> (Output, String) {
    let path = dir.path().join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_owned();
    full.extend(["--out", &p]);
    let o = gindex(&full);
    let text = fs::read_to_string(&path).unwrap_or_default();
    (o, text)
}

/// Runs `index` and returns the printed index.
fn index_of(action: &Path) -> String {
    let o = gindex(&["index", s(action), "--prime", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    round_trip::<IndexFile>(&stdout(&o));
    stderr(&o).trim().to_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn index_on_octahedron_prints_two_and_writes_witness() {
    let dir = TempDir::new().unwrap();
    let oct = data("octahedron.json");
    let (o, text) = run_to_file(&dir, "w.json", &["index", s(&oct), "--prime", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "2\n");
    let w: IndexFile = round_trip(&text);
    assert_eq!(w.index, 2);
    assert_eq!(w.u_nonzero, vec![true, true, true]);
    assert_eq!(w.witness.degree, 2);
    assert!(!w.witness.cocycle.is_empty());
}

#[test]
fn labeling_search_on_hexagon_emits_a_labeling_without_complementary_edges() {
    let dir = TempDir::new().unwrap();
    let hex = data("hexagon.json");
    let (o, text) = run_to_file(&dir, "l.json", &["labeling-search", s(&hex), "--n", "2"]);
    assert_eq!(code(&o), 0);
    let v: VerdictFile = round_trip(&text);
    assert_eq!(v.verdict, "found");
    let Some(SearchWitness::Labeling(l)) = v.witness else {
        panic!("no labeling witness");
    };
    assert_eq!(l.n, 2);
    assert_eq!(l.labels.len(), 6);
    let lpath = dir.path().join("l.json");
    let check = gindex(&["labeling-check", s(&hex), s(&lpath)]);
    assert_eq!(code(&check), 0);
    let report: VerdictFile = round_trip(&stdout(&check));
    assert_eq!(report.verdict, "no-complementary-edge");
}

#[test]
fn one_class_labelings_of_hexagon_are_exhausted() {
    let o = gindex(&["labeling-search", s(&data("hexagon.json")), "--n", "1"]);
    assert_eq!(code(&o), 0);
    let v: VerdictFile = round_trip(&stdout(&o));
    assert_eq!(v.verdict, "exhausted");
    assert!(v.witness.is_none());
}

#[test]
fn labeling_check_reports_violations_and_complementary_edges() {
    let dir = TempDir::new().unwrap();
    let hex = data("hexagon.json");
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"n": 1, "labels": {"v0": [0, 1], "v1": [0, 1], "v2": [0, 1],
            "v3": [0, 1], "v4": [1, 1], "v5": [1, 1]}}"#,
    )
    .unwrap();
    let o = gindex(&["labeling-check", s(&hex), s(&bad)]);
    assert_eq!(code(&o), 1);
    let v: VerdictFile = round_trip(&stdout(&o));
    assert_eq!(v.verdict, "not-equivariant");
    assert!(matches!(
        v.witness,
        Some(SearchWitness::EquivarianceViolation { .. })
    ));

    let comp = dir.path().join("comp.json");
    fs::write(
        &comp,
        r#"{"n": 1, "labels": {"v0": [0, 1], "v1": [0, 1], "v2": [0, 1],
            "v3": [1, 1], "v4": [1, 1], "v5": [1, 1]}}"#,
    )
    .unwrap();
    let o = gindex(&["labeling-check", s(&hex), s(&comp)]);
    assert_eq!(code(&o), 0);
    let v: VerdictFile = round_trip(&stdout(&o));
    assert_eq!(v.verdict, "complementary-edge");
    let Some(SearchWitness::ComplementaryEdge { edge, class, .. }) = v.witness else {
        panic!("no edge witness");
    };
    assert_eq!(class, 1);
    assert_eq!(edge, ["v0".to_owned(), "v5".to_owned()]);
}

#[test]
fn malformed_complex_is_an_input_error_with_location() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        "{\n  \"vertices\": [\"a\", \"b\"],\n  \"maximal_simplices\": [[\"a\", 3]]\n}\n",
    )
    .unwrap();
    let o = gindex(&["subdivide", s(&bad)]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("line 3"), "{err}");

    fs::write(
        &bad,
        r#"{"vertices": ["a"], "maximal_simplices": [["a", "b"]]}"#,
    )
    .unwrap();
    let o = gindex(&["subdivide", s(&bad)]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(
        err.contains("maximal_simplices") && err.contains("\"b\""),
        "{err}"
    );

    fs::write(&bad, r#"{"vertices": ["a"]}"#).unwrap();
    let o = gindex(&["subdivide", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("maximal_simplices"));
}

#[test]
fn malformed_actions_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("a.json");
    let cases = [
        // not a homomorphism: the generator has order 3 on a 2-element group
        r#"{"complex": {"vertices": ["a", "b", "c"], "maximal_simplices": []},
            "group": {"kind": "cyclic", "order": 2},
            "perms": {"1": ["b", "c", "a"]}, "generator_only": true}"#,
        r#"{"complex": {"vertices": ["a", "b"], "maximal_simplices": []},
            "group": {"kind": "cyclic", "order": 2}, "perms": {"0": [0, 1]}}"#,
        r#"{"complex": {"vertices": ["a", "b"], "maximal_simplices": []},
            "group": {"kind": "table", "order": 2, "table": [[0, 1], [1, 1]]},
            "perms": {"0": [0, 1], "1": [1, 0]}}"#,
        r#"{"complex": "missing.json", "group": {"kind": "cyclic", "order": 1},
            "perms": {"0": []}}"#,
    ];
    for case in cases {
        fs::write(&bad, case).unwrap();
        let o = gindex(&["index", s(&bad), "--prime", "2"]);
        assert_eq!(code(&o), 2, "{case}: {}", stderr(&o));
    }
}

#[test]
fn non_free_action_is_rejected() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("a.json");
    fs::write(
        &bad,
        r#"{"complex": {"vertices": ["a", "b"], "maximal_simplices": [["a", "b"]]},
            "group": {"kind": "cyclic", "order": 2},
            "perms": {"0": ["a", "b"], "1": ["b", "a"]}}"#,
    )
    .unwrap();
    let o = gindex(&["index", s(&bad), "--prime", "2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not free"), "{}", stderr(&o));
}

#[test]
fn unknown_flags_and_missing_arguments_exit_two() {
    assert_eq!(
        code(&gindex(&[
            "index",
            s(&data("hexagon.json")),
            "--prime",
            "2",
            "--bogus"
        ])),
        2
    );
    assert_eq!(
        code(&gindex(&["labeling-search", s(&data("hexagon.json"))])),
        2
    );
    assert_eq!(code(&gindex(&["no-such-command"])), 2);
    let o = gindex(&["verify", "camomile", "--action", s(&data("hexagon.json"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn help_lists_the_default_budget() {
    for sub in [
        "sandwich",
        "labeling-search",
        "tucker",
        "map-search",
        "verify",
    ] {
        let o = gindex(&[sub, "--help"]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains("[default: 10000000]"), "{sub}");
    }
}

#[test]
fn tucker_exit_codes() {
    let disk = data("disk4.json");
    let square = data("square.json");
    let o = gindex(&["tucker", s(&disk), s(&square), "--n", "2"]);
    assert_eq!(code(&o), 0);
    let v: VerdictFile = round_trip(&stdout(&o));
    assert_eq!(v.verdict, "all-have-complementary-edge");

    let o = gindex(&["tucker", s(&disk), s(&square), "--n", "3"]);
    assert_eq!(code(&o), 1);
    let v: VerdictFile = round_trip(&stdout(&o));
    assert_eq!(v.verdict, "counterexample");
    assert!(matches!(v.witness, Some(SearchWitness::Labeling(_))));

    let o = gindex(&["tucker", s(&disk), s(&square), "--n", "2", "--budget", "3"]);
    assert_eq!(code(&o), 3);
    let v: VerdictFile = round_trip(&stdout(&o));
    assert_eq!(v.verdict, "budget-exceeded");
}

#[test]
fn budget_zero_labeling_search_is_an_input_error() {
    let o = gindex(&[
        "labeling-search",
        s(&data("hexagon.json")),
        "--n",
        "2",
        "--budget",
        "0",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn map_search_directions() {
    let oct = data("octahedron.json");
    let square = data("square.json");
    let o = gindex(&["map-search", s(&oct), s(&square)]);
    assert_eq!(code(&o), 0);
    let v: VerdictFile = round_trip(&stdout(&o));
    assert_eq!(v.verdict, "exhausted");

    let o = gindex(&["map-search", s(&square), s(&oct)]);
    assert_eq!(code(&o), 0);
    let v: VerdictFile = round_trip(&stdout(&o));
    assert_eq!(v.verdict, "found");
    let Some(SearchWitness::Map(m)) = v.witness else {
        panic!("no map witness");
    };
    assert_eq!(m.vertex_map.len(), 4);

    let o = gindex(&["map-search", s(&square), s(&oct), "--budget", "0"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn sandwich_certificate_round_trips_and_revalidates() {
    let dir = TempDir::new().unwrap();
    let oct = data("octahedron.json");
    let (o, text) = run_to_file(&dir, "cert.json", &["sandwich", s(&oct)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "lower 2 upper 2: determined\n");
    let cert: CertificateFile = round_trip(&text);
    assert_eq!(cert.kind, "index-sandwich");
    assert_eq!((cert.lower, cert.upper), (Some(2), Some(2)));
    assert_eq!(cert.budget, Some(10_000_000));
    assert!(cert.tool_version.starts_with("gindex "));
    assert_eq!(cert.inputs["action"].len(), 64);

    let cpath = dir.path().join("cert.json");
    let o = gindex(&[
        "verify",
        "certificate",
        "--action",
        s(&oct),
        "--certificate",
        s(&cpath),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let report: CertificateFile = round_trip(&stdout(&o));
    assert_eq!(report.verdict, "holds");

    // claiming a larger lower bound must fail re-validation
    let mut forged = cert.clone();
    forged.witnesses.lower[0].index = 3;
    forged.lower = Some(3);
    forged.upper = Some(3);
    fs::write(&cpath, to_json(&forged)).unwrap();
    let o = gindex(&[
        "verify",
        "certificate",
        "--action",
        s(&oct),
        "--certificate",
        s(&cpath),
    ]);
    assert_eq!(code(&o), 1);

    // a certificate for one action does not verify against another
    fs::write(&cpath, &text).unwrap();
    let o = gindex(&[
        "verify",
        "certificate",
        "--action",
        s(&data("hexagon.json")),
        "--certificate",
        s(&cpath),
    ]);
    assert_eq!(code(&o), 1);
    let report: CertificateFile = round_trip(&stdout(&o));
    assert!(report.details["error"].as_str().unwrap().contains("digest"));
}

#[test]
fn sandwich_without_budget_is_bracketed() {
    let o = gindex(&["sandwich", s(&data("hexagon.json")), "--budget", "0"]);
    assert_eq!(code(&o), 3);
    let cert: CertificateFile = round_trip(&stdout(&o));
    assert_eq!(cert.verdict, "bracketed");
    assert_eq!(cert.lower, Some(1));
    assert_eq!(cert.upper, None);
    assert_eq!(cert.budget, Some(0));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let (oct, hex, c12, square) = (
        data("octahedron.json"),
        data("hexagon.json"),
        data("c12_z4.json"),
        data("square.json"),
    );
    let runs: [&[&str]; 4] = [
        &["sandwich", s(&oct)],
        &["quotient", s(&hex)],
        &["verify", "degree-law", "--action", s(&c12)],
        &["build-join", s(&square), s(&hex)],
    ];
    for args in runs {
        let a = gindex(args);
        let b = gindex(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
    }
}

#[test]
fn constructions_round_trip_and_feed_back_in() {
    let dir = TempDir::new().unwrap();
    let (o, text) = run_to_file(
        &dir,
        "j3.json",
        &["build-jg", s(&data("z2.json")), "--n", "3"],
    );
    assert_eq!(code(&o), 0);
    let j3: ActionFile = round_trip(&text);
    assert_eq!(j3.perms.len(), 2);
    let j3_path = dir.path().join("j3.json");
    assert_eq!(index_of(&j3_path), "2");

    let (_, text) = run_to_file(&dir, "sd.json", &["subdivide", s(&j3_path)]);
    round_trip::<ActionFile>(&text);
    assert_eq!(index_of(&dir.path().join("sd.json")), "2");

    let (_, text) = run_to_file(&dir, "sdx.json", &["subdivide", s(&data("disk4.json"))]);
    let sd: ComplexFile = round_trip(&text);
    assert_eq!(sd.vertices.len(), 4 + 4 + 1 + 4 + 4);

    let (o, text) = run_to_file(&dir, "q.json", &["quotient", s(&data("hexagon.json"))]);
    assert_eq!(code(&o), 0);
    let q: QuotientFile = round_trip(&text);
    assert_eq!(q.complex.vertices.len(), 3);
    assert_eq!(q.subdivisions_applied, 0);

    let (o, text) = run_to_file(&dir, "sq.json", &["quotient", s(&data("square.json"))]);
    assert_eq!(code(&o), 0);
    let q: QuotientFile = round_trip(&text);
    assert!(q.subdivisions_applied > 0);

    let (o, text) = run_to_file(
        &dir,
        "c.json",
        &[
            "camomile",
            s(&data("cone_c6.json")),
            s(&data("hexagon.json")),
        ],
    );
    assert_eq!(code(&o), 0);
    round_trip::<ActionFile>(&text);
    assert_eq!(index_of(&dir.path().join("c.json")), "2");

    let (o, text) = run_to_file(
        &dir,
        "join.json",
        &[
            "build-join",
            s(&data("square.json")),
            s(&data("hexagon.json")),
        ],
    );
    assert_eq!(code(&o), 0);
    round_trip::<ActionFile>(&text);
    assert_eq!(index_of(&dir.path().join("join.json")), "3");
}

#[test]
fn degree_and_nct() {
    let o = gindex(&["degree", s(&data("wrap_twice.json"))]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degree"].as_i64().unwrap().abs(), 2);

    let m = data("mobius_boundary.json");
    let nct = |extra: &[&str]| {
        let mut args = vec!["nct", s(&m), "--n", "1"];
        args.extend(extra);
        let o = gindex(&args);
        assert_eq!(code(&o), 0);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["nct"].as_bool().unwrap()
    };
    assert!(nct(&["--prime", "2"]));
    assert!(!nct(&["--prime", "3"]));
    assert!(!nct(&[]));

    // the Möbius band is not a pseudomanifold, so the degree is undefined
    let o = gindex(&["degree", s(&m)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_checks() {
    let hex = data("hexagon.json");
    let o = gindex(&[
        "verify",
        "labeling-consistency",
        "--action",
        s(&hex),
        "--n",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    let r: CertificateFile = round_trip(&stdout(&o));
    assert_eq!(r.verdict, "holds");
    assert_eq!(r.lower, Some(1));
    assert_eq!(r.details["search"], "exhausted");

    let o = gindex(&[
        "verify",
        "labeling-consistency",
        "--action",
        s(&hex),
        "--n",
        "2",
    ]);
    let r: CertificateFile = round_trip(&stdout(&o));
    assert_eq!(r.upper, Some(1));
    assert!(r.witnesses.upper.is_some());

    let o = gindex(&[
        "verify",
        "camomile",
        "--action",
        s(&hex),
        "--complex",
        s(&data("cone_c6.json")),
        "--n",
        "1",
        "--prime",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let r: CertificateFile = round_trip(&stdout(&o));
    assert_eq!(r.verdict, "holds");
    assert_eq!(r.details["camomile_index"], 2);
    assert_eq!(r.details["index_substituted"], "ind_2");

    let o = gindex(&[
        "verify",
        "camomile",
        "--action",
        s(&hex),
        "--complex",
        s(&data("cone_c6.json")),
        "--n",
        "0",
        "--prime",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let r: CertificateFile = round_trip(&stdout(&o));
    assert_eq!(r.verdict, "hypotheses-not-met");

    let o = gindex(&["verify", "degree-law", "--action", s(&data("c12_z4.json"))]);
    assert_eq!(code(&o), 0);
    let r: CertificateFile = round_trip(&stdout(&o));
    assert_eq!(r.verdict, "holds");

    let o = gindex(&["verify", "degree-law", "--action", s(&hex), "--budget", "2"]);
    assert_eq!(code(&o), 3);

    let o = gindex(&[
        "verify",
        "no-join-selfmap",
        "--action",
        s(&data("square.json")),
    ]);
    assert_eq!(code(&o), 0);
    let r: CertificateFile = round_trip(&stdout(&o));
    assert_eq!(r.verdict, "holds");
    assert!(r.details["counterexample"].is_null());
}

#[test]
fn summary_goes_to_stdout_only_with_out() {
    let dir = TempDir::new().unwrap();
    let hex = data("hexagon.json");
    let o = gindex(&["index", s(&hex), "--prime", "2"]);
    assert_eq!(stderr(&o), "1\n");
    round_trip::<IndexFile>(&stdout(&o));
    let (o, _) = run_to_file(&dir, "w.json", &["index", s(&hex), "--prime", "2"]);
    assert_eq!(stdout(&o), "1\n");
    assert!(stderr(&o).is_empty());
}
