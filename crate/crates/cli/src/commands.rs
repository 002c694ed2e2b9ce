use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gindex::certify::{
    self, action_digest, check_camomile, check_degree_mod_order, check_labeling_consistency,
    check_no_join_selfmap, complex_text, index_sandwich, sha256_hex, CheckStatus, IndexCertificate,
    LowerBound, UpperBound, Verdict,
};
use gindex::gcomplex::{self as gc, GAction, SimplicialComplex};
use gindex::smith::{self, fundamental_cycle, ind_p, is_nct, Coefficients};
use gindex::tucker::{
    find_complementary_edges, search_equivariant_map, search_labeling, tucker_harness,
    validate_labeling, LabelingReport, Mode, SearchOptions, SearchOutcome, TuckerVerdict,
};
use serde_json::json;

use crate::formats::{
    load, parse, read_text, to_json, ActionFile, CertificateFile, ComplexFile, GroupFile,
    IndexFile, LabelingFile, LowerWitness, MapFile, QuotientFile, SearchWitness, VerdictFile,
    WitnessFile, Witnesses,
};
use crate::{CliError, Outcome, Status};

const TOOL_VERSION: &str = concat!("gindex ", env!("CARGO_PKG_VERSION"));

fn fail(origin: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::input(format!("{}: {e}", origin.display()))
}

fn load_action(path: &Path) -> Result<GAction, CliError> {
    load::<ActionFile>(path)?.build(path)
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    load::<ComplexFile>(path)?.build(path)
}

fn computed(summary: String, artifact: String) -> Outcome {
    Outcome {
        status: Status::Computed,
        summary,
        artifact,
    }
}

fn action_outcome(what: &str, a: &GAction) -> Outcome {
    computed(
        format!(
            "{what}: {} vertices, {} simplices, |G| = {}",
            a.complex().num_vertices(),
            a.complex().num_simplices(),
            a.group().order()
        ),
        to_json(&ActionFile::from_action(a)),
    )
}

fn status_of(s: CheckStatus) -> Status {
    match s {
        CheckStatus::Violated => Status::Violated,
        CheckStatus::Inconclusive => Status::BudgetExceeded,
        CheckStatus::Holds | CheckStatus::HypothesesNotMet | CheckStatus::Skipped => {
            Status::Computed
        }
    }
}

fn search_status<T>(o: &SearchOutcome<T>) -> (&'static str, Status) {
    match o {
        SearchOutcome::Found(_) => ("found", Status::Computed),
        SearchOutcome::Exhausted => ("exhausted", Status::Computed),
        SearchOutcome::BudgetExceeded => ("budget-exceeded", Status::BudgetExceeded),
    }
}

pub fn build_join(left: &Path, right: &Path) -> Result<Outcome, CliError> {
    let (a, b) = (load_action(left)?, load_action(right)?);
    let j = gc::join(&a, &b).map_err(|e| fail(right, e))?;
    Ok(action_outcome("join", &j))
}

pub fn build_jg(group: &Path, n: usize) -> Result<Outcome, CliError> {
    let g = load::<GroupFile>(group)?.build(group)?;
    let j = gc::join_power(&g, n).map_err(|e| fail(group, e))?;
    Ok(action_outcome(&format!("J^{n}(G)"), &j))
}

pub fn subdivide(input: &Path) -> Result<Outcome, CliError> {
    let text = read_text(input)?;
    let value: serde_json::Value = parse(&text, input)?;
    if value.get("perms").is_some() {
        let a = parse::<ActionFile>(&text, input)?.build(input)?;
        return Ok(action_outcome(
            "subdivision",
            &gc::barycentric_subdivision(&a),
        ));
    }
    let x = parse::<ComplexFile>(&text, input)?.build(input)?;
    let sd = gc::subdivide(&x);
    Ok(computed(
        format!(
            "subdivision: {} vertices, {} simplices",
            sd.num_vertices(),
            sd.num_simplices()
        ),
        to_json(&ComplexFile::from_complex(&sd)),
    ))
}

pub fn quotient(action: &Path) -> Result<Outcome, CliError> {
    let a = load_action(action)?;
    let q = gc::quotient(&a).map_err(|e| fail(action, e))?;
    let x = q.model.complex();
    let file = QuotientFile {
        model: ActionFile::from_action(&q.model),
        complex: ComplexFile::from_complex(&q.complex),
        projection: (0..x.num_vertices())
            .map(|v| {
                (
                    x.vertex_name(v).to_owned(),
                    q.complex.vertex_name(q.projection.vertex_map[v]).to_owned(),
                )
            })
            .collect(),
        subdivisions_applied: q.subdivisions,
    };
    Ok(computed(
        format!(
            "quotient: {} vertices, subdivisions_applied {}",
            q.complex.num_vertices(),
            q.subdivisions
        ),
        to_json(&file),
    ))
}

pub fn camomile(complex: &Path, x0: &Path) -> Result<Outcome, CliError> {
    let x = load_complex(complex)?;
    let a0 = load_action(x0)?;
    let c = gc::camomile(&x, &a0).map_err(|e| fail(x0, e))?;
    let mut out = action_outcome("camomile", &c.action);
    out.summary
        .push_str(&format!(", subdivisions_applied {}", c.subdivisions));
    Ok(out)
}

pub fn index(action: &Path, prime: usize, generator: Option<usize>) -> Result<Outcome, CliError> {
    let a = load_action(action)?;
    let r = ind_p(&a, prime, generator).map_err(|e| fail(action, e))?;
    let file = IndexFile {
        input: action_digest(&a),
        prime,
        generator: r.generator,
        index: r.index,
        u_nonzero: r.classes.iter().map(|u| u.nonzero).collect(),
        witness: WitnessFile::from_class(a.complex(), &r.witness),
    };
    Ok(computed(r.index.to_string(), to_json(&file)))
}

fn sandwich_file(a: &GAction, cert: &IndexCertificate, n_max: usize) -> CertificateFile {
    let upper = match &cert.upper {
        UpperBound::Witnessed { labeling, .. } => {
            Some(LabelingFile::from_labeling(a.complex(), labeling))
        }
        UpperBound::Unknown { .. } => None,
    };
    CertificateFile {
        kind: "index-sandwich".into(),
        tool_version: TOOL_VERSION.into(),
        inputs: BTreeMap::from([("action".into(), cert.digest.clone())]),
        lower: Some(cert.lower_bound()),
        upper: cert.upper_bound(),
        witnesses: Witnesses {
            lower: cert
                .lower
                .iter()
                .map(|b| LowerWitness {
                    prime: b.p,
                    generator: b.generator,
                    index: b.index,
                    witness: WitnessFile::from_class(a.complex(), &b.witness),
                })
                .collect(),
            upper,
        },
        verdict: cert.verdict.tag().into(),
        budget: Some(cert.budget),
        leaves_explored: cert.leaves_explored,
        details: json!({
            "scanned_to": n_max,
            "budget_exceeded_at": cert.budget_exceeded_at,
        }),
    }
}

pub fn sandwich(
    action: &Path,
    primes: &[usize],
    n_max: usize,
    budget: u64,
) -> Result<Outcome, CliError> {
    let a = load_action(action)?;
    let cert = index_sandwich(&a, primes, n_max, budget).map_err(|e| fail(action, e))?;
    let upper = cert
        .upper_bound()
        .map_or(format!("unknown above {n_max}"), |u| u.to_string());
    let status = if cert.verdict == Verdict::Bracketed && !cert.budget_exceeded_at.is_empty() {
        Status::BudgetExceeded
    } else {
        Status::Computed
    };
    Ok(Outcome {
        status,
        summary: format!(
            "lower {} upper {upper}: {}",
            cert.lower_bound(),
            cert.verdict.tag()
        ),
        artifact: to_json(&sandwich_file(&a, &cert, n_max)),
    })
}

fn verdict_outcome(status: Status, file: VerdictFile) -> Outcome {
    Outcome {
        status,
        summary: format!(
            "{} ({} leaves explored)",
            file.verdict, file.leaves_explored
        ),
        artifact: to_json(&file),
    }
}

fn labeling_source(path: &Path) -> Result<LabelingFile, CliError> {
    let text = read_text(path)?;
    let value: serde_json::Value = parse(&text, path)?;
    if value.get("verdict").is_none() {
        return parse(&text, path);
    }
    match parse::<VerdictFile>(&text, path)?.witness {
        Some(SearchWitness::Labeling(l)) => Ok(l),
        _ => Err(fail(path, "verdict file carries no labeling witness")),
    }
}

pub fn labeling_check(
    action: &Path,
    labeling: &Path,
    complex: Option<&Path>,
) -> Result<Outcome, CliError> {
    let a = load_action(action)?;
    let ambient = complex.map(load_complex).transpose()?;
    let lf = labeling_source(labeling)?;
    let mode = match &ambient {
        Some(x) => Mode::Boundary { complex: x, x0: &a },
        None => Mode::Full(&a),
    };
    let x = mode.complex();
    let l = lf.build(x, labeling)?;
    let report = validate_labeling(&l, &mode).map_err(|e| fail(labeling, e))?;
    let (verdict, witness, status) = match report {
        LabelingReport::Violation { element, vertex } => (
            "not-equivariant",
            Some(SearchWitness::EquivarianceViolation {
                element,
                vertex: x.vertex_name(vertex).to_owned(),
            }),
            Status::Violated,
        ),
        LabelingReport::Equivariant => match find_complementary_edges(x, &l).first() {
            Some(e) => (
                "complementary-edge",
                Some(SearchWitness::ComplementaryEdge {
                    edge: [
                        x.vertex_name(e.edge.0).to_owned(),
                        x.vertex_name(e.edge.1).to_owned(),
                    ],
                    class: e.class,
                    elements: [e.elements.0, e.elements.1],
                }),
                Status::Computed,
            ),
            None => ("no-complementary-edge", None, Status::Computed),
        },
    };
    Ok(verdict_outcome(
        status,
        VerdictFile {
            verdict: verdict.into(),
            witness,
            leaves_explored: 0,
            subdivisions_applied: 0,
        },
    ))
}

pub fn labeling_search(
    action: &Path,
    n: usize,
    complex: Option<&Path>,
    budget: u64,
) -> Result<Outcome, CliError> {
    let a = load_action(action)?;
    let ambient = complex.map(load_complex).transpose()?;
    let mode = match &ambient {
        Some(x) => Mode::Boundary { complex: x, x0: &a },
        None => Mode::Full(&a),
    };
    let r = search_labeling(&mode, n, SearchOptions::new(budget)).map_err(|e| fail(action, e))?;
    let (verdict, status) = search_status(&r.outcome);
    let witness = match &r.outcome {
        SearchOutcome::Found(l) => Some(SearchWitness::Labeling(LabelingFile::from_labeling(
            mode.complex(),
            l,
        ))),
        _ => None,
    };
    Ok(verdict_outcome(
        status,
        VerdictFile {
            verdict: verdict.into(),
            witness,
            leaves_explored: r.leaves_explored,
            subdivisions_applied: 0,
        },
    ))
}

pub fn tucker(complex: &Path, x0: &Path, n: usize, budget: u64) -> Result<Outcome, CliError> {
    let x = load_complex(complex)?;
    let a0 = load_action(x0)?;
    let r = tucker_harness(&x, &a0, n, SearchOptions::new(budget)).map_err(|e| fail(x0, e))?;
    let (verdict, witness, status) = match &r.verdict {
        TuckerVerdict::AllHaveComplementaryEdge => {
            ("all-have-complementary-edge", None, Status::Computed)
        }
        TuckerVerdict::Counterexample(l) => (
            "counterexample",
            Some(SearchWitness::Labeling(LabelingFile::from_labeling(&x, l))),
            Status::Violated,
        ),
        TuckerVerdict::BudgetExceeded => ("budget-exceeded", None, Status::BudgetExceeded),
    };
    Ok(verdict_outcome(
        status,
        VerdictFile {
            verdict: verdict.into(),
            witness,
            leaves_explored: r.leaves_explored,
            subdivisions_applied: 0,
        },
    ))
}

pub fn map_search(source: &Path, target: &Path, budget: u64) -> Result<Outcome, CliError> {
    let (s, t) = (load_action(source)?, load_action(target)?);
    let opts = SearchOptions::new(budget);
    let r = search_equivariant_map(&s, &t, opts).map_err(|e| fail(target, e))?;
    let (verdict, status) = search_status(&r.outcome);
    let witness = match &r.outcome {
        SearchOutcome::Found(f) => Some(SearchWitness::Map(MapFile::from_map(f))),
        _ => None,
    };
    Ok(verdict_outcome(
        status,
        VerdictFile {
            verdict: verdict.into(),
            witness,
            leaves_explored: r.leaves_explored,
            subdivisions_applied: 0,
        },
    ))
}

pub fn degree(map: &Path) -> Result<Outcome, CliError> {
    let f = load::<MapFile>(map)?.build(map)?;
    let so = fundamental_cycle(&f.source).map_err(|e| fail(map, format!("source: {e}")))?;
    let to = fundamental_cycle(&f.target).map_err(|e| fail(map, format!("target: {e}")))?;
    let d = smith::degree(&f, &so, &to).map_err(|e| fail(map, e))?;
    Ok(computed(
        d.to_string(),
        to_json(&json!({ "dimension": so.dim, "degree": d })),
    ))
}

pub fn nct(map: &Path, n: usize, prime: Option<usize>) -> Result<Outcome, CliError> {
    let f = load::<MapFile>(map)?.build(map)?;
    let (coeff, tag) = match prime {
        Some(p) => (Coefficients::Prime(p), format!("F_{p}")),
        None => (Coefficients::Integers, "Z".to_owned()),
    };
    let v = is_nct(&f, n, coeff).map_err(|e| fail(map, e))?;
    Ok(computed(
        v.to_string(),
        to_json(&json!({ "n": n, "coefficients": tag, "nct": v })),
    ))
}

pub struct VerifyRequest {
    pub action: PathBuf,
    pub complex: Option<PathBuf>,
    pub certificate: Option<PathBuf>,
    pub n: Option<usize>,
    pub prime: Option<usize>,
    pub budget: u64,
}

impl VerifyRequest {
    fn need<T: Copy>(&self, v: Option<T>, flag: &str, check: &str) -> Result<T, CliError> {
        v.ok_or_else(|| CliError::input(format!("`verify {check}` needs {flag}")))
    }
}

fn report(kind: &str, inputs: BTreeMap<String, String>, status: CheckStatus) -> CertificateFile {
    CertificateFile {
        kind: kind.into(),
        tool_version: TOOL_VERSION.into(),
        inputs,
        lower: None,
        upper: None,
        witnesses: Witnesses {
            lower: Vec::new(),
            upper: None,
        },
        verdict: status.tag().into(),
        budget: None,
        leaves_explored: 0,
        details: json!({}),
    }
}

fn check_outcome(status: CheckStatus, file: CertificateFile) -> Outcome {
    Outcome {
        status: status_of(status),
        summary: format!("{}: {}", file.kind, file.verdict),
        artifact: to_json(&file),
    }
}

fn action_inputs(a: &GAction) -> BTreeMap<String, String> {
    BTreeMap::from([("action".into(), action_digest(a))])
}

/// Rebuilds the library certificate from its file form.
fn index_certificate(
    file: &CertificateFile,
    a: &GAction,
    origin: &Path,
) -> Result<IndexCertificate, CliError> {
    if file.kind != "index-sandwich" {
        return Err(fail(
            origin,
            format!("kind {:?} is not index-sandwich", file.kind),
        ));
    }
    let x = a.complex();
    let lower = file
        .witnesses
        .lower
        .iter()
        .map(|w| {
            Ok(LowerBound {
                p: w.prime,
                generator: w.generator,
                index: w.index,
                witness: w.witness.build(x, w.prime, origin)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let scanned_to = file.details["scanned_to"].as_u64().unwrap_or(0) as usize;
    let upper = match (&file.witnesses.upper, file.upper) {
        (Some(l), Some(value)) => UpperBound::Witnessed {
            value,
            labeling: l.build(x, origin)?,
        },
        (None, None) => UpperBound::Unknown { scanned_to },
        _ => {
            return Err(fail(
                origin,
                "`upper` and its witness must both be present or absent",
            ))
        }
    };
    let verdict = match file.verdict.as_str() {
        "determined" => Verdict::Determined,
        "bracketed" => Verdict::Bracketed,
        v => return Err(fail(origin, format!("unknown verdict {v:?}"))),
    };
    let exceeded = file.details["budget_exceeded_at"]
        .as_array()
        .map(|v| {
            v.iter()
                .filter_map(|n| n.as_u64())
                .map(|n| n as usize)
                .collect()
        })
        .unwrap_or_default();
    Ok(IndexCertificate {
        digest: file.inputs.get("action").cloned().unwrap_or_default(),
        lower,
        upper,
        verdict,
        budget: file.budget.unwrap_or(0),
        leaves_explored: file.leaves_explored,
        budget_exceeded_at: exceeded,
    })
}

pub fn verify_certificate(req: &VerifyRequest) -> Result<Outcome, CliError> {
    let a = load_action(&req.action)?;
    let path = req
        .certificate
        .as_deref()
        .ok_or_else(|| CliError::input("`verify certificate` needs --certificate"))?;
    let text = read_text(path)?;
    let file: CertificateFile = parse(&text, path)?;
    let mut inputs = action_inputs(&a);
    inputs.insert("certificate".into(), sha256_hex(&text));
    // witnesses are only meaningful on the complex the certificate was made for
    let result = if file.inputs.get("action") != inputs.get("action") {
        Err(certify::CertifyError::DigestMismatch)
    } else {
        index_certificate(&file, &a, path)?.revalidate(&a)
    };
    let status = if result.is_ok() {
        CheckStatus::Holds
    } else {
        CheckStatus::Violated
    };
    let mut out = report("certificate", inputs, status);
    out.lower = file.lower;
    out.upper = file.upper;
    out.details = json!({
        "checked_kind": file.kind,
        "checked_verdict": file.verdict,
        "error": result.err().map(|e: certify::CertifyError| e.to_string()),
    });
    Ok(check_outcome(status, out))
}

pub fn verify_labeling_consistency(req: &VerifyRequest) -> Result<Outcome, CliError> {
    let n = req.need(req.n, "--n", "labeling-consistency")?;
    let a = load_action(&req.action)?;
    let r = check_labeling_consistency(&a, n, req.budget).map_err(|e| fail(&req.action, e))?;
    let mut out = report("labeling-consistency", action_inputs(&a), r.status);
    out.lower = Some(r.lower);
    out.budget = Some(req.budget);
    out.leaves_explored = r.leaves_explored;
    if let SearchOutcome::Found(l) = &r.search {
        out.upper = Some(n - 1);
        out.witnesses.upper = Some(LabelingFile::from_labeling(a.complex(), l));
    }
    out.details = json!({ "n": n, "search": search_status(&r.search).0 });
    Ok(check_outcome(r.status, out))
}

pub fn verify_camomile(req: &VerifyRequest) -> Result<Outcome, CliError> {
    let n = req.need(req.n, "--n", "camomile")?;
    let p = req.need(req.prime, "--prime", "camomile")?;
    let complex = req
        .complex
        .as_deref()
        .ok_or_else(|| CliError::input("`verify camomile` needs --complex"))?;
    let x = load_complex(complex)?;
    let a0 = load_action(&req.action)?;
    let r = check_camomile(&x, &a0, n, p).map_err(|e| fail(&req.action, e))?;
    let mut inputs = BTreeMap::from([("x0".to_owned(), action_digest(&a0))]);
    inputs.insert("complex".into(), sha256_hex(&complex_text(&x)));
    let mut out = report("camomile", inputs, r.status);
    out.lower = r.camomile_index;
    out.details = json!({
        "n": n,
        "prime": p,
        "index_substituted": format!("ind_{p}"),
        "x0_index": r.x0_index,
        "nct": r.nct,
        "camomile_index": r.camomile_index,
        "subdivisions_applied": r.subdivisions,
        "camomile_digest": r.camomile.as_ref().map(action_digest),
    });
    Ok(check_outcome(r.status, out))
}

pub fn verify_degree_law(req: &VerifyRequest) -> Result<Outcome, CliError> {
    let a = load_action(&req.action)?;
    let r = check_degree_mod_order(&a, req.budget).map_err(|e| fail(&req.action, e))?;
    let mut out = report("degree-law", action_inputs(&a), r.status);
    out.budget = Some(req.budget);
    out.leaves_explored = r.leaves_explored;
    out.details = json!({
        "order": r.order,
        "maps": r.degrees.len(),
        "degrees": r.distinct_degrees(),
    });
    Ok(check_outcome(r.status, out))
}

pub fn verify_no_join_selfmap(req: &VerifyRequest) -> Result<Outcome, CliError> {
    let a = load_action(&req.action)?;
    let r = check_no_join_selfmap(&a, req.budget).map_err(|e| fail(&req.action, e))?;
    let mut out = report("no-join-selfmap", action_inputs(&a), r.status);
    out.budget = Some(req.budget);
    out.leaves_explored = r.leaves_explored;
    out.details = json!({
        "join_digest": action_digest(&r.join),
        "counterexample": r.counterexample.as_ref().map(MapFile::from_map),
    });
    Ok(check_outcome(r.status, out))
}
