use super::digest::action_digest;
use super::CertifyError;
use crate::gcomplex::{
    camomile, is_prime, join, join_power, validate_map, GAction, SimplicialComplex, SimplicialMap,
};
use crate::smith::{
    degree, fundamental_cycle, is_nct, validate_index_witness, Coefficients, CohomClass,
    SmithComplex,
};
use crate::tucker::{
    enumerate_equivariant_maps, find_complementary_edges, labeling_to_map, search_equivariant_map,
    search_labeling, validate_labeling, Labeling, Mode, SearchOptions, SearchOutcome,
};

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Holds,
    Violated,
    /// The budget ran out before the check could decide.
    Inconclusive,
    HypothesesNotMet,
    Skipped,
}

impl CheckStatus {
    pub fn tag(self) -> &'static str {
        match self {
            CheckStatus::Holds => "holds",
            CheckStatus::Violated => "violated",
            CheckStatus::Inconclusive => "inconclusive",
            CheckStatus::HypothesesNotMet => "hypotheses-not-met",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// `ind_p` for one prime, maximized over conjugacy classes of subgroups of order `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub p: usize,
    pub generator: usize,
    pub index: usize,
    pub witness: CohomClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperBound {
    /// `tind ≤ value`, witnessed by a labeling with `value + 1` classes and no
    /// complementary edge.
    Witnessed { value: usize, labeling: Labeling },
    /// No witness found for class counts up to `scanned_to`.
    Unknown { scanned_to: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Determined,
    Bracketed,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Determined => "determined",
            Verdict::Bracketed => "bracketed",
        }
    }
}

/// Bracket `max_p ind_p ≤ ind ≤ tind ≤ upper` with witnesses on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexCertificate {
    pub digest: String,
    pub lower: Vec<LowerBound>,
    pub upper: UpperBound,
    pub verdict: Verdict,
    pub budget: u64,
    pub leaves_explored: u64,
    /// Class counts whose labeling search ran out of budget.
    pub budget_exceeded_at: Vec<usize>,
}

impl IndexCertificate {
    pub fn lower_bound(&self) -> usize {
        self.lower.iter().map(|b| b.index).max().unwrap_or(0)
    }

    pub fn upper_bound(&self) -> Option<usize> {
        match &self.upper {
            UpperBound::Witnessed { value, .. } => Some(*value),
            UpperBound::Unknown { .. } => None,
        }
    }

    /// Re-checks the digest, every witness and the verdict against `action`.
    pub fn revalidate(&self, action: &GAction) -> Result<(), CertifyError> {
        if action_digest(action) != self.digest {
            return Err(CertifyError::DigestMismatch);
        }
        for b in &self.lower {
            if !validate_index_witness(action, b.generator, b.index, &b.witness)
                || action.group().element_order(b.generator) != b.p
            {
                return Err(CertifyError::InvalidWitness(format!("ind_{} witness", b.p)));
            }
        }
        if let UpperBound::Witnessed { value, labeling } = &self.upper {
            let f = labeling_to_map(action, labeling)
                .map_err(|e| CertifyError::InvalidWitness(e.to_string()))?;
            let jg = join_power(action.group(), labeling.n)?;
            if labeling.n != value + 1 || !validate_map(&f, Some((action, &jg))).is_valid() {
                return Err(CertifyError::InvalidWitness("upper-bound labeling".into()));
            }
        }
        let expected = match self.upper_bound() {
            Some(u) if u < self.lower_bound() => {
                return Err(CertifyError::InvalidWitness(
                    "lower bound exceeds upper bound".into(),
                ))
            }
            Some(u) if u == self.lower_bound() => Verdict::Determined,
            _ => Verdict::Bracketed,
        };
        if expected != self.verdict {
            return Err(CertifyError::InvalidWitness(
                "verdict does not follow from bounds".into(),
            ));
        }
        Ok(())
    }
}

fn prime_divisors(order: usize) -> Vec<usize> {
    (2..=order)
        .filter(|&q| is_prime(q) && order % q == 0)
        .collect()
}

fn lower_bound(action: &GAction, p: usize) -> Result<LowerBound, CertifyError> {
    let order = action.group().order();
    if !is_prime(p) || order % p != 0 {
        return Err(CertifyError::PrimeDoesNotDivide { p, order });
    }
    let mut best: Option<LowerBound> = None;
    // conjugate subgroups give equal indices, so one per class suffices
    for s in action.group().prime_order_subgroup_classes(p) {
        let smith = SmithComplex::for_subgroup(action, s.generator)?;
        let (index, classes) = smith.index()?;
        if best.as_ref().is_none_or(|b| index > b.index) {
            best = Some(LowerBound {
                p,
                generator: s.generator,
                index,
                witness: classes[index].class.clone(),
            });
        }
    }
    Ok(best.expect("Cauchy: a prime divisor of the order has a subgroup"))
}

fn lower_bounds(action: &GAction, primes: &[usize]) -> Result<Vec<LowerBound>, CertifyError> {
    if action.group().order() == 1 {
        return Err(CertifyError::TrivialGroup);
    }
    let primes = if primes.is_empty() {
        prime_divisors(action.group().order())
    } else {
        primes.to_vec()
    };
    primes.iter().map(|&p| lower_bound(action, p)).collect()
}

/// Lower bound from `ind_p` over `primes` (all prime divisors of `|G|` when
/// empty); upper bound from the first class count `n` in `lower+1..=n_max` that
/// admits a labeling without complementary edges, giving `tind ≤ n − 1`.
pub fn index_sandwich(
    action: &GAction,
    primes: &[usize],
    n_max: usize,
    budget: u64,
) -> Result<IndexCertificate, CertifyError> {
    let lower = lower_bounds(action, primes)?;
    let low = lower.iter().map(|b| b.index).max().unwrap_or(0);
    let mut upper = UpperBound::Unknown { scanned_to: n_max };
    let mut leaves = 0;
    let mut exceeded = Vec::new();
    if budget > 0 {
        for n in low + 1..=n_max {
            let r = search_labeling(&Mode::Full(action), n, SearchOptions::new(budget))?;
            leaves += r.leaves_explored;
            match r.outcome {
                SearchOutcome::Found(labeling) => {
                    upper = UpperBound::Witnessed {
                        value: n - 1,
                        labeling,
                    };
                    break;
                }
                SearchOutcome::Exhausted => {}
                SearchOutcome::BudgetExceeded => exceeded.push(n),
            }
        }
    } else {
        exceeded.extend(low + 1..=n_max);
    }
    let verdict = match &upper {
        UpperBound::Witnessed { value, .. } if *value == low => Verdict::Determined,
        _ => Verdict::Bracketed,
    };
    Ok(IndexCertificate {
        digest: action_digest(action),
        lower,
        upper,
        verdict,
        budget,
        leaves_explored: leaves,
        budget_exceeded_at: exceeded,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub status: CheckStatus,
    pub n: usize,
    /// `max_p ind_p` over the prime divisors of `|G|`.
    pub lower: usize,
    pub search: SearchOutcome<Labeling>,
    pub leaves_explored: u64,
}

/// On one triangulation: a labeling with `n` classes and no complementary edge
/// forces `ind_p ≤ n − 1`; finding one while `ind_p ≥ n` is a violation.
pub fn check_labeling_consistency(
    action: &GAction,
    n: usize,
    budget: u64,
) -> Result<ConsistencyReport, CertifyError> {
    let lower = lower_bounds(action, &[])?
        .iter()
        .map(|b| b.index)
        .max()
        .unwrap_or(0);
    let (search, leaves) = if budget == 0 {
        (SearchOutcome::BudgetExceeded, 0)
    } else {
        let r = search_labeling(&Mode::Full(action), n, SearchOptions::new(budget))?;
        (r.outcome, r.leaves_explored)
    };
    let status = match &search {
        SearchOutcome::Found(l) => {
            let sound = validate_labeling(l, &Mode::Full(action))?.is_equivariant()
                && find_complementary_edges(action.complex(), l).is_empty();
            if sound && lower < n {
                CheckStatus::Holds
            } else {
                CheckStatus::Violated
            }
        }
        SearchOutcome::Exhausted => CheckStatus::Holds,
        SearchOutcome::BudgetExceeded => CheckStatus::Inconclusive,
    };
    Ok(ConsistencyReport {
        status,
        n,
        lower,
        search,
        leaves_explored: leaves,
    })
}

#[derive(Clone, Debug)]
pub struct CamomileReport {
    pub status: CheckStatus,
    pub n: usize,
    pub p: usize,
    pub x0_index: Option<usize>,
    pub nct: Option<bool>,
    pub camomile_index: Option<usize>,
    pub subdivisions: usize,
    pub camomile: Option<GAction>,
}

/// `ind_p` variant of the camomile law: if `ind_p(X0) = n` and `X0 ⊂ X` is
/// `n`-c.t. over `F_p`, the camomile has `ind_p = n + 1`.
pub fn check_camomile(
    x: &SimplicialComplex,
    x0: &GAction,
    n: usize,
    p: usize,
) -> Result<CamomileReport, CertifyError> {
    let mut report = CamomileReport {
        status: CheckStatus::Skipped,
        n,
        p,
        x0_index: None,
        nct: None,
        camomile_index: None,
        subdivisions: 0,
        camomile: None,
    };
    let order = x0.group().order();
    if order == 1 {
        return Ok(report);
    }
    if !is_prime(p) || order % p != 0 {
        return Err(CertifyError::PrimeDoesNotDivide { p, order });
    }
    let emb = x0
        .complex()
        .embedding_into(x)
        .ok_or(crate::gcomplex::GComplexError::NotSubcomplex)?;
    let gen = x0.group().prime_order_subgroups(p)[0].generator;
    let (i0, _) = SmithComplex::for_subgroup(x0, gen)?.index()?;
    let inclusion = SimplicialMap::new(x0.complex().clone(), x.clone(), emb);
    let nct = is_nct(&inclusion, n, Coefficients::Prime(p))?;
    report.x0_index = Some(i0);
    report.nct = Some(nct);
    if i0 != n || !nct {
        report.status = CheckStatus::HypothesesNotMet;
        return Ok(report);
    }
    let c = camomile(x, x0)?;
    let (ic, _) = SmithComplex::for_subgroup(&c.action, gen)?.index()?;
    report.camomile_index = Some(ic);
    report.subdivisions = c.subdivisions;
    report.status = if ic == n + 1 {
        CheckStatus::Holds
    } else {
        CheckStatus::Violated
    };
    report.camomile = Some(c.action);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub status: CheckStatus,
    pub order: usize,
    /// One degree per equivariant self-map, in enumeration order.
    pub degrees: Vec<i64>,
    pub leaves_explored: u64,
}

impl DegreeReport {
    pub fn distinct_degrees(&self) -> Vec<i64> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// Enumerates equivariant simplicial self-maps of an oriented pseudomanifold and
/// checks that every degree is `≡ 1 (mod |G|)`.
pub fn check_degree_mod_order(action: &GAction, budget: u64) -> Result<DegreeReport, CertifyError> {
    let o = fundamental_cycle(action.complex())?;
    let q = action.group().order() as i64;
    let e = enumerate_equivariant_maps(action, action, SearchOptions::new(budget))?;
    let Some(maps) = e.maps else {
        return Ok(DegreeReport {
            status: CheckStatus::Inconclusive,
            order: q as usize,
            degrees: Vec::new(),
            leaves_explored: e.leaves_explored,
        });
    };
    let degrees = maps
        .iter()
        .map(|f| degree(f, &o, &o))
        .collect::<Result<Vec<_>, _>>()?;
    let status = if degrees.iter().all(|d| (d - 1).rem_euclid(q) == 0) {
        CheckStatus::Holds
    } else {
        CheckStatus::Violated
    };
    Ok(DegreeReport {
        status,
        order: q as usize,
        degrees,
        leaves_explored: e.leaves_explored,
    })
}

#[derive(Clone, Debug)]
pub struct JoinSelfMapReport {
    pub status: CheckStatus,
    pub join: GAction,
    /// A map `X * G → X`, present only when the check is violated.
    pub counterexample: Option<SimplicialMap>,
    pub leaves_explored: u64,
}

/// Searches for an equivariant simplicial map `X * J^1(G) → X`; none should exist.
pub fn check_no_join_selfmap(
    action: &GAction,
    budget: u64,
) -> Result<JoinSelfMapReport, CertifyError> {
    if action.group().order() == 1 {
        return Err(CertifyError::TrivialGroup);
    }
    let joined = join(action, &join_power(action.group(), 1)?)?;
    let r = search_equivariant_map(&joined, action, SearchOptions::new(budget))?;
    let (status, counterexample) = match r.outcome {
        SearchOutcome::Found(f) => (CheckStatus::Violated, Some(f)),
        SearchOutcome::Exhausted => (CheckStatus::Holds, None),
        SearchOutcome::BudgetExceeded => (CheckStatus::Inconclusive, None),
    };
    Ok(JoinSelfMapReport {
        status,
        join: joined,
        counterexample,
        leaves_explored: r.leaves_explored,
    })
}
