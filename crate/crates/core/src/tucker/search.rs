use super::labeling::{Label, Labeling, Mode};
use super::TuckerError;
use crate::gcomplex::{GAction, Simplex, SimplicialComplex, SimplicialMap};

/// Result of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole space was explored without a witness.
    Exhausted,
    /// The leaf budget ran out first.
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult<T> {
    pub outcome: SearchOutcome<T>,
    /// Complete assignments plus pruned partial ones that were examined.
    pub leaves_explored: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of leaves to examine.
    pub budget: u64,
    /// Check constraints as soon as their vertices are assigned. Without pruning,
    /// constraints are only checked on complete assignments.
    pub prune: bool,
}

impl SearchOptions {
    pub fn new(budget: u64) -> Self {
        Self {
            budget,
            prune: true,
        }
    }

    pub fn naive(budget: u64) -> Self {
        Self {
            budget,
            prune: false,
        }
    }
}

/// Backtracking over one choice per unit. Each unit fixes a set of vertices; a
/// constraint is checked at the unit assigning its last vertex.
trait Space {
    type Witness;
    fn units(&self) -> usize;
    fn choices(&self, unit: usize) -> usize;
    fn assign(&mut self, unit: usize, choice: usize);
    fn check(&self, unit: usize) -> bool;
    fn witness(&self) -> Self::Witness;
}

enum Step {
    Done,
    Continue,
    Abort,
}

struct Driver<'s, S: Space> {
    space: &'s mut S,
    opts: SearchOptions,
    leaves: u64,
    collect: bool,
    found: Vec<S::Witness>,
}

impl<S: Space> Driver<'_, S> {
    fn leaf(&mut self) -> bool {
        if self.leaves >= self.opts.budget {
            return false;
        }
        self.leaves += 1;
        true
    }

    fn dfs(&mut self, unit: usize) -> Step {
        if unit == self.space.units() {
            if !self.leaf() {
                return Step::Abort;
            }
            let ok = self.opts.prune || (0..unit).all(|u| self.space.check(u));
            if !ok {
                return Step::Continue;
            }
            self.found.push(self.space.witness());
            return if self.collect {
                Step::Continue
            } else {
                Step::Done
            };
        }
        for c in 0..self.space.choices(unit) {
            self.space.assign(unit, c);
            if self.opts.prune && !self.space.check(unit) {
                if !self.leaf() {
                    return Step::Abort;
                }
                continue;
            }
            match self.dfs(unit + 1) {
                Step::Continue => {}
                stop => return stop,
            }
        }
        Step::Continue
    }
}

fn run<S: Space>(space: &mut S, opts: SearchOptions) -> SearchResult<S::Witness> {
    let mut d = Driver {
        space,
        opts,
        leaves: 0,
        collect: false,
        found: Vec::new(),
    };
    let outcome = match d.dfs(0) {
        Step::Done => SearchOutcome::Found(d.found.pop().expect("witness recorded")),
        Step::Continue => SearchOutcome::Exhausted,
        Step::Abort => SearchOutcome::BudgetExceeded,
    };
    SearchResult {
        outcome,
        leaves_explored: d.leaves,
    }
}

/// Every witness, or `None` in place of the list when the budget runs out.
fn run_all<S: Space>(space: &mut S, opts: SearchOptions) -> (Option<Vec<S::Witness>>, u64) {
    let mut d = Driver {
        space,
        opts,
        leaves: 0,
        collect: true,
        found: Vec::new(),
    };
    let complete = !matches!(d.dfs(0), Step::Abort);
    let leaves = d.leaves;
    (complete.then_some(d.found), leaves)
}

/// For each unit, the vertices it fixes as `(vertex, h)`: the vertex is `h·rep`.
/// Orbit units come first, ordered by smallest vertex; then singleton units.
fn orbit_units(action: &GAction, emb: &[usize], singles: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut units = Vec::new();
    for orbit in action.orbits() {
        let rep = orbit[0];
        units.push(
            action
                .group()
                .elements()
                .map(|h| (emb[action.act_vertex(h, rep)], h))
                .collect(),
        );
    }
    for &v in singles {
        units.push(vec![(v, action.group().identity())]);
    }
    units
}

/// Simplices (of dimension ≥ 1 and listed by `pick`) grouped by the unit that
/// assigns their last vertex.
fn constraints(
    x: &SimplicialComplex,
    units: &[Vec<(usize, usize)>],
    edges_only: bool,
) -> Vec<Vec<Simplex>> {
    let mut step = vec![usize::MAX; x.num_vertices()];
    for (i, u) in units.iter().enumerate() {
        for &(v, _) in u {
            step[v] = i;
        }
    }
    let mut out = vec![Vec::new(); units.len()];
    let simplices: Box<dyn Iterator<Item = &Simplex>> = if edges_only {
        Box::new(
            x.dim()
                .filter(|&d| d >= 1)
                .map_or(&[][..], |_| x.simplices(1))
                .iter(),
        )
    } else {
        Box::new(x.iter().filter(|s| s.len() > 1))
    };
    for s in simplices {
        let last = s.iter().map(|&v| step[v]).max().expect("nonempty simplex");
        out[last].push(s.clone());
    }
    out
}

struct LabelSpace<'a> {
    action: &'a GAction,
    n: usize,
    units: Vec<Vec<(usize, usize)>>,
    checks: Vec<Vec<Simplex>>,
    labels: Vec<Label>,
}

impl Space for LabelSpace<'_> {
    type Witness = Labeling;

    fn units(&self) -> usize {
        self.units.len()
    }

    fn choices(&self, _unit: usize) -> usize {
        self.action.group().order() * self.n
    }

    fn assign(&mut self, unit: usize, choice: usize) {
        let g = choice / self.n;
        let k = choice % self.n + 1;
        let group = self.action.group();
        for &(v, h) in &self.units[unit] {
            self.labels[v] = Label::new(group.mul(h, g), k);
        }
    }

    fn check(&self, unit: usize) -> bool {
        self.checks[unit].iter().all(|e| {
            let (a, b) = (self.labels[e[0]], self.labels[e[1]]);
            a.class != b.class || a.element == b.element
        })
    }

    fn witness(&self) -> Labeling {
        Labeling {
            n: self.n,
            labels: self.labels.clone(),
        }
    }
}

fn label_space<'a>(mode: &Mode<'a>, n: usize) -> Result<LabelSpace<'a>, TuckerError> {
    if n == 0 {
        return Err(TuckerError::ZeroClasses);
    }
    let x = mode.complex();
    let action = mode.action();
    if let Some(v) = vertex_stabilized(action) {
        return Err(TuckerError::NotFree { vertex: v });
    }
    let emb = mode.embedding()?;
    let mut moved = vec![false; x.num_vertices()];
    for &v in &emb {
        moved[v] = true;
    }
    let singles: Vec<usize> = (0..x.num_vertices()).filter(|&v| !moved[v]).collect();
    let units = orbit_units(action, &emb, &singles);
    let checks = constraints(x, &units, true);
    Ok(LabelSpace {
        action,
        n,
        units,
        checks,
        labels: vec![Label::new(0, 1); x.num_vertices()],
    })
}

fn vertex_stabilized(a: &GAction) -> Option<usize> {
    let e = a.group().identity();
    (0..a.complex().num_vertices()).find(|&v| {
        a.group()
            .elements()
            .any(|g| g != e && a.act_vertex(g, v) == v)
    })
}

/// Searches for an equivariant `(G, n)`-labeling without complementary edges.
///
/// Units are orbits (represented by their smallest vertex) and, in boundary mode,
/// single unconstrained vertices; choices run through `(g, k)` in lexicographic
/// order, so the labeling found is the least one in that order.
pub fn search_labeling(
    mode: &Mode,
    n: usize,
    opts: SearchOptions,
) -> Result<SearchResult<Labeling>, TuckerError> {
    if opts.budget == 0 {
        return Err(TuckerError::ZeroBudget);
    }
    let mut space = label_space(mode, n)?;
    Ok(run(&mut space, opts))
}

struct MapSpace<'a> {
    source: &'a GAction,
    target: &'a GAction,
    units: Vec<Vec<(usize, usize)>>,
    checks: Vec<Vec<Simplex>>,
    map: Vec<usize>,
}

impl Space for MapSpace<'_> {
    type Witness = SimplicialMap;

    fn units(&self) -> usize {
        self.units.len()
    }

    fn choices(&self, _unit: usize) -> usize {
        self.target.complex().num_vertices()
    }

    fn assign(&mut self, unit: usize, choice: usize) {
        for &(v, h) in &self.units[unit] {
            self.map[v] = self.target.act_vertex(h, choice);
        }
    }

    fn check(&self, unit: usize) -> bool {
        let tgt = self.target.complex();
        self.checks[unit]
            .iter()
            .all(|s| tgt.contains(&Simplex::new(s.iter().map(|&v| self.map[v]).collect())))
    }

    fn witness(&self) -> SimplicialMap {
        SimplicialMap::new(
            self.source.complex().clone(),
            self.target.complex().clone(),
            self.map.clone(),
        )
    }
}

fn map_space<'a>(source: &'a GAction, target: &'a GAction) -> Result<MapSpace<'a>, TuckerError> {
    if source.group() != target.group() {
        return Err(TuckerError::GroupMismatch);
    }
    if let Some(v) = vertex_stabilized(source) {
        return Err(TuckerError::NotFree { vertex: v });
    }
    let x = source.complex();
    let emb: Vec<usize> = (0..x.num_vertices()).collect();
    let units = orbit_units(source, &emb, &[]);
    let checks = constraints(x, &units, false);
    Ok(MapSpace {
        source,
        target,
        units,
        checks,
        map: vec![0; x.num_vertices()],
    })
}

/// Searches for an equivariant simplicial map by choosing the image of one
/// representative per source orbit and extending by equivariance.
pub fn search_equivariant_map(
    source: &GAction,
    target: &GAction,
    opts: SearchOptions,
) -> Result<SearchResult<SimplicialMap>, TuckerError> {
    let mut space = map_space(source, target)?;
    Ok(run(&mut space, opts))
}

/// Every equivariant simplicial map, in search order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapEnumeration {
    /// `None` when the budget ran out before the enumeration completed.
    pub maps: Option<Vec<SimplicialMap>>,
    pub leaves_explored: u64,
}

pub fn enumerate_equivariant_maps(
    source: &GAction,
    target: &GAction,
    opts: SearchOptions,
) -> Result<MapEnumeration, TuckerError> {
    let mut space = map_space(source, target)?;
    let (maps, leaves_explored) = run_all(&mut space, opts);
    Ok(MapEnumeration {
        maps,
        leaves_explored,
    })
}

/// Verdict of the boundary-mode Tucker check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TuckerVerdict {
    AllHaveComplementaryEdge,
    Counterexample(Labeling),
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuckerReport {
    pub verdict: TuckerVerdict,
    pub leaves_explored: u64,
}

/// Decides whether every labeling of `x` that is equivariant on `x0` has a
/// complementary edge.
pub fn tucker_harness(
    x: &SimplicialComplex,
    x0: &GAction,
    n: usize,
    opts: SearchOptions,
) -> Result<TuckerReport, TuckerError> {
    let r = search_labeling(&Mode::Boundary { complex: x, x0 }, n, opts)?;
    let verdict = match r.outcome {
        SearchOutcome::Found(l) => TuckerVerdict::Counterexample(l),
        SearchOutcome::Exhausted => TuckerVerdict::AllHaveComplementaryEdge,
        SearchOutcome::BudgetExceeded => TuckerVerdict::BudgetExceeded,
    };
    Ok(TuckerReport {
        verdict,
        leaves_explored: r.leaves_explored,
    })
}
