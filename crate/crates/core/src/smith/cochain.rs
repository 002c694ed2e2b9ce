use serde::{Deserialize, Serialize};

use super::fp::{is_zero_vec, reduce, FpMatrix, Span};
use super::SmithError;
use crate::gcomplex::{
    is_prime, sort_sign, FiniteGroup, GAction, Simplex, SimplicialComplex, SimplicialMap,
};

/// Which cochain complex a class lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    #[serde(rename = "C")]
    Full,
    #[serde(rename = "rhoC")]
    Rho,
    #[serde(rename = "sigmaC")]
    Sigma,
}

impl Ambient {
    pub fn tag(self) -> &'static str {
        match self {
            Ambient::Full => "C",
            Ambient::Rho => "rhoC",
            Ambient::Sigma => "sigmaC",
        }
    }
}

/// A cohomology class given by a representative cocycle in the basis of
/// `k`-simplices of the underlying complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomClass {
    pub degree: usize,
    pub ambient: Ambient,
    pub representative: Vec<u32>,
}

impl CohomClass {
    /// Nonzero coefficients keyed by simplex vertex names, in basis order.
    pub fn sparse(&self, complex: &SimplicialComplex) -> Vec<(Vec<String>, u32)> {
        let simplices = if complex.dim().is_some_and(|d| self.degree <= d) {
            complex.simplices(self.degree)
        } else {
            &[]
        };
        simplices
            .iter()
            .zip(&self.representative)
            .filter(|(_, &c)| c != 0)
            .map(|(s, &c)| (complex.simplex_names(s), c))
            .collect()
    }

    /// Inverse of [`CohomClass::sparse`].
    pub fn from_sparse<S: AsRef<str>>(
        complex: &SimplicialComplex,
        degree: usize,
        ambient: Ambient,
        entries: &[(Vec<S>, u32)],
        p: u32,
    ) -> Result<Self, SmithError> {
        let len = cochain_len(complex, degree);
        let mut representative = vec![0u32; len];
        for (names, c) in entries {
            let s = complex
                .simplex_by_names(names)
                .filter(|s| s.dim() == degree)
                .ok_or_else(|| SmithError::UnknownSimplex {
                    simplex: names.iter().map(|n| n.as_ref().to_string()).collect(),
                })?;
            let i = complex.index_of(&s).expect("simplex found by name");
            representative[i] = c % p;
        }
        Ok(Self {
            degree,
            ambient,
            representative,
        })
    }
}

pub(crate) fn cochain_len(x: &SimplicialComplex, k: usize) -> usize {
    match x.dim() {
        Some(d) if k <= d => x.count(k),
        _ => 0,
    }
}

/// `(M c)[i] = sign[i] · c[source[i]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub source: Vec<usize>,
    pub sign: Vec<i32>,
}

impl SignedPermutation {
    pub fn apply(&self, c: &[u32], p: u32) -> Vec<u32> {
        self.source
            .iter()
            .zip(&self.sign)
            .map(|(&j, &s)| if s > 0 { c[j] } else { (p - c[j]) % p })
            .collect()
    }

    pub fn to_matrix(&self, p: u32) -> FpMatrix {
        let n = self.source.len();
        let mut m = FpMatrix::zeros(n, n, p);
        for (i, (&j, &s)) in self.source.iter().zip(&self.sign).enumerate() {
            m.set(i, j, reduce(s as i64, p));
        }
        m
    }
}

/// Simplicial cochains of a complex over `F_p`, with the coboundary matrices and,
/// when an action is supplied, the signed permutation each group element induces.
///
/// The action on cochains is `(g·c)(s) = c(g⁻¹·s)` for oriented simplices, so on
/// the sorted basis `(g·c)[s] = ε · c[sort(g⁻¹ s)]` with `ε` the parity of the sort.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    p: u32,
    complex: SimplicialComplex,
    d: Vec<FpMatrix>,
    group: Option<FiniteGroup>,
    matrices: Vec<Vec<SignedPermutation>>,
}

impl CochainComplex {
    pub fn build(
        x: &SimplicialComplex,
        p: usize,
        action: Option<&GAction>,
    ) -> Result<Self, SmithError> {
        if !is_prime(p) || p > u32::MAX as usize {
            return Err(SmithError::NotPrime(p));
        }
        let p32 = p as u32;
        if let Some(a) = action {
            if let Some((g, s)) = a.freeness_witness() {
                return Err(SmithError::NotFree {
                    element: g,
                    simplex: a.complex().simplex_names(&s),
                });
            }
        }
        let top = x.dim().map_or(0, |d| d + 1);
        let mut d = Vec::with_capacity(top);
        for k in 0..top {
            let rows = cochain_len(x, k + 1);
            let mut m = FpMatrix::zeros(rows, x.count(k), p32);
            if rows > 0 {
                for (i, s) in x.simplices(k + 1).iter().enumerate() {
                    for j in 0..s.len() {
                        let f = x.index_of(&s.facet(j)).expect("closed under faces");
                        m.add_at(i, f, if j % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
            d.push(m);
        }
        let (group, matrices) = match action {
            None => (None, Vec::new()),
            Some(a) => {
                let mats = a
                    .group()
                    .elements()
                    .map(|g| {
                        let ginv = a.group().inverse(g);
                        (0..top).map(|k| signed_permutation(a, ginv, k)).collect()
                    })
                    .collect();
                (Some(a.group().clone()), mats)
            }
        };
        Ok(Self {
            p: p32,
            complex: x.clone(),
            d,
            group,
            matrices,
        })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        self.group.as_ref()
    }

    /// Number of degrees carrying cochains (`dim + 1`, or 0 when empty).
    pub fn top(&self) -> usize {
        self.d.len()
    }

    pub fn len(&self, k: usize) -> usize {
        cochain_len(&self.complex, k)
    }

    /// `d_k : C^k → C^{k+1}`, or `None` beyond the top degree.
    pub fn coboundary(&self, k: usize) -> Option<&FpMatrix> {
        self.d.get(k)
    }

    pub fn apply_coboundary(&self, k: usize, c: &[u32]) -> Vec<u32> {
        match self.d.get(k) {
            Some(m) => m.mul_vec(c),
            None => Vec::new(),
        }
    }

    /// The signed permutation of element `g` in degree `k`.
    pub fn group_action(&self, g: usize, k: usize) -> Option<&SignedPermutation> {
        self.matrices.get(g).and_then(|m| m.get(k))
    }

    pub fn group_matrix(&self, g: usize, k: usize) -> Option<FpMatrix> {
        self.group_action(g, k).map(|m| m.to_matrix(self.p))
    }

    /// Full cohomology `H^k(X; F_p)`.
    pub fn cohomology(&self, k: usize) -> CohomologySpace {
        cohomology_space(self, k, Ambient::Full, None, None)
    }
}

fn signed_permutation(a: &GAction, ginv: usize, k: usize) -> SignedPermutation {
    let x = a.complex();
    let mut source = Vec::with_capacity(x.count(k));
    let mut sign = Vec::with_capacity(x.count(k));
    for s in x.simplices(k) {
        let (img, e) = a.act_signed(ginv, s);
        source.push(x.index_of(&img).expect("action is simplicial"));
        sign.push(e);
    }
    SignedPermutation { source, sign }
}

/// `H^k` of the subcomplex `R·C` (or of `C` itself when `r_k` is `None`), with a
/// basis of representative cocycles.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    degree: usize,
    ambient: Ambient,
    p: u32,
    len: usize,
    reps: Vec<Vec<u32>>,
    rep_ids: Vec<usize>,
    span: Span,
}

pub(crate) fn cohomology_space(
    c: &CochainComplex,
    k: usize,
    ambient: Ambient,
    r_prev: Option<&FpMatrix>,
    r_k: Option<&FpMatrix>,
) -> CohomologySpace {
    let p = c.p;
    let len = c.len(k);
    let mut space = CohomologySpace {
        degree: k,
        ambient,
        p,
        len,
        reps: Vec::new(),
        rep_ids: Vec::new(),
        span: Span::new(len, p),
    };
    if len == 0 {
        return space;
    }
    if k > 0 {
        let d = c.coboundary(k - 1).expect("degree within range");
        let b = match r_prev {
            Some(r) => d.mul(r),
            None => d.clone(),
        };
        for col in b.columns() {
            space.span.offer(&col);
        }
    }
    let d = c.coboundary(k).expect("degree within range");
    let cocycles: Vec<Vec<u32>> = match r_k {
        Some(r) => d
            .mul(r)
            .kernel_basis()
            .iter()
            .map(|x| r.mul_vec(x))
            .collect(),
        None => d.kernel_basis(),
    };
    for z in cocycles {
        let id = space.span.offered();
        if space.span.offer(&z) {
            space.rep_ids.push(id);
            space.reps.push(z);
        }
    }
    space
}

impl CohomologySpace {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.reps.len()
    }

    /// Representative cocycles of a basis.
    pub fn representatives(&self) -> &[Vec<u32>] {
        &self.reps
    }

    pub fn basis_class(&self, i: usize) -> CohomClass {
        CohomClass {
            degree: self.degree,
            ambient: self.ambient,
            representative: self.reps[i].clone(),
        }
    }

    /// Whether `z` is a cocycle of the ambient complex.
    pub fn is_cocycle(&self, z: &[u32]) -> bool {
        z.len() == self.len && self.span.contains(z)
    }

    /// Coordinates of the class of `z` in the representative basis; `None` when
    /// `z` is not a cocycle of the ambient.
    pub fn coordinates(&self, z: &[u32]) -> Option<Vec<u32>> {
        if z.len() != self.len {
            return None;
        }
        if self.len == 0 {
            return Some(Vec::new());
        }
        let all = self.span.coordinates(z)?;
        Some(
            self.rep_ids
                .iter()
                .map(|&i| all.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }

    /// Whether `z` is a cocycle representing the zero class.
    pub fn is_zero_class(&self, z: &[u32]) -> bool {
        self.coordinates(z).is_some_and(|c| is_zero_vec(&c))
    }

    /// Matrix of `f` from `self` into `target` in the two representative bases.
    /// Panics if `f` does not send cocycles to cocycles of the target.
    pub fn map_matrix(&self, target: &CohomologySpace, f: impl Fn(&[u32]) -> Vec<u32>) -> FpMatrix {
        let cols: Vec<Vec<u32>> = self
            .reps
            .iter()
            .map(|z| {
                target
                    .coordinates(&f(z))
                    .expect("map sends cocycles to cocycles")
            })
            .collect();
        FpMatrix::from_columns(target.dimension(), &cols, self.p)
    }
}

/// Pullback `f^*: C^k(Y) → C^k(X)` as an `n_k(X) × n_k(Y)` matrix; degenerate
/// images contribute zero.
pub fn pullback_matrix(f: &SimplicialMap, k: usize, p: u32) -> FpMatrix {
    let rows = cochain_len(&f.source, k);
    let cols = cochain_len(&f.target, k);
    let mut m = FpMatrix::zeros(rows, cols, p);
    if rows == 0 || cols == 0 {
        return m;
    }
    for (i, s) in f.source.simplices(k).iter().enumerate() {
        let image = f.image_list(s);
        let sorted = Simplex::new(image.clone());
        if sorted.len() != image.len() {
            continue;
        }
        let j = f.target.index_of(&sorted).expect("map is simplicial");
        m.add_at(i, j, sort_sign(&image) as i64);
    }
    m
}

/// `f^*: H^k(Y; F_p) → H^k(X; F_p)` in the representative bases of
/// [`CochainComplex::cohomology`], as a `dim H^k(X) × dim H^k(Y)` matrix.
pub fn induced_map(f: &SimplicialMap, k: usize, p: usize) -> Result<FpMatrix, SmithError> {
    if let Some(s) = first_non_simplicial(f) {
        return Err(SmithError::NotSimplicial { simplex: s });
    }
    let src = CochainComplex::build(&f.source, p, None)?.cohomology(k);
    let tgt = CochainComplex::build(&f.target, p, None)?.cohomology(k);
    let pb = pullback_matrix(f, k, p as u32);
    Ok(tgt.map_matrix(&src, |z| pb.mul_vec(z)))
}

pub(crate) fn first_non_simplicial(f: &SimplicialMap) -> Option<Vec<String>> {
    if f.vertex_map.len() != f.source.num_vertices()
        || f.vertex_map.iter().any(|&v| v >= f.target.num_vertices())
    {
        return Some(Vec::new());
    }
    f.source
        .maximal_simplices()
        .into_iter()
        .find(|s| !f.target.contains(&f.image(s)))
        .map(|s| f.source.simplex_names(&s))
}

/// Coefficients for the n-c.t. test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Prime(usize),
    Integers,
}

/// Large prime used to read integer maps on torsion-free cohomology.
pub const LARGE_PRIME: usize = 2_147_483_647;
const TORSION_PROBES: [usize; 3] = [2, 3, LARGE_PRIME];

/// Whether `h: X0 → X` induces the zero map on degree-`n` cohomology. Degree 0
/// uses reduced cohomology, so maps between connected spaces are 0-c.t.
///
/// Integer coefficients are handled when `H^n` of both spaces has the same
/// dimension over `F_2`, `F_3` and a large prime; the map is then read over the
/// large prime. Otherwise [`SmithError::UnsupportedTorsion`] is returned.
pub fn is_nct(h: &SimplicialMap, n: usize, coeff: Coefficients) -> Result<bool, SmithError> {
    let p = match coeff {
        Coefficients::Prime(p) => p,
        Coefficients::Integers => {
            for x in [&h.source, &h.target] {
                let dims = TORSION_PROBES
                    .iter()
                    .map(|&q| {
                        Ok((
                            q,
                            CochainComplex::build(x, q, None)?.cohomology(n).dimension(),
                        ))
                    })
                    .collect::<Result<Vec<_>, SmithError>>()?;
                if dims.iter().any(|&(_, d)| d != dims[0].1) {
                    return Err(SmithError::UnsupportedTorsion { degree: n, dims });
                }
            }
            LARGE_PRIME
        }
    };
    if n > 0 {
        return Ok(induced_map(h, n, p)?.is_zero());
    }
    if let Some(s) = first_non_simplicial(h) {
        return Err(SmithError::NotSimplicial { simplex: s });
    }
    let tgt = CochainComplex::build(&h.target, p, None)?.cohomology(0);
    let pb = pullback_matrix(h, 0, p as u32);
    Ok(tgt.representatives().iter().all(|z| {
        let w = pb.mul_vec(z);
        w.iter().all(|&x| x == w[0])
    }))
}
