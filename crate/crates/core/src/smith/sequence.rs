use super::cochain::{cohomology_space, Ambient, CochainComplex, CohomClass, CohomologySpace};
use super::fp::{is_zero_vec, sub_vec, FpMatrix};
use super::SmithError;
use crate::gcomplex::{is_prime, GAction};

/// Cochains of a free `Z_p`-complex together with `ρ = t − 1` and
/// `σ = 1 + t + … + t^{p−1}` in every degree.
///
/// `ρC` and `σC` are the images of these operators. Because the action is free,
/// `C` is a free `F_p[Z_p]`-module, so `ker σ = ρC` and `ker ρ = σC`, and `σC`
/// is the cochain complex of the orbit space under the transfer. Both short
/// exact sequences `0 → ρC → C → σC → 0` (by `σ`) and `0 → σC → C → ρC → 0`
/// (by `ρ`) are realized with these matrices.
#[derive(Clone, Debug)]
pub struct SmithComplex {
    cochains: CochainComplex,
    p: usize,
    rho: Vec<FpMatrix>,
    sigma: Vec<FpMatrix>,
}

/// One `u_n` class and whether it is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UClass {
    pub degree: usize,
    pub class: CohomClass,
    pub nonzero: bool,
}

/// `ind_p` with the subgroup used and a nonzero witness `u_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexResult {
    pub p: usize,
    /// Generator of the chosen subgroup of order `p`, as an element of the
    /// original group.
    pub generator: usize,
    pub index: usize,
    pub witness: CohomClass,
    pub classes: Vec<UClass>,
}

/// Rank data at one node `A → V → B` of a long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessNode {
    /// 1 for the sequence through `σ`, 2 for the sequence through `ρ`.
    pub sequence: u8,
    pub degree: usize,
    pub node: Ambient,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
}

impl ExactnessNode {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.rank_in + self.rank_out == self.dim
    }
}

impl SmithComplex {
    /// Builds the complex for a free action of the standard cyclic group of
    /// prime order `p`, whose element `1` plays the role of `t`.
    pub fn new(action: &GAction) -> Result<Self, SmithError> {
        let p = action.group().order();
        if !is_prime(p) || !action.group().is_standard_cyclic() {
            return Err(SmithError::NotPrimeCyclic { order: p });
        }
        if action.complex().is_empty() {
            return Err(SmithError::EmptyComplex);
        }
        let cochains = CochainComplex::build(action.complex(), p, Some(action))?;
        let p32 = p as u32;
        let mut rho = Vec::new();
        let mut sigma = Vec::new();
        for k in 0..cochains.top() {
            let n = cochains.len(k);
            let t = cochains.group_matrix(1, k).expect("degree within range");
            rho.push(t.sub(&FpMatrix::identity(n, p32)));
            let s = (0..p).fold(FpMatrix::zeros(n, n, p32), |acc, g| {
                acc.add(&cochains.group_matrix(g, k).expect("degree within range"))
            });
            sigma.push(s);
        }
        Ok(Self {
            cochains,
            p,
            rho,
            sigma,
        })
    }

    /// Restricts `action` to the subgroup generated by `generator` (which must
    /// have prime order) and builds its Smith complex.
    pub fn for_subgroup(action: &GAction, generator: usize) -> Result<Self, SmithError> {
        let order = action.group().element_order(generator);
        if !is_prime(order) {
            return Err(SmithError::NotPrimeCyclic { order });
        }
        Self::new(&action.restrict_to_cyclic(generator))
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn cochains(&self) -> &CochainComplex {
        &self.cochains
    }

    /// Number of degrees carrying cochains.
    pub fn top(&self) -> usize {
        self.cochains.top()
    }

    pub fn rho(&self, k: usize) -> Option<&FpMatrix> {
        self.rho.get(k)
    }

    pub fn sigma(&self, k: usize) -> Option<&FpMatrix> {
        self.sigma.get(k)
    }

    fn generator(&self, ambient: Ambient, k: usize) -> Option<&FpMatrix> {
        match ambient {
            Ambient::Full => None,
            Ambient::Rho => self.rho.get(k),
            Ambient::Sigma => self.sigma.get(k),
        }
    }

    /// Dimension of `ambient` in degree `k` as a subspace of `C^k`.
    pub fn subcomplex_dim(&self, ambient: Ambient, k: usize) -> usize {
        match self.generator(ambient, k) {
            Some(m) => m.rank(),
            None => self.cochains.len(k),
        }
    }

    pub fn cohomology(&self, ambient: Ambient, k: usize) -> CohomologySpace {
        let prev = k.checked_sub(1).and_then(|j| self.generator(ambient, j));
        cohomology_space(&self.cochains, k, ambient, prev, self.generator(ambient, k))
    }

    /// Whether `v` lies in the ambient subspace in degree `k`.
    pub fn in_ambient(&self, ambient: Ambient, k: usize, v: &[u32]) -> bool {
        v.len() == self.cochains.len(k)
            && match self.generator(ambient, k) {
                Some(m) => m.in_column_space(v),
                None => true,
            }
    }

    /// Whether `z` is a coboundary `d(R c)` inside the ambient. In degree 0 this is
    /// `z = 0`.
    pub fn is_coboundary(&self, ambient: Ambient, k: usize, z: &[u32]) -> bool {
        if is_zero_vec(z) {
            return true;
        }
        let Some(j) = k.checked_sub(1) else {
            return false;
        };
        let d = self.cochains.coboundary(j).expect("degree within range");
        let b = match self.generator(ambient, j) {
            Some(r) => d.mul(r),
            None => d.clone(),
        };
        b.in_column_space(z)
    }

    /// Whether a class vanishes in the cohomology of its ambient.
    pub fn is_zero(&self, class: &CohomClass) -> bool {
        self.is_coboundary(class.ambient, class.degree, &class.representative)
    }

    /// Checks that `class` is a cocycle lying in its ambient.
    pub fn is_valid_class(&self, class: &CohomClass) -> bool {
        let k = class.degree;
        if class.representative.len() != self.cochains.len(k) {
            return false;
        }
        self.in_ambient(class.ambient, k, &class.representative)
            && is_zero_vec(&self.cochains.apply_coboundary(k, &class.representative))
    }

    /// Some `c` with `σc = z` (ambient `σC`) or `ρc = z` (ambient `ρC`).
    pub fn lift(&self, class: &CohomClass) -> Result<Vec<u32>, SmithError> {
        let m = match class.ambient {
            Ambient::Sigma => &self.sigma,
            Ambient::Rho => &self.rho,
            Ambient::Full => return Err(SmithError::NoConnectingMap),
        };
        let k = class.degree;
        if class.representative.len() != self.cochains.len(k) {
            return Err(SmithError::LiftFailed { degree: k });
        }
        if class.representative.is_empty() {
            return Ok(Vec::new());
        }
        m[k].solve(&class.representative)
            .ok_or(SmithError::LiftFailed { degree: k })
    }

    /// Connecting map applied through a caller-supplied lift `c` of the class.
    /// The result lies in `ρC` for a `σC` class (`δ₁`) and in `σC` for a `ρC`
    /// class (`δ₂`).
    pub fn connect_via(&self, class: &CohomClass, c: &[u32]) -> Result<CohomClass, SmithError> {
        let (m, out) = match class.ambient {
            Ambient::Sigma => (&self.sigma, Ambient::Rho),
            Ambient::Rho => (&self.rho, Ambient::Sigma),
            Ambient::Full => return Err(SmithError::NoConnectingMap),
        };
        let k = class.degree;
        let is_lift = c.len() == self.cochains.len(k)
            && (c.is_empty() || m[k].mul_vec(c) == class.representative);
        if !is_lift {
            return Err(SmithError::LiftFailed { degree: k });
        }
        Ok(CohomClass {
            degree: k + 1,
            ambient: out,
            representative: self.cochains.apply_coboundary(k, c),
        })
    }

    /// `δ₁: H^k(σC) → H^{k+1}(ρC)` or `δ₂: H^k(ρC) → H^{k+1}(σC)`, chosen by the
    /// ambient of `class`.
    pub fn connecting(&self, class: &CohomClass) -> Result<CohomClass, SmithError> {
        let c = self.lift(class)?;
        self.connect_via(class, &c)
    }

    pub fn delta1(&self, class: &CohomClass) -> Result<CohomClass, SmithError> {
        if class.ambient != Ambient::Sigma {
            return Err(SmithError::NoConnectingMap);
        }
        self.connecting(class)
    }

    pub fn delta2(&self, class: &CohomClass) -> Result<CohomClass, SmithError> {
        if class.ambient != Ambient::Rho {
            return Err(SmithError::NoConnectingMap);
        }
        self.connecting(class)
    }

    /// `u_0`: the all-ones vertex cochain, the image of `1 ∈ H^0(X/Z_p)` in `σC^0`.
    pub fn u0(&self) -> CohomClass {
        CohomClass {
            degree: 0,
            ambient: Ambient::Sigma,
            representative: vec![1; self.cochains.len(0)],
        }
    }

    /// `u_0, …, u_kmax` with `u_{2d+1} = δ₁ u_{2d}` and `u_{2d+2} = δ₂ u_{2d+1}`.
    pub fn u_classes(&self, kmax: usize) -> Result<Vec<UClass>, SmithError> {
        let mut out = Vec::with_capacity(kmax + 1);
        let mut u = self.u0();
        for k in 0..=kmax {
            if k > 0 {
                u = self.connecting(&u)?;
            }
            out.push(UClass {
                degree: k,
                nonzero: !self.is_zero(&u),
                class: u.clone(),
            });
        }
        Ok(out)
    }

    /// Largest `n ≤ dim X` with `u_n ≠ 0`, with the `u` classes computed on the way.
    pub fn index(&self) -> Result<(usize, Vec<UClass>), SmithError> {
        let classes = self.u_classes(self.top() - 1)?;
        let n = classes
            .iter()
            .rposition(|u| u.nonzero)
            .expect("u_0 is nonzero on a nonempty complex");
        Ok((n, classes))
    }

    /// Whether `class` re-validates as a nonzero cocycle cohomologous to `u_n`.
    pub fn validate_witness(&self, class: &CohomClass) -> bool {
        if !self.is_valid_class(class) || self.is_zero(class) {
            return false;
        }
        let Ok(us) = self.u_classes(class.degree) else {
            return false;
        };
        let u = &us[class.degree].class;
        u.ambient == class.ambient
            && self.is_coboundary(
                class.ambient,
                class.degree,
                &sub_vec(&class.representative, &u.representative, self.p as u32),
            )
    }

    /// `ρ^p = 0`, `σ = ρ^{p−1}`, `σρ = ρσ = 0` and `d∘d = 0` in every degree.
    pub fn identities_hold(&self) -> bool {
        let c = &self.cochains;
        (0..self.top()).all(|k| {
            let r = &self.rho[k];
            let s = &self.sigma[k];
            r.pow(self.p).is_zero()
                && *s == r.pow(self.p - 1)
                && s.mul(r).is_zero()
                && r.mul(s).is_zero()
                && (k + 1 >= self.top()
                    || c.coboundary(k + 1)
                        .unwrap()
                        .mul(c.coboundary(k).unwrap())
                        .is_zero())
        })
    }

    fn cohomology_map(
        &self,
        src: &CohomologySpace,
        tgt: &CohomologySpace,
        map: MapKind,
    ) -> FpMatrix {
        let k = src.degree();
        src.map_matrix(tgt, |z| match map {
            MapKind::Inclusion => z.to_vec(),
            MapKind::Rho => self.rho[k].mul_vec(z),
            MapKind::Sigma => self.sigma[k].mul_vec(z),
            MapKind::Connecting => {
                let class = CohomClass {
                    degree: k,
                    ambient: src.ambient(),
                    representative: z.to_vec(),
                };
                self.connecting(&class)
                    .expect("lift exists for a free action")
                    .representative
            }
        })
    }

    /// Rank checks at every node of both long exact sequences.
    pub fn exactness(&self) -> Vec<ExactnessNode> {
        let top = self.top();
        let spaces = |a: Ambient| -> Vec<CohomologySpace> {
            (0..=top).map(|k| self.cohomology(a, k)).collect()
        };
        let full = spaces(Ambient::Full);
        let rho = spaces(Ambient::Rho);
        let sigma = spaces(Ambient::Sigma);
        let mut nodes = Vec::new();
        // sequence 1: H(ρC) → H(C) →σ H(σC) →δ₁ H(ρC)[+1]
        // sequence 2: H(σC) → H(C) →ρ H(ρC) →δ₂ H(σC)[+1]
        for (seq, sub, quo, proj) in [
            (1u8, &rho, &sigma, MapKind::Sigma),
            (2u8, &sigma, &rho, MapKind::Rho),
        ] {
            for k in 0..top {
                let incl = self.cohomology_map(&sub[k], &full[k], MapKind::Inclusion);
                let pr = self.cohomology_map(&full[k], &quo[k], proj);
                let delta = self.cohomology_map(&quo[k], &sub[k + 1], MapKind::Connecting);
                let delta_in = match k.checked_sub(1) {
                    Some(j) => self.cohomology_map(&quo[j], &sub[k], MapKind::Connecting),
                    None => FpMatrix::zeros(sub[0].dimension(), 0, self.p as u32),
                };
                let mut push = |node: Ambient, dim, a: &FpMatrix, b: &FpMatrix| {
                    nodes.push(ExactnessNode {
                        sequence: seq,
                        degree: k,
                        node,
                        dim,
                        rank_in: a.rank(),
                        rank_out: b.rank(),
                        composite_zero: b.mul(a).is_zero(),
                    })
                };
                push(sub[k].ambient(), sub[k].dimension(), &delta_in, &incl);
                push(Ambient::Full, full[k].dimension(), &incl, &pr);
                push(quo[k].ambient(), quo[k].dimension(), &pr, &delta);
            }
        }
        nodes
    }

    /// Matrix of `π^!∘π^*` on `H^k(X/Z_p) ≅ H^k(σC)`: inclusion into `C` followed
    /// by the transfer `σ`.
    pub fn transfer_composite(&self, k: usize) -> FpMatrix {
        let sigma = self.cohomology(Ambient::Sigma, k);
        let full = self.cohomology(Ambient::Full, k);
        let up = self.cohomology_map(&sigma, &full, MapKind::Inclusion);
        let down = self.cohomology_map(&full, &sigma, MapKind::Sigma);
        down.mul(&up)
    }
}

#[derive(Clone, Copy)]
enum MapKind {
    Inclusion,
    Rho,
    Sigma,
    Connecting,
}

/// `ind_p` of a free action, using the subgroup generated by `generator` or, if
/// `None`, the first subgroup of order `p` in element order.
pub fn ind_p(
    action: &GAction,
    p: usize,
    generator: Option<usize>,
) -> Result<IndexResult, SmithError> {
    if !is_prime(p) {
        return Err(SmithError::NotPrime(p));
    }
    let group = action.group();
    let g = match generator {
        Some(g) if g < group.order() && group.element_order(g) == p => g,
        _ => {
            let offered = offered_subgroups(action);
            match (generator, group.prime_order_subgroups(p).first()) {
                (None, Some(s)) => s.generator,
                _ => return Err(SmithError::NoSubgroup { p, offered }),
            }
        }
    };
    let smith = SmithComplex::for_subgroup(action, g)?;
    let (index, classes) = smith.index()?;
    Ok(IndexResult {
        p,
        generator: g,
        index,
        witness: classes[index].class.clone(),
        classes,
    })
}

/// `(order, generator)` for every subgroup of prime order.
pub fn offered_subgroups(action: &GAction) -> Vec<(usize, usize)> {
    let group = action.group();
    (2..=group.order())
        .filter(|&q| is_prime(q) && group.order() % q == 0)
        .flat_map(|q| {
            group
                .prime_order_subgroups(q)
                .into_iter()
                .map(move |s| (q, s.generator))
        })
        .collect()
}

/// Recomputes `ind_p` for the subgroup generated by `generator` and checks the
/// claimed index and witness.
pub fn validate_index_witness(
    action: &GAction,
    generator: usize,
    index: usize,
    witness: &CohomClass,
) -> bool {
    let Ok(smith) = SmithComplex::for_subgroup(action, generator) else {
        return false;
    };
    witness.degree == index
        && smith.validate_witness(witness)
        && matches!(smith.index(), Ok((n, _)) if n == index)
}
