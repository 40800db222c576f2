//! Star actions, twisted cocycles and their cohomology, and twisting a
//! datum by a cocycle.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::action::{DatumAction, FiniteGroup};
use crate::error::{Error, Result};
use crate::lattice::{big_vec, solve_rational, IntMatrix};
use crate::mat::Mat;
use crate::rootdatum::{BasedRootDatum, DatumAutomorphism, MatrixGroup, RootDatum};

/// Default bound on `|M|^(number of generators)` in [`z1_enumerate`].
pub const Z1_BOUND: usize = 1_000_000;

/// The unique Weyl element `w` with `σ(Δ) = w(Δ)`.
pub fn base_transport(based: &BasedRootDatum, sigma: &DatumAutomorphism) -> Result<DatumAutomorphism> {
    let d = based.datum();
    let perm = d.root_permutation(sigma).ok_or(Error::NotAnAutomorphism)?;
    let positive = based.positive_roots();
    let mut current: HashSet<usize> = positive.iter().map(|&i| perm[i]).collect();
    // Walk σ(Π) back to Π one simple reflection at a time; u·σ(Π) = Π.
    let mut u = d.identity_automorphism();
    for _ in 0..=d.num_roots() {
        let Some(&s) = based.base().iter().find(|&&a| !current.contains(&a)) else {
            let w = u.inverse();
            let mut lhs: Vec<usize> = based.base().iter().map(|&a| perm[a]).collect();
            let wperm = d.root_permutation(&w).ok_or(Error::NotAnAutomorphism)?;
            let mut rhs: Vec<usize> = based.base().iter().map(|&a| wperm[a]).collect();
            lhs.sort_unstable();
            rhs.sort_unstable();
            if lhs != rhs {
                return Err(Error::InvalidBase("image of the base is not a Weyl translate".into()));
            }
            return Ok(w);
        };
        let r = d.reflection(s);
        let rperm = d.root_permutation(&r).expect("reflection permutes roots");
        current = current.iter().map(|&i| rperm[i]).collect();
        u = r.compose(&u);
    }
    Err(Error::InvalidBase("image of the base is not a base".into()))
}

/// A map `c` from a finite group into datum automorphisms together with the
/// base-preserving action `σ ↦ σ★` it is a cocycle for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarCocycle {
    pub values: Vec<DatumAutomorphism>,
    pub star: Vec<DatumAutomorphism>,
    pub galois: FiniteGroup,
}

/// `σ★(w) = σ★ ∘ w ∘ σ★⁻¹`.
fn star_conj(star: &DatumAutomorphism, w: &DatumAutomorphism) -> DatumAutomorphism {
    w.conjugate_by(star)
}

impl StarCocycle {
    /// Checks `c(e) = 1` and `c(στ) = c(σ)·σ★(c(τ))` on all pairs.
    pub fn new(galois: FiniteGroup, values: Vec<DatumAutomorphism>, star: Vec<DatumAutomorphism>) -> Result<Self> {
        let n = galois.order();
        if values.len() != n || star.len() != n {
            return Err(Error::InvalidCocycle("one value per group element is required".into()));
        }
        if !values[galois.identity()].is_identity() {
            return Err(Error::InvalidCocycle("c(e) is not the identity".into()));
        }
        for s in 0..n {
            for t in 0..n {
                if values[galois.mul(s, t)] != values[s].compose(&star_conj(&star[s], &values[t])) {
                    return Err(Error::InvalidCocycle(format!(
                        "c({}·{}) ≠ c({})·{}★(c({}))",
                        galois.name(s),
                        galois.name(t),
                        galois.name(s),
                        galois.name(s),
                        galois.name(t)
                    )));
                }
            }
        }
        Ok(Self { values, star, galois })
    }

    pub fn trivial(galois: FiniteGroup, star: Vec<DatumAutomorphism>) -> Self {
        let n = star.first().map_or(0, |s| s.chars.rows());
        let values = vec![DatumAutomorphism::identity(n); galois.order()];
        Self { values, star, galois }
    }

    pub fn value(&self, s: usize) -> &DatumAutomorphism {
        &self.values[s]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(DatumAutomorphism::is_identity)
    }

    /// `σ ↦ κ⁻¹·c(σ)·σ★(κ)`.
    pub fn cobound(&self, kappa: &DatumAutomorphism) -> Self {
        let inv = kappa.inverse();
        let values = self
            .values
            .iter()
            .zip(&self.star)
            .map(|(c, s)| inv.compose(c).compose(&star_conj(s, kappa)))
            .collect();
        Self {
            values,
            star: self.star.clone(),
            galois: self.galois.clone(),
        }
    }
}

/// Replaces an action by its base-preserving correction `σ★ = c(σ)⁻¹∘σ`,
/// returning the based action `σ ↦ σ★` and the cocycle `c`.
pub fn star_action(action: &DatumAction, base: &[usize]) -> Result<(DatumAction, StarCocycle)> {
    let based = BasedRootDatum::new(action.datum().clone(), base.to_vec())?;
    let values: Vec<DatumAutomorphism> = action
        .images()
        .iter()
        .map(|s| base_transport(&based, s))
        .collect::<Result<_>>()?;
    let star: Vec<DatumAutomorphism> = values
        .iter()
        .zip(action.images())
        .map(|(c, s)| c.inverse().compose(s))
        .collect();
    let starred = DatumAction::from_images(action.datum(), Some(base), action.group().clone(), star.clone())?;
    let cocycle = StarCocycle::new(action.group().clone(), values, star)?;
    Ok((starred, cocycle))
}

/// Automorphisms of the datum mapping `Δ` onto itself.
pub fn diagram_automorphisms(based: &BasedRootDatum) -> Result<Vec<DatumAutomorphism>> {
    let d = based.datum();
    if !d.is_semisimple() {
        return Err(Error::UnsupportedDatum);
    }
    let base = based.base();
    let c = based.cartan_matrix();
    let mut out = Vec::new();
    for perm in cartan_permutations(&c, &c) {
        let targets: Vec<usize> = perm.iter().map(|&p| base[p]).collect();
        if let Some(g) = lattice_map(d, base, d, &targets) {
            out.push(g);
        }
    }
    out.sort();
    Ok(out)
}

/// The automorphism sending simple root `i` to simple root `perm[i]`, when
/// `perm` preserves the Cartan matrix and the map is integral.
pub fn diagram_automorphism(based: &BasedRootDatum, perm: &[usize]) -> Option<DatumAutomorphism> {
    let c = based.cartan_matrix();
    let k = c.len();
    if perm.len() != k || perm.iter().any(|&p| p >= k) {
        return None;
    }
    if (0..k).any(|i| (0..k).any(|j| c[i][j] != c[perm[i]][perm[j]])) {
        return None;
    }
    let targets: Vec<usize> = perm.iter().map(|&p| based.base()[p]).collect();
    lattice_map(based.datum(), based.base(), based.datum(), &targets)
}

/// All bijections `π` with `a[i][j] == b[π(i)][π(j)]`.
fn cartan_permutations(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<usize>> {
    fn extend(a: &[Vec<i64>], b: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = perm.len();
        if i == a.len() {
            out.push(perm.clone());
            return;
        }
        for p in 0..b.len() {
            if !used[p] && a[i][i] == b[p][p] && (0..i).all(|j| a[i][j] == b[p][perm[j]] && a[j][i] == b[perm[j]][p]) {
                used[p] = true;
                perm.push(p);
                extend(a, b, perm, used, out);
                perm.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    if a.len() == b.len() {
        extend(a, b, &mut Vec::new(), &mut vec![false; b.len()], &mut out);
    }
    out
}

/// The linear map sending the roots `from` of `src` to the roots `to` of
/// `dst`, when it is an isomorphism of root data.
fn lattice_map(src: &RootDatum, from: &[usize], dst: &RootDatum, to: &[usize]) -> Option<DatumAutomorphism> {
    let n = src.rank();
    if dst.rank() != n || from.len() != n {
        return None;
    }
    // Rows of A solve Rᵀ·a_k = (row k of R′), with R, R′ the root columns.
    let rt = IntMatrix::from_rows(&from.iter().map(|&i| src.root(i).to_vec()).collect::<Vec<_>>(), n);
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let rhs: Vec<i64> = to.iter().map(|&j| dst.root(j)[k]).collect();
        let sol = solve_rational(&rt, &big_vec(&rhs))?;
        let row: Option<Vec<i64>> = sol
            .iter()
            .map(|x| x.is_integer().then(|| num_traits::ToPrimitive::to_i64(&x.to_integer())).flatten())
            .collect();
        rows.push(row?);
    }
    isomorphism(src, dst, &Mat::square(&rows))
}

/// Wraps `chars: X* → X*′` as an isomorphism of root data when it is one.
pub fn isomorphism(src: &RootDatum, dst: &RootDatum, chars: &Mat) -> Option<DatumAutomorphism> {
    let n = src.rank();
    if dst.rank() != n || src.num_roots() != dst.num_roots() || chars.rows() != n || chars.cols() != n {
        return None;
    }
    let inv_t = chars.inverse_unimodular()?.transpose();
    // ⟨Ax, Bλ⟩′ = ⟨x, λ⟩ forces B = P′⁻¹·A⁻ᵀ·P.
    let p = src.pairing_matrix().cloned().unwrap_or_else(|| Mat::identity(n));
    let p2_inv = dst
        .pairing_matrix()
        .map_or_else(|| Some(Mat::identity(n)), Mat::inverse_unimodular)?;
    let cochars = p2_inv.mul(&inv_t).mul(&p);
    for i in 0..src.num_roots() {
        let j = dst.find_root(&chars.apply(src.root(i)))?;
        if dst.coroot(j) != cochars.apply(src.coroot(i)).as_slice() {
            return None;
        }
    }
    Some(DatumAutomorphism::from_parts(chars.clone(), cochars))
}

/// `Aut_Γ(Ψ₀)`: automorphisms `w·d` (Weyl element times base-preserving
/// automorphism) commuting with every element of `Γ`.
pub fn aut_gamma(gamma: &DatumAction) -> Result<MatrixGroup> {
    let based = gamma.based_datum()?;
    let diagram = diagram_automorphisms(&based)?;
    let w = based.weyl_group()?;
    let mut all = Vec::with_capacity(w.order() * diagram.len());
    for x in w.elements() {
        for g in &diagram {
            all.push(x.compose(g));
        }
    }
    Ok(gamma.fixed_subgroup(&MatrixGroup::from_elements(all)))
}

fn check_star_stable(star: &[DatumAutomorphism], module: &MatrixGroup, what: &str) -> Result<()> {
    for s in star {
        for m in module.elements() {
            if !module.contains(&star_conj(s, m)) {
                return Err(Error::InvalidGroup(format!("{what} is not stable under the star action")));
            }
        }
    }
    Ok(())
}

/// All twisted cocycles `galois → module`, sorted.
pub fn z1_enumerate(
    galois: &FiniteGroup,
    star: &[DatumAutomorphism],
    module: &MatrixGroup,
    bound: usize,
) -> Result<Vec<StarCocycle>> {
    if star.len() != galois.order() {
        return Err(Error::InvalidCocycle("one star image per group element is required".into()));
    }
    check_star_stable(star, module, "coefficient group")?;
    let gens = galois.generators();
    let m = module.order();
    let total = (0..gens.len()).try_fold(1usize, |acc, _| acc.checked_mul(m).filter(|&t| t <= bound));
    let Some(total) = total else {
        return Err(Error::EnumerationOverflow { bound });
    };
    let mut out = Vec::new();
    for code in 0..total {
        let mut choice = Vec::with_capacity(gens.len());
        let mut rest = code;
        for _ in &gens {
            choice.push(module.get(rest % m).clone());
            rest /= m;
        }
        if let Some(c) = extend_cocycle(galois, star, &gens, &choice) {
            if c.values.iter().all(|v| module.contains(v)) {
                if let Ok(c) = StarCocycle::new(galois.clone(), c.values, star.to_vec()) {
                    out.push(c);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Extends generator values by `c(xs) = c(x)·x★(c(s))`, failing on conflict.
fn extend_cocycle(
    galois: &FiniteGroup,
    star: &[DatumAutomorphism],
    gens: &[usize],
    choice: &[DatumAutomorphism],
) -> Option<StarCocycle> {
    let n = galois.order();
    let dim = star[0].chars.rows();
    let mut values: Vec<Option<DatumAutomorphism>> = vec![None; n];
    values[galois.identity()] = Some(DatumAutomorphism::identity(dim));
    let mut queue = std::collections::VecDeque::from([galois.identity()]);
    while let Some(x) = queue.pop_front() {
        let cx = values[x].clone().unwrap();
        for (&s, cs) in gens.iter().zip(choice) {
            let y = galois.mul(x, s);
            let cy = cx.compose(&star_conj(&star[x], cs));
            match &values[y] {
                Some(prev) if *prev != cy => return None,
                Some(_) => {}
                None => {
                    values[y] = Some(cy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(StarCocycle {
        values: values.into_iter().collect::<Option<_>>()?,
        star: star.to_vec(),
        galois: galois.clone(),
    })
}

/// Cocycles partitioned by `c ~ (σ ↦ κ⁻¹·c(σ)·σ★(κ))`.
#[derive(Clone, Debug)]
pub struct CohomologyClassSet {
    pub cocycles: Vec<StarCocycle>,
    pub cobounding_group: MatrixGroup,
    /// Class number of each cocycle; classes are numbered by representative.
    pub class_of: Vec<usize>,
    /// Index of the least cocycle of each class.
    pub representatives: Vec<usize>,
}

impl CohomologyClassSet {
    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    pub fn same_class(&self, a: &StarCocycle, b: &StarCocycle) -> Option<bool> {
        let i = self.cocycles.binary_search(a).ok()?;
        let j = self.cocycles.binary_search(b).ok()?;
        Some(self.class_of[i] == self.class_of[j])
    }

    pub fn class_of_cocycle(&self, c: &StarCocycle) -> Option<usize> {
        self.cocycles.binary_search(c).ok().map(|i| self.class_of[i])
    }
}

pub fn h1_classes(cocycles: &[StarCocycle], cobounding: &MatrixGroup) -> Result<CohomologyClassSet> {
    let mut cocycles = cocycles.to_vec();
    cocycles.sort();
    cocycles.dedup();
    if let Some(c) = cocycles.first() {
        check_star_stable(&c.star, cobounding, "cobounding group")?;
    }
    let index: HashMap<&StarCocycle, usize> = cocycles.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut class_of = vec![usize::MAX; cocycles.len()];
    let mut representatives = Vec::new();
    // Cocycles are sorted, so the first unvisited one is least in its class.
    for i in 0..cocycles.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        representatives.push(i);
        for kappa in cobounding.elements() {
            if let Some(&j) = index.get(&cocycles[i].cobound(kappa)) {
                class_of[j] = id;
            }
        }
    }
    Ok(CohomologyClassSet {
        cocycles,
        cobounding_group: cobounding.clone(),
        class_of,
        representatives,
    })
}

/// `H¹(G, W^Γ)` and its image `ℋ_Γ` in `H¹(G, Aut_Γ(Ψ₀))`.
#[derive(Clone, Debug)]
pub struct HGammaImage {
    pub star: DatumAction,
    pub h1: CohomologyClassSet,
    pub image: CohomologyClassSet,
}

pub fn h_gamma_image(gamma: &DatumAction, galois: &DatumAction, bound: usize) -> Result<HGammaImage> {
    let base = gamma.base().ok_or(Error::NotBased)?;
    if galois.datum() != gamma.datum() || !galois.commutes_with(gamma) {
        return Err(Error::CommutationViolated);
    }
    let (star, _) = star_action(galois, base)?;
    if !star.commutes_with(gamma) {
        return Err(Error::CommutationViolated);
    }
    let fixed = gamma.fixed_weyl()?;
    let z1 = z1_enumerate(galois.group(), star.images(), &fixed, bound)?;
    let h1 = h1_classes(&z1, &fixed)?;
    let image = h1_classes(&z1, &aut_gamma(gamma)?)?;
    Ok(HGammaImage { star, h1, image })
}

/// The action `σ·x = c(σ)(σ★x)` on the underlying datum of `star`.
pub fn twist_datum(star: &DatumAction, gamma: &DatumAction, c: &StarCocycle) -> Result<DatumAction> {
    let base = star.base().ok_or(Error::NotBased)?;
    if c.star != star.images() {
        return Err(Error::InvalidCocycle("cocycle belongs to a different star action".into()));
    }
    for v in &c.values {
        if gamma.images().iter().any(|g| !g.commutes_with(v)) {
            return Err(Error::InvalidCocycle("cocycle values are not Γ-fixed".into()));
        }
    }
    let images = c.values.iter().zip(&c.star).map(|(v, s)| v.compose(s)).collect();
    let twisted = DatumAction::from_images(star.datum(), None, star.group().clone(), images)?;
    if !twisted.commutes_with(gamma) {
        return Err(Error::CommutationViolated);
    }
    let (restar, recovered) = star_action(&twisted, base)?;
    if restar.images() != star.images() || recovered.values != c.values {
        return Err(Error::Internal("twisting does not recover the cocycle".into()));
    }
    Ok(twisted)
}

/// An isomorphism `Ψ → Ψ′` intertwining each listed action with the
/// corresponding one on `Ψ′`. Actions are paired positionally and must have
/// identical groups.
pub fn equivariant_isomorphic(
    src: &RootDatum,
    src_actions: &[&DatumAction],
    dst: &RootDatum,
    dst_actions: &[&DatumAction],
) -> Result<Option<DatumAutomorphism>> {
    if !src.is_semisimple() || !dst.is_semisimple() {
        return Err(Error::UnsupportedDatum);
    }
    if src_actions.len() != dst_actions.len() {
        return Err(Error::MalformedAction("action lists differ in length".into()));
    }
    for (a, b) in src_actions.iter().zip(dst_actions) {
        if a.group() != b.group() {
            return Err(Error::MalformedAction("paired actions have different groups".into()));
        }
        if a.datum() != src || b.datum() != dst {
            return Err(Error::MalformedAction("action is on a different datum".into()));
        }
    }
    if src.rank() != dst.rank() || src.num_roots() != dst.num_roots() {
        return Ok(None);
    }
    let sb = BasedRootDatum::standard(src.clone())?;
    let db = BasedRootDatum::standard(dst.clone())?;
    let w = db.weyl_group()?;
    let mut candidates = BTreeSet::new();
    for perm in cartan_permutations(&sb.cartan_matrix(), &db.cartan_matrix()) {
        let targets: Vec<usize> = perm.iter().map(|&p| db.base()[p]).collect();
        let Some(f0) = lattice_map(src, sb.base(), dst, &targets) else { continue };
        for x in w.elements() {
            candidates.insert(x.compose(&f0));
        }
    }
    // The identity, when it is a candidate, is preferred.
    let identity = DatumAutomorphism::identity(src.rank());
    let first = candidates.take(&identity);
    Ok(first.into_iter().chain(candidates).find(|f| {
        src_actions.iter().zip(dst_actions).all(|(a, b)| {
            a.images()
                .iter()
                .zip(b.images())
                .all(|(g, h)| f.chars.mul(&g.chars) == h.chars.mul(&f.chars))
        })
    }))
}
