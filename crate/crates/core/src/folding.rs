//! The restricted root datum of a based action, and what descends to it:
//! fibers, the Weyl group isomorphism `W̄ ≅ W^Γ`, and positive systems.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::action::{CoinvariantMap, DatumAction};
use crate::error::{Error, Result};
use crate::mat::{self, Mat};
use crate::rootdatum::{
    base_of, is_positive_system, positive_systems, BasedRootDatum, DatumAutomorphism, MatrixGroup, RootDatum,
    WeylGroup, DEFAULT_WEYL_BOUND,
};

/// Where a restricted coroot came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorootProvenance {
    pub representative: usize,
    pub xi: Vec<usize>,
    /// `|Γ·β| / |Ξ_β|`, always 1 or 2.
    pub coefficient: i64,
}

#[derive(Clone, Debug)]
pub struct RestrictedDatum {
    datum: RootDatum,
    base: Vec<usize>,
    source: DatumAction,
    coinvariants: CoinvariantMap,
    fibers: Vec<Vec<usize>>,
    provenance: Vec<CorootProvenance>,
    restriction_of: Vec<usize>,
    induced: Vec<DatumAction>,
}

/// Restricts a based action to `(X̄*, Φ̄, X̄_*, Φ̄^∨)`. Each commuting action
/// is carried down to an action on the result.
pub fn restrict(action: &DatumAction, commuting: &[DatumAction]) -> Result<RestrictedDatum> {
    action.base().ok_or(Error::NotBased)?;
    if !action.stabilizes_base() {
        return Err(Error::BaseNotStabilized);
    }
    for other in commuting {
        if other.datum() != action.datum() || !action.commutes_with(other) {
            return Err(Error::CommutationViolated);
        }
    }
    let d = action.datum();
    let cm = action.coinvariants()?;

    let mut by_image: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for i in 0..d.num_roots() {
        by_image.entry(cm.project(d.root(i))).or_default().push(i);
    }

    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut fibers = Vec::new();
    let mut provenance = Vec::new();
    let mut restriction_of = vec![0; d.num_roots()];
    for (image, fiber) in by_image {
        if image.iter().all(|&x| x == 0) {
            return Err(Error::Internal("a root restricts to zero".into()));
        }
        if action.orbit(fiber[0]) != fiber {
            return Err(Error::Internal("restriction fiber is not a single orbit".into()));
        }
        let mut coroot: Option<(Vec<i64>, CorootProvenance)> = None;
        for &beta in &fiber {
            let xi = action.xi_orbit(beta)?;
            let orbit_len = fiber.len() as i64;
            let xi_len = xi.len() as i64;
            if orbit_len % xi_len != 0 || !matches!(orbit_len / xi_len, 1 | 2) {
                return Err(Error::Internal(format!("orbit-to-Ξ ratio {orbit_len}/{xi_len} is not 1 or 2")));
            }
            let coefficient = orbit_len / xi_len;
            let sum = xi
                .iter()
                .fold(vec![0; d.rank()], |acc, &x| mat::add(&acc, d.coroot(x)));
            let lifted = mat::scale(&sum, coefficient);
            let coords = cm
                .fixed_coordinates(&lifted)
                .ok_or_else(|| Error::Internal("restricted coroot is not Γ-fixed".into()))?;
            match &coroot {
                None => {
                    coroot = Some((
                        coords,
                        CorootProvenance {
                            representative: beta,
                            xi,
                            coefficient,
                        },
                    ))
                }
                Some((c, _)) if *c != coords => {
                    return Err(Error::Internal("restricted coroot depends on the orbit representative".into()))
                }
                Some(_) => {}
            }
        }
        let (c, p) = coroot.expect("fibers are nonempty");
        for &beta in &fiber {
            restriction_of[beta] = roots.len();
        }
        roots.push(image);
        coroots.push(c);
        fibers.push(fiber);
        provenance.push(p);
    }

    let datum = RootDatum::with_pairing(cm.rank(), roots, coroots, Some(cm.pairing_small()))?;
    let report = datum.verify_axioms();
    if !report.passed() {
        return Err(Error::Internal(format!("restricted datum fails verification: {report}")));
    }

    let source_based = action.based_datum()?;
    let mut restricted_positive: Vec<usize> = source_based
        .positive_roots()
        .into_iter()
        .map(|b| restriction_of[b])
        .collect();
    restricted_positive.sort_unstable();
    restricted_positive.dedup();
    let restricted_base = base_of(&datum, &restricted_positive);
    BasedRootDatum::new(datum.clone(), restricted_base.clone())?;

    let induced = commuting
        .iter()
        .map(|other| {
            let images = other
                .images()
                .iter()
                .map(|g| DatumAutomorphism::from_parts(cm.induced_chars(&g.chars), cm.induced_cochars(&g.cochars)))
                .collect();
            DatumAction::from_images(&datum, None, other.group().clone(), images)
        })
        .collect::<Result<_>>()?;

    Ok(RestrictedDatum {
        datum,
        base: restricted_base,
        source: action.clone(),
        coinvariants: cm,
        fibers,
        provenance,
        restriction_of,
        induced,
    })
}

impl RestrictedDatum {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// The base `Δ̄` of the positive system `i*(Π)`.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn based(&self) -> BasedRootDatum {
        BasedRootDatum::new(self.datum.clone(), self.base.clone()).expect("restricted base was validated")
    }

    pub fn source(&self) -> &DatumAction {
        &self.source
    }

    pub fn coinvariants(&self) -> &CoinvariantMap {
        &self.coinvariants
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn provenance(&self) -> &[CorootProvenance] {
        &self.provenance
    }

    /// Index in `Φ̄` of the restriction of source root `beta`.
    pub fn restriction_of(&self, beta: usize) -> usize {
        self.restriction_of[beta]
    }

    /// Actions induced by the commuting actions passed to [`restrict`].
    pub fn induced_actions(&self) -> &[DatumAction] {
        &self.induced
    }

    /// `{β ∈ Φ : i*β = ᾱ}` for a restricted root given by its coordinates.
    pub fn fiber(&self, restricted_root: &[i64]) -> Option<&[usize]> {
        self.datum.find_root(restricted_root).map(|i| self.fibers[i].as_slice())
    }

    /// The reduced subdatum: nondivisible roots, or nonmultipliable roots
    /// when `char_is_two`.
    pub fn reduced_subdatum(&self, char_is_two: bool) -> RootDatum {
        let d = &self.datum;
        let keep: Vec<usize> = (0..d.num_roots())
            .filter(|&i| {
                let r = d.root(i);
                if char_is_two {
                    d.find_root(&mat::scale(r, 2)).is_none()
                } else {
                    !(r.iter().all(|x| x % 2 == 0)
                        && d.find_root(&r.iter().map(|x| x / 2).collect::<Vec<_>>()).is_some())
                }
            })
            .collect();
        RootDatum::with_pairing(
            d.rank(),
            keep.iter().map(|&i| d.root(i).to_vec()).collect(),
            keep.iter().map(|&i| d.coroot(i).to_vec()).collect(),
            d.pairing_matrix().cloned(),
        )
        .expect("subdatum of a valid datum")
    }

    /// `i*(Π)` for a `Γ`-invariant positive system `Π`.
    pub fn transfer_forward(&self, system: &[usize]) -> Result<Vec<usize>> {
        if !is_positive_system(self.source.datum(), system) {
            return Err(Error::NotPositiveSystem("not a positive system of the source".into()));
        }
        if !self.source.stabilizes(system) {
            return Err(Error::NotInvariant);
        }
        let mut out: Vec<usize> = system.iter().map(|&b| self.restriction_of[b]).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `(i*)⁻¹(Π̄) ∩ Φ` for a positive system `Π̄` of the restricted datum.
    pub fn transfer_backward(&self, system: &[usize]) -> Result<Vec<usize>> {
        if !is_positive_system(&self.datum, system) {
            return Err(Error::NotPositiveSystem("not a positive system of the restricted datum".into()));
        }
        let mut out: Vec<usize> = system.iter().flat_map(|&a| self.fibers[a].iter().copied()).collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn weyl_group(&self) -> Result<WeylGroup> {
        WeylGroup::generate(&self.datum, &self.base, DEFAULT_WEYL_BOUND)
    }
}

/// The isomorphism `W̄ → W^Γ` determined by `w_ᾱ ↦ Π_{ξ∈Ξ_β} w_ξ` on simple
/// restricted roots.
#[derive(Clone, Debug)]
pub struct WeylDescent {
    pub restricted_weyl: WeylGroup,
    pub fixed_weyl: MatrixGroup,
    /// `forward[i]` is the index in `fixed_weyl` of the image of element `i`
    /// of `restricted_weyl`.
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
    /// Image of each simple restricted reflection, in base order.
    pub simple_lifts: Vec<DatumAutomorphism>,
}

impl WeylDescent {
    pub fn map(&self, w: &DatumAutomorphism) -> Option<&DatumAutomorphism> {
        let i = self.restricted_weyl.position(w)?;
        Some(self.fixed_weyl.get(self.forward[i]))
    }

    pub fn inverse_map(&self, w: &DatumAutomorphism) -> Option<&DatumAutomorphism> {
        let i = self.fixed_weyl.position(w)?;
        Some(self.restricted_weyl.get(self.backward[i]))
    }
}

pub fn weyl_descent_iso(restricted: &RestrictedDatum) -> Result<WeylDescent> {
    let action = restricted.source();
    let d = action.datum();
    let rd = restricted.datum();
    let wbar = restricted.weyl_group()?;
    let fixed = action.fixed_weyl()?;
    let fail = |m: &str| Err(Error::Internal(format!("Weyl descent: {m}")));

    let lifts: Vec<DatumAutomorphism> = restricted
        .base()
        .iter()
        .map(|&a| {
            restricted.provenance()[a]
                .xi
                .iter()
                .fold(d.identity_automorphism(), |acc, &x| acc.compose(&d.reflection(x)))
        })
        .collect();
    let gens: Vec<usize> = restricted
        .base()
        .iter()
        .map(|&a| wbar.position(&rd.reflection(a)).expect("simple reflection lies in W̄"))
        .collect();

    let mut forward: Vec<Option<usize>> = vec![None; wbar.order()];
    let mut images: HashMap<usize, DatumAutomorphism> = HashMap::new();
    let start = wbar.identity_index();
    forward[start] = fixed.position(&d.identity_automorphism());
    images.insert(start, d.identity_automorphism());
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let ix = images[&x].clone();
        for (&s, lift) in gens.iter().zip(&lifts) {
            let y = wbar.mul(x, s);
            let iy = ix.compose(lift);
            let Some(pos) = fixed.position(&iy) else {
                return fail("a lifted element is not Γ-fixed");
            };
            match forward[y] {
                Some(p) if p != pos => return fail("the lift is not well defined"),
                Some(_) => {}
                None => {
                    forward[y] = Some(pos);
                    images.insert(y, iy);
                    queue.push_back(y);
                }
            }
        }
    }
    let Some(forward) = forward.into_iter().collect::<Option<Vec<usize>>>() else {
        return fail("simple reflections do not generate W̄");
    };
    if wbar.order() != fixed.order() {
        return fail("W̄ and W^Γ have different orders");
    }
    let mut backward = vec![usize::MAX; fixed.order()];
    for (i, &j) in forward.iter().enumerate() {
        if backward[j] != usize::MAX {
            return fail("the map is not injective");
        }
        backward[j] = i;
    }
    for a in 0..wbar.order() {
        for b in 0..wbar.order() {
            if forward[wbar.mul(a, b)] != fixed.mul(forward[a], forward[b]) {
                return fail("the map is not multiplicative");
            }
        }
    }
    let i_star = Mat::from_int_matrix(&restricted.coinvariants().i_star).expect("small entries");
    for (a, &b) in forward.iter().enumerate() {
        if wbar.get(a).chars.mul(&i_star) != i_star.mul(&fixed.get(b).chars) {
            return fail("w̄(i*x) ≠ i*(w x)");
        }
    }
    Ok(WeylDescent {
        restricted_weyl: wbar,
        fixed_weyl: fixed,
        forward,
        backward,
        simple_lifts: lifts,
    })
}

/// The bijection between `Γ`-invariant positive systems of `Φ` and positive
/// systems of `Φ̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSystemCorrespondence {
    pub invariant_systems: Vec<Vec<usize>>,
    pub restricted_systems: Vec<Vec<usize>>,
    /// `forward[i]` indexes the restricted system of `invariant_systems[i]`.
    pub forward: Vec<usize>,
}

pub fn positive_system_correspondence(restricted: &RestrictedDatum) -> Result<PositiveSystemCorrespondence> {
    let action = restricted.source();
    let w = action.weyl_group()?;
    let invariant_systems: Vec<Vec<usize>> = positive_systems(action.datum(), &w)
        .into_iter()
        .filter(|s| action.stabilizes(s))
        .collect();
    let restricted_systems = positive_systems(restricted.datum(), &restricted.weyl_group()?);
    let fail = |m: &str| Err(Error::Internal(format!("positive systems: {m}")));
    if invariant_systems.len() != restricted_systems.len() {
        return fail("counts differ");
    }
    let mut forward = Vec::with_capacity(invariant_systems.len());
    let mut hit = vec![false; restricted_systems.len()];
    for s in &invariant_systems {
        let image = restricted.transfer_forward(s)?;
        let Ok(j) = restricted_systems.binary_search(&image) else {
            return fail("image is not a positive system");
        };
        if hit[j] || restricted.transfer_backward(&image)? != *s {
            return fail("transfers are not mutually inverse");
        }
        hit[j] = true;
        forward.push(j);
    }
    Ok(PositiveSystemCorrespondence {
        invariant_systems,
        restricted_systems,
        forward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{make_action, ActionGroup, FiniteGroup, Generator};
    use crate::rootdatum::{classify, from_cartan_type};

    fn flip(t: &str, m: Vec<Vec<i64>>) -> DatumAction {
        let b = from_cartan_type(t).unwrap();
        make_action(b.datum(), Some(b.base()), &[Generator::new(Mat::square(&m), "g")], ActionGroup::Closure).unwrap()
    }

    fn a2() -> DatumAction {
        flip("A2:sc", vec![vec![0, 1], vec![1, 0]])
    }

    fn a3() -> DatumAction {
        flip("A3:sc", vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]])
    }

    #[test]
    fn a2_fold_is_bc1() {
        let r = restrict(&a2(), &[]).unwrap();
        let d = r.datum();
        assert_eq!(d.roots(), &[vec![-2], vec![-1], vec![1], vec![2]]);
        assert_eq!(d.coroots(), &[vec![-1], vec![-2], vec![2], vec![1]]);
        assert!(!d.is_reduced());
        assert_eq!(classify(d).unwrap(), vec![("BC1".to_string(), 1)]);
        let theta = r.source().datum().find_root(&[1, 1]).unwrap();
        assert_eq!(r.fiber(&[2]).unwrap(), &[theta]);
        assert_eq!(r.provenance()[2].coefficient, 2);
    }

    #[test]
    fn a3_fold_is_b2_with_fixed_root_long() {
        let r = restrict(&a3(), &[]).unwrap();
        assert_eq!(r.datum().num_roots(), 8);
        assert_eq!(r.datum().rank(), 2);
        let comps = crate::rootdatum::decompose(r.datum()).unwrap();
        assert_eq!(comps[0].label, "B2/C2");
        let src = r.source().datum();
        let a1 = src.find_root(&[2, -1, 0]).unwrap();
        let a2 = src.find_root(&[-1, 2, -1]).unwrap();
        let a3 = src.find_root(&[0, -1, 2]).unwrap();
        let fixed = r.datum().root(r.restriction_of(a2)).to_vec();
        let moved = r.restriction_of(a1);
        let fixed_idx = r.restriction_of(a2);
        let rd = r.datum();
        assert_eq!(rd.pair(rd.root(fixed_idx), rd.coroot(moved)), -2);
        assert_eq!(rd.pair(rd.root(moved), rd.coroot(fixed_idx)), -1);
        let long: Vec<&[i64]> = comps[0].long_simple_roots.iter().map(|&i| rd.root(i)).collect();
        assert_eq!(long.len(), 1);
        // Long roots form one W̄-orbit, so the fixed root is long iff it shares it.
        let w = rd.weyl_group().unwrap();
        assert!(w.elements().iter().any(|g| g.chars.apply(long[0]) == fixed));
        let mut f = vec![a1, a3];
        f.sort();
        assert_eq!(r.fiber(r.datum().root(r.restriction_of(a1))).unwrap(), f.as_slice());
        assert_eq!(r.fiber(&fixed).unwrap(), &[a2]);
    }

    #[test]
    fn trivial_fold_is_identity() {
        let b = from_cartan_type("B3:ad").unwrap();
        let a = DatumAction::trivial(b.datum(), Some(b.base()));
        let r = restrict(&a, &[]).unwrap();
        let mut roots = b.datum().roots().to_vec();
        roots.sort();
        assert_eq!(r.datum().roots(), roots.as_slice());
        assert!(r.coinvariants().i_star.is_identity());
    }

    #[test]
    fn reduced_subdata() {
        let r = restrict(&a2(), &[]).unwrap();
        let nd = r.reduced_subdatum(false);
        assert_eq!(nd.roots(), &[vec![-1], vec![1]]);
        assert_eq!(nd.coroots(), &[vec![-2], vec![2]]);
        let nm = r.reduced_subdatum(true);
        assert_eq!(nm.roots(), &[vec![-2], vec![2]]);
        assert_eq!(nm.coroots(), &[vec![-1], vec![1]]);
        for d in [nd, nm] {
            assert!(d.verify_axioms().passed());
            assert!(d.is_reduced());
        }
        let r = restrict(&a3(), &[]).unwrap();
        assert_eq!(r.reduced_subdatum(false), *r.datum());
        assert_eq!(r.reduced_subdatum(true), *r.datum());
    }

    #[test]
    fn weyl_descent_small() {
        let r = restrict(&a2(), &[]).unwrap();
        let wd = weyl_descent_iso(&r).unwrap();
        assert_eq!(wd.restricted_weyl.order(), 2);
        let theta = r.source().datum().find_root(&[1, 1]).unwrap();
        assert_eq!(wd.simple_lifts, vec![r.source().datum().reflection(theta)]);

        let r = restrict(&a3(), &[]).unwrap();
        let wd = weyl_descent_iso(&r).unwrap();
        assert_eq!(wd.restricted_weyl.order(), 8);
        assert_eq!(wd.fixed_weyl.order(), 8);
    }

    #[test]
    fn positive_system_bijection_small() {
        let c = positive_system_correspondence(&restrict(&a2(), &[]).unwrap()).unwrap();
        assert_eq!(c.invariant_systems.len(), 2);
        let c = positive_system_correspondence(&restrict(&a3(), &[]).unwrap()).unwrap();
        assert_eq!(c.invariant_systems.len(), 8);
    }

    #[test]
    fn transfer_rejects_non_invariant_system() {
        let r = restrict(&a2(), &[]).unwrap();
        let d = r.source().datum();
        let sys: Vec<usize> = [[2, -1], [1, 1], [1, -2]].iter().map(|v| d.find_root(v).unwrap()).collect();
        assert!(is_positive_system(d, &sys));
        assert_eq!(r.transfer_forward(&sys).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn commuting_action_descends() {
        let a = a2();
        let d = a.datum().clone();
        let minus = Mat::square(&[vec![-1, 0], vec![0, -1]]);
        let gal = make_action(&d, None, &[Generator::new(minus, "g")], ActionGroup::Given(FiniteGroup::cyclic(2))).unwrap();
        let r = restrict(&a, std::slice::from_ref(&gal)).unwrap();
        assert_eq!(r.induced_actions()[0].image(1).chars, Mat::square(&[vec![-1]]));

        let s1 = d.reflection(d.find_root(&[2, -1]).unwrap());
        let bad = make_action(&d, None, &[Generator::new(s1.chars, "s")], ActionGroup::Closure).unwrap();
        assert_eq!(restrict(&a, &[bad]).unwrap_err(), Error::CommutationViolated);
    }
}
