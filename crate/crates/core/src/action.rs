//! Finite groups acting on root data.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{big_vec, integer_kernel, left_inverse, quotient_lattice, IntMatrix, RatMatrix};
use crate::mat::{self, Mat};
use crate::rootdatum::{BasedRootDatum, DatumAutomorphism, MatrixGroup, RootDatum, WeylGroup, DEFAULT_WEYL_BOUND};

/// Bound on the size of a group obtained by closing generator matrices.
pub const ACTION_CLOSURE_BOUND: usize = 10_000;

/// A finite group given by its multiplication table. Elements are `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates associativity, identity and inverses.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |m: &str| Err(Error::InvalidGroup(m.to_string()));
        if n == 0 {
            return bad("empty group");
        }
        if names.len() != n {
            return bad("element list and table have different sizes");
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table is not a total binary operation");
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
            return bad("no identity element");
        };
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == identity && table[y][x] == identity) {
                Some(y) => inverses.push(y),
                None => return bad(&format!("element {} has no inverse", names[x])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("multiplication is not associative");
                    }
                }
            }
        }
        Ok(Self {
            names,
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `ℤ/n` with elements `e, g, g^2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self {
            names,
            table,
            identity: 0,
            inverses: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.order(), b.order());
        let idx = |x: usize, y: usize| x * nb + y;
        let names = (0..na)
            .flat_map(|x| (0..nb).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", a.names[x], b.names[y]))
            .collect();
        let table = (0..na * nb)
            .map(|p| {
                (0..na * nb)
                    .map(|q| idx(a.mul(p / nb, q / nb), b.mul(p % nb, q % nb)))
                    .collect()
            })
            .collect();
        Self {
            names,
            table,
            identity: idx(a.identity, b.identity),
            inverses: (0..na * nb).map(|p| idx(a.inverse(p / nb), b.inverse(p % nb))).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order()];
        span[self.identity] = true;
        for x in 0..self.order() {
            if span[x] {
                continue;
            }
            gens.push(x);
            // Recompute the generated subgroup.
            span = vec![false; self.order()];
            span[self.identity] = true;
            let mut queue = VecDeque::from([self.identity]);
            while let Some(y) = queue.pop_front() {
                for &g in &gens {
                    let z = self.mul(y, g);
                    if !span[z] {
                        span[z] = true;
                        queue.push_back(z);
                    }
                }
            }
        }
        gens
    }
}

/// A generator of an action: a matrix on `X*` and the name of the abstract
/// group element it represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub matrix: Mat,
    pub label: String,
}

impl Generator {
    pub fn new(matrix: Mat, label: impl Into<String>) -> Self {
        Self {
            matrix,
            label: label.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum ActionGroup {
    Given(FiniteGroup),
    /// The matrix group generated by the generators, with elements named by
    /// shortest words in the generator labels.
    Closure,
}

/// A homomorphism from a finite group into the automorphisms of a datum.
/// When `base` is set the action is a based action: every image stabilizes it.
#[derive(Clone, Debug)]
pub struct DatumAction {
    group: FiniteGroup,
    images: Vec<DatumAutomorphism>,
    datum: RootDatum,
    base: Option<Vec<usize>>,
    perms: Vec<Vec<usize>>,
}

/// Builds an action from generator matrices. With [`ActionGroup::Given`] the
/// generator labels name group elements and the homomorphism is extended from
/// them; with [`ActionGroup::Closure`] the group is the generated matrix group.
pub fn make_action(
    datum: &RootDatum,
    base: Option<&[usize]>,
    generators: &[Generator],
    group: ActionGroup,
) -> Result<DatumAction> {
    let gens: Vec<DatumAutomorphism> = generators
        .iter()
        .map(|g| datum.automorphism(&g.matrix))
        .collect::<Result<_>>()?;
    match group {
        ActionGroup::Given(group) => {
            let labels: Vec<usize> = generators
                .iter()
                .map(|g| {
                    group
                        .find(&g.label)
                        .ok_or_else(|| Error::NotHomomorphism(format!("no group element named `{}`", g.label)))
                })
                .collect::<Result<_>>()?;
            let mut images: Vec<Option<DatumAutomorphism>> = vec![None; group.order()];
            images[group.identity()] = Some(datum.identity_automorphism());
            let mut queue = VecDeque::from([group.identity()]);
            while let Some(x) = queue.pop_front() {
                let ix = images[x].clone().unwrap();
                for (&s, m) in labels.iter().zip(&gens) {
                    let y = group.mul(x, s);
                    let iy = ix.compose(m);
                    match &images[y] {
                        Some(prev) if *prev != iy => {
                            return Err(Error::NotHomomorphism(format!(
                                "two words for `{}` have different images",
                                group.name(y)
                            )))
                        }
                        Some(_) => {}
                        None => {
                            images[y] = Some(iy);
                            queue.push_back(y);
                        }
                    }
                }
            }
            if images.iter().any(Option::is_none) {
                return Err(Error::NotHomomorphism("generators do not generate the group".into()));
            }
            DatumAction::from_images(datum, base, group, images.into_iter().map(Option::unwrap).collect())
        }
        ActionGroup::Closure => {
            let n = datum.rank();
            let id = DatumAutomorphism::identity(n);
            let mut elements = vec![id.clone()];
            let mut names = vec!["e".to_string()];
            let mut index: HashMap<Mat, usize> = HashMap::from([(id.chars.clone(), 0)]);
            let mut queue = VecDeque::from([0usize]);
            while let Some(x) = queue.pop_front() {
                for (g, m) in generators.iter().zip(&gens) {
                    let y = elements[x].compose(m);
                    if index.contains_key(&y.chars) {
                        continue;
                    }
                    if elements.len() >= ACTION_CLOSURE_BOUND {
                        return Err(Error::EnumerationOverflow {
                            bound: ACTION_CLOSURE_BOUND,
                        });
                    }
                    let name = if x == 0 {
                        g.label.clone()
                    } else {
                        format!("{}*{}", names[x], g.label)
                    };
                    index.insert(y.chars.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                    names.push(name);
                }
            }
            let table = elements
                .iter()
                .map(|a| elements.iter().map(|b| index[&a.chars.mul(&b.chars)]).collect())
                .collect();
            let group = FiniteGroup::from_table(names, table)?;
            DatumAction::from_images(datum, base, group, elements)
        }
    }
}

impl DatumAction {
    /// Validates that `images` is a homomorphism into `Aut(datum)` and, for a
    /// based action, that every image stabilizes the base.
    pub fn from_images(
        datum: &RootDatum,
        base: Option<&[usize]>,
        group: FiniteGroup,
        images: Vec<DatumAutomorphism>,
    ) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::NotHomomorphism("one image per group element is required".into()));
        }
        let perms: Vec<Vec<usize>> = images
            .iter()
            .map(|g| datum.root_permutation(g).ok_or(Error::NotAnAutomorphism))
            .collect::<Result<_>>()?;
        for a in 0..group.order() {
            for b in 0..group.order() {
                if images[group.mul(a, b)] != images[a].compose(&images[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "image({}·{}) ≠ image({})∘image({})",
                        group.name(a),
                        group.name(b),
                        group.name(a),
                        group.name(b)
                    )));
                }
            }
        }
        let action = Self {
            group,
            images,
            datum: datum.clone(),
            base: base.map(<[usize]>::to_vec),
            perms,
        };
        if base.is_some() && !action.stabilizes_base() {
            return Err(Error::BaseNotStabilized);
        }
        Ok(action)
    }

    pub fn trivial(datum: &RootDatum, base: Option<&[usize]>) -> Self {
        Self::from_images(datum, base, FiniteGroup::trivial(), vec![datum.identity_automorphism()])
            .expect("trivial action is valid")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn images(&self) -> &[DatumAutomorphism] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &DatumAutomorphism {
        &self.images[g]
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn base(&self) -> Option<&[usize]> {
        self.base.as_deref()
    }

    pub fn based_datum(&self) -> Result<BasedRootDatum> {
        BasedRootDatum::new(self.datum.clone(), self.base.clone().ok_or(Error::NotBased)?)
    }

    /// The same action, viewed as a based action on `base`.
    pub fn with_base(&self, base: &[usize]) -> Result<Self> {
        Self::from_images(&self.datum, Some(base), self.group.clone(), self.images.clone())
    }

    pub fn without_base(&self) -> Self {
        Self {
            base: None,
            ..self.clone()
        }
    }

    /// Root permutation induced by element `g`.
    pub fn permutation(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn stabilizes(&self, set: &[usize]) -> bool {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        self.perms.iter().all(|p| {
            let mut img: Vec<usize> = set.iter().map(|&i| p[i]).collect();
            img.sort_unstable();
            img == sorted
        })
    }

    pub fn stabilizes_base(&self) -> bool {
        self.base.as_ref().is_some_and(|b| self.stabilizes(b))
    }

    /// Whether every image commutes with every image of `other`.
    pub fn commutes_with(&self, other: &Self) -> bool {
        self.images
            .iter()
            .all(|a| other.images.iter().all(|b| a.commutes_with(b)))
    }

    /// The orbit `Γ·β` as sorted root indices.
    pub fn orbit(&self, root: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.perms.iter().map(|p| p[root]).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// `Ξ_β`: the orbit itself when it is orthogonal, otherwise the sums
    /// `θ + θ'` of non-orthogonal pairs. Always an orthogonal orbit.
    pub fn xi_orbit(&self, root: usize) -> Result<Vec<usize>> {
        if self.base.is_none() {
            return Err(Error::NotBased);
        }
        let d = &self.datum;
        let orbit = self.orbit(root);
        let orthogonal = |a: usize, b: usize| d.pair(d.root(a), d.coroot(b)) == 0;
        if orbit
            .iter()
            .all(|&a| orbit.iter().all(|&b| a == b || orthogonal(a, b)))
        {
            return Ok(orbit);
        }
        let mut xi = Vec::new();
        for &t in &orbit {
            let partners: Vec<usize> = orbit
                .iter()
                .copied()
                .filter(|&u| u != t && !(orthogonal(t, u) && orthogonal(u, t)))
                .collect();
            let [p] = partners[..] else {
                return Err(Error::MalformedAction(format!(
                    "root {t} has {} non-orthogonal partners in its orbit",
                    partners.len()
                )));
            };
            let sum = mat::add(d.root(t), d.root(p));
            let s = d
                .find_root(&sum)
                .ok_or_else(|| Error::MalformedAction(format!("sum of roots {t} and {p} is not a root")))?;
            if orbit.contains(&s) {
                return Err(Error::MalformedAction(format!("sum of roots {t} and {p} lies in the orbit")));
            }
            xi.push(s);
        }
        xi.sort_unstable();
        xi.dedup();
        Ok(xi)
    }

    /// The Weyl group of the underlying datum, from simple reflections when
    /// the action is based.
    pub fn weyl_group(&self) -> Result<WeylGroup> {
        match &self.base {
            Some(b) => WeylGroup::generate(&self.datum, b, DEFAULT_WEYL_BOUND),
            None => self.datum.weyl_group(),
        }
    }

    /// `W^Γ`: Weyl elements commuting with every image.
    pub fn fixed_weyl(&self) -> Result<MatrixGroup> {
        let w = self.weyl_group()?;
        Ok(self.fixed_subgroup(&w))
    }

    pub fn fixed_subgroup(&self, group: &MatrixGroup) -> MatrixGroup {
        let distinct: Vec<&DatumAutomorphism> = {
            let mut v: Vec<&DatumAutomorphism> = self.images.iter().collect();
            v.sort();
            v.dedup();
            v
        };
        group.filter(|w| distinct.iter().all(|g| g.commutes_with(w)))
    }

    pub fn coinvariants(&self) -> Result<CoinvariantMap> {
        CoinvariantMap::new(self)
    }
}

/// The maps between `X*`, its coinvariants mod torsion `X̄*`, and the fixed
/// cocharacters `X̄_* = X_*^Γ`.
#[derive(Clone, Debug)]
pub struct CoinvariantMap {
    /// `X* ↠ X̄*`, `m × n`.
    pub i_star: IntMatrix,
    /// Right inverse of `i_star`: lifts of the basis of `X̄*`, `n × m`.
    pub section: IntMatrix,
    /// `X̄* ↪ V*` by averaging over the group, `n × m`.
    pub iota: RatMatrix,
    /// `X̄_* ↪ X_*`, `n × m`; columns are the basis of the fixed lattice.
    pub i_lower: IntMatrix,
    /// Left inverse of `i_lower`, `m × n`.
    pub retraction: IntMatrix,
    /// Pairing between the bases of `X̄*` and `X̄_*`, `m × m`.
    pub pairing: IntMatrix,
    pub torsion_invariants: Vec<BigInt>,
    i_star_small: Mat,
}

impl CoinvariantMap {
    fn new(action: &DatumAction) -> Result<Self> {
        let d = action.datum();
        let n = d.rank();
        let mut distinct: Vec<&DatumAutomorphism> = action.images().iter().collect();
        distinct.sort();
        distinct.dedup();

        let mut relations: Vec<Vec<BigInt>> = Vec::new();
        for g in &distinct {
            for j in 0..n {
                let col: Vec<i64> = (0..n).map(|i| i64::from(i == j) - g.chars.get(i, j)).collect();
                if col.iter().any(|&x| x != 0) {
                    relations.push(big_vec(&col));
                }
            }
        }
        let quotient = quotient_lattice(n, &relations);
        let i_star = quotient.projection.clone();
        let section = quotient.section.clone();
        let m = quotient.free_rank;

        let mut stacked = IntMatrix::zeros(0, n);
        for g in &distinct {
            stacked = stacked.vstack(&g.cochars.sub(&Mat::identity(n)).to_int_matrix());
        }
        let kernel = integer_kernel(&stacked);
        if kernel.len() != m {
            return Err(Error::Internal(format!(
                "coinvariant rank {m} differs from fixed cocharacter rank {}",
                kernel.len()
            )));
        }
        let i_lower = IntMatrix::from_big_rows(&kernel, n).transpose();
        let retraction = left_inverse(&i_lower)
            .ok_or_else(|| Error::Internal("fixed cocharacter basis is not saturated".into()))?;

        let p = d.pairing_matrix().map_or_else(|| IntMatrix::identity(n), Mat::to_int_matrix);
        let pairing = section.transpose().mul(&p).mul(&i_lower);

        let order = BigRational::from_integer(BigInt::from(action.group().order()));
        let mut sum = RatMatrix::zeros(n, m);
        for g in action.images() {
            sum = sum.add(&RatMatrix::from_int(&g.chars.to_int_matrix().mul(&section)));
        }
        let iota = sum.scale(&order.recip());

        let i_star_small = Mat::from_int_matrix(&i_star).ok_or_else(|| Error::Internal("projection overflow".into()))?;
        let map = Self {
            i_star,
            section,
            iota,
            i_lower,
            retraction,
            pairing,
            torsion_invariants: quotient.torsion_invariants,
            i_star_small,
        };
        map.check(action, &p)?;
        Ok(map)
    }

    fn check(&self, action: &DatumAction, p: &IntMatrix) -> Result<()> {
        let fail = |m: &str| Err(Error::Internal(m.to_string()));
        let n = action.datum().rank();
        for g in action.images() {
            let rel = g.chars.to_int_matrix().sub(&IntMatrix::identity(n));
            if !self.i_star.mul(&rel).is_zero() {
                return fail("projection does not kill x − γx");
            }
            let fixed = g.cochars.to_int_matrix().mul(&self.i_lower);
            if fixed != self.i_lower {
                return fail("fixed cocharacters are not fixed");
            }
            let averaged = RatMatrix::from_int(&g.chars.to_int_matrix()).mul(&self.iota);
            if averaged != self.iota {
                return fail("averaging map is not invariant");
            }
        }
        if !RatMatrix::from_int(&self.i_star).mul(&self.iota).to_int().is_some_and(|m| m.is_identity()) {
            return fail("projection after averaging is not the identity");
        }
        if !self.pairing.is_unimodular() {
            return fail("restricted pairing is not perfect");
        }
        // i* is the transpose of i_* with respect to the pairings.
        if self.i_star.transpose().mul(&self.pairing) != p.mul(&self.i_lower) {
            return fail("projection is not the transpose of the inclusion");
        }
        let via_iota = self.iota.transpose().mul(&RatMatrix::from_int(&p.mul(&self.i_lower)));
        if via_iota != RatMatrix::from_int(&self.pairing) {
            return fail("pairing through the averaging map disagrees");
        }
        if !self.retraction.mul(&self.i_lower).is_identity() {
            return fail("retraction is not a left inverse");
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.i_star.rows()
    }

    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        self.i_star_small.apply(x)
    }

    /// Coordinates in the `X̄_*` basis of a fixed cocharacter.
    pub fn fixed_coordinates(&self, lambda: &[i64]) -> Option<Vec<i64>> {
        let big = big_vec(lambda);
        let c = self.retraction.mul_vec(&big);
        if self.i_lower.mul_vec(&c) != big {
            return None;
        }
        c.iter().map(num_traits::ToPrimitive::to_i64).collect()
    }

    /// The action of `g` on `X̄*`, i.e. `i*(g x)` in terms of `i*(x)`.
    pub fn induced_chars(&self, g: &Mat) -> Mat {
        Mat::from_int_matrix(&self.i_star.mul(&g.to_int_matrix()).mul(&self.section)).expect("small entries")
    }

    /// The action of `g` on `X̄_*`.
    pub fn induced_cochars(&self, g: &Mat) -> Mat {
        Mat::from_int_matrix(&self.retraction.mul(&g.to_int_matrix()).mul(&self.i_lower)).expect("small entries")
    }

    /// Whether `i*(g x)` depends only on `i*(x)`: `g` maps the relation
    /// lattice into itself.
    pub fn is_well_defined(&self, g: &Mat) -> bool {
        let n = g.rows();
        (0..n).all(|j| {
            let rel: Vec<i64> = (0..n).map(|i| i64::from(i == j)).collect();
            let lifted = self.section.mul_vec(&self.i_star.mul_vec(&big_vec(&rel)));
            let diff: Vec<BigInt> = big_vec(&rel).iter().zip(&lifted).map(|(a, b)| a - b).collect();
            // diff lies in ker i*; its image under g must too.
            let gd = g.to_int_matrix().mul_vec(&diff);
            self.i_star.mul_vec(&gd).iter().all(Zero::is_zero)
        })
    }

    pub fn pairing_small(&self) -> Mat {
        Mat::from_int_matrix(&self.pairing).expect("small entries")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdatum::from_cartan_type;

    fn swap2() -> Mat {
        Mat::square(&[vec![0, 1], vec![1, 0]])
    }

    fn swap13() -> Mat {
        Mat::square(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]])
    }

    fn based_action(t: &str, m: Mat) -> DatumAction {
        let b = from_cartan_type(t).unwrap();
        make_action(b.datum(), Some(b.base()), &[Generator::new(m, "g")], ActionGroup::Given(FiniteGroup::cyclic(2)))
            .unwrap()
    }

    fn idx(a: &DatumAction, r: &[i64]) -> usize {
        a.datum().find_root(r).unwrap()
    }

    #[test]
    fn cyclic_and_product_groups() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.mul(2, 2), 1);
        assert_eq!(z3.inverse(1), 2);
        let p = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &z3);
        assert_eq!(p.order(), 6);
        assert!(FiniteGroup::from_table(p.names().to_vec(), p.table().to_vec()).is_ok());
        assert_eq!(z3.generators(), vec![1]);
        assert_eq!(FiniteGroup::trivial().generators(), Vec::<usize>::new());
    }

    #[test]
    fn invalid_tables_rejected() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(FiniteGroup::from_table(names.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(names, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn a2_flip_action() {
        let a = based_action("A2:sc", swap2());
        let a1 = idx(&a, &[2, -1]);
        let a2 = idx(&a, &[-1, 2]);
        let mut expected = vec![a1, a2];
        expected.sort();
        assert_eq!(a.orbit(a1), expected);
        assert!(a.stabilizes_base());
    }

    #[test]
    fn non_permuting_generator_rejected() {
        let b = from_cartan_type("A2:sc").unwrap();
        let err = make_action(
            b.datum(),
            None,
            &[Generator::new(Mat::square(&[vec![1, 0], vec![0, 2]]), "g")],
            ActionGroup::Closure,
        )
        .unwrap_err();
        assert_eq!(err, Error::NotAnAutomorphism);
    }

    #[test]
    fn base_must_be_stabilized() {
        let b = from_cartan_type("A2:sc").unwrap();
        let minus = Mat::square(&[vec![-1, 0], vec![0, -1]]);
        let err = make_action(b.datum(), Some(b.base()), &[Generator::new(minus, "g")], ActionGroup::Closure);
        assert_eq!(err.unwrap_err(), Error::BaseNotStabilized);
    }

    #[test]
    fn homomorphism_failure_detected() {
        let b = from_cartan_type("A2:sc").unwrap();
        // The swap has order 2, so it cannot represent a generator of ℤ/3.
        let err = make_action(
            b.datum(),
            None,
            &[Generator::new(swap2(), "g")],
            ActionGroup::Given(FiniteGroup::cyclic(3)),
        );
        assert!(matches!(err, Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn closure_names_elements_by_words() {
        let b = from_cartan_type("A2:sc").unwrap();
        let a = make_action(b.datum(), Some(b.base()), &[Generator::new(swap2(), "flip")], ActionGroup::Closure).unwrap();
        assert_eq!(a.group().names(), &["e".to_string(), "flip".to_string()]);
    }

    #[test]
    fn trivial_action_orbits_are_singletons() {
        let b = from_cartan_type("B2:sc").unwrap();
        let a = DatumAction::trivial(b.datum(), Some(b.base()));
        for i in 0..b.datum().num_roots() {
            assert_eq!(a.orbit(i), vec![i]);
            assert_eq!(a.xi_orbit(i).unwrap(), vec![i]);
        }
    }

    #[test]
    fn xi_orbits() {
        let a = based_action("A2:sc", swap2());
        assert_eq!(a.xi_orbit(idx(&a, &[2, -1])).unwrap(), vec![idx(&a, &[1, 1])]);

        let a = based_action("A3:sc", swap13());
        let a1 = idx(&a, &[2, -1, 0]);
        let a3 = idx(&a, &[0, -1, 2]);
        let mut both = vec![a1, a3];
        both.sort();
        assert_eq!(a.xi_orbit(a1).unwrap(), both);
        let a2 = idx(&a, &[-1, 2, -1]);
        assert_eq!(a.orbit(a2), vec![a2]);
        assert_eq!(a.xi_orbit(a2).unwrap(), vec![a2]);
    }

    #[test]
    fn xi_orbit_requires_base() {
        let a = based_action("A2:sc", swap2()).without_base();
        assert_eq!(a.xi_orbit(0).unwrap_err(), Error::NotBased);
    }

    #[test]
    fn coinvariants_a2_flip() {
        let a = based_action("A2:sc", swap2());
        let c = a.coinvariants().unwrap();
        assert_eq!(c.i_star, IntMatrix::from_rows(&[vec![1, 1]], 2));
        assert_eq!(c.i_lower, IntMatrix::from_rows(&[vec![1], vec![1]], 1));
        assert_eq!(c.pairing, IntMatrix::identity(1));
    }

    #[test]
    fn coinvariants_trivial() {
        let b = from_cartan_type("A2:sc").unwrap();
        let c = DatumAction::trivial(b.datum(), Some(b.base())).coinvariants().unwrap();
        assert!(c.i_star.is_identity());
        assert!(c.pairing.is_identity());
    }

    #[test]
    fn coinvariants_a3_flip() {
        let a = based_action("A3:sc", swap13());
        let c = a.coinvariants().unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.i_lower.transpose(), IntMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 0]], 3));
        assert!(c.pairing.is_unimodular());
        assert_eq!(c.project(&[1, 2, 3]), vec![4, 2]);
    }

    #[test]
    fn fixed_weyl_orders() {
        let a = based_action("A2:sc", swap2());
        let f = a.fixed_weyl().unwrap();
        assert_eq!(f.order(), 2);
        // The nontrivial element is the reflection in α₁+α₂.
        let theta = a.datum().reflection(idx(&a, &[1, 1]));
        assert!(f.contains(&theta));

        assert_eq!(based_action("A3:sc", swap13()).fixed_weyl().unwrap().order(), 8);

        let b = from_cartan_type("A3:sc").unwrap();
        let t = DatumAction::trivial(b.datum(), Some(b.base()));
        assert_eq!(t.fixed_weyl().unwrap().order(), 24);
    }

    #[test]
    fn orbit_pairing_sums() {
        for (t, m) in [("A2:sc", swap2()), ("A3:sc", swap13())] {
            let a = based_action(t, m);
            let d = a.datum();
            for b in 0..d.num_roots() {
                let orbit = a.orbit(b);
                let s: i64 = orbit.iter().map(|&th| d.pair(d.root(b), d.coroot(th))).sum();
                let orthogonal = a.xi_orbit(b).unwrap() == orbit;
                assert_eq!(s, if orthogonal { 2 } else { 1 }, "{t} root {b}");
                let ratio = orbit.len() / a.xi_orbit(b).unwrap().len();
                assert!(ratio == 1 || ratio == 2);
            }
        }
    }
}
