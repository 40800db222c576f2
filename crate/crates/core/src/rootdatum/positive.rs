use std::collections::{BTreeSet, HashSet};

use num_traits::ToPrimitive;

use super::{RootDatum, WeylGroup, DEFAULT_WEYL_BOUND};
use crate::error::{Error, Result};
use crate::lattice::{big_vec, solve_rational, IntMatrix};

/// A root datum with a chosen base `Δ` (indices into the roots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRootDatum {
    datum: RootDatum,
    base: Vec<usize>,
    /// Coordinates of every root in terms of `Δ`.
    coords: Vec<Vec<i64>>,
}

impl BasedRootDatum {
    pub fn new(datum: RootDatum, base: Vec<usize>) -> Result<Self> {
        if base.iter().any(|&i| i >= datum.num_roots()) {
            return Err(Error::InvalidBase("index out of range".into()));
        }
        let coords = simple_coordinates(&datum, &base)?;
        for c in &coords {
            if !(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0)) {
                return Err(Error::InvalidBase("a root has mixed-sign coordinates".into()));
            }
        }
        for &b in &base {
            if indivisible_violation(&datum, datum.root(b)) {
                return Err(Error::InvalidBase(format!("root {b} is a multiple of another root")));
            }
        }
        Ok(Self { datum, base, coords })
    }

    /// The base cut out by the canonical generic functional.
    pub fn standard(datum: RootDatum) -> Result<Self> {
        let pos = standard_positive_system(&datum);
        let base = base_of(&datum, &pos);
        Self::new(datum, base)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn into_datum(self) -> RootDatum {
        self.datum
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn coords(&self, i: usize) -> &[i64] {
        &self.coords[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.coords[i].iter().sum::<i64>() > 0
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.datum.num_roots()).filter(|&i| self.is_positive(i)).collect()
    }

    /// `C[i][j] = ⟨α_i, α_j^∨⟩` over the base.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.base
            .iter()
            .map(|&i| {
                self.base
                    .iter()
                    .map(|&j| self.datum.pair(self.datum.root(i), self.datum.coroot(j)))
                    .collect()
            })
            .collect()
    }

    /// Weyl group generated by the simple reflections.
    pub fn weyl_group(&self) -> Result<WeylGroup> {
        WeylGroup::generate(&self.datum, &self.base, DEFAULT_WEYL_BOUND)
    }

    pub fn weyl_group_bounded(&self, bound: usize) -> Result<WeylGroup> {
        WeylGroup::generate(&self.datum, &self.base, bound)
    }
}

fn indivisible_violation(datum: &RootDatum, r: &[i64]) -> bool {
    (2..=4).any(|k| r.iter().all(|x| x % k == 0) && datum.find_root(&r.iter().map(|x| x / k).collect::<Vec<_>>()).is_some())
}

fn simple_coordinates(datum: &RootDatum, base: &[usize]) -> Result<Vec<Vec<i64>>> {
    let cols: Vec<Vec<i64>> = base.iter().map(|&i| datum.root(i).to_vec()).collect();
    let a = IntMatrix::from_columns(&cols, datum.rank());
    if crate::lattice::rank(&a) != base.len() {
        return Err(Error::InvalidBase("base roots are linearly dependent".into()));
    }
    datum
        .roots()
        .iter()
        .map(|r| {
            let sol = solve_rational(&a, &big_vec(r))
                .ok_or_else(|| Error::InvalidBase("a root is outside the span of the base".into()))?;
            sol.iter()
                .map(|x| {
                    if x.is_integer() {
                        x.to_integer().to_i64().ok_or_else(|| Error::Internal("coordinate overflow".into()))
                    } else {
                        Err(Error::InvalidBase("a root is not an integral combination of the base".into()))
                    }
                })
                .collect()
        })
        .collect()
}

/// A cocharacter `λ` with `⟨β, λ⟩ ≠ 0` for every root, found by trying
/// `λ = (1, m, m², …)` for `m = 2, 3, …`.
pub fn generic_functional(datum: &RootDatum) -> Vec<i64> {
    let n = datum.rank();
    for m in 2i64.. {
        let lambda: Vec<i64> = (0..n as u32).map(|k| m.pow(k)).collect();
        if datum.roots().iter().all(|r| datum.pair(r, &lambda) != 0) {
            return lambda;
        }
    }
    unreachable!()
}

/// `{β : ⟨β, λ⟩ > 0}` for the generic functional.
pub fn standard_positive_system(datum: &RootDatum) -> Vec<usize> {
    let lambda = generic_functional(datum);
    (0..datum.num_roots())
        .filter(|&i| datum.pair(datum.root(i), &lambda) > 0)
        .collect()
}

/// The indecomposable elements of a positive system: those not expressible
/// as a sum of two (possibly equal) members.
pub fn base_of(datum: &RootDatum, system: &[usize]) -> Vec<usize> {
    let set: HashSet<usize> = system.iter().copied().collect();
    let mut out: Vec<usize> = system
        .iter()
        .copied()
        .filter(|&b| {
            !system.iter().any(|&g| {
                let rest: Vec<i64> = datum.root(b).iter().zip(datum.root(g)).map(|(x, y)| x - y).collect();
                datum.find_root(&rest).is_some_and(|d| set.contains(&d))
            })
        })
        .collect();
    out.sort_unstable();
    out
}

/// Whether `set` is a positive system. A subset `Π` with `Φ = Π ⊔ −Π` is
/// one exactly when it is closed: `α, β ∈ Π` and `α + β ∈ Φ` imply
/// `α + β ∈ Π`.
pub fn is_positive_system(datum: &RootDatum, set: &[usize]) -> bool {
    let members: HashSet<usize> = set.iter().copied().collect();
    if members.len() != set.len() || 2 * set.len() != datum.num_roots() {
        return false;
    }
    for &i in set {
        match datum.negative(i) {
            Some(j) if !members.contains(&j) => {}
            _ => return false,
        }
    }
    set.iter().all(|&a| {
        set.iter().all(|&b| {
            let sum: Vec<i64> = datum.root(a).iter().zip(datum.root(b)).map(|(x, y)| x + y).collect();
            datum.find_root(&sum).is_none_or(|k| members.contains(&k))
        })
    })
}

/// All positive systems, as sorted index sets in canonical order. There is
/// one per Weyl group element.
pub fn positive_systems(datum: &RootDatum, weyl: &WeylGroup) -> Vec<Vec<usize>> {
    let start = standard_positive_system(datum);
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for g in weyl.elements() {
        let mut image: Vec<usize> = start
            .iter()
            .map(|&i| datum.find_root(&g.chars.apply(datum.root(i))).expect("Weyl element permutes roots"))
            .collect();
        image.sort_unstable();
        out.insert(image);
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdatum::from_cartan_type;

    #[test]
    fn positive_system_counts() {
        let a1 = from_cartan_type("A1:sc").unwrap();
        let w = a1.datum().weyl_group().unwrap();
        assert_eq!(positive_systems(a1.datum(), &w).len(), 2);

        let a2 = from_cartan_type("A2:sc").unwrap();
        let w = a2.datum().weyl_group().unwrap();
        assert_eq!(positive_systems(a2.datum(), &w).len(), 6);
    }

    #[test]
    fn counts_equal_weyl_order_rank_le_3() {
        for t in ["A1:sc", "A2:ad", "A3:sc", "B2:sc", "B3:sc", "C3:ad", "G2:sc", "BC1", "BC2", "BC3", "A1:sc x A2:sc"] {
            let b = from_cartan_type(t).unwrap();
            let w = b.datum().weyl_group().unwrap();
            let systems = positive_systems(b.datum(), &w);
            assert_eq!(systems.len(), w.order(), "{t}");
            assert!(systems.iter().all(|s| is_positive_system(b.datum(), s)), "{t}");
        }
    }

    #[test]
    fn closed_halves_are_exactly_functional_cuts() {
        // Oracle: a subset is a positive system iff some λ on a grid is
        // positive on it and negative on its complement.
        for t in ["A2:sc", "B2:ad", "G2:sc", "BC2", "A1:sc x A1:ad"] {
            let b = from_cartan_type(t).unwrap();
            let d = b.datum();
            let n = d.num_roots();
            let mut cuts: BTreeSet<Vec<usize>> = BTreeSet::new();
            for x in -40i64..=40 {
                for y in -40i64..=40 {
                    let l = [x, y];
                    if d.roots().iter().all(|r| d.pair(r, &l) != 0) {
                        cuts.insert((0..n).filter(|&i| d.pair(d.root(i), &l) > 0).collect());
                    }
                }
            }
            let mut found = BTreeSet::new();
            for mask in 0u32..(1 << n) {
                let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                if is_positive_system(d, &set) {
                    found.insert(set);
                }
            }
            assert_eq!(found, cuts, "{t}");
        }
    }

    #[test]
    fn base_of_a2() {
        let b = from_cartan_type("A2:sc").unwrap();
        let d = b.datum();
        let sys: Vec<usize> = [[2, -1], [-1, 2], [1, 1]].iter().map(|r| d.find_root(r).unwrap()).collect();
        let mut expected = vec![d.find_root(&[2, -1]).unwrap(), d.find_root(&[-1, 2]).unwrap()];
        expected.sort();
        assert_eq!(base_of(d, &sys), expected);
    }

    #[test]
    fn bc_base_excludes_divisible_root() {
        let b = from_cartan_type("BC1").unwrap();
        let d = b.datum();
        let sys = vec![d.find_root(&[1]).unwrap(), d.find_root(&[2]).unwrap()];
        assert_eq!(base_of(d, &sys), vec![d.find_root(&[1]).unwrap()]);
        assert!(is_positive_system(d, &sys));
    }

    #[test]
    fn rejects_non_systems() {
        let b = from_cartan_type("A2:sc").unwrap();
        let d = b.datum();
        let bad: Vec<usize> = [[2, -1], [-1, 2], [-1, -1]].iter().map(|r| d.find_root(r).unwrap()).collect();
        assert!(!is_positive_system(d, &bad));
    }

    #[test]
    fn invalid_base_detected() {
        let b = from_cartan_type("A2:sc").unwrap();
        let d = b.datum().clone();
        let i = d.find_root(&[2, -1]).unwrap();
        let j = d.find_root(&[1, 1]).unwrap();
        assert!(BasedRootDatum::new(d.clone(), vec![i, j]).is_err());
        let k = d.find_root(&[-1, 2]).unwrap();
        assert!(BasedRootDatum::new(d, vec![i, k]).is_ok());
    }
}
