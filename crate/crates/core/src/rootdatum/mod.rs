//! Root data, their automorphisms, and axiom checking.
//!
//! Both lattices are concretely `ℤ^n`. The pairing between them is the dot
//! product unless an explicit pairing matrix `P` is attached, in which case
//! `⟨x, λ⟩ = xᵀ·P·λ`.

mod cartan;
mod classify;
mod group;
mod positive;

use std::collections::HashMap;
use std::fmt;

pub use cartan::{cartan_matrix, from_cartan_type, CartanFamily};
pub use classify::{classify, decompose, weyl_order_of, ComponentType};
pub use group::{MatrixGroup, WeylGroup, DEFAULT_WEYL_BOUND};
pub use positive::{base_of, generic_functional, is_positive_system, positive_systems, BasedRootDatum};

use crate::error::{Error, Result};
use crate::mat::{self, Mat};

/// A root datum `(X*, Φ, X_*, Φ^∨)` with roots and coroots stored as
/// parallel lists: `coroots[i]` is the coroot of `roots[i]`.
#[derive(Clone)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    pairing: Option<Mat>,
    pairing_inv: Option<Mat>,
    root_index: HashMap<Vec<i64>, usize>,
    coroot_index: HashMap<Vec<i64>, usize>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.roots == other.roots
            && self.coroots == other.coroots
            && self.pairing == other.pairing
    }
}

impl Eq for RootDatum {}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatum")
            .field("rank", &self.rank)
            .field("roots", &self.roots)
            .field("coroots", &self.coroots)
            .field("pairing", &self.pairing)
            .finish()
    }
}

impl RootDatum {
    /// Builds a datum with the standard pairing. Only shapes are checked
    /// here; the axioms are checked by [`RootDatum::verify_axioms`].
    pub fn new(rank: usize, roots: Vec<Vec<i64>>, coroots: Vec<Vec<i64>>) -> Result<Self> {
        Self::with_pairing(rank, roots, coroots, None)
    }

    /// Builds a datum whose pairing is `⟨x, λ⟩ = xᵀ·P·λ`. An identity `P` is
    /// normalized away.
    pub fn with_pairing(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        pairing: Option<Mat>,
    ) -> Result<Self> {
        if roots.len() != coroots.len() {
            return Err(Error::Shape(format!(
                "{} roots but {} coroots",
                roots.len(),
                coroots.len()
            )));
        }
        for (i, v) in roots.iter().chain(&coroots).enumerate() {
            if v.len() != rank {
                return Err(Error::Shape(format!("vector {i} has length {} ≠ rank {rank}", v.len())));
            }
        }
        let (pairing, pairing_inv) = match pairing {
            Some(p) if p.is_identity() && p.rows() == rank => (None, None),
            Some(p) => {
                if p.rows() != rank || p.cols() != rank {
                    return Err(Error::Shape("pairing matrix must be rank × rank".into()));
                }
                let inv = p.inverse_unimodular().ok_or_else(|| {
                    Error::Axiom("pairing is not perfect (determinant ≠ ±1)".into())
                })?;
                (Some(p), Some(inv))
            }
            None => (None, None),
        };
        let root_index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let coroot_index = coroots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        Ok(Self {
            rank,
            roots,
            coroots,
            pairing,
            pairing_inv,
            root_index,
            coroot_index,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    /// Explicit pairing matrix, `None` for the standard dot product.
    pub fn pairing_matrix(&self) -> Option<&Mat> {
        self.pairing.as_ref()
    }

    pub fn pair(&self, x: &[i64], lambda: &[i64]) -> i64 {
        match &self.pairing {
            None => mat::dot(x, lambda),
            Some(p) => mat::dot(x, &p.apply(lambda)),
        }
    }

    pub fn find_root(&self, v: &[i64]) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    pub fn find_coroot(&self, v: &[i64]) -> Option<usize> {
        self.coroot_index.get(v).copied()
    }

    /// Index of `-β_i`.
    pub fn negative(&self, i: usize) -> Option<usize> {
        self.find_root(&mat::neg(&self.roots[i]))
    }

    /// True iff no root is twice another root.
    pub fn is_reduced(&self) -> bool {
        !self.roots.iter().any(|r| self.find_root(&mat::scale(r, 2)).is_some())
    }

    /// True iff the roots span `X* ⊗ ℚ`.
    pub fn is_semisimple(&self) -> bool {
        if self.roots.is_empty() {
            return self.rank == 0;
        }
        crate::lattice::rank(&crate::lattice::IntMatrix::from_rows(&self.roots, self.rank)) == self.rank
    }

    /// The contragredient `P⁻¹·A⁻ᵀ·P` of a unimodular map on `X*`.
    pub fn contragredient(&self, chars: &Mat) -> Option<Mat> {
        let inv_t = chars.inverse_unimodular()?.transpose();
        Some(match (&self.pairing, &self.pairing_inv) {
            (Some(p), Some(pi)) => pi.mul(&inv_t).mul(p),
            _ => inv_t,
        })
    }

    /// Wraps a unimodular matrix on `X*` as a datum automorphism, checking
    /// that it permutes `Φ` and `Φ^∨` compatibly.
    pub fn automorphism(&self, chars: &Mat) -> Result<DatumAutomorphism> {
        if chars.rows() != self.rank || chars.cols() != self.rank {
            return Err(Error::Shape(format!("expected a {0}×{0} matrix", self.rank)));
        }
        if self.roots.iter().any(|r| self.find_root(&chars.apply(r)).is_none()) {
            return Err(Error::NotAnAutomorphism);
        }
        let cochars = self.contragredient(chars).ok_or(Error::NotUnimodular)?;
        let g = DatumAutomorphism { chars: chars.clone(), cochars };
        if self.root_permutation(&g).is_none() {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(g)
    }

    /// The permutation of root indices induced by `g`, provided `g` maps each
    /// root to a root and the matching coroot to the matching coroot.
    pub fn root_permutation(&self, g: &DatumAutomorphism) -> Option<Vec<usize>> {
        (0..self.roots.len())
            .map(|i| {
                let j = self.find_root(&g.chars.apply(&self.roots[i]))?;
                (self.find_coroot(&g.cochars.apply(&self.coroots[i])) == Some(j)).then_some(j)
            })
            .collect()
    }

    /// Reflection `x ↦ x − ⟨x, β^∨⟩β` and its contragredient
    /// `λ ↦ λ − ⟨β, λ⟩β^∨`.
    pub fn reflection(&self, i: usize) -> DatumAutomorphism {
        let n = self.rank;
        let beta = &self.roots[i];
        let cobeta = &self.coroots[i];
        // Row vectors of the functionals x ↦ ⟨x, β^∨⟩ and λ ↦ ⟨β, λ⟩.
        let (f, h) = match &self.pairing {
            None => (cobeta.clone(), beta.clone()),
            Some(p) => (p.apply(cobeta), p.transpose().apply(beta)),
        };
        let mut chars = Mat::identity(n);
        let mut cochars = Mat::identity(n);
        for r in 0..n {
            for c in 0..n {
                chars.set(r, c, chars.get(r, c) - beta[r] * f[c]);
                cochars.set(r, c, cochars.get(r, c) - cobeta[r] * h[c]);
            }
        }
        DatumAutomorphism { chars, cochars }
    }

    pub fn identity_automorphism(&self) -> DatumAutomorphism {
        DatumAutomorphism::identity(self.rank)
    }

    /// Weyl group generated by all reflections.
    pub fn weyl_group(&self) -> Result<WeylGroup> {
        self.weyl_group_bounded(DEFAULT_WEYL_BOUND)
    }

    pub fn weyl_group_bounded(&self, bound: usize) -> Result<WeylGroup> {
        let all: Vec<usize> = (0..self.roots.len()).collect();
        WeylGroup::generate(self, &all, bound)
    }

    /// Checks every root datum axiom, collecting all violations.
    pub fn verify_axioms(&self) -> VerificationReport {
        self.verify_axioms_bounded(DEFAULT_WEYL_BOUND)
    }

    pub fn verify_axioms_bounded(&self, bound: usize) -> VerificationReport {
        use AxiomViolation as V;
        let mut out = Vec::new();
        if self.root_index.len() != self.roots.len() {
            out.push(V::DuplicateRoots);
        }
        if self.coroot_index.len() != self.coroots.len() {
            out.push(V::DuplicateCoroots);
        }
        for i in 0..self.roots.len() {
            if self.roots[i].iter().all(|&x| x == 0) {
                out.push(V::ZeroRoot(i));
            }
            if self.coroots[i].iter().all(|&x| x == 0) {
                out.push(V::ZeroCoroot(i));
            }
        }
        if let Some(p) = &self.pairing {
            if p.det().abs() != 1 {
                out.push(V::PairingNotPerfect);
            }
        }
        for i in 0..self.roots.len() {
            let v = self.pair(&self.roots[i], &self.coroots[i]);
            if v != 2 {
                out.push(V::PairingNotTwo { index: i, value: v });
            }
        }
        for i in 0..self.roots.len() {
            if self.negative(i).is_none() {
                out.push(V::NotSymmetric(i));
            }
        }
        if !out.is_empty() {
            return VerificationReport { violations: out };
        }
        for i in 0..self.roots.len() {
            let s = self.reflection(i);
            let root_perm: Option<Vec<usize>> =
                self.roots.iter().map(|r| self.find_root(&s.chars.apply(r))).collect();
            let coroot_perm: Option<Vec<usize>> =
                self.coroots.iter().map(|r| self.find_coroot(&s.cochars.apply(r))).collect();
            match (root_perm, coroot_perm) {
                (None, _) => out.push(V::ReflectionNotPermutingRoots(i)),
                (_, None) => out.push(V::ReflectionNotPermutingCoroots(i)),
                (Some(a), Some(b)) if a != b => out.push(V::ReflectionPermutationsDisagree(i)),
                _ => {}
            }
        }
        if out.is_empty() {
            if let Err(Error::EnumerationOverflow { bound }) = self.weyl_group_bounded(bound) {
                out.push(V::WeylGroupNotFinite { bound });
            }
        }
        VerificationReport { violations: out }
    }
}

/// An automorphism of a root datum: a unimodular map on `X*` together with
/// its contragredient on `X_*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DatumAutomorphism {
    pub chars: Mat,
    pub cochars: Mat,
}

impl fmt::Debug for DatumAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.chars)
    }
}

impl DatumAutomorphism {
    pub fn identity(n: usize) -> Self {
        Self {
            chars: Mat::identity(n),
            cochars: Mat::identity(n),
        }
    }

    /// Pairs a map with an explicitly given cocharacter map. No checks.
    pub fn from_parts(chars: Mat, cochars: Mat) -> Self {
        Self { chars, cochars }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            chars: self.chars.mul(&other.chars),
            cochars: self.cochars.mul(&other.cochars),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            chars: self.chars.inverse_unimodular().expect("automorphism is unimodular"),
            cochars: self.cochars.inverse_unimodular().expect("automorphism is unimodular"),
        }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.chars.is_identity()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.chars.mul(&other.chars) == other.chars.mul(&self.chars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    DuplicateRoots,
    DuplicateCoroots,
    ZeroRoot(usize),
    ZeroCoroot(usize),
    PairingNotPerfect,
    PairingNotTwo { index: usize, value: i64 },
    NotSymmetric(usize),
    ReflectionNotPermutingRoots(usize),
    ReflectionNotPermutingCoroots(usize),
    ReflectionPermutationsDisagree(usize),
    WeylGroupNotFinite { bound: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateRoots => write!(f, "roots are not distinct"),
            Self::DuplicateCoroots => write!(f, "coroots are not distinct"),
            Self::ZeroRoot(i) => write!(f, "root {i} is zero"),
            Self::ZeroCoroot(i) => write!(f, "coroot {i} is zero"),
            Self::PairingNotPerfect => write!(f, "pairing is not perfect"),
            Self::PairingNotTwo { index, value } => {
                write!(f, "pairing axiom: <root {index}, coroot {index}> = {value} ≠ 2")
            }
            Self::NotSymmetric(i) => write!(f, "negative of root {i} is not a root"),
            Self::ReflectionNotPermutingRoots(i) => write!(f, "reflection {i} does not permute the roots"),
            Self::ReflectionNotPermutingCoroots(i) => {
                write!(f, "reflection {i} does not permute the coroots")
            }
            Self::ReflectionPermutationsDisagree(i) => {
                write!(f, "reflection {i} permutes roots and coroots differently")
            }
            Self::WeylGroupNotFinite { bound } => {
                write!(f, "reflection group exceeds enumeration bound {bound}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub violations: Vec<AxiomViolation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::Axiom(v.to_string())),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        write!(f, "fail")?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootDatum {
        from_cartan_type("A2:sc").unwrap().datum().clone()
    }

    #[test]
    fn a1_sc_and_ad() {
        let sc = from_cartan_type("A1:sc").unwrap();
        let d = sc.datum();
        assert_eq!(d.roots(), &[vec![-2], vec![2]]);
        assert_eq!(d.coroots(), &[vec![-1], vec![1]]);
        assert!(d.verify_axioms().passed());

        let ad = from_cartan_type("A1:ad").unwrap();
        assert_eq!(ad.datum().roots(), &[vec![-1], vec![1]]);
        assert_eq!(ad.datum().coroots(), &[vec![-2], vec![2]]);
        assert!(ad.datum().verify_axioms().passed());
    }

    #[test]
    fn a2_sc_roots() {
        let d = a2();
        assert_eq!(d.num_roots(), 6);
        for r in [[2, -1], [-1, 2], [1, 1]] {
            assert!(d.find_root(&r).is_some());
        }
        let b = from_cartan_type("A2:sc").unwrap();
        let simple: Vec<_> = b.base().iter().map(|&i| d.coroot(i).to_vec()).collect();
        assert_eq!(simple, vec![vec![1, 0], vec![0, 1]]);
        assert!(d.verify_axioms().passed());
    }

    #[test]
    fn bad_pairing_is_reported() {
        let d = RootDatum::new(1, vec![vec![2], vec![-2]], vec![vec![2], vec![-2]]).unwrap();
        let report = d.verify_axioms();
        assert!(!report.passed());
        assert!(matches!(report.violations[0], AxiomViolation::PairingNotTwo { value: 4, .. }));
        assert!(report.to_string().contains("pairing axiom"));
    }

    #[test]
    fn reflections() {
        let a1 = from_cartan_type("A1:sc").unwrap();
        let s = a1.datum().reflection(a1.datum().find_root(&[2]).unwrap());
        assert_eq!(s.chars, Mat::square(&[vec![-1]]));

        let d = a2();
        let s1 = d.reflection(d.find_root(&[2, -1]).unwrap());
        assert_eq!(s1.chars.apply(&[1, 0]), vec![-1, 1]);
        assert_eq!(s1.chars.apply(&[0, 1]), vec![0, 1]);
        for i in 0..d.num_roots() {
            let s = d.reflection(i);
            assert!(s.compose(&s).is_identity());
            assert_eq!(s.chars.apply(d.root(i)), mat::neg(d.root(i)));
        }
    }

    #[test]
    fn reflection_fixes_hyperplane() {
        let b = from_cartan_type("B3:sc").unwrap();
        let d = b.datum();
        for i in 0..d.num_roots() {
            let s = d.reflection(i);
            // lattice vectors x with <x, β^∨> = 0 among small vectors
            for x in small_vectors(3, 2) {
                if d.pair(&x, d.coroot(i)) == 0 {
                    assert_eq!(s.chars.apply(&x), x);
                }
            }
        }
    }

    fn small_vectors(n: usize, r: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat()))
                .collect();
        }
        out
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(from_cartan_type("A1:sc").unwrap().datum().weyl_group().unwrap().order(), 2);
        assert_eq!(a2().weyl_group().unwrap().order(), 6);
        assert_eq!(from_cartan_type("A3:sc").unwrap().datum().weyl_group().unwrap().order(), 24);
    }

    #[test]
    fn weyl_bound_is_enforced() {
        let d = from_cartan_type("A3:sc").unwrap();
        assert_eq!(
            d.datum().weyl_group_bounded(10).unwrap_err(),
            Error::EnumerationOverflow { bound: 10 }
        );
    }

    #[test]
    fn reducedness() {
        assert!(a2().is_reduced());
        let bc1 = RootDatum::new(
            1,
            vec![vec![1], vec![2], vec![-1], vec![-2]],
            vec![vec![2], vec![1], vec![-2], vec![-1]],
        )
        .unwrap();
        assert!(!bc1.is_reduced());
        assert!(bc1.verify_axioms().passed());
    }

    #[test]
    fn automorphism_rejects_non_permutation() {
        let d = a2();
        // (2,-1) goes to (2,-2), which is not a root
        assert_eq!(
            d.automorphism(&Mat::square(&[vec![1, 0], vec![0, 2]])).unwrap_err(),
            Error::NotAnAutomorphism
        );
        let swap = Mat::square(&[vec![0, 1], vec![1, 0]]);
        assert!(d.automorphism(&swap).is_ok());
        let shear = Mat::square(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(d.automorphism(&shear).unwrap_err(), Error::NotAnAutomorphism);
    }
}
