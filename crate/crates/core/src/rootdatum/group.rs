use std::collections::{HashMap, VecDeque};

use super::{DatumAutomorphism, RootDatum};
use crate::error::{Error, Result};
use crate::mat::Mat;

/// Largest Weyl group enumerated by default. E6 (51,840) fits; E7 does not.
pub const DEFAULT_WEYL_BOUND: usize = 1_000_000;

/// A finite group of datum automorphisms, sorted lexicographically on the
/// flattened character matrices.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<DatumAutomorphism>,
    index: HashMap<Mat, usize>,
}

impl MatrixGroup {
    /// Wraps a set of elements already known to form a group.
    pub fn from_elements(mut elements: Vec<DatumAutomorphism>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, g)| (g.chars.clone(), i)).collect();
        Self { elements, index }
    }

    /// Breadth-first closure of `generators` inside `Aut(ℤ^dim)`.
    pub fn closure(generators: &[DatumAutomorphism], dim: usize, bound: usize) -> Result<Self> {
        let id = DatumAutomorphism::identity(dim);
        let mut seen: HashMap<Mat, DatumAutomorphism> = HashMap::new();
        seen.insert(id.chars.clone(), id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in generators {
                let h = g.compose(s);
                if !seen.contains_key(&h.chars) {
                    if seen.len() >= bound {
                        return Err(Error::EnumerationOverflow { bound });
                    }
                    seen.insert(h.chars.clone(), h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(Self::from_elements(seen.into_values().collect()))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[DatumAutomorphism] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &DatumAutomorphism {
        &self.elements[i]
    }

    pub fn position(&self, g: &DatumAutomorphism) -> Option<usize> {
        self.index.get(&g.chars).copied()
    }

    pub fn position_of_matrix(&self, chars: &Mat) -> Option<usize> {
        self.index.get(chars).copied()
    }

    pub fn contains(&self, g: &DatumAutomorphism) -> bool {
        self.index.contains_key(&g.chars)
    }

    pub fn identity_index(&self) -> usize {
        self.elements
            .iter()
            .position(DatumAutomorphism::is_identity)
            .expect("group contains the identity")
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let p = self.elements[i].chars.mul(&self.elements[j].chars);
        self.index[&p]
    }

    pub fn inverse(&self, i: usize) -> usize {
        let g = &self.elements[i];
        let mut power = g.clone();
        let mut prev = DatumAutomorphism::identity(g.chars.rows());
        while !power.is_identity() {
            prev = power.clone();
            power = power.compose(g);
        }
        self.index[&prev.chars]
    }

    /// Subgroup of elements satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&DatumAutomorphism) -> bool) -> Self {
        Self::from_elements(self.elements.iter().filter(|g| keep(g)).cloned().collect())
    }

    /// Checks closure under composition and inverses.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().any(DatumAutomorphism::is_identity)
            && self.elements.iter().all(|a| {
                self.elements
                    .iter()
                    .all(|b| self.index.contains_key(&a.chars.mul(&b.chars)))
            })
    }

    /// Permutations of the root indices of `datum`, one per element.
    pub fn root_permutations(&self, datum: &RootDatum) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .map(|g| datum.root_permutation(g).expect("group element is a datum automorphism"))
            .collect()
    }
}

/// The Weyl group of a datum, generated by the listed reflections.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub group: MatrixGroup,
    pub generator_indices: Vec<usize>,
}

impl WeylGroup {
    pub fn generate(datum: &RootDatum, roots: &[usize], bound: usize) -> Result<Self> {
        // Refuse up front when the classified order already exceeds the bound,
        // rather than filling memory first.
        if let Some(order) = super::weyl_order_of(datum) {
            if order > bound as u128 {
                return Err(Error::EnumerationOverflow { bound });
            }
        }
        let mut gens: Vec<DatumAutomorphism> = roots.iter().map(|&i| datum.reflection(i)).collect();
        gens.sort();
        gens.dedup();
        let group = MatrixGroup::closure(&gens, datum.rank(), bound)?;
        Ok(Self {
            group,
            generator_indices: roots.to_vec(),
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn elements(&self) -> &[DatumAutomorphism] {
        self.group.elements()
    }
}

impl std::ops::Deref for WeylGroup {
    type Target = MatrixGroup;
    fn deref(&self) -> &MatrixGroup {
        &self.group
    }
}
