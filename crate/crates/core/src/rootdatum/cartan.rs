//! Standard realizations of the irreducible types.
//!
//! Cartan matrices follow Bourbaki numbering with `C[i][j] = ⟨α_i, α_j^∨⟩`.
//! The `sc` realization takes the fundamental weights as the basis of `X*`,
//! so simple roots are the rows of `C` and simple coroots the standard basis
//! vectors. The `ad` realization takes the simple roots as the basis.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{BasedRootDatum, RootDatum};
use crate::error::{Error, Result};
use crate::mat::{self, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    /// Non-reduced family; realized directly in `ℤ^n`.
    BC,
}

impl fmt::Display for CartanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::E => "E",
            Self::F => "F",
            Self::G => "G",
            Self::BC => "BC",
        };
        f.write_str(s)
    }
}

const MAX_RANK: usize = 8;

fn check_rank(family: CartanFamily, n: usize) -> Result<()> {
    let ok = match family {
        CartanFamily::A | CartanFamily::BC => (1..=MAX_RANK).contains(&n),
        CartanFamily::B | CartanFamily::C => (2..=MAX_RANK).contains(&n),
        CartanFamily::D => (4..=MAX_RANK).contains(&n),
        CartanFamily::E => (6..=8).contains(&n),
        CartanFamily::F => n == 4,
        CartanFamily::G => n == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedRank {
            family: family.to_string(),
            rank: n,
        })
    }
}

/// Cartan matrix of a reduced irreducible type. `BC` yields the matrix of its
/// base, which is that of `B_n` (or `A1` in rank one).
pub fn cartan_matrix(family: CartanFamily, n: usize) -> Result<Vec<Vec<i64>>> {
    check_rank(family, n)?;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        CartanFamily::A | CartanFamily::B | CartanFamily::C | CartanFamily::BC | CartanFamily::F | CartanFamily::G => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        CartanFamily::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        CartanFamily::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    match family {
        CartanFamily::B | CartanFamily::BC if n >= 2 => c[n - 2][n - 1] = -2,
        CartanFamily::C => c[n - 1][n - 2] = -2,
        CartanFamily::F => c[1][2] = -2,
        CartanFamily::G => c[1][0] = -3,
        _ => {}
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Isogeny {
    SimplyConnected,
    Adjoint,
}

fn parse_factor(s: &str) -> Result<(CartanFamily, usize, Option<Isogeny>)> {
    let unknown = || Error::UnknownType(s.to_string());
    let (head, tag) = match s.split_once(':') {
        Some((h, t)) => (h.trim(), Some(t.trim())),
        None => (s.trim(), None),
    };
    let (family, digits) = if let Some(rest) = head.strip_prefix("BC") {
        (CartanFamily::BC, rest)
    } else {
        let mut chars = head.chars();
        let family = match chars.next() {
            Some('A') => CartanFamily::A,
            Some('B') => CartanFamily::B,
            Some('C') => CartanFamily::C,
            Some('D') => CartanFamily::D,
            Some('E') => CartanFamily::E,
            Some('F') => CartanFamily::F,
            Some('G') => CartanFamily::G,
            _ => return Err(unknown()),
        };
        (family, chars.as_str())
    };
    let n: usize = digits.parse().map_err(|_| unknown())?;
    let isogeny = match (family, tag) {
        (CartanFamily::BC, None) => None,
        (CartanFamily::BC, Some(_)) => return Err(unknown()),
        (_, Some("sc")) => Some(Isogeny::SimplyConnected),
        (_, Some("ad")) => Some(Isogeny::Adjoint),
        _ => return Err(unknown()),
    };
    check_rank(family, n)?;
    Ok((family, n, isogeny))
}

/// Builds a based root datum from a type string such as `"A2:sc"`, `"E6:ad"`,
/// `"BC2"`, or a product `"A1:sc x A1:sc"` (separators `x`, `×`, `*`).
pub fn from_cartan_type(spec: &str) -> Result<BasedRootDatum> {
    let factors: Vec<&str> = spec
        .split(['x', '×', '*'])
        .map(str::trim)
        .collect();
    if factors.iter().any(|f| f.is_empty()) {
        return Err(Error::UnknownType(spec.to_string()));
    }
    let mut pieces = Vec::new();
    for f in factors {
        let (family, n, isogeny) = parse_factor(f)?;
        pieces.push(match isogeny {
            None => bc_realization(n),
            Some(iso) => cartan_realization(&cartan_matrix(family, n)?, iso),
        });
    }
    let total: usize = pieces.iter().map(|p| p.rank).sum();
    if total > MAX_RANK {
        return Err(Error::UnsupportedRank {
            family: spec.to_string(),
            rank: total,
        });
    }
    let mut acc = pieces.remove(0);
    for p in pieces {
        acc = acc.direct_sum(&p);
    }
    acc.into_based()
}

/// Roots, coroots and simple-root positions before canonical sorting.
struct Realization {
    rank: usize,
    pairs: Vec<(Vec<i64>, Vec<i64>)>,
    simple: Vec<usize>,
}

impl Realization {
    fn direct_sum(&self, other: &Self) -> Self {
        let pad = |v: &[i64], before: usize, after: usize| {
            [vec![0; before], v.to_vec(), vec![0; after]].concat()
        };
        let mut pairs: Vec<_> = self
            .pairs
            .iter()
            .map(|(r, c)| (pad(r, 0, other.rank), pad(c, 0, other.rank)))
            .collect();
        pairs.extend(
            other
                .pairs
                .iter()
                .map(|(r, c)| (pad(r, self.rank, 0), pad(c, self.rank, 0))),
        );
        let mut simple = self.simple.clone();
        simple.extend(other.simple.iter().map(|i| i + self.pairs.len()));
        Self {
            rank: self.rank + other.rank,
            pairs,
            simple,
        }
    }

    fn into_based(self) -> Result<BasedRootDatum> {
        let simple_roots: Vec<Vec<i64>> = self.simple.iter().map(|&i| self.pairs[i].0.clone()).collect();
        let mut pairs = self.pairs;
        pairs.sort();
        let (roots, coroots): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let datum = RootDatum::new(self.rank, roots, coroots)?;
        let base = simple_roots
            .iter()
            .map(|r| datum.find_root(r).expect("simple root present"))
            .collect();
        BasedRootDatum::new(datum, base)
    }
}

/// Closes the simple (root, coroot) pairs under the simple reflections.
fn cartan_realization(c: &[Vec<i64>], isogeny: Isogeny) -> Realization {
    let n = c.len();
    let (simple_roots, simple_coroots): (Vec<Vec<i64>>, Vec<Vec<i64>>) = match isogeny {
        Isogeny::SimplyConnected => (c.to_vec(), unit_vectors(n)),
        Isogeny::Adjoint => (unit_vectors(n), (0..n).map(|j| (0..n).map(|i| c[i][j]).collect()).collect()),
    };
    let reflections: Vec<(Mat, Mat)> = (0..n)
        .map(|k| {
            let (b, cb) = (&simple_roots[k], &simple_coroots[k]);
            let mut chars = Mat::identity(n);
            let mut cochars = Mat::identity(n);
            for r in 0..n {
                for col in 0..n {
                    chars.set(r, col, chars.get(r, col) - b[r] * cb[col]);
                    cochars.set(r, col, cochars.get(r, col) - cb[r] * b[col]);
                }
            }
            (chars, cochars)
        })
        .collect();
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for k in 0..n {
        seen.insert(simple_roots[k].clone(), simple_coroots[k].clone());
        queue.push_back((simple_roots[k].clone(), simple_coroots[k].clone()));
    }
    while let Some((r, cr)) = queue.pop_front() {
        for (a, b) in &reflections {
            let r2 = a.apply(&r);
            if !seen.contains_key(&r2) {
                let c2 = b.apply(&cr);
                seen.insert(r2.clone(), c2.clone());
                queue.push_back((r2, c2));
            }
        }
    }
    let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = seen.into_iter().collect();
    pairs.sort();
    let simple = simple_roots
        .iter()
        .map(|s| pairs.iter().position(|(r, _)| r == s).expect("simple root present"))
        .collect();
    Realization { rank: n, pairs, simple }
}

/// `BC_n` in `ℤ^n`: roots `±e_i`, `±2e_i`, `±e_i ± e_j` with coroots `±2e_i`,
/// `±e_i`, `±e_i ± e_j`; base `e_1 − e_2, …, e_{n−1} − e_n, e_n`.
fn bc_realization(n: usize) -> Realization {
    let e = unit_vectors(n);
    let mut pairs = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            pairs.push((mat::scale(&e[i], s), mat::scale(&e[i], 2 * s)));
            pairs.push((mat::scale(&e[i], 2 * s), mat::scale(&e[i], s)));
        }
        for j in i + 1..n {
            for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let v = mat::add(&mat::scale(&e[i], s), &mat::scale(&e[j], t));
                pairs.push((v.clone(), v));
            }
        }
    }
    pairs.sort();
    let mut simple_roots: Vec<Vec<i64>> = (0..n - 1).map(|i| mat::add(&e[i], &mat::neg(&e[i + 1]))).collect();
    simple_roots.push(e[n - 1].clone());
    let simple = simple_roots
        .iter()
        .map(|s| pairs.iter().position(|(r, _)| r == s).expect("simple root present"))
        .collect();
    Realization { rank: n, pairs, simple }
}

fn unit_vectors(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts_match_tables() {
        // (type, |Φ|, |W|)
        let table = [
            ("A1:sc", 2, 2),
            ("A2:sc", 6, 6),
            ("A3:ad", 12, 24),
            ("A4:sc", 20, 120),
            ("B2:sc", 8, 8),
            ("B3:ad", 18, 48),
            ("C3:sc", 18, 48),
            ("C4:sc", 32, 384),
            ("D4:sc", 24, 192),
            ("F4:sc", 48, 1152),
            ("G2:ad", 12, 12),
            ("BC1", 4, 2),
            ("BC2", 12, 8),
            ("A1:sc x A1:ad", 4, 4),
        ];
        for (t, roots, order) in table {
            let b = from_cartan_type(t).unwrap();
            let d = b.datum();
            assert!(d.verify_axioms().passed(), "{t}");
            assert_eq!(d.num_roots(), roots, "{t}");
            assert_eq!(d.weyl_group().unwrap().order(), order, "{t}");
        }
    }

    #[test]
    fn type_a_formulas_by_enumeration() {
        let mut fact = 1;
        for n in 1..=4 {
            fact *= n + 1;
            let d = from_cartan_type(&format!("A{n}:sc")).unwrap();
            assert_eq!(d.datum().num_roots(), n * (n + 1));
            assert_eq!(d.datum().weyl_group().unwrap().order(), fact);
        }
    }

    #[test]
    fn exceptional_root_counts() {
        assert_eq!(from_cartan_type("E6:sc").unwrap().datum().num_roots(), 72);
        assert_eq!(from_cartan_type("E7:sc").unwrap().datum().num_roots(), 126);
        assert_eq!(from_cartan_type("E8:sc").unwrap().datum().num_roots(), 240);
    }

    #[test]
    fn bad_type_strings() {
        assert!(matches!(from_cartan_type("Q3:sc"), Err(Error::UnknownType(_))));
        assert!(matches!(from_cartan_type("A2"), Err(Error::UnknownType(_))));
        assert!(matches!(from_cartan_type("A2:xy"), Err(Error::UnknownType(_))));
        assert!(matches!(from_cartan_type("E5:sc"), Err(Error::UnsupportedRank { .. })));
        assert!(matches!(from_cartan_type("D3:sc"), Err(Error::UnsupportedRank { .. })));
        assert!(matches!(from_cartan_type("A5:sc x A4:sc"), Err(Error::UnsupportedRank { .. })));
    }

    #[test]
    fn e7_weyl_group_is_refused() {
        let d = from_cartan_type("E7:sc").unwrap();
        assert!(matches!(
            d.datum().weyl_group(),
            Err(Error::EnumerationOverflow { .. })
        ));
    }
}
