//! Type identification by Cartan-matrix matching on indecomposable
//! components.

use num_rational::Ratio;

use super::cartan::{cartan_matrix, CartanFamily};
use super::{BasedRootDatum, RootDatum};
use crate::error::Result;
use crate::mat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentType {
    /// `"A2"`, `"B3"`, `"B2/C2"`, `"BC1"`, `"G2"`, … or `"unknown"`.
    pub label: String,
    pub family: Option<CartanFamily>,
    pub rank: usize,
    /// Root indices of the component's simple roots, in standard numbering
    /// when the type was recognized.
    pub simple_roots: Vec<usize>,
    pub long_simple_roots: Vec<usize>,
    pub reduced: bool,
    /// Cartan matrix over `simple_roots`, in the same order.
    pub cartan: Vec<Vec<i64>>,
}

/// Splits `Φ` into irreducible components and identifies each one.
pub fn decompose(datum: &RootDatum) -> Result<Vec<ComponentType>> {
    let based = BasedRootDatum::standard(datum.clone())?;
    let c = based.cartan_matrix();
    let k = c.len();

    let mut comp_of = vec![usize::MAX; k];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp_of[s] = id;
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..k {
                if comp_of[j] == usize::MAX && (c[i][j] != 0 || c[j][i] != 0) {
                    comp_of[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }

    let mut out = Vec::new();
    for members in comps {
        let reduced = !(0..datum.num_roots()).any(|r| {
            let support_ok = based
                .coords(r)
                .iter()
                .enumerate()
                .all(|(p, &x)| x == 0 || members.contains(&p));
            support_ok && datum.find_root(&mat::scale(datum.root(r), 2)).is_some()
        });
        let sub: Vec<Vec<i64>> = members.iter().map(|&i| members.iter().map(|&j| c[i][j]).collect()).collect();
        let roots: Vec<usize> = members.iter().map(|&p| based.base()[p]).collect();
        out.push(identify(&sub, &roots, reduced));
    }
    Ok(out)
}

/// `(label, multiplicity)` pairs sorted by label.
pub fn classify(datum: &RootDatum) -> Result<Vec<(String, usize)>> {
    let mut labels: Vec<String> = decompose(datum)?.into_iter().map(|c| c.label).collect();
    labels.sort();
    let mut out: Vec<(String, usize)> = Vec::new();
    for l in labels {
        match out.last_mut() {
            Some((last, n)) if *last == l => *n += 1,
            _ => out.push((l, 1)),
        }
    }
    Ok(out)
}

/// Order of the Weyl group from the classification, if every component is
/// recognized.
pub fn weyl_order_of(datum: &RootDatum) -> Option<u128> {
    let comps = decompose(datum).ok()?;
    comps.iter().try_fold(1u128, |acc, c| {
        let k = c.rank as u128;
        let fact: u128 = (1..=k).product();
        let w = match c.family? {
            CartanFamily::A => (1..=k + 1).product(),
            CartanFamily::B | CartanFamily::C | CartanFamily::BC => (1u128 << k) * fact,
            CartanFamily::D => (1u128 << (k - 1)) * fact,
            CartanFamily::E => match k {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            CartanFamily::F => 1152,
            CartanFamily::G => 12,
        };
        Some(acc * w)
    })
}

fn identify(c: &[Vec<i64>], roots: &[usize], reduced: bool) -> ComponentType {
    let k = c.len();
    let families: &[CartanFamily] = if reduced {
        &[
            CartanFamily::A,
            CartanFamily::B,
            CartanFamily::C,
            CartanFamily::D,
            CartanFamily::E,
            CartanFamily::F,
            CartanFamily::G,
        ]
    } else {
        &[CartanFamily::BC]
    };
    for &family in families {
        let Ok(std) = cartan_matrix(family, k) else { continue };
        if let Some(perm) = match_cartan(&std, c) {
            let simple: Vec<usize> = perm.iter().map(|&p| roots[p]).collect();
            let long = long_nodes(&std).into_iter().map(|i| simple[i]).collect();
            let label = match family {
                CartanFamily::B | CartanFamily::C if k == 2 => "B2/C2".to_string(),
                _ => format!("{family}{k}"),
            };
            return ComponentType {
                label,
                family: Some(family),
                rank: k,
                simple_roots: simple,
                long_simple_roots: long,
                reduced,
                cartan: std,
            };
        }
    }
    ComponentType {
        label: "unknown".into(),
        family: None,
        rank: k,
        simple_roots: roots.to_vec(),
        long_simple_roots: long_nodes(c).into_iter().map(|i| roots[i]).collect(),
        reduced,
        cartan: c.to_vec(),
    }
}

/// A permutation `π` with `std[i][j] == c[π(i)][π(j)]`.
fn match_cartan(std: &[Vec<i64>], c: &[Vec<i64>]) -> Option<Vec<usize>> {
    fn extend(std: &[Vec<i64>], c: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == std.len() {
            return true;
        }
        for p in 0..c.len() {
            if used[p] {
                continue;
            }
            let ok = (0..i).all(|j| std[i][j] == c[p][perm[j]] && std[j][i] == c[perm[j]][p]);
            if ok {
                used[p] = true;
                perm.push(p);
                if extend(std, c, perm, used) {
                    return true;
                }
                perm.pop();
                used[p] = false;
            }
        }
        false
    }
    if std.len() != c.len() {
        return None;
    }
    let mut perm = Vec::new();
    let mut used = vec![false; c.len()];
    extend(std, c, &mut perm, &mut used).then_some(perm)
}

/// Nodes of maximal squared length, from the symmetrizer
/// `|α_j|² = |α_i|² · C[j][i] / C[i][j]` of a connected Cartan matrix.
fn long_nodes(c: &[Vec<i64>]) -> Vec<usize> {
    let k = c.len();
    if k == 0 {
        return vec![];
    }
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; k];
    d[0] = Some(Ratio::from_integer(1));
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..k {
            if d[j].is_none() && c[i][j] != 0 && c[j][i] != 0 {
                d[j] = Some(d[i].unwrap() * Ratio::new(c[j][i], c[i][j]));
                stack.push(j);
            }
        }
    }
    let max = d.iter().flatten().max().copied().unwrap();
    (0..k).filter(|&i| d[i] == Some(max)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdatum::from_cartan_type;

    fn labels(t: &str) -> Vec<(String, usize)> {
        classify(from_cartan_type(t).unwrap().datum()).unwrap()
    }

    #[test]
    fn roundtrip_all_types() {
        for t in [
            "A1", "A2", "A3", "A4", "A5", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2",
        ] {
            for tag in ["sc", "ad"] {
                assert_eq!(labels(&format!("{t}:{tag}")), vec![(t.to_string(), 1)], "{t}:{tag}");
            }
        }
        assert_eq!(labels("B2:sc"), vec![("B2/C2".to_string(), 1)]);
        assert_eq!(labels("C2:ad"), vec![("B2/C2".to_string(), 1)]);
        for n in 1..=4 {
            assert_eq!(labels(&format!("BC{n}")), vec![(format!("BC{n}"), 1)]);
        }
        assert_eq!(
            labels("A1:sc x A2:ad x A1:ad"),
            vec![("A1".to_string(), 2), ("A2".to_string(), 1)]
        );
    }

    #[test]
    fn b2_orientation_matches_invariant_form_lengths() {
        // Cartan matrix [[2,-1],[-2,2]]: the second simple root is long.
        let c = vec![vec![2, -1], vec![-2, 2]];
        assert_eq!(long_nodes(&c), vec![1]);

        // Oracle: squared lengths from the W-invariant form Σ_w (w x)·(w x).
        let b = from_cartan_type("C2:sc").unwrap();
        let d = b.datum();
        let w = d.weyl_group().unwrap();
        let norm = |x: &[i64]| -> i64 {
            w.elements().iter().map(|g| {
                let y = g.chars.apply(x);
                mat::dot(&y, &y)
            }).sum()
        };
        let comps = decompose(d).unwrap();
        let long = &comps[0].long_simple_roots;
        let simple = &comps[0].simple_roots;
        for &s in simple {
            let is_long = simple.iter().all(|&t| norm(d.root(s)) >= norm(d.root(t)));
            assert_eq!(long.contains(&s), is_long);
        }
    }

    #[test]
    fn weyl_orders_from_types() {
        assert_eq!(weyl_order_of(from_cartan_type("E6:sc").unwrap().datum()), Some(51_840));
        assert_eq!(weyl_order_of(from_cartan_type("BC2").unwrap().datum()), Some(8));
        assert_eq!(weyl_order_of(from_cartan_type("A1:sc x A1:sc").unwrap().datum()), Some(4));
    }
}
