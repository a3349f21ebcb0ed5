//! Exhaustive enumeration of admissible cover types.

use serde::{Deserialize, Serialize};

use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, DEFAULT_MAX_AUTOMORPHISMS, DEFAULT_MAX_ORDER};

pub const DEFAULT_SEARCH_BOUND: u128 = 10_000_000;
pub const SEARCH_BOUND_ENV: &str = "PRYM_SEARCH_BOUND";

/// Reads the search bound from `PRYM_SEARCH_BOUND`, falling back to the default
/// when unset or unparsable.
pub fn search_bound_from_env() -> u128 {
    std::env::var(SEARCH_BOUND_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEARCH_BOUND)
}

/// Which relabelings count as the same type.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// Ordered label sequences.
    #[default]
    None,
    /// Label multisets.
    PermutePoints,
    /// Label multisets up to `Aut(G)`.
    PermuteAndAut,
}

impl std::str::FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Symmetry::None),
            "permute-points" => Ok(Symmetry::PermutePoints),
            "permute-and-aut" => Ok(Symmetry::PermuteAndAut),
            other => Err(Error::Inconsistent(format!("unknown symmetry mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub group: FiniteAbelianGroup,
    pub base_genus: u64,
    pub branch_count: usize,
    pub symmetry: Symmetry,
    /// Largest allowed `|G|^r`.
    pub bound: u128,
}

impl EnumerationQuery {
    pub fn new(group: FiniteAbelianGroup, base_genus: u64, branch_count: usize, symmetry: Symmetry) -> Self {
        EnumerationQuery {
            group,
            base_genus,
            branch_count,
            symmetry,
            bound: DEFAULT_SEARCH_BOUND,
        }
    }

    pub fn with_bound(mut self, bound: u128) -> Self {
        self.bound = bound;
        self
    }

    /// `|G|^r`, saturating.
    pub fn search_size(&self) -> u128 {
        (self.group.order() as u128).saturating_pow(self.branch_count as u32)
    }
}

/// All admissible types for the query, one representative per class, in
/// lexicographic order of label index sequences.
///
/// Under [`Symmetry::PermuteAndAut`] the representative is the sorted label
/// multiset that is lexicographically least over its `Aut(G)`-orbit.
pub fn enumerate_covers(query: &EnumerationQuery) -> Result<Vec<CoverSpec>> {
    let size = query.search_size();
    if size > query.bound {
        return Err(Error::BoundExceeded {
            what: "search space |G|^r",
            value: size,
            limit: query.bound,
        });
    }
    let group = &query.group;
    let automorphisms = match query.symmetry {
        Symmetry::PermuteAndAut => group
            .automorphisms(DEFAULT_MAX_ORDER, DEFAULT_MAX_AUTOMORPHISMS)?
            .into_iter()
            .map(|a| a.permutation().to_vec())
            .collect(),
        _ => Vec::new(),
    };
    let nonzero: Vec<usize> = (1..group.order() as usize).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(query.branch_count);
    let sorted = query.symmetry != Symmetry::None;
    let mut visit = |indices: &[usize]| -> Result<()> {
        if !indices.is_empty() && !sums_to_zero(group, indices) {
            return Ok(());
        }
        if !automorphisms.is_empty() && !is_aut_minimal(indices, &automorphisms) {
            return Ok(());
        }
        let labels = indices.iter().map(|&i| group.element_at(i)).collect();
        let spec = CoverSpec::new(group.clone(), query.base_genus, labels)?;
        if spec.validate_admissible().admissible {
            out.push(spec);
        }
        Ok(())
    };
    walk(&nonzero, query.branch_count, sorted, &mut current, &mut visit)?;
    Ok(out)
}

fn walk(
    choices: &[usize],
    length: usize,
    sorted: bool,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if current.len() == length {
        return visit(current);
    }
    let start = if sorted { current.last().copied().unwrap_or(0) } else { 0 };
    for &c in choices.iter().filter(|&&c| c >= start) {
        current.push(c);
        walk(choices, length, sorted, current, visit)?;
        current.pop();
    }
    Ok(())
}

fn sums_to_zero(group: &FiniteAbelianGroup, indices: &[usize]) -> bool {
    let mut sum = vec![0u64; group.rank()];
    for &i in indices {
        for (s, (&c, &m)) in sum.iter_mut().zip(group.element_at(i).coords().iter().zip(group.orders())) {
            *s = (*s + c) % m;
        }
    }
    sum.iter().all(|&s| s == 0)
}

fn is_aut_minimal(indices: &[usize], automorphisms: &[Vec<usize>]) -> bool {
    let mut image = Vec::with_capacity(indices.len());
    automorphisms.iter().all(|perm| {
        image.clear();
        image.extend(indices.iter().map(|&i| perm[i]));
        image.sort_unstable();
        image.as_slice() >= indices
    })
}

/// Every distinguished-generator presentation `Z/m_1 + ... + Z/m_h` with
/// `2 <= m_1 <= ... <= m_h` and order at most `max_order`, the trivial group
/// first, then by order and factor list. Isomorphic groups appear once per
/// presentation.
pub fn small_group_presentations(max_order: u64) -> Vec<FiniteAbelianGroup> {
    fn rec(prefix: &mut Vec<u64>, remaining: u64, out: &mut Vec<Vec<u64>>) {
        let start = prefix.last().copied().unwrap_or(2);
        for m in start..=remaining {
            prefix.push(m);
            out.push(prefix.clone());
            rec(prefix, remaining / m, out);
            prefix.pop();
        }
    }
    let mut lists = Vec::new();
    rec(&mut Vec::new(), max_order, &mut lists);
    lists.sort_by_key(|l| (l.iter().product::<u64>(), l.clone()));
    std::iter::once(FiniteAbelianGroup::trivial())
        .chain(lists.into_iter().map(|l| FiniteAbelianGroup::new(l).expect("orders are at least 2")))
        .collect()
}

/// Labels of a spec as element indices, used as its sort key.
pub fn label_indices(spec: &CoverSpec) -> Vec<usize> {
    spec.branch_labels().iter().map(|h| spec.group().index_of(h)).collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn query(orders: &[u64], g: u64, r: usize, symmetry: Symmetry) -> Vec<Vec<usize>> {
        let group = FiniteAbelianGroup::new(orders.to_vec()).unwrap();
        enumerate_covers(&EnumerationQuery::new(group, g, r, symmetry))
            .unwrap()
            .iter()
            .map(label_indices)
            .collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(query(&[2], 0, 4, Symmetry::None).len(), 1);
        assert_eq!(query(&[2], 0, 4, Symmetry::PermuteAndAut).len(), 1);
        assert_eq!(query(&[3], 0, 3, Symmetry::None), vec![vec![1, 1, 1], vec![2, 2, 2]]);
        assert_eq!(query(&[3], 0, 3, Symmetry::PermutePoints).len(), 2);
        assert_eq!(query(&[3], 0, 3, Symmetry::PermuteAndAut), vec![vec![1, 1, 1]]);
        assert_eq!(query(&[3], 0, 4, Symmetry::PermuteAndAut), vec![vec![1, 1, 2, 2]]);
        assert_eq!(query(&[2], 1, 0, Symmetry::None).len(), 1);
        assert_eq!(query(&[2], 0, 0, Symmetry::None).len(), 0);
        assert_eq!(query(&[2], 0, 3, Symmetry::None).len(), 0);
        // (Z/2)^2 on P^1 with three points: the three nonzero elements once each
        assert_eq!(query(&[2, 2], 0, 3, Symmetry::None).len(), 6);
        assert_eq!(query(&[2, 2], 0, 3, Symmetry::PermuteAndAut).len(), 1);
    }

    #[test]
    fn trivial_group() {
        assert_eq!(query(&[], 2, 0, Symmetry::None).len(), 1);
        assert_eq!(query(&[], 2, 1, Symmetry::None).len(), 0);
    }

    #[test]
    fn output_is_sorted_and_consistent_across_modes() {
        for orders in [&[4][..], &[2, 2], &[6], &[2, 4]] {
            for g in 0..2 {
                for r in 0..5 {
                    let ordered = query(orders, g, r, Symmetry::None);
                    let points = query(orders, g, r, Symmetry::PermutePoints);
                    let aut = query(orders, g, r, Symmetry::PermuteAndAut);
                    for list in [&ordered, &points, &aut] {
                        assert!(list.windows(2).all(|w| w[0] < w[1]));
                    }
                    let sorted: BTreeSet<Vec<usize>> = ordered
                        .iter()
                        .map(|l| {
                            let mut l = l.clone();
                            l.sort();
                            l
                        })
                        .collect();
                    assert_eq!(sorted.into_iter().collect::<Vec<_>>(), points);
                    assert!(aut.iter().all(|l| points.contains(l)));
                    assert!(aut.len() <= points.len());
                    assert_eq!(aut.is_empty(), points.is_empty());
                }
            }
        }
    }

    #[test]
    fn bound_is_enforced() {
        let group = FiniteAbelianGroup::cyclic(10).unwrap();
        let q = EnumerationQuery::new(group, 0, 8, Symmetry::None);
        assert!(matches!(enumerate_covers(&q), Err(Error::BoundExceeded { .. })));
        let q = q.with_bound(u128::MAX);
        assert_eq!(q.search_size(), 100_000_000);
    }

    #[test]
    fn presentations_listing() {
        let groups = small_group_presentations(8);
        let orders: Vec<Vec<u64>> = groups.iter().map(|g| g.orders().to_vec()).collect();
        assert_eq!(
            orders,
            vec![
                vec![],
                vec![2],
                vec![3],
                vec![2, 2],
                vec![4],
                vec![5],
                vec![2, 3],
                vec![6],
                vec![7],
                vec![2, 2, 2],
                vec![2, 4],
                vec![8],
            ]
        );
    }

    #[test]
    fn symmetry_parsing() {
        assert_eq!("permute-and-aut".parse::<Symmetry>().unwrap(), Symmetry::PermuteAndAut);
        assert!("all".parse::<Symmetry>().is_err());
    }
}
