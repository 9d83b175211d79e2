//! Strict partitions, shifted and symmetric plane partitions, and their
//! `(q, t)` generating functions.

mod gf;
mod plane;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use gf::{
    lattice_gf_closed_form, pp_sym_volume_bruteforce, qt_gf_bruteforce, qt_gf_determinant, qt_path_matrix, qt_weight,
    spp_volume_bruteforce, verify_theorem_4_3, volume_gf, Theorem43Report, VolumeKind,
};
pub use plane::{
    enumerate_spp, enumerate_spp_with, for_each_symmetric_pp, spp_to_symmetric, symmetric_to_spp, PlanePartition,
    ShiftedPlanePartition, SppIter,
};

/// Strictly decreasing sequence of positive integers. The empty partition is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.last() == Some(&0) {
            return Err(Error::Partition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Partition(format!("{parts:?} is not strictly decreasing")));
        }
        Ok(StrictPartition(parts))
    }

    /// `(n, ..., 1) + (k, ..., 1)`: parts `n + k + 2 - 2i` for `i <= k`, then `n + 1 - i`.
    pub fn double_staircase(n: u32, k: u32) -> Result<Self> {
        if k > n {
            return Err(Error::Partition(format!("double staircase needs k <= n, got n={n}, k={k}")));
        }
        let parts = (1..=n).map(|i| if i <= k { n + k + 2 - 2 * i } else { n + 1 - i }).collect();
        StrictPartition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Number of boxes of the shifted diagram.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Every strict partition with at most `max_parts` parts, all at most `max_part`,
    /// in a fixed order (by length, then lexicographically decreasing subsets).
    pub fn all_bounded(max_part: u32, max_parts: usize) -> Vec<StrictPartition> {
        use itertools::Itertools;
        let mut out = Vec::new();
        for k in 0..=max_parts.min(max_part as usize) {
            for mut parts in (1..=max_part).combinations(k) {
                parts.reverse();
                out.push(StrictPartition(parts));
            }
        }
        out
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    /// Comma-separated parts, optionally wrapped in parentheses; empty text is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() {
            return Ok(StrictPartition::default());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part {p:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        StrictPartition::new(parts)
    }
}

/// Weakly decreasing sequence of positive integers (row lengths of a Young diagram).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.last() == Some(&0) {
            return Err(Error::Partition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Partition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|c| self.0.iter().filter(|&&r| r >= c).count() as u32).collect())
    }

    /// Side of the largest square contained in the diagram.
    pub fn durfee(&self) -> usize {
        self.0.iter().enumerate().take_while(|(i, &r)| r as usize > *i).count()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.0.get(row).is_some_and(|&r| (col as u32) < r)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
    }
}

/// The symmetric partition whose upper-right half (diagonal included) is the
/// shifted diagram of `lambda`: row `i` has length `lambda_i + i - 1` for `i <= k`.
pub fn bar_lambda(lambda: &StrictPartition) -> Partition {
    let ends: Vec<u32> = lambda.parts().iter().enumerate().map(|(i, &p)| p + i as u32).collect();
    let mut rows = ends.clone();
    let mut row = ends.len() as u32 + 1;
    loop {
        let len = ends.iter().filter(|&&e| e >= row).count() as u32;
        if len == 0 {
            break;
        }
        rows.push(len);
        row += 1;
    }
    Partition(rows)
}

/// Validates a 1-based index set inside `1..=k`, rejecting repeats.
pub fn index_set(indices: &[usize], k: usize) -> Result<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for &i in indices {
        if i == 0 || i > k {
            return Err(Error::IndexSet(format!("index {i} is outside 1..={k}")));
        }
        if !set.insert(i) {
            return Err(Error::IndexSet(format!("index {i} repeated")));
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn strictness_is_checked() {
        assert!(StrictPartition::new(vec![3, 3]).is_err());
        assert!(StrictPartition::new(vec![1, 2]).is_err());
        assert!(StrictPartition::new(vec![2, 0]).is_err());
        assert!(StrictPartition::new(vec![]).is_ok());
        assert_eq!("9,7,6,3,2".parse::<StrictPartition>().unwrap(), sp(&[9, 7, 6, 3, 2]));
        assert_eq!("(2,1)".parse::<StrictPartition>().unwrap().to_string(), "(2,1)");
        assert!("2,x".parse::<StrictPartition>().is_err());
    }

    #[test]
    fn double_staircase_parts() {
        assert_eq!(StrictPartition::double_staircase(7, 3).unwrap(), sp(&[10, 8, 6, 4, 3, 2, 1]));
        assert_eq!(StrictPartition::double_staircase(1, 1).unwrap(), sp(&[2]));
        assert_eq!(StrictPartition::double_staircase(3, 0).unwrap(), sp(&[3, 2, 1]));
        assert!(StrictPartition::double_staircase(0, 0).unwrap().is_empty());
        assert!(StrictPartition::double_staircase(1, 2).is_err());
    }

    #[test]
    fn symmetrized_shapes() {
        assert_eq!(bar_lambda(&sp(&[1])).parts(), &[1]);
        assert_eq!(bar_lambda(&sp(&[2, 1])).parts(), &[2, 2]);
        let big = bar_lambda(&sp(&[9, 7, 6, 3, 2]));
        assert_eq!(big.parts(), &[9, 8, 8, 6, 6, 5, 3, 3, 1]);
        assert_eq!(big.conjugate(), big);
        assert_eq!(big.durfee(), 5);
        assert!(bar_lambda(&StrictPartition::default()).is_empty());
    }

    #[test]
    fn bounded_listing() {
        let all = StrictPartition::all_bounded(4, 3);
        assert_eq!(all.len(), 1 + 4 + 6 + 4);
        assert!(all.contains(&sp(&[4, 3, 2])));
        assert!(all.iter().all(|p| p.len() <= 3 && p.largest() <= 4));
    }

    #[test]
    fn index_sets() {
        assert_eq!(index_set(&[2, 1], 3).unwrap().into_iter().collect::<Vec<_>>(), vec![1, 2]);
        assert!(index_set(&[0], 3).is_err());
        assert!(index_set(&[4], 3).is_err());
        assert!(index_set(&[1, 1], 3).is_err());
    }
}
