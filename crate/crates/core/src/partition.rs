//! Integer partitions indexing Schubert classes.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Trailing zeros are stripped on construction, so `(3,2,0)` and `(3,2)` are
/// the same partition. The total order (`Ord`) sorts by size and then
/// lexicographically; it only exists so partitions can key ordered maps. The
/// containment-style order used for the vanishing pattern is
/// [`Partition::compare_componentwise`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(alloc::format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts already known to be weakly decreasing.
    pub(crate) fn from_sorted(mut parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(m)`, indexing the special class `σ_m`.
    pub fn row(m: usize) -> Self {
        Partition::from_sorted(vec![m])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition::from_sorted(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts: the codimension of `σ_λ`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The `i`-th part (zero-based), zero past the end.
    pub fn get(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn fits_box(&self, rows: usize, width: usize) -> bool {
        self.len() <= rows && self.get(0) <= width
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.get(0);
        let parts = (0..width)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition::from_sorted(parts)
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.parts[i] >= other.parts[i])
    }

    /// Componentwise comparison: `Greater` when `self_i ≥ other_i` for every
    /// `i` with at least one strict inequality, `None` when incomparable.
    pub fn compare_componentwise(&self, other: &Partition) -> Option<Ordering> {
        let n = self.len().max(other.len());
        let (mut ge, mut le) = (true, true);
        for i in 0..n {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Greater => le = false,
                Ordering::Less => ge = false,
                Ordering::Equal => {}
            }
        }
        match (ge, le) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }

    /// `λ_i ≥ μ_i` for all `i`, strictly for some `i`.
    pub fn is_bigger_than(&self, other: &Partition) -> bool {
        self.compare_componentwise(other) == Some(Ordering::Greater)
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<usize> {
        (0..n).map(|i| self.get(i)).collect()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Comma-separated parts; the empty partition prints as `0`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(alloc::format!("part {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<&[usize]> for Partition {
    type Error = Error;

    fn try_from(parts: &[usize]) -> Result<Self> {
        Partition::new(parts.to_vec())
    }
}

/// All partitions of `n` with at most `max_len` parts, each at most
/// `max_part` (unbounded when `None`), in decreasing lexicographic order.
pub fn partitions_of(n: usize, max_len: usize, max_part: Option<usize>) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let cap = max_part.unwrap_or(n).min(n);
    fill(n, max_len, cap, &mut current, &mut out);
    out
}

fn fill(
    remaining: usize,
    slots: usize,
    cap: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    if slots == 0 || cap == 0 || cap * slots < remaining {
        return;
    }
    for p in (1..=cap.min(remaining)).rev() {
        current.push(p);
        fill(remaining - p, slots - 1, p, current, out);
        current.pop();
    }
}

/// All partitions fitting a `rows × width` box, sorted by the total order.
pub fn box_partitions(rows: usize, width: usize) -> Vec<Partition> {
    let mut out: Vec<Partition> = (0..=rows * width)
        .flat_map(|n| partitions_of(n, rows, Some(width)))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn trailing_zeros_normalise() {
        assert_eq!(p(&[3, 2, 0]), p(&[3, 2]));
        assert_eq!("3,2,0".parse::<Partition>().unwrap(), p(&[3, 2]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(Partition::empty().to_string(), "0");
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(alloc::vec![1, 2]).is_err());
        assert!("1,x".parse::<Partition>().is_err());
    }

    #[test]
    fn componentwise_order_is_partial() {
        assert!(p(&[3, 2]).is_bigger_than(&p(&[3, 1])));
        assert!(!p(&[3, 1]).is_bigger_than(&p(&[3, 1])));
        assert_eq!(p(&[3]).compare_componentwise(&p(&[2, 2])), None);
        assert!(p(&[1]).is_bigger_than(&Partition::empty()));
    }

    #[test]
    fn box_counts_are_binomial() {
        // The k×(q−k) box holds binom(q, k) partitions.
        assert_eq!(box_partitions(2, 2).len(), 6);
        assert_eq!(box_partitions(3, 4).len(), 35);
        assert_eq!(box_partitions(4, 8).len(), 495);
    }

    #[test]
    fn conjugate_is_an_involution() {
        for lam in box_partitions(3, 4) {
            assert_eq!(lam.conjugate().conjugate(), lam);
            assert_eq!(lam.conjugate().size(), lam.size());
        }
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }
}
