//! Integer partitions: enumeration, dominance, and the statistics used by
//! the type-A generators.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid partition label {0:?}")]
pub struct PartitionParseError(pub String);

/// A partition stored as a weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_statistic(&self) -> usize {
        self.0.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.part(0);
        Self(
            (0..width)
                .map(|j| self.0.iter().filter(|&&p| p > j).count())
                .collect(),
        )
    }

    /// Dominance order: every partial sum of `self` is at least the
    /// corresponding partial sum of `other`.
    pub fn dominates(&self, other: &Self) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// `z_λ = Π i^{m_i} m_i!`, the centralizer order of a permutation of
    /// cycle type `λ`.
    pub fn z(&self) -> u128 {
        let mut out: u128 = 1;
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mult = self.0[i..].iter().take_while(|&&q| q == p).count();
            for k in 1..=mult {
                out *= (p as u128) * (k as u128);
            }
            i += mult;
        }
        out
    }

    /// All partitions of `n` in increasing lexicographic order, so `(1^n)`
    /// comes first and `(n)` last.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(current.clone()));
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                current.push(p);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out.reverse();
        out
    }

    /// Dominance comparison as a partial order.
    pub fn dominance_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.dominates(other), other.dominates(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }
}

/// Labels look like `(3,1,1)`; the empty partition is `()`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PartitionParseError(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        if inner.trim().is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(err());
        }
        Ok(Partition(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn ordering_is_increasing_lex() {
        let all = Partition::all(4);
        assert_eq!(
            all,
            vec![p(&[1, 1, 1, 1]), p(&[2, 1, 1]), p(&[2, 2]), p(&[3, 1]), p(&[4])]
        );
    }

    #[test]
    fn n_statistic_values() {
        let values: Vec<usize> = Partition::all(4).iter().map(Partition::n_statistic).collect();
        assert_eq!(values, vec![6, 3, 2, 1, 0]);
        assert_eq!(p(&[2, 1]).n_statistic(), 1);
    }

    #[test]
    fn dominance_in_size_six() {
        assert_eq!(p(&[3, 1, 1, 1]).dominance_cmp(&p(&[2, 2, 2])), None);
        assert_eq!(p(&[4, 1, 1]).dominance_cmp(&p(&[3, 3])), None);
        assert_eq!(p(&[3, 2, 1]).dominance_cmp(&p(&[2, 2, 2])), Some(Ordering::Greater));
        assert!(!p(&[3]).dominates(&p(&[2, 1, 1])));
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[1, 1, 1]).z(), 6);
        assert_eq!(p(&[2, 1]).z(), 2);
        assert_eq!(p(&[3]).z(), 3);
        assert_eq!(p(&[2, 2]).z(), 8);
    }

    #[test]
    fn conjugate_and_labels() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[3, 1, 1]).to_string(), "(3,1,1)");
        assert_eq!("(3,1,1)".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert!("(1,3)".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
    }
}
