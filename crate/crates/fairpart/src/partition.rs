//! Size vectors and labeled partitions.

use crate::error::{Error, Result};
use crate::graph::AgentId;

/// Prescribed part sizes, non-increasing. The balanced constructor yields
/// sizes in `{⌊n/k⌋, ⌈n/k⌉}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeVector {
    sizes: Vec<usize>,
}

impl SizeVector {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidInstance("size vector must be nonempty".into()));
        }
        if sizes.iter().any(|&s| s == 0) {
            return Err(Error::InvalidInstance("every part size must be at least 1".into()));
        }
        if sizes.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInstance(
                "size vector must be non-increasing".into(),
            ));
        }
        Ok(Self { sizes })
    }

    /// The balanced size vector for `(n, k)`: `n mod k` parts of size
    /// `⌈n/k⌉` followed by parts of size `⌊n/k⌋`.
    pub fn balanced(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidInstance(format!(
                "part count {k} must satisfy 1 <= k <= n = {n}"
            )));
        }
        let base = n / k;
        let extra = n % k;
        let sizes = (0..k).map(|i| if i < extra { base + 1 } else { base }).collect();
        Ok(Self { sizes })
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn max(&self) -> usize {
        self.sizes[0]
    }

    pub fn min(&self) -> usize {
        *self.sizes.last().unwrap()
    }

    pub fn is_balanced(&self) -> bool {
        self.max() - self.min() <= 1
    }

    /// Checks the vector against an agent count.
    pub fn check_n(&self, n: usize) -> Result<()> {
        if self.total() != n {
            return Err(Error::InvalidInstance(format!(
                "sizes sum to {} but there are {n} agents",
                self.total()
            )));
        }
        if self.k() > n {
            return Err(Error::InvalidInstance(format!(
                "part count {} exceeds agent count {n}",
                self.k()
            )));
        }
        Ok(())
    }
}

/// An assignment of every agent to one of `k` labeled parts. Parts are
/// labeled internally, but all existence questions and audits are
/// label-invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    k: usize,
    part_of: Vec<usize>,
}

impl Partition {
    pub fn new(part_of: Vec<usize>, k: usize) -> Result<Self> {
        if part_of.is_empty() {
            return Err(Error::InvalidPartition("no agents assigned".into()));
        }
        if let Some(&bad) = part_of.iter().find(|&&p| p >= k) {
            return Err(Error::InvalidPartition(format!(
                "part index {bad} outside [0, {k})"
            )));
        }
        let mut counts = vec![0usize; k];
        for &p in &part_of {
            counts[p] += 1;
        }
        if counts.iter().any(|&c| c == 0) {
            return Err(Error::InvalidPartition("empty part".into()));
        }
        Ok(Self { k, part_of })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn part_of(&self, a: AgentId) -> usize {
        self.part_of[a]
    }

    pub fn assignments(&self) -> &[usize] {
        &self.part_of
    }

    /// Derived part contents, each sorted ascending.
    pub fn parts(&self) -> Vec<Vec<AgentId>> {
        let mut parts = vec![Vec::new(); self.k];
        for (a, &p) in self.part_of.iter().enumerate() {
            parts[p].push(a);
        }
        parts
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.k];
        for &p in &self.part_of {
            counts[p] += 1;
        }
        counts
    }

    /// Label-invariant form: parts ordered by smallest member.
    pub fn canonical_parts(&self) -> Vec<Vec<AgentId>> {
        let mut parts = self.parts();
        parts.sort();
        parts
    }
}

/// Confirms disjoint cover (structural in `Partition`) and that part sizes
/// match the size vector as multisets. Reports the first violated clause.
pub fn validate_partition(p: &Partition, sv: &SizeVector) -> Result<()> {
    if p.k() != sv.k() {
        return Err(Error::InvalidPartition(format!(
            "partition has {} parts, size vector has {}",
            p.k(),
            sv.k()
        )));
    }
    sv.check_n(p.n())?;
    let mut got = p.part_sizes();
    if got.iter().any(|&c| c == 0) {
        return Err(Error::InvalidPartition("empty part".into()));
    }
    got.sort_unstable_by(|a, b| b.cmp(a));
    if got != sv.sizes() {
        return Err(Error::InvalidPartition(format!(
            "size mismatch: partition sizes {:?} vs prescribed {:?}",
            got,
            sv.sizes()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_sizes_are_balanced_and_sum() {
        for n in 1..=20 {
            for k in 1..=n {
                let sv = SizeVector::balanced(n, k).unwrap();
                assert_eq!(sv.total(), n);
                assert!(sv.max() - sv.min() <= 1);
                assert_eq!(sv.k(), k);
            }
        }
        assert_eq!(SizeVector::balanced(3, 2).unwrap().sizes(), &[2, 1]);
        assert_eq!(SizeVector::balanced(7, 3).unwrap().sizes(), &[3, 2, 2]);
    }

    #[test]
    fn validate_matches_multisets() {
        let sv = SizeVector::new(vec![2, 1]).unwrap();
        let ok = Partition::new(vec![0, 0, 1], 2).unwrap();
        assert!(validate_partition(&ok, &sv).is_ok());

        // Out-of-order sizes still validate as multisets.
        let flipped = Partition::new(vec![0, 1, 1], 2).unwrap();
        assert!(validate_partition(&flipped, &sv).is_ok());

        let sv32 = SizeVector::new(vec![2, 1]).unwrap();
        let wrong = Partition::new(vec![0, 1, 2], 3).unwrap();
        assert!(validate_partition(&wrong, &sv32).is_err());
    }

    #[test]
    fn empty_part_rejected() {
        assert!(matches!(
            Partition::new(vec![0, 0, 0], 2),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn unsorted_size_vector_rejected() {
        assert!(SizeVector::new(vec![1, 2]).is_err());
        assert!(SizeVector::new(vec![2, 0]).is_err());
    }
}
