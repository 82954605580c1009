//! Integer partitions, restricted part families, enumeration and counting.
//!
//! Enumeration order is deterministic: largest part first, recursing with the
//! cap lowered, so partitions of 3 stream as (3), (2,1), (1,1,1). Counting is
//! an independent dynamic program over allowed parts and is tested against
//! the stream length.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive")]
    ZeroPart,
    #[error("parts must be nonincreasing")]
    NotSorted,
}

/// A partition: nonincreasing multiset of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Build from a nonincreasing list of positive parts.
    pub fn new(parts: Vec<u64>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotSorted);
        }
        Ok(Partition { parts })
    }

    /// Build from parts in any order.
    pub fn from_unsorted(mut parts: Vec<u64>) -> Result<Self, PartitionError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Multiplicity of `i` as a part.
    pub fn mult(&self, i: u64) -> u64 {
        self.parts.iter().filter(|&&p| p == i).count() as u64
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of parts.
    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Distinct parts with multiplicities, largest part first.
    pub fn multiplicities(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

/// A family of admissible parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PartFamily {
    /// Unrestricted partitions.
    All,
    /// Parts are powers of two.
    Binary,
    /// Parts are powers of three.
    Ternary,
    /// Parts are odd.
    Odd,
    /// Parts drawn from an explicit finite set.
    PartsIn(BTreeSet<u64>),
}

impl PartFamily {
    /// Whether `i` is an admissible part.
    pub fn allowed(&self, i: u64) -> bool {
        if i == 0 {
            return false;
        }
        match self {
            PartFamily::All => true,
            PartFamily::Binary => i.is_power_of_two(),
            PartFamily::Ternary => {
                let mut m = i;
                while m.is_multiple_of(3) {
                    m /= 3;
                }
                m == 1
            }
            PartFamily::Odd => i % 2 == 1,
            PartFamily::PartsIn(set) => set.contains(&i),
        }
    }

    /// Largest admissible part `<= cap`, if any.
    pub fn prev_allowed(&self, cap: u64) -> Option<u64> {
        if cap == 0 {
            return None;
        }
        match self {
            PartFamily::All => Some(cap),
            PartFamily::Binary => Some(1 << cap.ilog2()),
            PartFamily::Ternary => {
                let mut p = 1u64;
                while p * 3 <= cap {
                    p *= 3;
                }
                Some(p)
            }
            PartFamily::Odd => Some(if cap % 2 == 1 { cap } else { cap - 1 }),
            PartFamily::PartsIn(set) => set.range(..=cap).next_back().copied(),
        }
    }

    /// Admissible parts `<= n`, descending.
    pub fn parts_descending(&self, n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut cap = n;
        while let Some(p) = self.prev_allowed(cap) {
            out.push(p);
            if p == 1 {
                break;
            }
            cap = p - 1;
        }
        out
    }

    /// Canonical lowercase name for the named families.
    pub fn name(&self) -> String {
        match self {
            PartFamily::All => "all".into(),
            PartFamily::Binary => "binary".into(),
            PartFamily::Ternary => "ternary".into(),
            PartFamily::Odd => "odd".into(),
            PartFamily::PartsIn(set) => {
                let parts: Vec<String> = set.iter().map(|p| p.to_string()).collect();
                format!("parts-in({})", parts.join(","))
            }
        }
    }
}

/// Streaming enumeration of the partitions of `n` with parts in `family`.
///
/// `n = 0` yields exactly the empty partition, for every family.
pub struct PartitionIter {
    family: PartFamily,
    /// Current prefix of chosen parts (nonincreasing).
    stack: Vec<u64>,
    remaining: u64,
    /// Set once the iterator is exhausted.
    done: bool,
    /// True before the first `next` call.
    fresh: bool,
}

impl PartitionIter {
    fn new(n: u64, family: PartFamily) -> Self {
        PartitionIter {
            family,
            stack: Vec::new(),
            remaining: n,
            done: false,
            fresh: true,
        }
    }

    /// Greedily extend the current prefix with the largest admissible parts.
    /// Returns false if the remainder cannot be completed under the cap.
    fn descend(&mut self, mut cap: u64) -> bool {
        while self.remaining > 0 {
            cap = cap.min(self.remaining);
            match self.family.prev_allowed(cap) {
                Some(p) => {
                    self.stack.push(p);
                    self.remaining -= p;
                    cap = p;
                }
                None => return false,
            }
        }
        true
    }

    /// Backtrack to the next unexplored branch and complete it.
    fn advance(&mut self) -> bool {
        while let Some(p) = self.stack.pop() {
            self.remaining += p;
            if p > 1
                && self.descend(p - 1) {
                    return true;
                }
                // Completion failed below this branch; keep backtracking.
        }
        false
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let found = if self.fresh {
            self.fresh = false;
            let n = self.remaining;
            self.descend(n.max(1))
        } else {
            self.advance()
        };
        // A failed first descent still needs backtracking over its prefix.
        let found = found || self.advance();
        if !found {
            self.done = true;
            return None;
        }
        Some(Partition {
            parts: self.stack.clone(),
        })
    }
}

/// Stream every partition of `n` whose parts all lie in `family`.
pub fn enumerate_partitions(n: u64, family: &PartFamily) -> PartitionIter {
    PartitionIter::new(n, family.clone())
}

/// Count partitions of `n` over `family` by dynamic programming.
pub fn count_partitions(n: u64, family: &PartFamily) -> BigUint {
    let mut dp = vec![BigUint::zero(); n as usize + 1];
    dp[0] = BigUint::one();
    let mut parts = family.parts_descending(n);
    parts.reverse();
    for p in parts {
        for w in p as usize..=n as usize {
            let prev = dp[w - p as usize].clone();
            dp[w] += prev;
        }
    }
    dp[n as usize].clone()
}

/// Partitions of `n` into `k` sorts of parts: order of sorts matters among
/// equal parts, so each ordinary partition contributes `k^(number of parts)`.
/// Computed as the coefficient of `x^n` in `prod_j (1 - k x^j)^(-1)` by an
/// exact truncated series DP.
pub fn count_colored_partitions(n: u64, k: u64) -> BigUint {
    assert!(k >= 1, "need at least one sort");
    let kk = BigUint::from(k);
    let mut dp = vec![BigUint::zero(); n as usize + 1];
    dp[0] = BigUint::one();
    for j in 1..=n as usize {
        for w in j..=n as usize {
            let add = &dp[w - j] * &kk;
            dp[w] += add;
        }
    }
    dp[n as usize].clone()
}
