//! The binary-partition pipeline: `num_B` by naive summation and by the
//! doubling recurrence, closed forms for the low-order coefficients
//! `b_0, b_1, b_2`, the degree `d(n)` by three formulas, the pairing
//! certificate for `(1 + x + x^2)`-divisibility, and the power-of-two
//! non-divisibility report.
//!
//! The gcd of the binary `h` products is 1, so `num_B = num*_B` and
//! `den_B = den*_B`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::val2;
use crate::cyclo::BinomialProduct;
use crate::partitions::{count_partitions, enumerate_partitions, PartFamily, Partition};
use crate::poly::{CycloResidue, DensePoly};
use crate::subsum::{h_product, num_star, NumStarStrategy};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BinaryError {
    #[error("even input required, got {0}")]
    OddInput(u64),
    #[error("{0}")]
    Domain(&'static str),
    #[error("pairing failed: mate {0:?} already consumed")]
    MateConsumed(Vec<u64>),
    #[error("pairing incomplete: {0} partitions left uncovered")]
    Incomplete(usize),
}

/// How to build `num_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumBStrategy {
    /// Sum the binary `h` products directly.
    Naive,
    /// Memoized doubling recurrence
    /// `num_B(2n, x) = (1+x)^{2n} num_B(n, x^2) + f_{2n}(x) num_B(2n-2, x)`
    /// with `num_B(2n+1) = num_B(2n)` and bases `num_B(0) = num_B(1) = 1`.
    Recurrence,
}

/// A pairing of the binary partitions of `n`: each entry `(lambda, mate, i)`
/// replaces one part `2^i` of `lambda` by two parts `2^(i-1)`, and the pair
/// sum `h_lambda + h_mate` is divisible by `1 + x + x^2`.
#[derive(Debug, Clone)]
pub struct PairCover {
    pub n: u64,
    pub pairs: Vec<(Partition, Partition, u32)>,
}

/// Number of binary partitions of `n`.
pub fn b_count(n: u64) -> BigInt {
    BigInt::from(count_partitions(n, &PartFamily::Binary))
}

fn recurrence_cache() -> &'static RwLock<HashMap<u64, Arc<DensePoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<DensePoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn num_b_recurrence(n: u64) -> Arc<DensePoly> {
    if let Some(hit) = recurrence_cache().read().expect("poisoned").get(&n) {
        return hit.clone();
    }
    let value = if n <= 1 {
        DensePoly::one()
    } else if n % 2 == 1 {
        (*num_b_recurrence(n - 1)).clone()
    } else {
        let half = num_b_recurrence(n / 2);
        let mut doubled = half.compose_power(2);
        for _ in 0..n {
            doubled.mul_binomial_assign(1);
        }
        let mut tail = (*num_b_recurrence(n - 2)).clone();
        for (i, e) in f_even_factor(n).expect("n even").iter() {
            for _ in 0..e {
                tail.mul_binomial_assign(i as usize);
            }
        }
        &doubled + &tail
    };
    let arc = Arc::new(value);
    let mut table = recurrence_cache().write().expect("poisoned");
    table.entry(n).or_insert(arc).clone()
}

/// `num_B(n, x)`; the two strategies agree.
pub fn num_b(n: u64, strategy: NumBStrategy) -> DensePoly {
    match strategy {
        NumBStrategy::Naive => num_star(n, &PartFamily::Binary, NumStarStrategy::PartDp),
        NumBStrategy::Recurrence => (*num_b_recurrence(n)).clone(),
    }
}

/// `f_{2n}(x) = prod_{i=1}^{val_2(2n)} (1 + x^{2^i})`, the even-step factor
/// of the recurrence; degree `2^(val_2(2n)+1) - 2`.
pub fn f_even_factor(two_n: u64) -> Result<BinomialProduct, BinaryError> {
    if two_n == 0 || !two_n.is_multiple_of(2) {
        return Err(BinaryError::OddInput(two_n));
    }
    Ok(BinomialProduct::from_pairs(
        (1..=val2(two_n)).map(|i| (1u64 << i, 1)),
    ))
}

/// How to compute the degree `d(n)` of `num_B(n, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DStrategy {
    /// `sum_{j>=1} 2^j floor(n / 2^j)`.
    Sum,
    /// `d(n) = 2 (d(floor(n/2)) + floor(n/2))`.
    Recursion,
    /// `sum_i i a_i 2^i` over the binary digits of `n`.
    Digits,
}

/// Degree of `num_B(n, x)` by the chosen formula.
pub fn d_degree(n: u64, strategy: DStrategy) -> u64 {
    match strategy {
        DStrategy::Sum => {
            let mut total = 0;
            let mut j = 1;
            while n >> j > 0 {
                total += (1u64 << j) * (n >> j);
                j += 1;
            }
            total
        }
        DStrategy::Recursion => {
            if n == 0 {
                0
            } else {
                2 * (d_degree(n / 2, DStrategy::Recursion) + n / 2)
            }
        }
        DStrategy::Digits => (0..64)
            .filter(|&i| n >> i & 1 == 1)
            .map(|i| i as u64 * (1u64 << i))
            .sum(),
    }
}

/// Closed forms for the coefficients `b_k(n)` of `num_B(n, x)`, `k <= 2`:
/// `b_0(n) = B(n)`, `b_1(n) = sum_{k <= n/2} 2k B(k)`, and
/// `b_2(2m) = sum_{k <= m} 2k^2 B(k)` with `b_2` constant across each
/// odd step.
pub fn b_closed(n: u64, k: u8) -> Result<BigInt, BinaryError> {
    match k {
        0 => Ok(b_count(n)),
        1 => {
            let mut total = BigInt::zero();
            for j in 0..=n / 2 {
                total += BigInt::from(2 * j) * b_count(j);
            }
            Ok(total)
        }
        2 => {
            let m = n / 2;
            let mut total = BigInt::zero();
            for j in 0..=m {
                total += BigInt::from(2 * j * j) * b_count(j);
            }
            Ok(total)
        }
        _ => Err(BinaryError::Domain("closed forms exist for k = 0, 1, 2")),
    }
}

/// Alternative linear-coefficient form `b_1(n) = n B(n) - sum_{k<n} B(k)`.
pub fn b1_via_partial_sums(n: u64) -> BigInt {
    let mut partial = BigInt::zero();
    for k in 0..n {
        partial += b_count(k);
    }
    BigInt::from(n) * b_count(n) - partial
}

fn mate_of(lambda: &Partition, i: u32) -> Option<Partition> {
    let part = 1u64 << i;
    if i == 0 || lambda.mult(part) == 0 {
        return None;
    }
    let mut parts: Vec<u64> = lambda.parts().to_vec();
    let pos = parts.iter().position(|&p| p == part)?;
    parts.remove(pos);
    parts.push(part / 2);
    parts.push(part / 2);
    Some(Partition::from_unsorted(parts).expect("positive parts"))
}

/// Pair the binary partitions of `n >= 2` by a greedy descent over
/// `(i, m)`: among partitions whose largest part is `2^i` with multiplicity
/// `m`, each chosen `lambda` (in enumeration order) is paired with the
/// partition obtained by splitting one part `2^i` into two parts `2^(i-1)`.
pub fn pair_cover(n: u64) -> Result<PairCover, BinaryError> {
    if n < 2 {
        return Err(BinaryError::Domain("pairing needs n >= 2"));
    }
    let all: Vec<Partition> = enumerate_partitions(n, &PartFamily::Binary).collect();
    let index: HashMap<&[u64], usize> = all
        .iter()
        .enumerate()
        .map(|(k, p)| (p.parts(), k))
        .collect();
    let mut alive = vec![true; all.len()];
    let mut pairs = Vec::with_capacity(all.len() / 2);

    let top = n.ilog2();
    for i in (1..=top).rev() {
        let part = 1u64 << i;
        for m in (1..=n / part).rev() {
            for (k, lambda) in all.iter().enumerate() {
                if !alive[k] || lambda.parts().first() != Some(&part) || lambda.mult(part) != m {
                    continue;
                }
                let mate = mate_of(lambda, i).expect("mult checked above");
                let mate_idx = index[mate.parts()];
                if !alive[mate_idx] {
                    return Err(BinaryError::MateConsumed(mate.parts().to_vec()));
                }
                alive[k] = false;
                alive[mate_idx] = false;
                pairs.push((lambda.clone(), mate, i));
            }
        }
    }
    let uncovered = alive.iter().filter(|&&a| a).count();
    if uncovered > 0 {
        return Err(BinaryError::Incomplete(uncovered));
    }
    Ok(PairCover { n, pairs })
}

impl PairCover {
    /// Residue of a binary `h` product modulo `Phi_3 = 1 + x + x^2`,
    /// computed factor by factor.
    fn h_residue_mod_phi3(n: u64, lambda: &Partition) -> CycloResidue {
        let h = h_product(n, lambda, &PartFamily::Binary).expect("binary partition");
        let mut acc = CycloResidue::from_int(3, BigInt::one());
        for (i, e) in h.iter() {
            let base = DensePoly::binomial(i as usize).reduce_mod_cyclotomic(3);
            acc = acc.mul(&base.pow(e as u64)).expect("same modulus");
        }
        acc
    }

    /// Check the certificate: the pairs partition the binary partitions of
    /// `n` exactly, every mate is the declared split of its partner, and
    /// each pair's `h` sum vanishes modulo `1 + x + x^2`.
    pub fn validate(&self) -> Result<(), BinaryError> {
        let mut seen: HashMap<Vec<u64>, u32> = HashMap::new();
        for (lambda, mate, i) in &self.pairs {
            if mate_of(lambda, *i).as_ref() != Some(mate) {
                return Err(BinaryError::Domain("mate is not the declared split"));
            }
            *seen.entry(lambda.parts().to_vec()).or_insert(0) += 1;
            *seen.entry(mate.parts().to_vec()).or_insert(0) += 1;
            let sum = Self::h_residue_mod_phi3(self.n, lambda)
                .add(&Self::h_residue_mod_phi3(self.n, mate))
                .expect("same modulus");
            if !sum.is_zero() {
                return Err(BinaryError::Domain("pair h-sum not divisible by 1+x+x^2"));
            }
        }
        let mut total = 0usize;
        for lambda in enumerate_partitions(self.n, &PartFamily::Binary) {
            total += 1;
            if seen.get(lambda.parts()).copied() != Some(1) {
                return Err(BinaryError::Incomplete(total));
            }
        }
        if total != 2 * self.pairs.len() {
            return Err(BinaryError::Incomplete(total));
        }
        Ok(())
    }
}

/// Divisibility report for `num_B(n, x)`: whether `1 + x + x^2` divides it
/// (it must, for `n > 1`), and for each `2^i <= n` whether `1 + x^{2^i}`
/// divides it (conjecturally never).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryDivisibility {
    pub n: u64,
    pub third_root_divides: bool,
    /// `(i, divides)` for each `i` with `2^i <= n`.
    pub power_divisors: Vec<(u32, bool)>,
}

/// Whether `1 + x^{2^i}` divides `num_B(n, x)`, via the remainder
/// reduction `r = n mod 2^i`: divisibility transfers between `num_B(n)`
/// and `num_B(r)`, so only the small polynomial is ever reduced.
pub fn power_divides_num_b_reduced(n: u64, i: u32) -> bool {
    let step = 1u64 << i;
    let r = n % step;
    num_b(r, NumBStrategy::Recurrence)
        .exact_div(&DensePoly::binomial(step as usize))
        .is_ok()
}

pub fn binary_divisibility(n: u64) -> BinaryDivisibility {
    let poly = num_b(n, NumBStrategy::Recurrence);
    let third_root_divides = poly.exact_div(&DensePoly::from_i64(&[1, 1, 1])).is_ok();
    let mut power_divisors = Vec::new();
    let mut i = 0u32;
    while 1u64 << i <= n {
        let divides = poly.exact_div(&DensePoly::binomial(1usize << i)).is_ok();
        power_divisors.push((i, divides));
        i += 1;
    }
    BinaryDivisibility {
        n,
        third_root_divides,
        power_divisors,
    }
}
