//! Integer kernels: p-adic valuations, odd parts, divisor statistics, floor
//! logarithms and the degree-increment sequence `s(n)`.
//!
//! Everything here is exact integer arithmetic; floor logarithms are computed
//! by shifting/comparison, never through floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    /// The p-adic valuation of zero is not defined.
    #[error("valuation of zero is undefined")]
    UndefinedValuation,
    /// Input outside the operation's domain.
    #[error("{0}")]
    Domain(&'static str),
}

/// Largest `k` with `p^k | n`. Requires `n >= 1` and `p >= 2`.
pub fn p_adic_valuation(n: u64, p: u64) -> Result<u32, ArithError> {
    if n == 0 {
        return Err(ArithError::UndefinedValuation);
    }
    if p < 2 {
        return Err(ArithError::Domain("valuation base must be at least 2"));
    }
    let mut n = n;
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    Ok(k)
}

/// `val_2(n)` for `n >= 1`.
pub fn val2(n: u64) -> u32 {
    debug_assert!(n > 0);
    n.trailing_zeros()
}

/// Largest odd divisor of `m` (rejects `m = 0`).
pub fn odd_part(m: u64) -> Result<u64, ArithError> {
    if m == 0 {
        return Err(ArithError::UndefinedValuation);
    }
    Ok(m >> m.trailing_zeros())
}

/// Odd part of a nonzero big integer; used for values of factorial size.
pub fn odd_part_big(m: &BigInt) -> BigInt {
    assert!(!m.is_zero());
    let mut v = m.abs();
    let two: BigInt = BigInt::from(2);
    while (&v % &two).is_zero() {
        v /= &two;
    }
    v
}

/// `val_2` of a nonzero big integer.
pub fn val2_big(m: &BigInt) -> u64 {
    assert!(!m.is_zero());
    let mut v = m.abs();
    let two: BigInt = BigInt::from(2);
    let mut k = 0u64;
    while (&v % &two).is_zero() {
        v /= &two;
        k += 1;
    }
    k
}

/// Exact divisor statistics of `n >= 1`: `(sigma0, sigma1, sorted divisors)`.
pub fn divisor_stats(n: u64) -> Result<(u64, u64, Vec<u64>), ArithError> {
    if n == 0 {
        return Err(ArithError::Domain("divisor stats need n >= 1"));
    }
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    let sigma0 = divs.len() as u64;
    let sigma1 = divs.iter().sum();
    Ok((sigma0, sigma1, divs))
}

/// Sorted divisors of `n >= 1`.
pub fn divisors(n: u64) -> Vec<u64> {
    divisor_stats(n).expect("n >= 1").2
}

/// `val_2(n!)` by Legendre's formula.
pub fn val2_factorial(n: u64) -> u64 {
    let mut total = 0;
    let mut q = n / 2;
    while q > 0 {
        total += q;
        q /= 2;
    }
    total
}

/// `val_p(n!)` by Legendre's formula.
pub fn valp_factorial(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// `base^exp` as a big integer.
pub fn big_pow(base: u64, exp: u64) -> BigInt {
    BigInt::from(base).pow(exp as u32)
}

/// `floor(log_b(x))` for integers `x >= 1`, `b >= 2`.
pub fn floor_log(b: u64, x: u64) -> u32 {
    debug_assert!(x >= 1 && b >= 2);
    if b == 2 {
        return x.ilog2();
    }
    let mut k = 0;
    let mut pw = b;
    while pw <= x {
        k += 1;
        match pw.checked_mul(b) {
            Some(next) => pw = next,
            None => break,
        }
    }
    k
}

/// `floor(lb(n/i))` read as `floor(log2(floor(n/i)))`; requires `i <= n`.
pub fn floor_lb_ratio(n: u64, i: u64) -> u32 {
    debug_assert!(i >= 1 && i <= n);
    (n / i).ilog2()
}

/// The sequence defined by `s(2n) = s(n) + 2n` and `s(2n-1) = 2n-1`.
///
/// Closed form: `s(n) = 2n - o(n)` with `o` the largest odd divisor.
pub fn s_value(n: u64) -> Result<u64, ArithError> {
    if n == 0 {
        return Err(ArithError::Domain("s(n) needs n >= 1"));
    }
    let mut total = 0;
    let mut m = n;
    while m.is_multiple_of(2) {
        total += m;
        m /= 2;
    }
    Ok(total + m)
}

/// Euler's totient of `n >= 1`.
pub fn euler_phi(n: u64) -> u64 {
    debug_assert!(n >= 1);
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(p_adic_valuation(12, 2).unwrap(), 2);
        assert_eq!(p_adic_valuation(720, 2).unwrap(), 4);
        assert_eq!(p_adic_valuation(7, 3).unwrap(), 0);
        assert_eq!(p_adic_valuation(0, 2), Err(ArithError::UndefinedValuation));
    }

    #[test]
    fn odd_part_examples() {
        assert_eq!(odd_part(12).unwrap(), 3);
        assert_eq!(odd_part(8).unwrap(), 1);
        assert_eq!(odd_part(7).unwrap(), 7);
        assert!(odd_part(0).is_err());
    }

    #[test]
    fn divisor_stats_examples() {
        assert_eq!(divisor_stats(6).unwrap(), (4, 12, vec![1, 2, 3, 6]));
        assert_eq!(divisor_stats(1).unwrap(), (1, 1, vec![1]));
    }

    #[test]
    fn s_value_examples() {
        // s(2n-1) = 2n-1 directly.
        assert_eq!(s_value(1).unwrap(), 1);
        // Unrolled recursion: s(4) = s(2) + 4 = (s(1) + 2) + 4 = 7.
        assert_eq!(s_value(4).unwrap(), 7);
        // s(6) = s(3) + 6 = 9.
        assert_eq!(s_value(6).unwrap(), 9);
        assert!(s_value(0).is_err());
    }

    #[test]
    fn s_matches_closed_form() {
        for n in 1..=100_000u64 {
            assert_eq!(s_value(n).unwrap(), 2 * n - odd_part(n).unwrap());
        }
    }

    #[test]
    fn legendre_agrees_with_summed_valuations() {
        let mut acc = 0u64;
        for n in 1..=10_000u64 {
            acc += u64::from(p_adic_valuation(n, 2).unwrap());
            assert_eq!(acc, val2_factorial(n));
        }
    }

    #[test]
    fn floor_lb_sum_is_val2_factorial() {
        for n in (1..=10_000u64).step_by(197) {
            let sum: u64 = (1..=n).map(|i| u64::from(floor_lb_ratio(n, i))).sum();
            assert_eq!(sum, val2_factorial(n));
        }
    }

    #[test]
    fn factorial_and_big_odd_part() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(odd_part_big(&BigInt::from(120)), BigInt::from(15));
        assert_eq!(val2_big(&BigInt::from(120)), 3);
    }

    #[test]
    fn totient_small() {
        let expected = [1u64, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), e);
        }
    }

    #[test]
    fn base_b_floor_log_identity_small() {
        // m = sum over 1 <= j <= m with b not dividing j of floor(log_b(bm/j)).
        for b in 2..=5u64 {
            for m in 1..=300u64 {
                let sum: u64 = (1..=m)
                    .filter(|j| j % b != 0)
                    .map(|j| u64::from(floor_log(b, b * m / j)))
                    .sum();
                assert_eq!(sum, m, "base {b}, m {m}");
            }
        }
    }
}
