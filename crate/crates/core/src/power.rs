//! Sums of `m`-th powers of subsum polynomials over the partitions of `n`,
//! their exact values at integer points (rational for negative `m`), and
//! the 2-valuation of the derivative at 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::val2_big;
use crate::partitions::{enumerate_partitions, PartFamily};
use crate::poly::DensePoly;
use crate::subsum::sp_poly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PowerError {
    /// A vanishing subsum value raised to a negative power. Skipping such
    /// terms would silently change the sum's meaning, so they are rejected.
    #[error("sp(lambda, {at}) = 0 raised to negative power {power}")]
    ZeroBase { at: i64, power: i64 },
    #[error("{0}")]
    Domain(&'static str),
}

/// An exact rational in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        ExactRational(BigRational::new(numer, denom))
    }

    pub fn from_int(v: BigInt) -> Self {
        ExactRational(BigRational::from_integer(v))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn add_assign(&mut self, other: &ExactRational) {
        self.0 += &other.0;
    }
}

impl std::fmt::Display for ExactRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// `beta(n, x, m) = sum over partitions of n of sp(lambda, x)^m` for
/// `m >= 0`; degree `n * m` for `n, m >= 1`.
pub fn beta_poly(n: u64, m: u32) -> DensePoly {
    let mut acc = DensePoly::zero();
    for lambda in enumerate_partitions(n, &PartFamily::All) {
        acc = &acc + &sp_poly(&lambda).pow(m);
    }
    acc
}

/// Exact value of `beta(n, a, m)` over the rationals; negative `m` rejects
/// any vanishing base.
pub fn beta_eval(n: u64, a: i64, m: i64) -> Result<ExactRational, PowerError> {
    let point = BigInt::from(a);
    let mut acc = ExactRational::zero();
    for lambda in enumerate_partitions(n, &PartFamily::All) {
        let base = sp_poly(&lambda).eval(&point);
        let term = if m >= 0 {
            ExactRational::from_int(base.pow(m as u32))
        } else {
            if base.is_zero() {
                return Err(PowerError::ZeroBase { at: a, power: m });
            }
            ExactRational::new(BigInt::one(), base.pow((-m) as u32))
        };
        acc.add_assign(&term);
    }
    Ok(acc)
}

/// `val_2` of `beta'(n, 1, k)`, computed two independent ways and asserted
/// equal: by differentiating the polynomial and evaluating at 1, and by the
/// closed sum `(1/2) n k sum over partitions of 2^(k * parts)`.
pub fn beta_prime_valuation(n: u64, k: u32) -> Result<u64, PowerError> {
    if n == 0 || k == 0 {
        return Err(PowerError::Domain("derivative valuation needs n, k >= 1"));
    }
    let by_poly = beta_poly(n, k).derivative().eval(&BigInt::one());

    let mut sum = BigInt::zero();
    for lambda in enumerate_partitions(n, &PartFamily::All) {
        sum += BigInt::from(2).pow(k * lambda.len() as u32);
    }
    let twice = BigInt::from(n) * BigInt::from(k) * sum;
    debug_assert!((&twice % BigInt::from(2)).is_zero());
    let closed = twice / BigInt::from(2);

    if by_poly != closed {
        // Either route failing to match the other falsifies the derivation.
        panic!("derivative routes disagree: {by_poly} vs {closed}");
    }
    debug_assert!(by_poly.is_positive());
    Ok(val2_big(&by_poly))
}
