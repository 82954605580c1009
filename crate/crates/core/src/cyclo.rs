//! Cyclotomic polynomials and the factored-product calculus for
//! `(1 + x^i)` terms.
//!
//! Two factored representations are used side by side:
//!
//! * [`BinomialProduct`]: an exponent map `i -> e_i` for `prod (1+x^i)^e_i`.
//!   Not canonical (distinct maps can expand to the same polynomial), but it
//!   is the shape in which the partition products arise.
//! * [`CycloFactored`]: an exponent map `d -> e_d` for `prod Phi_d^e_d`.
//!   Canonical, since the cyclotomics are irreducible: two values are equal
//!   iff the maps are equal. Signed exponents represent rational objects.
//!
//! The bridge is `1 + x^i = prod over d | 2i, d not dividing i of Phi_d(x)`,
//! and the gcd of a collection of binomial products is recovered from the
//! maximal dividing powers gamma_i by a descending recursion over indices.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{divisors, euler_phi, val2};
use crate::poly::{DensePoly, PolyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactoredError {
    #[error("expansion requires all exponents nonnegative (index {index} has {exponent})")]
    NegativeExponent { index: u64, exponent: i64 },
    #[error("gcd of an empty collection")]
    EmptyCollection,
    /// The gcd exists but is not a product of `(1+x^j)` terms with
    /// nonnegative exponents; cannot happen for the partition families this
    /// crate constructs, but adversarial inputs can reach it.
    #[error("gcd is not expressible as a nonnegative binomial product")]
    NotBinomialExpressible,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn cyclotomic_table() -> &'static RwLock<HashMap<u64, Arc<DensePoly>>> {
    static TABLE: OnceLock<RwLock<HashMap<u64, Arc<DensePoly>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `d`-th cyclotomic polynomial, by exact division of `x^d - 1` by all
/// `Phi_e` with `e | d`, `e < d`. Memoized for the process lifetime; entries
/// are immutable once inserted and the table supports concurrent readers.
pub fn cyclotomic(d: u64) -> Arc<DensePoly> {
    assert!(d >= 1);
    if let Some(hit) = cyclotomic_table().read().expect("poisoned").get(&d) {
        return hit.clone();
    }
    let value = if d == 1 {
        DensePoly::from_i64(&[-1, 1])
    } else {
        let mut acc = DensePoly::x_pow_minus_one(d as usize);
        for e in divisors(d) {
            if e < d {
                let phi = cyclotomic(e);
                let (q, r) = acc.divrem_monic(&phi);
                debug_assert!(r.is_zero(), "cyclotomic division must be exact");
                acc = q;
            }
        }
        acc
    };
    let arc = Arc::new(value);
    let mut table = cyclotomic_table().write().expect("poisoned");
    table.entry(d).or_insert_with(|| arc.clone());
    table[&d].clone()
}

/// Cyclotomic support of `1 + x^i`: the set `{d : d | 2i, d does not
/// divide i}`.
pub fn binomial_support(i: u64) -> Vec<u64> {
    assert!(i >= 1);
    divisors(2 * i)
        .into_iter()
        .filter(|&d| !i.is_multiple_of(d))
        .collect()
}

/// A product `prod_i (1 + x^i)^{e_i}` with signed exponents; zero exponents
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BinomialProduct {
    exps: BTreeMap<u64, i64>,
}

impl BinomialProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut out = Self::default();
        for (i, e) in pairs {
            out.push(i, e);
        }
        out
    }

    /// Add `e` to the exponent of `1 + x^i`.
    pub fn push(&mut self, i: u64, e: i64) {
        assert!(i >= 1);
        if e == 0 {
            return;
        }
        let slot = self.exps.entry(i).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&i);
        }
    }

    pub fn exponent(&self, i: u64) -> i64 {
        self.exps.get(&i).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exps.iter().map(|(&i, &e)| (i, e))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.values().all(|&e| e >= 0)
    }

    pub fn max_index(&self) -> Option<u64> {
        self.exps.keys().next_back().copied()
    }

    /// Pointwise sum of exponent maps (product of the represented values).
    pub fn mul(&self, other: &BinomialProduct) -> BinomialProduct {
        let mut out = self.clone();
        for (i, e) in other.iter() {
            out.push(i, e);
        }
        out
    }

    /// Pointwise difference (quotient of represented values).
    pub fn div(&self, other: &BinomialProduct) -> BinomialProduct {
        let mut out = self.clone();
        for (i, e) in other.iter() {
            out.push(i, -e);
        }
        out
    }

    /// Degree of the expansion; requires a polynomial (all exponents >= 0).
    pub fn degree(&self) -> Result<u64, FactoredError> {
        let mut deg: u64 = 0;
        for (i, e) in self.iter() {
            if e < 0 {
                return Err(FactoredError::NegativeExponent {
                    index: i,
                    exponent: e,
                });
            }
            deg += i * e as u64;
        }
        Ok(deg)
    }

    /// Exact expansion into a dense polynomial.
    pub fn expand(&self) -> Result<DensePoly, FactoredError> {
        let mut acc = DensePoly::one();
        for (i, e) in self.iter() {
            if e < 0 {
                return Err(FactoredError::NegativeExponent {
                    index: i,
                    exponent: e,
                });
            }
            for _ in 0..e {
                acc.mul_binomial_assign(i as usize);
            }
        }
        Ok(acc)
    }

    /// Exact value at `x = 1`: `2^(sum of exponents)` for polynomials.
    pub fn eval_one(&self) -> Result<BigInt, FactoredError> {
        let mut total: i64 = 0;
        for (i, e) in self.iter() {
            if e < 0 {
                return Err(FactoredError::NegativeExponent {
                    index: i,
                    exponent: e,
                });
            }
            total += e;
        }
        Ok(BigInt::from(2).pow(total as u32))
    }

    /// Push every `(1 + x^i)^{e_i}` onto the cyclotomic basis.
    pub fn to_cyclo(&self) -> CycloFactored {
        let mut out = CycloFactored::default();
        for (i, e) in self.iter() {
            for d in binomial_support(i) {
                out.push(d, e);
            }
        }
        out
    }

    /// Maximal power of `1 + x^i` dividing the represented polynomial:
    /// the sum of exponents at odd multiples of `i`.
    pub fn max_dividing_power(&self, i: u64) -> i64 {
        assert!(i >= 1);
        let mut total = 0;
        let mut j = 1;
        let max = self.max_index().unwrap_or(0);
        while i * j <= max {
            total += self.exponent(i * j);
            j += 2;
        }
        total
    }
}

/// A product `prod_d Phi_d(x)^{e_d}` with signed exponents; canonical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycloFactored {
    exps: BTreeMap<u64, i64>,
}

impl CycloFactored {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut out = Self::default();
        for (d, e) in pairs {
            out.push(d, e);
        }
        out
    }

    pub fn push(&mut self, d: u64, e: i64) {
        assert!(d >= 1);
        if e == 0 {
            return;
        }
        let slot = self.exps.entry(d).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&d);
        }
    }

    pub fn exponent(&self, d: u64) -> i64 {
        self.exps.get(&d).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exps.iter().map(|(&d, &e)| (d, e))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &CycloFactored) -> CycloFactored {
        let mut out = self.clone();
        for (d, e) in other.iter() {
            out.push(d, e);
        }
        out
    }

    pub fn div(&self, other: &CycloFactored) -> CycloFactored {
        let mut out = self.clone();
        for (d, e) in other.iter() {
            out.push(d, -e);
        }
        out
    }

    /// Signed degree `sum e_d * phi(d)`.
    pub fn degree_signed(&self) -> i64 {
        self.iter().map(|(d, e)| e * euler_phi(d) as i64).sum()
    }

    /// Exact expansion; requires all exponents nonnegative.
    pub fn expand(&self) -> Result<DensePoly, FactoredError> {
        let mut acc = DensePoly::one();
        for (d, e) in self.iter() {
            if e < 0 {
                return Err(FactoredError::NegativeExponent {
                    index: d,
                    exponent: e,
                });
            }
            let phi = cyclotomic(d);
            for _ in 0..e {
                acc = &acc * &phi;
            }
        }
        Ok(acc)
    }
}

/// `gcd(1 + x^n, 1 + x^m)` as a binomial product: `1 + x^gcd(n, m)` exactly
/// when the 2-valuations agree, otherwise 1.
pub fn gcd_binomial(n: u64, m: u64) -> BinomialProduct {
    assert!(n >= 1 && m >= 1);
    if val2(n) == val2(m) {
        BinomialProduct::from_pairs([(num_integer::gcd(n, m), 1)])
    } else {
        BinomialProduct::one()
    }
}

/// Gcd of a nonempty collection of binomial products with nonnegative
/// exponents.
///
/// The maximal power of `1 + x^i` dividing the gcd is
/// `gamma_i = min over inputs of (sum over odd j of e_{i j})`; the output
/// exponents are then recovered descending from the largest index by
/// `c_i = gamma_i - sum over odd j > 1 of c_{i j}`. This runs in
/// `O(N log N)` map operations instead of expanding any polynomial.
pub fn fbp_gcd<'a, I>(inputs: I) -> Result<BinomialProduct, FactoredError>
where
    I: IntoIterator<Item = &'a BinomialProduct>,
{
    let inputs: Vec<&BinomialProduct> = inputs.into_iter().collect();
    if inputs.is_empty() {
        return Err(FactoredError::EmptyCollection);
    }
    for f in &inputs {
        if let Some((i, e)) = f.iter().find(|&(_, e)| e < 0) {
            return Err(FactoredError::NegativeExponent {
                index: i,
                exponent: e,
            });
        }
    }
    let max_index = inputs
        .iter()
        .filter_map(|f| f.max_index())
        .max()
        .unwrap_or(0);
    if max_index == 0 {
        return Ok(BinomialProduct::one());
    }
    let n = max_index as usize;
    let mut gamma = vec![i64::MAX; n + 1];
    for f in &inputs {
        for i in 1..=max_index {
            let g = f.max_dividing_power(i);
            gamma[i as usize] = gamma[i as usize].min(g);
        }
    }
    let mut c = vec![0i64; n + 1];
    for i in (1..=n).rev() {
        let mut higher = 0;
        let mut j = 3;
        while i * j <= n {
            higher += c[i * j];
            j += 2;
        }
        c[i] = gamma[i] - higher;
        if c[i] < 0 {
            return Err(FactoredError::NotBinomialExpressible);
        }
    }
    Ok(BinomialProduct::from_pairs(
        (1..=n).map(|i| (i as u64, c[i])),
    ))
}
