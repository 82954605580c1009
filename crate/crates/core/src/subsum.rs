//! The subsum-polynomial pipeline for an arbitrary partition family:
//! `sp`, `h_lambda`, `num*`, `den*`, `G`, `num`, `den`, the consecutive-n
//! quotients, degree formulas, the factored quotient `f(n,d,x)` and exact
//! evaluations at roots of unity.
//!
//! Closed-form fast paths exist for the unrestricted family; the gcd-oracle
//! path works for every family. `den` and `G` are kept in factored exponent
//! form throughout and only expanded on demand: their degrees grow
//! quadratically while the exponent maps stay linear.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{self, divisors, euler_phi, floor_lb_ratio, odd_part, s_value, ArithError};
use crate::cyclo::{fbp_gcd, BinomialProduct, CycloFactored, FactoredError};
use crate::partitions::{enumerate_partitions, PartFamily, Partition};
use crate::poly::{CycloResidue, DensePoly, PolyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsumError {
    #[error("part {part} is not allowed by the family")]
    PartNotAllowed { part: u64 },
    #[error("partition weighs {got}, expected {expected}")]
    WeightMismatch { expected: u64, got: u64 },
    #[error("closed-form exponents exist only for the unrestricted family")]
    ClosedFormRequiresAll,
    #[error("{0}")]
    Domain(&'static str),
    #[error("degree formulas disagree: {0:?}")]
    DegreeInconsistency(Vec<u64>),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Factored(#[from] FactoredError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// How to build `num*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumStarStrategy {
    /// Expand and sum `h_lambda` over the enumerated partitions.
    Naive,
    /// Dynamic program over allowed part sizes, largest to smallest, with
    /// state "remaining weight".
    PartDp,
}

/// How to build `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GStrategy {
    /// Gcd of all `h_lambda` in factored form.
    Oracle,
    /// Exponent closed form; unrestricted family only.
    ClosedForm,
}

/// The reduced pair for one `n` and family, with the gcd that links the
/// starred and unstarred objects: `expand(g) * num = num*` and
/// `den + g = den*` as exponent maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumDenTriple {
    pub n: u64,
    pub family: PartFamily,
    pub num: DensePoly,
    pub den: BinomialProduct,
    pub g: BinomialProduct,
}

/// Subsum polynomial of a partition: product of `1 + x^part`.
pub fn sp_poly(lambda: &Partition) -> DensePoly {
    let mut acc = DensePoly::one();
    for &p in lambda.parts() {
        acc.mul_binomial_assign(p as usize);
    }
    acc
}

/// Complementary product `prod over allowed i <= n of
/// (1 + x^i)^(floor(n/i) - mult(i))` for a partition of `n`.
pub fn h_product(
    n: u64,
    lambda: &Partition,
    family: &PartFamily,
) -> Result<BinomialProduct, SubsumError> {
    if lambda.weight() != n {
        return Err(SubsumError::WeightMismatch {
            expected: n,
            got: lambda.weight(),
        });
    }
    if let Some(&part) = lambda.parts().iter().find(|&&p| !family.allowed(p)) {
        return Err(SubsumError::PartNotAllowed { part });
    }
    let mut out = BinomialProduct::one();
    for i in family.parts_descending(n) {
        out.push(i, (n / i) as i64 - lambda.mult(i) as i64);
    }
    Ok(out)
}

/// `den*`: allowed `i <= n` mapped to `floor(n/i)`.
pub fn den_star(n: u64, family: &PartFamily) -> BinomialProduct {
    let mut out = BinomialProduct::one();
    if n == 0 {
        return out;
    }
    for i in family.parts_descending(n) {
        out.push(i, (n / i) as i64);
    }
    out
}

/// `num*`: the sum of `h_lambda` over all partitions of `n` in the family.
/// Both strategies return identical polynomials; `num*(0) = 1`.
pub fn num_star(n: u64, family: &PartFamily, strategy: NumStarStrategy) -> DensePoly {
    match strategy {
        NumStarStrategy::Naive => num_star_naive(n, family),
        NumStarStrategy::PartDp => num_star_part_dp(n, family),
    }
}

fn num_star_naive(n: u64, family: &PartFamily) -> DensePoly {
    let mut acc = DensePoly::zero();
    for lambda in enumerate_partitions(n, family) {
        let h = h_product(n, &lambda, family)
            .expect("enumerated partitions satisfy the family")
            .expand()
            .expect("h exponents are nonnegative");
        acc = &acc + &h;
    }
    acc
}

fn num_star_part_dp(n: u64, family: &PartFamily) -> DensePoly {
    if n == 0 {
        return DensePoly::one();
    }
    let size = n as usize + 1;
    let mut states: Vec<Option<DensePoly>> = vec![None; size];
    states[n as usize] = Some(DensePoly::one());
    for i in family.parts_descending(n) {
        let full = n / i;
        let mut next: Vec<Option<DensePoly>> = vec![None; size];
        for r in (0..=n).rev() {
            let Some(poly) = states[r as usize].take() else {
                continue;
            };
            // cur runs through poly * (1+x^i)^(full - m) as m grows: one
            // full power-up, then one exact binomial division per step.
            let mut cur = poly;
            for _ in 0..full {
                cur.mul_binomial_assign(i as usize);
            }
            for m in 0..=r / i {
                if m > 0 {
                    cur.div_binomial_exact_assign(i as usize)
                        .expect("power of 1+x^i is present by construction");
                }
                let slot = &mut next[(r - m * i) as usize];
                match slot {
                    Some(acc) => *acc = &*acc + &cur,
                    None => *slot = Some(cur.clone()),
                }
            }
        }
        states = next;
    }
    states[0].take().unwrap_or_else(DensePoly::zero)
}

/// Exponent of `1 + x^i` in the factored form of `G(n, x)` for the
/// unrestricted family: `floor(n/i) - floor(lb(n/i)) - 1`, and zero beyond
/// `floor(n/3)`.
pub fn c_exponent(n: u64, i: u64) -> Result<u64, SubsumError> {
    if i == 0 || i > n {
        return Err(SubsumError::Domain("c exponent needs 1 <= i <= n"));
    }
    let a = n / i;
    Ok(a - u64::from(a.ilog2()) - 1)
}

/// The factored row of `G(n, x)`: exponents for `i = 1 .. floor(n/3)`;
/// entries beyond that are zero.
pub fn c_row(n: u64) -> Vec<u64> {
    (1..=n / 3)
        .map(|i| c_exponent(n, i).expect("i <= n/3 <= n"))
        .collect()
}

/// `G(n, x)` as a binomial product.
pub fn big_g(
    n: u64,
    family: &PartFamily,
    strategy: GStrategy,
) -> Result<BinomialProduct, SubsumError> {
    if n == 0 {
        return Err(SubsumError::Domain("G(n) needs n >= 1"));
    }
    match strategy {
        GStrategy::ClosedForm => {
            if *family != PartFamily::All {
                return Err(SubsumError::ClosedFormRequiresAll);
            }
            let mut out = BinomialProduct::one();
            for i in 1..=n / 3 {
                out.push(i, c_exponent(n, i)? as i64);
            }
            Ok(out)
        }
        GStrategy::Oracle => {
            let hs: Vec<BinomialProduct> = enumerate_partitions(n, family)
                .map(|lambda| h_product(n, &lambda, family))
                .collect::<Result<_, _>>()?;
            Ok(fbp_gcd(hs.iter())?)
        }
    }
}

/// `den(n, x)` for the unrestricted family in factored form, by the
/// exponent closed form `floor(lb(n/i)) + 1`.
pub fn den_product_all(n: u64) -> BinomialProduct {
    let mut out = BinomialProduct::one();
    for i in 1..=n {
        out.push(i, i64::from(floor_lb_ratio(n, i)) + 1);
    }
    out
}

type TripleKey = (PartFamily, u64);

fn triple_cache() -> &'static RwLock<HashMap<TripleKey, Arc<NumDenTriple>>> {
    static CACHE: OnceLock<RwLock<HashMap<TripleKey, Arc<NumDenTriple>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The reduced `num / den / G` triple, memoized by `(family, n)`.
///
/// `num(0, x) = 1` for every family. The memo supports concurrent readers
/// with exclusive insertion; values are immutable once published.
pub fn num_den(n: u64, family: &PartFamily) -> Result<Arc<NumDenTriple>, SubsumError> {
    let key = (family.clone(), n);
    if let Some(hit) = triple_cache().read().expect("poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let triple = Arc::new(compute_triple(n, family)?);
    let mut table = triple_cache().write().expect("poisoned");
    Ok(table.entry(key).or_insert(triple).clone())
}

fn compute_triple(n: u64, family: &PartFamily) -> Result<NumDenTriple, SubsumError> {
    if n == 0 {
        return Ok(NumDenTriple {
            n,
            family: family.clone(),
            num: DensePoly::one(),
            den: BinomialProduct::one(),
            g: BinomialProduct::one(),
        });
    }
    let g = if *family == PartFamily::All {
        big_g(n, family, GStrategy::ClosedForm)?
    } else {
        big_g(n, family, GStrategy::Oracle)?
    };
    let star = num_star(n, family, NumStarStrategy::PartDp);
    // A division failure here would falsify G; propagate loudly.
    let num = star.exact_div(&g.expand()?)?;
    let den = den_star(n, family).div(&g);
    Ok(NumDenTriple {
        n,
        family: family.clone(),
        num,
        den,
        g,
    })
}

/// Populate the memo for a range of `n` in parallel.
pub fn warm_num_den(lo: u64, hi: u64, family: &PartFamily) -> Result<(), SubsumError> {
    (lo..=hi)
        .into_par_iter()
        .map(|n| num_den(n, family).map(|_| ()))
        .collect::<Result<Vec<()>, _>>()?;
    Ok(())
}

/// Consecutive quotient `G(n) / G(n-1)`: the divisors of `n` not divisible
/// by the odd part of `n`, each with exponent one. Equals 1 when `n` is a
/// power of two.
pub fn quotient_qg(n: u64) -> Result<BinomialProduct, SubsumError> {
    if n < 2 {
        return Err(SubsumError::Domain("qG(n) needs n >= 2"));
    }
    let o = odd_part(n)?;
    Ok(BinomialProduct::from_pairs(
        divisors(n)
            .into_iter()
            .filter(|d| d % o != 0)
            .map(|d| (d, 1)),
    ))
}

/// Consecutive quotient `den(n) / den(n-1)` in cyclotomic form:
/// `prod over d | n of Phi_2d`, of degree `2n - o(n)`.
pub fn quotient_qd(n: u64) -> Result<CycloFactored, SubsumError> {
    if n < 2 {
        return Err(SubsumError::Domain("qd(n) needs n >= 2"));
    }
    Ok(CycloFactored::from_pairs(
        divisors(n).into_iter().map(|d| (2 * d, 1)),
    ))
}

/// Degrees of `den(n, x)` and `num(n, x)` for the unrestricted family,
/// asserted equal across the three closed forms.
pub fn degree_stats(n: u64) -> Result<(u64, u64), SubsumError> {
    if n == 0 {
        return Err(SubsumError::Domain("degree stats need n >= 1"));
    }
    let by_s: u64 = (1..=n).map(|i| s_value(i).expect("i >= 1")).sum();
    let by_odd: u64 = n * (n + 1) - (1..=n).map(|i| odd_part(i).expect("i >= 1")).sum::<u64>();
    // sum_i i * floor(lb(n/i)) = sum over j >= 1 of T(floor(n / 2^j)).
    let mut weighted = 0u64;
    let mut q = n / 2;
    while q > 0 {
        weighted += q * (q + 1) / 2;
        q /= 2;
    }
    let by_lb = n * (n + 1) / 2 + weighted;
    if by_s != by_odd || by_s != by_lb {
        return Err(SubsumError::DegreeInconsistency(vec![by_s, by_odd, by_lb]));
    }
    Ok((by_s, by_s - n))
}

/// The factored quotient `f(n, d, x) = den(n) / ((1+x^d)^floor(n/d) den(r))`
/// with `r = n mod d`, on the cyclotomic basis (signed exponents).
pub fn f_factor(n: u64, d: u64) -> Result<CycloFactored, SubsumError> {
    if d == 0 || d > n {
        return Err(SubsumError::Domain("f(n, d) needs 1 <= d <= n"));
    }
    let r = n % d;
    let mid = BinomialProduct::from_pairs([(d, (n / d) as i64)]);
    Ok(den_product_all(n)
        .to_cyclo()
        .div(&mid.to_cyclo())
        .div(&den_product_all(r).to_cyclo()))
}

/// `num(n, x)` reduced modulo `Phi_m` (unrestricted family).
pub fn num_at_root(n: u64, m: u64) -> Result<CycloResidue, SubsumError> {
    let triple = num_den(n, &PartFamily::All)?;
    Ok(triple.num.reduce_mod_cyclotomic(m))
}

/// Cross-multiplied root identity in `Z[x] / Phi_2d`:
/// `num(n, z) * prod_{j=r+1}^{n} (1 - z^{o(j)})
///  = (2d)^{floor(n/d)} floor(n/d)! * num(r, z)` with `z` the residue of
/// `x` and `r = n mod d`. Returns whether the two residues agree exactly.
pub fn numr_identity_check(n: u64, d: u64) -> Result<bool, SubsumError> {
    if d == 0 || d > n {
        return Err(SubsumError::Domain("identity needs 1 <= d <= n"));
    }
    let m = 2 * d;
    let r = n % d;
    let q = n / d;

    let mut lhs = num_at_root(n, m)?;
    let one = CycloResidue::from_int(m, BigInt::one());
    for j in r + 1..=n {
        let term = one.sub(&CycloResidue::monomial_power(m, odd_part(j)?))?;
        lhs = lhs.mul(&term)?;
    }

    let scalar = arith::big_pow(2 * d, q) * arith::factorial(q);
    let rhs = num_at_root(r, m)?.scale(&scalar);
    Ok(lhs == rhs)
}

/// Fast-path nonvanishing test for `Phi_2d` against `num(n, x)`: reduce to
/// the remainder `r = n mod d` (the root identity transfers nonvanishing),
/// shortcut `r <= 5` and `deg num(r) < phi(2d)`, and only reduce `num(r)`
/// modulo `Phi_2d` in the remaining cases. Returns true iff `Phi_2d` does
/// NOT divide `num(n, x)`.
pub fn phi2d_nondivides_num(n: u64, d: u64) -> Result<bool, SubsumError> {
    if d == 0 || d > n {
        return Err(SubsumError::Domain("needs 1 <= d <= n"));
    }
    let r = n % d;
    if r <= 5 {
        return Ok(true);
    }
    let (_, deg_num_r) = degree_stats(r)?;
    if deg_num_r < euler_phi(2 * d) {
        return Ok(true);
    }
    Ok(!num_at_root(r, 2 * d)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::shape_of;

    fn all() -> PartFamily {
        PartFamily::All
    }

    fn part(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn sp_poly_examples() {
        assert_eq!(sp_poly(&part(&[2, 1])), DensePoly::from_i64(&[1, 1, 1, 1]));
        assert_eq!(sp_poly(&part(&[1])), DensePoly::from_i64(&[1, 1]));
        assert_eq!(
            sp_poly(&part(&[3, 3])),
            DensePoly::from_i64(&[1, 0, 0, 2, 0, 0, 1])
        );
        assert_eq!(sp_poly(&Partition::empty()), DensePoly::one());
    }

    #[test]
    fn h_product_examples() {
        assert_eq!(
            h_product(3, &part(&[2, 1]), &all()).unwrap(),
            BinomialProduct::from_pairs([(1, 2), (3, 1)])
        );
        assert_eq!(
            h_product(3, &part(&[3]), &all()).unwrap(),
            BinomialProduct::from_pairs([(1, 3), (2, 1)])
        );
        assert_eq!(
            h_product(4, &part(&[1, 1, 1, 1]), &PartFamily::Binary).unwrap(),
            BinomialProduct::from_pairs([(2, 2), (4, 1)])
        );
    }

    #[test]
    fn h_product_errors() {
        assert_eq!(
            h_product(3, &part(&[2, 1]), &PartFamily::Odd),
            Err(SubsumError::PartNotAllowed { part: 2 })
        );
        assert_eq!(
            h_product(4, &part(&[2, 1]), &all()),
            Err(SubsumError::WeightMismatch {
                expected: 4,
                got: 3
            })
        );
    }

    #[test]
    fn den_star_examples() {
        assert_eq!(
            den_star(3, &all()),
            BinomialProduct::from_pairs([(1, 3), (2, 1), (3, 1)])
        );
        assert_eq!(
            den_star(4, &PartFamily::Binary),
            BinomialProduct::from_pairs([(1, 4), (2, 2), (4, 1)])
        );
        assert_eq!(den_star(1, &all()), BinomialProduct::from_pairs([(1, 1)]));
    }

    #[test]
    fn den_star_degree_is_cumulative_sigma1() {
        // deg den*(3) = sigma_1(1) + sigma_1(2) + sigma_1(3) = 8, checked
        // against the brute-force expansion.
        let expanded = den_star(3, &all()).expand().unwrap();
        assert_eq!(expanded.degree(), Some(8));
        let sigma_sum: u64 = (1..=3u64)
            .map(|i| crate::arith::divisor_stats(i).unwrap().1)
            .sum();
        assert_eq!(sigma_sum, 8);
    }

    #[test]
    fn num_star_examples() {
        assert_eq!(
            num_star(3, &all(), NumStarStrategy::Naive),
            DensePoly::from_i64(&[3, 5, 6, 6, 5, 3])
        );
        assert_eq!(
            num_star(2, &all(), NumStarStrategy::PartDp),
            DensePoly::from_i64(&[2, 2, 2])
        );
        assert_eq!(
            num_star(1, &all(), NumStarStrategy::Naive),
            DensePoly::one()
        );
        assert_eq!(
            num_star(0, &all(), NumStarStrategy::PartDp),
            DensePoly::one()
        );
    }

    #[test]
    fn num_star_strategies_agree_small() {
        for fam in [
            PartFamily::All,
            PartFamily::Binary,
            PartFamily::Odd,
            PartFamily::Ternary,
        ] {
            for n in 0..=12u64 {
                assert_eq!(
                    num_star(n, &fam, NumStarStrategy::Naive),
                    num_star(n, &fam, NumStarStrategy::PartDp),
                    "family {fam:?}, n {n}"
                );
            }
        }
    }

    #[test]
    fn big_g_examples() {
        assert_eq!(
            big_g(3, &all(), GStrategy::ClosedForm).unwrap(),
            BinomialProduct::from_pairs([(1, 1)])
        );
        assert_eq!(
            big_g(6, &all(), GStrategy::Oracle).unwrap(),
            BinomialProduct::from_pairs([(1, 3), (2, 1)])
        );
        assert!(big_g(4, &PartFamily::Binary, GStrategy::Oracle)
            .unwrap()
            .is_one());
        assert_eq!(
            big_g(4, &PartFamily::Binary, GStrategy::ClosedForm),
            Err(SubsumError::ClosedFormRequiresAll)
        );
    }

    #[test]
    fn c_exponent_examples() {
        assert_eq!(c_exponent(12, 1).unwrap(), 8);
        assert_eq!(c_exponent(6, 2).unwrap(), 1);
        for n in 1..=60u64 {
            for i in n / 3 + 1..=n {
                assert_eq!(c_exponent(n, i).unwrap(), 0);
            }
        }
        assert!(c_exponent(5, 6).is_err());
    }

    #[test]
    fn num_den_examples() {
        let t3 = num_den(3, &all()).unwrap();
        assert_eq!(t3.num, DensePoly::from_i64(&[3, 2, 4, 2, 3]));
        let t4 = num_den(4, &all()).unwrap();
        assert_eq!(
            t4.num,
            DensePoly::from_i64(&[5, 8, 15, 14, 24, 20, 24, 14, 15, 8, 5])
        );
        let t3o = num_den(3, &PartFamily::Odd).unwrap();
        assert_eq!(t3o.num, DensePoly::from_i64(&[2, 1, 2]));
    }

    #[test]
    fn num_den_triple_invariants_small() {
        for fam in [PartFamily::All, PartFamily::Binary, PartFamily::Odd] {
            for n in 0..=10u64 {
                let t = num_den(n, &fam).unwrap();
                let star = num_star(n, &fam, NumStarStrategy::Naive);
                assert_eq!(&t.g.expand().unwrap() * &t.num, star);
                assert_eq!(t.den.mul(&t.g), den_star(n, &fam));
                if fam == PartFamily::All && n >= 1 {
                    let deg_den = t.den.degree().unwrap();
                    let deg_num = t.num.degree().unwrap() as u64;
                    assert_eq!(deg_den - deg_num, n);
                }
            }
        }
    }

    #[test]
    fn quotient_qg_examples() {
        assert!(quotient_qg(8).unwrap().is_one());
        assert_eq!(
            quotient_qg(6).unwrap(),
            BinomialProduct::from_pairs([(1, 1), (2, 1)])
        );
        assert_eq!(
            quotient_qg(12).unwrap(),
            BinomialProduct::from_pairs([(1, 1), (2, 1), (4, 1)])
        );
        assert!(quotient_qg(1).is_err());
    }

    #[test]
    fn quotient_qd_examples() {
        let q6 = quotient_qd(6).unwrap();
        assert_eq!(
            q6,
            CycloFactored::from_pairs([(2, 1), (4, 1), (6, 1), (12, 1)])
        );
        assert_eq!(q6.degree_signed(), 9);
        let q2 = quotient_qd(2).unwrap();
        assert_eq!(q2, CycloFactored::from_pairs([(2, 1), (4, 1)]));
        assert_eq!(q2.degree_signed(), 3);
        for n in 2..=120u64 {
            assert_eq!(
                quotient_qd(n).unwrap().degree_signed() as u64,
                s_value(n).unwrap()
            );
        }
    }

    #[test]
    fn recursion_identities_small() {
        for n in 2..=40u64 {
            let g_n = big_g(n, &all(), GStrategy::ClosedForm).unwrap().to_cyclo();
            let g_prev = big_g(n - 1, &all(), GStrategy::ClosedForm)
                .map(|g| g.to_cyclo())
                .unwrap_or_default();
            assert_eq!(
                g_n,
                g_prev.mul(&quotient_qg(n).unwrap().to_cyclo()),
                "G recursion at {n}"
            );
            let d_n = den_product_all(n).to_cyclo();
            let d_prev = den_product_all(n - 1).to_cyclo();
            assert_eq!(
                d_n,
                d_prev.mul(&quotient_qd(n).unwrap()),
                "den recursion at {n}"
            );
        }
    }

    #[test]
    fn quotients_match_expanded_ratios() {
        for n in 2..=12u64 {
            let dq = den_product_all(n)
                .expand()
                .unwrap()
                .exact_div(&den_product_all(n - 1).expand().unwrap())
                .unwrap();
            assert_eq!(dq, quotient_qd(n).unwrap().expand().unwrap());
        }
    }

    #[test]
    fn degree_stats_examples() {
        assert_eq!(degree_stats(3).unwrap(), (7, 4));
        // The closed forms give (19, 14); the 15-entry coefficient row for
        // n = 5 has degree 14, consistent with deg den - deg num = n.
        assert_eq!(degree_stats(5).unwrap(), (19, 14));
        assert_eq!(degree_stats(1).unwrap(), (1, 0));
    }

    #[test]
    fn degree_stats_match_actual_polys() {
        for n in 1..=12u64 {
            let (deg_den, deg_num) = degree_stats(n).unwrap();
            let t = num_den(n, &all()).unwrap();
            assert_eq!(t.num.degree().unwrap() as u64, deg_num);
            assert_eq!(t.den.degree().unwrap(), deg_den);
            assert_eq!(t.den, den_product_all(n), "den exponent closed form at {n}");
        }
    }

    #[test]
    fn max_dividing_power_of_den_is_floor_ratio() {
        for n in 1..=30u64 {
            let den = den_product_all(n);
            for i in 1..=n {
                assert_eq!(den.max_dividing_power(i), (n / i) as i64);
            }
        }
    }

    #[test]
    fn den_star_power_identity() {
        // The max power of (1+x^i) in den* exceeds that of G by floor(n/i).
        for n in 1..=20u64 {
            let ds = den_star(n, &all());
            let g = big_g(n, &all(), GStrategy::ClosedForm).unwrap();
            for i in 1..=n {
                assert_eq!(
                    ds.max_dividing_power(i),
                    g.max_dividing_power(i) + (n / i) as i64
                );
            }
        }
    }

    #[test]
    fn f_factor_examples() {
        assert!(f_factor(1, 1).unwrap().is_one());
        assert_eq!(
            f_factor(3, 2).unwrap(),
            CycloFactored::from_pairs([(2, 2), (6, 1)])
        );
        for n in 1..=20u64 {
            for d in 1..=n {
                assert_eq!(f_factor(n, d).unwrap().exponent(2 * d), 0, "n={n}, d={d}");
            }
        }
        assert!(f_factor(3, 4).is_err());
    }

    #[test]
    fn num_at_root_examples() {
        let r = num_at_root(3, 4).unwrap();
        assert_eq!(r.coeffs(), &[BigInt::from(2), BigInt::from(0)]);
        let r = num_at_root(3, 2).unwrap();
        assert_eq!(r.coeffs(), &[BigInt::from(6)]);
        let r = num_at_root(3, 6).unwrap();
        assert_eq!(r.coeffs(), &[BigInt::from(-3), BigInt::from(3)]);
    }

    #[test]
    fn numr_identity_examples() {
        assert!(numr_identity_check(3, 2).unwrap());
        assert!(numr_identity_check(4, 2).unwrap());
        // Degenerate single-step case: floor(n/d) = 1.
        assert!(numr_identity_check(5, 3).unwrap());
        assert!(numr_identity_check(3, 4).is_err());
    }

    #[test]
    fn fast_nonvanishing_agrees_with_direct() {
        for n in 1..=15u64 {
            for d in 1..=n {
                let fast = phi2d_nondivides_num(n, d).unwrap();
                let direct = !num_at_root(n, 2 * d).unwrap().is_zero();
                assert_eq!(fast, direct, "n={n}, d={d}");
            }
        }
    }

    #[test]
    fn shapes_of_pipeline_objects() {
        for n in 1..=12u64 {
            let t = num_den(n, &all()).unwrap();
            assert!(t.num.shape_report().palindromic, "num palindromic at {n}");
            let den_shape = t.den.expand().unwrap().shape_report();
            assert!(den_shape.palindromic && den_shape.unimodal, "den at {n}");
            let g_shape = t.g.expand().unwrap().shape_report();
            assert!(g_shape.palindromic && g_shape.unimodal, "G at {n}");
        }
    }

    #[test]
    fn num0_even_part_subsequence() {
        let t = num_den(4, &all()).unwrap();
        let even: Vec<_> = t.num.coeffs().iter().step_by(2).cloned().collect();
        assert!(shape_of(&even).unimodal);
    }
}
