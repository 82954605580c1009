//! Probable irreducibility over the integers by degree-set analysis.
//!
//! For several primes `q` not dividing the leading coefficient, reduce the
//! primitive part modulo `q`, verify squarefreeness, and run
//! distinct-degree factorization. Each prime yields the multiset of factor
//! degrees, hence the set of degrees realizable by factor subsets; a
//! rational factorization over the integers must realize its degree at
//! every prime, so if the intersection of those sets is `{0, deg}` the
//! polynomial is irreducible. Only degrees matter, so no equal-degree
//! splitting is needed. The `Reducible` verdict is returned only with a
//! verified witness: a rational root or a proper cyclotomic divisor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclo::cyclotomic;
use crate::poly::DensePoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IrreducibilityError {
    #[error("zero polynomial has no factorization type")]
    ZeroPolynomial,
    #[error("degree must be at least 1")]
    ConstantPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    /// A verified proper factor of the given degree exists.
    Reducible {
        witness_degree: usize,
    },
    Inconclusive,
}

/// Verdict plus the content that was divided out first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbableIrreducibility {
    pub content: BigInt,
    pub verdict: Verdict,
}

/// Number of primes consulted before giving up as inconclusive.
const PRIME_COUNT: usize = 8;
const PRIME_CAP: usize = 16;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---- GF(q) polynomial arithmetic on u64 coefficients, ascending order ----

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gf_reduce_bigint(p: &DensePoly, q: u64) -> Vec<u64> {
    let qi = BigInt::from(q);
    let mut out: Vec<u64> = p
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.mod_floor(&qi);
            r.to_u64().expect("reduced residue fits u64")
        })
        .collect();
    trim(&mut out);
    out
}

fn gf_mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ac) in a.iter().enumerate() {
        if ac == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            let prod = (u128::from(ac) * u128::from(bc) + u128::from(out[i + j])) % u128::from(q);
            out[i + j] = prod as u64;
        }
    }
    trim(&mut out);
    out
}

fn gf_rem(a: &[u64], f: &[u64], q: u64) -> Vec<u64> {
    let df = f.len() - 1;
    let mut rem = a.to_vec();
    let lead_inv = gf_inv(f[df], q);
    while rem.len() > df {
        let k = rem.len() - 1;
        let c = (u128::from(rem[k]) * u128::from(lead_inv) % u128::from(q)) as u64;
        if c != 0 {
            for (j, &fc) in f.iter().enumerate().take(df) {
                let sub = (u128::from(c) * u128::from(fc)) % u128::from(q);
                let idx = k - df + j;
                rem[idx] = ((u128::from(rem[idx]) + u128::from(q) - sub) % u128::from(q)) as u64;
            }
        }
        rem.pop();
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    rem
}

fn gf_inv(a: u64, q: u64) -> u64 {
    // Fermat: a^(q-2) mod q.
    gf_pow_scalar(a, q - 2, q)
}

fn gf_pow_scalar(mut base: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = (u128::from(acc) * u128::from(base) % u128::from(q)) as u64;
        }
        base = (u128::from(base) * u128::from(base) % u128::from(q)) as u64;
        e >>= 1;
    }
    acc
}

fn gf_monic(a: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() {
        return Vec::new();
    }
    let inv = gf_inv(*a.last().unwrap(), q);
    a.iter()
        .map(|&c| (u128::from(c) * u128::from(inv) % u128::from(q)) as u64)
        .collect()
}

fn gf_gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = gf_rem(&x, &gf_monic(&y, q), q);
        x = y;
        y = r;
    }
    gf_monic(&x, q)
}

fn gf_derivative(a: &[u64], q: u64) -> Vec<u64> {
    if a.len() <= 1 {
        return Vec::new();
    }
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (u128::from(c) * (i as u128 % u128::from(q)) % u128::from(q)) as u64)
        .collect();
    trim(&mut out);
    out
}

fn gf_powmod(base: &[u64], mut e: u64, f: &[u64], q: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = gf_rem(base, f, q);
    while e > 0 {
        if e & 1 == 1 {
            acc = gf_rem(&gf_mul(&acc, &b, q), f, q);
        }
        b = gf_rem(&gf_mul(&b, &b, q), f, q);
        e >>= 1;
    }
    acc
}

fn gf_exact_div(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    // Long division known exact: synthesize via repeated leading elimination.
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; a.len() - db];
    let lead_inv = gf_inv(b[db], q);
    for k in (db..a.len()).rev() {
        let c = (u128::from(rem[k]) * u128::from(lead_inv) % u128::from(q)) as u64;
        quot[k - db] = c;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let sub = (u128::from(c) * u128::from(bc)) % u128::from(q);
                let idx = k - db + j;
                rem[idx] = ((u128::from(rem[idx]) + u128::from(q) - sub) % u128::from(q)) as u64;
            }
        }
    }
    trim(&mut quot);
    quot
}

/// Distinct-degree factorization of a squarefree monic `f` over GF(q):
/// returns `(degree, count)` pairs with multiplicity by count.
fn gf_ddf(f: &[u64], q: u64) -> Vec<(usize, usize)> {
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0usize;
    while f.len() > 2 * (d + 1) {
        d += 1;
        h = gf_powmod(&h, q, &f, q);
        // gcd(h - x, f) collects all irreducible factors of degree d.
        let mut hx = h.clone();
        while hx.len() < 2 {
            hx.push(0);
        }
        hx[1] = (hx[1] + q - 1) % q;
        trim(&mut hx);
        let g = gf_gcd(&hx, &f, q);
        if g.len() > 1 {
            out.push((d, (g.len() - 1) / d));
            f = gf_exact_div(&f, &g, q);
            h = gf_rem(&h, &f, q);
        }
    }
    if f.len() > 1 {
        out.push((f.len() - 1, 1));
    }
    out
}

/// Degrees realizable as subset sums of the factor-degree multiset.
fn subset_degrees(deg: usize, factors: &[(usize, usize)]) -> Vec<bool> {
    let mut reach = vec![false; deg + 1];
    reach[0] = true;
    for &(d, count) in factors {
        for _ in 0..count {
            for k in (d..=deg).rev() {
                if reach[k - d] {
                    reach[k] = true;
                }
            }
        }
    }
    reach
}

fn rational_root_witness(p: &DensePoly) -> bool {
    // Bounded rational-root test: candidates r/s with r | constant term and
    // s | leading coefficient, enumerated only when both fit in u64.
    let c0 = p.coeff(0);
    if c0.is_zero() {
        return true; // x divides
    }
    let lead = p.leading().expect("nonzero").clone();
    let (Some(c0u), Some(leadu)) = (c0.abs().to_u64(), lead.abs().to_u64()) else {
        return false;
    };
    let rs = crate::arith::divisors(c0u);
    let ss = crate::arith::divisors(leadu);
    if rs.len() * ss.len() > 4096 {
        return false;
    }
    for &r in &rs {
        for &s in &ss {
            for sign in [1i64, -1] {
                // Evaluate sum c_j r^j s^(deg - j) exactly.
                let rr = BigInt::from(sign) * BigInt::from(r);
                let sb = BigInt::from(s);
                let deg = p.degree().unwrap();
                let mut acc = BigInt::zero();
                let mut rpow = BigInt::one();
                let mut spow = sb.pow(deg as u32);
                for j in 0..=deg {
                    acc += p.coeff(j) * &rpow * &spow;
                    rpow *= &rr;
                    if j < deg {
                        spow /= &sb;
                    }
                }
                if acc.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Probable irreducibility of `p` over the integers.
///
/// The content is divided out first and reported. `Reducible` is returned
/// only with a verified factor (rational root, or a proper cyclotomic
/// divisor `Phi_e` with `e <= 2 deg p`); `Irreducible` is returned when the
/// degree sets across primes intersect to `{0, deg}`; otherwise
/// `Inconclusive`, after consulting more primes up to a cap.
pub fn probable_irreducibility(
    p: &DensePoly,
) -> Result<ProbableIrreducibility, IrreducibilityError> {
    if p.is_zero() {
        return Err(IrreducibilityError::ZeroPolynomial);
    }
    let (content, prim) = p.primitive_part();
    let deg = prim.degree().expect("nonzero");
    if deg == 0 {
        return Err(IrreducibilityError::ConstantPolynomial);
    }
    if deg == 1 {
        return Ok(ProbableIrreducibility {
            content,
            verdict: Verdict::Irreducible,
        });
    }

    if rational_root_witness(&prim) {
        return Ok(ProbableIrreducibility {
            content,
            verdict: Verdict::Reducible { witness_degree: 1 },
        });
    }
    for e in 1..=2 * deg as u64 {
        let phi = cyclotomic(e);
        let phi_deg = phi.degree().unwrap();
        if phi_deg >= deg {
            continue;
        }
        if prim.divrem_monic(&phi).1.is_zero() {
            return Ok(ProbableIrreducibility {
                content,
                verdict: Verdict::Reducible {
                    witness_degree: phi_deg,
                },
            });
        }
    }

    let lead = prim.leading().expect("nonzero").clone();
    let mut intersection = vec![true; deg + 1];
    let mut used = 0usize;
    let mut candidate = deg as u64 + 1;
    let mut tried = 0usize;
    while used < PRIME_COUNT && tried < PRIME_CAP {
        while !is_prime(candidate) {
            candidate += 1;
        }
        let q = candidate;
        candidate += 1;
        if (&lead % BigInt::from(q)).is_zero() {
            continue;
        }
        tried += 1;
        let f = gf_monic(&gf_reduce_bigint(&prim, q), q);
        // Skip primes where the reduction is not squarefree.
        let der = gf_derivative(&f, q);
        if der.is_empty() || gf_gcd(&f, &der, q).len() > 1 {
            continue;
        }
        used += 1;
        let reach = subset_degrees(deg, &gf_ddf(&f, q));
        for (k, slot) in intersection.iter_mut().enumerate() {
            *slot = *slot && reach[k];
        }
        let proper = (1..deg).any(|k| intersection[k]);
        if !proper {
            return Ok(ProbableIrreducibility {
                content,
                verdict: Verdict::Irreducible,
            });
        }
    }
    Ok(ProbableIrreducibility {
        content,
        verdict: Verdict::Inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::PartFamily;
    use crate::subsum::num_den;

    #[test]
    fn gf_basics() {
        // (x^2 + 1)(x + 1) mod 3.
        let prod = gf_mul(&[1, 0, 1], &[1, 1], 3);
        assert_eq!(prod, vec![1, 1, 1, 1]);
        let rem = gf_rem(&[1, 1, 1, 1], &[1, 1], 3);
        assert!(rem.is_empty());
        assert_eq!(gf_inv(2, 7), 4);
    }

    #[test]
    fn ddf_splits_degrees() {
        // x^2 + x + 1 is irreducible mod 5, splits into linears mod 7.
        assert_eq!(gf_ddf(&[1, 1, 1], 5), vec![(2, 1)]);
        assert_eq!(gf_ddf(&[1, 1, 1], 7), vec![(1, 2)]);
    }

    #[test]
    fn num2_primitive_part_is_irreducible() {
        // num(2, x) = 2 (1 + x + x^2): content 2, primitive part irreducible.
        let p = DensePoly::from_i64(&[2, 2, 2]);
        let result = probable_irreducibility(&p).unwrap();
        assert_eq!(result.content, BigInt::from(2));
        assert_eq!(result.verdict, Verdict::Irreducible);
    }

    #[test]
    fn square_of_binomial_is_reducible() {
        let p = DensePoly::from_i64(&[1, 2, 1]);
        let result = probable_irreducibility(&p).unwrap();
        assert_eq!(result.verdict, Verdict::Reducible { witness_degree: 1 });
    }

    #[test]
    fn num5_is_irreducible() {
        let t = num_den(5, &PartFamily::All).unwrap();
        let result = probable_irreducibility(&t.num).unwrap();
        assert_eq!(result.verdict, Verdict::Irreducible);
    }

    #[test]
    fn zero_and_constant_rejected() {
        assert_eq!(
            probable_irreducibility(&DensePoly::zero()),
            Err(IrreducibilityError::ZeroPolynomial)
        );
        assert_eq!(
            probable_irreducibility(&DensePoly::from_i64(&[7])),
            Err(IrreducibilityError::ConstantPolynomial)
        );
    }

    #[test]
    fn never_irreducible_for_known_products() {
        // Soundness: products of small irreducibles must not be declared
        // irreducible.
        let factors = [
            DensePoly::from_i64(&[1, 1, 1]),
            DensePoly::from_i64(&[1, 0, 1, 1]),
            DensePoly::from_i64(&[3, 1, 4, 1, 5, 1]),
            DensePoly::from_i64(&[2, 3]),
            DensePoly::from_i64(&[-1, 2, 0, 7]),
        ];
        for a in &factors {
            for b in &factors {
                let result = probable_irreducibility(&(a * b)).unwrap();
                assert_ne!(result.verdict, Verdict::Irreducible, "{a:?} * {b:?}");
            }
        }
    }

    #[test]
    fn cyclotomic_factor_detected() {
        // (1 + x^4) * (x^2 + x + 3) has the proper factor Phi_8.
        let p = &DensePoly::binomial(4) * &DensePoly::from_i64(&[3, 1, 1]);
        let result = probable_irreducibility(&p).unwrap();
        assert!(matches!(result.verdict, Verdict::Reducible { .. }));
    }
}
