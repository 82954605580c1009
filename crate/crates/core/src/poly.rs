//! Dense univariate polynomials over arbitrary-precision integers, plus
//! coefficient-shape predicates and exact residues in cyclotomic quotient
//! rings.
//!
//! `DensePoly` stores coefficients in ascending degree order. The
//! representation is canonical: empty vector for the zero polynomial,
//! otherwise the last coefficient is nonzero. A dense representation is the
//! right default here: the polynomials this crate produces have degree
//! growing quadratically with mostly nonzero coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclo;

/// Products stay schoolbook below this length; Karatsuba above. Tuning only,
/// correctness never depends on it.
const KARATSUBA_THRESHOLD: usize = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    /// Exact division failed; carries the offending remainder.
    #[error("not divisible: remainder of degree {:?}", remainder.degree())]
    NotDivisible { remainder: DensePoly },
    #[error("cyclotomic residue moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    /// `|z|^2` is a rational integer only for moduli 1, 2, 3, 4, 6.
    #[error("absolute square not defined for modulus index {0}")]
    UnsupportedModulus(u64),
}

/// Shape flags of a coefficient vector. All three predicates are evaluated
/// on the raw vector, internal zeros included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeReport {
    pub palindromic: bool,
    pub unimodal: bool,
    pub log_concave: bool,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePoly{:?}", self.coeffs)
    }
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = DensePoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        DensePoly { coeffs }
    }

    /// `1 + x^i` for `i >= 1`.
    pub fn binomial(i: usize) -> Self {
        assert!(i >= 1);
        let mut coeffs = vec![BigInt::zero(); i + 1];
        coeffs[0] = BigInt::one();
        coeffs[i] = BigInt::one();
        DensePoly { coeffs }
    }

    /// `x^n - 1` for `n >= 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        DensePoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = DensePoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// In-place multiplication by `1 + x^i`.
    pub fn mul_binomial_assign(&mut self, i: usize) {
        assert!(i >= 1);
        if self.is_zero() {
            return;
        }
        let old_len = self.coeffs.len();
        self.coeffs.resize(old_len + i, BigInt::zero());
        for j in (i..old_len + i).rev() {
            // new c_j = c_j + c_{j-i}; the top i slots start as zero.
            let lo = self.coeffs[j - i].clone();
            self.coeffs[j] += lo;
        }
    }

    /// In-place exact division by `1 + x^i`; error (self untouched) if the
    /// factor is absent.
    pub fn div_binomial_exact_assign(&mut self, i: usize) -> Result<(), PolyError> {
        assert!(i >= 1);
        if self.is_zero() {
            return Ok(());
        }
        let len = self.coeffs.len();
        if len <= i {
            return Err(PolyError::NotDivisible {
                remainder: self.clone(),
            });
        }
        let mut work = self.coeffs.clone();
        for j in i..len {
            let lo = work[j - i].clone();
            work[j] -= lo;
        }
        // Quotient occupies the first len - i slots; the rest must vanish.
        if work[len - i..].iter().any(|c| !c.is_zero()) {
            let remainder = DensePoly::from_coeffs(work[len - i..].to_vec());
            return Err(PolyError::NotDivisible { remainder });
        }
        work.truncate(len - i);
        self.coeffs = work;
        self.normalize();
        Ok(())
    }

    /// `p(x^k)`: coefficient `j` moves to index `j * k`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[j * k] = c.clone();
            }
        }
        DensePoly { coeffs }
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, a: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc *= a;
            acc += c;
        }
        acc
    }

    pub fn eval_i64(&self, a: i64) -> BigInt {
        self.eval(&BigInt::from(a))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c * BigInt::from(j))
            .collect();
        DensePoly::from_coeffs(coeffs)
    }

    /// Sum of absolute values of coefficients divided by their gcd: the
    /// content of the polynomial (gcd of coefficients, positive).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::Integer::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content; zero polynomial stays zero.
    pub fn primitive_part(&self) -> (BigInt, DensePoly) {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return (BigInt::one(), self.clone());
        }
        let coeffs = self.coeffs.iter().map(|c| c / &g).collect();
        (g, DensePoly { coeffs })
    }

    /// Quotient and remainder for a monic divisor.
    pub fn divrem_monic(&self, b: &DensePoly) -> (DensePoly, DensePoly) {
        assert!(
            b.leading().is_some_and(|c| c.is_one()),
            "divisor not monic"
        );
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return (DensePoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - db];
        for j in (db..rem.len()).rev() {
            if rem[j].is_zero() {
                continue;
            }
            let q = std::mem::replace(&mut rem[j], BigInt::zero());
            for (k, bc) in b.coeffs.iter().enumerate().take(db) {
                if !bc.is_zero() {
                    let sub = bc * &q;
                    rem[j - db + k] -= sub;
                }
            }
            quot[j - db] = q;
        }
        rem.truncate(db);
        (DensePoly::from_coeffs(quot), DensePoly::from_coeffs(rem))
    }

    /// Exact division: returns `q` with `self = q * b`, or the remainder
    /// obstruction. Works over the integers; every leading-coefficient step
    /// must divide exactly.
    pub fn exact_div(&self, b: &DensePoly) -> Result<DensePoly, PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(DensePoly::zero());
        }
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() - 1 < db {
            return Err(PolyError::NotDivisible {
                remainder: self.clone(),
            });
        }
        let lead = b.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - db];
        for j in (db..rem.len()).rev() {
            if rem[j].is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&rem[j], lead);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible {
                    remainder: DensePoly::from_coeffs(rem),
                });
            }
            rem[j] = BigInt::zero();
            for (k, bc) in b.coeffs.iter().enumerate().take(db) {
                if !bc.is_zero() {
                    let sub = bc * &q;
                    rem[j - db + k] -= sub;
                }
            }
            quot[j - db] = q;
        }
        let remainder = DensePoly::from_coeffs(rem);
        if remainder.is_zero() {
            Ok(DensePoly::from_coeffs(quot))
        } else {
            Err(PolyError::NotDivisible { remainder })
        }
    }

    pub fn pow(&self, e: u32) -> DensePoly {
        let mut acc = DensePoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Shape flags of the coefficient vector.
    pub fn shape_report(&self) -> ShapeReport {
        shape_of(&self.coeffs)
    }

    /// Canonical remainder modulo the `m`-th cyclotomic polynomial.
    pub fn reduce_mod_cyclotomic(&self, m: u64) -> CycloResidue {
        CycloResidue::reduce(self, m)
    }
}

/// Shape flags of an arbitrary coefficient slice.
pub fn shape_of(coeffs: &[BigInt]) -> ShapeReport {
    let n = coeffs.len();
    let palindromic = (0..n / 2).all(|k| coeffs[k] == coeffs[n - 1 - k]);
    let unimodal = {
        let mut k = 0;
        while k + 1 < n && coeffs[k] <= coeffs[k + 1] {
            k += 1;
        }
        while k + 1 < n && coeffs[k] >= coeffs[k + 1] {
            k += 1;
        }
        k + 1 >= n.max(1)
    };
    let log_concave = (1..n.saturating_sub(1))
        .all(|k| &coeffs[k] * &coeffs[k] >= &coeffs[k - 1] * &coeffs[k + 1]);
    ShapeReport {
        palindromic,
        unimodal,
        log_concave,
    }
}

fn add_vecs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut c = a.get(k).cloned().unwrap_or_else(BigInt::zero);
        if let Some(bc) = b.get(k) {
            c += bc;
        }
        out.push(c);
    }
    out
}

fn school_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ac) in a.iter().enumerate() {
        if ac.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                out[i + j] += ac * bc;
            }
        }
    }
    out
}

fn karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
        return school_mul(a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    let p0 = karatsuba(a0, b0);
    let p2 = if a1.is_empty() || b1.is_empty() {
        Vec::new()
    } else {
        karatsuba(a1, b1)
    };
    let a01 = add_vecs(a0, a1);
    let b01 = add_vecs(b0, b1);
    let mut mid = karatsuba(&a01, &b01);
    for (k, c) in p0.iter().enumerate() {
        mid[k] -= c;
    }
    for (k, c) in p2.iter().enumerate() {
        mid[k] -= c;
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (k, c) in p0.into_iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in mid.into_iter().enumerate() {
        if !c.is_zero() {
            out[k + half] += c;
        }
    }
    for (k, c) in p2.into_iter().enumerate() {
        out[k + 2 * half] += c;
    }
    out
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        DensePoly::from_coeffs(karatsuba(&self.coeffs, &rhs.coeffs))
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        DensePoly::from_coeffs(add_vecs(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            if let Some(bc) = rhs.coeffs.get(k) {
                c -= bc;
            }
            out.push(c);
        }
        DensePoly::from_coeffs(out)
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        DensePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// An exact residue in `Z[x] / Phi_m(x)`, stored as the canonical remainder
/// with exactly `phi(m)` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloResidue {
    modulus_index: u64,
    coeffs: Vec<BigInt>,
}

impl CycloResidue {
    /// Canonical reduction of `p` modulo `Phi_m`; zero residue iff
    /// `Phi_m | p`.
    pub fn reduce(p: &DensePoly, m: u64) -> CycloResidue {
        assert!(m >= 1);
        let phi = cyclo::cyclotomic(m);
        let (_, rem) = p.divrem_monic(&phi);
        let width = phi.degree().unwrap();
        let mut coeffs = rem.coeffs;
        coeffs.resize(width, BigInt::zero());
        CycloResidue {
            modulus_index: m,
            coeffs,
        }
    }

    pub fn from_int(m: u64, v: BigInt) -> CycloResidue {
        Self::reduce(&DensePoly::constant(v), m)
    }

    /// Residue of `x^k`.
    pub fn monomial_power(m: u64, k: u64) -> CycloResidue {
        let phi_deg = crate::arith::euler_phi(m);
        if k < phi_deg {
            let mut coeffs = vec![BigInt::zero(); phi_deg as usize];
            coeffs[k as usize] = BigInt::one();
            return CycloResidue {
                modulus_index: m,
                coeffs,
            };
        }
        // x^m = 1 in the quotient, so fold the exponent first.
        let k = k % m;
        Self::reduce(&DensePoly::monomial(BigInt::one(), k as usize), m)
    }

    pub fn modulus_index(&self) -> u64 {
        self.modulus_index
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_modulus(&self, other: &CycloResidue) -> Result<(), PolyError> {
        if self.modulus_index != other.modulus_index {
            return Err(PolyError::ModulusMismatch(
                self.modulus_index,
                other.modulus_index,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycloResidue) -> Result<CycloResidue, PolyError> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloResidue {
            modulus_index: self.modulus_index,
            coeffs,
        })
    }

    pub fn sub(&self, other: &CycloResidue) -> Result<CycloResidue, PolyError> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloResidue {
            modulus_index: self.modulus_index,
            coeffs,
        })
    }

    /// Exact product reduced modulo `Phi_m`.
    pub fn mul(&self, other: &CycloResidue) -> Result<CycloResidue, PolyError> {
        self.check_modulus(other)?;
        let prod = &DensePoly::from_coeffs(self.coeffs.clone())
            * &DensePoly::from_coeffs(other.coeffs.clone());
        Ok(Self::reduce(&prod, self.modulus_index))
    }

    pub fn scale(&self, c: &BigInt) -> CycloResidue {
        CycloResidue {
            modulus_index: self.modulus_index,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> CycloResidue {
        let mut acc = CycloResidue::from_int(self.modulus_index, BigInt::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same modulus");
            }
            base = base.mul(&base).expect("same modulus");
            e >>= 1;
        }
        acc
    }

    /// `|z|^2` as a rational integer, defined for modulus index 1, 2, 3, 4
    /// and 6 where the residue field embeds in an imaginary quadratic ring.
    ///
    /// For m in {1, 2} the residue is a rational integer a with |z|^2 = a^2.
    /// For m = 4 (z = a + b i): a^2 + b^2. For m = 6 (x^2 = x - 1):
    /// a^2 + a b + b^2, and for m = 3 (x^2 = -x - 1): a^2 - a b + b^2.
    pub fn abs_squared(&self) -> Result<BigInt, PolyError> {
        let a = self.coeffs.first().cloned().unwrap_or_else(BigInt::zero);
        let b = self.coeffs.get(1).cloned().unwrap_or_else(BigInt::zero);
        match self.modulus_index {
            1 | 2 => Ok(&a * &a),
            4 => Ok(&a * &a + &b * &b),
            6 => Ok(&a * &a + &a * &b + &b * &b),
            3 => Ok(&a * &a - &a * &b + &b * &b),
            m => Err(PolyError::UnsupportedModulus(m)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> DensePoly {
        DensePoly::from_i64(coeffs)
    }

    #[test]
    fn normalization_and_degree() {
        assert!(DensePoly::from_i64(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 0, 2, 0]).degree(), Some(2));
        assert_eq!(DensePoly::zero().degree(), None);
    }

    #[test]
    fn mul_examples() {
        // (1+x)(1+x^2) = 1+x+x^2+x^3
        assert_eq!(&p(&[1, 1]) * &p(&[1, 0, 1]), p(&[1, 1, 1, 1]));
        // Identity.
        let q = p(&[3, -1, 4]);
        assert_eq!(&DensePoly::one() * &q, q);
        // (1+x)^3 (1+x^2) by hand convolution.
        let lhs = &p(&[1, 1]).pow(3) * &p(&[1, 0, 1]);
        assert_eq!(lhs, p(&[1, 3, 4, 4, 3, 1]));
    }

    #[test]
    fn exact_div_examples() {
        // num*(3,x) / G(3,x) reproduces the n = 3 coefficient row.
        let q = p(&[3, 5, 6, 6, 5, 3]).exact_div(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[3, 2, 4, 2, 3]));
        assert_eq!(
            p(&[1, 0, 0, 1]).exact_div(&p(&[1, 1])).unwrap(),
            p(&[1, -1, 1])
        );
        assert!(matches!(
            p(&[1, 0, 1]).exact_div(&p(&[1, 1])),
            Err(PolyError::NotDivisible { .. })
        ));
    }

    #[test]
    fn binomial_mul_div_roundtrip() {
        let mut q = p(&[2, -3, 5, 7]);
        let orig = q.clone();
        q.mul_binomial_assign(3);
        assert_eq!(q, &orig * &p(&[1, 0, 0, 1]));
        q.div_binomial_exact_assign(3).unwrap();
        assert_eq!(q, orig);
        let mut bad = p(&[1, 0, 1]);
        assert!(bad.div_binomial_exact_assign(1).is_err());
        assert_eq!(bad, p(&[1, 0, 1]));
    }

    #[test]
    fn compose_power_examples() {
        assert_eq!(p(&[1, 1]).compose_power(2), p(&[1, 0, 1]));
        let q = p(&[4, 0, -2, 1]);
        assert_eq!(q.compose_power(1), q);
        assert_eq!(p(&[1, 1, 1]).compose_power(3), p(&[1, 0, 0, 1, 0, 0, 1]));
    }

    #[test]
    fn eval_examples() {
        let num3 = p(&[3, 2, 4, 2, 3]);
        assert_eq!(num3.eval_i64(-1), BigInt::from(6));
        assert_eq!(num3.eval_i64(1), BigInt::from(14));
        assert_eq!(DensePoly::zero().eval_i64(12345), BigInt::zero());
    }

    #[test]
    fn shape_examples() {
        let r = p(&[3, 2, 4, 2, 3]).shape_report();
        assert_eq!(
            r,
            ShapeReport {
                palindromic: true,
                unimodal: false,
                log_concave: false
            }
        );
        let r = p(&[1, 3, 3, 1]).shape_report();
        assert!(r.palindromic && r.unimodal && r.log_concave);
        let r = p(&[2, 2, 2]).shape_report();
        assert!(r.palindromic && r.unimodal && r.log_concave);
    }

    #[test]
    fn shape_internal_zeros_break_unimodality() {
        let r = p(&[3, 0, 3]).shape_report();
        assert!(r.palindromic && !r.unimodal && !r.log_concave);
    }

    #[test]
    fn reduce_mod_cyclotomic_examples() {
        let num3 = p(&[3, 2, 4, 2, 3]);
        let r4 = num3.reduce_mod_cyclotomic(4);
        assert_eq!(r4.coeffs(), &[BigInt::from(2), BigInt::zero()]);
        let r6 = num3.reduce_mod_cyclotomic(6);
        assert_eq!(r6.coeffs(), &[BigInt::from(-3), BigInt::from(3)]);
        let r2 = p(&[1, 0, 0, 1]).reduce_mod_cyclotomic(2);
        assert!(r2.is_zero());
    }

    #[test]
    fn residue_mul_examples() {
        let a = p(&[1, -1]).reduce_mod_cyclotomic(4);
        let b = p(&[1, 1]).reduce_mod_cyclotomic(4);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod, CycloResidue::from_int(4, BigInt::from(2)));

        let r = p(&[5, 7]).reduce_mod_cyclotomic(6);
        let one = CycloResidue::from_int(6, BigInt::one());
        assert_eq!(one.mul(&r).unwrap(), r);

        // (-3+3x)^2 = 9(x^2 - 2x + 1) = -9x in Z[x]/Phi_6.
        let s = p(&[-3, 3]).reduce_mod_cyclotomic(6);
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.coeffs(), &[BigInt::zero(), BigInt::from(-9)]);
    }

    #[test]
    fn residue_modulus_mismatch() {
        let a = CycloResidue::from_int(4, BigInt::one());
        let b = CycloResidue::from_int(6, BigInt::one());
        assert!(matches!(a.mul(&b), Err(PolyError::ModulusMismatch(4, 6))));
    }

    #[test]
    fn abs_squared_examples() {
        let r = CycloResidue::from_int(4, BigInt::from(2));
        assert_eq!(r.abs_squared().unwrap(), BigInt::from(4));
        let r = p(&[-3, 3]).reduce_mod_cyclotomic(6);
        assert_eq!(r.abs_squared().unwrap(), BigInt::from(9));
        let z = CycloResidue::from_int(6, BigInt::zero());
        assert_eq!(z.abs_squared().unwrap(), BigInt::zero());
        let bad = CycloResidue::from_int(5, BigInt::one());
        assert!(matches!(
            bad.abs_squared(),
            Err(PolyError::UnsupportedModulus(5))
        ));
    }

    #[test]
    fn monomial_power_residue() {
        // x^6 = -1 mod Phi_12? Phi_12 = x^4 - x^2 + 1 divides x^12 - 1;
        // easier pinned case: x^2 = -1 mod Phi_4.
        let r = CycloResidue::monomial_power(4, 2);
        assert_eq!(r, CycloResidue::from_int(4, BigInt::from(-1)));
        let r = CycloResidue::monomial_power(6, 3);
        assert_eq!(r, CycloResidue::from_int(6, BigInt::from(-1)));
        // Exponent folding: x^7 = x mod Phi_6 via x^6 = 1.
        let r = CycloResidue::monomial_power(6, 7);
        assert_eq!(r, CycloResidue::monomial_power(6, 1));
    }
}
