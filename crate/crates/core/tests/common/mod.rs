//! Shared test oracles, independent of the library's fast paths: classical
//! polynomial gcd over the rationals, and a fixed-point magnitude probe for
//! residue absolute squares.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use subsum_core::DensePoly;

fn to_rational(p: &DensePoly) -> Vec<BigRational> {
    p.coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rational_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a.to_vec();
    while rem.len() > db {
        let k = rem.len() - 1;
        let q = &rem[k] / lead;
        if !q.is_zero() {
            for (j, bc) in b.iter().enumerate().take(db) {
                let sub = bc * &q;
                rem[k - db + j] -= sub;
            }
        }
        rem.pop();
        trim(&mut rem);
    }
    rem
}

/// Classical gcd over Q scaled back to a primitive integer polynomial with
/// positive leading coefficient. Independent oracle for the factored gcd.
pub fn poly_gcd_oracle(a: &DensePoly, b: &DensePoly) -> DensePoly {
    if a.is_zero() {
        return normalize_primitive(b);
    }
    if b.is_zero() {
        return normalize_primitive(a);
    }
    let mut x = to_rational(a);
    let mut y = to_rational(b);
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rational_rem(&x, &y);
        x = y;
        y = r;
    }
    // Scale to integer coefficients.
    let mut denom_lcm = BigInt::one();
    for c in &x {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = x
        .iter()
        .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    normalize_primitive(&DensePoly::from_coeffs(ints))
}

fn normalize_primitive(p: &DensePoly) -> DensePoly {
    if p.is_zero() {
        return DensePoly::zero();
    }
    let (_, mut prim) = p.primitive_part();
    if prim.leading().is_some_and(|c| c.is_negative()) {
        prim = -&prim;
    }
    prim
}

pub fn poly_gcd_many(polys: &[DensePoly]) -> DensePoly {
    let mut acc = polys[0].clone();
    for p in &polys[1..] {
        acc = poly_gcd_oracle(&acc, p);
    }
    acc
}

/// Fixed-point (about 200 fractional bits) squared magnitude of `a + b z`
/// with `z` a primitive `m`-th root of unity, scaled by `4^200`. Uses an
/// integer square root for sqrt(3), so it is an independent numerical route
/// rather than the quadratic-form identity.
pub fn abs2_fixed_point(m: u64, a: &BigInt, b: &BigInt) -> BigInt {
    let k = 200u32;
    match m {
        4 => (a * a + b * b) * BigInt::from(2).pow(2 * 2 * k),
        3 | 6 => {
            let sign = if m == 6 { 1 } else { -1 };
            let re =
                (BigInt::from(2) * a + BigInt::from(sign) * b) * BigInt::from(2).pow(2 * k - 1);
            let rt3 = (BigInt::from(3) * BigInt::from(2).pow(2 * (2 * k - 1))).sqrt();
            let im = b * rt3;
            &re * &re + &im * &im
        }
        _ => panic!("unsupported modulus {m}"),
    }
}

/// The exact scale used by `abs2_fixed_point`.
pub fn abs2_scale() -> BigInt {
    BigInt::from(2).pow(4 * 200)
}
