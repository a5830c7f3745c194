//! Dense polynomial helpers over BigInt / BigRational used by the
//! cyclotomic field layer. Polynomials are coefficient vectors in
//! ascending-power order with no trailing zeros (except the zero
//! polynomial, which is the empty vector).

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclofield::Rational;

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn trim_int(p: &mut Vec<BigInt>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn trim_rat(p: &mut Vec<Rational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Exact division of integer polynomials; `div` must be monic and must
/// divide `num` exactly. Panics otherwise (callers control both inputs).
fn div_exact_int(num: &[BigInt], div: &[BigInt]) -> Vec<BigInt> {
    assert!(!div.is_empty() && div.last().unwrap().is_one());
    let mut rem: Vec<BigInt> = num.to_vec();
    trim_int(&mut rem);
    let dd = div.len() - 1;
    if rem.len() < div.len() {
        assert!(rem.is_empty(), "division not exact");
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for qd in (0..quot.len()).rev() {
        let c = rem[qd + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[qd] = c.clone();
        for (i, dc) in div.iter().enumerate() {
            let v = &rem[qd + i] - &c * dc;
            rem[qd + i] = v;
        }
    }
    trim_int(&mut rem);
    assert!(rem.is_empty(), "division not exact");
    quot
}

static CYCLOTOMIC_CACHE: LazyLock<Mutex<HashMap<u64, Vec<BigInt>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The n-th cyclotomic polynomial, monic of degree phi(n), as ascending
/// integer coefficients. Computed by dividing x^n - 1 by the cyclotomic
/// polynomials of the proper divisors of n.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // x^n - 1
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic_polynomial(d);
                num = div_exact_int(&num, &phi_d);
            }
        }
        num
    };
    debug_assert_eq!(poly.len() as u64, euler_phi(n) + 1);
    CYCLOTOMIC_CACHE
        .lock()
        .unwrap()
        .insert(n, poly.clone());
    poly
}

fn rat_poly_divrem(num: &[Rational], div: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim_rat(&mut rem);
    let dd = div.len() - 1;
    let lead = div.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let c = rem.pop().unwrap() / lead.clone();
        if c.is_zero() {
            continue;
        }
        let shift = rem.len() - dd;
        quot[shift] = c.clone();
        for (i, dc) in div.iter().take(dd).enumerate() {
            let v = &rem[shift + i] - &c * dc;
            rem[shift + i] = v;
        }
    }
    trim_rat(&mut rem);
    (quot, rem)
}

fn rat_poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            let v = &out[i + j] + ca * cb;
            out[i + j] = v;
        }
    }
    trim_rat(&mut out);
    out
}

fn rat_poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.clone();
    }
    for (i, c) in b.iter().enumerate() {
        let v = &out[i] - c;
        out[i] = v;
    }
    trim_rat(&mut out);
    out
}

/// Inverse of `a` modulo the monic irreducible `modulus`, by the extended
/// Euclidean algorithm over Q[x]. Returns None when a is zero.
pub fn invert_mod(a: &[Rational], modulus: &[BigInt]) -> Option<Vec<Rational>> {
    let mut a = a.to_vec();
    trim_rat(&mut a);
    if a.is_empty() {
        return None;
    }
    let modulus: Vec<Rational> = modulus.iter().map(|c| Rational::from(c.clone())).collect();
    // Invariant: r0 = s0*a (mod modulus), r1 = s1*a (mod modulus).
    let mut r0 = modulus.clone();
    let mut r1 = a;
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while r1.len() > 1 {
        let (q, r) = rat_poly_divrem(&r0, &r1);
        let s = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        if r1.is_empty() {
            // gcd has positive degree; impossible for an irreducible modulus.
            return None;
        }
    }
    let c = r1[0].clone();
    let inv_c = Rational::one() / c;
    Some(s1.iter().map(|v| v * &inv_c).collect())
}
