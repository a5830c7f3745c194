//! Dyadic interval arithmetic used by the certified sign oracle.
//!
//! Values are enclosed in intervals with dyadic endpoints (mantissa times a
//! power of two). Addition and multiplication of dyadics are exact; every
//! interval operation rounds the lower endpoint down and the upper endpoint
//! up to the working precision, so enclosures stay rigorous while mantissas
//! stay bounded. Enclosures of e^(2*pi*i*j/N) come from a Machin-style pi
//! enclosure and Taylor series with explicit remainder bounds.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclofield::Rational;

const GUARD_BITS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Round {
    Down,
    Up,
}

impl Dyadic {
    fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    pub fn zero() -> Self {
        Dyadic::new(BigInt::zero(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> i32 {
        match self.mant.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &other.mant << (other.exp - exp) as u64;
        Dyadic::new(a + b, exp)
    }

    fn neg(&self) -> Dyadic {
        Dyadic::new(-self.mant.clone(), self.exp)
    }

    fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Round to at most `prec` mantissa bits, in the given direction.
    fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let div = BigInt::one() << shift;
        let q = match dir {
            Round::Down => self.mant.div_floor(&div),
            Round::Up => self.mant.div_ceil(&div),
        };
        Dyadic::new(q, self.exp + shift as i64)
    }

    pub fn cmp(&self, other: &Dyadic) -> Ordering {
        let diff = self.add(&other.neg());
        match diff.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    #[cfg(test)]
    pub fn to_f64(&self) -> f64 {
        // Presentation only; reduce to ~80 bits first to keep the cast sane.
        let r = self.round(80, Round::Down);
        let (sign, bytes) = r.mant.to_bytes_le();
        let mut m = 0f64;
        for (i, d) in bytes.iter().enumerate() {
            m += (*d as f64) * (256f64).powi(i as i32);
        }
        if sign == num_bigint::Sign::Minus {
            m = -m;
        }
        m * (2f64).powi(r.exp as i32)
    }
}

/// Closed interval [lo, hi] with dyadic endpoints.
#[derive(Debug, Clone)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn zero() -> Self {
        Interval { lo: Dyadic::zero(), hi: Dyadic::zero() }
    }

    pub fn point(d: Dyadic) -> Self {
        Interval { lo: d.clone(), hi: d }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        if q.is_zero() {
            return Interval::zero();
        }
        // Scale so the quotient carries prec significant bits regardless of
        // the value's magnitude.
        let num = q.numer();
        let den = q.denom();
        let shift = (den.bits() as i64 - num.bits() as i64 + prec as i64 + 2).max(0) as u64;
        let scaled = num << shift;
        let lo = scaled.div_floor(den);
        let hi = scaled.div_ceil(den);
        Interval {
            lo: Dyadic::new(lo, -(shift as i64)).round(prec, Round::Down),
            hi: Dyadic::new(hi, -(shift as i64)).round(prec, Round::Up),
        }
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.add(&other.lo).round(prec, Round::Down),
            hi: self.hi.add(&other.hi).round(prec, Round::Up),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn sub(&self, other: &Interval, prec: u32) -> Interval {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Interval, prec: u32) -> Interval {
        let cands = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c.cmp(&lo) == Ordering::Less {
                lo = c.clone();
            }
            if c.cmp(&hi) == Ordering::Greater {
                hi = c.clone();
            }
        }
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
        }
    }

    fn scale_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: Dyadic::new(self.lo.mant.clone(), self.lo.exp + k),
            hi: Dyadic::new(self.hi.mant.clone(), self.hi.exp + k),
        }
    }

    /// Widen symmetrically by `slack` (slack >= 0).
    fn widen(&self, slack: &Dyadic) -> Interval {
        Interval { lo: self.lo.add(&slack.neg()), hi: self.hi.add(slack) }
    }

    /// Sign of every value in the interval: Some(-1), Some(0) for the exact
    /// zero interval, Some(1), or None when the interval straddles zero.
    pub fn definite_sign(&self) -> Option<i32> {
        let sl = self.lo.sign();
        let sh = self.hi.sign();
        if sl == 0 && sh == 0 {
            Some(0)
        } else if sl > 0 {
            Some(1)
        } else if sh < 0 {
            Some(-1)
        } else {
            None
        }
    }

    fn abs_hi(&self) -> Dyadic {
        let a = self.lo.neg();
        if a.cmp(&self.hi) == Ordering::Greater {
            a
        } else {
            self.hi.clone()
        }
    }
}

#[derive(Debug, Clone)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn zero() -> Self {
        ComplexInterval { re: Interval::zero(), im: Interval::zero() }
    }

    pub fn add(&self, other: &ComplexInterval, prec: u32) -> ComplexInterval {
        ComplexInterval {
            re: self.re.add(&other.re, prec),
            im: self.im.add(&other.im, prec),
        }
    }

    pub fn mul(&self, other: &ComplexInterval, prec: u32) -> ComplexInterval {
        ComplexInterval {
            re: self.re.mul(&other.re, prec).sub(&self.im.mul(&other.im, prec), prec),
            im: self.re.mul(&other.im, prec).add(&self.im.mul(&other.re, prec), prec),
        }
    }
}

fn two_pow_neg(k: u32) -> Dyadic {
    Dyadic::new(BigInt::one(), -(k as i64))
}

/// Enclosure of arctan(1/x) for integer x >= 2, by the alternating Taylor
/// series; the remainder is bounded by the first omitted term.
fn atan_inv(x: u64, prec: u32) -> Interval {
    let p = prec + GUARD_BITS;
    let threshold = two_pow_neg(prec + 8);
    let x2 = BigInt::from(x * x);
    let mut power = BigInt::from(x); // x^(2k+1)
    let mut sum = Interval::zero();
    let mut k: u64 = 0;
    loop {
        let term_rat = Rational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        let term = Interval::from_rational(&term_rat, p);
        if term.hi.cmp(&threshold) == Ordering::Less {
            // |remainder| <= first omitted term
            sum = sum.widen(&term.hi);
            break;
        }
        sum = if k % 2 == 0 {
            sum.add(&term, p)
        } else {
            sum.sub(&term, p)
        };
        power *= &x2;
        k += 1;
    }
    sum
}

static PI_CACHE: LazyLock<Mutex<HashMap<u32, Interval>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Enclosure of pi via Machin's formula pi = 16 atan(1/5) - 4 atan(1/239).
pub fn pi_enclosure(prec: u32) -> Interval {
    if let Some(v) = PI_CACHE.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let p = prec + GUARD_BITS;
    let a = atan_inv(5, p).scale_pow2(4);
    let b = atan_inv(239, p).scale_pow2(2);
    let pi = a.sub(&b, p);
    PI_CACHE.lock().unwrap().insert(prec, pi.clone());
    pi
}

/// Enclosures of cos(theta) and sin(theta) for an enclosed |theta| <= pi,
/// by the Taylor series with an alternating-series remainder bound.
fn sin_cos(theta: &Interval, prec: u32) -> (Interval, Interval) {
    let p = prec + GUARD_BITS;
    let threshold = two_pow_neg(prec + 8);
    let theta2 = theta.mul(theta, p);
    let theta_abs = theta.abs_hi();

    let mut cos = Interval::zero();
    let mut sin = Interval::zero();
    // power = theta^(2k) enclosure; |theta|^(2k) upper bound tracked alongside.
    let mut power = Interval::point(Dyadic::new(BigInt::one(), 0));
    let mut abs_power = Dyadic::new(BigInt::one(), 0);
    let mut fact = BigInt::one(); // (2k)!
    let mut k: u64 = 0;
    loop {
        // cos term: theta^(2k) / (2k)!;  sin term: theta^(2k+1) / (2k+1)!
        let c_term = power.mul(&Interval::from_rational(&Rational::new(BigInt::one(), fact.clone()), p), p);
        let s_fact = &fact * BigInt::from(2 * k + 1);
        let s_term = power
            .mul(theta, p)
            .mul(&Interval::from_rational(&Rational::new(BigInt::one(), s_fact.clone()), p), p);
        if k % 2 == 0 {
            cos = cos.add(&c_term, p);
            sin = sin.add(&s_term, p);
        } else {
            cos = cos.sub(&c_term, p);
            sin = sin.sub(&s_term, p);
        }
        // Remainder: once terms decrease ((2k+2)(2k+3) > theta^2), bound by
        // the next term's magnitude.
        let next_abs = abs_power.mul(&theta_abs).mul(&theta_abs).round(p, Round::Up);
        let next_c = Interval::point(next_abs.clone())
            .mul(&Interval::from_rational(&Rational::new(BigInt::one(), &fact * BigInt::from((2 * k + 1) * (2 * k + 2))), p), p);
        if 2 * k + 2 > 4 && next_c.hi.cmp(&threshold) == Ordering::Less {
            let next_s = Interval::point(next_abs.clone()).mul(
                &Interval::from_rational(
                    &Rational::new(
                        BigInt::one(),
                        &s_fact * BigInt::from((2 * k + 2) * (2 * k + 3)),
                    ),
                    p,
                ),
                p,
            );
            // First omitted sin term is |theta|^(2k+3)/(2k+3)! and next_s
            // bounds |theta|^(2k+2)/(2k+3)!; the missing |theta| <= pi < 4
            // factor is covered by scaling next_s by 4.
            cos = cos.widen(&next_c.hi);
            let slack_s = Dyadic::new(next_s.hi.mant.clone(), next_s.hi.exp + 2);
            sin = sin.widen(&slack_s);
            break;
        }
        power = power.mul(&theta2, p);
        abs_power = next_abs;
        fact *= BigInt::from((2 * k + 1) * (2 * k + 2));
        k += 1;
    }
    (cos, sin)
}

static ZETA_CACHE: LazyLock<Mutex<HashMap<(u64, u32), ComplexInterval>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Enclosure of the primitive root of unity e^(2*pi*i/N).
pub fn zeta_enclosure(order: u64, prec: u32) -> ComplexInterval {
    if let Some(v) = ZETA_CACHE.lock().unwrap().get(&(order, prec)) {
        return v.clone();
    }
    let p = prec + GUARD_BITS;
    // theta = 2*pi/N, reduced to (-pi, pi] : for N >= 2 it already is; N = 1
    // gives theta = 2*pi, i.e. zeta = 1 exactly.
    let value = if order == 1 {
        ComplexInterval {
            re: Interval::point(Dyadic::new(BigInt::one(), 0)),
            im: Interval::zero(),
        }
    } else {
        let pi = pi_enclosure(p);
        let scale = Interval::from_rational(&Rational::new(BigInt::from(2), BigInt::from(order)), p);
        let theta = pi.mul(&scale, p);
        let (cos, sin) = sin_cos(&theta, p);
        ComplexInterval { re: cos, im: sin }
    };
    ZETA_CACHE.lock().unwrap().insert((order, prec), value.clone());
    value
}

/// Horner evaluation of a rational-coefficient polynomial at zeta_order.
pub fn eval_at_zeta(coeffs: &[Rational], order: u64, prec: u32) -> ComplexInterval {
    let p = prec + GUARD_BITS;
    let zeta = zeta_enclosure(order, p);
    let mut acc = ComplexInterval::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(&zeta, p);
        if !c.is_zero() {
            let ci = ComplexInterval {
                re: Interval::from_rational(c, p),
                im: Interval::zero(),
            };
            acc = acc.add(&ci, p);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_matches_f64() {
        let pi = pi_enclosure(64);
        assert!((pi.lo.to_f64() - std::f64::consts::PI).abs() < 1e-12);
        assert!((pi.hi.to_f64() - std::f64::consts::PI).abs() < 1e-12);
        assert!(pi.lo.cmp(&pi.hi) != std::cmp::Ordering::Greater);
    }

    #[test]
    fn zeta_twelve_matches_f64() {
        let z = zeta_enclosure(12, 64);
        let theta = std::f64::consts::PI / 6.0;
        assert!((z.re.lo.to_f64() - theta.cos()).abs() < 1e-12);
        assert!((z.im.lo.to_f64() - theta.sin()).abs() < 1e-12);
    }

    #[test]
    fn interval_sign_detection() {
        let q = Rational::new(BigInt::from(-3), BigInt::from(7));
        let i = Interval::from_rational(&q, 64);
        assert_eq!(i.definite_sign(), Some(-1));
        assert_eq!(Interval::zero().definite_sign(), Some(0));
    }

    #[test]
    fn widths_shrink_with_precision() {
        for &n in &[3u64, 5, 7, 20] {
            let z64 = zeta_enclosure(n, 64);
            let z256 = zeta_enclosure(n, 256);
            let w64 = z64.re.hi.add(&z64.re.lo.neg());
            let w256 = z256.re.hi.add(&z256.re.lo.neg());
            assert!(w256.cmp(&w64) == std::cmp::Ordering::Less);
            assert!(w64.to_f64() < 1e-14);
        }
    }
}

