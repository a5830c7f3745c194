//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Elements are stored in the canonical basis 1, z, ..., z^(phi(N)-1) where
//! z = zeta_N = e^(2*pi*i/N), with coefficients reduced modulo the N-th
//! cyclotomic polynomial. Canonical representation makes equality a
//! coefficient comparison. Real-part signs are decided exactly: zero by
//! canonical-form equality, nonzero by adaptive-precision interval
//! evaluation that doubles its working precision until the enclosure
//! excludes zero.

mod interval;
mod poly;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

use crate::error::{Error, Result};

pub use poly::{cyclotomic_polynomial, euler_phi};

/// Adaptive sign determination starts here and doubles.
const SIGN_START_BITS: u32 = 64;
/// Hard cap; reaching it means an arithmetic bug, never an expected state.
const SIGN_CAP_BITS: u32 = 1 << 16;
/// Largest supported field order; contexts precompute a power table of
/// this many rows.
const MAX_ORDER: u64 = 4096;

struct FieldContext {
    phi: usize,
    min_poly: Vec<BigInt>,
    /// z^t reduced modulo the minimal polynomial, for t in 0..order.
    power_table: Vec<Vec<BigInt>>,
}

impl FieldContext {
    fn new(order: u64) -> Self {
        let min_poly = poly::cyclotomic_polynomial(order);
        let phi = min_poly.len() - 1;
        let rows = (order as usize).max(2 * phi);
        let mut power_table = Vec::with_capacity(rows);
        let mut row = vec![BigInt::zero(); phi];
        row[0] = BigInt::one();
        power_table.push(row.clone());
        for _ in 1..rows {
            // Multiply by z: shift up and reduce the overflow coefficient.
            let carry = row[phi - 1].clone();
            for i in (1..phi).rev() {
                row[i] = row[i - 1].clone();
            }
            row[0] = BigInt::zero();
            if !carry.is_zero() {
                for i in 0..phi {
                    let v = &row[i] - &carry * &min_poly[i];
                    row[i] = v;
                }
            }
            power_table.push(row.clone());
        }
        FieldContext { phi, min_poly, power_table }
    }
}

static CONTEXTS: LazyLock<Mutex<HashMap<u64, Arc<FieldContext>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn context(order: u64) -> Result<Arc<FieldContext>> {
    if order == 0 {
        return Err(Error::InvalidOrder);
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    let mut map = CONTEXTS.lock().unwrap();
    Ok(map
        .entry(order)
        .or_insert_with(|| Arc::new(FieldContext::new(order)))
        .clone())
}

/// An element of the cyclotomic field Q(zeta_N).
#[derive(Debug, Clone)]
pub struct CycloElement {
    order: u64,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    fn from_coeffs(order: u64, coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len() as u64, euler_phi(order));
        CycloElement { order, coeffs }
    }

    pub fn zero(order: u64) -> Self {
        let phi = euler_phi(order) as usize;
        CycloElement::from_coeffs(order, vec![Rational::zero(); phi])
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u64, q: Rational) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = q;
        e
    }

    pub fn from_integer(order: u64, n: i64) -> Self {
        Self::from_rational(order, Rational::from(BigInt::from(n)))
    }

    /// The primitive root of unity zeta_order.
    pub fn zeta(order: u64) -> Result<Self> {
        Self::zeta_pow(order, 1)
    }

    /// zeta_order raised to the k-th power (k taken modulo order).
    pub fn zeta_pow(order: u64, k: i64) -> Result<Self> {
        let ctx = context(order)?;
        let k = k.rem_euclid(order as i64) as usize;
        let coeffs = ctx.power_table[k]
            .iter()
            .map(|c| Rational::from(c.clone()))
            .collect();
        Ok(CycloElement::from_coeffs(order, coeffs))
    }

    /// The imaginary unit; requires 4 | order.
    pub fn i(order: u64) -> Result<Self> {
        if order % 4 != 0 {
            return Err(Error::OrderNotDivisibleBy4(order));
        }
        Self::zeta_pow(order, (order / 4) as i64)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(q) when the element is the rational number q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Image under zeta_order -> zeta_target^(target/order); the identity on
    /// rationals, and a field homomorphism.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == self.order {
            return Ok(self.clone());
        }
        if target % self.order != 0 {
            return Err(Error::IncompatibleOrder { order: self.order, target });
        }
        let scale = target / self.order;
        let ctx = context(target)?;
        let phi = ctx.phi;
        let mut out = vec![Rational::zero(); phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &ctx.power_table[(j as u64 * scale) as usize % target as usize];
            for (i, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    let v = &out[i] + c * Rational::from(r.clone());
                    out[i] = v;
                }
            }
        }
        Ok(CycloElement::from_coeffs(target, out))
    }

    fn common_order(&self, other: &Self) -> u64 {
        self.order.lcm(&other.order)
    }

    fn lift_pair(&self, other: &Self) -> (CycloElement, CycloElement) {
        let m = self.common_order(other);
        (
            self.embed(m).expect("lcm embedding cannot fail"),
            other.embed(m).expect("lcm embedding cannot fail"),
        )
    }

    /// Apply the Galois automorphism zeta -> zeta^k; k must be coprime to
    /// the order.
    fn galois(&self, k: u64) -> Self {
        debug_assert_eq!(k.gcd(&self.order), 1);
        let ctx = context(self.order).expect("order validated at construction");
        let mut out = vec![Rational::zero(); ctx.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &ctx.power_table[(j as u64 * k) as usize % self.order as usize];
            for (i, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    let v = &out[i] + c * Rational::from(r.clone());
                    out[i] = v;
                }
            }
        }
        CycloElement::from_coeffs(self.order, out)
    }

    /// Complex conjugation, the automorphism zeta -> zeta^(order-1).
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = context(self.order)?;
        let inv = poly::invert_mod(&self.coeffs, &ctx.min_poly)
            .ok_or(Error::DivisionByZero)?;
        let mut coeffs = inv;
        coeffs.resize(ctx.phi, Rational::zero());
        Ok(CycloElement::from_coeffs(self.order, coeffs))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * q).collect();
        CycloElement::from_coeffs(self.order, coeffs)
    }

    /// Real part as an exact field element; requires 4 | order.
    pub fn re(&self) -> Result<Self> {
        if self.order % 4 != 0 {
            return Err(Error::OrderNotDivisibleBy4(self.order));
        }
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        Ok((self + &self.conj()).scale(&half))
    }

    /// Imaginary part as an exact (real) field element; requires 4 | order.
    pub fn im(&self) -> Result<Self> {
        if self.order % 4 != 0 {
            return Err(Error::OrderNotDivisibleBy4(self.order));
        }
        // (a - conj(a)) / (2i) = (a - conj(a)) * (-i/2)
        let i = Self::i(self.order)?;
        let minus_half = Rational::new(BigInt::from(-1), BigInt::from(2));
        Ok(((self - &self.conj()) * i).scale(&minus_half))
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Exact sign of a real element: -1, 0, or +1.
    ///
    /// Zero is decided by canonical-form equality; a nonzero sign is decided
    /// by interval evaluation at zeta_N = e^(2*pi*i/N), doubling the working
    /// precision until the enclosure excludes zero. Terminates for every
    /// nonzero input; the precision cap turns hypothetical bugs into errors.
    pub fn sign_real(&self) -> Result<i32> {
        if !self.is_real() {
            return Err(Error::NotRealElement);
        }
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(q) = self.as_rational() {
            return Ok(match q.numer().sign() {
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
                num_bigint::Sign::Plus => 1,
            });
        }
        let mut prec = SIGN_START_BITS;
        loop {
            let enc = interval::eval_at_zeta(&self.coeffs, self.order, prec);
            if let Some(s) = enc.re.definite_sign() {
                if s != 0 {
                    return Ok(s);
                }
            }
            prec = prec.saturating_mul(2);
            if prec > SIGN_CAP_BITS {
                return Err(Error::PrecisionExhausted(SIGN_CAP_BITS));
            }
        }
    }

    /// Sign of re(self) - re(other); the comparison used throughout the
    /// pencil pipeline.
    pub fn cmp_re(&self, other: &Self) -> Result<i32> {
        let d = self - other;
        // d + conj(d) = 2 re(d); same sign, no division needed.
        (&d + &d.conj()).sign_real()
    }

    /// Interval enclosure of the real part at the given precision; the
    /// 200-digit cross-check oracle in the test suite uses this directly.
    pub fn re_interval_sign(&self, prec: u32) -> Option<i32> {
        interval::eval_at_zeta(&self.coeffs, self.order, prec)
            .re
            .definite_sign()
    }

    /// Floating approximation (re, im); presentation and numeric-quadrature
    /// use only, never feeds exact predicates.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.order as f64;
        let (zr, zi) = (theta.cos(), theta.sin());
        let (mut ar, mut ai) = (0.0f64, 0.0f64);
        for c in self.coeffs.iter().rev() {
            let (nr, ni) = (ar * zr - ai * zi, ar * zi + ai * zr);
            let cf = c.numer().to_f64().unwrap_or(f64::NAN)
                / c.denom().to_f64().unwrap_or(f64::NAN);
            ar = nr + cf;
            ai = ni;
        }
        (ar, ai)
    }
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.lift_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloElement {}

macro_rules! binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&CycloElement> for &CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: &CycloElement) -> CycloElement {
                let ($a, $b) = self.lift_pair(rhs);
                $body
            }
        }
        impl $trait for CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: CycloElement) -> CycloElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let coeffs = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| x + y)
        .collect();
    CycloElement::from_coeffs(a.order, coeffs)
});

binop!(Sub, sub, |a, b| {
    let coeffs = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| x - y)
        .collect();
    CycloElement::from_coeffs(a.order, coeffs)
});

binop!(Mul, mul, |a, b| {
    let ctx = context(a.order).expect("order validated at construction");
    let phi = ctx.phi;
    let mut prod = vec![Rational::zero(); 2 * phi - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let v = &prod[i + j] + x * y;
            prod[i + j] = v;
        }
    }
    let mut out = vec![Rational::zero(); phi];
    for (t, c) in prod.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if t < phi {
            let v = &out[t] + c;
            out[t] = v;
        } else {
            let row = &ctx.power_table[t];
            for (i, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    let v = &out[i] + &c * Rational::from(r.clone());
                    out[i] = v;
                }
            }
        }
    }
    CycloElement::from_coeffs(a.order, out)
});

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        CycloElement::from_coeffs(self.order, coeffs)
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Canonical text form.
//
// expression := ['-'] term (('+'|'-') term)*
// term       := rational | rational '*' monomial | monomial
// monomial   := 'z' | 'z^' integer
// rational   := integer | integer '/' positive-integer
//
// Serialization is canonical: ascending powers, reduced coefficients, zero
// terms omitted, "0" for the zero element.
// ---------------------------------------------------------------------------

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = match j {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{j}")),
            };
            match mono {
                None => write!(f, "{mag}")?,
                Some(m) => {
                    if mag.is_one() {
                        write!(f, "{m}")?;
                    } else {
                        write!(f, "{mag}*{m}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A parse failure within a coordinate expression, with a byte offset into
/// the parsed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub offset: usize,
    pub msg: String,
}

struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    order: u64,
}

impl<'a> ExprParser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> std::result::Result<T, ExprError> {
        Err(ExprError { offset: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && (self.bytes[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn integer(&mut self, allow_sign: bool) -> std::result::Result<BigInt, ExprError> {
        let start = self.pos;
        if allow_sign && self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn rational(&mut self) -> std::result::Result<Rational, ExprError> {
        let num = self.integer(true)?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.integer(false)?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from(num))
        }
    }

    fn monomial_power(&mut self) -> std::result::Result<u64, ExprError> {
        // Caller consumed 'z'.
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer(false)?;
            let e = e
                .to_u64()
                .filter(|&e| e < self.order)
                .ok_or(ExprError {
                    offset: self.pos,
                    msg: format!("exponent not in the field of order {}", self.order),
                })?;
            Ok(e)
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> std::result::Result<CycloElement, ExprError> {
        self.skip_ws();
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                let e = self.monomial_power()?;
                CycloElement::zeta_pow(self.order, e as i64)
                    .map_err(|er| ExprError { offset: self.pos, msg: er.to_string() })
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let q = self.rational()?;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek() != Some(b'z') {
                        return self.err("expected 'z' after '*'");
                    }
                    self.pos += 1;
                    let e = self.monomial_power()?;
                    let z = CycloElement::zeta_pow(self.order, e as i64)
                        .map_err(|er| ExprError { offset: self.pos, msg: er.to_string() })?;
                    Ok(z.scale(&q))
                } else {
                    Ok(CycloElement::from_rational(self.order, q))
                }
            }
            _ => self.err("expected a term"),
        }
    }

    fn expression(&mut self) -> std::result::Result<CycloElement, ExprError> {
        self.skip_ws();
        let negate_first = if self.peek() == Some(b'-') {
            // Leading sign applies to the first term only if it is not the
            // sign of its integer; simplest is to consume it here.
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = -acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
}

/// Parse a coordinate expression in the canonical grammar, producing an
/// element of Q(zeta_order).
pub fn parse_element(text: &str, order: u64) -> std::result::Result<CycloElement, ExprError> {
    let mut p = ExprParser { bytes: text.as_bytes(), pos: 0, order };
    let e = p.expression()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}
