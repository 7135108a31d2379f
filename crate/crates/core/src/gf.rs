//! Finite fields GF(p^d) in a polynomial basis.
//!
//! An element is stored as a single integer code in `[0, q)` whose base-p
//! digits, little-endian, are the coefficients of its representative
//! polynomial. Code 0 is zero and code 1 is one. Small fields (q ≤ 256) get
//! precomputed addition, multiplication, inverse and Frobenius tables; larger
//! ones fall back to polynomial arithmetic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const TABLE_LIMIT: u32 = 256;
const MAX_ORDER: u64 = 1 << 20;

/// One element of a [`FieldCtx`], identified by its canonical code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A power of Frobenius, `α ↦ α^(p^exponent)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Automorphism {
    exponent: u32,
    degree: u32,
}

impl Automorphism {
    pub fn identity(degree: u32) -> Self {
        Automorphism { exponent: 0, degree }
    }

    pub fn new(exponent: u32, degree: u32) -> Result<Self> {
        if degree == 0 || exponent >= degree {
            return Err(Error::AutomorphismOutOfRange { exponent, degree });
        }
        Ok(Automorphism { exponent, degree })
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn degree(self) -> u32 {
        self.degree
    }

    pub fn is_identity(self) -> bool {
        self.exponent == 0
    }

    /// `self ∘ other`; exponents add modulo the degree.
    pub fn compose(self, other: Automorphism) -> Automorphism {
        debug_assert_eq!(self.degree, other.degree);
        Automorphism {
            exponent: (self.exponent + other.exponent) % self.degree,
            degree: self.degree,
        }
    }

    pub fn inverse(self) -> Automorphism {
        Automorphism {
            exponent: (self.degree - self.exponent) % self.degree,
            degree: self.degree,
        }
    }

    pub fn pow(self, n: u64) -> Automorphism {
        let e = (self.exponent as u64 * n) % self.degree as u64;
        Automorphism { exponent: e as u32, degree: self.degree }
    }
}

#[derive(Debug, Clone)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    // frob[i * q + a] = a^(p^i)
    frob: Vec<u32>,
}

/// The finite field GF(p^d) with a fixed monic irreducible modulus.
///
/// Immutable after construction; share it freely across threads.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    d: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Splits a prime power into `(p, d)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|k| q % k == 0)?;
    let mut rest = q;
    let mut d = 0;
    while rest % p == 0 {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

// Remainder of `a` modulo the monic polynomial `m` over GF(p). Coefficients little-endian.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r: Vec<u32> = a.to_vec();
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let d = modulus.len() - 1;
    if d <= 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=d/2.
    for deg in 1..=d / 2 {
        let count = (p as u64).pow(deg as u32);
        for low in 0..count {
            let mut divisor = Vec::with_capacity(deg + 1);
            let mut c = low;
            for _ in 0..deg {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// Builds GF(p^d). Without a modulus, picks the monic irreducible of
    /// degree `d` whose little-endian base-p coefficient code is smallest.
    pub fn new(p: u64, d: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p.checked_pow(d).filter(|&q| q <= MAX_ORDER).ok_or(Error::FieldTooLarge { p, d })?;
        let p = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != d as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients, got {}",
                        d + 1,
                        m.len()
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
                }
                if m[d as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => Self::default_modulus(p, d),
        };
        let mut ctx = FieldCtx { p, d, q: q as u32, modulus, tables: None };
        if ctx.q <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    /// Shorthand for `new(p, d, None)` when the field order is given as `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, d) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Self::new(p, d, None)
    }

    fn default_modulus(p: u32, d: u32) -> Vec<u32> {
        let count = (p as u64).pow(d);
        for low in 0..count {
            let mut m = Vec::with_capacity(d as usize + 1);
            let mut c = low;
            for _ in 0..d {
                m.push((c % p as u64) as u32);
                c /= p as u64;
            }
            m.push(1);
            if is_irreducible(&m, p) {
                return m;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over GF(p)")
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.add_slow(a as u32, b as u32);
                mul[a * q + b] = self.mul_slow(a as u32, b as u32);
            }
        }
        let neg = (0..q as u32).map(|a| self.neg_slow(a)).collect();
        let mut inv = vec![0; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u32;
        }
        let mut frob = Vec::with_capacity(self.d as usize * q);
        frob.extend(0..q as u32);
        for i in 1..self.d as usize {
            for a in 0..q {
                let prev = frob[(i - 1) * q + a];
                frob.push(self.pow_slow(prev, self.p as u64));
            }
        }
        Tables { add, mul, neg, inv, frob }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, little-endian, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.q {
            Ok(FieldElement(code))
        } else {
            Err(Error::ElementOutOfRange { code, q: self.q })
        }
    }

    /// The element `c` of the prime subfield.
    pub fn from_int(&self, c: u64) -> FieldElement {
        FieldElement((c % self.p as u64) as u32)
    }

    pub fn automorphism(&self, exponent: u32) -> Result<Automorphism> {
        Automorphism::new(exponent, self.d)
    }

    pub fn automorphisms(&self) -> impl Iterator<Item = Automorphism> + '_ {
        (0..self.d).map(move |i| Automorphism { exponent: i, degree: self.d })
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        let mut c = a.0;
        (0..self.d)
            .map(|_| {
                let digit = c % self.p;
                c /= self.p;
                digit
            })
            .collect()
    }

    fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(FieldElement(a)), self.digits(FieldElement(b)));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let da = self.digits(FieldElement(a));
        let neg: Vec<u32> = da.iter().map(|x| (self.p - x) % self.p).collect();
        self.from_digits(&neg)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(FieldElement(a)), self.digits(FieldElement(b)));
        let p = self.p as u64;
        let mut prod = vec![0u32; 2 * self.d as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.from_digits(&r)
    }

    fn pow_slow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            n >>= 1;
        }
        acc
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.add[(a.0 * self.q + b.0) as usize]),
            None => FieldElement(self.add_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.neg[a.0 as usize]),
            None => FieldElement(self.neg_slow(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.mul[(a.0 * self.q + b.0) as usize]),
            None => FieldElement(self.mul_slow(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => FieldElement(t.inv[a.0 as usize]),
            // a^(q-2) = a^-1
            None => FieldElement(self.pow_slow(a.0, self.q as u64 - 2)),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `a^(p^i)` where `i` is the automorphism exponent.
    #[inline]
    pub fn frobenius(&self, a: FieldElement, aut: Automorphism) -> FieldElement {
        debug_assert_eq!(aut.degree, self.d);
        if aut.exponent == 0 {
            return a;
        }
        match &self.tables {
            Some(t) => FieldElement(t.frob[(aut.exponent * self.q + a.0) as usize]),
            None => {
                let mut x = a.0;
                for _ in 0..aut.exponent {
                    x = self.pow_slow(x, self.p as u64);
                }
                FieldElement(x)
            }
        }
    }

    /// Canonical spec string `p^d/c_0,…,c_d`.
    pub fn spec(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}/{}", self.p, self.d, coeffs.join(","))
    }

    /// Renders an element as a polynomial in `x`, e.g. `x+1`.
    pub fn display(&self, a: FieldElement) -> String {
        let digits = self.digits(a);
        let terms: Vec<String> = digits
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

/// Accepts `p^d`, `p^d/c_0,…,c_d`, or a bare prime power `q`.
impl FromStr for FieldCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFieldSpec(s.to_string());
        let s = s.trim();
        let (head, modulus) = match s.split_once('/') {
            Some((h, m)) => {
                let coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                (h, Some(coeffs))
            }
            None => (s, None),
        };
        let (p, d) = match head.split_once('^') {
            Some((p, d)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                d.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q = head.parse::<u64>().map_err(|_| bad())?;
                let (p, d) = prime_power(q).ok_or(Error::NotPrime(q))?;
                (p, d)
            }
        };
        FieldCtx::new(p, d, modulus.as_deref())
    }
}
