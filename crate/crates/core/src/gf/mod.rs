//! Arithmetic in `F_p` and `F_{p^h}`.
//!
//! Elements are stored as their power-basis coefficient vector packed into a
//! single integer `c_0 + c_1 p + ... + c_{h-1} p^{h-1}`. With this packing the
//! prime subfield is exactly the codes `0..p`, and the integer order on codes
//! extends the usual order on `{0, ..., p-1}`.
//!
//! A [`FieldCtx`] is immutable once built and can be shared freely between
//! threads.

mod fp_poly;
pub mod poly;

use std::fmt;

use thiserror::Error;

pub use fp_poly::is_irreducible;
pub use poly::UniPoly;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad degree {0}: extension degree must be at least 1")]
    BadDegree(u32),
    #[error("field order {0} exceeds the supported maximum of 2^20")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element belongs to F_{found}, expected F_{expected}")]
    ForeignElement { expected: u32, found: u32 },
    #[error("element {0} lies outside the prime subfield")]
    NotInPrimeSubfield(u32),
    #[error("coefficient list has length {found}, expected {expected}")]
    BadCoefficients { expected: usize, found: usize },
    #[error("coefficient {0} is not a residue modulo p")]
    BadResidue(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

/// An element of some `F_q`.
///
/// `code` is the packed power-basis representation, `order` tags the field
/// the element came from so that mixing contexts is caught.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    code: u32,
    order: u32,
}

impl Elem {
    /// Packed coefficient code in `0..q`.
    #[inline]
    pub fn code(self) -> u32 {
        self.code
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.code == 0
    }

    #[inline]
    pub fn field_order(self) -> u32 {
        self.order
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.code)
    }
}

/// The field `F_q`, `q = p^h`, with a fixed irreducible modulus.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    h: u32,
    q: u32,
    /// Monic modulus, `h + 1` coefficients, lowest degree first.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a primitive element `g`, doubled to skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    /// Builds `F_{p^h}` using the lexicographically smallest monic irreducible
    /// modulus of degree `h` (coefficients compared lowest degree first).
    pub fn new(p: u64, h: u32) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if h < 1 {
            return Err(GfError::BadDegree(h));
        }
        let q = (p as u128).pow(h);
        if q > MAX_ORDER as u128 {
            return Err(GfError::TooLarge(q.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let modulus = fp_poly::smallest_irreducible(p, h as usize);
        Ok(Self::build(p, h, modulus))
    }

    /// `F_q` for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self, GfError> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(GfError::NotPrimePower(q))?;
        let mut r = q;
        let mut h = 0;
        while r.is_multiple_of(p) {
            r /= p;
            h += 1;
        }
        if r != 1 {
            return Err(GfError::NotPrimePower(q));
        }
        Self::new(p, h)
    }

    /// Shorthand for the prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, GfError> {
        Self::new(p, 1)
    }

    fn build(p: u32, h: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(h);
        let mut ctx = FieldCtx {
            p,
            h,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let g = ctx.find_primitive();
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = ctx.slow_mul(x, g);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        ctx.exp = exp;
        ctx.log = log;
        ctx
    }

    fn find_primitive(&self) -> u32 {
        let n = (self.q - 1) as u64;
        if n == 1 {
            return 1;
        }
        let factors = prime_factors(n);
        (2..self.q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, n / r) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut out = vec![0; self.h as usize];
        for d in out.iter_mut() {
            *d = code % self.p;
            code /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    /// Multiplication by reducing modulo the modulus; used before the log
    /// tables exist.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let x = self.digits(a);
        let y = self.digits(b);
        let prod = fp_poly::mul(self.p, &x, &y);
        let mut r = fp_poly::rem(self.p, &prod, &self.modulus);
        r.resize(self.h as usize, 0);
        self.pack(&r)
    }

    fn slow_pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, a);
            }
            a = self.slow_mul(a, a);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn h(&self) -> u32 {
        self.h
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    fn wrap(&self, code: u32) -> Elem {
        Elem {
            code,
            order: self.q,
        }
    }

    #[inline]
    fn own(&self, a: Elem) -> u32 {
        assert_eq!(
            a.order, self.q,
            "element of F_{} used in F_{}",
            a.order, self.q
        );
        a.code
    }

    /// Checks that `a` belongs to this context.
    pub fn ensure(&self, a: Elem) -> Result<Elem, GfError> {
        if a.order == self.q && a.code < self.q {
            Ok(a)
        } else {
            Err(GfError::ForeignElement {
                expected: self.q,
                found: a.order,
            })
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.ensure(a).is_ok()
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.wrap(0)
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.wrap(1)
    }

    /// Element with the given packed code. Panics when `code >= q`.
    #[inline]
    pub fn elem(&self, code: u32) -> Elem {
        assert!(code < self.q, "code {code} out of range for F_{}", self.q);
        self.wrap(code)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        self.wrap(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element from `h` power-basis coefficients, lowest degree first.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem, GfError> {
        if coeffs.len() != self.h as usize {
            return Err(GfError::BadCoefficients {
                expected: self.h as usize,
                found: coeffs.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(GfError::BadResidue(bad as u64));
        }
        Ok(self.wrap(self.pack(coeffs)))
    }

    /// Power-basis coefficients of `a`, lowest degree first.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        self.digits(self.own(a))
    }

    /// All field elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(move |c| self.wrap(c))
    }

    /// The generator of the multiplicative group used for the log tables.
    pub fn primitive(&self) -> Elem {
        self.wrap(if self.q == 2 { 1 } else { self.exp[1] })
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (a, b) = (self.own(a), self.own(b));
        self.wrap(self.add_codes(a, b))
    }

    #[inline]
    fn add_codes(&self, a: u32, b: u32) -> u32 {
        if self.h == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut scale = 1;
            while a > 0 || b > 0 {
                let mut d = a % self.p + b % self.p;
                if d >= self.p {
                    d -= self.p;
                }
                out += d * scale;
                scale *= self.p;
                a /= self.p;
                b /= self.p;
            }
            out
        }
    }

    #[inline]
    fn neg_code(&self, a: u32) -> u32 {
        if self.h == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            let mut a = a;
            let mut out = 0;
            let mut scale = 1;
            while a > 0 {
                let d = a % self.p;
                if d != 0 {
                    out += (self.p - d) * scale;
                }
                scale *= self.p;
                a /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let a = self.own(a);
        self.wrap(self.neg_code(a))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let (a, b) = (self.own(a), self.own(b));
        self.wrap(self.add_codes(a, self.neg_code(b)))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (a, b) = (self.own(a), self.own(b));
        if a == 0 || b == 0 {
            return self.zero();
        }
        let i = self.log[a as usize] + self.log[b as usize];
        self.wrap(self.exp[i as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, GfError> {
        let a = self.own(a);
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[a as usize];
        Ok(self.wrap(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Scales `a` by the integer `k` (repeated addition).
    pub fn scale(&self, a: Elem, k: i64) -> Elem {
        self.mul(a, self.from_int(k))
    }

    #[inline]
    pub fn in_prime_subfield(&self, a: Elem) -> bool {
        self.own(a) < self.p
    }

    /// Lift of a prime-subfield element to `{0, ..., p-1}`.
    pub fn nu(&self, a: Elem) -> Result<u32, GfError> {
        self.ensure(a)?;
        if a.code < self.p {
            Ok(a.code)
        } else {
            Err(GfError::NotInPrimeSubfield(a.code))
        }
    }

    /// Writes `a` as `h` space separated residues.
    pub fn format_elem(&self, a: Elem) -> String {
        self.coeffs(a)
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The header line `field p h m_0 ... m_h`.
    pub fn header(&self) -> String {
        let mut s = format!("field {} {}", self.p, self.h);
        for m in &self.modulus {
            s.push_str(&format!(" {m}"));
        }
        s
    }
}
