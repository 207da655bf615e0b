//! Table-driven arithmetic in GF(p^e) for odd p.
//!
//! Elements are encoded by their coefficient vector over GF(p) in the
//! polynomial basis, read as a base-p integer: `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`.
//! Hence `0` is the zero element and `1` the identity. Multiplication goes
//! through discrete exp/log tables for a fixed primitive element; addition
//! goes through a Zech logarithm table.

use std::fmt;

use serde::Serialize;

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

/// Default upper bound on the field order for which tables are built.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 22;

const NO_LOG: u32 = u32::MAX;

/// An element of a [`FieldDescriptor`], by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Neg,
    /// Raise the first operand to an integer exponent.
    Pow(i64),
}

/// A concrete realization of GF(p^e).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldDescriptor {
    p: u32,
    e: u32,
    order: u32,
    /// Monic irreducible modulus, ascending coefficients, length e + 1.
    modulus: Vec<u32>,
    /// exp[i] = g^i for 0 <= i < order - 1.
    exp: Vec<u32>,
    /// log[a] for nonzero a; NO_LOG at index 0.
    log: Vec<u32>,
    /// zech[i] = log(1 + g^i), NO_LOG when 1 + g^i = 0.
    zech: Vec<u32>,
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDescriptor")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish_non_exhaustive()
    }
}

impl FieldDescriptor {
    /// Builds GF(p^e) under the default table cap.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Self::with_cap(p, e, DEFAULT_TABLE_CAP)
    }

    /// Builds GF(q^2) for an odd prime power q.
    pub fn quadratic_over(q: u64) -> Result<Self> {
        let (p, e) = crate::arith::odd_prime_power(q)?;
        Self::new(p, 2 * e)
    }

    /// Builds GF(p^e), failing with [`Error::TableCap`] when p^e exceeds `cap`.
    ///
    /// The modulus is the smallest monic irreducible polynomial of degree e,
    /// ordering candidates by the base-p value of their lower coefficients.
    pub fn with_cap(p: u64, e: u32, cap: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = p
            .checked_pow(e)
            .filter(|&o| o <= cap && o <= u32::MAX as u64 / 2)
            .ok_or(Error::TableCap {
                order: p.saturating_pow(e),
                cap,
            })?;
        let p = p as u32;
        let order = order as u32;
        let ring = DigitRing::new(p, e, smallest_irreducible(p, e));
        let group = (order - 1) as u64;
        let group_primes = prime_factors(group);
        let generator = (1..order)
            .find(|&g| {
                group == 1 || group_primes.iter().all(|&l| ring.pow(g, group / l) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![NO_LOG; order as usize];
        let mut x = 1u32;
        for i in 0..group as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = ring.mul(x, generator);
        }
        debug_assert_eq!(x, 1);
        let zech = exp.iter().map(|&v| log[ring.add(1, v) as usize]).collect();

        Ok(FieldDescriptor {
            p,
            e,
            order,
            modulus: ring.modulus,
            exp,
            log,
            zech,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// Order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.order as u64 - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The subfield order q when this field is GF(q^2).
    pub fn subfield_order(&self) -> Option<u64> {
        (self.e % 2 == 0).then(|| (self.p as u64).pow(self.e / 2))
    }

    /// The fixed primitive element the tables are built on.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.exp.get(1).copied().unwrap_or(1))
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value < self.order as u64 {
            Ok(FieldElement(value as u32))
        } else {
            Err(Error::ForeignElement {
                value,
                order: self.order as u64,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    /// Coefficients over GF(p) of an element, ascending.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.0;
        (0..self.e)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// g^i for any integer i.
    pub fn exp(&self, i: i64) -> FieldElement {
        let n = self.group_order() as i64;
        FieldElement(self.exp[i.rem_euclid(n) as usize])
    }

    /// Discrete logarithm base the canonical generator; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u64> {
        match self.log[a.0 as usize] {
            NO_LOG => None,
            l => Some(l as u64),
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.group_order() as u32;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let diff = if lb >= la { lb - la } else { lb + n - la };
        match self.zech[diff as usize] {
            NO_LOG => FieldElement::ZERO,
            z => FieldElement(self.exp[((la as u64 + z as u64) % n as u64) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return a;
        }
        // -1 = g^((order-1)/2) in odd characteristic.
        let n = self.group_order();
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l + n / 2) % n) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.group_order();
        let l = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        FieldElement(self.exp[(l % n) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        match self.log(a) {
            None => Err(Error::ZeroInverse),
            Some(l) => Ok(self.exp(-(l as i64))),
        }
    }

    /// a^k for any integer k; negative k inverts the base first.
    pub fn pow(&self, a: FieldElement, k: i64) -> Result<FieldElement> {
        match self.log(a) {
            None if k > 0 => Ok(FieldElement::ZERO),
            None if k == 0 => Ok(FieldElement::ONE),
            None => Err(Error::ZeroInverse),
            Some(l) => {
                let n = self.group_order() as i128;
                let e = (l as i128 * k as i128).rem_euclid(n);
                Ok(FieldElement(self.exp[e as usize]))
            }
        }
    }

    /// a^(p^k), the k-th power of Frobenius.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        match self.log(a) {
            None => a,
            Some(l) => {
                let n = self.group_order() as u128;
                let f = crate::arith::modpow(self.p as u64, k as u64, n as u64) as u128;
                FieldElement(self.exp[(l as u128 * f % n) as usize])
            }
        }
    }

    /// The Galois conjugation a -> a^q of GF(q^2) over GF(q).
    pub fn conjugate(&self, a: FieldElement) -> Result<FieldElement> {
        if self.e % 2 != 0 {
            return Err(Error::NoConjugation(self.e));
        }
        Ok(self.frobenius(a, self.e / 2))
    }

    /// Checked binary/unary arithmetic; `b` is ignored for unary operations.
    pub fn arith(&self, op: ArithOp, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.element(a.0 as u64)?;
        self.element(b.0 as u64)?;
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Inv => self.inv(a),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Pow(k) => self.pow(a, k),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        let l = self.log(a)?;
        let n = self.group_order();
        Some(n / crate::arith::gcd(l, n))
    }

    /// The element of multiplicative order exactly `n` that is the least
    /// power of the canonical generator, namely g^((p^e - 1)/n).
    pub fn primitive_nth_root(&self, n: u64) -> Result<FieldElement> {
        let group = self.group_order();
        if n == 0 || group % n != 0 {
            return Err(Error::RootUnavailable {
                n,
                group_order: group,
            });
        }
        Ok(self.exp((group / n) as i64))
    }
}

/// Polynomial arithmetic over GF(p) modulo a fixed polynomial, on base-p encoded values.
/// Used only to bootstrap the tables.
struct DigitRing {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
}

impl DigitRing {
    fn new(p: u32, e: u32, modulus: Vec<u32>) -> Self {
        DigitRing { p, e, modulus }
    }

    fn digits(&self, mut v: u32) -> Vec<u32> {
        (0..self.e)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    fn value(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.value(&s)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Reduce by the monic modulus from the top degree down.
        for deg in (e..2 * e).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (k, &m) in self.modulus[..e].iter().enumerate() {
                let idx = deg - e + k;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
            prod[deg] = 0;
        }
        let d: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.value(&d)
    }

    fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }
}

/// Remainder of `f` modulo monic `h` over GF(p); both ascending.
fn poly_rem_mod_p(f: &[u32], h: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dh = h.len() - 1;
    while r.len() > dh {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dh;
        for (k, &hc) in h[..dh].iter().enumerate() {
            r[shift + k] = (r[shift + k] + (p64 - lead) * hc as u64 % p64) % p64;
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree 1..=e/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = f.len() - 1;
    for deg in 1..=e / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut h = Vec::with_capacity(deg + 1);
            let mut v = code;
            for _ in 0..deg {
                h.push((v % p as u64) as u32);
                v /= p as u64;
            }
            h.push(1);
            if poly_rem_mod_p(f, &h, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    (0..count)
        .map(|code| {
            let mut f = Vec::with_capacity(e as usize + 1);
            let mut v = code;
            for _ in 0..e {
                f.push((v % p as u64) as u32);
                v /= p as u64;
            }
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
