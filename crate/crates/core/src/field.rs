//! Exact arithmetic in GF(p^t).
//!
//! Elements are stored as their base-p integer encoding: the polynomial
//! `c0 + c1 x + ... + c_{t-1} x^{t-1}` is the integer `c0 + c1 p + ... + c_{t-1} p^{t-1}`.
//! The same encoding is used in every file format of this crate.
//!
//! Multiplication goes through log/antilog tables built from a primitive
//! element; with a Conway modulus that element is `x` itself, which makes the
//! embeddings of subfields compatible across the whole lattice.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// Full addition tables are only materialised up to this order.
const ADD_TABLE_MAX: u32 = 1024;

const CONWAY_TABLE: &str = include_str!("../data/conway.txt");

/// Version tag of the shipped Conway table (first line of the data file).
pub fn conway_table_version() -> &'static str {
    CONWAY_TABLE
        .lines()
        .next()
        .and_then(|l| l.strip_prefix("# "))
        .unwrap_or("conway-table unknown")
}

/// Looks up the Conway polynomial for GF(p^t) in the shipped table.
pub fn conway_polynomial(p: u32, t: u32) -> Option<Vec<u32>> {
    CONWAY_TABLE
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .filter_map(|l| {
            let nums: Vec<u32> = l.split_whitespace().map(|s| s.parse().ok()).collect::<Option<_>>()?;
            (nums.len() >= 3 && nums[0] == p && nums[1] == t).then(|| nums[2..].to_vec())
        })
        .next()
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
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
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Polynomial arithmetic over GF(p) on coefficient vectors (constant term first).
/// Used only while building tables and testing irreducibility.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem(&prod, m, p)
    }
}

/// GF(p^t) with an explicit monic modulus.
pub struct Field {
    p: u32,
    t: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Vec<u32>,
    pow_p: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("t", &self.t)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.t == other.t && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl Field {
    /// GF(p^t) with the Conway polynomial from the shipped table.
    pub fn conway(p: u32, t: u32) -> Result<Arc<Field>> {
        Self::new(p, t, None)
    }

    /// Builds GF(p^t). Without an explicit modulus the Conway table supplies one.
    pub fn new(p: u32, t: u32, modulus: Option<Vec<u32>>) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if t == 0 {
            return Err(Error::Range("field degree must be positive".into()));
        }
        let q64 = (p as u64).checked_pow(t).filter(|&q| q <= MAX_ORDER);
        let q = match q64 {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge(format!("{p}^{t} exceeds 2^20"))),
        };
        let modulus = match modulus {
            Some(m) => m,
            None => conway_polynomial(p, t).ok_or(Error::NoTableEntry { p, t })?,
        };
        if modulus.len() != t as usize + 1 {
            return Err(Error::BadModulus(format!("expected degree {t}, got {} coefficients", modulus.len())));
        }
        if modulus[t as usize] != 1 {
            return Err(Error::BadModulus("modulus is not monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus(format!("coefficient out of range for p={p}")));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReduciblePolynomial(p));
        }

        let digits = |mut v: u32| -> Vec<u32> {
            let mut d = Vec::with_capacity(t as usize);
            for _ in 0..t {
                d.push(v % p);
                v /= p;
            }
            poly::trim(&mut d);
            d
        };
        let mut pow_p = vec![1u32; t as usize + 1];
        for i in 1..=t as usize {
            pow_p[i] = pow_p[i - 1] * p;
        }
        let encode = |d: &[u32]| -> u32 { d.iter().enumerate().map(|(i, &c)| c * pow_p[i]).sum() };

        // The root of the modulus (x itself when t > 1); search only when it is not primitive.
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let is_primitive = |g: u32| -> bool {
            let gd = digits(g);
            factors.iter().all(|&r| {
                let e = order / r;
                poly_pow(&gd, e, &modulus, p) != vec![1]
            }) && poly_pow(&gd, order, &modulus, p) == vec![1]
        };
        let root = if t == 1 { (p - modulus[0]) % p } else { p };
        let generator = if root != 0 && is_primitive(root) {
            root
        } else {
            (1..q).find(|&g| is_primitive(g)).expect("finite field has a primitive element")
        };

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let gd = digits(generator);
        let mut cur = vec![1u32];
        for i in 0..order as u32 {
            let v = encode(&cur);
            exp.push(v);
            log[v as usize] = i;
            cur = poly::mulmod(&cur, &gd, &modulus, p);
        }

        let add_digits = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a, b);
            let mut r = 0;
            for i in 0..t as usize {
                r += ((a % p + b % p) % p) * pow_p[i];
                a /= p;
                b /= p;
            }
            r
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let mut a = a;
                let mut r = 0;
                for i in 0..t as usize {
                    r += ((p - a % p) % p) * pow_p[i];
                    a /= p;
                }
                r
            })
            .collect();
        let add = if q <= ADD_TABLE_MAX {
            let mut tab = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    tab[(a * q + b) as usize] = add_digits(a, b);
                }
            }
            tab
        } else {
            Vec::new()
        };

        Ok(Arc::new(Field { p, t, q, modulus, generator, exp, log, neg, add, pow_p }))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.t
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The primitive element the log tables are built on (`x` for Conway moduli).
    pub fn generator(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if !self.add.is_empty() {
            return self.add[(a * self.q + b) as usize];
        }
        if self.t == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut r = 0;
        for i in 0..self.t as usize {
            r += ((a % self.p + b % self.p) % self.p) * self.pow_p[i];
            a /= self.p;
            b /= self.p;
        }
        r
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        let m = self.q - 1;
        self.exp[(if s >= m { s - m } else { s }) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let m = self.q - 1;
        Ok(self.exp[((m - self.log[a as usize]) % m) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let m = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % m)) % m) as usize]
    }

    /// `g^i` for the table generator.
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log with respect to [`Field::generator`]; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Coefficients of the element over GF(p), constant term first.
    pub fn coefficients(&self, mut a: u32) -> Vec<u32> {
        (0..self.t)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() > self.t as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Range(format!("not an element of GF({})", self.q)));
        }
        Ok(coeffs.iter().enumerate().map(|(i, &c)| c * self.pow_p[i]).sum())
    }

    /// Checked view of an encoded value as an element of this field.
    pub fn element(&self, value: u32) -> Result<FieldElement<'_>> {
        if value >= self.q {
            return Err(Error::Range(format!("{value} is not an element of GF({})", self.q)));
        }
        Ok(FieldElement { field: self, value })
    }

    pub fn subfield(&self, e: u32) -> Result<Subfield> {
        Subfield::new(self, e)
    }

    /// True iff `a^(p^e) = a`.
    pub fn in_subfield(&self, a: u32, sub: &Subfield) -> Result<bool> {
        if sub.e == 0 || self.t % sub.e != 0 {
            return Err(Error::BadDivisor { e: sub.e, t: self.t });
        }
        Ok(self.pow(a, sub.p0 as u64) == a)
    }

    /// All elements of the subfield GF(p^e), in increasing encoding.
    pub fn subfield_elements(&self, sub: &Subfield) -> Result<Vec<u32>> {
        let mut out = Vec::with_capacity(sub.p0 as usize);
        for a in 0..self.q {
            if self.in_subfield(a, sub)? {
                out.push(a);
            }
        }
        Ok(out)
    }

    /// Trace onto GF(p^e): `a + a^(p^e) + ... + a^(p^(e(h-1)))`.
    pub fn trace(&self, a: u32, sub: &Subfield) -> u32 {
        let h = self.t / sub.e;
        let mut acc = 0;
        let mut cur = a;
        for _ in 0..h {
            acc = self.add(acc, cur);
            cur = self.pow(cur, sub.p0 as u64);
        }
        acc
    }
}

fn poly_pow(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut b = poly::rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly::mulmod(&result, &b, m, p);
        }
        b = poly::mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

/// Trial division by every monic polynomial of degree at most deg/2.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    if deg == 1 {
        return true;
    }
    if modulus[0] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                div.push((v % p as u64) as u32);
                v /= p as u64;
            }
            div.push(1);
            if poly::rem(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The subfield GF(p^e) of GF(p^t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subfield {
    pub e: u32,
    pub p0: u32,
}

impl Subfield {
    pub fn new(field: &Field, e: u32) -> Result<Subfield> {
        if e == 0 || field.t % e != 0 {
            return Err(Error::BadDivisor { e, t: field.t });
        }
        Ok(Subfield { e, p0: field.p.pow(e) })
    }

    /// `h = t / e`, the degree of GF(p^t) over this subfield.
    pub fn index_in(&self, field: &Field) -> u32 {
        field.t / self.e
    }
}

/// An element tied to its field. The arithmetic here is checked; the hot
/// paths of the crate work on raw encodings through [`Field`] instead.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f Field,
    value: u32,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && (std::ptr::eq(self.field, other.field) || self.field == other.field)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

impl<'f> FieldElement<'f> {
    pub fn value(&self) -> u32 {
        self.value
    }
    pub fn field(&self) -> &'f Field {
        self.field
    }

    fn same_field(&self, other: &FieldElement<'_>) -> Result<()> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.same_field(other)?;
        Ok(FieldElement { field: self.field, value: self.field.add(self.value, other.value) })
    }

    pub fn mul(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.same_field(other)?;
        Ok(FieldElement { field: self.field, value: self.field.mul(self.value, other.value) })
    }

    pub fn inv(&self) -> Result<FieldElement<'f>> {
        Ok(FieldElement { field: self.field, value: self.field.inv(self.value)? })
    }

    pub fn pow(&self, e: u64) -> FieldElement<'f> {
        FieldElement { field: self.field, value: self.field.pow(self.value, e) }
    }

    /// Dispatches one of the four basic operations. `other` is required for
    /// the binary ones.
    pub fn apply(&self, op: FieldOp, other: Option<&FieldElement<'_>>) -> Result<FieldElement<'f>> {
        match (op, other) {
            (FieldOp::Add, Some(b)) => self.add(b),
            (FieldOp::Mul, Some(b)) => self.mul(b),
            (FieldOp::Inv, _) => self.inv(),
            (FieldOp::Pow(e), _) => Ok(self.pow(e)),
            _ => Err(Error::BadParams("binary operation needs a second operand".into())),
        }
    }

    pub fn in_subfield(&self, sub: &Subfield) -> Result<bool> {
        self.field.in_subfield(self.value, sub)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_fields_from_table() {
        let f9 = Field::conway(3, 2).unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(f9.modulus(), &[2, 2, 1]);
        let f49 = Field::conway(7, 2).unwrap();
        assert_eq!(f49.order(), 49);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(3, 2, Some(vec![2, 0, 1])).unwrap_err(), Error::ReduciblePolynomial(3));
        assert!(matches!(Field::new(3, 2, Some(vec![1, 1])), Err(Error::BadModulus(_))));
        assert!(matches!(Field::new(2, 19, None), Err(Error::NoTableEntry { p: 2, t: 19 })));
        assert!(matches!(Field::new(2, 21, None), Err(Error::FieldTooLarge(_))));
    }

    #[test]
    fn x_squared_reduces_by_modulus() {
        // x^2 + 2x + 2 = 0 over GF(3), so x^2 = x + 1: encoding 1*1 + 1*3 = 4.
        let f = Field::conway(3, 2).unwrap();
        let x = f.element(3).unwrap();
        assert_eq!(x.mul(&x).unwrap().value(), 4);
    }

    #[test]
    fn inverses_and_frobenius_gf9() {
        let f = Field::conway(3, 2).unwrap();
        for a in 1..9 {
            let e = f.element(a).unwrap();
            assert_eq!(e.mul(&e.inv().unwrap()).unwrap().value(), 1);
        }
        for a in 0..9 {
            assert_eq!(f.pow(a, 9), a);
        }
        assert_eq!(f.element(0).unwrap().inv().unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn spec_mismatch_detected() {
        let f9 = Field::conway(3, 2).unwrap();
        let f27 = Field::conway(3, 3).unwrap();
        let a = f9.element(1).unwrap();
        let b = f27.element(1).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), Error::SpecMismatch);
        assert_eq!(a.apply(FieldOp::Mul, Some(&b)).unwrap_err(), Error::SpecMismatch);
    }

    #[test]
    fn subfield_membership() {
        let f = Field::conway(3, 2).unwrap();
        let prime = f.subfield(1).unwrap();
        let whole = f.subfield(2).unwrap();
        assert!(f.in_subfield(1, &prime).unwrap());
        // x is primitive for a Conway modulus; x^3 != x.
        let g = f.generator();
        assert_ne!(f.pow(g, 3), g);
        assert!(!f.in_subfield(g, &prime).unwrap());
        for a in 0..9 {
            assert!(f.in_subfield(a, &whole).unwrap());
        }
        assert_eq!(f.subfield(3).unwrap_err(), Error::BadDivisor { e: 3, t: 2 });
        assert_eq!(f.in_subfield(1, &Subfield { e: 4, p0: 81 }).unwrap_err(), Error::BadDivisor { e: 4, t: 2 });
    }

    #[test]
    fn non_conway_modulus_still_works() {
        // x^2 + 1 is irreducible over GF(3) but x has order 4, so the generator search kicks in.
        let f = Field::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        assert_ne!(f.generator(), 3);
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.pow(a, 8), 1);
        }
    }

    #[test]
    fn large_field_without_add_table() {
        let f = Field::conway(2, 11).err();
        assert!(f.is_some()); // not in table
        let f = Field::conway(3, 7).unwrap(); // 2187 > add-table limit
        for a in [1u32, 5, 100, 2186] {
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.sub(f.add(a, 7), 7), a);
        }
    }

    #[test]
    fn trace_lands_in_subfield() {
        let f = Field::conway(7, 2).unwrap();
        let sub = f.subfield(1).unwrap();
        for a in 0..49 {
            assert!(f.in_subfield(f.trace(a, &sub), &sub).unwrap());
        }
    }
}
