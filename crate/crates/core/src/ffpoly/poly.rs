use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::field::{Fe, Field};

/// Dense univariate polynomial over a finite field, coefficients low degree
/// first, with no trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone)]
pub struct PolyFq {
    field: Field,
    coeffs: Vec<Fe>,
}

impl PolyFq {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| c < field.size()));
        PolyFq {
            field: field.clone(),
            coeffs,
        }
    }

    /// Build from integer coefficients reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: &Field, c: Fe) -> Self {
        Self::new(field, vec![c])
    }

    /// The variable `t`.
    pub fn var(field: &Field) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn monomial(field: &Field, c: Fe, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Self::new(field, v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// have already excluded zero.
    pub(crate) fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading_coeff()).expect("nonzero");
        self.scale(inv)
    }

    pub fn scale(&self, c: Fe) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "field mismatch");
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, v)
    }

    fn sub_impl(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "field mismatch");
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, v)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "field mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Self::new(f, v)
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        self.check_field(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        if self.coeffs.len() < b.coeffs.len() {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv = f.inv(b.leading_coeff())?;
        let db = b.deg();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0; self.coeffs.len() - db];
        for k in (0..quo.len()).rev() {
            let c = f.mul(rem[k + db], inv);
            quo[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, bj));
            }
        }
        rem.truncate(db);
        Ok((Self::new(f, quo), Self::new(f, rem)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divrem(b)?.1)
    }

    /// Division that must be exact.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; errors when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroInput("gcd(0, 0)"));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroInput("gcd(0, 0)"));
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.leading_coeff())?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Result<Self> {
        let (g, s, _) = self.rem(m)?.ext_gcd(m)?;
        if !g.is_one() {
            return Err(Error::NotCoprime("element is not invertible modulo m".into()));
        }
        s.rem(m)
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Result<Self> {
        (self * other).rem(m)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_mod(&self, e: u128, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(&self.field).rem(m)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.characteristic()) as i64)))
            .collect();
        Self::new(f, v)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Substitute `t ↦ g(t)`.
    pub fn compose(&self, g: &Self) -> Self {
        let f = &self.field;
        let mut acc = Self::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(f, c);
        }
        acc
    }

    /// Apply a map to every coefficient (e.g. a field embedding).
    pub fn map_coeffs(&self, target: &Field, map: impl Fn(Fe) -> Fe) -> Self {
        Self::new(target, self.coeffs.iter().map(|&c| map(c)).collect())
    }

    /// Resultant `Res(self, other)`; for monic `self` this is `∏ other(θ)`
    /// over the roots `θ` of `self`.
    pub fn resultant(&self, other: &Self) -> Result<Fe> {
        self.check_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(0);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc: Fe = 1;
        loop {
            let da = a.deg();
            let db = b.deg();
            if db == 0 {
                return Ok(f.mul(acc, f.pow(b.leading_coeff(), da as u64)));
            }
            if da == 0 {
                return Ok(f.mul(acc, f.pow(a.leading_coeff(), db as u64)));
            }
            // Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(b, a mod b)
            let r = a.rem(&b)?;
            if r.is_zero() {
                return Ok(0);
            }
            let dr = r.deg();
            if (da * db) % 2 == 1 {
                acc = f.neg(acc);
            }
            acc = f.mul(acc, f.pow(b.leading_coeff(), (da - dr) as u64));
            a = b;
            b = r;
        }
    }

    /// Canonical order: by degree, then coefficients from the top down.
    /// Monic polynomials of a fixed degree are ordered by their integer
    /// encoding `Σ c_i q^i`.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Index of a polynomial of degree `< n` as `Σ c_i q^i`.
    pub fn encode(&self) -> u128 {
        let q = self.field.size() as u128;
        self.coeffs.iter().rev().fold(0u128, |acc, &c| acc * q + c as u128)
    }

    pub fn decode(field: &Field, mut code: u128, len: usize) -> Self {
        let q = field.size() as u128;
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push((code % q) as Fe);
            code /= q;
        }
        Self::new(field, v)
    }

    /// All monic polynomials of degree exactly `n`, in canonical order.
    pub fn monics_of_degree(field: &Field, n: usize) -> impl Iterator<Item = PolyFq> + '_ {
        let q = field.size() as u128;
        let count = q.pow(n as u32);
        (0..count).map(move |code| {
            let mut v = Self::decode(field, code, n).coeffs;
            v.resize(n, 0);
            v.push(1);
            Self::new(field, v)
        })
    }
}

impl PartialEq for PolyFq {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for PolyFq {}

impl Hash for PolyFq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for PolyFq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyFq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_canonical(other)
    }
}

impl<'a> Add<&'a PolyFq> for &'a PolyFq {
    type Output = PolyFq;
    fn add(self, rhs: &'a PolyFq) -> PolyFq {
        self.add_impl(rhs)
    }
}

impl<'a> Sub<&'a PolyFq> for &'a PolyFq {
    type Output = PolyFq;
    fn sub(self, rhs: &'a PolyFq) -> PolyFq {
        self.sub_impl(rhs)
    }
}

impl<'a> Mul<&'a PolyFq> for &'a PolyFq {
    type Output = PolyFq;
    fn mul(self, rhs: &'a PolyFq) -> PolyFq {
        self.mul_impl(rhs)
    }
}

impl Neg for &PolyFq {
    type Output = PolyFq;
    fn neg(self) -> PolyFq {
        let f = &self.field;
        PolyFq::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl fmt::Debug for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Long division over `F_p` written out independently, used as a test oracle.
#[cfg(test)]
pub(crate) fn naive_divrem_prime(a: &[i64], b: &[i64], p: i64) -> (Vec<i64>, Vec<i64>) {
    let inv = |x: i64| (1..p).find(|y| (x * y).rem_euclid(p) == 1).unwrap();
    let mut r: Vec<i64> = a.iter().map(|c| c.rem_euclid(p)).collect();
    let b: Vec<i64> = b.iter().map(|c| c.rem_euclid(p)).collect();
    let db = b.len() - 1;
    let lc_inv = inv(b[db]);
    let mut q = vec![0i64; a.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = (r[r.len() - 1] * lc_inv).rem_euclid(p);
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] - c * bj).rem_euclid(p);
        }
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    while q.last() == Some(&0) {
        q.pop();
    }
    (q, r)
}
