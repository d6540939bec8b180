//! Exact arithmetic in `Q(ζ_ℓ) = Q[x]/Φ_ℓ(x)` for a prime `ℓ`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An element `Σ c_i ζ^i`, `0 ≤ i < ℓ - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    l: usize,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})ζ^{i}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CycNum {
    /// Reduce a coefficient vector of any length modulo `Φ_ℓ`.
    pub fn from_coeffs(l: usize, c: Vec<BigRational>) -> Self {
        let mut full = vec![BigRational::zero(); l];
        for (i, x) in c.into_iter().enumerate() {
            full[i % l] += x;
        }
        // ζ^{ℓ-1} = -(1 + ζ + ... + ζ^{ℓ-2})
        let top = full.pop().expect("ℓ ≥ 2");
        for x in full.iter_mut() {
            *x -= &top;
        }
        CycNum { l, coeffs: full }
    }

    pub fn from_rational(l: usize, r: BigRational) -> Self {
        Self::from_coeffs(l, vec![r])
    }

    pub fn from_int(l: usize, n: i64) -> Self {
        Self::from_rational(l, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(l: usize) -> Self {
        Self::from_int(l, 0)
    }

    pub fn one(l: usize) -> Self {
        Self::from_int(l, 1)
    }

    /// `ζ_ℓ^k`.
    pub fn zeta_pow(l: usize, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); l];
        c[k % l] = BigRational::one();
        Self::from_coeffs(l, c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        CycNum { l: self.l, coeffs: c }
    }

    pub fn neg(&self) -> Self {
        CycNum {
            l: self.l,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut c = vec![BigRational::zero(); self.l];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[(i + j) % self.l] += a * b;
            }
        }
        Self::from_coeffs(self.l, c)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycNum {
            l: self.l,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.l);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The Galois conjugate `ζ ↦ ζ^k`.
    pub fn conjugate(&self, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); self.l];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[(i * k) % self.l] += a;
        }
        Self::from_coeffs(self.l, c)
    }

    pub fn norm(&self) -> BigRational {
        let mut acc = self.clone();
        for k in 2..self.l {
            acc = acc.mul(&self.conjugate(k));
        }
        acc.as_rational().expect("norm is rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut others = Self::one(self.l);
        for k in 2..self.l {
            others = others.mul(&self.conjugate(k));
        }
        let n = self.mul(&others).as_rational().expect("norm is rational");
        Ok(others.scale(&n.recip()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }
}
