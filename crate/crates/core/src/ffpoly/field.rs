use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::arith::{factor_u64, is_prime};
use crate::error::{Error, Result};

use super::poly::PolyFq;

/// A field element, encoded as the integer `Σ c_i p^i` of its coordinates
/// in the power basis of `F_p[x]/(modulus)`. `0` and `1` are zero and one.
pub type Fe = u64;

/// Largest supported field size (exclusive).
pub const MAX_FIELD_SIZE: u64 = 1 << 32;

const TABLE_LIMIT: u64 = 1 << 20;

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    r: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: Fe,
    tables: Option<Tables>,
}

/// The finite field `F_{p^r}`. Cheap to clone; equality is by `(p, r)`
/// because the modulus is a deterministic function of them.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

/// Build `F_{p^r}`. The modulus is the lexicographically least monic
/// irreducible of degree `r` over `F_p`, comparing `(c_0, c_1, ...)` in order.
pub fn field_make(p: u64, r: u32) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidDegree("extension degree must be at least 1".into()));
    }
    let q = p
        .checked_pow(r)
        .filter(|&q| q < MAX_FIELD_SIZE)
        .ok_or(Error::FieldTooLarge { p, r })?;
    let modulus = if r == 1 {
        vec![0, 1]
    } else {
        least_irreducible(p, r as usize)
    };
    let mut inner = Inner {
        p,
        r,
        q,
        modulus,
        generator: 0,
        tables: None,
    };
    inner.generator = find_generator(&inner);
    if q <= TABLE_LIMIT {
        inner.tables = Some(build_tables(&inner));
    }
    Ok(Field(Arc::new(inner)))
}

fn least_irreducible(p: u64, r: usize) -> Vec<u64> {
    let prime = field_make(p, 1).expect("prime field");
    let total = p.pow(r as u32);
    for idx in 0..total {
        // c_0 is the most significant digit of idx.
        let mut coeffs = vec![0u64; r + 1];
        let mut rest = idx;
        for i in (0..r).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[r] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let candidate = PolyFq::new(&prime, coeffs.clone());
        if candidate.is_irreducible().unwrap_or(false) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn find_generator(f: &Inner) -> Fe {
    if f.q == 2 {
        return 1;
    }
    let factors = factor_u64(f.q - 1);
    (2..f.q)
        .find(|&g| factors.iter().all(|&(l, _)| slow_pow(f, g, (f.q - 1) / l) != 1))
        .expect("the multiplicative group is cyclic")
}

fn build_tables(f: &Inner) -> Tables {
    let n = (f.q - 1) as usize;
    let mut exp = vec![0u32; n];
    let mut log = vec![0u32; f.q as usize];
    let mut x = 1u64;
    for (i, e) in exp.iter_mut().enumerate() {
        *e = x as u32;
        log[x as usize] = i as u32;
        x = slow_mul(f, x, f.generator);
    }
    Tables { exp, log }
}

fn digits(f: &Inner, mut a: Fe) -> Vec<u64> {
    let mut d = vec![0u64; f.r as usize];
    for slot in d.iter_mut() {
        *slot = a % f.p;
        a /= f.p;
    }
    d
}

fn undigits(f: &Inner, d: &[u64]) -> Fe {
    d.iter().rev().fold(0u64, |acc, &c| acc * f.p + c)
}

fn slow_mul(f: &Inner, a: Fe, b: Fe) -> Fe {
    if f.r == 1 {
        return ((a as u128 * b as u128) % f.p as u128) as u64;
    }
    let p = f.p;
    let r = f.r as usize;
    let da = digits(f, a);
    let db = digits(f, b);
    let mut prod = vec![0u64; 2 * r - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (r..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..r {
            let m = f.modulus[i];
            prod[k - r + i] = (prod[k - r + i] + (p - c) * m) % p;
        }
    }
    undigits(f, &prod[..r])
}

fn slow_pow(f: &Inner, mut a: Fe, mut e: u64) -> Fe {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(f, acc, a);
        }
        a = slow_mul(f, a, a);
        e >>= 1;
    }
    acc
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.r
    }

    /// Number of elements `q = p^r`.
    pub fn size(&self) -> u64 {
        self.0.q
    }

    /// Coefficients of the defining modulus over `F_p`, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// The least generator of the multiplicative group (by encoding).
    pub fn generator(&self) -> Fe {
        self.0.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.0.q
    }

    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.0.p as i64) as u64
    }

    pub fn coordinates(&self, a: Fe) -> Vec<u64> {
        digits(&self.0, a)
    }

    pub fn from_coordinates(&self, c: &[u64]) -> Fe {
        let mut d = vec![0u64; self.0.r as usize];
        for (slot, &x) in d.iter_mut().zip(c) {
            *slot = x % self.0.p;
        }
        undigits(&self.0, &d)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let f = &*self.0;
        if f.r == 1 {
            let s = a + b;
            return if s >= f.p { s - f.p } else { s };
        }
        if f.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..f.r {
            let s = (a % f.p + b % f.p) % f.p;
            out += s * place;
            place *= f.p;
            a /= f.p;
            b /= f.p;
        }
        out
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let f = &*self.0;
        if f.r == 1 {
            return if a == 0 { 0 } else { f.p - a };
        }
        if f.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..f.r {
            let c = a % f.p;
            out += ((f.p - c) % f.p) * place;
            place *= f.p;
            a /= f.p;
        }
        out
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.0.tables {
            Some(t) => {
                let n = self.0.q - 1;
                let s = t.log[a as usize] as u64 + t.log[b as usize] as u64;
                t.exp[(s % n) as usize] as u64
            }
            None => slow_mul(&self.0, a, b),
        }
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.0.q - 1;
        match &self.0.tables {
            Some(t) => {
                let l = t.log[a as usize] as u128 * (e % n) as u128 % n as u128;
                t.exp[l as usize] as u64
            }
            None => slow_pow(&self.0, a, e % n),
        }
    }

    /// `a^e` for an exponent given as a big integer.
    pub fn pow_u128(&self, a: Fe, e: u128) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u128;
        let r = (e % n) as u64;
        if r == 0 {
            1
        } else {
            self.pow(a, r)
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0.q - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `ζ_n := g^{(q-1)/n}` for the fixed generator `g`.
    pub fn root_of_unity(&self, n: u64) -> Result<Fe> {
        self.check_roots_of_unity(n)?;
        Ok(self.pow(self.0.generator, (self.0.q - 1) / n))
    }

    pub fn check_roots_of_unity(&self, n: u64) -> Result<()> {
        if n == 0 || (self.0.q - 1) % n != 0 {
            return Err(Error::NoRootsOfUnity { n, q: self.0.q });
        }
        Ok(())
    }

    /// For `x ∈ μ_n`, the exponent `j` with `x = ζ_n^j`; `None` otherwise.
    pub fn mu_exponent(&self, x: Fe, n: u64) -> Option<u64> {
        if x == 0 || (self.0.q - 1) % n != 0 || self.pow(x, n) != 1 {
            return None;
        }
        let step = (self.0.q - 1) / n;
        if let Some(t) = &self.0.tables {
            return Some(t.log[x as usize] as u64 / step);
        }
        let zeta = self.pow(self.0.generator, step);
        let mut cur = 1;
        for j in 0..n {
            if cur == x {
                return Some(j);
            }
            cur = self.mul(cur, zeta);
        }
        None
    }

    /// Class of a nonzero `x` in `k*/(k*)^ℓ`, as the exponent `j mod ℓ`
    /// with `x ≡ g^j`. Requires `ℓ | q - 1`.
    pub fn class_mod_powers(&self, x: Fe, l: u64) -> Result<u64> {
        if x == 0 {
            return Err(Error::ZeroInput("class of zero"));
        }
        self.check_roots_of_unity(l)?;
        let y = self.pow(x, (self.0.q - 1) / l);
        Ok(self.mu_exponent(y, l).expect("power lands in μ_ℓ"))
    }

    pub fn is_lth_power(&self, x: Fe, l: u64) -> Result<bool> {
        if x == 0 {
            return Ok(true);
        }
        Ok(self.class_mod_powers(x, l)? == 0)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.r == other.0.r)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.r.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.r == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.r)
        }
    }
}
