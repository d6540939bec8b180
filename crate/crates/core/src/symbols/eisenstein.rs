//! Eisenstein integers `Z[ω]`, `ω² + ω + 1 = 0`, their factorization and the
//! cubic residue symbol.

use std::fmt;

use serde::Serialize;

use crate::arith::{factor_u64, is_prime, pow_mod};
use crate::error::{Error, Result};

use super::SymbolValue;

/// `a + bω`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

impl fmt::Debug for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}ω", self.a, self.b)
    }
}

impl EisensteinInt {
    pub const fn new(a: i64, b: i64) -> Self {
        EisensteinInt { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        EisensteinInt { a, b: 0 }
    }

    pub const fn omega() -> Self {
        EisensteinInt { a: 0, b: 1 }
    }

    /// `λ = 1 - ω`.
    pub const fn lambda() -> Self {
        EisensteinInt { a: 1, b: -1 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }

    pub fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }

    pub fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }

    pub fn mul(self, o: Self) -> Self {
        // (a + bω)(c + dω) = ac - bd + (ad + bc - bd)ω
        let (a, b, c, d) = (self.a, self.b, o.a, o.b);
        Self::new(a * c - b * d, a * d + b * c - b * d)
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate `a + bω² = (a - b) - bω`.
    pub fn conj(self) -> Self {
        Self::new(self.a - self.b, -self.b)
    }

    pub fn norm(self) -> i64 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    pub fn units() -> [Self; 6] {
        [
            Self::new(1, 0),
            Self::new(-1, 0),
            Self::new(0, 1),
            Self::new(0, -1),
            Self::new(-1, -1),
            Self::new(1, 1),
        ]
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    pub fn coprime_to_lambda(&self) -> bool {
        self.norm() % 3 != 0
    }

    /// Reduction modulo a rational integer `m`, coordinates in `[0, m)`.
    pub fn reduce(self, m: i64) -> Self {
        Self::new(self.a.rem_euclid(m), self.b.rem_euclid(m))
    }

    /// Canonical associate: the primary one (`≡ 2 mod 3`) when coprime to
    /// `λ`, otherwise the lexicographically least `(a, b)` with `a > 0`.
    pub fn canonical(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let assoc = Self::units().map(|u| self.mul(u));
        if self.coprime_to_lambda() {
            *assoc
                .iter()
                .find(|x| x.a.rem_euclid(3) == 2 && x.b.rem_euclid(3) == 0)
                .expect("exactly one primary associate")
        } else {
            *assoc.iter().filter(|x| x.a > 0).min().expect("some associate has a > 0")
        }
    }

    /// Nearest-integer quotient and remainder with `N(r) < N(b)`.
    pub fn divrem(self, o: Self) -> Result<(Self, Self)> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = o.norm();
        let x = self.mul(o.conj());
        let round = |v: i64| (2 * v + n).div_euclid(2 * n);
        let q = Self::new(round(x.a), round(x.b));
        Ok((q, self.sub(q.mul(o))))
    }

    pub fn divides(&self, other: Self) -> bool {
        !self.is_zero() && other.divrem(*self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    pub fn div_exact(self, o: Self) -> Result<Self> {
        let (q, r) = self.divrem(o)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput(format!("{o:?} does not divide {self:?}")));
        }
        Ok(q)
    }

    pub fn gcd(self, o: Self) -> Self {
        let (mut x, mut y) = (self, o);
        while !y.is_zero() {
            let (_, r) = x.divrem(y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x.canonical()
    }
}

/// A prime of `Z[ω]` of norm `p ≡ 1 mod 3`, in canonical form.
fn split_prime(p: u64) -> EisensteinInt {
    let p = p as i64;
    let bmax = ((4 * p / 3) as f64).sqrt() as i64 + 1;
    for b in 1..=bmax {
        let disc = 4 * p - 3 * b * b;
        if disc < 0 {
            break;
        }
        let s = (disc as f64).sqrt().round() as i64;
        for s in [s - 1, s, s + 1] {
            if s >= 0 && s * s == disc && (b + s) % 2 == 0 {
                let x = EisensteinInt::new((b + s) / 2, b);
                debug_assert_eq!(x.norm(), p);
                return x.canonical();
            }
        }
    }
    unreachable!("p ≡ 1 mod 3 is a norm from Z[ω]")
}

/// The canonical primes of `Z[ω]` above the rational prime `p`.
pub fn primes_above(p: u64) -> Vec<EisensteinInt> {
    match p % 3 {
        0 => vec![EisensteinInt::lambda().canonical()],
        1 => {
            let pi = split_prime(p);
            let mut v = vec![pi, pi.conj().canonical()];
            v.sort();
            v
        }
        _ => vec![EisensteinInt::from_int(p as i64).canonical()],
    }
}

/// Factorization of a nonzero element into canonical primes with exponents,
/// ordered by norm then coordinates.
pub fn factor_element(alpha: EisensteinInt) -> Result<Vec<(EisensteinInt, u32)>> {
    if alpha.is_zero() {
        return Err(Error::ZeroInput("factorization of zero"));
    }
    let mut rest = alpha;
    let mut out = Vec::new();
    for (p, _) in factor_u64(alpha.norm() as u64) {
        for pi in primes_above(p) {
            let mut e = 0;
            while pi.divides(rest) {
                rest = rest.div_exact(pi)?;
                e += 1;
            }
            if e > 0 {
                out.push((pi, e));
            }
        }
    }
    debug_assert!(rest.is_unit());
    out.sort_by_key(|(pi, _)| (pi.norm(), *pi));
    Ok(out)
}

/// Factorization of the rational integer `n ≥ 1` in `Z[ω]`.
pub fn eisenstein_factor(n: u64) -> Result<Vec<(EisensteinInt, u32)>> {
    if n == 0 {
        return Err(Error::ZeroInput("factorization of zero"));
    }
    factor_element(EisensteinInt::from_int(n as i64))
}

/// Residue field data for a prime `𝔭 ∤ 3`.
enum Residue {
    /// `F_p` with `ω ↦ w`.
    Split { p: i64, w: i64 },
    /// `F_p[ω]`, `p ≡ 2 mod 3`.
    Inert { p: i64 },
}

fn residue_data(pi: EisensteinInt) -> Result<Residue> {
    let n = pi.norm();
    if n % 3 == 0 {
        return Err(Error::InvalidInput("prime above 3 has no cubic residue symbol".into()));
    }
    if is_prime(n as u64) {
        let p = n;
        let b = pi.b.rem_euclid(p);
        let binv = pow_mod(b as u64, (p - 2) as u64, p as u64) as i64;
        let w = (-pi.a).rem_euclid(p) * binv % p;
        return Ok(Residue::Split { p, w });
    }
    let r = (n as f64).sqrt().round() as i64;
    if r * r == n && is_prime(r as u64) && r % 3 == 2 && pi.canonical() == EisensteinInt::from_int(r).canonical() {
        return Ok(Residue::Inert { p: r });
    }
    Err(Error::NotIrreducible)
}

/// Cubic residue symbol `(α/𝔭)_3 = ω^j ≡ α^{(N𝔭-1)/3} mod 𝔭`.
pub fn residue_symbol_eisenstein(alpha: EisensteinInt, pi: EisensteinInt) -> Result<SymbolValue> {
    let data = residue_data(pi)?;
    let value_j = match data {
        Residue::Split { p, w } => {
            let x = (alpha.a.rem_euclid(p) + alpha.b.rem_euclid(p) * w) % p;
            if x == 0 {
                return Ok(SymbolValue::Zero);
            }
            let v = pow_mod(x as u64, ((p - 1) / 3) as u64, p as u64) as i64;
            let w2 = w * w % p;
            [1, w, w2].iter().position(|&c| c == v)
        }
        Residue::Inert { p } => {
            let x = alpha.reduce(p);
            if x.is_zero() {
                return Ok(SymbolValue::Zero);
            }
            let mut e = (p * p - 1) / 3;
            let mut base = x;
            let mut acc = EisensteinInt::from_int(1);
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(base).reduce(p);
                }
                base = base.mul(base).reduce(p);
                e >>= 1;
            }
            let roots = [
                EisensteinInt::from_int(1),
                EisensteinInt::omega(),
                EisensteinInt::new(-1, -1).reduce(p),
            ];
            roots.iter().position(|&c| c == acc)
        }
    };
    value_j
        .map(|j| SymbolValue::Root { j: j as u64, n: 3 })
        .ok_or_else(|| Error::InvalidInput("cubic symbol outside μ_3".into()))
}

/// Extended symbol at `λ = 1 - ω` for `ℓ = 3`: `+1` iff `α ≡ γ³ mod λ⁴`
/// for some `γ` prime to `λ`. Since `λ⁴ = (9)` this is a test modulo 9.
pub fn symbol_at_lambda_3(alpha: EisensteinInt) -> Result<SymbolValue> {
    if !alpha.coprime_to_lambda() {
        return Err(Error::NotCoprime("α is divisible by λ".into()));
    }
    let target = alpha.reduce(9);
    for a in 0..9 {
        for b in 0..9 {
            let g = EisensteinInt::new(a, b);
            if g.coprime_to_lambda() && g.pow(3).reduce(9) == target {
                return Ok(SymbolValue::one(3));
            }
        }
    }
    Ok(SymbolValue::NonResidue)
}
