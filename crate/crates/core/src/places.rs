//! Places of `K = F_q(t)`: the finite places `(P)` for monic irreducible
//! `P` and the degree-one place `v_∞` with uniformizer `π_∞ = 1/t`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{Fe, Field, PolyFq};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(PolyFq),
    Infinity,
}

impl Place {
    /// A finite place; `p` must be monic irreducible.
    pub fn finite(p: PolyFq) -> Result<Self> {
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        if !p.is_irreducible()? {
            return Err(Error::NotIrreducible);
        }
        Ok(Place::Finite(p))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.deg(),
            Place::Infinity => 1,
        }
    }

    pub fn prime(&self) -> Option<&PolyFq> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "({p})"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An element of `F_q(t)` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KElem {
    num: PolyFq,
    den: PolyFq,
}

impl KElem {
    pub fn new(num: PolyFq, den: PolyFq) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(Self::zero(&field));
        }
        let g = num.gcd(&den)?;
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lc = field.inv(den.leading_coeff())?;
        Ok(KElem {
            num: num.scale(lc),
            den: den.scale(lc),
        })
    }

    pub fn from_poly(p: PolyFq) -> Self {
        let den = PolyFq::one(p.field());
        KElem { num: p, den }
    }

    pub fn constant(field: &Field, c: Fe) -> Self {
        Self::from_poly(PolyFq::constant(field, c))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(PolyFq::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(PolyFq::one(field))
    }

    /// The uniformizer `π_∞ = 1/t`.
    pub fn pi_infinity(field: &Field) -> Self {
        KElem {
            num: PolyFq::one(field),
            den: PolyFq::var(field),
        }
    }

    pub fn num(&self) -> &PolyFq {
        &self.num
    }

    pub fn den(&self) -> &PolyFq {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        KElem {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(KElem {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Leading coefficient: the `a ∈ k*` with `π_∞^m g ≡ a mod π_∞`.
    pub fn leading_coeff(&self) -> Result<Fe> {
        if self.is_zero() {
            return Err(Error::ZeroInput("leading coefficient of zero"));
        }
        Ok(self.num.leading_coeff())
    }
}

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Multiplicity of `p` in a nonzero polynomial `g`.
pub fn poly_ord(p: &PolyFq, g: &PolyFq) -> Result<u32> {
    if g.is_zero() {
        return Err(Error::ZeroInput("order of zero"));
    }
    let mut g = g.clone();
    let mut k = 0;
    loop {
        let (q, r) = g.divrem(p)?;
        if !r.is_zero() {
            return Ok(k);
        }
        g = q;
        k += 1;
    }
}

pub fn ord_at(v: &Place, g: &KElem) -> Result<i64> {
    if g.is_zero() {
        return Err(Error::ZeroInput("order of zero"));
    }
    match v {
        Place::Infinity => Ok(g.den.deg() as i64 - g.num.deg() as i64),
        Place::Finite(p) => Ok(poly_ord(p, &g.num)? as i64 - poly_ord(p, &g.den)? as i64),
    }
}

pub fn leading_coeff(g: &PolyFq) -> Result<Fe> {
    if g.is_zero() {
        return Err(Error::ZeroInput("leading coefficient of zero"));
    }
    Ok(g.leading_coeff())
}

pub fn is_monic(g: &PolyFq) -> Result<bool> {
    Ok(leading_coeff(g)? == 1)
}

/// `N(g mod P)` for the unit part of `g` at the finite place `P`, i.e. the
/// norm to `k` of the residue of `g · π^{-ord}` with `π = P`. Landing in
/// `k*` it carries the full power-residue information at `P`.
pub fn unit_norm_at(p: &PolyFq, g: &KElem) -> Result<Fe> {
    let field = g.field().clone();
    let strip = |h: &PolyFq| -> Result<PolyFq> {
        let k = poly_ord(p, h)?;
        h.div_exact(&p.pow(k as u64))
    };
    let n = p.resultant(&strip(&g.num)?)?;
    let d = p.resultant(&strip(&g.den)?)?;
    field.div(n, d)
}

/// Whether `g` is an `ℓ`-th power in the completion `K_v`.
pub fn is_lth_power_local(v: &Place, g: &KElem, l: u64) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroInput("local power test of zero"));
    }
    let field = g.field();
    field.check_roots_of_unity(l)?;
    let ord = ord_at(v, g)?;
    if ord.rem_euclid(l as i64) != 0 {
        return Ok(false);
    }
    let unit = match v {
        Place::Infinity => field.div(g.num.leading_coeff(), g.den.leading_coeff())?,
        Place::Finite(p) => unit_norm_at(p, g)?,
    };
    field.is_lth_power(unit, l)
}

/// `(α, β)_{v_∞} = ω((-1)^{ab} β^a / α^b)^{(Q-1)/n}` with `a = ord_∞ α`,
/// `b = ord_∞ β`; returned as an element of `μ_n ⊂ k*`.
pub fn hilbert_symbol_infinity(alpha: &KElem, beta: &KElem, n: u64) -> Result<Fe> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroInput("Hilbert symbol argument"));
    }
    let field = alpha.field().clone();
    if beta.field() != &field {
        return Err(Error::FieldMismatch);
    }
    field.check_roots_of_unity(n)?;
    let a = ord_at(&Place::Infinity, alpha)?;
    let b = ord_at(&Place::Infinity, beta)?;
    let lc = |x: &KElem| field.div(x.num.leading_coeff(), x.den.leading_coeff());
    let pow_i = |x: Fe, e: i64| -> Result<Fe> {
        let y = field.pow(x, e.unsigned_abs());
        if e < 0 {
            field.inv(y)
        } else {
            Ok(y)
        }
    };
    let mut w = field.div(pow_i(lc(beta)?, a)?, pow_i(lc(alpha)?, b)?)?;
    if (a * b).rem_euclid(2) == 1 {
        w = field.neg(w);
    }
    Ok(field.pow(w, (field.size() - 1) / n))
}
