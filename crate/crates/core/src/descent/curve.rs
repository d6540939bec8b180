//! Superelliptic curves `y^ℓ = f(x)` over `F_q(t)`, their root data and
//! `ℓ`-th power twists.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_power};
use crate::error::{Error, Result};
use crate::ffpoly::{discriminant, factor, field_make, ConstantExtension, Fe, Field, PolyFq};
use crate::places::{KElem, Place};

/// How `f` decomposes over `K`.
#[derive(Clone, Debug)]
pub enum RootData {
    /// All roots in `O_K`; the last one is the designated root `z_d`.
    Split { roots: Vec<PolyFq> },
    /// `f(x) = D^p f_0(x/D)` with `f_0 ∈ k[x]` irreducible of prime degree
    /// `p`, so `L = K ⊗ k'` with `[k':k] = p`. The root used for `L` is
    /// `D ρ`, `ρ` the least root of `f_0` in `k'`.
    ConstIrreducible {
        base: PolyFq,
        ext: ConstantExtension,
        rho: Fe,
        scale: PolyFq,
    },
    /// Irreducible over `K` but not a twist of a constant polynomial.
    Irreducible,
    Other,
}

impl RootData {
    pub fn kind(&self) -> &'static str {
        match self {
            RootData::Split { .. } => "split",
            RootData::ConstIrreducible { .. } => "const-irreducible",
            RootData::Irreducible => "irreducible",
            RootData::Other => "other",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuperellipticCurve {
    field: Field,
    ell: u64,
    f: Vec<PolyFq>,
    disc: PolyFq,
    roots: RootData,
    twist: PolyFq,
}

/// Evaluate `f ∈ O_K[x]` at `z ∈ O_K`.
pub fn eval_at_poly(f: &[PolyFq], z: &PolyFq) -> PolyFq {
    let field = z.field();
    f.iter().rev().fold(PolyFq::zero(field), |acc, c| &(&acc * z) + c)
}

/// Evaluate `f ∈ O_K[x]` at `x ∈ K`.
pub fn eval_at_kelem(f: &[PolyFq], x: &KElem) -> Result<KElem> {
    // homogenize: b^d f(a/b) = Σ c_i a^i b^{d-i}
    let field = x.field();
    let d = f.len() - 1;
    let mut num = PolyFq::zero(field);
    let mut apow = PolyFq::one(field);
    for (i, c) in f.iter().enumerate() {
        num = &num + &(&(c * &apow) * &x.den().pow((d - i) as u64));
        apow = &apow * x.num();
    }
    KElem::new(num, x.den().pow(d as u64))
}

/// `f(x) / (x - z)` for a root `z` of a monic `f`.
fn deflate(f: &[PolyFq], z: &PolyFq) -> Vec<PolyFq> {
    let field = z.field();
    let d = f.len() - 1;
    let mut out = vec![PolyFq::zero(field); d];
    let mut carry = PolyFq::zero(field);
    for i in (1..=d).rev() {
        carry = &f[i] + &(&carry * z);
        out[i - 1] = carry.clone();
    }
    out
}

/// Monic divisors of a nonzero polynomial.
fn monic_divisors(g: &PolyFq) -> Result<Vec<PolyFq>> {
    let field = g.field().clone();
    let mut out = vec![PolyFq::one(&field)];
    for (p, e) in factor(g, 0)?.factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for m in &out {
            let mut cur = m.clone();
            next.push(cur.clone());
            for _ in 0..e {
                cur = &cur * &p;
                next.push(cur.clone());
            }
        }
        out = next;
    }
    Ok(out)
}

/// Roots of a monic `f ∈ O_K[x]` lying in `O_K` (hence in `K`), without
/// multiplicity, in canonical order.
pub fn rational_roots(f: &[PolyFq]) -> Result<Vec<PolyFq>> {
    let field = f[0].field().clone();
    let mut found = BTreeSet::new();
    let mut cur = f.to_vec();
    'outer: while cur.len() > 1 {
        if cur[0].is_zero() {
            let z = PolyFq::zero(&field);
            cur = deflate(&cur, &z);
            found.insert(z);
            continue;
        }
        for m in monic_divisors(&cur[0])? {
            for c in field.elements().skip(1) {
                let z = m.scale(c);
                if eval_at_poly(&cur, &z).is_zero() {
                    cur = deflate(&cur, &z);
                    found.insert(z);
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(found.into_iter().collect())
}

impl SuperellipticCurve {
    /// `y^ℓ = f(x)` with `f[i]` the coefficient of `x^i`. `designated`
    /// selects `z_d` when `f` splits; by default it is the largest root.
    pub fn new(field: &Field, ell: u64, f: Vec<PolyFq>, designated: Option<PolyFq>) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::InvalidInput(format!("ℓ = {ell} is not prime")));
        }
        field.check_roots_of_unity(ell)?;
        if f.len() < 2 {
            return Err(Error::InvalidDegree("deg_x f must be at least 1".into()));
        }
        if f.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if !f.last().expect("nonempty").is_one() {
            return Err(Error::NotMonic);
        }
        let d = f.len() - 1;
        if d as u64 % ell == 0 {
            return Err(Error::InvalidInput(format!("ℓ = {ell} divides deg f = {d}")));
        }
        let disc = if d == 1 {
            PolyFq::one(field)
        } else {
            discriminant(&f)?
        };
        if disc.is_zero() {
            return Err(Error::InvalidInput("f has repeated roots".into()));
        }
        let roots = detect_roots(field, &f, designated)?;
        Ok(SuperellipticCurve {
            field: field.clone(),
            ell,
            f,
            disc,
            roots,
            twist: PolyFq::one(field),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn f(&self) -> &[PolyFq] {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn genus(&self) -> u64 {
        (self.ell - 1) * (self.degree() as u64 - 1) / 2
    }

    pub fn disc(&self) -> &PolyFq {
        &self.disc
    }

    pub fn root_data(&self) -> &RootData {
        &self.roots
    }

    /// The product of all twists applied since construction.
    pub fn twist(&self) -> &PolyFq {
        &self.twist
    }

    /// `Δ_f / D^{d(d-1)}`: the discriminant before the accumulated twist.
    pub fn base_disc(&self) -> Result<PolyFq> {
        let d = self.degree() as u64;
        self.disc.div_exact(&self.twist.pow(d * (d - 1)))
    }

    pub fn is_constant(&self) -> bool {
        self.f.iter().all(|c| c.is_constant())
    }

    pub fn split_roots(&self) -> Result<&[PolyFq]> {
        match &self.roots {
            RootData::Split { roots } => Ok(roots),
            other => Err(Error::InvalidInput(format!("f is {}, not split", other.kind()))),
        }
    }

    /// `S_J = {v_∞} ∪ supp(Δ_f)`.
    pub fn s_j(&self) -> Result<PlaceSet> {
        let mut s = PlaceSet::infinity();
        s.add_support(&self.disc)?;
        Ok(s)
    }

    /// `y^ℓ = D^d f(x/D)`.
    pub fn twist_by(&self, d: &TwistParam) -> Result<Self> {
        let dd = &d.d;
        if dd.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let deg = self.degree();
        let f: Vec<PolyFq> = self
            .f
            .iter()
            .enumerate()
            .map(|(i, c)| c * &dd.pow((deg - i) as u64))
            .collect();
        let disc = if deg == 1 {
            PolyFq::one(&self.field)
        } else {
            discriminant(&f)?
        };
        let roots = match &self.roots {
            RootData::Split { roots } => RootData::Split {
                roots: roots.iter().map(|z| z * dd).collect(),
            },
            RootData::ConstIrreducible {
                base,
                ext,
                rho,
                scale,
            } => RootData::ConstIrreducible {
                base: base.clone(),
                ext: ext.clone(),
                rho: *rho,
                scale: scale * dd,
            },
            RootData::Irreducible => RootData::Irreducible,
            RootData::Other => RootData::Other,
        };
        Ok(SuperellipticCurve {
            field: self.field.clone(),
            ell: self.ell,
            f,
            disc,
            roots,
            twist: &self.twist * dd,
        })
    }
}

fn detect_roots(field: &Field, f: &[PolyFq], designated: Option<PolyFq>) -> Result<RootData> {
    let d = f.len() - 1;
    let roots = rational_roots(f)?;
    if roots.len() == d {
        let mut roots = roots;
        if let Some(z) = designated {
            let pos = roots
                .iter()
                .position(|r| *r == z)
                .ok_or_else(|| Error::InvalidInput(format!("designated root {z} is not a root of f")))?;
            let z = roots.remove(pos);
            roots.push(z);
        }
        return Ok(RootData::Split { roots });
    }
    if designated.is_some() {
        return Err(Error::InvalidInput("designated root given but f does not split".into()));
    }
    if f.iter().all(|c| c.is_constant()) && is_prime(d as u64) {
        let base = PolyFq::new(field, f.iter().map(|c| c.coeff(0)).collect());
        if base.is_irreducible()? {
            let ext = ConstantExtension::new(field, d as u32)?;
            let lifted = ext.embed_poly(&base);
            let rho = ext
                .ext()
                .elements()
                .find(|&x| lifted.eval(x) == 0)
                .expect("irreducible of degree p splits over k'");
            return Ok(RootData::ConstIrreducible {
                base,
                ext,
                rho,
                scale: PolyFq::one(field),
            });
        }
    }
    if roots.is_empty() && d <= 3 {
        return Ok(RootData::Irreducible);
    }
    Ok(RootData::Other)
}

impl fmt::Display for SuperellipticCurve {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .f
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(out, "y^{} = {}", self.ell, terms.join(" + "))
    }
}

/// A twist parameter: a nonzero monic `D ∈ O_K` with its factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistParam {
    d: PolyFq,
    support: Vec<(PolyFq, u32)>,
}

impl TwistParam {
    pub fn new(d: PolyFq) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroInput("twist parameter"));
        }
        if !d.is_monic() {
            return Err(Error::NotMonic);
        }
        let support = factor(&d, 0)?.factors;
        Ok(TwistParam { d, support })
    }

    pub fn one(field: &Field) -> Self {
        TwistParam {
            d: PolyFq::one(field),
            support: Vec::new(),
        }
    }

    pub fn value(&self) -> &PolyFq {
        &self.d
    }

    pub fn support(&self) -> &[(PolyFq, u32)] {
        &self.support
    }

    pub fn degree(&self) -> usize {
        self.d.degree().expect("nonzero")
    }

    /// Whether `(D)` is an `ℓ`-th power of an ideal.
    pub fn is_lth_power_ideal(&self, l: u64) -> bool {
        self.support.iter().all(|(_, e)| *e as u64 % l == 0)
    }
}

pub fn twist_model(c: &SuperellipticCurve, d: &TwistParam) -> Result<SuperellipticCurve> {
    c.twist_by(d)
}

/// A finite set of places of `K`, always containing `v_∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceSet(BTreeSet<Place>);

impl PlaceSet {
    pub fn infinity() -> Self {
        PlaceSet(BTreeSet::from([Place::Infinity]))
    }

    pub fn insert(&mut self, v: Place) {
        self.0.insert(v);
    }

    /// Add the primes dividing a nonzero polynomial.
    pub fn add_support(&mut self, g: &PolyFq) -> Result<()> {
        if g.is_zero() {
            return Err(Error::ZeroInput("support of zero"));
        }
        if !g.is_constant() {
            for (p, _) in factor(g, 0)?.factors {
                self.0.insert(Place::Finite(p));
            }
        }
        Ok(())
    }

    pub fn with_support(&self, g: &PolyFq) -> Result<Self> {
        let mut s = self.clone();
        s.add_support(g)?;
        Ok(s)
    }

    pub fn contains(&self, v: &Place) -> bool {
        self.0.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Place> {
        self.0.iter()
    }

    pub fn finite(&self) -> impl Iterator<Item = &PolyFq> {
        self.0.iter().filter_map(|v| v.prime())
    }

    pub fn finite_count(&self) -> usize {
        self.finite().count()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }
}

/// Curve file: `q` (a prime power), optional `r` (the constant field is
/// `F_{q^r}`), `ell`, and `f` as one coefficient array per power of `x`,
/// each listing `t`-coefficients from degree 0. Coefficients are integers
/// reduced mod `p` over a prime field and element encodings otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub q: u64,
    #[serde(default = "one_u32")]
    pub r: u32,
    pub ell: u64,
    pub f: Vec<Vec<i64>>,
    #[serde(default)]
    pub designated_root: Option<Vec<i64>>,
}

fn one_u32() -> u32 {
    1
}

/// The field `F_{q^r}` described by `q` and `r`.
pub fn spec_field(q: u64, r: u32) -> Result<Field> {
    let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidInput(format!("q = {q} is not a prime power")))?;
    field_make(p, m * r)
}

/// A coefficient array as a polynomial over `field`.
pub fn spec_poly(field: &Field, coeffs: &[i64]) -> Result<PolyFq> {
    if field.degree() == 1 {
        return Ok(PolyFq::from_ints(field, coeffs));
    }
    let q = field.size() as i64;
    let fes = coeffs
        .iter()
        .map(|&c| {
            if (0..q).contains(&c) {
                Ok(c as Fe)
            } else {
                Err(Error::InvalidInput(format!("coefficient {c} is not an element encoding below {q}")))
            }
        })
        .collect::<Result<Vec<Fe>>>()?;
    Ok(PolyFq::new(field, fes))
}

impl CurveSpec {
    pub fn field(&self) -> Result<Field> {
        spec_field(self.q, self.r)
    }

    pub fn build(&self) -> Result<SuperellipticCurve> {
        let field = self.field()?;
        let f = self
            .f
            .iter()
            .map(|c| spec_poly(&field, c))
            .collect::<Result<Vec<_>>>()?;
        let designated = self
            .designated_root
            .as_ref()
            .map(|c| spec_poly(&field, c))
            .transpose()?;
        SuperellipticCurve::new(&field, self.ell, f, designated)
    }
}
