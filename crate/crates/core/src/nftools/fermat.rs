//! The superelliptic model of the Fermat twist `x^ℓ + y^ℓ = D z^ℓ`:
//! `D z^ℓ = Σ_k x^{ℓ-2k} y^{2k} C(ℓ,2k) (2ℓ)^{(ℓ-1-2k)a} / ℓ`
//! with `(ℓ-1)a + ℓb = 1`, reached by
//! `(x:y:z) ↦ (x+y : (2ℓ)^a (x-y) : 2^{1-b} ℓ^{-b} z)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::cyclotomic::CycNum;

/// Homogeneous polynomials in `x, y, z` over `Q`, keyed by exponents.
type Poly3 = BTreeMap<[u32; 3], BigRational>;

fn p3_mul(a: &Poly3, b: &Poly3) -> Poly3 {
    let mut out = Poly3::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            *out.entry(e).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn p3_pow(a: &Poly3, e: u32) -> Poly3 {
    let mut acc = Poly3::from([([0, 0, 0], BigRational::one())]);
    for _ in 0..e {
        acc = p3_mul(&acc, a);
    }
    acc
}

fn p3_add_assign(a: &mut Poly3, b: &Poly3, scale: &BigRational) {
    for (e, c) in b {
        *a.entry(*e).or_insert_with(BigRational::zero) += c * scale;
    }
    a.retain(|_, c| !c.is_zero());
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `base^e` for a possibly negative exponent.
fn rpow(base: i64, e: i64) -> BigRational {
    let p = rat(BigInt::from(base).pow(e.unsigned_abs() as u32));
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FermatReport {
    pub ell: u64,
    pub d: i64,
    pub a: i64,
    pub b: i64,
    /// `c` with `G(map(x,y,z)) = c · (x^ℓ + y^ℓ - D z^ℓ)`.
    pub scalar: Option<String>,
    pub identity_holds: bool,
    /// Coefficients of the monic `f(y)`, low degree first.
    pub f_coeffs: Vec<String>,
    pub f_monic_degree_ok: bool,
    /// The roots `(2ℓ)^a (ζ^s + ζ)/(ζ^s - ζ)`, `s = 2..ℓ`, as `Q(ζ_ℓ)` coordinates.
    pub roots: Vec<Vec<String>>,
    pub roots_vanish: bool,
    pub roots_distinct: bool,
    pub verified: bool,
}

fn model_exponents(l: i64) -> (i64, i64) {
    // least a > 0 with (ℓ-1) a ≡ 1 mod ℓ
    let a = (1..=l).find(|a| ((l - 1) * a - 1).rem_euclid(l) == 0).expect("ℓ prime");
    (a, (1 - (l - 1) * a) / l)
}

/// Coefficients of `f(y)`: `C(ℓ,2k) (2ℓ)^{(ℓ-1-2k)a} / ℓ` at `y^{2k}`.
fn model_coeffs(l: i64, a: i64) -> Vec<BigRational> {
    let mut f = vec![BigRational::zero(); l as usize];
    for k in 0..=(l - 1) / 2 {
        let c = rat(binomial(BigInt::from(l), BigInt::from(2 * k)))
            * rpow(2 * l, (l - 1 - 2 * k) * a)
            / rat(l);
        f[(2 * k) as usize] = c;
    }
    f
}

pub fn verify_fermat_model(ell: u64, d: i64) -> Result<FermatReport> {
    if !matches!(ell, 3 | 5 | 7) {
        return Err(Error::InvalidInput(format!("ℓ = {ell} must be one of 3, 5, 7")));
    }
    if d == 0 {
        return Err(Error::ZeroInput("Fermat twist parameter"));
    }
    let l = ell as i64;
    let (a, b) = model_exponents(l);
    let f = model_coeffs(l, a);

    // substitute the map into G(X,Y,Z) = D Z^ℓ - Σ_k f_{2k} X^{ℓ-2k} Y^{2k}
    let one = BigRational::one();
    let xx = Poly3::from([([1, 0, 0], one.clone()), ([0, 1, 0], one.clone())]);
    let s = rpow(2 * l, a);
    let yy = Poly3::from([([1, 0, 0], s.clone()), ([0, 1, 0], -s)]);
    let zscale = rpow(2, 1 - b) * rpow(l, -b);
    let zz = Poly3::from([([0, 0, 1], zscale)]);
    let mut g = Poly3::new();
    p3_add_assign(&mut g, &p3_pow(&zz, ell as u32), &rat(d));
    for k in 0..=(l - 1) / 2 {
        let term = p3_mul(&p3_pow(&xx, (l - 2 * k) as u32), &p3_pow(&yy, (2 * k) as u32));
        p3_add_assign(&mut g, &term, &(-f[(2 * k) as usize].clone()));
    }
    let target = Poly3::from([
        ([ell as u32, 0, 0], one.clone()),
        ([0, ell as u32, 0], one.clone()),
        ([0, 0, ell as u32], -rat(d)),
    ]);
    let scalar = g.get(&[ell as u32, 0, 0]).cloned();
    let identity_holds = match &scalar {
        Some(c) if !c.is_zero() => {
            let mut diff = g.clone();
            p3_add_assign(&mut diff, &target, &(-c.clone()));
            diff.is_empty()
        }
        _ => false,
    };

    // dehomogenized f(y) and its roots in Q(ζ_ℓ)
    let f_monic_degree_ok = f.len() == (l - 1) as usize + 1 && f[(l - 1) as usize].is_one();
    let lu = ell as usize;
    let zeta = CycNum::zeta_pow(lu, 1);
    let scale = rpow(2 * l, a);
    let mut roots = Vec::new();
    for s in 2..=lu {
        let zs = CycNum::zeta_pow(lu, s);
        roots.push(zs.add(&zeta).div(&zs.sub(&zeta))?.scale(&scale));
    }
    let eval = |y: &CycNum| {
        f.iter()
            .rev()
            .fold(CycNum::zero(lu), |acc, c| acc.mul(y).add(&CycNum::from_rational(lu, c.clone())))
    };
    let roots_vanish = roots.iter().all(|r| eval(r).is_zero());
    let roots_distinct = (0..roots.len()).all(|i| (i + 1..roots.len()).all(|j| roots[i] != roots[j]));
    let verified = identity_holds && f_monic_degree_ok && roots_vanish && roots_distinct
        && roots.len() == lu - 1;
    Ok(FermatReport {
        ell,
        d,
        a,
        b,
        scalar: scalar.map(|c| c.to_string()),
        identity_holds,
        f_coeffs: f.iter().map(|c| c.to_string()).collect(),
        f_monic_degree_ok,
        roots: roots
            .iter()
            .map(|r| r.coeffs().iter().map(|c| c.to_string()).collect())
            .collect(),
        roots_vanish,
        roots_distinct,
        verified,
    })
}
