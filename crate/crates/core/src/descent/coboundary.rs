//! The map `f_•` on divisors, images of the rational `λ`-torsion, and local
//! restriction of ambient classes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{factor, Field, PolyFq};
use crate::places::{KElem, Place};
use crate::symbols::norm_symbol;

use super::ambient::{ambient_group_split, AmbientClass, AmbientGroup, GenKind};
use super::curve::{eval_at_kelem, RootData, SuperellipticCurve, TwistParam};

/// A point of a divisor, or a Galois orbit of points given by the minimal
/// polynomial of their `x`-coordinates. `f_•` only sees `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivPoint {
    Rational { x: KElem, y: Option<KElem> },
    /// Monic over `K`, coefficients from degree 0.
    Orbit { minpoly: Vec<KElem> },
}

impl DivPoint {
    pub fn degree(&self) -> i64 {
        match self {
            DivPoint::Rational { .. } => 1,
            DivPoint::Orbit { minpoly } => minpoly.len() as i64 - 1,
        }
    }
}

/// `Σ n_j (P_j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor(pub Vec<(DivPoint, i64)>);

impl Divisor {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(p, n)| p.degree() * n).sum()
    }
}

fn embed_kelem(x: &KElem, target: &Field, map: &dyn Fn(&PolyFq) -> PolyFq) -> Result<KElem> {
    if x.field() == target {
        return Ok(x.clone());
    }
    KElem::new(map(x.num()), map(x.den()))
}

/// The roots `z_1..z_{d'}` defining `f_•`, each in its component field.
pub fn x_roots(curve: &SuperellipticCurve) -> Result<Vec<KElem>> {
    match curve.root_data() {
        RootData::Split { roots } => Ok(roots[..roots.len() - 1]
            .iter()
            .map(|z| KElem::from_poly(z.clone()))
            .collect()),
        RootData::ConstIrreducible { ext, rho, scale, .. } => {
            Ok(vec![KElem::from_poly(ext.embed_poly(scale).scale(*rho))])
        }
        other => Err(Error::Unsupported(format!("f_• for {} f", other.kind()))),
    }
}

fn component_embed(curve: &SuperellipticCurve) -> Box<dyn Fn(&PolyFq) -> PolyFq + '_> {
    match curve.root_data() {
        RootData::ConstIrreducible { ext, .. } => Box::new(move |p: &PolyFq| ext.embed_poly(p)),
        _ => Box::new(|p: &PolyFq| p.clone()),
    }
}

/// `f_•(E)`: the component at `P_i` is `∏_j (x_j - z_i)^{n_j}`, an orbit
/// contributing `(-1)^k m(z_i)` for its minimal polynomial `m` of degree `k`.
pub fn fdot_eval(curve: &SuperellipticCurve, e: &Divisor) -> Result<Vec<KElem>> {
    let zs = x_roots(curve)?;
    let embed = component_embed(curve);
    let mut out = Vec::with_capacity(zs.len());
    for z in &zs {
        let target = z.field().clone();
        let mut acc = KElem::one(&target);
        for (pt, n) in &e.0 {
            let v = match pt {
                DivPoint::Rational { x, y } => {
                    if let Some(y) = y {
                        let fx = eval_at_kelem(curve.f(), x)?;
                        if y.pow(curve.ell() as i64)? != fx {
                            return Err(Error::InvalidInput("point is not on the curve".into()));
                        }
                    }
                    embed_kelem(x, &target, &*embed)?.sub(z)
                }
                DivPoint::Orbit { minpoly } => {
                    let k = minpoly.len() - 1;
                    let mut m = KElem::zero(&target);
                    for c in minpoly.iter().rev() {
                        m = m.mul(z).add(&embed_kelem(c, &target, &*embed)?);
                    }
                    if k % 2 == 1 {
                        m.neg()
                    } else {
                        m
                    }
                }
            };
            if v.is_zero() {
                return Err(Error::DivisorMeetsRoots);
            }
            acc = acc.mul(&v.pow(*n)?);
        }
        out.push(acc);
    }
    Ok(out)
}

/// The ambient group `∏ L_i(S_J,ℓ)` of a split curve.
pub fn split_ambient(curve: &SuperellipticCurve) -> Result<AmbientGroup> {
    let m = curve.split_roots()?.len() - 1;
    ambient_group_split(curve.field(), &curve.s_j()?, curve.ell(), m)
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionImage {
    pub which: usize,
    /// The tuple, component by component.
    pub components: Vec<String>,
    pub class: AmbientClass,
    #[serde(skip)]
    pub values: Vec<KElem>,
}

/// Image under `f_•` of the rational torsion point `(z_which, 0)` on a split
/// curve, in `∏ L_i(S_J,ℓ)` of that curve. For the designated root the tuple
/// is `(z_d - z_i)_i`; at its own component a root `z_i` uses
/// `∏_{j≠i} (z_i - z_j)^{ℓ-1}`. On a twist `C_D` the roots are `D z_i`.
pub fn theta_delta_torsion(curve: &SuperellipticCurve, which: usize) -> Result<(AmbientGroup, TorsionImage)> {
    let roots = curve.split_roots()?;
    if which >= roots.len() {
        return Err(Error::InvalidInput(format!("no root with index {which}")));
    }
    let base = curve.base_disc()?;
    if !curve.twist().gcd(&base)?.is_one() {
        return Err(Error::NotCoprime("the twist meets Δ_f".into()));
    }
    let l = curve.ell();
    let zw = &roots[which];
    let values: Vec<KElem> = (0..roots.len() - 1)
        .map(|i| {
            if i == which {
                let mut acc = PolyFq::one(curve.field());
                for (j, zj) in roots.iter().enumerate() {
                    if j != i {
                        acc = &acc * &(zw - zj).pow(l - 1);
                    }
                }
                KElem::from_poly(acc)
            } else {
                KElem::from_poly(zw - &roots[i])
            }
        })
        .collect();
    let group = split_ambient(curve)?;
    let class = group.class_of_tuple(&values)?;
    Ok((
        group,
        TorsionImage {
            which,
            components: values.iter().map(|v| format!("{v:?}")).collect(),
            class,
            values,
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactor {
    pub component: usize,
    /// The prime of `O_{L_i}` above `v`, or `None` at infinity.
    pub prime: Option<String>,
    pub ord: u64,
    /// `μ_ℓ` exponent of the residue of the unit part (uniformizer `𝔓`,
    /// resp. `1/t`).
    pub symbol: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalClass {
    pub place: Place,
    pub factors: Vec<LocalFactor>,
    pub trivial: bool,
}

/// Image of an ambient class in `∏_i ∏_{𝔓 | v} L_{i,𝔓}*/(L_{i,𝔓}*)^ℓ`.
pub fn res_place(group: &AmbientGroup, x: &AmbientClass, v: &Place) -> Result<LocalClass> {
    if x.coords.len() != group.dim() {
        return Err(Error::InvalidInput("class does not belong to the group".into()));
    }
    let l = group.l();
    let mut factors = Vec::new();
    for comp in 0..group.components() {
        let field = group.component_field(comp).clone();
        let gens: Vec<(&GenKind, u64)> = group
            .basis()
            .iter()
            .zip(&x.coords)
            .filter(|(g, _)| g.component == comp)
            .map(|(g, &c)| (&g.kind, c % l))
            .collect();
        match v {
            Place::Infinity => {
                let mut ord = 0i64;
                let mut sym = 0u64;
                for (kind, c) in &gens {
                    match kind {
                        GenKind::Constant(g) => sym += c * field.class_mod_powers(*g, l)?,
                        GenKind::Prime(p) => ord -= (*c as i64) * p.degree().expect("prime") as i64,
                    }
                }
                factors.push(LocalFactor {
                    component: comp,
                    prime: None,
                    ord: ord.rem_euclid(l as i64) as u64,
                    symbol: sym % l,
                });
            }
            Place::Finite(p) => {
                let above: Vec<PolyFq> = match group.extension() {
                    Some(ext) if *ext.ext() == field => {
                        factor(&ext.embed_poly(p), 0)?.factors.into_iter().map(|(q, _)| q).collect()
                    }
                    _ => vec![p.clone()],
                };
                for pp in above {
                    let mut ord = 0u64;
                    let mut sym = 0u64;
                    for (kind, c) in &gens {
                        let g = match kind {
                            GenKind::Prime(q) if *q == pp => {
                                ord += c;
                                continue;
                            }
                            GenKind::Prime(q) => q.clone(),
                            GenKind::Constant(g) => PolyFq::constant(&field, *g),
                        };
                        let s = norm_symbol(&g, &pp, l)?
                            .exponent()
                            .ok_or_else(|| Error::InvalidInput("generator meets the place".into()))?;
                        sym += c * s;
                    }
                    factors.push(LocalFactor {
                        component: comp,
                        prime: Some(pp.to_string()),
                        ord: ord % l,
                        symbol: sym % l,
                    });
                }
            }
        }
    }
    let trivial = factors.iter().all(|f| f.ord == 0 && f.symbol == 0);
    Ok(LocalClass {
        place: v.clone(),
        factors,
        trivial,
    })
}

/// The pullback of `E` along `h_D : (x, y) ↦ (D x, D^{d/ℓ} y)`.
pub fn pull_back_divisor(e: &Divisor, d: &TwistParam) -> Result<Divisor> {
    let dd = KElem::from_poly(d.value().clone());
    let pts = e
        .0
        .iter()
        .map(|(p, n)| {
            let q = match p {
                DivPoint::Rational { x, .. } => DivPoint::Rational { x: x.mul(&dd), y: None },
                DivPoint::Orbit { minpoly } => {
                    // D^k m(X/D)
                    let k = minpoly.len() - 1;
                    let mp = minpoly
                        .iter()
                        .enumerate()
                        .map(|(i, c)| c.mul(&dd.pow((k - i) as i64).expect("nonzero")))
                        .collect();
                    DivPoint::Orbit { minpoly: mp }
                }
            };
            (q, *n)
        })
        .collect();
    Ok(Divisor(pts))
}

/// `f_•(E)` on `C` equals `f_•(h_D(E))` on `C_D` for a degree-zero `E`.
pub fn verify_prop_key2(curve: &SuperellipticCurve, d: &TwistParam, e: &Divisor) -> Result<bool> {
    if e.degree() != 0 {
        return Err(Error::Hypothesis(format!("divisor has degree {}", e.degree())));
    }
    let twisted = curve.twist_by(d)?;
    let lhs = fdot_eval(curve, e)?;
    let rhs = fdot_eval(&twisted, &pull_back_divisor(e, d)?)?;
    Ok(lhs == rhs)
}
