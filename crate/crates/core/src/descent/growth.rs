//! The prime set `𝒟'_{Y_J}` for split `f` and Selmer growth by successive
//! twists.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{irreducibles_of_degree, PolyFq};
use crate::linalg::{rank, Vector};
use crate::places::{is_lth_power_local, poly_ord, KElem, Place};
use crate::symbols::euler_symbol;

use super::ambient::{AmbientClass, AmbientGroup};
use super::coboundary::{res_place, theta_delta_torsion};
use super::curve::{SuperellipticCurve, TwistParam};

/// `Y_J`: a generator of `k*/(k*)^ℓ` standing for `ζ_ℓ`, `-1`, the primes
/// of `S_J`, and the components of the torsion images.
#[derive(Clone, Debug, Serialize)]
pub struct YJ {
    pub l: u64,
    #[serde(skip)]
    pub elements: Vec<PolyFq>,
    pub labels: Vec<String>,
    #[serde(skip)]
    pub disc: PolyFq,
}

pub fn build_yj(curve: &SuperellipticCurve, extras: &[PolyFq]) -> Result<YJ> {
    let field = curve.field();
    let l = curve.ell();
    let mut elements: Vec<PolyFq> = Vec::new();
    let mut labels = Vec::new();
    let mut push = |p: PolyFq, label: &str, elements: &mut Vec<PolyFq>| {
        if p.is_constant() && field.is_lth_power(p.coeff(0), l).unwrap_or(false) {
            return;
        }
        if !elements.contains(&p) {
            labels.push(format!("{label}: {p}"));
            elements.push(p);
        }
    };
    push(PolyFq::constant(field, field.generator()), "zeta", &mut elements);
    push(PolyFq::constant(field, field.neg(1)), "-1", &mut elements);
    for p in curve.s_j()?.finite() {
        push(p.clone(), "S_J", &mut elements);
    }
    let roots = curve.split_roots()?;
    for which in 0..roots.len() {
        let (_, img) = theta_delta_torsion(curve, which)?;
        for v in img.values {
            if !v.den().is_one() {
                return Err(Error::InvalidInput("torsion component outside O_K".into()));
            }
            push(v.num().clone(), "W_J", &mut elements);
        }
    }
    for e in extras {
        if e.field() != field {
            return Err(Error::FieldMismatch);
        }
        push(e.clone(), "extra", &mut elements);
    }
    Ok(YJ {
        l,
        elements,
        labels,
        disc: curve.disc().clone(),
    })
}

/// `(α/𝔮)_ℓ = 1` for every `α ∈ Y_J`, i.e. `𝔮` splits completely in
/// `K(Y_J^{1/ℓ})`.
pub fn dprime_member(q: &Place, yj: &YJ) -> Result<bool> {
    Ok(dprime_symbols(q, yj)?.iter().all(|&j| j == 0))
}

/// The symbol exponents `(α/𝔮)_ℓ`, `α ∈ Y_J`.
pub fn dprime_symbols(q: &Place, yj: &YJ) -> Result<Vec<u64>> {
    let p = q
        .prime()
        .ok_or_else(|| Error::InvalidInput("𝒟' consists of finite places".into()))?;
    if p.divides(&yj.disc) {
        return Err(Error::NotCoprime(format!("({p}) divides Δ_f")));
    }
    yj.elements
        .iter()
        .map(|a| {
            euler_symbol(a, p, yj.l)?
                .exponent()
                .ok_or_else(|| Error::NotCoprime(format!("({p}) divides {a}")))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthStep {
    pub d: String,
    pub support: Vec<(String, u32)>,
    pub cumulative: String,
    pub yj: Vec<String>,
    /// `(prime, exponents of (α/𝔮) for α ∈ Y_J)`.
    pub symbols: Vec<(String, Vec<u64>)>,
    /// `ord_𝔮(D(z_d - z_i))` for each new prime and component.
    pub escape_ords: Vec<(String, Vec<i64>)>,
    pub escape_class: AmbientClass,
    pub labels: Vec<String>,
    pub escape_outside: bool,
    pub prior_trivial: bool,
    pub local_powers: bool,
    pub certified_dim: usize,
    pub certified: bool,
    #[serde(skip)]
    pub param: Option<TwistParam>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub baseline_dim: usize,
    pub ambient_dim: usize,
    pub steps: Vec<GrowthStep>,
}

/// Pick `D` from `𝒟'_{Y_J}`: a prime of degree divisible by `ℓ`, or
/// `𝔮_1 𝔮_2^s` with `deg 𝔮_1 + s deg 𝔮_2 ≡ 0 mod ℓ`.
fn choose_twist(curve: &SuperellipticCurve, yj: &YJ, maxdeg: usize) -> Result<Option<(TwistParam, Vec<PolyFq>)>> {
    let l = curve.ell() as usize;
    let sj = curve.s_j()?;
    let mut pending: Option<PolyFq> = None;
    for n in 1..=maxdeg {
        for p in irreducibles_of_degree(curve.field(), n)? {
            let v = Place::Finite(p.clone());
            if sj.contains(&v) || !dprime_member(&v, yj)? {
                continue;
            }
            if n % l == 0 {
                return Ok(Some((TwistParam::new(p.clone())?, vec![p])));
            }
            match pending.take() {
                None => pending = Some(p),
                Some(q1) => {
                    let d1 = q1.degree().expect("prime") % l;
                    let d2 = n % l;
                    // s d2 ≡ -d1 mod ℓ
                    let s = (1..l).find(|s| (s * d2 + d1) % l == 0).expect("ℓ prime, d2 ≠ 0");
                    let d = &q1 * &p.pow(s as u64);
                    return Ok(Some((TwistParam::new(d)?, vec![q1, p])));
                }
            }
        }
    }
    Ok(None)
}

/// Twist `n` times by elements of `𝒟'_{Y_J}` of the current curve, certifying
/// at each step that the new torsion image escapes the previous ambient group
/// and that earlier classes stay locally trivial at the new primes.
pub fn grow_selmer(curve: &SuperellipticCurve, steps: usize, maxdeg: usize) -> Result<GrowthReport> {
    let l = curve.ell();
    let roots = curve.split_roots()?.len();
    let mut certified: Vec<(AmbientGroup, AmbientClass)> = Vec::new();
    for w in 0..roots {
        let (g, img) = theta_delta_torsion(curve, w)?;
        certified.push((g, img.class));
    }
    let baseline_dim = rank(&certified.iter().map(|(_, c)| c.coords.clone()).collect::<Vec<_>>(), l);
    let ambient_dim = certified[0].0.dim();
    let mut cur = curve.clone();
    let mut out = Vec::new();
    for step in 0..steps {
        let yj = build_yj(&cur, &[])?;
        let (d, primes) = choose_twist(&cur, &yj, maxdeg)?.ok_or_else(|| {
            Error::Exhausted(format!(
                "no twist found at step {} with primes of degree ≤ {maxdeg} ({} steps completed)",
                step + 1,
                step
            ))
        })?;
        let prev_sj = cur.s_j()?;
        let next = cur.twist_by(&d)?;
        let designated = roots - 1;
        let (group, esc) = theta_delta_torsion(&next, designated)?;

        let mut escape_ords = Vec::new();
        let mut ords_ok = true;
        for p in &primes {
            let ords: Vec<i64> = esc
                .values
                .iter()
                .map(|v| poly_ord(p, v.num()).map(|o| o as i64))
                .collect::<Result<_>>()?;
            ords_ok &= ords.iter().all(|o| o.rem_euclid(l as i64) != 0);
            escape_ords.push((p.to_string(), ords));
        }
        let prior: Vec<Vector> = certified
            .iter()
            .map(|(g, c)| group.embed_from(g, c).map(|x| x.coords))
            .collect::<Result<_>>()?;
        let before = rank(&prior, l);
        let mut with_escape = prior.clone();
        with_escape.push(esc.class.coords.clone());
        let escape_outside =
            ords_ok && !group.supported_on(&esc.class, &prev_sj) && rank(&with_escape, l) == before + 1;

        let mut prior_trivial = true;
        for p in &primes {
            let v = Place::Finite(p.clone());
            for c in &prior {
                prior_trivial &= res_place(&group, &AmbientClass { coords: c.clone() }, &v)?.trivial;
            }
        }
        let dk = KElem::from_poly(d.value().clone());
        let mut local_powers = true;
        for v in prev_sj.iter() {
            local_powers &= is_lth_power_local(v, &dk, l)?;
        }

        let symbols = primes
            .iter()
            .map(|p| Ok((p.to_string(), dprime_symbols(&Place::Finite(p.clone()), &yj)?)))
            .collect::<Result<Vec<_>>>()?;
        for w in 0..roots {
            let (g, img) = theta_delta_torsion(&next, w)?;
            certified.push((g, img.class));
        }
        let all: Vec<Vector> = certified
            .iter()
            .map(|(g, c)| group.embed_from(g, c).map(|x| x.coords))
            .collect::<Result<_>>()?;
        let certified_dim = rank(&all, l);
        let deg_ok = d.degree() as u64 % l == 0 && !d.is_lth_power_ideal(l);
        out.push(GrowthStep {
            d: d.value().to_string(),
            support: d.support().iter().map(|(p, e)| (p.to_string(), *e)).collect(),
            cumulative: next.twist().to_string(),
            yj: yj.labels.clone(),
            symbols,
            escape_ords,
            escape_class: esc.class.clone(),
            labels: group.labels(),
            escape_outside,
            prior_trivial,
            local_powers,
            certified_dim,
            certified: deg_ok && escape_outside && prior_trivial && local_powers,
            param: Some(d),
        });
        cur = next;
    }
    Ok(GrowthReport {
        baseline_dim,
        ambient_dim,
        steps: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{field_make, Field};

    fn k3() -> Field {
        field_make(3, 1).unwrap()
    }

    fn split_cubic() -> SuperellipticCurve {
        let k = k3();
        let f = vec![
            PolyFq::zero(&k),
            PolyFq::from_ints(&k, &[0, 1]),
            PolyFq::from_ints(&k, &[-1, -1]),
            PolyFq::one(&k),
        ];
        SuperellipticCurve::new(&k, 2, f, None).unwrap()
    }

    #[test]
    fn yj_contents() {
        let k = k3();
        let yj = build_yj(&split_cubic(), &[]).unwrap();
        assert!(yj.elements.contains(&PolyFq::from_ints(&k, &[2])));
        assert!(yj.elements.contains(&PolyFq::var(&k)));
        assert!(yj.elements.contains(&PolyFq::from_ints(&k, &[-1, 1])));
        let distinct: std::collections::HashSet<_> = yj.elements.iter().collect();
        assert_eq!(distinct.len(), yj.elements.len());
    }

    #[test]
    fn dprime_minus_one() {
        let k = k3();
        let yj = YJ {
            l: 2,
            elements: vec![PolyFq::from_ints(&k, &[-1])],
            labels: vec![],
            disc: PolyFq::one(&k),
        };
        for n in 1..=4 {
            for p in irreducibles_of_degree(&k, n).unwrap() {
                assert_eq!(dprime_member(&Place::Finite(p), &yj).unwrap(), n % 2 == 0);
            }
        }
    }

    #[test]
    fn growth_two_steps() {
        let c = split_cubic();
        let r = grow_selmer(&c, 2, 8).unwrap();
        assert_eq!(r.baseline_dim, 2);
        assert_eq!(r.steps.len(), 2);
        for (i, s) in r.steps.iter().enumerate() {
            assert!(s.certified, "{s:?}");
            assert!(s.certified_dim >= r.baseline_dim + i + 1);
        }
        assert!(grow_selmer(&c, 0, 8).unwrap().steps.is_empty());
        assert!(matches!(grow_selmer(&c, 1, 1), Err(Error::Exhausted(_))));
    }
}
