//! Point counts over `F_{q^i}`, L-polynomials, and exhaustive search for
//! `K`-points of bounded height.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::descent::{eval_at_kelem, SuperellipticCurve};
use crate::error::{Error, Result};
use crate::ffpoly::{factor, ConstantExtension, Fe, Field, PolyFq};
use crate::places::KElem;

/// `#C(F_{q^i})` on the smooth model: affine solutions plus one point at
/// infinity.
pub fn count_points(curve: &SuperellipticCurve, i: u32) -> Result<u64> {
    if !curve.is_constant() {
        return Err(Error::InvalidInput("point counts need constant coefficients".into()));
    }
    if i == 0 {
        return Err(Error::InvalidDegree("extension index must be positive".into()));
    }
    let k = curve.field();
    let ext = ConstantExtension::new(k, i)?;
    let big = ext.ext();
    let f = PolyFq::new(big, curve.f().iter().map(|c| ext.embed(c.coeff(0))).collect());
    let l = curve.ell();
    let e = (big.size() - 1) / l;
    let mut n = 1;
    for x in big.elements() {
        let v = f.eval(x);
        n += if v == 0 {
            1
        } else if big.pow(v, e) == 1 {
            l
        } else {
            0
        };
    }
    Ok(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaData {
    pub q: u64,
    pub genus: usize,
    pub counts: Vec<u64>,
    /// `P(T) = Σ a_k T^k`, `k = 0..2g`.
    pub l_poly: Vec<i128>,
    pub jacobian_order: i128,
}

fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    // monic normalisation, coefficients from degree 0
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let c: Vec<f64> = coeffs.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// Recover `P(T)` from `#C(F_{q^i})`, `i = 1..2g`, by Newton's identities.
pub fn zeta_from_counts(q: u64, counts: &[u64]) -> Result<ZetaData> {
    if counts.len() % 2 != 0 {
        return Err(Error::InvalidInput("need counts for i = 1..2g".into()));
    }
    let g2 = counts.len();
    let q = q as i128;
    // power sums of the inverse roots: S_i = q^i + 1 - N_i
    let s: Vec<i128> = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| q.pow(i as u32 + 1) + 1 - n as i128)
        .collect();
    let mut a = vec![1i128];
    for k in 1..=g2 {
        let acc: i128 = (1..=k).map(|i| s[i - 1] * a[k - i]).sum();
        if acc % k as i128 != 0 {
            return Err(Error::InconsistentCounts(format!("Newton step {k} is not integral")));
        }
        a.push(-acc / k as i128);
    }
    let g = g2 / 2;
    for i in 0..=g {
        if a[g2 - i] != q.pow((g - i) as u32) * a[i] {
            return Err(Error::InconsistentCounts(format!("a_{} ≠ q^{} a_{i}", g2 - i, g - i)));
        }
    }
    if g > 0 {
        let roots = durand_kerner(&a.iter().map(|&x| x as f64).collect::<Vec<_>>());
        let sq = (q as f64).sqrt();
        for r in roots {
            // inverse roots have absolute value √q
            let alpha = 1.0 / r.norm();
            if (alpha - sq).abs() > 1e-6 * sq.max(1.0) {
                return Err(Error::InconsistentCounts(format!("inverse root of modulus {alpha}")));
            }
        }
    }
    let jacobian_order: i128 = a.iter().sum();
    if jacobian_order <= 0 {
        return Err(Error::InconsistentCounts("P(1) ≤ 0".into()));
    }
    Ok(ZetaData {
        q: q as u64,
        genus: g,
        counts: counts.to_vec(),
        l_poly: a,
        jacobian_order,
    })
}

/// `#C(F_{q^i})` for `i = 1..2g` followed by [`zeta_from_counts`].
pub fn zeta_of_curve(curve: &SuperellipticCurve) -> Result<ZetaData> {
    let g = curve.genus() as u32;
    let counts = (1..=2 * g).map(|i| count_points(curve, i)).collect::<Result<Vec<_>>>()?;
    zeta_from_counts(curve.field().size(), &counts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KPoint {
    pub x: String,
    pub y: String,
    #[serde(skip)]
    pub xk: KElem,
    #[serde(skip)]
    pub yk: KElem,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointSearch {
    pub bound: usize,
    pub affine: Vec<KPoint>,
    /// Affine points plus the point at infinity.
    pub total: usize,
}

fn lth_roots_table(field: &Field, l: u64) -> HashMap<Fe, Fe> {
    let mut t = HashMap::new();
    for r in field.elements() {
        t.entry(field.pow(r, l)).or_insert(r);
    }
    t
}

/// An `ℓ`-th root in `O_K` of a nonzero polynomial, if there is one.
fn poly_lth_root(p: &PolyFq, l: u64, roots: &HashMap<Fe, Fe>) -> Result<Option<PolyFq>> {
    let c = match roots.get(&p.leading_coeff()) {
        Some(&c) => c,
        None => return Ok(None),
    };
    let mut acc = PolyFq::constant(p.field(), c);
    if p.is_constant() {
        return Ok(Some(acc));
    }
    for (q, e) in factor(p, 0)?.factors {
        if e as u64 % l != 0 {
            return Ok(None);
        }
        acc = &acc * &q.pow(e as u64 / l);
    }
    Ok(Some(acc))
}

/// An `ℓ`-th root of `v ∈ K*`, found from the factorization.
pub fn kelem_lth_root(v: &KElem, l: u64) -> Result<Option<KElem>> {
    let roots = lth_roots_table(v.field(), l);
    lth_root_with(v, l, &roots)
}

fn lth_root_with(v: &KElem, l: u64, roots: &HashMap<Fe, Fe>) -> Result<Option<KElem>> {
    let n = match poly_lth_root(v.num(), l, roots)? {
        Some(n) => n,
        None => return Ok(None),
    };
    let d = match poly_lth_root(v.den(), l, roots)? {
        Some(d) => d,
        None => return Ok(None),
    };
    Ok(Some(KElem::new(n, d)?))
}

/// All affine `K`-points with `x = a/b` in lowest terms, `max(deg a, deg b) ≤ B`.
pub fn bounded_point_search(curve: &SuperellipticCurve, bound: usize) -> Result<PointSearch> {
    let k = curve.field();
    let l = curve.ell();
    let roots = lth_roots_table(k, l);
    let zeta = k.root_of_unity(l)?;
    let mut numerators: Vec<PolyFq> = vec![PolyFq::zero(k)];
    for n in 0..=bound {
        for m in PolyFq::monics_of_degree(k, n) {
            for c in k.elements().skip(1) {
                numerators.push(m.scale(c));
            }
        }
    }
    let mut affine = Vec::new();
    for n in 0..=bound {
        for b in PolyFq::monics_of_degree(k, n) {
            for a in &numerators {
                if !a.gcd(&b)?.is_one() {
                    continue;
                }
                let x = KElem::new(a.clone(), b.clone())?;
                let v = eval_at_kelem(curve.f(), &x)?;
                let ys: Vec<KElem> = if v.is_zero() {
                    vec![v]
                } else if let Some(y) = lth_root_with(&v, l, &roots)? {
                    let mut ys = Vec::new();
                    let mut cur = y;
                    for _ in 0..l {
                        ys.push(cur.clone());
                        cur = cur.mul(&KElem::constant(k, zeta));
                    }
                    ys
                } else {
                    Vec::new()
                };
                for y in ys {
                    affine.push(KPoint {
                        x: format!("{x:?}"),
                        y: format!("{y:?}"),
                        xk: x.clone(),
                        yk: y,
                    });
                }
            }
        }
    }
    let total = affine.len() + 1;
    Ok(PointSearch { bound, affine, total })
}
