//! Squarefree, distinct-degree and equal-degree factorization over `F_q`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{factor_u64, mobius};
use crate::error::{Error, Result};

use super::field::{Fe, Field};
use super::poly::PolyFq;

/// `lc · ∏ P_i^{e_i}` with monic irreducible `P_i` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(PolyFq, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &Field) -> PolyFq {
        let mut acc = PolyFq::constant(field, self.unit);
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e as u64);
        }
        acc
    }
}

impl PolyFq {
    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None => return Err(Error::ZeroInput("irreducibility of zero")),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let x = PolyFq::var(self.field());
        let q = self.field().size() as u128;
        // x^{q^i} for i = 1..n
        let mut powers = Vec::with_capacity(n);
        let mut cur = x.clone();
        for _ in 0..n {
            cur = cur.pow_mod(q, &f)?;
            powers.push(cur.clone());
        }
        if powers[n - 1] != x.rem(&f)? {
            return Ok(false);
        }
        for (r, _) in factor_u64(n as u64) {
            let h = &powers[n / r as usize - 1] - &x;
            if !f.gcd(&h)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Squarefree decomposition of a monic polynomial: `[(g_i, i)]` with
/// `f = ∏ g_i^i`, each `g_i` squarefree and pairwise coprime.
fn squarefree(f: &PolyFq) -> Result<Vec<(PolyFq, u32)>> {
    let field = f.field().clone();
    let p = field.characteristic();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p); take the p-th root coefficientwise.
        let root_exp = field.size() / p;
        let coeffs: Vec<Fe> = f
            .coeffs()
            .iter()
            .step_by(p as usize)
            .map(|&c| field.pow(c, root_exp))
            .collect();
        let g = PolyFq::new(&field, coeffs);
        for (h, e) in squarefree(&g)? {
            out.push((h, e * p as u32));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&d)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if !c.is_one() {
        let root_exp = field.size() / p;
        let coeffs: Vec<Fe> = c
            .coeffs()
            .iter()
            .step_by(p as usize)
            .map(|&x| field.pow(x, root_exp))
            .collect();
        let g = PolyFq::new(&field, coeffs);
        for (h, e) in squarefree(&g)? {
            out.push((h, e * p as u32));
        }
    }
    Ok(out)
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &PolyFq) -> Result<Vec<(PolyFq, usize)>> {
    let mut out = Vec::new();
    let x = PolyFq::var(f.field());
    let q = f.field().size() as u128;
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut i = 0usize;
    while rest.deg() >= 2 * (i + 1) {
        i += 1;
        h = h.pow_mod(q, &rest)?;
        let g = rest.gcd(&(&h - &x))?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, i));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    Ok(out)
}

fn random_poly(field: &Field, below: usize, rng: &mut ChaCha8Rng) -> PolyFq {
    let q = field.size();
    PolyFq::new(field, (0..below).map(|_| rng.gen_range(0..q)).collect())
}

/// Split a monic squarefree product of irreducibles of degree `d`.
fn equal_degree(f: &PolyFq, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<PolyFq>> {
    let n = f.deg();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let q = field.size();
    loop {
        let a = random_poly(&field, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..d {
                t = t.pow_mod(q as u128, f)?;
                s = s.mul_mod(&t, f)?;
            }
            &s.pow_mod(((q - 1) / 2) as u128, f)? - &PolyFq::one(&field)
        } else {
            // absolute trace to F_2
            let k = field.degree() as usize * d;
            let mut t = a.rem(f)?;
            let mut s = t.clone();
            for _ in 1..k {
                t = t.mul_mod(&t, f)?;
                s = &s + &t;
            }
            s
        };
        let g = f.gcd(&b)?;
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_exact(&g)?;
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&h, d, rng)?);
            return Ok(out);
        }
    }
}

/// Full factorization. The result is independent of `seed`; the seed only
/// drives the random splitting.
pub fn factor(f: &PolyFq, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor of zero"));
    }
    let unit = f.leading_coeff();
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(PolyFq, u32)> = Vec::new();
    for (g, e) in squarefree(&monic)? {
        for (h, d) in distinct_degree(&g)? {
            for irr in equal_degree(&h, d, &mut rng)? {
                factors.push((irr, e));
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    // merge equal factors coming from different squarefree strata
    let mut merged: Vec<(PolyFq, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        match merged.last_mut() {
            Some((q, ee)) if *q == p => *ee += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(Factorization {
        unit,
        factors: merged,
    })
}

/// Number of monic irreducibles of degree `n` over `F_q`: `(1/n) Σ μ(d) q^{n/d}`.
pub fn count_irreducibles(q: u64, n: u32) -> u128 {
    let mut total: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(d as u64) as i128 * (q as i128).pow(n / d);
        }
    }
    (total / n as i128) as u128
}

const SIEVE_LIMIT: u128 = 1 << 24;

/// All monic irreducibles of degree `n` in canonical (encoding) order.
pub fn irreducibles_of_degree(field: &Field, n: usize) -> Result<Vec<PolyFq>> {
    if n < 1 {
        return Err(Error::InvalidDegree("degree must be at least 1".into()));
    }
    let q = field.size() as u128;
    let total = q
        .checked_pow(n as u32)
        .ok_or_else(|| Error::InvalidDegree(format!("q^{n} overflows")))?;
    if n == 1 {
        return Ok(PolyFq::monics_of_degree(field, 1).collect());
    }
    if total > SIEVE_LIMIT {
        return Ok(PolyFq::monics_of_degree(field, n)
            .filter(|f| f.is_irreducible().unwrap_or(false))
            .collect());
    }
    // Sieve: mark every product of a monic irreducible of degree i <= n/2
    // with a monic of degree n - i.
    let mut composite = vec![false; total as usize];
    for i in 1..=n / 2 {
        for a in irreducibles_of_degree(field, i)? {
            for b in PolyFq::monics_of_degree(field, n - i) {
                let c = &a * &b;
                let mut code = c.coeffs()[..n].to_vec();
                code.reverse();
                let idx = code.iter().fold(0u128, |acc, &x| acc * q + x as u128);
                composite[idx as usize] = true;
            }
        }
    }
    Ok(composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(idx, _)| {
            let mut v = PolyFq::decode(field, idx as u128, n).coeffs().to_vec();
            v.resize(n, 0);
            v.push(1);
            PolyFq::new(field, v)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::field_make;

    fn p(f: &Field, c: &[i64]) -> PolyFq {
        PolyFq::from_ints(f, c)
    }

    #[test]
    fn factor_examples() {
        let f5 = field_make(5, 1).unwrap();
        let fac = factor(&p(&f5, &[-1, 0, 1]), 7).unwrap();
        assert_eq!(fac.unit, 1);
        assert_eq!(fac.factors, vec![(p(&f5, &[1, 1]), 1), (p(&f5, &[4, 1]), 1)]);

        let f3 = field_make(3, 1).unwrap();
        let cubic = p(&f3, &[1, 2, 0, 1]);
        // root scan oracle
        assert!((0..3).all(|x| cubic.eval(x) != 0));
        assert_eq!(factor(&cubic, 1).unwrap().factors, vec![(cubic.clone(), 1)]);
        assert!(cubic.is_irreducible().unwrap());

        let sq = p(&f3, &[1, 1]).pow(2);
        assert_eq!(factor(&sq, 3).unwrap().factors, vec![(p(&f3, &[1, 1]), 2)]);
        assert!(!sq.is_irreducible().unwrap());

        assert!(factor(&PolyFq::zero(&f3), 0).is_err());
        assert_eq!(PolyFq::one(&f3).is_irreducible(), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn inseparable_parts_are_handled() {
        // (t^3 + t + 1)^3 * (t + 2)^4 over F_3, and t^4 + 1 = (t^2+1)^2 over F_2.
        let f3 = field_make(3, 1).unwrap();
        let a = p(&f3, &[1, 2, 0, 1]);
        let b = p(&f3, &[2, 1]);
        let f = &a.pow(3) * &b.pow(4);
        let fac = factor(&f, 11).unwrap();
        assert_eq!(fac.expand(&f3), f);
        assert_eq!(fac.factors, vec![(b, 4), (a, 3)]);

        let f4 = field_make(2, 2).unwrap();
        let g = p(&f4, &[1, 0, 0, 0, 1]);
        let fac = factor(&g, 2).unwrap();
        assert_eq!(fac.factors, vec![(p(&f4, &[1, 1]), 4)]);
    }

    #[test]
    fn seed_does_not_change_result() {
        let f9 = field_make(3, 2).unwrap();
        let f = PolyFq::new(&f9, vec![5, 0, 7, 1, 2, 8, 0, 1]);
        let a = factor(&f, 1).unwrap();
        for s in 2..10 {
            assert_eq!(factor(&f, s).unwrap(), a);
        }
        assert_eq!(a.expand(&f9), f);
    }

    #[test]
    fn irreducible_counts_small() {
        let f3 = field_make(3, 1).unwrap();
        let d1 = irreducibles_of_degree(&f3, 1).unwrap();
        assert_eq!(d1, vec![p(&f3, &[0, 1]), p(&f3, &[1, 1]), p(&f3, &[2, 1])]);
        assert_eq!(irreducibles_of_degree(&f3, 2).unwrap().len(), 3);
        let f2 = field_make(2, 1).unwrap();
        assert_eq!(irreducibles_of_degree(&f2, 3).unwrap().len(), 2);
        assert!(irreducibles_of_degree(&f2, 0).is_err());
    }

    #[test]
    fn sieve_and_rabin_agree() {
        let f4 = field_make(2, 2).unwrap();
        let sieve = irreducibles_of_degree(&f4, 4).unwrap();
        let rabin: Vec<_> = PolyFq::monics_of_degree(&f4, 4)
            .filter(|f| f.is_irreducible().unwrap())
            .collect();
        assert_eq!(sieve, rabin);
        assert_eq!(sieve.len() as u128, count_irreducibles(4, 4));
    }
}
