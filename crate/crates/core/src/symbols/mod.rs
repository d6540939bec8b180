//! Power residue symbols over `F_q[t]`, `Z` and `Z[ω]`, the extended
//! symbols at `λ` and at archimedean places, and reciprocity checks.

mod eisenstein;
mod integer;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{factor, irreducibles_of_degree, ConstantExtension, Fe, Field, PolyFq};

pub use eisenstein::{
    eisenstein_factor, factor_element, primes_above, residue_symbol_eisenstein, symbol_at_lambda_3,
    EisensteinInt,
};
pub use integer::{
    jacobi_symbol, residue_symbol_int, symbol_at_archimedean, symbol_at_lambda,
    symbol_at_lambda_2, verify_flip, verify_rec1,
};

/// Value of a power residue symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SymbolValue {
    /// `ζ_n^j` with `0 ≤ j < n`.
    Root { j: u64, n: u64 },
    Zero,
    /// The `-1` of an extended (local solvability) symbol.
    NonResidue,
}

impl SymbolValue {
    pub fn one(n: u64) -> Self {
        SymbolValue::Root { j: 0, n }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, SymbolValue::Root { j: 0, .. })
    }

    /// Exponent `j` of a root-of-unity value.
    pub fn exponent(&self) -> Option<u64> {
        match self {
            SymbolValue::Root { j, .. } => Some(*j),
            _ => None,
        }
    }

    /// Product of two `μ_n` values; `Zero` absorbs.
    pub fn mul(self, other: Self) -> Result<Self> {
        match (self, other) {
            (SymbolValue::Zero, _) | (_, SymbolValue::Zero) => Ok(SymbolValue::Zero),
            (SymbolValue::Root { j: a, n }, SymbolValue::Root { j: b, n: m }) if n == m => {
                Ok(SymbolValue::Root { j: (a + b) % n, n })
            }
            _ => Err(Error::InvalidInput("incompatible symbol values".into())),
        }
    }

    pub fn pow(self, e: i64) -> Self {
        match self {
            SymbolValue::Root { j, n } => {
                let je = (j as i128 * e as i128).rem_euclid(n as i128) as u64;
                SymbolValue::Root { j: je, n }
            }
            other => other,
        }
    }
}

/// `(α / P)_n` for a monic irreducible `P`, by Euler's criterion in
/// `F_q[t]/(P)`. Requires `n | q - 1`.
pub fn residue_symbol_prime_ff(alpha: &PolyFq, p: &PolyFq, n: u64) -> Result<SymbolValue> {
    let field = p.field();
    field.check_roots_of_unity(n)?;
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if !p.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    euler_symbol(alpha, p, n)
}

/// Euler's criterion without re-checking that `P` is irreducible.
pub fn euler_symbol(alpha: &PolyFq, p: &PolyFq, n: u64) -> Result<SymbolValue> {
    let field = p.field();
    let a = alpha.rem(p)?;
    if a.is_zero() {
        return Ok(SymbolValue::Zero);
    }
    let value = match (field.size() as u128).checked_pow(p.deg() as u32) {
        Some(size) => {
            let r = a.pow_mod((size - 1) / n as u128, p)?;
            debug_assert!(r.is_constant());
            r.coeff(0)
        }
        // residue field too large for a direct exponent: go through the norm
        None => field.pow(p.resultant(&a)?, (field.size() - 1) / n),
    };
    root_value(field, value, n)
}

/// `(α / P)_n` computed as `N(α mod P)^{(q-1)/n}`, with the norm taken as
/// the resultant `Res(P, α)`.
pub fn norm_symbol(alpha: &PolyFq, p: &PolyFq, n: u64) -> Result<SymbolValue> {
    let field = p.field();
    let r = p.resultant(&alpha.rem(p)?)?;
    if r == 0 {
        return Ok(SymbolValue::Zero);
    }
    root_value(field, field.pow(r, (field.size() - 1) / n), n)
}

fn root_value(field: &Field, value: Fe, n: u64) -> Result<SymbolValue> {
    field
        .mu_exponent(value, n)
        .map(|j| SymbolValue::Root { j, n })
        .ok_or_else(|| Error::InvalidInput("symbol value outside μ_n".into()))
}

/// `(α / β)_n := ∏ (α / P_i)^{a_i}` over the factorization of `β`.
pub fn residue_symbol_composite(alpha: &PolyFq, beta: &PolyFq, n: u64) -> Result<SymbolValue> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroInput("composite symbol argument"));
    }
    alpha.field().check_roots_of_unity(n)?;
    if !alpha.gcd(beta)?.is_one() {
        return Err(Error::NotCoprime(format!("{alpha} and {beta}")));
    }
    let mut acc = SymbolValue::one(n);
    for (p, e) in factor(beta, 0)?.factors {
        acc = acc.mul(euler_symbol(alpha, &p, n)?.pow(e as i64))?;
    }
    Ok(acc)
}

/// Exponent of `(-1)^m` as an element of `μ_n ⊂ k*`.
fn sign_exponent(field: &Field, m: u128, n: u64) -> u64 {
    let v = if m % 2 == 0 { 1 } else { field.neg(1) };
    // u64::MAX never matches a symbol exponent: -1 outside μ_n is a violation
    field.mu_exponent(v, n).unwrap_or(u64::MAX)
}

fn check_pair(g: &PolyFq, h: &PolyFq) -> Result<()> {
    if !g.is_monic() || !h.is_monic() {
        return Err(Error::NotMonic);
    }
    if g == h {
        return Err(Error::InvalidInput("reciprocity needs distinct g and h".into()));
    }
    if !g.gcd(h)?.is_one() {
        return Err(Error::NotCoprime(format!("{g} and {h}")));
    }
    Ok(())
}

/// Both reciprocity identities over `F_q[t]` for a monic coprime pair:
/// `(g/h)(h/g)^{-1} = (-1)^{((Q-1)/n) deg g deg h}` and
/// `(-1/g) = (-1)^{((Q-1)/n) deg g}`, with `Q = #k`.
pub fn verify_reciprocity_ff(g: &PolyFq, h: &PolyFq, n: u64) -> Result<bool> {
    let field = g.field();
    field.check_roots_of_unity(n)?;
    check_pair(g, h)?;
    let e = (field.size() - 1) / n;
    let jgh = residue_symbol_composite(g, h, n)?.exponent().expect("coprime");
    let jhg = residue_symbol_composite(h, g, n)?.exponent().expect("coprime");
    let (dg, dh) = (g.deg() as u128, h.deg() as u128);
    let lhs = (jgh + n - jhg) % n;
    let main = lhs == sign_exponent(field, e as u128 * dg * dh, n);
    let minus_one = PolyFq::constant(field, field.neg(1));
    let jm = residue_symbol_composite(&minus_one, g, n)?.exponent().expect("unit");
    let supplement = jm == sign_exponent(field, e as u128 * dg, n);
    Ok(main && supplement)
}

/// `(h/g) = (g/h)` for monic coprime `g, h` with `(-1/g)_n = 1`.
pub fn verify_flip_ff(g: &PolyFq, h: &PolyFq, n: u64) -> Result<bool> {
    let field = g.field();
    field.check_roots_of_unity(n)?;
    check_pair(g, h)?;
    let minus_one = PolyFq::constant(field, field.neg(1));
    if !residue_symbol_composite(&minus_one, g, n)?.is_one() {
        return Err(Error::Hypothesis(format!("(-1/{g}) is not 1")));
    }
    Ok(residue_symbol_composite(g, h, n)? == residue_symbol_composite(h, g, n)?)
}

/// Result of a full reciprocity sweep over monic polynomials of bounded degree.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub q: u64,
    pub n: u64,
    pub maxdeg: usize,
    pub pairs_checked: u64,
    pub flips_checked: u64,
    pub minus_one_checked: u64,
    pub violations: Vec<(String, String)>,
}

/// Checks both reciprocity identities (and the flip lemma where its
/// hypothesis holds) for every unordered pair of distinct coprime monic
/// polynomials of degree `≤ maxdeg`. Prime symbols are evaluated once by
/// Euler's criterion and composite symbols assembled from factorizations.
pub fn reciprocity_sweep(field: &Field, n: u64, maxdeg: usize) -> Result<SweepReport> {
    field.check_roots_of_unity(n)?;
    let mut primes: Vec<PolyFq> = Vec::new();
    for d in 1..=maxdeg {
        primes.extend(irreducibles_of_degree(field, d)?);
    }
    let index: HashMap<PolyFq, usize> =
        primes.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut monics: Vec<PolyFq> = Vec::new();
    for d in 0..=maxdeg {
        monics.extend(PolyFq::monics_of_degree(field, d));
    }
    // factorizations as (prime index, exponent)
    let facs: Vec<Vec<(usize, u32)>> = monics
        .iter()
        .map(|m| {
            Ok(if m.is_one() {
                Vec::new()
            } else {
                factor(m, 0)?
                    .factors
                    .into_iter()
                    .map(|(p, e)| (index[&p], e))
                    .collect()
            })
        })
        .collect::<Result<_>>()?;
    // table[i][m] = exponent of (monics[m] / primes[i]), or n for zero
    let mut table = vec![vec![0u64; monics.len()]; primes.len()];
    for (i, p) in primes.iter().enumerate() {
        for (m, a) in monics.iter().enumerate() {
            table[i][m] = match euler_symbol(a, p, n)? {
                SymbolValue::Root { j, .. } => j,
                _ => n,
            };
        }
    }
    let minus_one = PolyFq::constant(field, field.neg(1));
    let minus_one_sym: Vec<u64> = primes
        .iter()
        .map(|p| euler_symbol(&minus_one, p, n).map(|s| s.exponent().expect("unit")))
        .collect::<Result<_>>()?;
    let e = ((field.size() - 1) / n) as u128;
    let sign = [sign_exponent(field, 0, n), sign_exponent(field, 1, n)];
    let composite = |a: usize, b: usize| -> Option<u64> {
        let mut acc = 0u64;
        for &(i, k) in &facs[b] {
            let s = table[i][a];
            if s == n {
                return None;
            }
            acc = (acc + s * k as u64) % n;
        }
        Some(acc)
    };
    let mut report = SweepReport {
        q: field.size(),
        n,
        maxdeg,
        ..Default::default()
    };
    for g in 0..monics.len() {
        let dg = monics[g].deg() as u128;
        let jm = facs[g]
            .iter()
            .fold(0, |acc, &(i, k)| (acc + minus_one_sym[i] * k as u64) % n);
        report.minus_one_checked += 1;
        let flip_ok = jm == 0;
        if jm != sign[((e * dg) % 2) as usize] {
            report
                .violations
                .push(("-1".to_string(), monics[g].to_string()));
        }
        for h in g + 1..monics.len() {
            let (Some(jgh), Some(jhg)) = (composite(g, h), composite(h, g)) else {
                continue;
            };
            let dh = monics[h].deg() as u128;
            report.pairs_checked += 1;
            let lhs = (jgh + n - jhg) % n;
            let ok = lhs == sign[((e * dg * dh) % 2) as usize];
            // flip lemma, for whichever side satisfies its hypothesis
            let jmh = facs[h]
                .iter()
                .fold(0, |acc, &(i, k)| (acc + minus_one_sym[i] * k as u64) % n);
            let mut flip = true;
            if flip_ok || jmh == 0 {
                report.flips_checked += 1;
                flip = jgh == jhg;
            }
            if !ok || !flip {
                report
                    .violations
                    .push((monics[g].to_string(), monics[h].to_string()));
            }
        }
    }
    Ok(report)
}

/// Descent of residues from `k'[t]` to `k[t]`: for `𝔮` of degree coprime to
/// `[k':k]` (so `𝔮` stays prime in `k'[t]`) and `[k':k]` prime to `n`,
/// `(α/𝔮)_{k'} = 1` must force
/// `(α/𝔮)_k = 1`. Returns `Ok(true)` when the implication holds.
pub fn verify_lk_descent(
    alpha: &PolyFq,
    q: &PolyFq,
    ext: &ConstantExtension,
    n: u64,
) -> Result<bool> {
    if q.deg() % ext.degree() as usize == 0 {
        return Err(Error::Hypothesis("prime degree divisible by [k':k]".into()));
    }
    if num_integer::gcd(ext.degree() as u64, n) != 1 {
        return Err(Error::Hypothesis(format!("[k':k] = {} is not prime to {n}", ext.degree())));
    }
    let down = euler_symbol(alpha, q, n)?;
    let up = euler_symbol(&ext.embed_poly(alpha), &ext.embed_poly(q), n)?;
    Ok(!up.is_one() || down.is_one())
}
