//! Symbols over `Z`, extended symbols at `λ` and at the real place, and the
//! number-field supplementary laws for `ℓ ∈ {2, 3}`.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::arith::{factor_u64, is_prime, pow_mod, primitive_root};
use crate::error::{Error, Result};

use super::eisenstein::{factor_element, primes_above, residue_symbol_eisenstein, symbol_at_lambda_3};
use super::{EisensteinInt, SymbolValue};

/// `(α/p)_n` for an odd prime `p` with `n | p - 1`, relative to
/// `ζ_n = g^{(p-1)/n}` for the least primitive root `g`.
pub fn residue_symbol_int(alpha: i64, p: u64, n: u64) -> Result<SymbolValue> {
    if !is_prime(p) || p == 2 {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    if n == 0 || (p - 1) % n != 0 {
        return Err(Error::NoRootsOfUnity { n, q: p });
    }
    let a = alpha.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Ok(SymbolValue::Zero);
    }
    let v = pow_mod(a, (p - 1) / n, p);
    let zeta = pow_mod(primitive_root(p), (p - 1) / n, p);
    let mut cur = 1;
    for j in 0..n {
        if cur == v {
            return Ok(SymbolValue::Root { j, n });
        }
        cur = cur * zeta % p;
    }
    unreachable!("Euler power lies in μ_n")
}

/// Quadratic symbol `(a/m)` for odd `m`, multiplied over the prime
/// factorization of `|m|`.
pub fn jacobi_symbol(a: i64, m: i64) -> Result<SymbolValue> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::InvalidInput("modulus must be odd".into()));
    }
    let mut acc = SymbolValue::one(2);
    for (p, e) in factor_u64(m.unsigned_abs()) {
        acc = acc.mul(residue_symbol_int(a, p, 2)?.pow(e as i64))?;
    }
    Ok(acc)
}

fn plus_or_minus(ok: bool, n: u64) -> SymbolValue {
    if ok {
        SymbolValue::one(n)
    } else {
        SymbolValue::NonResidue
    }
}

/// Extended symbol at `2` over `Q`: `+1` iff `α ≡ a² mod 8` with `a` odd.
pub fn symbol_at_lambda_2(alpha: i64) -> Result<SymbolValue> {
    if alpha % 2 == 0 {
        return Err(Error::NotCoprime("α is even".into()));
    }
    Ok(plus_or_minus(alpha.rem_euclid(8) == 1, 2))
}

/// Extended symbol at `λ` for `ℓ ∈ {2, 3}` (`λ = 2` over `Q`, `λ = 1 - ω`
/// over `Z[ω]`). For `ℓ = 2` the argument must be rational.
pub fn symbol_at_lambda(alpha: EisensteinInt, l: u64) -> Result<SymbolValue> {
    match l {
        2 if alpha.b == 0 => symbol_at_lambda_2(alpha.a),
        2 => Err(Error::InvalidInput("ℓ = 2 works over Q".into())),
        3 => symbol_at_lambda_3(alpha),
        _ => Err(Error::Unsupported(format!("symbol at λ for ℓ = {l}"))),
    }
}

/// Extended symbol at the real place: solvability of `x^ℓ = α` over `R`.
pub fn symbol_at_archimedean(alpha: Rational64, l: u64) -> SymbolValue {
    if alpha.is_zero() {
        SymbolValue::Zero
    } else if l == 2 {
        plus_or_minus(alpha.is_positive(), 2)
    } else {
        SymbolValue::one(l)
    }
}

/// Cubic `(α/β)_3 := ∏ (α/𝔭)^e` over the factorization of `β` in `Z[ω]`.
fn cubic_composite(alpha: EisensteinInt, beta: EisensteinInt) -> Result<SymbolValue> {
    let mut acc = SymbolValue::one(3);
    for (pi, e) in factor_element(beta)? {
        acc = acc.mul(residue_symbol_eisenstein(alpha, pi)?.pow(e as i64))?;
    }
    Ok(acc)
}

/// Flip law over `Q(ζ_ℓ)` for `ℓ ∈ {2, 3}`: if `a > 0` is prime to `ℓ` and
/// `(a/λ) = 1` then `(a/α) = (α/a)` for `α` prime to `aℓ`. A violated
/// hypothesis is an `Error::Hypothesis`, not `false`.
pub fn verify_flip(alpha: EisensteinInt, a: u64, l: u64) -> Result<bool> {
    if a == 0 || a % l == 0 {
        return Err(Error::InvalidInput(format!("a = {a} must be positive and prime to ℓ")));
    }
    let ai = EisensteinInt::from_int(a as i64);
    if !symbol_at_lambda(ai, l)?.is_one() {
        return Err(Error::Hypothesis(format!("({a}/λ) is not 1")));
    }
    match l {
        2 => {
            if alpha.b != 0 {
                return Err(Error::InvalidInput("ℓ = 2 works over Q".into()));
            }
            let x = alpha.a;
            if x % 2 == 0 || num_integer::gcd(x, a as i64) != 1 {
                return Err(Error::NotCoprime(format!("{x} and 2·{a}")));
            }
            Ok(jacobi_symbol(a as i64, x)? == jacobi_symbol(x, a as i64)?)
        }
        3 => {
            if !alpha.coprime_to_lambda() || alpha.gcd(ai).norm() != 1 {
                return Err(Error::NotCoprime(format!("{alpha:?} and 3·{a}")));
            }
            Ok(cubic_composite(ai, alpha)? == cubic_composite(alpha, ai)?)
        }
        _ => Err(Error::Unsupported(format!("flip law for ℓ = {l}"))),
    }
}

/// The supplementary implication for a rational prime `q ∤ ℓ`:
/// * `ℓ = 2`: `(-1/q) = (2/q) = 1` implies `(q/2Z) = 1`;
/// * `ℓ = 3`: for each `𝔭 | q`, `(ω/𝔭) = 1` implies `q ≡ a³ mod 9` for
///   some integer `a` and `(q/λ) = 1`.
///
/// Returns whether the implication holds (vacuously when the hypothesis fails).
pub fn verify_rec1(q: u64, l: u64) -> Result<bool> {
    if !is_prime(q) || q == l {
        return Err(Error::InvalidInput(format!("{q} must be a prime different from ℓ")));
    }
    match l {
        2 => {
            let hyp = residue_symbol_int(-1, q, 2)?.is_one() && residue_symbol_int(2, q, 2)?.is_one();
            Ok(!hyp || symbol_at_lambda_2(q as i64)?.is_one())
        }
        3 => {
            let qi = EisensteinInt::from_int(q as i64);
            let conclusion = (0..9).any(|a: u64| (a * a * a) % 9 == q % 9)
                && symbol_at_lambda_3(qi)?.is_one();
            for pi in primes_above(q) {
                if residue_symbol_eisenstein(EisensteinInt::omega(), pi)?.is_one() && !conclusion {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Err(Error::Unsupported(format!("supplementary law for ℓ = {l}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_symbols() {
        assert!(residue_symbol_int(2, 17, 2).unwrap().is_one());
        assert_eq!(residue_symbol_int(2, 5, 2).unwrap(), SymbolValue::Root { j: 1, n: 2 });
        assert_eq!(residue_symbol_int(34, 17, 2).unwrap(), SymbolValue::Zero);
        assert!(residue_symbol_int(2, 17, 3).is_err());
    }

    #[test]
    fn euler_criterion_against_root_search() {
        for p in [7u64, 13, 19, 31] {
            for n in [2u64, 3] {
                if (p - 1) % n != 0 {
                    continue;
                }
                for a in 1..p {
                    let has_root = (1..p).any(|x| pow_mod(x, n, p) == a);
                    assert_eq!(residue_symbol_int(a as i64, p, n).unwrap().is_one(), has_root);
                }
            }
        }
    }

    #[test]
    fn lambda_two() {
        assert!(symbol_at_lambda_2(17).unwrap().is_one());
        assert_eq!(symbol_at_lambda_2(3).unwrap(), SymbolValue::NonResidue);
        assert!(symbol_at_lambda_2(4).is_err());
        assert!(symbol_at_lambda(EisensteinInt::from_int(8), 3).unwrap().is_one());
    }

    #[test]
    fn archimedean() {
        assert_eq!(symbol_at_archimedean(Rational64::from(-5), 2), SymbolValue::NonResidue);
        assert!(symbol_at_archimedean(Rational64::from(-5), 3).is_one());
        assert!(symbol_at_archimedean(Rational64::from(9), 2).is_one());
        assert_eq!(symbol_at_archimedean(Rational64::from(0), 2), SymbolValue::Zero);
    }

    #[test]
    fn flips() {
        assert!(verify_flip(EisensteinInt::from_int(5), 17, 2).unwrap());
        assert!(matches!(
            verify_flip(EisensteinInt::from_int(5), 3, 2),
            Err(Error::Hypothesis(_))
        ));
        assert!(verify_flip(EisensteinInt::new(3, 1), 10, 3).unwrap());
        assert!(verify_flip(EisensteinInt::new(-1, 3), 17, 3).unwrap());
    }

    #[test]
    fn rec1_examples() {
        assert!(verify_rec1(17, 2).unwrap());
        assert!(verify_rec1(5, 2).unwrap());
        assert!(verify_rec1(7, 3).unwrap());
        assert!(verify_rec1(3, 3).is_err());
    }
}
