//! Number-field backend at desk scale: `Q(ζ_ℓ)` arithmetic, class numbers of
//! imaginary quadratic orders, cubic-twist admissibility, the Fermat model,
//! and the admissible-prime tests over `Z` (`ℓ = 2`) and `Z[ω]` (`ℓ = 3`).

mod classno;
mod cyclotomic;
mod fermat;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::ffpoly::{discriminant, field_make, Fe, Field, PolyFq};
use crate::symbols::{euler_symbol, primes_above};

pub use crate::symbols::{eisenstein_factor, EisensteinInt};
pub use classno::{
    class_number, cubic_twist_admissible, field_discriminant, reduced_forms, CubicAdmissibility,
    QuadForm,
};
pub use cyclotomic::CycNum;
pub use fermat::{verify_fermat_model, FermatReport};

/// An element of `O_L = O_K[z]`, `z` a root of `f`, as integer coefficients:
/// `element[i][j]` multiplies `z^i ζ_ℓ^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WEntry {
    #[serde(default)]
    pub field_index: usize,
    pub element: Vec<Vec<i64>>,
}

/// A residue field `O_K/𝔮` for `𝔮 | q`, with the image of `ζ_ℓ`.
#[derive(Clone, Debug)]
pub struct ResidueField {
    pub field: Field,
    pub zeta: Fe,
}

/// The residue fields of the primes above `q` in `O_K`, `K = Q` for
/// `ℓ = 2` and `K = Q(ω)` for `ℓ = 3`.
pub fn residue_fields(q: u64, l: u64) -> Result<Vec<ResidueField>> {
    if !is_prime(q) || q == l {
        return Err(Error::InvalidInput(format!("{q} must be a prime different from ℓ")));
    }
    match l {
        2 => {
            let field = field_make(q, 1)?;
            let zeta = field.neg(1);
            Ok(vec![ResidueField { field, zeta }])
        }
        3 if q % 3 == 1 => {
            let field = field_make(q, 1)?;
            Ok(primes_above(q)
                .into_iter()
                .map(|pi| {
                    // a + bω ≡ 0 gives ω ≡ -a/b
                    let b = field.from_int(pi.b);
                    let zeta = field.div(field.neg(field.from_int(pi.a)), b).expect("b prime to q");
                    ResidueField {
                        field: field.clone(),
                        zeta,
                    }
                })
                .collect())
        }
        3 => {
            let field = field_make(q, 2)?;
            let zeta = field
                .elements()
                .find(|&w| field.add(field.add(field.mul(w, w), w), 1) == 0)
                .expect("F_{q²} contains cube roots of unity");
            Ok(vec![ResidueField { field, zeta }])
        }
        _ => Err(Error::Unsupported(format!("number-field backend for ℓ = {l}"))),
    }
}

fn int_poly(field: &Field, f: &[i64]) -> PolyFq {
    PolyFq::from_ints(field, f)
}

fn check_f(f: &[i64]) -> Result<()> {
    if f.len() < 2 || *f.last().expect("nonempty") != 1 {
        return Err(Error::NotMonic);
    }
    Ok(())
}

/// `q ∤ ℓ Δ_f`, tested by reducing `f` mod `q` (`f` is monic).
fn check_good_prime(f: &[i64], q: u64, l: u64) -> Result<()> {
    if q == l {
        return Err(Error::NotCoprime(format!("q = {q} divides ℓ")));
    }
    let fq = field_make(q, 1)?;
    let coeffs: Vec<PolyFq> = f.iter().map(|&c| PolyFq::from_ints(&fq, &[c])).collect();
    let disc = if f.len() >= 3 {
        discriminant(&coeffs)?
    } else {
        PolyFq::one(&fq)
    };
    if disc.is_zero() {
        return Err(Error::NotCoprime(format!("q = {q} divides the discriminant")));
    }
    Ok(())
}

/// Whether `q O_L` stays prime above each prime of `O_K` over `q`, i.e.
/// whether `f` is irreducible over every residue field `O_K/𝔮`.
pub fn stays_prime_in_l(f: &[i64], q: u64, l: u64) -> Result<bool> {
    check_f(f)?;
    check_good_prime(f, q, l)?;
    for rf in residue_fields(q, l)? {
        if !int_poly(&rf.field, f).is_irreducible()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image of a `W` element in `(O_K/𝔮)[z]`.
fn reduce_element(rf: &ResidueField, e: &[Vec<i64>]) -> PolyFq {
    let field = &rf.field;
    let coeffs: Vec<Fe> = e
        .iter()
        .map(|zc| {
            zc.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, rf.zeta), field.from_int(c)))
        })
        .collect();
    PolyFq::new(field, coeffs)
}

/// Membership of `q` in `𝒟_W`: for every `𝔮 | q` of `O_K`, `𝔮 O_L` is prime
/// and every `α ∈ W` is an `ℓ`-th power residue modulo `𝔮 O_L`.
pub fn dw_member_nf(q: u64, w: &[WEntry], f: &[i64], l: u64) -> Result<bool> {
    check_f(f)?;
    check_good_prime(f, q, l)?;
    for rf in residue_fields(q, l)? {
        let fr = int_poly(&rf.field, f);
        let prime = fr.is_irreducible()?;
        for entry in w {
            let alpha = reduce_element(&rf, &entry.element);
            if !alpha.gcd(&fr)?.is_one() && prime {
                return Err(Error::NotCoprime(format!("q = {q} and a W element")));
            }
        }
        if !prime {
            return Ok(false);
        }
        for entry in w {
            let alpha = reduce_element(&rf, &entry.element);
            if !euler_symbol(&alpha, &fr, l)?.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
