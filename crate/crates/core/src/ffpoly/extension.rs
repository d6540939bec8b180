use std::collections::HashMap;

use crate::error::{Error, Result};

use super::factor::factor;
use super::field::{field_make, Fe, Field};
use super::poly::PolyFq;

/// A constant field extension `k ⊂ k'` of degree `p`, with an explicit
/// embedding of `k` and the inverse of that embedding on its image.
#[derive(Clone, Debug)]
pub struct ConstantExtension {
    base: Field,
    ext: Field,
    degree: u32,
    embed_table: Vec<Fe>,
    back: HashMap<Fe, Fe>,
}

impl ConstantExtension {
    pub fn new(base: &Field, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree("extension degree must be positive".into()));
        }
        let ext = field_make(base.characteristic(), base.degree() * degree)?;
        let p = base.characteristic();
        // image of the power-basis generator of k: least root in k' of the
        // modulus of k (a polynomial over F_p, hence over k').
        let rho = if base.degree() == 1 {
            0
        } else {
            let m = PolyFq::new(&ext, base.modulus().to_vec());
            factor(&m, 0)?
                .factors
                .iter()
                .filter(|(f, _)| f.degree() == Some(1))
                .map(|(f, _)| ext.neg(f.coeff(0)))
                .min()
                .ok_or_else(|| Error::InvalidInput("base modulus has no root in extension".into()))?
        };
        let mut embed_table = Vec::with_capacity(base.size() as usize);
        for a in base.elements() {
            let image = if base.degree() == 1 {
                a
            } else {
                let coords = base.coordinates(a);
                let mut acc = 0;
                let mut pw = 1;
                for c in coords {
                    acc = ext.add(acc, ext.mul(c % p, pw));
                    pw = ext.mul(pw, rho);
                }
                acc
            };
            embed_table.push(image);
        }
        let back = embed_table.iter().enumerate().map(|(a, &b)| (b, a as Fe)).collect();
        Ok(ConstantExtension {
            base: base.clone(),
            ext,
            degree,
            embed_table,
            back,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, a: Fe) -> Fe {
        self.embed_table[a as usize]
    }

    pub fn embed_poly(&self, f: &PolyFq) -> PolyFq {
        f.map_coeffs(&self.ext, |c| self.embed(c))
    }

    /// Preimage of an element of `k'` lying in `k`.
    pub fn restrict(&self, a: Fe) -> Option<Fe> {
        self.back.get(&a).copied()
    }

    pub fn restrict_poly(&self, f: &PolyFq) -> Option<PolyFq> {
        let coeffs: Option<Vec<Fe>> = f.coeffs().iter().map(|&c| self.restrict(c)).collect();
        coeffs.map(|c| PolyFq::new(&self.base, c))
    }

    /// `Norm_{k'/k}(a) = a^{(q^p - 1)/(q - 1)}`, returned in `k`.
    pub fn norm(&self, a: Fe) -> Fe {
        let q = self.base.size();
        let e = (self.ext.size() - 1) / (q - 1);
        self.restrict(self.ext.pow(a, e)).expect("norm lies in the base field")
    }

    /// The `q`-power Frobenius of `k'/k` applied coefficientwise.
    pub fn frobenius_poly(&self, f: &PolyFq) -> PolyFq {
        let q = self.base.size();
        f.map_coeffs(&self.ext, |c| self.ext.pow(c, q))
    }

    /// `N_{L/K}(g)` for `g ∈ k'[t]`: product of the Galois conjugates.
    pub fn norm_poly(&self, g: &PolyFq) -> PolyFq {
        let mut acc = g.clone();
        let mut conj = g.clone();
        for _ in 1..self.degree {
            conj = self.frobenius_poly(&conj);
            acc = &acc * &conj;
        }
        self.restrict_poly(&acc).expect("norm has base-field coefficients")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_ring_map() {
        for (p, r, d) in [(2, 2, 3), (3, 1, 3), (3, 2, 2), (5, 1, 2)] {
            let base = field_make(p, r).unwrap();
            let e = ConstantExtension::new(&base, d).unwrap();
            for a in base.elements() {
                assert_eq!(e.restrict(e.embed(a)), Some(a));
                for b in base.elements() {
                    assert_eq!(e.embed(base.add(a, b)), e.ext().add(e.embed(a), e.embed(b)));
                    assert_eq!(e.embed(base.mul(a, b)), e.ext().mul(e.embed(a), e.embed(b)));
                }
            }
        }
    }

    #[test]
    fn norm_of_nonsquare_in_f27_is_nonsquare() {
        let f3 = field_make(3, 1).unwrap();
        let e = ConstantExtension::new(&f3, 3).unwrap();
        let c = e.ext().generator();
        assert!(!e.ext().is_lth_power(c, 2).unwrap());
        // exponent 1 + 3 + 9 = 13 is odd
        let n = e.norm(c);
        assert!(!f3.is_lth_power(n, 2).unwrap());
    }

    #[test]
    fn norm_poly_of_inert_prime_factor() {
        // t^3 + 2t + 1 splits over F_27 into three conjugate linear factors.
        let f3 = field_make(3, 1).unwrap();
        let e = ConstantExtension::new(&f3, 3).unwrap();
        let q = PolyFq::from_ints(&f3, &[1, 2, 0, 1]);
        let fac = factor(&e.embed_poly(&q), 0).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(e.norm_poly(&fac.factors[0].0), q);
    }
}
