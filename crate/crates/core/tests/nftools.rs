use proptest::prelude::*;

use superdescent::arith::{factor_u64, is_prime};
use superdescent::ffpoly::field_make;
use superdescent::nftools::{eisenstein_factor, stays_prime_in_l, CycNum};
use superdescent::PolyFq;

proptest! {
    #[test]
    fn eisenstein_factor_norms(n in 1u64..20_000) {
        let fac = eisenstein_factor(n).unwrap();
        let norm: u64 = fac.iter().map(|(pi, e)| (pi.norm() as u64).pow(*e)).product();
        prop_assert_eq!(norm, n * n);
        for (p, e) in factor_u64(n) {
            let above: Vec<_> = fac.iter().filter(|(pi, _)| pi.norm() as u64 % p == 0).collect();
            match p % 3 {
                // ramified: λ^{2e}
                0 => prop_assert!(above.len() == 1 && above[0].1 == 2 * e && above[0].0.norm() == 3),
                // split: two conjugate primes of norm p
                1 => prop_assert!(above.len() == 2 && above.iter().all(|(pi, f)| pi.norm() as u64 == p && *f == e)),
                // inert: p itself
                _ => prop_assert!(above.len() == 1 && above[0].1 == e && above[0].0.norm() as u64 == p * p),
            }
        }
    }

    #[test]
    fn cyclotomic_field_axioms(a in prop::collection::vec(-20i64..20, 1..6), b in prop::collection::vec(-20i64..20, 1..6), l in prop::sample::select(vec![3usize, 5, 7])) {
        let to = |c: &[i64]| {
            let mut x = CycNum::zero(l);
            for (i, &ci) in c.iter().enumerate() {
                x = x.add(&CycNum::zeta_pow(l, i).mul(&CycNum::from_int(l, ci)));
            }
            x
        };
        let (x, y) = (to(&a), to(&b));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&y).div(&x).unwrap(), y.clone());
        }
    }
}

/// `q O_L` is prime iff `f` stays irreducible modulo `q`, checked by a root
/// scan for cubics over `Z`.
#[test]
fn stays_prime_matches_root_scan() {
    for f in [[-2i64, 0, 0, 1], [1, 1, 0, 1], [-5, 3, 0, 1]] {
        for q in (5u64..400).filter(|&q| is_prime(q)) {
            let k = field_make(q, 1).unwrap();
            let fq = PolyFq::from_ints(&k, &f);
            if !fq.gcd(&fq.derivative()).unwrap().is_one() {
                continue;
            }
            let no_root = k.elements().all(|x| fq.eval(x) != 0);
            assert_eq!(stays_prime_in_l(&f, q, 2).unwrap(), no_root, "f={f:?} q={q}");
        }
    }
}
