use proptest::prelude::*;

use superdescent::ffpoly::{count_irreducibles, discriminant, factor, field_make, irreducibles_of_degree};
use superdescent::{Field, PolyFq};

fn fields() -> Vec<Field> {
    [(3, 1), (2, 2), (5, 1), (3, 2)]
        .iter()
        .map(|&(p, r)| field_make(p, r).unwrap())
        .collect()
}

fn poly(k: &Field, raw: &[u64]) -> PolyFq {
    PolyFq::new(k, raw.iter().map(|c| c % k.size()).collect())
}

fn nonzero_poly() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (0usize..4, prop::collection::vec(0u64..1000, 2..9))
}

/// `(1/n) Σ_{d | n} μ(d) q^{n/d}` with its own Möbius function.
fn necklace(q: u128, n: u32) -> u128 {
    let mu = |mut d: u32| -> i128 {
        let mut sign = 1;
        let mut p = 2;
        while d > 1 {
            if d % p == 0 {
                d /= p;
                if d % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        sign
    };
    let s: i128 = (1..=n).filter(|d| n % d == 0).map(|d| mu(d) * q.pow(n / d) as i128).sum();
    (s / n as i128) as u128
}

#[test]
fn irreducible_counts_match_necklace_formula() {
    for k in fields() {
        for n in 1..=6u32 {
            let expected = necklace(k.size() as u128, n);
            assert_eq!(count_irreducibles(k.size(), n), expected);
            if k.size().pow(n) <= 1 << 16 {
                let list = irreducibles_of_degree(&k, n as usize).unwrap();
                assert_eq!(list.len() as u128, expected, "q={} n={n}", k.size());
                assert!(list.iter().all(|p| p.is_monic() && p.is_irreducible().unwrap()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn factorization_is_a_partition((which, raw) in nonzero_poly(), seed in any::<u64>()) {
        let k = &fields()[which];
        let f = poly(k, &raw);
        prop_assume!(!f.is_zero());
        let fac = factor(&f, seed).unwrap();
        let mut prod = PolyFq::constant(k, fac.unit);
        for (p, e) in &fac.factors {
            prop_assert!(p.is_monic() && p.degree().unwrap() > 0);
            prop_assert!(p.is_irreducible().unwrap());
            prod = &prod * &p.pow(*e as u64);
        }
        prop_assert_eq!(prod, f.clone());
        // factors are distinct and the result does not depend on the seed
        let mut ps: Vec<&PolyFq> = fac.factors.iter().map(|(p, _)| p).collect();
        ps.dedup();
        prop_assert_eq!(ps.len(), fac.factors.len());
        prop_assert_eq!(factor(&f, seed ^ 1).unwrap().factors, fac.factors);
    }

    #[test]
    fn irreducible_iff_single_factor((which, raw) in nonzero_poly()) {
        let k = &fields()[which];
        let f = poly(k, &raw);
        prop_assume!(f.degree().map_or(false, |d| d > 0));
        let fac = factor(&f, 0).unwrap();
        let single = fac.factors.len() == 1 && fac.factors[0].1 == 1;
        prop_assert_eq!(f.is_irreducible().unwrap(), single);
    }

    #[test]
    fn discriminant_vanishes_iff_repeated_root((which, raw) in nonzero_poly()) {
        let k = &fields()[which];
        let f = poly(k, &raw).monic();
        prop_assume!(f.degree().map_or(false, |d| d >= 2));
        let coeffs: Vec<PolyFq> = f.coeffs().iter().map(|&c| PolyFq::constant(k, c)).collect();
        let disc = discriminant(&coeffs).unwrap();
        let squarefree = f.gcd(&f.derivative()).unwrap().is_one();
        prop_assert_eq!(!disc.is_zero(), squarefree);
    }

    #[test]
    fn gcd_divides_both((which, a) in nonzero_poly(), b in prop::collection::vec(0u64..1000, 1..7)) {
        let k = &fields()[which];
        let (a, b) = (poly(k, &a), poly(k, &b));
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.divides(&a) && g.divides(&b));
    }
}
