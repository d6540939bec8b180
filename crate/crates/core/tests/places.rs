use proptest::prelude::*;

use superdescent::ffpoly::{factor, field_make};
use superdescent::places::{hilbert_symbol_infinity, is_lth_power_local, ord_at};
use superdescent::{Field, KElem, Place, PolyFq};

fn poly(k: &Field, raw: &[u64]) -> PolyFq {
    PolyFq::new(k, raw.iter().map(|c| c % k.size()).collect())
}

fn kelem(k: &Field, num: &[u64], den: &[u64]) -> Option<KElem> {
    let (n, d) = (poly(k, num), poly(k, den));
    if n.is_zero() || d.is_zero() {
        return None;
    }
    KElem::new(n, d).ok()
}

fn coeffs() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..100, 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_formula(p in prop::sample::select(vec![3u64, 5, 7]), num in coeffs(), den in coeffs()) {
        let k = field_make(p, 1).unwrap();
        let g = kelem(&k, &num, &den);
        prop_assume!(g.is_some());
        let g = g.unwrap();
        let mut places = vec![Place::Infinity];
        for h in [g.num(), g.den()] {
            if !h.is_constant() {
                places.extend(factor(h, 0).unwrap().factors.into_iter().map(|(q, _)| Place::Finite(q)));
            }
        }
        let total: i64 = places.iter().map(|v| ord_at(v, &g).unwrap() * v.degree() as i64).sum();
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn local_powers_absorb_lth_powers(num in coeffs(), den in coeffs(), h in coeffs(), v in 0usize..4) {
        // F_7 carries μ_2 and μ_3
        let k = field_make(7, 1).unwrap();
        let (g, h) = (kelem(&k, &num, &den), kelem(&k, &h, &[1]));
        prop_assume!(g.is_some() && h.is_some());
        let (g, h) = (g.unwrap(), h.unwrap());
        let place = match v {
            0 => Place::Infinity,
            1 => Place::Finite(PolyFq::from_ints(&k, &[0, 1])),
            2 => Place::Finite(PolyFq::from_ints(&k, &[1, 0, 1])),
            _ => Place::Finite(PolyFq::from_ints(&k, &[3, 1])),
        };
        for l in [2u64, 3] {
            let twisted = g.mul(&h.pow(l as i64).unwrap());
            prop_assert_eq!(
                is_lth_power_local(&place, &g, l).unwrap(),
                is_lth_power_local(&place, &twisted, l).unwrap()
            );
        }
    }

    #[test]
    fn hilbert_symbol_at_infinity_is_bilinear(a in coeffs(), b in coeffs(), c in coeffs(), n in prop::sample::select(vec![2u64, 3, 6])) {
        let k = field_make(7, 1).unwrap();
        let (a, b, c) = (kelem(&k, &a, &[1]), kelem(&k, &b, &[1]), kelem(&k, &c, &[1]));
        prop_assume!(a.is_some() && b.is_some() && c.is_some());
        let (a, b, c) = (a.unwrap(), b.unwrap(), c.unwrap());
        let h = |x: &KElem, y: &KElem| hilbert_symbol_infinity(x, y, n).unwrap();
        prop_assert_eq!(h(&a.mul(&b), &c), k.mul(h(&a, &c), h(&b, &c)));
        prop_assert_eq!(h(&a, &b.mul(&c)), k.mul(h(&a, &b), h(&a, &c)));
        // skew symmetry
        prop_assert_eq!(k.mul(h(&a, &b), h(&b, &a)), 1);
    }
}

/// A unit that is an `ℓ`-th power modulo `P` is one modulo `P³` as well:
/// search all residues modulo `P³` for a root.
#[test]
fn local_power_lifts_modulo_cube() {
    for (p, l) in [(3u64, 2u64), (5, 2), (7, 3)] {
        let k = field_make(p, 1).unwrap();
        for prime in [PolyFq::from_ints(&k, &[0, 1]), PolyFq::from_ints(&k, &[1, 1])] {
            let m = prime.pow(3);
            let residues: Vec<PolyFq> = (0..p.pow(3))
                .map(|code| {
                    let c: Vec<u64> = (0..3).map(|i| code / p.pow(i) % p).collect();
                    PolyFq::new(&k, c)
                })
                .collect();
            let powers: std::collections::HashSet<PolyFq> =
                residues.iter().map(|r| r.pow(l).rem(&m).unwrap()).collect();
            for g in &residues {
                if g.rem(&prime).unwrap().is_zero() {
                    continue;
                }
                let local = is_lth_power_local(&Place::Finite(prime.clone()), &KElem::from_poly(g.clone()), l).unwrap();
                assert_eq!(local, powers.contains(g), "p={p} ℓ={l} P={prime} g={g}");
            }
        }
    }
}
