//! Norm kernels for constant extensions, the admissible primes `𝒟_W`, rank-0
//! twists and ambient Selmer bounds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{irreducibles_of_degree, ConstantExtension, PolyFq};
use crate::linalg::{kernel, span_equal, Vector};
use crate::places::Place;
use crate::symbols::euler_symbol;

use super::ambient::{ambient_group_k, ambient_group_l_const, norm_images, AmbientClass, AmbientGroup};
use super::coboundary::split_ambient;
use super::curve::{PlaceSet, RootData, SuperellipticCurve, TwistParam};

/// `ker(N_{L/K} : L(S,ℓ) → K(S,ℓ))` with a basis in `L(S,ℓ)` coordinates.
#[derive(Clone, Debug)]
pub struct NormKernel {
    pub group_l: AmbientGroup,
    pub group_k: AmbientGroup,
    pub images: Vec<Vector>,
    pub basis: Vec<Vector>,
}

impl NormKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn const_ext(curve: &SuperellipticCurve) -> Result<&ConstantExtension> {
    match curve.root_data() {
        RootData::ConstIrreducible { ext, .. } => Ok(ext),
        RootData::Split { .. } => Err(Error::InvalidInput("f splits: use the product ambient group".into())),
        other => Err(Error::Unsupported(format!("norm kernel for {} f", other.kind()))),
    }
}

pub fn ker_norm(s: &PlaceSet, curve: &SuperellipticCurve) -> Result<NormKernel> {
    let ext = const_ext(curve)?;
    let l = curve.ell();
    let group_l = ambient_group_l_const(ext, s, l)?;
    let group_k = ambient_group_k(curve.field(), s, l)?;
    let images = norm_images(&group_l, &group_k)?;
    let basis = kernel(&images, group_k.dim(), l);
    Ok(NormKernel {
        group_l,
        group_k,
        images,
        basis,
    })
}

/// The embedded bases behind [`compare_kernels`].
#[derive(Clone, Debug, Serialize)]
pub struct KernelComparison {
    pub dim_sj: usize,
    pub dim_sd: usize,
    pub basis_sj: Vec<Vector>,
    pub basis_sd: Vec<Vector>,
    pub labels_sd: Vec<String>,
    pub equal: bool,
}

/// Whether `𝔮 O_L` is prime for `L = K ⊗ k'`.
pub fn is_inert(ext: &ConstantExtension, q: &PolyFq) -> Result<bool> {
    ext.embed_poly(q).is_irreducible()
}

pub fn kernel_comparison(curve: &SuperellipticCurve, d: &TwistParam) -> Result<KernelComparison> {
    let ext = const_ext(curve)?;
    for (p, _) in d.support() {
        if !is_inert(ext, p)? {
            return Err(Error::Hypothesis(format!("({p}) splits in O_L")));
        }
    }
    let sj = curve.s_j()?;
    let sd = sj.with_support(d.value())?;
    let kj = ker_norm(&sj, curve)?;
    let kd = ker_norm(&sd, curve)?;
    let basis_sj = kj
        .basis
        .iter()
        .map(|v| {
            kd.group_l
                .embed_from(&kj.group_l, &AmbientClass { coords: v.clone() })
                .map(|c| c.coords)
        })
        .collect::<Result<Vec<_>>>()?;
    let equal = span_equal(&basis_sj, &kd.basis, curve.ell());
    Ok(KernelComparison {
        dim_sj: kj.dim(),
        dim_sd: kd.dim(),
        basis_sj,
        basis_sd: kd.basis.clone(),
        labels_sd: kd.group_l.labels(),
        equal,
    })
}

/// Equality of the norm kernels over `S_J` and `S_D`.
pub fn compare_kernels(curve: &SuperellipticCurve, d: &TwistParam) -> Result<bool> {
    Ok(kernel_comparison(curve, d)?.equal)
}

/// Membership of `𝔮` in `𝒟_W`: `𝔮 O_L` is prime and every `α ∈ W ⊂ k'[t]`
/// is an `ℓ`-th power modulo `𝔮 O_L`.
pub fn dw_member_ff(q: &Place, w: &[PolyFq], curve: &SuperellipticCurve) -> Result<bool> {
    let ext = const_ext(curve)?;
    let p = q
        .prime()
        .ok_or_else(|| Error::InvalidInput("𝒟_W consists of finite places".into()))?;
    if p.divides(curve.disc()) {
        return Err(Error::NotCoprime(format!("({p}) divides Δ_f")));
    }
    let big = ext.embed_poly(p);
    for a in w {
        if a.field() != ext.ext() {
            return Err(Error::FieldMismatch);
        }
        if !a.gcd(&big)?.is_one() {
            return Err(Error::NotCoprime(format!("({p}) and a W element")));
        }
    }
    if !big.is_irreducible()? {
        return Ok(false);
    }
    for a in w {
        if !euler_symbol(a, &big, curve.ell())?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityRow {
    pub degree: usize,
    pub primes: u64,
    pub members: u64,
    /// Primes dividing `Δ_f` or a `W` element, counted as non-members.
    pub excluded: u64,
    pub fraction: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub q: u64,
    pub p: u32,
    pub maxdeg: usize,
    pub rows: Vec<DensityRow>,
    /// `Σ_{members} q^{-deg} / Σ_{all} q^{-deg}`.
    pub dirichlet_s1: f64,
    #[serde(skip)]
    pub members: Vec<PolyFq>,
}

pub fn dw_enumerate(maxdeg: usize, w: &[PolyFq], curve: &SuperellipticCurve) -> Result<DensityReport> {
    let ext = const_ext(curve)?;
    let k = curve.field();
    let q = k.size();
    let mut rows = Vec::new();
    let mut members = Vec::new();
    let (mut num, mut den) = (0f64, 0f64);
    for n in 1..=maxdeg {
        let primes = irreducibles_of_degree(k, n)?;
        let (mut m, mut excluded) = (0u64, 0u64);
        for p in &primes {
            match dw_member_ff(&Place::Finite(p.clone()), w, curve) {
                Ok(true) => {
                    m += 1;
                    members.push(p.clone());
                }
                Ok(false) => {}
                Err(Error::NotCoprime(_)) => excluded += 1,
                Err(e) => return Err(e),
            }
        }
        let weight = (q as f64).powi(-(n as i32));
        num += m as f64 * weight;
        den += primes.len() as f64 * weight;
        rows.push(DensityRow {
            degree: n,
            primes: primes.len() as u64,
            members: m,
            excluded,
            fraction: m as f64 / primes.len() as f64,
        });
    }
    Ok(DensityReport {
        q,
        p: ext.degree(),
        maxdeg,
        rows,
        dirichlet_s1: if den > 0.0 { num / den } else { 0.0 },
        members,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Rank0Twist {
    pub d: String,
    pub support: Vec<(String, u32)>,
    pub comparison: KernelComparison,
    #[serde(skip)]
    pub param: Option<TwistParam>,
}

/// Monic `D` of degree `≤ maxdeg` supported on `𝒟_∅`, each certified by
/// equal norm kernels over `S_J` and `S_D` of dimension `0`.
pub fn find_rank0_twists(curve: &SuperellipticCurve, maxdeg: usize) -> Result<Vec<Rank0Twist>> {
    const_ext(curve)?;
    let k = curve.field();
    let mut out = Vec::new();
    for n in 0..=maxdeg {
        for d in PolyFq::monics_of_degree(k, n) {
            let param = TwistParam::new(d)?;
            let mut ok = true;
            for (p, _) in param.support() {
                match dw_member_ff(&Place::Finite(p.clone()), &[], curve) {
                    Ok(true) => {}
                    Ok(false) | Err(Error::NotCoprime(_)) => {
                        ok = false;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if !ok {
                continue;
            }
            let comparison = kernel_comparison(curve, &param)?;
            if comparison.equal && comparison.dim_sj == 0 {
                out.push(Rank0Twist {
                    d: param.value().to_string(),
                    support: param.support().iter().map(|(p, e)| (p.to_string(), *e)).collect(),
                    comparison,
                    param: Some(param),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Exactness {
    Exact,
    UpperBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelmerBound {
    pub dim: usize,
    pub basis: Vec<Vector>,
    pub labels: Vec<String>,
    pub exactness: Exactness,
}

/// Dimension of the ambient group unramified outside `S_D` containing the
/// `λ`-Selmer image of `J_D`; exact when it is `0`.
pub fn selmer_ambient_bound(curve: &SuperellipticCurve, d: &TwistParam) -> Result<SelmerBound> {
    let twisted = curve.twist_by(d)?;
    let s = curve.s_j()?.with_support(d.value())?;
    let (basis, labels) = match twisted.root_data() {
        RootData::ConstIrreducible { .. } => {
            let kn = ker_norm(&s, &twisted)?;
            (kn.basis.clone(), kn.group_l.labels())
        }
        RootData::Split { .. } => {
            let g = split_ambient(&twisted)?;
            let n = g.dim();
            ((0..n).map(|i| crate::linalg::unit(n, i)).collect(), g.labels())
        }
        other => return Err(Error::Unsupported(format!("Selmer bound for {} f", other.kind()))),
    };
    let dim = basis.len();
    Ok(SelmerBound {
        dim,
        basis,
        labels,
        exactness: if dim == 0 { Exactness::Exact } else { Exactness::UpperBound },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{field_make, Field};

    fn k3() -> Field {
        field_make(3, 1).unwrap()
    }

    fn const_cubic() -> SuperellipticCurve {
        let k = k3();
        let f = [1, 2, 0, 1].iter().map(|&c| PolyFq::from_ints(&k, &[c])).collect();
        SuperellipticCurve::new(&k, 2, f, None).unwrap()
    }

    #[test]
    fn kernel_over_infinity_is_trivial() {
        let c = const_cubic();
        assert_eq!(ker_norm(&PlaceSet::infinity(), &c).unwrap().dim(), 0);
    }

    #[test]
    fn kernel_with_split_prime() {
        // t^3+2t+1 splits into three degree-1 primes over F_27: kernel of
        // (e_1, e_2, e_3) ↦ e_1+e_2+e_3 has dimension 2
        let k = k3();
        let c = const_cubic();
        let s = PlaceSet::infinity().with_support(&PolyFq::from_ints(&k, &[1, 2, 0, 1])).unwrap();
        let kn = ker_norm(&s, &c).unwrap();
        assert_eq!(kn.dim(), 2);
        for v in &kn.basis {
            let img: Vec<u64> = (0..kn.group_k.dim())
                .map(|r| v.iter().zip(&kn.images).map(|(c, im)| c * im[r]).sum::<u64>() % 2)
                .collect();
            assert!(img.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn compare_kernel_examples() {
        let k = k3();
        let c = const_cubic();
        let d = TwistParam::new(&PolyFq::from_ints(&k, &[1, 0, 1]) * &PolyFq::from_ints(&k, &[0, 1])).unwrap();
        let cmp = kernel_comparison(&c, &d).unwrap();
        assert!(cmp.equal);
        assert_eq!((cmp.dim_sj, cmp.dim_sd), (0, 0));
        let split = TwistParam::new(PolyFq::from_ints(&k, &[1, 2, 0, 1])).unwrap();
        assert!(matches!(compare_kernels(&c, &split), Err(Error::Hypothesis(_))));
        assert!(compare_kernels(&c, &TwistParam::one(&k)).unwrap());
    }

    #[test]
    fn dw_membership() {
        let k = k3();
        let c = const_cubic();
        let q2 = Place::Finite(PolyFq::from_ints(&k, &[1, 0, 1]));
        let q3 = Place::Finite(PolyFq::from_ints(&k, &[1, 2, 0, 1]));
        assert!(dw_member_ff(&q2, &[], &c).unwrap());
        assert!(!dw_member_ff(&q3, &[], &c).unwrap());
        // a nonsquare constant of F_27 is a square in F_{27^2} = residue field
        let RootData::ConstIrreducible { ext, .. } = c.root_data() else { panic!() };
        let ns = PolyFq::constant(ext.ext(), ext.ext().generator());
        assert!(dw_member_ff(&q2, &[ns.clone()], &c).unwrap());
        let q1 = Place::Finite(PolyFq::var(&k));
        assert!(!dw_member_ff(&q1, &[ns], &c).unwrap());
    }

    #[test]
    fn density_small() {
        let c = const_cubic();
        let r = dw_enumerate(4, &[], &c).unwrap();
        let fr: Vec<u64> = r.rows.iter().map(|x| x.members).collect();
        let tot: Vec<u64> = r.rows.iter().map(|x| x.primes).collect();
        assert_eq!(tot, vec![3, 3, 8, 18]);
        assert_eq!(fr, vec![3, 3, 0, 18]);
        assert_eq!(dw_enumerate(1, &[], &c).unwrap().rows[0].members, 3);
    }

    #[test]
    fn rank0_twists_small() {
        let k = k3();
        let c = const_cubic();
        let tw = find_rank0_twists(&c, 2).unwrap();
        assert!(tw.iter().any(|t| t.d == "1"));
        let t21 = PolyFq::from_ints(&k, &[1, 0, 1]).to_string();
        assert!(tw.iter().any(|t| t.d == t21));
        // every monic of degree ≤ 2 is supported on degree-1,2 primes
        assert_eq!(tw.len(), 1 + 3 + 9);
    }

    #[test]
    fn selmer_bounds() {
        let k = k3();
        let c = const_cubic();
        let d = TwistParam::new(PolyFq::from_ints(&k, &[1, 0, 1])).unwrap();
        let b = selmer_ambient_bound(&c, &d).unwrap();
        assert_eq!((b.dim, b.exactness), (0, Exactness::Exact));
        let split = TwistParam::new(PolyFq::from_ints(&k, &[1, 2, 0, 1])).unwrap();
        let b = selmer_ambient_bound(&c, &split).unwrap();
        assert_eq!(b.exactness, Exactness::UpperBound);
    }
}
