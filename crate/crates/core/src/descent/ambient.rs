//! The groups `K(S,ℓ)`, `L(S,ℓ)` for a constant extension `L = K ⊗ k'`, and
//! products `∏ L_i(S,ℓ)`, with explicit `F_ℓ` coordinates.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{factor, ConstantExtension, Fe, Field, PolyFq};
use crate::linalg::Vector;
use crate::places::{KElem, Place};

use super::curve::PlaceSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// A constant generating `k_i*/(k_i*)^ℓ`.
    Constant(Fe),
    /// A monic prime of `O_{L_i}`.
    Prime(PolyFq),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub component: usize,
    pub kind: GenKind,
    /// The place of `K` below a prime generator.
    pub below: Option<Place>,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GenKind::Constant(c) => write!(f, "[{}] c={c}", self.component),
            GenKind::Prime(p) => write!(f, "[{}] ({p})", self.component),
        }
    }
}

/// An `F_ℓ` coordinate vector over the basis of an [`AmbientGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AmbientClass {
    pub coords: Vector,
}

#[derive(Clone, Debug)]
pub struct AmbientGroup {
    l: u64,
    fields: Vec<Field>,
    ext: Option<ConstantExtension>,
    places: PlaceSet,
    basis: Vec<Generator>,
    index: HashMap<(usize, PolyFq), usize>,
    constants: Vec<usize>,
}

impl AmbientGroup {
    fn build(
        l: u64,
        fields: Vec<Field>,
        ext: Option<ConstantExtension>,
        places: PlaceSet,
        primes: Vec<Vec<(PolyFq, Place)>>,
    ) -> Result<Self> {
        let mut basis = Vec::new();
        let mut index = HashMap::new();
        let mut constants = Vec::new();
        for (i, field) in fields.iter().enumerate() {
            field.check_roots_of_unity(l)?;
            constants.push(basis.len());
            basis.push(Generator {
                component: i,
                kind: GenKind::Constant(field.generator()),
                below: None,
            });
            for (p, v) in &primes[i] {
                index.insert((i, p.clone()), basis.len());
                basis.push(Generator {
                    component: i,
                    kind: GenKind::Prime(p.clone()),
                    below: Some(v.clone()),
                });
            }
        }
        Ok(AmbientGroup {
            l,
            fields,
            ext,
            places,
            basis,
            index,
            constants,
        })
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|g| g.to_string()).collect()
    }

    pub fn components(&self) -> usize {
        self.fields.len()
    }

    pub fn component_field(&self, i: usize) -> &Field {
        &self.fields[i]
    }

    pub fn extension(&self) -> Option<&ConstantExtension> {
        self.ext.as_ref()
    }

    pub fn places(&self) -> &PlaceSet {
        &self.places
    }

    pub fn zero(&self) -> AmbientClass {
        AmbientClass {
            coords: vec![0; self.dim()],
        }
    }

    pub fn index_of_prime(&self, component: usize, p: &PolyFq) -> Option<usize> {
        self.index.get(&(component, p.clone())).copied()
    }

    /// Coordinates of `α ∈ L_i*` in component `i`; `Error::NotInGroup` if
    /// some prime outside `S` divides `α` to an order prime to `ℓ`.
    pub fn class_of(&self, component: usize, alpha: &KElem) -> Result<AmbientClass> {
        let field = &self.fields[component];
        if alpha.field() != field {
            return Err(Error::FieldMismatch);
        }
        if alpha.is_zero() {
            return Err(Error::ZeroInput("class of zero"));
        }
        let l = self.l as i64;
        let mut coords = vec![0i64; self.dim()];
        coords[self.constants[component]] = field.class_mod_powers(alpha.num().leading_coeff(), self.l)? as i64;
        for (poly, sign) in [(alpha.num(), 1i64), (alpha.den(), -1)] {
            if poly.is_constant() {
                continue;
            }
            for (p, e) in factor(poly, 0)?.factors {
                let e = sign * e as i64;
                match self.index_of_prime(component, &p) {
                    Some(ix) => coords[ix] += e,
                    None if e.rem_euclid(l) != 0 => {
                        return Err(Error::NotInGroup(format!("({p}) divides the element outside S")))
                    }
                    None => {}
                }
            }
        }
        Ok(AmbientClass {
            coords: coords.iter().map(|c| c.rem_euclid(l) as u64).collect(),
        })
    }

    /// Class of a tuple with one entry per component.
    pub fn class_of_tuple(&self, tuple: &[KElem]) -> Result<AmbientClass> {
        if tuple.len() != self.components() {
            return Err(Error::InvalidInput("tuple length differs from the number of components".into()));
        }
        let mut acc = self.zero();
        for (i, a) in tuple.iter().enumerate() {
            acc = self.add(&acc, &self.class_of(i, a)?);
        }
        Ok(acc)
    }

    pub fn add(&self, a: &AmbientClass, b: &AmbientClass) -> AmbientClass {
        AmbientClass {
            coords: crate::linalg::add(&a.coords, &b.coords, self.l),
        }
    }

    pub fn scale(&self, a: &AmbientClass, c: u64) -> AmbientClass {
        AmbientClass {
            coords: crate::linalg::scale(&a.coords, c, self.l),
        }
    }

    /// Coordinates of a class of `sub` in this group, matching generators
    /// by label. Fails unless every generator of `sub` occurs here.
    pub fn embed_from(&self, sub: &AmbientGroup, x: &AmbientClass) -> Result<AmbientClass> {
        if sub.l != self.l || sub.fields != self.fields {
            return Err(Error::InvalidInput("incompatible ambient groups".into()));
        }
        let mut coords = vec![0; self.dim()];
        for (g, &c) in sub.basis.iter().zip(&x.coords) {
            let ix = match &g.kind {
                GenKind::Constant(_) => Some(self.constants[g.component]),
                GenKind::Prime(p) => self.index_of_prime(g.component, p),
            }
            .ok_or_else(|| Error::InvalidInput(format!("generator {g} missing from the larger group")))?;
            coords[ix] = c;
        }
        Ok(AmbientClass { coords })
    }

    /// Whether the class lies in the subgroup unramified outside `s`.
    pub fn supported_on(&self, x: &AmbientClass, s: &PlaceSet) -> bool {
        self.basis.iter().zip(&x.coords).all(|(g, &c)| match &g.below {
            Some(v) => c % self.l == 0 || s.contains(v),
            None => true,
        })
    }

    /// Coordinates at the generators lying above the place `v`.
    pub fn coords_above(&self, x: &AmbientClass, v: &Place) -> Vec<u64> {
        self.basis
            .iter()
            .zip(&x.coords)
            .filter(|(g, _)| g.below.as_ref() == Some(v))
            .map(|(_, &c)| c)
            .collect()
    }
}

fn check_places(s: &PlaceSet) -> Result<()> {
    if !s.contains(&Place::Infinity) {
        return Err(Error::InvalidInput("S must contain the infinite place".into()));
    }
    Ok(())
}

/// `K(S,ℓ)`: basis `{c_0} ∪ {P ∈ S finite}`.
pub fn ambient_group_k(field: &Field, s: &PlaceSet, l: u64) -> Result<AmbientGroup> {
    ambient_group_split(field, s, l, 1)
}

/// `∏_{i<m} K(S,ℓ)`, the ambient group of a split `f` with `m = d - 1`.
pub fn ambient_group_split(field: &Field, s: &PlaceSet, l: u64, m: usize) -> Result<AmbientGroup> {
    check_places(s)?;
    let primes: Vec<(PolyFq, Place)> = s.finite().map(|p| (p.clone(), Place::Finite(p.clone()))).collect();
    AmbientGroup::build(l, vec![field.clone(); m], None, s.clone(), vec![primes; m])
}

/// `L(S,ℓ)` for `L = K ⊗ k'`: a constant of `k'` plus the primes of
/// `k'[t]` above each finite place of `S`.
pub fn ambient_group_l_const(ext: &ConstantExtension, s: &PlaceSet, l: u64) -> Result<AmbientGroup> {
    check_places(s)?;
    let mut primes = Vec::new();
    for p in s.finite() {
        for (pp, _) in factor(&ext.embed_poly(p), 0)?.factors {
            primes.push((pp, Place::Finite(p.clone())));
        }
    }
    AmbientGroup::build(l, vec![ext.ext().clone()], Some(ext.clone()), s.clone(), vec![primes])
}

/// Images of the basis of `L(S,ℓ)` under `N_{L/K}`, in `K(S,ℓ)` coordinates.
pub fn norm_images(gl: &AmbientGroup, gk: &AmbientGroup) -> Result<Vec<Vector>> {
    let ext = gl
        .ext
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("source is not a constant-extension group".into()))?;
    if gk.components() != 1 || gk.fields[0] != *ext.base() || gk.l != gl.l {
        return Err(Error::InvalidInput("incompatible groups for the norm".into()));
    }
    let p = ext.degree() as usize;
    let base = ext.base();
    gl.basis
        .iter()
        .map(|g| match (&g.kind, &g.below) {
            (GenKind::Constant(c), _) => Ok(gk.class_of(0, &KElem::constant(base, ext.norm(*c)))?.coords),
            (GenKind::Prime(pp), Some(Place::Finite(below))) => {
                let ix = gk
                    .index_of_prime(0, below)
                    .ok_or_else(|| Error::InvalidInput(format!("({below}) is not in the target group")))?;
                // residue degree f(P/p) = p·deg P / deg p
                let f = p * pp.degree().expect("prime") / below.degree().expect("prime");
                let mut v = vec![0; gk.dim()];
                v[ix] = f as u64 % gl.l;
                Ok(v)
            }
            _ => Err(Error::InvalidInput("prime generator without a place below".into())),
        })
        .collect()
}

pub fn norm_map(x: &AmbientClass, gl: &AmbientGroup, gk: &AmbientGroup) -> Result<AmbientClass> {
    let images = norm_images(gl, gk)?;
    if x.coords.len() != images.len() {
        return Err(Error::InvalidInput("class does not belong to the source group".into()));
    }
    let mut acc = vec![0; gk.dim()];
    for (c, img) in x.coords.iter().zip(&images) {
        acc = crate::linalg::add(&acc, &crate::linalg::scale(img, *c, gl.l), gl.l);
    }
    Ok(AmbientClass { coords: acc })
}
