//! Class numbers of imaginary quadratic orders by reduced binary forms, and
//! the admissibility filter for cubic twists `y² = x³ - A D²`.

use serde::Serialize;

use crate::arith::is_squarefree;
use crate::error::{Error, Result};

/// `a x² + b xy + c y²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn is_primitive(&self) -> bool {
        num_integer::gcd(num_integer::gcd(self.a, self.b), self.c) == 1
    }
}

fn check_disc(d: i64) -> Result<()> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidInput(format!("{d} is not a negative discriminant")));
    }
    Ok(())
}

/// Primitive reduced forms of discriminant `d < 0`.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadForm>> {
    check_disc(d)?;
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm { a, b, c: num / (4 * a) };
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    Ok(out)
}

/// Number of primitive reduced forms of discriminant `d`.
pub fn class_number(d: i64) -> Result<u64> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// Discriminant of `Q(√-A)` for square-free `A ≥ 1`.
pub fn field_discriminant(a: u64) -> i64 {
    let m = -(a as i64);
    if m.rem_euclid(4) == 1 {
        m
    } else {
        4 * m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicAdmissibility {
    pub a: u64,
    pub squarefree: bool,
    pub residue_ok: bool,
    pub discriminant: i64,
    pub class_number: Option<u64>,
    pub admissible: bool,
}

/// `A` square-free, `A ≡ 1` or `25 mod 36`, and `3 ∤ h(Q(√-A))`.
pub fn cubic_twist_admissible(a: u64) -> CubicAdmissibility {
    let squarefree = a >= 1 && is_squarefree(a);
    let residue_ok = matches!(a % 36, 1 | 25);
    let discriminant = field_discriminant(a.max(1));
    let class_number = if squarefree {
        class_number(discriminant).ok()
    } else {
        None
    };
    let admissible = squarefree && residue_ok && class_number.map_or(false, |h| h % 3 != 0);
    CubicAdmissibility {
        a,
        squarefree,
        residue_ok,
        discriminant,
        class_number,
        admissible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_numbers() {
        assert_eq!(class_number(-3).unwrap(), 1);
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(class_number(-23).unwrap(), 3);
        assert_eq!(class_number(-148).unwrap(), 2);
        assert_eq!(class_number(-12).unwrap(), 1);
        assert!(class_number(-5).is_err());
        assert!(class_number(4).is_err());
    }

    #[test]
    fn cubic_admissibility_examples() {
        assert!(cubic_twist_admissible(1).admissible);
        assert!(!cubic_twist_admissible(25).admissible);
        let r = cubic_twist_admissible(37);
        assert_eq!(r.class_number, Some(2));
        assert!(r.admissible);
    }
}
