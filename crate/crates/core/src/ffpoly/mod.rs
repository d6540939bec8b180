//! Finite fields `F_{p^r}`, polynomials over them, and the few bivariate
//! operations the descent needs (discriminants of curves over `F_q[t]`).

mod extension;
mod factor;
mod field;
mod poly;

pub use extension::ConstantExtension;
pub use factor::{count_irreducibles, factor, irreducibles_of_degree, Factorization};
pub use field::{field_make, Fe, Field, MAX_FIELD_SIZE};
pub use poly::PolyFq;

use crate::error::{Error, Result};

/// Determinant of a square matrix over `F_q[t]` by fraction-free
/// (Bareiss) elimination; every division is exact.
pub fn bareiss_det(mut m: Vec<Vec<PolyFq>>, field: &Field) -> Result<PolyFq> {
    let n = m.len();
    if n == 0 {
        return Ok(PolyFq::one(field));
    }
    let mut sign_neg = false;
    let mut prev = PolyFq::one(field);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign_neg = !sign_neg;
                }
                None => return Ok(PolyFq::zero(field)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_neg { -&det } else { det })
}

/// Sylvester matrix of two polynomials in `x` whose coefficients lie in
/// `F_q[t]` (coefficient lists low degree first).
fn sylvester(a: &[PolyFq], b: &[PolyFq], field: &Field) -> Vec<Vec<PolyFq>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = vec![vec![PolyFq::zero(field); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    rows
}

/// Derivative in `x` of a polynomial with `F_q[t]` coefficients.
pub fn derivative_x(f: &[PolyFq], field: &Field) -> Vec<PolyFq> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(field.from_int((i as u64 % field.characteristic()) as i64)))
        .collect()
}

/// Discriminant `(-1)^{n(n-1)/2} Res_x(f, f')` of a monic `f ∈ F_q[t][x]`.
pub fn discriminant(f: &[PolyFq]) -> Result<PolyFq> {
    let field = f
        .first()
        .map(|c| c.field().clone())
        .ok_or(Error::ZeroInput("discriminant of empty polynomial"))?;
    let n = f.len() - 1;
    if n < 2 {
        return Err(Error::InvalidDegree("discriminant needs deg_x f >= 2".into()));
    }
    if !f[n].is_one() {
        return Err(Error::NotMonic);
    }
    let mut df = derivative_x(f, &field);
    while df.last().map(|c| c.is_zero()).unwrap_or(false) {
        df.pop();
    }
    if df.is_empty() {
        return Ok(PolyFq::zero(&field));
    }
    let res = bareiss_det(sylvester(f, &df, &field), &field)?;
    // Res(f, f') with deg f' possibly < n-1 still equals ∏ f'(z_i) for monic f.
    let sign = (n * (n - 1) / 2) % 2 == 1;
    Ok(if sign { -&res } else { res })
}
