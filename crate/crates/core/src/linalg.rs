//! Dense linear algebra over `F_ℓ` for small primes `ℓ`.

use crate::arith::pow_mod;

pub type Vector = Vec<u64>;

fn inv_mod(a: u64, l: u64) -> u64 {
    pow_mod(a % l, l - 2, l)
}

/// Reduce rows in place to reduced row echelon form; returns pivot columns.
pub fn rref(rows: &mut [Vector], l: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] % l != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], l);
        for x in rows[r].iter_mut() {
            *x = *x % l * inv % l;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] % l != 0 {
                let f = rows[i][c] % l;
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] % l + l * l - f * rows[r][j]) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vector], l: u64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, l).len()
}

/// Basis of `{x : Σ_i x_i · images[i] = 0}`, the kernel of the map sending
/// the `i`-th basis vector to `images[i]`.
pub fn kernel(images: &[Vector], codim: usize, l: u64) -> Vec<Vector> {
    let n = images.len();
    // columns of the matrix are the images; solve M x = 0
    let mut m: Vec<Vector> = (0..codim)
        .map(|r| images.iter().map(|img| img[r] % l).collect())
        .collect();
    if codim == 0 {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let pivots = rref(&mut m, l);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (l - m[r][free] % l) % l;
        }
        basis.push(v);
    }
    basis
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Echelon basis of the row span.
pub fn span_basis(rows: &[Vector], l: u64) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let k = rref(&mut m, l).len();
    m.truncate(k);
    m
}

pub fn span_contains(rows: &[Vector], v: &[u64], l: u64) -> bool {
    let mut m = rows.to_vec();
    let before = rank(&m, l);
    m.push(v.to_vec());
    rank(&m, l) == before
}

pub fn span_subset(a: &[Vector], b: &[Vector], l: u64) -> bool {
    a.iter().all(|v| span_contains(b, v, l))
}

pub fn span_equal(a: &[Vector], b: &[Vector], l: u64) -> bool {
    span_subset(a, b, l) && span_subset(b, a, l)
}

pub fn is_zero(v: &[u64], l: u64) -> bool {
    v.iter().all(|x| x % l == 0)
}

pub fn scale(v: &[u64], c: u64, l: u64) -> Vector {
    v.iter().map(|x| x % l * (c % l) % l).collect()
}

pub fn add(a: &[u64], b: &[u64], l: u64) -> Vector {
    a.iter().zip(b).map(|(x, y)| (x + y) % l).collect()
}
