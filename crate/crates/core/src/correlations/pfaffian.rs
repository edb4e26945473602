//! Pfaffians of complex antisymmetric matrices.

use num_complex::Complex64;

use crate::linalg::CMatrix;
use crate::{Error, Result};

const ASYMMETRY_TOL: f64 = 1e-10;
const PIVOT_TOL: f64 = 1e-13;
const MAX_DIM: usize = 20;

fn check(m: &CMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::InvalidParameter("Pfaffian of a non-square matrix".into()));
    }
    if m.rows % 2 == 1 {
        return Err(Error::InvalidParameter(format!("Pfaffian needs even dimension, got {}", m.rows)));
    }
    if m.rows > MAX_DIM {
        return Err(Error::InvalidParameter(format!("Pfaffian dimension {} exceeds {MAX_DIM}", m.rows)));
    }
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let mut worst: f64 = 0.0;
    for i in 0..m.rows {
        for j in i..m.rows {
            worst = worst.max((m[(i, j)] + m[(j, i)]).norm());
        }
    }
    if worst > ASYMMETRY_TOL * scale {
        return Err(Error::NotAntisymmetric(worst));
    }
    Ok(())
}

/// Pfaffian with the convention Pf([[0, 1], [−1, 0]]) = 1.
///
/// Skew-symmetric Gaussian elimination with pivoting (Parlett-Reid); falls back
/// to the explicit expansion for small matrices when every pivot candidate is tiny.
pub fn pfaffian(m: &CMatrix) -> Result<Complex64> {
    check(m)?;
    let n = m.rows;
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let scale = m.max_abs();
    let mut a = m.clone();
    let mut pf = Complex64::new(1.0, 0.0);
    for k in (0..n).step_by(2) {
        let (mut piv, mut best) = (k + 1, 0.0);
        for j in k + 1..n {
            let v = a[(k, j)].norm();
            if v > best {
                best = v;
                piv = j;
            }
        }
        if best <= PIVOT_TOL * scale {
            if best == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if n <= 6 {
                return pfaffian_expansion(m);
            }
        }
        if piv != k + 1 {
            swap(&mut a, k + 1, piv);
            pf = -pf;
        }
        let p = a[(k, k + 1)];
        pf *= p;
        for i in k + 2..n {
            let t = a[(k, i)] / p;
            if t == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let r = a[(k + 1, j)];
                a[(i, j)] -= t * r;
            }
            for j in k..n {
                let c = a[(j, k + 1)];
                a[(j, i)] -= t * c;
            }
        }
    }
    Ok(pf)
}

fn swap(a: &mut CMatrix, r: usize, s: usize) {
    let n = a.rows;
    for j in 0..n {
        let t = a[(r, j)];
        a[(r, j)] = a[(s, j)];
        a[(s, j)] = t;
    }
    for i in 0..n {
        let t = a[(i, r)];
        a[(i, r)] = a[(i, s)];
        a[(i, s)] = t;
    }
}

/// Expansion along the first row; exponential cost, dimension ≤ 12.
pub fn pfaffian_expansion(m: &CMatrix) -> Result<Complex64> {
    check(m)?;
    if m.rows > 12 {
        return Err(Error::InvalidParameter("explicit Pfaffian expansion is limited to dimension 12".into()));
    }
    let idx: Vec<usize> = (0..m.rows).collect();
    Ok(expand(m, &idx))
}

fn expand(m: &CMatrix, idx: &[usize]) -> Complex64 {
    if idx.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    let first = idx[0];
    let mut total = Complex64::new(0.0, 0.0);
    for pos in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != idx[pos]).collect();
        let sign = if pos % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * m[(first, idx[pos])] * expand(m, &rest);
    }
    total
}
