//! Dense complex matrix helpers: a row-major matrix type, LU determinants,
//! balancing and the eigenvalue driver.

use faer::Mat;
use num_complex::Complex64;

use crate::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidParameter(format!(
                "shape mismatch {}x{} · {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant by LU with partial pivoting. Meant for small matrices.
pub fn determinant(m: &CMatrix) -> Result<Complex64> {
    if !m.is_square() {
        return Err(Error::InvalidParameter("determinant of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut a = m.data.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
            .unwrap();
        if a[p * n + k].norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let piv = a[k * n + k];
        det *= piv;
        for i in k + 1..n {
            let f = a[i * n + k] / piv;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k + 1..n {
                let v = a[k * n + j];
                a[i * n + j] -= f * v;
            }
        }
    }
    Ok(det)
}

/// Parlett-Reinsch balancing by powers of two; returns the balanced matrix.
/// Diagonal similarity leaves the spectrum unchanged.
pub fn balance(m: &CMatrix) -> CMatrix {
    let n = m.rows;
    let mut a = m.clone();
    let radix = 2.0_f64;
    let sqrdx = radix * radix;
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 100 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].l1_norm();
                    r += a[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut g = r / radix;
            let mut f = 1.0;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= g;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
    a
}

/// All eigenvalues of a general complex square matrix (balanced, then a dense
/// Hessenberg-QR eigensolver).
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::InvalidParameter("eigenvalues of a non-square matrix".into()));
    }
    if m.data.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Vec::new());
    }
    let b = balance(m);
    let mat = Mat::<faer::c64>::from_fn(n, n, |i, j| {
        let v = b[(i, j)];
        faer::c64::new(v.re, v.im)
    });
    let eig = mat.eigenvalues().map_err(|_| Error::NoConvergence)?;
    Ok(eig.into_iter().map(|v| Complex64::new(v.re, v.im)).collect())
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::InvalidParameter("eigenvalues of a non-square matrix".into()));
    }
    let n = m.rows;
    let mat = Mat::<faer::c64>::from_fn(n, n, |i, j| {
        let v = m[(i, j)];
        faer::c64::new(v.re, v.im)
    });
    let mut eig = mat
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|_| Error::NoConvergence)?;
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}
