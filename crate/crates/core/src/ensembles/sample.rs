use num_complex::Complex64;
use rand::Rng;

use super::rng::{complex_normal, normal, stream};
use super::{EnsembleSpec, Family};
use crate::linalg::CMatrix;
use crate::{Beta, Error, Result};


fn expect_family(spec: &EnsembleSpec, family: Family) -> Result<()> {
    spec.validate_sampling()?;
    if spec.family != family {
        return Err(Error::InvalidParameter(format!("expected family {family}, got {}", spec.family)));
    }
    Ok(())
}

/// Hermitian M×M with density ∝ exp(-c Tr P²).
fn hermitian_block<R: Rng + ?Sized>(rng: &mut R, m: usize, c: f64) -> CMatrix {
    let mut p = CMatrix::zeros(m, m);
    for i in 0..m {
        p[(i, i)] = Complex64::new(normal(rng, 1.0 / (2.0 * c)), 0.0);
        for j in i + 1..m {
            let v = complex_normal(rng, 1.0 / (4.0 * c));
            p[(i, j)] = v;
            p[(j, i)] = v.conj();
        }
    }
    p
}

/// Real symmetric M×M with density ∝ exp(-c Tr S²).
fn symmetric_block<R: Rng + ?Sized>(rng: &mut R, m: usize, c: f64) -> CMatrix {
    let mut s = CMatrix::zeros(m, m);
    for i in 0..m {
        s[(i, i)] = Complex64::new(normal(rng, 1.0 / (2.0 * c)), 0.0);
        for j in i + 1..m {
            let v = Complex64::new(normal(rng, 1.0 / (4.0 * c)), 0.0);
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    s
}

/// Quaternion block matrix [[a, b], [-b̄, ā]].
fn quaternion_rep(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (r, c) = (a.rows, a.cols);
    let mut out = CMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            out[(i, j)] = a[(i, j)];
            out[(i, c + j)] = b[(i, j)];
            out[(r + i, j)] = -b[(i, j)].conj();
            out[(r + i, c + j)] = a[(i, j)].conj();
        }
    }
    out
}

/// Antisymmetric complex M×M, independent parts with variance `part_var`.
fn antisymmetric_complex<R: Rng + ?Sized>(rng: &mut R, m: usize, part_var: f64) -> CMatrix {
    let mut q = CMatrix::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let v = complex_normal(rng, part_var);
            q[(i, j)] = v;
            q[(j, i)] = -v;
        }
    }
    q
}

/// Wigner-Dyson matrix with density ∝ exp(-β Tr H²/4).
pub fn sample_hermitian(spec: &EnsembleSpec, seed: u64) -> Result<CMatrix> {
    sample_hermitian_with(spec, &mut stream(seed, 0))
}

pub fn sample_hermitian_with<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<CMatrix> {
    expect_family(spec, Family::WignerDyson)?;
    let n = spec.n;
    Ok(match spec.beta {
        Beta::One => symmetric_block(rng, n, 0.25),
        Beta::Two => hermitian_block(rng, n, 0.5),
        Beta::Four => {
            // exp(-Tr_Q H²) = exp(-Tr P² - Σ|Q_ij|²)
            let m = n / 2;
            let p = hermitian_block(rng, m, 1.0);
            let q = antisymmetric_complex(rng, m, 0.25);
            quaternion_rep(&p, &q)
        }
    })
}

/// Elliptic Ginibre matrix J = H₁ + iH₂; real for β=1, complex representation for β=4.
pub fn sample_ginibre(spec: &EnsembleSpec, seed: u64) -> Result<CMatrix> {
    sample_ginibre_with(spec, &mut stream(seed, 0))
}

pub fn sample_ginibre_with<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<CMatrix> {
    expect_family(spec, Family::Ginibre)?;
    let (n, tau) = (spec.n, spec.tau);
    let (plus, minus) = (1.0 + tau, 1.0 - tau);
    match spec.beta {
        Beta::Two => {
            let h1 = hermitian_block(rng, n, 1.0 / plus);
            let h2 = hermitian_block(rng, n, 1.0 / minus);
            Ok(CMatrix::from_fn(n, n, |i, j| h1[(i, j)] + Complex64::i() * h2[(i, j)]))
        }
        Beta::One => {
            let s = symmetric_block(rng, n, 0.5 / plus);
            let mut j = s;
            for r in 0..n {
                for c in r + 1..n {
                    let a = normal(rng, minus / 2.0);
                    j[(r, c)] += a;
                    j[(c, r)] -= a;
                }
            }
            Ok(j)
        }
        Beta::Four => {
            let m = n / 2;
            let p = hermitian_block(rng, m, 1.0 / plus);
            let q = antisymmetric_complex(rng, m, plus / 4.0);
            // anti-Hermitian P' = i·(Hermitian), symmetric Q'
            let p2 = hermitian_block(rng, m, 1.0 / minus);
            let mut q2 = CMatrix::zeros(m, m);
            for i in 0..m {
                q2[(i, i)] = complex_normal(rng, minus / 2.0);
                for j in i + 1..m {
                    let v = complex_normal(rng, minus / 4.0);
                    q2[(i, j)] = v;
                    q2[(j, i)] = v;
                }
            }
            let a = CMatrix::from_fn(m, m, |i, j| p[(i, j)] + Complex64::i() * p2[(i, j)]);
            let b = CMatrix::from_fn(m, m, |i, j| q[(i, j)] + q2[(i, j)]);
            Ok(quaternion_rep(&a, &b))
        }
    }
}

/// Rectangular n × (n+ν) Gaussian with density ∝ exp(-β Tr WW†/2)
/// (β=4: n × (n+2ν) complex representation with unit-variance entries).
pub fn sample_wishart(spec: &EnsembleSpec, seed: u64) -> Result<CMatrix> {
    sample_wishart_with(spec, &mut stream(seed, 0))
}

pub fn sample_wishart_with<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<CMatrix> {
    expect_family(spec, Family::WishartLaguerre)?;
    let (n, nu) = (spec.n, spec.nu);
    Ok(match spec.beta {
        Beta::One => CMatrix::from_fn(n, n + nu, |_, _| Complex64::new(normal(rng, 1.0), 0.0)),
        Beta::Two => CMatrix::from_fn(n, n + nu, |_, _| complex_normal(rng, 0.5)),
        Beta::Four => {
            let m = n / 2;
            let a = CMatrix::from_fn(m, m + nu, |_, _| complex_normal(rng, 0.5));
            let b = CMatrix::from_fn(m, m + nu, |_, _| complex_normal(rng, 0.5));
            quaternion_rep(&a, &b)
        }
    })
}

/// (W, V) with W of shape n × (n+ν) and V of shape (n+ν) × n.
pub fn sample_chiral_pair(spec: &EnsembleSpec, seed: u64) -> Result<(CMatrix, CMatrix)> {
    sample_chiral_pair_with(spec, &mut stream(seed, 0))
}

pub fn sample_chiral_pair_with<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<(CMatrix, CMatrix)> {
    expect_family(spec, Family::ChiralNonhermitian)?;
    let (n, nu, tau) = (spec.n, spec.nu, spec.tau);
    let ratio = (1.0 - tau) / (1.0 + tau);
    let mix = |a: Complex64, b: Complex64, ca: f64, cb: f64| (ca * a + cb * b, ca * a - cb * b);
    match spec.beta {
        Beta::One | Beta::Two => {
            let (ca, cb, draw): (f64, f64, fn(&mut R) -> Complex64) = if spec.beta == Beta::Two {
                ((0.5f64).sqrt(), (0.5 * ratio).sqrt(), |r| complex_normal(r, 0.5))
            } else {
                (0.5, (0.25 * ratio).sqrt(), |r| Complex64::new(normal(r, 1.0), 0.0))
            };
            let mut w = CMatrix::zeros(n, n + nu);
            let mut vdag = CMatrix::zeros(n, n + nu);
            for idx in 0..w.data.len() {
                let (x, y) = mix(draw(rng), draw(rng), ca, cb);
                w.data[idx] = x;
                vdag.data[idx] = y;
            }
            Ok((w, vdag.adjoint()))
        }
        Beta::Four => {
            let m = n / 2;
            let (ca, cb) = ((0.5f64).sqrt(), (0.5 * ratio).sqrt());
            let mut blocks = [(); 4].map(|_| CMatrix::zeros(m, m + nu));
            for idx in 0..m * (m + nu) {
                for k in 0..2 {
                    let (x, y) = mix(complex_normal(rng, 0.5), complex_normal(rng, 0.5), ca, cb);
                    blocks[k].data[idx] = x;
                    blocks[k + 2].data[idx] = y;
                }
            }
            let w = quaternion_rep(&blocks[0], &blocks[1]);
            let vdag = quaternion_rep(&blocks[2], &blocks[3]);
            Ok((w, vdag.adjoint()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(beta: Beta, family: Family, n: usize, tau: f64, nu: usize) -> EnsembleSpec {
        EnsembleSpec::new(beta, family, n, tau, nu).unwrap()
    }

    /// (mean, standard error) of f over `draws` matrices.
    fn moment(draws: usize, mut f: impl FnMut(u64) -> f64) -> (f64, f64) {
        let xs: Vec<f64> = (0..draws as u64).map(&mut f).collect();
        let mean = xs.iter().sum::<f64>() / draws as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws as f64 - 1.0);
        (mean, (var / draws as f64).sqrt())
    }

    fn within(m: (f64, f64), want: f64) -> bool {
        (m.0 - want).abs() <= 3.0 * m.1 + 1e-15
    }

    #[test]
    fn goe_variances() {
        let s = spec(Beta::One, Family::WignerDyson, 2, 0.0, 0);
        let off = moment(100_000, |k| sample_hermitian_with(&s, &mut stream(11, k)).unwrap()[(0, 1)].re.powi(2));
        let diag = moment(100_000, |k| sample_hermitian_with(&s, &mut stream(11, k)).unwrap()[(0, 0)].re.powi(2));
        assert!(within(off, 1.0), "{off:?}");
        assert!(within(diag, 2.0), "{diag:?}");
    }

    #[test]
    fn gue_is_hermitian() {
        let s = spec(Beta::Two, Family::WignerDyson, 6, 0.0, 0);
        let h = sample_hermitian(&s, 3).unwrap();
        assert_eq!(h, h.adjoint());
    }

    #[test]
    fn gse_is_hermitian_and_self_dual() {
        let s = spec(Beta::Four, Family::WignerDyson, 6, 0.0, 0);
        let h = sample_hermitian(&s, 3).unwrap();
        assert_eq!(h, h.adjoint());
        let m = 3;
        for i in 0..m {
            for j in 0..m {
                assert_eq!(h[(m + i, m + j)], h[(i, j)].conj());
                assert_eq!(h[(m + i, j)], -h[(i, m + j)].conj());
            }
        }
    }

    #[test]
    fn ginue_moments() {
        let s0 = spec(Beta::Two, Family::Ginibre, 2, 0.0, 0);
        let m = moment(100_000, |k| sample_ginibre_with(&s0, &mut stream(5, k)).unwrap()[(0, 1)].norm_sqr());
        assert!(within(m, 1.0), "{m:?}");
        let s = spec(Beta::Two, Family::Ginibre, 2, 0.99, 0);
        let m = moment(100_000, |k| {
            let j = sample_ginibre_with(&s, &mut stream(6, k)).unwrap();
            (j[(0, 1)] * j[(1, 0)]).re
        });
        assert!(within(m, 0.99), "{m:?}");
    }

    #[test]
    fn ginoe_is_real_with_unit_off_diagonal_variance() {
        let s = spec(Beta::One, Family::Ginibre, 4, 0.3, 0);
        let j = sample_ginibre(&s, 1).unwrap();
        assert!(j.data.iter().all(|v| v.im == 0.0));
        let m = moment(100_000, |k| sample_ginibre_with(&s, &mut stream(8, k)).unwrap()[(0, 1)].re.powi(2));
        assert!(within(m, 1.0), "{m:?}");
        let m = moment(100_000, |k| {
            let j = sample_ginibre_with(&s, &mut stream(9, k)).unwrap();
            j[(0, 1)].re * j[(1, 0)].re
        });
        assert!(within(m, 0.3), "{m:?}");
    }

    #[test]
    fn ginse_moments_and_structure() {
        let s = spec(Beta::Four, Family::Ginibre, 4, 0.4, 0);
        let j = sample_ginibre(&s, 2).unwrap();
        for i in 0..2 {
            for k in 0..2 {
                assert_eq!(j[(2 + i, 2 + k)], j[(i, k)].conj());
                assert_eq!(j[(2 + i, k)], -j[(i, 2 + k)].conj());
            }
        }
        let m = moment(100_000, |k| sample_ginibre_with(&s, &mut stream(12, k)).unwrap()[(0, 1)].norm_sqr());
        assert!(within(m, 1.0), "{m:?}");
        let m = moment(100_000, |k| sample_ginibre_with(&s, &mut stream(13, k)).unwrap()[(0, 3)].norm_sqr());
        assert!(within(m, 1.0), "{m:?}");
        let m = moment(100_000, |k| {
            let j = sample_ginibre_with(&s, &mut stream(14, k)).unwrap();
            (j[(0, 1)] * j[(1, 0)]).re
        });
        assert!(within(m, 0.4), "{m:?}");
    }

    #[test]
    fn wishart_shapes_and_variances() {
        let s = spec(Beta::Two, Family::WishartLaguerre, 4, 0.0, 3);
        let w = sample_wishart(&s, 4).unwrap();
        assert_eq!((w.rows, w.cols), (4, 7));
        let m = moment(100_000, |k| sample_wishart_with(&s, &mut stream(15, k)).unwrap()[(1, 5)].norm_sqr());
        assert!(within(m, 1.0), "{m:?}");
        let s1 = spec(Beta::One, Family::WishartLaguerre, 2, 0.0, 1);
        let w = sample_wishart(&s1, 4).unwrap();
        assert!(w.data.iter().all(|v| v.im == 0.0));
        let m = moment(100_000, |k| sample_wishart_with(&s1, &mut stream(16, k)).unwrap()[(0, 2)].re.powi(2));
        assert!(within(m, 1.0), "{m:?}");
    }

    #[test]
    fn chiral_covariances() {
        let mut last = -1.0;
        for tau in [0.0, 0.5, 0.9] {
            let s = spec(Beta::Two, Family::ChiralNonhermitian, 2, tau, 1);
            let m = moment(100_000, |k| {
                let (w, v) = sample_chiral_pair_with(&s, &mut stream(17, k)).unwrap();
                (w[(0, 2)] * v[(2, 0)]).re
            });
            // inverse of the 2×2 precision matrix of the quadratic form
            assert!(within(m, tau / (1.0 + tau)), "tau={tau}: {m:?}");
            assert!(m.0 > last);
            last = m.0;
        }
        let s1 = spec(Beta::One, Family::ChiralNonhermitian, 2, 0.6, 0);
        let m = moment(100_000, |k| {
            let (w, v) = sample_chiral_pair_with(&s1, &mut stream(18, k)).unwrap();
            w[(0, 1)].re * v[(1, 0)].re
        });
        assert!(within(m, 0.6 / (2.0 * 1.6)), "{m:?}");
    }

    #[test]
    fn chiral_hermitian_limit() {
        let s = spec(Beta::Two, Family::ChiralNonhermitian, 4, 0.999, 1);
        let mut num = 0.0;
        let mut den = 0.0;
        for k in 0..200 {
            let (w, v) = sample_chiral_pair_with(&s, &mut stream(19, k)).unwrap();
            let wd = w.adjoint();
            num += v.data.iter().zip(&wd.data).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>();
            den += w.frobenius_norm().powi(2);
        }
        assert!(num / den < 0.01);
    }

    #[test]
    fn determinism() {
        let s = spec(Beta::Four, Family::Ginibre, 6, 0.3, 0);
        assert_eq!(sample_ginibre(&s, 99).unwrap(), sample_ginibre(&s, 99).unwrap());
    }

    #[test]
    fn wrong_family_is_rejected() {
        let s = spec(Beta::Two, Family::Ginibre, 2, 0.0, 0);
        assert!(sample_hermitian(&s, 0).is_err());
    }
}
