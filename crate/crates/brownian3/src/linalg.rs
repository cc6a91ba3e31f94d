//! Small dense complex matrices backing the intertwiner machinery.
//!
//! Everything here stays at basis-coordinate scale (a few hundred rows),
//! so plain row-major storage and textbook algorithms are enough.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct CMatrix {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            data: vec![Complex64::default(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.ncols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.ncols + j] += v;
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(x.len(), self.ncols);
        let mut out = vec![Complex64::default(); self.nrows];
        for i in 0..self.nrows {
            let row = &self.data[i * self.ncols..(i + 1) * self.ncols];
            let mut acc = Complex64::default();
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            out[i] = acc;
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.ncols, rhs.nrows);
        let mut out = Self::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.ncols {
                    out.add_to(i, j, a * rhs.get(k, j));
                }
            }
        }
        out
    }

    pub fn scale(&mut self, s: Complex64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// max |(U*U − I)_{ij}|: how far the columns are from orthonormal.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.adjoint().matmul(self);
        gram.sub(&Self::identity(self.ncols)).max_abs()
    }

    /// Cholesky factor L with self = L·L^H; requires Hermitian positive
    /// definite input (callers add a ridge beforehand).
    pub fn cholesky(&self) -> Result<Self> {
        debug_assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut l = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut sum = self.get(i, j);
                for k in 0..j {
                    sum -= l.get(i, k) * l.get(j, k).conj();
                }
                if i == j {
                    let d = sum.re;
                    if d <= 0.0 || sum.im.abs() > 1e-8 * (1.0 + d.abs()) {
                        return Err(Error::Conditioning(format!(
                            "cholesky pivot {i} not positive (value {sum})"
                        )));
                    }
                    l.set(i, j, Complex64::new(d.sqrt(), 0.0));
                } else {
                    l.set(i, j, sum / l.get(j, j));
                }
            }
        }
        Ok(l)
    }

    /// Solve (L·L^H) x = b given the Cholesky factor L.
    pub fn cholesky_solve(l: &Self, b: &[Complex64]) -> Vec<Complex64> {
        let n = l.nrows;
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let lik = l.get(i, k);
                y[i] = y[i] - lik * y[k];
            }
            y[i] /= l.get(i, i);
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let lki = l.get(k, i).conj();
                y[i] = y[i] - lki * y[k];
            }
            y[i] /= l.get(i, i);
        }
        y
    }
}

fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Smallest eigenvalue and eigenvector of a Hermitian PSD matrix by
/// inverse power iteration on a ridge-shifted Cholesky factorization.
pub(crate) fn smallest_eigenpair(
    n_mat: &CMatrix,
    max_iter: usize,
    tol: f64,
) -> Result<(f64, Vec<Complex64>)> {
    let n = n_mat.nrows;
    let trace: f64 = (0..n).map(|i| n_mat.get(i, i).re).sum();
    let ridge = 1e-14 * (trace / n as f64).max(1e-300) + 1e-300;
    let mut shifted = n_mat.clone();
    for i in 0..n {
        shifted.add_to(i, i, Complex64::new(ridge, 0.0));
    }
    let l = shifted.cholesky()?;
    let mut x: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + (i as f64 * 0.37).sin(), (i as f64 * 0.73).cos()))
        .collect();
    let nx = vec_norm(&x);
    for v in &mut x {
        *v /= nx;
    }
    let mut last = f64::INFINITY;
    for _ in 0..max_iter {
        let mut y = CMatrix::cholesky_solve(&l, &x);
        let ny = vec_norm(&y);
        for v in &mut y {
            *v /= ny;
        }
        // Rayleigh quotient of the original matrix
        let nx = n_mat.matvec(&y);
        let lam: f64 = y
            .iter()
            .zip(&nx)
            .map(|(a, b)| (b * a.conj()).re)
            .sum();
        x = y;
        if (lam - last).abs() <= tol * (1.0 + lam.abs()) {
            return Ok((lam.max(0.0), x));
        }
        last = lam;
    }
    Ok((last.max(0.0), x))
}

/// Isometric polar factor W (W*W)^{-1/2} of a tall or square matrix, via
/// Newton–Schulz iteration for the inverse square root.
pub(crate) fn polar_isometry(w: &CMatrix) -> Result<CMatrix> {
    debug_assert!(w.nrows >= w.ncols);
    let a = w.adjoint().matmul(w);
    let n = a.nrows;
    if n == 0 {
        return Ok(w.clone());
    }
    let trace: f64 = (0..n).map(|i| a.get(i, i).re).sum();
    let mut a = a;
    let ridge = 1e-13 * (trace / n as f64).max(1e-300);
    for i in 0..n {
        a.add_to(i, i, Complex64::new(ridge, 0.0));
    }
    let s = a.frobenius().max(1e-300);
    let mut b = a.clone();
    b.scale(Complex64::new(1.0 / s, 0.0));
    let mut y = b.clone();
    let mut z = CMatrix::identity(n);
    for _ in 0..120 {
        let zy = z.matmul(&y);
        let mut three_minus = CMatrix::identity(n);
        three_minus.scale(Complex64::new(3.0, 0.0));
        let t = three_minus.sub(&zy);
        let mut yn = y.matmul(&t);
        yn.scale(Complex64::new(0.5, 0.0));
        let mut zn = t.matmul(&z);
        zn.scale(Complex64::new(0.5, 0.0));
        let delta = zn.sub(&z).frobenius();
        y = yn;
        z = zn;
        if delta < 1e-15 * (1.0 + z.frobenius()) {
            break;
        }
    }
    // z ≈ b^{-1/2}; rescale to (w*w)^{-1/2}
    z.scale(Complex64::new(1.0 / s.sqrt(), 0.0));
    Ok(w.matmul(&z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::c64;

    #[test]
    fn cholesky_solve_roundtrip() {
        let mut a = CMatrix::zeros(3, 3);
        a.set(0, 0, c64(4.0, 0.0));
        a.set(0, 1, c64(1.0, 1.0));
        a.set(1, 0, c64(1.0, -1.0));
        a.set(1, 1, c64(5.0, 0.0));
        a.set(1, 2, c64(0.5, -0.25));
        a.set(2, 1, c64(0.5, 0.25));
        a.set(2, 2, c64(3.0, 0.0));
        let l = a.cholesky().unwrap();
        let b = vec![c64(1.0, 0.0), c64(-2.0, 1.0), c64(0.0, 3.0)];
        let x = CMatrix::cholesky_solve(&l, &b);
        let back = a.matvec(&x);
        for (u, v) in back.iter().zip(&b) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn smallest_eigenpair_of_diagonal() {
        let mut a = CMatrix::zeros(4, 4);
        for (i, lam) in [3.0, 0.25, 7.0, 1.5].iter().enumerate() {
            a.set(i, i, c64(*lam, 0.0));
        }
        let (lam, v) = smallest_eigenpair(&a, 200, 1e-14).unwrap();
        assert!((lam - 0.25).abs() < 1e-10);
        assert!((v[1].norm() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn polar_factor_is_isometric() {
        let mut w = CMatrix::zeros(4, 2);
        w.set(0, 0, c64(1.0, 0.5));
        w.set(1, 0, c64(-0.25, 0.0));
        w.set(2, 1, c64(0.0, 2.0));
        w.set(3, 1, c64(1.0, 0.0));
        w.set(0, 1, c64(0.3, -0.1));
        let q = polar_isometry(&w).unwrap();
        assert!(q.unitarity_defect() < 1e-10);
    }
}
