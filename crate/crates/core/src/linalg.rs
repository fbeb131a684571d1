//! Small dense complex helpers on top of `faer`.

use std::f64::consts::PI;

pub use faer::complex_native::c64;
use faer::Mat;
use rand::Rng;
use rand_distr::StandardNormal;

/// Dense complex double-precision matrix.
pub type CMatrix = Mat<c64>;

#[inline]
pub fn abs2(z: c64) -> f64 {
    z.re * z.re + z.im * z.im
}

#[inline]
pub fn conj(z: c64) -> c64 {
    c64::new(z.re, -z.im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn zeros(n: usize) -> CMatrix {
    CMatrix::zeros(n, n)
}

/// `‖A†A − I‖_max` (largest entry modulus).
pub fn unitarity_defect(a: &CMatrix) -> f64 {
    let gram = a.adjoint() * a;
    let mut worst = 0.0_f64;
    for j in 0..gram.ncols() {
        for i in 0..gram.nrows() {
            let mut z = gram[(i, j)];
            if i == j {
                z.re -= 1.0;
            }
            worst = worst.max(abs2(z).sqrt());
        }
    }
    worst
}

/// Multiplies row `i` of `m` by `factors[i]`, i.e. `m ← diag(factors)·m`.
pub fn scale_rows(m: &mut CMatrix, factors: &[c64]) {
    debug_assert_eq!(m.nrows(), factors.len());
    for j in 0..m.ncols() {
        for (i, f) in factors.iter().enumerate() {
            let z = m[(i, j)];
            m.write(i, j, z * *f);
        }
    }
}

/// Real-diagonal variant of [`scale_rows`].
pub fn scale_rows_real(m: &mut CMatrix, factors: &[f64]) {
    debug_assert_eq!(m.nrows(), factors.len());
    for j in 0..m.ncols() {
        for (i, f) in factors.iter().enumerate() {
            let z = m[(i, j)];
            m.write(i, j, z * *f);
        }
    }
}

/// `m ← m·diag(factors)`.
pub fn scale_cols(m: &mut CMatrix, factors: &[c64]) {
    debug_assert_eq!(m.ncols(), factors.len());
    for (j, f) in factors.iter().enumerate() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            m.write(i, j, z * *f);
        }
    }
}

pub fn scale(m: &CMatrix, factor: f64) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * factor)
}

/// Standard complex normal deviate, `E|z|² = 1`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> c64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `n` independent uniformly distributed unit-modulus phases.
pub fn random_phases<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<c64> {
    (0..n)
        .map(|_| {
            let theta = 2.0 * PI * rng.gen::<f64>();
            c64::new(theta.cos(), theta.sin())
        })
        .collect()
}

/// Unitary discrete Fourier transform matrix `F_jk = e^{-2πi jk/n}/√n`.
pub fn dft(n: usize) -> CMatrix {
    let norm = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |j, k| {
        // reduce jk mod n first so the phase stays accurate for large n
        let theta = -2.0 * PI * ((j * k) % n) as f64 / n as f64;
        c64::new(theta.cos() * norm, theta.sin() * norm)
    })
}

/// Embeds four `n×n` blocks as `[[a, b], [c, d]]`.
pub fn block2x2(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> CMatrix {
    let n = a.nrows();
    CMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (true, false) => b[(i, j - n)],
        (false, true) => c[(i - n, j)],
        (false, false) => d[(i - n, j - n)],
    })
}

/// Frobenius norm squared.
pub fn frobenius2(m: &CMatrix) -> f64 {
    let mut acc = 0.0;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            acc += abs2(m[(i, j)]);
        }
    }
    acc
}
